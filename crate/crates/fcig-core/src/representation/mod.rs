//! Circle representations: points, intervals, vertex placement and the
//! chosen adjacencies inside fuzzy pairs.

mod format;
mod normalize;

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use format::RepParseError;
pub use normalize::make_fuzzy_pairs_proper_homogeneous;

/// Index of a point on the discrete circle; arithmetic is mod `P`.
pub type Point = usize;

/// Clockwise closed interval `[start, end]` of the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub start: Point,
    pub end: Point,
}

impl Arc {
    pub fn new(start: Point, end: Point) -> Self {
        Arc { start, end }
    }

    /// Clockwise distance from `start` to `end`.
    pub fn span(&self, p: usize) -> usize {
        offset(self.start, self.end, p)
    }

    pub fn contains(&self, x: Point, p: usize) -> bool {
        offset(self.start, x, p) <= self.span(p)
    }

    /// True iff `other` lies inside `self` as a closed clockwise arc.
    pub fn contains_arc(&self, other: &Arc, p: usize) -> bool {
        let s = offset(self.start, other.start, p);
        let e = offset(self.start, other.end, p);
        s <= e && e <= self.span(p)
    }

    /// Points of the arc in clockwise order.
    pub fn points(&self, p: usize) -> impl Iterator<Item = Point> + '_ {
        let start = self.start;
        (0..=self.span(p)).map(move |k| (start + k) % p)
    }
}

/// Clockwise distance from `from` to `to` on a circle of `p` points.
#[inline]
pub fn offset(from: Point, to: Point, p: usize) -> usize {
    (to + p - from) % p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Circular,
    Linear,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Circular => "circular",
            Kind::Linear => "linear",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairStatus {
    ForcedAdjacent,
    ForcedNonadjacent,
    Fuzzy,
}

/// A representation `(Φ, I)` together with the chosen fuzzy adjacencies.
///
/// `intervals` and `fuzzy_edges` are kept sorted; `fuzzy_edges` holds pairs
/// `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    pub kind: Kind,
    pub point_count: usize,
    pub phi: Vec<Point>,
    pub intervals: Vec<Arc>,
    pub fuzzy_edges: Vec<(Vertex, Vertex)>,
}

/// First violated clause found by [`Representation::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("representation places {got} vertices but the graph has {expected}")]
    PhiLength { expected: usize, got: usize },
    #[error("circle has no points")]
    NoPoints,
    #[error("vertex {} placed on point {point} outside the circle", vertex + 1)]
    PhiOutOfRange { vertex: Vertex, point: Point },
    #[error("interval [{}, {}] leaves the circle or has equal endpoints", arc.start, arc.end)]
    BadInterval { arc: Arc },
    #[error("point {point} is an endpoint of more than one interval")]
    SharedEndpoint { point: Point },
    #[error("interval [{}, {}] contains interval [{}, {}]", outer.start, outer.end, inner.start, inner.end)]
    Nested { outer: Arc, inner: Arc },
    #[error("{count} intervals for {n} vertices")]
    TooManyIntervals { count: usize, n: usize },
    #[error("linear representation has no unoccupied uncovered point")]
    NoGap,
    #[error("fuzzy edge {}-{} is malformed or repeated", u + 1, v + 1)]
    BadFuzzyEdge { u: Vertex, v: Vertex },
    #[error("fuzzy edge {}-{} is not a fuzzy pair", u + 1, v + 1)]
    FuzzyEdgeNotFuzzy { u: Vertex, v: Vertex },
    #[error("vertices {} and {} share an interval but are not adjacent", u + 1, v + 1)]
    MissingEdge { u: Vertex, v: Vertex },
    #[error("vertices {} and {} are adjacent but share no interval", u + 1, v + 1)]
    ForbiddenEdge { u: Vertex, v: Vertex },
    #[error("fuzzy pair {}-{}: edge presence differs from the recorded choice", u + 1, v + 1)]
    FuzzyMismatch { u: Vertex, v: Vertex },
}

pub type ValidationReport = Result<(), Violation>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("invalid representation: {0}")]
    Invalid(Violation),
    #[error("vertices must differ (got {} twice)", .0 + 1)]
    SameVertex(Vertex),
    #[error("pruning left {count} intervals for {n} vertices")]
    PruneFailed { count: usize, n: usize },
    #[error("normalization produced an invalid representation: {0}")]
    NormalizeFailed(Violation),
}

const NONADJ: u8 = 0;
const FUZZY: u8 = 1;
const FORCED: u8 = 2;

/// Pair statuses for every vertex pair, computed interval by interval.
pub struct StatusTable {
    n: usize,
    cells: Vec<u8>,
}

impl StatusTable {
    pub fn get(&self, u: Vertex, v: Vertex) -> PairStatus {
        match self.cells[u * self.n + v] {
            NONADJ => PairStatus::ForcedNonadjacent,
            FUZZY => PairStatus::Fuzzy,
            _ => PairStatus::ForcedAdjacent,
        }
    }
}

impl Representation {
    /// Builds a representation and puts it in canonical order.
    pub fn new(
        kind: Kind,
        point_count: usize,
        phi: Vec<Point>,
        intervals: Vec<Arc>,
        fuzzy_edges: Vec<(Vertex, Vertex)>,
    ) -> Self {
        let mut rep = Representation {
            kind,
            point_count,
            phi,
            intervals,
            fuzzy_edges,
        };
        rep.canonicalize();
        rep
    }

    pub fn canonicalize(&mut self) {
        for e in &mut self.fuzzy_edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        self.intervals.sort_unstable();
        self.fuzzy_edges.sort_unstable();
    }

    pub fn vertex_count(&self) -> usize {
        self.phi.len()
    }

    /// Vertices sitting on each point, ascending.
    pub fn occupants(&self) -> Vec<Vec<Vertex>> {
        let mut by_point = vec![Vec::new(); self.point_count];
        for (v, &pt) in self.phi.iter().enumerate() {
            by_point[pt].push(v);
        }
        by_point
    }

    /// Whether each point lies in at least one interval.
    pub fn covered_points(&self) -> Vec<bool> {
        let p = self.point_count;
        let mut diff = vec![0i64; p + 1];
        for a in &self.intervals {
            let (s, e) = (a.start, a.end);
            if s <= e {
                diff[s] += 1;
                diff[e + 1] -= 1;
            } else {
                diff[s] += 1;
                diff[p] -= 1;
                diff[0] += 1;
                diff[e + 1] -= 1;
            }
        }
        let mut out = vec![false; p];
        let mut run = 0;
        for (i, slot) in out.iter_mut().enumerate() {
            run += diff[i];
            *slot = run > 0;
        }
        out
    }

    /// First point that is neither occupied nor covered.
    pub fn gap_point(&self) -> Option<Point> {
        let covered = self.covered_points();
        let mut occupied = vec![false; self.point_count];
        for &pt in &self.phi {
            occupied[pt] = true;
        }
        (0..self.point_count).find(|&x| !covered[x] && !occupied[x])
    }

    /// Status of one pair, scanning all intervals.
    pub fn classify_pair_status(&self, u: Vertex, v: Vertex) -> Result<PairStatus, RepError> {
        if u == v {
            return Err(RepError::SameVertex(u));
        }
        let p = self.point_count;
        let (pu, pv) = (self.phi[u], self.phi[v]);
        let mut common = false;
        for a in &self.intervals {
            if a.contains(pu, p) && a.contains(pv, p) {
                common = true;
                let exact = (a.start == pu && a.end == pv) || (a.start == pv && a.end == pu);
                if !exact {
                    return Ok(PairStatus::ForcedAdjacent);
                }
            }
        }
        Ok(if common {
            PairStatus::Fuzzy
        } else {
            PairStatus::ForcedNonadjacent
        })
    }

    /// Statuses of all pairs; costs the sum over intervals of the squared
    /// number of vertices inside.
    pub fn status_table(&self) -> StatusTable {
        let n = self.vertex_count();
        let p = self.point_count;
        let mut cells = vec![NONADJ; n * n];
        let occ = self.occupants();
        let mut inside = Vec::new();
        for a in &self.intervals {
            inside.clear();
            for x in a.points(p) {
                inside.extend_from_slice(&occ[x]);
            }
            for (i, &u) in inside.iter().enumerate() {
                for &v in &inside[i + 1..] {
                    let (pu, pv) = (self.phi[u], self.phi[v]);
                    let exact = (pu == a.start && pv == a.end) || (pu == a.end && pv == a.start);
                    let cell = if exact { FUZZY } else { FORCED };
                    for (x, y) in [(u, v), (v, u)] {
                        let c = &mut cells[x * n + y];
                        if *c < cell {
                            *c = cell;
                        }
                    }
                }
            }
        }
        StatusTable { n, cells }
    }

    /// Structural invariants that do not involve a graph.
    pub fn check_invariants(&self) -> ValidationReport {
        let p = self.point_count;
        let n = self.vertex_count();
        if p == 0 && (n > 0 || !self.intervals.is_empty()) {
            return Err(Violation::NoPoints);
        }
        for (v, &pt) in self.phi.iter().enumerate() {
            if pt >= p {
                return Err(Violation::PhiOutOfRange { vertex: v, point: pt });
            }
        }
        for a in &self.intervals {
            if a.start >= p || a.end >= p || a.start == a.end {
                return Err(Violation::BadInterval { arc: *a });
            }
        }
        let mut used = vec![false; p];
        for a in &self.intervals {
            for x in [a.start, a.end] {
                if used[x] {
                    return Err(Violation::SharedEndpoint { point: x });
                }
                used[x] = true;
            }
        }
        for (i, a) in self.intervals.iter().enumerate() {
            for (j, b) in self.intervals.iter().enumerate() {
                if i != j && a.contains_arc(b, p) {
                    return Err(Violation::Nested { outer: *a, inner: *b });
                }
            }
        }
        if self.intervals.len() > n {
            return Err(Violation::TooManyIntervals {
                count: self.intervals.len(),
                n,
            });
        }
        if self.kind == Kind::Linear && self.gap_point().is_none() {
            return Err(Violation::NoGap);
        }
        for w in self.fuzzy_edges.windows(2) {
            if w[0] == w[1] {
                return Err(Violation::BadFuzzyEdge { u: w[0].0, v: w[0].1 });
            }
        }
        for &(u, v) in &self.fuzzy_edges {
            if u >= v || v >= n {
                return Err(Violation::BadFuzzyEdge { u, v });
            }
        }
        Ok(())
    }

    fn check_fuzzy_edges(&self, table: &StatusTable) -> ValidationReport {
        for &(u, v) in &self.fuzzy_edges {
            if table.get(u, v) != PairStatus::Fuzzy {
                return Err(Violation::FuzzyEdgeNotFuzzy { u, v });
            }
        }
        Ok(())
    }

    /// Checks the representation against `g`, reporting the first violation
    /// in the order: invariants, forced-edge misses, forbidden edges, fuzzy
    /// mismatches. Pairs are scanned lexicographically.
    pub fn validate(&self, g: &Graph) -> ValidationReport {
        let n = g.vertex_count();
        if self.vertex_count() != n {
            return Err(Violation::PhiLength {
                expected: n,
                got: self.vertex_count(),
            });
        }
        self.check_invariants()?;
        let table = self.status_table();
        self.check_fuzzy_edges(&table)?;
        for u in 0..n {
            for v in u + 1..n {
                if table.get(u, v) == PairStatus::ForcedAdjacent && !g.has_edge(u, v) {
                    return Err(Violation::MissingEdge { u, v });
                }
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if table.get(u, v) == PairStatus::ForcedNonadjacent && g.has_edge(u, v) {
                    return Err(Violation::ForbiddenEdge { u, v });
                }
            }
        }
        let mut chosen = self.fuzzy_edges.iter().peekable();
        for u in 0..n {
            for v in u + 1..n {
                if table.get(u, v) != PairStatus::Fuzzy {
                    continue;
                }
                while chosen.peek().is_some_and(|&&e| e < (u, v)) {
                    chosen.next();
                }
                let recorded = chosen.peek().is_some_and(|&&e| e == (u, v));
                if recorded != g.has_edge(u, v) {
                    return Err(Violation::FuzzyMismatch { u, v });
                }
            }
        }
        Ok(())
    }

    /// The graph this representation describes.
    pub fn materialize(&self) -> Result<Graph, RepError> {
        self.check_invariants().map_err(RepError::Invalid)?;
        let table = self.status_table();
        self.check_fuzzy_edges(&table).map_err(RepError::Invalid)?;
        let n = self.vertex_count();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if table.get(u, v) == PairStatus::ForcedAdjacent {
                    edges.push((u, v));
                }
            }
        }
        edges.extend_from_slice(&self.fuzzy_edges);
        Ok(Graph::from_edges_dedup(n, edges))
    }

    /// Replaces `fuzzy_edges` by the edges of `g` that are fuzzy pairs.
    pub fn recompute_fuzzy_edges(&mut self, g: &Graph) {
        let table = self.status_table();
        self.fuzzy_edges = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| table.get(u, v) == PairStatus::Fuzzy)
            .collect();
    }

    /// Intervals whose endpoints both carry vertices.
    pub fn fuzzy_intervals(&self) -> Vec<Arc> {
        let mut occupied = vec![false; self.point_count];
        for &pt in &self.phi {
            occupied[pt] = true;
        }
        self.intervals
            .iter()
            .copied()
            .filter(|a| occupied[a.start] && occupied[a.end])
            .collect()
    }

    /// Brings `|I|` down to at most `n` without changing the represented
    /// graph. Representations already within the bound are returned as is.
    ///
    /// Intervals covering no vertex are dropped; among intervals sharing the
    /// same first occupied point only the one starting last is kept, since
    /// every other member of that group covers a subset of its vertices and
    /// never contributes a fuzzy pair.
    pub fn prune_intervals(&self, g: &Graph) -> Result<Representation, RepError> {
        let n = g.vertex_count();
        if self.intervals.len() <= n {
            return Ok(self.clone());
        }
        let p = self.point_count;
        let occ = self.occupants();
        let mut best: Vec<Option<(usize, Arc)>> = vec![None; p];
        for a in &self.intervals {
            let first = a.points(p).find(|&x| !occ[x].is_empty());
            let Some(first) = first else { continue };
            let lead = offset(a.start, first, p);
            match best[first] {
                Some((d, _)) if d <= lead => {}
                _ => best[first] = Some((lead, *a)),
            }
        }
        let mut out = self.clone();
        out.intervals = best.into_iter().flatten().map(|(_, a)| a).collect();
        out.canonicalize();
        if out.intervals.len() > n {
            return Err(RepError::PruneFailed {
                count: out.intervals.len(),
                n,
            });
        }
        out.validate(g).map_err(RepError::Invalid)?;
        Ok(out)
    }

    /// Removes points that are neither occupied nor interval endpoints,
    /// keeping one gap point for linear representations.
    pub fn compact(&self) -> Representation {
        let p = self.point_count;
        let mut keep = vec![false; p];
        for &pt in &self.phi {
            keep[pt] = true;
        }
        for a in &self.intervals {
            keep[a.start] = true;
            keep[a.end] = true;
        }
        if self.kind == Kind::Linear {
            if let Some(g) = self.gap_point() {
                keep[g] = true;
            }
        }
        if p > 0 && !keep.iter().any(|&k| k) {
            keep[0] = true;
        }
        let mut index = vec![usize::MAX; p];
        let mut next = 0;
        for x in 0..p {
            if keep[x] {
                index[x] = next;
                next += 1;
            }
        }
        Representation::new(
            self.kind,
            next,
            self.phi.iter().map(|&x| index[x]).collect(),
            self.intervals
                .iter()
                .map(|a| Arc::new(index[a.start], index[a.end]))
                .collect(),
            self.fuzzy_edges.clone(),
        )
    }

    /// Relabels vertices: vertex `v` of `self` becomes `map[v]` in a
    /// representation on `n` vertices; unmapped vertices are dropped.
    pub fn restrict(&self, map: &[Option<Vertex>], n: usize) -> Representation {
        let mut phi = vec![usize::MAX; n];
        for (v, &target) in map.iter().enumerate() {
            if let Some(t) = target {
                phi[t] = self.phi[v];
            }
        }
        debug_assert!(phi.iter().all(|&x| x != usize::MAX));
        let fuzzy = self
            .fuzzy_edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)))
            .collect();
        Representation::new(self.kind, self.point_count, phi, self.intervals.clone(), fuzzy)
    }
}
