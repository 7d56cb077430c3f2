//! Moving an almost-proper homogeneous pair of cliques onto the two endpoints
//! of one interval.
//!
//! [`tighten`] produces a representation in which some interval runs from a
//! vertex of `K1` to a vertex of `K2`; [`collapse`] then moves each clique
//! onto its witness point. Situations that cannot arise for a valid input
//! are checked at runtime and reported as [`Guard`] failures.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::pairs::{dominating_split, CliquePair, NotDominating};
use crate::representation::{
    make_fuzzy_pairs_proper_homogeneous, offset, Arc, Kind, Point, RepError, Representation, Violation,
};

/// The outside of a fuzzy dominating pair: `s1` complete to `K1` only, `s2`
/// complete to `K2` only, `s3 = s4 ∪ s5` complete to both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingParts {
    pub s1: Vec<Vertex>,
    pub s2: Vec<Vertex>,
    pub s3: Vec<Vertex>,
    pub s4: Vec<Vertex>,
    pub s5: Vec<Vertex>,
}

/// Facts that hold whenever the input is valid; a failure means the input
/// was not a representation of the graph or there is a bug.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    /// Neither clique is covered by an interval, yet the pair is not
    /// dominating.
    NoCoveringInterval,
    /// The smallest arc covering a clique is a single point.
    SinglePointArc,
    /// A vertex of `K2` lies on the smallest arc covering `K1`.
    K2InsideK1Arc,
    /// No interval covers the smallest arc of `K2`.
    NoIntervalOverK2Arc,
    /// An interval containing one clique's arc meets the other clique's arc.
    CoverMeetsOtherArc,
    /// No interval contains the chosen cross edge.
    NoCrossInterval,
    /// A member of the family `J` starts or ends outside the allowed range.
    ExtremityOutOfRange,
    /// A member of `J` covers a vertex on one of the two clique arcs that
    /// lies outside the pair and misses one of the cliques.
    ForeignVertexOnArc,
    /// A vertex of the pair lies strictly between the two clique arcs.
    PairVertexBetweenArcs,
    /// The collapsed cliques are not joined by an interval.
    CollapseNotJoined,
}

impl std::fmt::Display for Guard {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Guard::NoCoveringInterval => "no interval covers either clique",
            Guard::SinglePointArc => "a clique arc degenerates to one point",
            Guard::K2InsideK1Arc => "a vertex of K2 lies on the arc of K1",
            Guard::NoIntervalOverK2Arc => "no interval covers the arc of K2",
            Guard::CoverMeetsOtherArc => "an interval containing one clique arc meets the other",
            Guard::NoCrossInterval => "no interval contains the chosen cross edge",
            Guard::ExtremityOutOfRange => "an extremity of J lies outside its clique arc",
            Guard::ForeignVertexOnArc => "an interval of J covers a vertex on a clique arc that misses a clique",
            Guard::PairVertexBetweenArcs => "a pair vertex lies between the two clique arcs",
            Guard::CollapseNotJoined => "collapsed cliques are not joined by an interval",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TightenError {
    #[error("pair is not almost-proper and homogeneous")]
    BadPair,
    #[error("input representation is invalid: {0}")]
    InvalidInput(Violation),
    #[error("guard failed: {0}")]
    Guard(Guard),
    #[error("output representation is invalid: {0}")]
    OutputInvalid(Violation),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Either one interval containing every point of the clique, or three
/// intervals whose union is the whole circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverResult {
    Interval(Arc),
    CircleCover([Arc; 3]),
}

/// The arcs and intervals used to build a tight representation. Points
/// refer to the working frame: the input, mirrored if needed so that the
/// chosen cross edge runs clockwise from `b1` to `a2`. `left` is the clique
/// whose arc is `i1_min`; it is `K2` when only `K2` has a covering interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TighteningContext {
    pub mirrored: bool,
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
    pub i1: Arc,
    pub i2: Arc,
    /// Smallest arc inside `i1` holding every point of `left`.
    pub i1_min: Arc,
    /// Smallest arc outside `i1_min` holding every point of `right`.
    pub i2_min: Arc,
    pub cross_edge: (Vertex, Vertex),
    /// Intervals containing `[b1, a2]`.
    pub j_family: Vec<Arc>,
    pub l: Point,
    pub r: Point,
}

/// Checks the fuzzy dominating condition and splits `S3` into two cliques
/// by two-coloring the complement of `g[S3]`.
pub fn check_fuzzy_dominating(g: &Graph, p: &CliquePair) -> Result<DominatingParts, NotDominating> {
    if !p.flags.homogeneous {
        return Err(NotDominating::NotHomogeneous);
    }
    let [s1, s2, s3] = dominating_split(g, &p.k1, &p.k2)?;
    let k = s3.len();
    let mut color = vec![u8::MAX; k];
    for root in 0..k {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for j in 0..k {
                if i == j || g.has_edge(s3[i], s3[j]) {
                    continue;
                }
                if color[j] == u8::MAX {
                    color[j] = 1 - color[i];
                    queue.push_back(j);
                } else if color[j] == color[i] {
                    return Err(NotDominating::S3NotTwoCliques);
                }
            }
        }
    }
    let s4 = (0..k).filter(|&i| color[i] == 0).map(|i| s3[i]).collect();
    let s5 = (0..k).filter(|&i| color[i] == 1).map(|i| s3[i]).collect();
    Ok(DominatingParts { s1, s2, s3, s4, s5 })
}

/// Two points `0` and `1` joined by one interval; `S1 ∪ K1 ∪ S4` on `0`,
/// `S2 ∪ K2 ∪ S5` on `1`. Linear representations get a third, gap point.
pub fn represent_dominating(
    g: &Graph,
    p: &CliquePair,
    parts: &DominatingParts,
    kind: Kind,
) -> Result<Representation, TightenError> {
    let mut phi = vec![usize::MAX; g.vertex_count()];
    for &v in p.k1.iter().chain(&parts.s1).chain(&parts.s4) {
        phi[v] = 0;
    }
    for &v in p.k2.iter().chain(&parts.s2).chain(&parts.s5) {
        phi[v] = 1;
    }
    debug_assert!(phi.iter().all(|&x| x != usize::MAX));
    let points = if kind == Kind::Linear { 3 } else { 2 };
    let mut rep = Representation::new(kind, points, phi, vec![Arc::new(0, 1)], Vec::new());
    rep.recompute_fuzzy_edges(g);
    rep.validate(g).map_err(TightenError::OutputInvalid)?;
    Ok(rep)
}

/// Finds an interval covering `k`, or three intervals covering the circle.
/// Among covering intervals the lexicographically least is returned; the
/// circle cover is derived by adding the vertices of `k` one at a time.
pub fn covering_interval(rep: &Representation, k: &[Vertex]) -> Result<CoverResult, TightenError> {
    let p = rep.point_count;
    let pts: Vec<Point> = k.iter().map(|&v| rep.phi[v]).collect();
    let covers = |a: &Arc, pts: &[Point]| pts.iter().all(|&x| a.contains(x, p));
    if let Some(a) = rep.intervals.iter().find(|a| covers(a, &pts)) {
        return Ok(CoverResult::Interval(*a));
    }
    let Some((&first, rest)) = pts.split_first() else {
        return Err(TightenError::Guard(Guard::NoCoveringInterval));
    };
    let mut seen = vec![first];
    let mut cur: Option<Arc> = None;
    for &x in rest {
        seen.push(x);
        if cur.is_some_and(|a| a.contains(x, p)) {
            continue;
        }
        if let Some(a) = rep.intervals.iter().find(|a| covers(a, &seen)) {
            cur = Some(*a);
            continue;
        }
        let Some(i1) = cur else {
            return Err(TightenError::Guard(Guard::NoCoveringInterval));
        };
        let left = Arc::new(x, i1.start);
        let right = Arc::new(i1.end, x);
        let i2 = rep.intervals.iter().find(|a| a.contains_arc(&left, p));
        let i3 = rep.intervals.iter().find(|a| a.contains_arc(&right, p));
        return match (i2, i3) {
            (Some(&i2), Some(&i3)) => Ok(CoverResult::CircleCover([i1, i2, i3])),
            _ => Err(TightenError::Guard(Guard::NoCoveringInterval)),
        };
    }
    Err(TightenError::Guard(Guard::NoCoveringInterval))
}

/// Least interval (in sorted order) whose endpoints carry a vertex of `K1`
/// and a vertex of `K2`, with the least such vertices.
pub fn tight_witness(rep: &Representation, p: &CliquePair) -> Option<(Arc, Vertex, Vertex)> {
    let occ = rep.occupants();
    let n = rep.vertex_count();
    let mut side = vec![0u8; n];
    for &v in &p.k1 {
        side[v] = 1;
    }
    for &v in &p.k2 {
        side[v] = 2;
    }
    let least = |pt: Point, s: u8| occ[pt].iter().copied().find(|&v| side[v] == s);
    rep.intervals.iter().find_map(|a| {
        if let (Some(w), Some(z)) = (least(a.start, 1), least(a.end, 2)) {
            return Some((*a, w, z));
        }
        if let (Some(w), Some(z)) = (least(a.end, 1), least(a.start, 2)) {
            return Some((*a, w, z));
        }
        None
    })
}

pub fn is_tight(rep: &Representation, p: &CliquePair) -> bool {
    tight_witness(rep, p).is_some()
}

fn check_pair(g: &Graph, p: &CliquePair) -> Result<(), TightenError> {
    let flags = crate::pairs::pair_flags(g, &p.k1, &p.k2);
    if flags.almost_proper && flags.homogeneous {
        Ok(())
    } else {
        Err(TightenError::BadPair)
    }
}

/// Returns a representation of `g` that is tight with respect to `p`.
pub fn tighten(rep: &Representation, g: &Graph, p: &CliquePair) -> Result<Representation, TightenError> {
    check_pair(g, p)?;
    rep.validate(g).map_err(TightenError::InvalidInput)?;
    if is_tight(rep, p) {
        return Ok(rep.clone());
    }
    if let Ok(parts) = check_fuzzy_dominating(g, p) {
        return represent_dominating(g, p, &parts, rep.kind);
    }
    let rep = rep.prune_intervals(g)?;
    let rep = make_fuzzy_pairs_proper_homogeneous(&rep, g)?;
    if is_tight(&rep, p) {
        return Ok(rep);
    }
    let (ctx, work) = context_and_frame(&rep, g, p)?;
    let out = rebuild(&work, g, &ctx);
    let out = if ctx.mirrored { mirror(&out) } else { out };
    out.validate(g).map_err(TightenError::OutputInvalid)?;
    debug_assert!(is_tight(&out, p));
    Ok(out)
}

/// Builds the context for a normalized representation that is not tight.
pub fn tightening_context(
    rep: &Representation,
    g: &Graph,
    p: &CliquePair,
) -> Result<TighteningContext, TightenError> {
    context_and_frame(rep, g, p).map(|(ctx, _)| ctx)
}

fn context_and_frame(
    rep: &Representation,
    g: &Graph,
    p: &CliquePair,
) -> Result<(TighteningContext, Representation), TightenError> {
    let guard = |c: Guard| TightenError::Guard(c);
    let pc = rep.point_count;
    // The roles of the cliques are symmetric; K1 is the one with a cover.
    let (k1, k2) = match covering_interval(rep, &p.k1)? {
        CoverResult::Interval(_) => (&p.k1, &p.k2),
        CoverResult::CircleCover(_) => match covering_interval(rep, &p.k2)? {
            CoverResult::Interval(_) => (&p.k2, &p.k1),
            CoverResult::CircleCover(_) => return Err(guard(Guard::NoCoveringInterval)),
        },
    };
    let CoverResult::Interval(i1) = covering_interval(rep, k1)? else {
        unreachable!()
    };
    let (a1, b1) = tightest(rep, k1, i1.start);
    if a1 == b1 {
        return Err(guard(Guard::SinglePointArc));
    }
    let i1_min = Arc::new(a1, b1);
    if k2.iter().any(|&v| i1_min.contains(rep.phi[v], pc)) {
        return Err(guard(Guard::K2InsideK1Arc));
    }
    let (a2, b2) = tightest(rep, k2, b1);
    if a2 == b2 {
        return Err(guard(Guard::SinglePointArc));
    }
    let i2_min = Arc::new(a2, b2);
    let i2 = *rep
        .intervals
        .iter()
        .find(|a| a.contains_arc(&i2_min, pc))
        .ok_or(guard(Guard::NoIntervalOverK2Arc))?;
    for a in &rep.intervals {
        if (a.contains_arc(&i1_min, pc) && arcs_meet(a, &i2_min, pc))
            || (a.contains_arc(&i2_min, pc) && arcs_meet(a, &i1_min, pc))
        {
            return Err(guard(Guard::CoverMeetsOtherArc));
        }
    }

    let in1 = g.membership(k1);
    let cross = k1
        .iter()
        .flat_map(|&u| k2.iter().map(move |&v| (u, v)))
        .filter(|&(u, v)| g.has_edge(u, v))
        .min_by_key(|&(u, v)| (u.min(v), u.max(v)))
        .expect("almost-proper pairs have a cross edge");
    let (pu, pv) = (rep.phi[cross.0], rep.phi[cross.1]);
    let forward = Arc::new(pu, pv);
    let backward = Arc::new(pv, pu);
    let mirrored = if rep.intervals.iter().any(|a| a.contains_arc(&forward, pc)) {
        false
    } else if rep.intervals.iter().any(|a| a.contains_arc(&backward, pc)) {
        true
    } else {
        return Err(guard(Guard::NoCrossInterval));
    };
    let (work, i1, i2, a1, b1, a2, b2) = if mirrored {
        let m = |x: Point| pc - 1 - x;
        let ma = |a: Arc| Arc::new(m(a.end), m(a.start));
        (mirror(rep), ma(i1), ma(i2), m(b1), m(a1), m(b2), m(a2))
    } else {
        (rep.clone(), i1, i2, a1, b1, a2, b2)
    };

    let bridge = Arc::new(b1, a2);
    let j_family: Vec<Arc> = work
        .intervals
        .iter()
        .copied()
        .filter(|a| a.contains_arc(&bridge, pc))
        .collect();
    if j_family.is_empty() {
        return Err(guard(Guard::NoCrossInterval));
    }
    let span1 = offset(a1, b1, pc);
    let span2 = offset(a2, b2, pc);
    for j in &j_family {
        let s = offset(a1, j.start, pc);
        let e = offset(a2, j.end, pc);
        if s == 0 || s > span1 || e >= span2 {
            return Err(guard(Guard::ExtremityOutOfRange));
        }
    }
    let l = j_family.iter().map(|j| j.start).min_by_key(|&s| offset(a1, s, pc)).unwrap();
    let r = j_family.iter().map(|j| j.end).max_by_key(|&e| offset(a2, e, pc)).unwrap();

    let in2 = g.membership(k2);
    let arc1 = Arc::new(a1, b1);
    let arc2 = Arc::new(a2, b2);
    // A foreign vertex on a clique arc under J ends up inside [l, r], so it
    // must see both cliques. Vertices complete to both do occur there.
    let sees_both = |v: Vertex| g.has_edge(v, k1[0]) && g.has_edge(v, k2[0]);
    for (v, &x) in work.phi.iter().enumerate() {
        let on_pair = in1[v] || in2[v];
        let covered_by_j = j_family.iter().any(|j| j.contains(x, pc));
        if !on_pair && covered_by_j && (arc1.contains(x, pc) || arc2.contains(x, pc)) && !sees_both(v) {
            return Err(guard(Guard::ForeignVertexOnArc));
        }
        let strictly_between = x != b1 && x != a2 && bridge.contains(x, pc);
        if on_pair && strictly_between {
            return Err(guard(Guard::PairVertexBetweenArcs));
        }
    }
    let ctx = TighteningContext {
        mirrored,
        left: k1.clone(),
        right: k2.clone(),
        i1,
        i2,
        i1_min: Arc::new(a1, b1),
        i2_min: Arc::new(a2, b2),
        cross_edge: cross,
        j_family,
        l,
        r,
    };
    Ok((ctx, work))
}

/// Endpoints of the smallest arc starting at or after `from` that holds
/// every point of `k`.
fn tightest(rep: &Representation, k: &[Vertex], from: Point) -> (Point, Point) {
    let pc = rep.point_count;
    let first = k.iter().map(|&v| rep.phi[v]).min_by_key(|&x| offset(from, x, pc)).unwrap();
    let last = k.iter().map(|&v| rep.phi[v]).max_by_key(|&x| offset(from, x, pc)).unwrap();
    (first, last)
}

fn arcs_meet(a: &Arc, b: &Arc, p: usize) -> bool {
    a.contains(b.start, p) || b.contains(a.start, p)
}

/// Replaces the family `J` by `[l, r]` and moves the left clique to `l`,
/// the right one to `r`.
fn rebuild(work: &Representation, g: &Graph, ctx: &TighteningContext) -> Representation {
    let (l, r) = (ctx.l, ctx.r);
    let mut intervals: Vec<Arc> = work
        .intervals
        .iter()
        .copied()
        .filter(|a| !ctx.j_family.contains(a))
        .collect();
    intervals.push(Arc::new(l, r));
    let mut phi = work.phi.clone();
    for &v in &ctx.left {
        phi[v] = l;
    }
    for &v in &ctx.right {
        phi[v] = r;
    }
    let mut out = Representation::new(work.kind, work.point_count, phi, intervals, Vec::new());
    out.recompute_fuzzy_edges(g);
    out
}

/// The same representation read counterclockwise.
fn mirror(rep: &Representation) -> Representation {
    let pc = rep.point_count;
    let m = |x: Point| pc - 1 - x;
    Representation::new(
        rep.kind,
        pc,
        rep.phi.iter().map(|&x| m(x)).collect(),
        rep.intervals.iter().map(|a| Arc::new(m(a.end), m(a.start))).collect(),
        rep.fuzzy_edges.clone(),
    )
}

/// Tightens, then moves all of `K1` onto the `K1` end of the witness
/// interval and all of `K2` onto the other end.
pub fn collapse(rep: &Representation, g: &Graph, p: &CliquePair) -> Result<Representation, TightenError> {
    let tight = tighten(rep, g, p)?;
    let (_, w, z) = tight_witness(&tight, p).ok_or(TightenError::Guard(Guard::CollapseNotJoined))?;
    let (a, b) = (tight.phi[w], tight.phi[z]);
    let mut phi = tight.phi.clone();
    for &v in &p.k1 {
        phi[v] = a;
    }
    for &v in &p.k2 {
        phi[v] = b;
    }
    let mut out = Representation::new(tight.kind, tight.point_count, phi, tight.intervals.clone(), Vec::new());
    out.recompute_fuzzy_edges(g);
    out.validate(g).map_err(TightenError::OutputInvalid)?;
    if !is_collapsed(&out, p) {
        return Err(TightenError::Guard(Guard::CollapseNotJoined));
    }
    Ok(out)
}

/// Each clique sits on a single point and the two points are the endpoints
/// of an interval.
pub fn is_collapsed(rep: &Representation, p: &CliquePair) -> bool {
    let a = rep.phi[p.k1[0]];
    let b = rep.phi[p.k2[0]];
    p.k1.iter().all(|&v| rep.phi[v] == a)
        && p.k2.iter().all(|&v| rep.phi[v] == b)
        && rep
            .intervals
            .iter()
            .any(|i| (i.start == a && i.end == b) || (i.start == b && i.end == a))
}
