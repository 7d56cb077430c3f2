//! Pairs of cliques: classification flags, the pair-finding loop seeded by a
//! candidate edge, and the scanner that amortizes seeds across reductions.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PairFlags {
    /// Every vertex of each clique is proper to the other clique.
    pub proper: bool,
    /// Every outside vertex is complete or anticomplete to each clique.
    pub homogeneous: bool,
    /// No vertex of either clique is complete to the other, and some cross
    /// edge exists.
    pub almost_proper: bool,
    /// Homogeneous, and the outside splits into S1, S2, S3 as required for a
    /// two-point representation.
    pub fuzzy_dominating: bool,
}

/// Two disjoint nonempty cliques, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliquePair {
    pub k1: Vec<Vertex>,
    pub k2: Vec<Vertex>,
    pub flags: PairFlags,
}

impl CliquePair {
    /// Sorts both sides and computes the flags from scratch.
    pub fn new(g: &Graph, mut k1: Vec<Vertex>, mut k2: Vec<Vertex>) -> CliquePair {
        k1.sort_unstable();
        k2.sort_unstable();
        let flags = pair_flags(g, &k1, &k2);
        CliquePair { k1, k2, flags }
    }

    pub fn swapped(&self) -> CliquePair {
        CliquePair {
            k1: self.k2.clone(),
            k2: self.k1.clone(),
            flags: self.flags,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("({}, {}) is not a candidate pair", .0 + 1, .1 + 1)]
    NotCandidate(Vertex, Vertex),
    #[error("pair search from ({}, {}) exceeded {bound} iterations", .u + 1, .v + 1)]
    IterationBound { u: Vertex, v: Vertex, bound: usize },
}

/// True iff `k1`, `k2` are nonempty, disjoint cliques.
pub fn is_clique_pair(g: &Graph, k1: &[Vertex], k2: &[Vertex]) -> bool {
    if k1.is_empty() || k2.is_empty() {
        return false;
    }
    if k1.iter().chain(k2).any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let in1 = g.membership(k1);
    if k2.iter().any(|&v| in1[v]) {
        return false;
    }
    g.is_clique_unchecked(k1) && g.is_clique_unchecked(k2)
}

/// Computes all four flags; everything is false unless the sides form a
/// clique pair.
pub fn pair_flags(g: &Graph, k1: &[Vertex], k2: &[Vertex]) -> PairFlags {
    if !is_clique_pair(g, k1, k2) {
        return PairFlags::default();
    }
    let c1 = g.classify_unchecked(k1);
    let c2 = g.classify_unchecked(k2);
    let in1 = g.membership(k1);
    let in2 = g.membership(k2);
    let proper = k1.iter().all(|&v| c2.proper.contains(&v)) && k2.iter().all(|&v| c1.proper.contains(&v));
    let homogeneous = c1.proper.iter().all(|&v| in2[v]) && c2.proper.iter().all(|&v| in1[v]);
    let none_complete =
        k1.iter().all(|&v| !c2.complete.contains(&v)) && k2.iter().all(|&v| !c1.complete.contains(&v));
    let cross = k1.iter().any(|&a| k2.iter().any(|&b| g.has_edge(a, b)));
    let almost_proper = none_complete && cross;
    let fuzzy_dominating = homogeneous && dominating_split(g, k1, k2).is_ok();
    PairFlags {
        proper,
        homogeneous,
        almost_proper,
        fuzzy_dominating,
    }
}

/// Why a homogeneous pair fails to be fuzzy dominating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NotDominating {
    #[error("the pair is not homogeneous")]
    NotHomogeneous,
    #[error("some outside vertex is anticomplete to both cliques")]
    Cover,
    #[error("S1 is not a clique")]
    S1NotClique,
    #[error("S2 is not a clique")]
    S2NotClique,
    #[error("S1 is not complete to S3")]
    S1NotCompleteToS3,
    #[error("S2 is not complete to S3")]
    S2NotCompleteToS3,
    #[error("S3 cannot be split into two cliques (graph is not quasi-line)")]
    S3NotTwoCliques,
}

/// S1 (complete to K1 only), S2 (complete to K2 only), S3 (complete to
/// both), after checking the cover and clique conditions.
pub(crate) fn dominating_split(
    g: &Graph,
    k1: &[Vertex],
    k2: &[Vertex],
) -> Result<[Vec<Vertex>; 3], NotDominating> {
    let c1 = g.classify_unchecked(k1);
    let c2 = g.classify_unchecked(k2);
    let comp1 = g.membership(&c1.complete);
    let comp2 = g.membership(&c2.complete);
    let (in1, in2) = (g.membership(k1), g.membership(k2));
    let (mut s1, mut s2, mut s3) = (Vec::new(), Vec::new(), Vec::new());
    for v in 0..g.vertex_count() {
        if in1[v] || in2[v] {
            continue;
        }
        match (comp1[v], comp2[v]) {
            (true, true) => s3.push(v),
            (true, false) => s1.push(v),
            (false, true) => s2.push(v),
            (false, false) => return Err(NotDominating::Cover),
        }
    }
    if !g.is_clique_unchecked(&s1) {
        return Err(NotDominating::S1NotClique);
    }
    if !g.is_clique_unchecked(&s2) {
        return Err(NotDominating::S2NotClique);
    }
    if !s1.iter().all(|&a| s3.iter().all(|&b| g.has_edge(a, b))) {
        return Err(NotDominating::S1NotCompleteToS3);
    }
    if !s2.iter().all(|&a| s3.iter().all(|&b| g.has_edge(a, b))) {
        return Err(NotDominating::S2NotCompleteToS3);
    }
    Ok([s1, s2, s3])
}

/// Recomputes the flags and compares them with the claimed ones.
pub fn verify_pair(g: &Graph, p: &CliquePair) -> bool {
    is_clique_pair(g, &p.k1, &p.k2) && pair_flags(g, &p.k1, &p.k2) == p.flags
}

/// Induced 4-cycle `a-b-c-d-a` with `a, b` in `k1` and `c, d` in `k2`.
pub fn find_induced_c4(g: &Graph, k1: &[Vertex], k2: &[Vertex]) -> Option<[Vertex; 4]> {
    for &b in k1 {
        for &c in k2 {
            if !g.has_edge(b, c) {
                continue;
            }
            for &a in k1 {
                if a == b || g.has_edge(a, c) {
                    continue;
                }
                for &d in k2 {
                    if d != c && g.has_edge(a, d) && !g.has_edge(b, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Grows a pair of cliques from the candidate edge `uv`: start from
/// `K' = {u, v}`, `K = P(K')` and replace `(K', K)` by `(K, P(K))` until
/// `P(K) = K'`. Returns `None` as soon as `K` is empty or not a clique.
pub fn find_pair_from(g: &Graph, u: Vertex, v: Vertex) -> Result<Option<CliquePair>, PairError> {
    if u >= g.vertex_count() || v >= g.vertex_count() || !g.is_candidate_pair(u, v) {
        return Err(PairError::NotCandidate(u, v));
    }
    let bound = 2 * g.vertex_count();
    let mut prev = vec![u.min(v), u.max(v)];
    let mut cur = g.proper_set(&prev);
    let mut rounds = 0;
    loop {
        if cur.is_empty() || !g.is_clique_unchecked(&cur) {
            return Ok(None);
        }
        let next = g.proper_set(&cur);
        if next == prev {
            return Ok(Some(CliquePair::new(g, prev, cur)));
        }
        prev = cur;
        cur = next;
        rounds += 1;
        if rounds > bound {
            return Err(PairError::IterationBound { u, v, bound });
        }
    }
}

/// Every distinct pair found from some candidate edge, in scan order.
pub fn all_found_pairs(g: &Graph) -> Result<Vec<CliquePair>, PairError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (u, v) in g.candidate_pairs() {
        if let Some(p) = find_pair_from(g, u, v)? {
            let key = if p.k1 <= p.k2 {
                (p.k1.clone(), p.k2.clone())
            } else {
                (p.k2.clone(), p.k1.clone())
            };
            if seen.insert(key) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Each candidate identity is scanned at most once over the whole run.
    Amortized,
    /// Every candidate of the current graph is rescanned on each call.
    Rescan,
}

/// Candidate-pair bookkeeping across a reduction sequence.
///
/// Every current vertex carries an identity inherited from the original
/// graph. Survivors keep theirs; the four gadget vertices take the
/// identities of an induced 4-cycle `a-b-c-d` of the reduced pair
/// (`x1←b`, `x2←a`, `y1←c`, `y2←d`), which maps candidate pairs of the new
/// graph onto candidate pairs of the old one. A failed scan marks the
/// identity dead, so the total number of scans never exceeds the number of
/// candidate pairs of the original graph.
#[derive(Debug, Clone)]
pub struct CandidateScanner {
    mode: ScanMode,
    identity: Vec<usize>,
    dead: HashSet<(usize, usize)>,
    candidates: Vec<(Vertex, Vertex)>,
    scans: usize,
    initial_candidates: usize,
}

impl CandidateScanner {
    pub fn new(g0: &Graph, mode: ScanMode) -> Self {
        let candidates = g0.candidate_pairs();
        CandidateScanner {
            mode,
            identity: (0..g0.vertex_count()).collect(),
            dead: HashSet::new(),
            initial_candidates: candidates.len(),
            candidates,
            scans: 0,
        }
    }

    pub fn mode(&self) -> ScanMode {
        self.mode
    }

    /// Calls to [`find_pair_from`] so far.
    pub fn scans(&self) -> usize {
        self.scans
    }

    /// Number of candidate pairs of the graph the scanner was created on.
    pub fn initial_candidates(&self) -> usize {
        self.initial_candidates
    }

    fn key(&self, u: Vertex, v: Vertex) -> (usize, usize) {
        let (a, b) = (self.identity[u], self.identity[v]);
        (a.min(b), a.max(b))
    }

    /// Returns the first pair found from a live candidate of `g`, the
    /// current graph of the sequence.
    pub fn find_any_pair(&mut self, g: &Graph) -> Result<Option<CliquePair>, PairError> {
        if self.mode == ScanMode::Rescan {
            for (u, v) in g.candidate_pairs() {
                self.scans += 1;
                if let Some(p) = find_pair_from(g, u, v)? {
                    return Ok(Some(p));
                }
            }
            return Ok(None);
        }
        let candidates = std::mem::take(&mut self.candidates);
        let mut found = None;
        let mut kept = Vec::with_capacity(candidates.len());
        for (i, &(u, v)) in candidates.iter().enumerate() {
            let key = self.key(u, v);
            if self.dead.contains(&key) {
                continue;
            }
            self.scans += 1;
            self.dead.insert(key);
            if let Some(p) = find_pair_from(g, u, v)? {
                found = Some(p);
                kept.extend_from_slice(&candidates[i + 1..]);
                break;
            }
        }
        self.candidates = kept;
        Ok(found)
    }

    /// Updates identities and the candidate list after `g_before` was
    /// reduced to `g_after` by `step`.
    pub fn record_reduction(
        &mut self,
        g_before: &Graph,
        g_after: &Graph,
        step: &crate::reduction::ReductionStep,
    ) {
        let n_after = g_after.vertex_count();
        let mut identity = vec![usize::MAX; n_after];
        for (old, new) in step.id_map.iter().enumerate() {
            if let Some(new) = *new {
                identity[new] = self.identity[old];
            }
        }
        let [x1, y1, x2, y2] = step.gadget;
        let c4 = find_induced_c4(g_before, &step.pair.k1, &step.pair.k2);
        // Proper pairs always contain one; fall back to fresh identities.
        match c4 {
            Some([a, b, c, d]) => {
                identity[x1] = self.identity[b];
                identity[x2] = self.identity[a];
                identity[y1] = self.identity[c];
                identity[y2] = self.identity[d];
            }
            None => {
                let base = self.identity.iter().chain(identity.iter()).filter(|&&x| x != usize::MAX).max().map_or(0, |m| m + 1);
                for (k, g) in [x1, y1, x2, y2].into_iter().enumerate() {
                    identity[g] = base + k;
                }
            }
        }
        self.identity = identity;
        if self.mode == ScanMode::Rescan {
            return;
        }
        // Candidacy among survivors is unchanged by the reduction; only pairs
        // touching the gadget are recomputed.
        let mut next: Vec<(Vertex, Vertex)> = self
            .candidates
            .iter()
            .filter_map(|&(u, v)| Some((step.id_map[u]?, step.id_map[v]?)))
            .collect();
        let first_gadget = n_after - 4;
        for gv in first_gadget..n_after {
            for &w in g_after.neighbors(gv) {
                if (w < first_gadget || w > gv) && g_after.is_candidate_pair(gv, w) {
                    next.push((w.min(gv), w.max(gv)));
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        self.candidates = next;
    }
}
