//! Seeded generators for representations and the graphs they describe.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::representation::{Arc, Kind, PairStatus, Representation};

/// Shape of a random representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepParams {
    pub n: usize,
    pub kind: Kind,
    /// Number of points that may carry vertices. Several vertices per point
    /// make fuzzy pairs with two-sided cliques likely.
    pub slots: usize,
    /// Longest interval, counted in slots.
    pub max_span: usize,
    /// Attempts at placing an interval; rejected attempts are dropped.
    pub interval_attempts: usize,
    /// Probability that a fuzzy pair becomes an edge.
    pub fuzzy_density: f64,
    /// Whether interval ends may sit on vertex slots. Without it there are
    /// no fuzzy pairs and the graph is a circular interval graph.
    pub exact_endpoints: bool,
}

impl RepParams {
    pub fn new(n: usize, kind: Kind) -> Self {
        let slots = (n / 2).max(1);
        RepParams {
            n,
            kind,
            slots,
            max_span: 3,
            interval_attempts: 4 * n,
            fuzzy_density: 0.5,
            exact_endpoints: true,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random valid representation. Slot `i` sits on point `3i + 1`, and the
/// points in between are free for interval endpoints; linear representations
/// leave the last point as the gap.
pub fn random_rep<R: Rng>(rng: &mut R, params: &RepParams) -> Representation {
    let slots = params.slots.max(1);
    let linear = params.kind == Kind::Linear;
    let pc = 3 * slots + usize::from(linear);
    let phi: Vec<usize> = (0..params.n).map(|_| 3 * rng.gen_range(0..slots) + 1).collect();
    let mut intervals: Vec<Arc> = Vec::new();
    let mut used = vec![false; pc];
    for _ in 0..params.interval_attempts {
        if intervals.len() >= params.n {
            break;
        }
        let start = rng.gen_range(0..pc);
        let len = rng.gen_range(1..=3 * params.max_span.max(1)).min(pc - 1);
        let end = (start + len) % pc;
        if linear && start + len >= pc - 1 {
            continue;
        }
        if !params.exact_endpoints && (start % 3 == 1 || end % 3 == 1) {
            continue;
        }
        if used[start] || used[end] {
            continue;
        }
        let a = Arc::new(start, end);
        if intervals
            .iter()
            .any(|b| a.contains_arc(b, pc) || b.contains_arc(&a, pc))
        {
            continue;
        }
        used[start] = true;
        used[end] = true;
        intervals.push(a);
    }
    let mut rep = Representation::new(params.kind, pc, phi, intervals, Vec::new());
    let table = rep.status_table();
    let n = params.n;
    let mut fuzzy = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if table.get(u, v) == PairStatus::Fuzzy && rng.gen_bool(params.fuzzy_density) {
                fuzzy.push((u, v));
            }
        }
    }
    rep.fuzzy_edges = fuzzy;
    rep
}

/// Applies a random vertex relabeling to both the graph and the
/// representation.
pub fn shuffle_vertices<R: Rng>(rng: &mut R, g: &Graph, rep: &Representation) -> (Graph, Representation) {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    let h = Graph::from_edges(n, &edges).expect("relabeling keeps the graph simple");
    let map: Vec<Option<usize>> = perm.iter().map(|&x| Some(x)).collect();
    (h, rep.restrict(&map, n))
}

/// A random fuzzy circular interval graph with its representation. When
/// `connected` is set, draws are repeated a few times; if none is
/// connected, the largest component of the last draw is returned, so the
/// vertex count may then fall short of `params.n`.
pub fn random_fcig<R: Rng>(rng: &mut R, params: &RepParams, connected: bool) -> (Graph, Representation) {
    let mut attempts = 0;
    loop {
        attempts += 1;
        let rep = random_rep(rng, params);
        let g = rep.materialize().expect("generated representations are valid");
        if !connected || g.is_connected() {
            return shuffle_vertices(rng, &g, &rep);
        }
        if attempts >= 32 {
            let (h, sub) = largest_component(&g, &rep);
            return shuffle_vertices(rng, &h, &sub);
        }
    }
}

/// Restriction of a representation to the largest component of its graph
/// (the lowest-numbered one on ties).
pub fn largest_component(g: &Graph, rep: &Representation) -> (Graph, Representation) {
    let comps = g.connected_components();
    let best = comps
        .iter()
        .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))
        .expect("nonempty graph");
    let mut map = vec![None; g.vertex_count()];
    for (i, &v) in best.iter().enumerate() {
        map[v] = Some(i);
    }
    let h = g.induced(best);
    let sub = rep.restrict(&map, best.len());
    let sub = sub.prune_intervals(&h).expect("restriction of a valid representation prunes");
    (h, sub)
}

/// An Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("simple by construction")
}

/// A connected `G(n, p)`, redrawn until connected.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// A connected instance for timing runs: about two vertices per slot, every
/// slot occupied, and one interval starting at each slot reaching one or two
/// slots ahead, so that `m` stays near `4n`. Interval ends sit on vertex
/// slots when free, which makes fuzzy pairs common.
pub fn scaling_instance<R: Rng>(rng: &mut R, n: usize) -> (Graph, Representation) {
    let slots = (n / 2).max(3);
    let pc = 3 * slots;
    let mut phi: Vec<usize> = (0..n).map(|v| if v < slots { v } else { rng.gen_range(0..slots) }).collect();
    phi.shuffle(rng);
    let phi: Vec<usize> = phi.into_iter().map(|s| 3 * s + 1).collect();
    let mut used = vec![false; pc];
    let mut intervals: Vec<Arc> = Vec::new();
    let mut last_end = 0;
    for i in 0..slots {
        let reach = (i + rng.gen_range(1..=2)).max(last_end + 1);
        if reach >= i + slots - 1 {
            break;
        }
        last_end = reach;
        let exact_start = 3 * i + 1;
        let start = if rng.gen_bool(0.5) && !used[exact_start] { exact_start } else { 3 * i };
        let exact_end = (3 * reach + 1) % pc;
        let end = if rng.gen_bool(0.5) && !used[exact_end] { exact_end } else { (3 * reach + 2) % pc };
        if used[start] || used[end] {
            continue;
        }
        let a = Arc::new(start, end);
        if intervals.iter().any(|b| a.contains_arc(b, pc) || b.contains_arc(&a, pc)) {
            continue;
        }
        used[start] = true;
        used[end] = true;
        intervals.push(a);
    }
    let mut rep = Representation::new(Kind::Circular, pc, phi, intervals, Vec::new());
    let table = rep.status_table();
    rep.fuzzy_edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| table.get(u, v) == PairStatus::Fuzzy && rng.gen_bool(0.5))
        .collect();
    let g = rep.materialize().expect("scaling representations are valid");
    (g, rep)
}
