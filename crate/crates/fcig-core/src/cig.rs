//! Recognition of circular and linear interval graphs.
//!
//! Linear: three LexBFS sweeps, then a check that the last ordering has
//! consecutive closed neighborhoods with nondecreasing right ends.
//!
//! Circular: closed twins are merged, then edges are oriented so that every
//! out-neighborhood and in-neighborhood is a clique. For two non-adjacent
//! neighbors `a, b` of `v` exactly one of `va`, `vb` leaves `v`, so the
//! orientation is a parity system over the edges. Following each vertex's
//! nearest out-neighbor gives a circular order, which is accepted only if
//! every out-neighborhood is the run of vertices right after it.
//!
//! Either way the result is built with interval endpoints on fresh points
//! and checked by the validator before it is returned.

use std::collections::{HashMap, VecDeque};

use crate::graph::{Graph, Vertex};
use crate::representation::{Arc, Kind, Representation};

/// A circular order of vertices, as produced for circular interval graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularOrder {
    pub order: Vec<Vertex>,
}

/// Lexicographic BFS. `initial` fixes the tie-break order: among vertices
/// with equal labels the one earliest in `initial` is taken.
pub fn lex_bfs(g: &Graph, initial: &[Vertex]) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut classes: VecDeque<Vec<Vertex>> = VecDeque::new();
    if n > 0 {
        classes.push_back(initial.to_vec());
    }
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut is_nb = vec![false; n];
    while let Some(mut first) = classes.pop_front() {
        let v = first.remove(0);
        if !first.is_empty() {
            classes.push_front(first);
        }
        placed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            is_nb[w] = true;
        }
        let mut next = VecDeque::with_capacity(classes.len() * 2);
        for class in classes.drain(..) {
            let (inside, outside): (Vec<_>, Vec<_>) = class.into_iter().partition(|&w| is_nb[w]);
            if !inside.is_empty() {
                next.push_back(inside);
            }
            if !outside.is_empty() {
                next.push_back(outside);
            }
        }
        classes = next;
        for &w in g.neighbors(v) {
            is_nb[w] = false;
        }
    }
    debug_assert!(placed.iter().all(|&p| p));
    order
}

/// LexBFS+ : ties go to the vertex that came last in `prev`.
pub fn lex_bfs_plus(g: &Graph, prev: &[Vertex]) -> Vec<Vertex> {
    let rev: Vec<Vertex> = prev.iter().rev().copied().collect();
    lex_bfs(g, &rev)
}

/// Positions of each closed neighborhood in `order` if they are all runs
/// with nondecreasing right ends; `None` otherwise. Returns right ends.
fn proper_interval_reach(g: &Graph, order: &[Vertex]) -> Option<Vec<usize>> {
    let n = order.len();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut reach = Vec::with_capacity(n);
    let mut last = 0;
    for (i, &v) in order.iter().enumerate() {
        let mut lo = i;
        let mut hi = i;
        for &w in g.neighbors(v) {
            lo = lo.min(pos[w]);
            hi = hi.max(pos[w]);
        }
        if hi - lo != g.degree(v) || hi < last {
            return None;
        }
        last = hi;
        reach.push(hi);
    }
    Some(reach)
}

/// Three-sweep LexBFS ordering that is a proper interval ordering, if the
/// graph has one.
pub fn proper_interval_order(g: &Graph) -> Option<Vec<Vertex>> {
    let ids: Vec<Vertex> = (0..g.vertex_count()).collect();
    let s1 = lex_bfs(g, &ids);
    let s2 = lex_bfs_plus(g, &s1);
    let s3 = lex_bfs_plus(g, &s2);
    proper_interval_reach(g, &s3).map(|_| s3)
}

/// Layout of blocks (groups of vertices sharing a point) and the intervals
/// between them, in block indices. At most one interval starts and at most
/// one ends at each block.
struct Layout {
    blocks: Vec<Vec<Vertex>>,
    intervals: Vec<(usize, usize)>,
}

impl Layout {
    /// Points: before block `k` come the end of the interval ending at
    /// `k - 1` and the start of the interval starting at `k`, then the block.
    /// A linear layout gets one trailing gap point.
    fn build(&self, n: usize, kind: Kind) -> Representation {
        let b = self.blocks.len();
        let mut start_at = vec![None; b];
        let mut end_at = vec![None; b];
        for (idx, &(s, e)) in self.intervals.iter().enumerate() {
            debug_assert!(start_at[s].is_none() && end_at[e].is_none());
            start_at[s] = Some(idx);
            end_at[e] = Some(idx);
        }
        let mut next = 0;
        let mut block_point = vec![0; b];
        let mut start_point = vec![0; self.intervals.len()];
        let mut end_point = vec![0; self.intervals.len()];
        for k in 0..b {
            let prev = if k == 0 { b - 1 } else { k - 1 };
            if kind == Kind::Circular || k > 0 {
                if let Some(i) = end_at[prev] {
                    end_point[i] = next;
                    next += 1;
                }
            }
            if let Some(i) = start_at[k] {
                start_point[i] = next;
                next += 1;
            }
            block_point[k] = next;
            next += 1;
        }
        if kind == Kind::Linear {
            if let Some(i) = end_at[b - 1] {
                end_point[i] = next;
                next += 1;
            }
            next += 1; // gap
        }
        let mut phi = vec![0; n];
        for (k, block) in self.blocks.iter().enumerate() {
            for &v in block {
                phi[v] = block_point[k];
            }
        }
        let intervals = (0..self.intervals.len())
            .map(|i| Arc::new(start_point[i], end_point[i]))
            .collect();
        Representation::new(kind, next, phi, intervals, Vec::new())
    }
}

fn empty_rep(kind: Kind) -> Representation {
    Representation::new(kind, 1, Vec::new(), Vec::new(), Vec::new())
}

/// Linear representation of a proper interval graph, or `None`.
pub fn recognize_linear(g: &Graph) -> Option<Representation> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(empty_rep(Kind::Linear));
    }
    let order = proper_interval_order(g)?;
    let reach = proper_interval_reach(g, &order)?;
    // Consecutive closed twins share a block.
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    let mut block_reach: Vec<usize> = Vec::new();
    let mut block_of_pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        let twin = i > 0 && closed_twins(g, order[i - 1], v);
        if !twin {
            blocks.push(Vec::new());
            block_reach.push(0);
        }
        let k = blocks.len() - 1;
        blocks[k].push(v);
        block_of_pos[i] = k;
        block_reach[k] = reach[i];
    }
    let block_reach: Vec<usize> = block_reach.iter().map(|&r| block_of_pos[r]).collect();
    let mut intervals = Vec::new();
    let mut covered_to: Option<usize> = None;
    for (k, &r) in block_reach.iter().enumerate() {
        let fresh = covered_to.is_none_or(|c| r > c);
        if fresh && (r > k || blocks[k].len() >= 2) {
            intervals.push((k, r));
        }
        covered_to = Some(covered_to.map_or(r, |c| c.max(r)));
    }
    let rep = Layout { blocks, intervals }.build(n, Kind::Linear);
    rep.validate(g).ok()?;
    Some(rep)
}

fn closed_twins(g: &Graph, u: Vertex, v: Vertex) -> bool {
    if !g.has_edge(u, v) || g.degree(u) != g.degree(v) {
        return false;
    }
    g.neighbors(u).iter().all(|&w| w == v || g.has_edge(v, w))
}

/// Classes of closed twins, ordered by least member; returns the class of
/// each vertex and the quotient graph.
fn twin_quotient(g: &Graph) -> (Vec<Vec<Vertex>>, Vec<usize>, Graph) {
    let n = g.vertex_count();
    let mut by_nbhd: HashMap<Vec<Vertex>, usize> = HashMap::new();
    let mut class_of = vec![0; n];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        let mut closed: Vec<Vertex> = g.neighbors(v).to_vec();
        closed.push(v);
        closed.sort_unstable();
        let next = classes.len();
        let c = *by_nbhd.entry(closed).or_insert(next);
        if c == next {
            classes.push(Vec::new());
        }
        classes[c].push(v);
        class_of[v] = c;
    }
    let edges = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| class_of[u] != class_of[v])
        .map(|(u, v)| (class_of[u], class_of[v]));
    let h = Graph::from_edges_dedup(classes.len(), edges);
    (classes, class_of, h)
}

/// Edge list, direction of each edge, and parity component of each edge.
type Orientation = (Vec<(Vertex, Vertex)>, Vec<bool>, Vec<usize>);

/// Solves the out/in-clique orientation on a graph; `x[e]` says whether
/// edge `e = (u, v)`, `u < v`, points from `u` to `v`. Returns the edge
/// list, the assignment and the component of every edge in the parity
/// system.
fn local_tournament_orientation(h: &Graph) -> Option<Orientation> {
    let edges = h.edges();
    let index: HashMap<(Vertex, Vertex), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edge_id = |a: Vertex, b: Vertex| index[&(a.min(b), a.max(b))];
    // constraint lists: (other edge, parity) meaning x[e] ^ x[f] == parity
    let mut cons: Vec<Vec<(usize, bool)>> = vec![Vec::new(); edges.len()];
    for v in 0..h.vertex_count() {
        let nb = h.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if h.has_edge(a, b) {
                    continue;
                }
                // out_v(a) = x[va] ^ (v > a); require out_v(a) != out_v(b)
                let (ea, eb) = (edge_id(v, a), edge_id(v, b));
                let parity = !((v > a) ^ (v > b));
                cons[ea].push((eb, parity));
                cons[eb].push((ea, parity));
            }
        }
    }
    let mut x = vec![false; edges.len()];
    let mut comp = vec![usize::MAX; edges.len()];
    let mut comps = 0;
    for root in 0..edges.len() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = comps;
        let mut queue = VecDeque::from([root]);
        while let Some(e) = queue.pop_front() {
            for &(f, parity) in &cons[e] {
                let want = x[e] ^ parity;
                if comp[f] == usize::MAX {
                    comp[f] = comps;
                    x[f] = want;
                    queue.push_back(f);
                } else if x[f] != want {
                    return None;
                }
            }
        }
        comps += 1;
    }
    Some((edges, x, comp))
}

/// Tries to read a round circular order off an orientation.
fn round_order(h: &Graph, edges: &[(Vertex, Vertex)], x: &[bool]) -> Option<(Vec<Vertex>, Vec<usize>)> {
    let n = h.vertex_count();
    let mut out: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut indeg = vec![0; n];
    for (&(u, v), &fwd) in edges.iter().zip(x) {
        let (a, b) = if fwd { (u, v) } else { (v, u) };
        out[a].push(b);
        indeg[b] += 1;
    }
    let arc = |a: Vertex, b: Vertex| -> bool {
        let (u, v) = (a.min(b), a.max(b));
        match edges.binary_search(&(u, v)) {
            Ok(i) => x[i] == (a == u),
            Err(_) => false,
        }
    };
    let mut succ = vec![None; n];
    for v in 0..n {
        let d = out[v].len();
        succ[v] = out[v]
            .iter()
            .copied()
            .find(|&w| out[v].iter().filter(|&&y| y != w && arc(w, y)).count() == d - 1);
        if d > 0 && succ[v].is_none() {
            return None;
        }
    }
    let start = (0..n).find(|&v| indeg[v] == 0).unwrap_or(0);
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut cur = start;
    while let Some(w) = succ[cur] {
        if seen[w] {
            break;
        }
        seen[w] = true;
        order.push(w);
        cur = w;
    }
    if order.len() != n {
        return None;
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut reach = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        let d = out[v].len();
        if out[v].iter().any(|&w| (pos[w] + n - i) % n == 0 || (pos[w] + n - i) % n > d) {
            return None;
        }
        reach[i] = (i + d) % n;
    }
    Some((order, reach))
}

/// Circular order of a connected graph in which every vertex's forward
/// neighbors directly follow it, with closed twins kept next to each other.
pub fn circular_order(g: &Graph) -> Option<CircularOrder> {
    let (classes, _, h) = twin_quotient(g);
    let (order, _) = quotient_round_order(&h)?;
    Some(CircularOrder {
        order: order.iter().flat_map(|&c| classes[c].iter().copied()).collect(),
    })
}

/// Flip budget: with at most this many free components every combination of
/// component flips is tried.
const MAX_EXHAUSTIVE_COMPONENTS: usize = 10;

fn quotient_round_order(h: &Graph) -> Option<(Vec<Vertex>, Vec<usize>)> {
    let (edges, x, comp) = local_tournament_orientation(h)?;
    if let Some(found) = round_order(h, &edges, &x) {
        return Some(found);
    }
    let comps = comp.iter().copied().max().map_or(0, |c| c + 1);
    let masks: Box<dyn Iterator<Item = u64>> = if comps <= MAX_EXHAUSTIVE_COMPONENTS {
        Box::new(1..(1u64 << comps))
    } else {
        Box::new((0..comps).map(|c| 1u64 << c.min(63)))
    };
    for mask in masks {
        let flipped: Vec<bool> = x
            .iter()
            .zip(&comp)
            .map(|(&b, &c)| b ^ (c < 64 && mask >> c & 1 == 1))
            .collect();
        if let Some(found) = round_order(h, &edges, &flipped) {
            return Some(found);
        }
    }
    None
}

/// Circular representation of a circular interval graph, or `None`.
/// Disconnected graphs are circular interval exactly when every component
/// is linear; their linear pieces are placed one after another.
pub fn recognize_circular(g: &Graph) -> Option<Representation> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(empty_rep(Kind::Circular));
    }
    if !g.is_connected() {
        let mut rep = recognize_linear(g)?;
        rep.kind = Kind::Circular;
        return Some(rep);
    }
    let (classes, _, h) = twin_quotient(g);
    let b = classes.len();
    let layout = if b == 1 {
        let intervals = if n >= 2 { vec![(0, 0)] } else { Vec::new() };
        Layout { blocks: classes, intervals }
    } else {
        let (order, reach) = quotient_round_order(&h)?;
        let blocks: Vec<Vec<Vertex>> = order.iter().map(|&c| classes[c].clone()).collect();
        Layout {
            blocks,
            intervals: maximal_arcs(&reach),
        }
    };
    let rep = layout.build(n, Kind::Circular);
    rep.validate(g).ok()?;
    Some(rep)
}

/// Arcs `[i, reach[i]]` that are not contained in another one; of equal
/// arcs the one with the smallest start is kept. Arcs with `reach[i] == i`
/// cover a single block and are dropped unless nothing else covers it.
fn maximal_arcs(reach: &[usize]) -> Vec<(usize, usize)> {
    let b = reach.len();
    let span = |i: usize| (reach[i] + b - i) % b;
    let inside = |i: usize, j: usize| {
        // arc i within arc j
        let off = (i + b - j) % b;
        off <= span(j) && off + span(i) <= span(j)
    };
    let mut out = Vec::new();
    for i in 0..b {
        let dominated = (0..b).any(|j| j != i && inside(i, j) && (!inside(j, i) || j < i));
        if !dominated && span(i) > 0 {
            out.push((i, reach[i]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn linear_examples() {
        let p4 = named::path(4);
        let rep = recognize_linear(&p4).unwrap();
        assert_eq!(rep.intervals.len(), 3);
        assert!(rep.gap_point().is_some());
        assert!(rep.fuzzy_edges.is_empty());
        assert_eq!(recognize_linear(&named::claw()), None);
        let k5 = named::complete(5);
        let rep = recognize_linear(&k5).unwrap();
        assert_eq!(rep.intervals.len(), 1);
        assert!(rep.phi.iter().all(|&x| x == rep.phi[0]));
        assert_eq!(recognize_linear(&named::cycle(4)), None);
    }

    #[test]
    fn circular_examples() {
        for n in 4..12 {
            let c = named::cycle(n);
            let rep = recognize_circular(&c).unwrap();
            assert_eq!(rep.intervals.len(), n);
            assert!(rep.fuzzy_edges.is_empty());
            assert_eq!(rep.materialize().unwrap(), c);
        }
        assert_eq!(recognize_circular(&named::claw()), None);
        assert!(recognize_circular(&named::path(4)).is_some());
        assert!(recognize_circular(&named::complete(3)).is_some());
        assert!(recognize_circular(&Graph::empty(1)).is_some());
    }

    #[test]
    fn disconnected() {
        let g = named::disjoint_union(&named::path(3), &named::complete(2));
        assert!(recognize_linear(&g).is_some());
        assert!(recognize_circular(&g).is_some());
        let g = named::disjoint_union(&named::cycle(5), &named::complete(2));
        assert_eq!(recognize_circular(&g), None);
        assert!(recognize_linear(&Graph::empty(3)).is_some());
    }
}
