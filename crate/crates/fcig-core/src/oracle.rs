//! Exhaustive deciders for tiny graphs. They share nothing with the
//! recognizers beyond [`Graph`] and exist to cross-check them.
//!
//! The reasoning behind the fuzzy decider is written up in `docs/oracle.md`.

use std::collections::HashSet;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub const CIG_LIMIT: usize = 8;
pub const LIG_LIMIT: usize = 8;
pub const FCIG_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph has {n} vertices, the exhaustive search is limited to {limit}")]
pub struct TooLarge {
    pub n: usize,
    pub limit: usize,
}

fn guard(g: &Graph, limit: usize) -> Result<(), TooLarge> {
    let n = g.vertex_count();
    if n > limit {
        return Err(TooLarge { n, limit });
    }
    Ok(())
}

/// Vertices met walking clockwise from position `i` to position `j` of
/// `order`, both included.
fn arc_vertices(order: &[Vertex], i: usize, j: usize) -> impl Iterator<Item = Vertex> + '_ {
    let n = order.len();
    let len = (j + n - i) % n + 1;
    (0..len).map(move |t| order[(i + t) % n])
}

fn is_clique_iter(g: &Graph, vs: impl Iterator<Item = Vertex>) -> bool {
    let vs: Vec<Vertex> = vs.collect();
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// True iff some circular order of the vertices gives every edge a clique
/// among the vertices of one of its two closed arcs.
pub fn cig_bruteforce(g: &Graph) -> Result<bool, TooLarge> {
    guard(g, CIG_LIMIT)?;
    let n = g.vertex_count();
    if n <= 2 {
        return Ok(true);
    }
    let edges = g.edges();
    for rest in (1..n).permutations(n - 1) {
        let order: Vec<Vertex> = std::iter::once(0).chain(rest).collect();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let ok = edges.iter().all(|&(u, v)| {
            let (a, b) = (pos[u], pos[v]);
            is_clique_iter(g, arc_vertices(&order, a, b)) || is_clique_iter(g, arc_vertices(&order, b, a))
        });
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff some linear order of the vertices makes every closed
/// neighborhood a run of consecutive vertices.
pub fn lig_bruteforce(g: &Graph) -> Result<bool, TooLarge> {
    guard(g, LIG_LIMIT)?;
    let n = g.vertex_count();
    for order in (0..n).permutations(n) {
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let ok = (0..n).all(|v| {
            let ps = g.neighbors(v).iter().map(|&w| pos[w]).chain([pos[v]]);
            let (lo, hi) = ps.fold((n, 0), |(lo, hi), p| (lo.min(p), hi.max(p)));
            hi - lo == g.degree(v)
        });
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff the graph has a fuzzy circular interval representation.
pub fn fcig_bruteforce(g: &Graph) -> Result<bool, TooLarge> {
    guard(g, FCIG_LIMIT)?;
    Ok(fuzzy_search(g, false))
}

/// True iff the graph has a fuzzy linear interval representation.
pub fn flig_bruteforce(g: &Graph) -> Result<bool, TooLarge> {
    guard(g, FCIG_LIMIT)?;
    Ok(fuzzy_search(g, true))
}

/// All set partitions of `0..n` into cliques, blocks ordered by least member.
fn clique_partitions(g: &Graph) -> Vec<Vec<Vec<Vertex>>> {
    fn go(g: &Graph, v: Vertex, blocks: &mut Vec<Vec<Vertex>>, out: &mut Vec<Vec<Vec<Vertex>>>) {
        if v == g.vertex_count() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].iter().all(|&u| g.has_edge(u, v)) {
                blocks[b].push(v);
                go(g, v + 1, blocks, out);
                blocks[b].pop();
            }
        }
        blocks.push(vec![v]);
        go(g, v + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(g, 0, &mut Vec::new(), &mut out);
    out
}

fn fuzzy_search(g: &Graph, linear: bool) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    for blocks in clique_partitions(g) {
        let k = blocks.len();
        // Circular orders fix block 0 in front; linear ones try every order.
        let orders: Vec<Vec<usize>> = if linear {
            (0..k).permutations(k).collect()
        } else {
            (1..k).permutations(k - 1).map(|r| std::iter::once(0).chain(r).collect()).collect()
        };
        for order in orders {
            let cells: Vec<&Vec<Vertex>> = order.iter().map(|&b| &blocks[b]).collect();
            if cells_realize(g, &cells, linear) {
                return true;
            }
        }
    }
    false
}

/// Decides whether the occupied points, in this cyclic (or linear) order,
/// carry a representation of `g`.
fn cells_realize(g: &Graph, cells: &[&Vec<Vertex>], linear: bool) -> bool {
    let n = g.vertex_count();
    let k = cells.len();
    let mut cell_of = vec![0; n];
    for (i, c) in cells.iter().enumerate() {
        for &v in c.iter() {
            cell_of[v] = i;
        }
    }
    let arcs = |i: usize, j: usize| -> Vec<Vertex> {
        let len = (j + k - i) % k + 1;
        (0..len).flat_map(|t| cells[(i + t) % k].iter().copied()).collect()
    };
    let allowed = |i: usize, j: usize| !linear || i <= j;
    // Every clique arc is an interval with both ends in gaps.
    let mut covered = vec![false; n * n];
    for i in 0..k {
        for j in 0..k {
            if !allowed(i, j) {
                continue;
            }
            let vs = arcs(i, j);
            if is_clique_iter(g, vs.iter().copied()) {
                for &u in &vs {
                    for &v in &vs {
                        covered[u * n + v] = true;
                    }
                }
            }
        }
    }
    // Remaining edges need an interval whose ends sit exactly on their two
    // cells; a point is the end of at most one interval.
    let mut partner: Vec<Option<usize>> = vec![None; k];
    for (u, v) in g.edges() {
        if covered[u * n + v] {
            continue;
        }
        let (a, b) = (cell_of[u], cell_of[v]);
        for (x, y) in [(a, b), (b, a)] {
            match partner[x] {
                None => partner[x] = Some(y),
                Some(z) if z == y => {}
                Some(_) => return false,
            }
        }
    }
    (0..k).all(|a| match partner[a] {
        Some(b) if a < b => {
            let fits = |i: usize, j: usize| {
                allowed(i, j) && {
                    let vs = arcs(i, j);
                    vs.iter().enumerate().all(|(t, &u)| {
                        vs[t + 1..].iter().all(|&v| {
                            let cross = (cell_of[u] == i && cell_of[v] == j) || (cell_of[u] == j && cell_of[v] == i);
                            cross || g.has_edge(u, v)
                        })
                    })
                }
            };
            fits(a, b) || fits(b, a)
        }
        _ => true,
    })
}

/// Adjacency as a bit mask over the pairs `(u, v)`, `u < v`.
fn pair_mask(n: usize, has: impl Fn(usize, usize) -> bool) -> u64 {
    let mut mask = 0u64;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if has(u, v) {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    mask
}

/// Canonical mask: the least over relabelings that sort vertices by a
/// degree-based invariant, permuting freely inside equal classes.
fn canonical_mask(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let key = |v: Vertex| {
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut verts: Vec<Vertex> = (0..n).collect();
    verts.sort_by_key(|&v| key(v));
    let classes: Vec<Vec<Vertex>> = verts.chunk_by(|&a, &b| key(a) == key(b)).map(<[Vertex]>::to_vec).collect();
    let mut best = u64::MAX;
    let choices = classes.iter().map(|c| c.iter().copied().permutations(c.len()).collect::<Vec<_>>());
    for combo in choices.multi_cartesian_product() {
        let order: Vec<Vertex> = combo.into_iter().flatten().collect();
        best = best.min(pair_mask(n, |a, b| g.has_edge(order[a], order[b])));
    }
    if classes.is_empty() {
        best = 0;
    }
    best
}

/// One graph per isomorphism class on `n ≤ 8` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "enumeration is limited to 8 vertices");
    let mut level = vec![Graph::empty(0)];
    for size in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for h in &level {
            for subset in 0u32..(1 << (size - 1)) {
                let mut edges = h.edges();
                edges.extend((0..size - 1).filter(|&u| subset >> u & 1 == 1).map(|u| (u, size - 1)));
                let g = Graph::from_edges(size, &edges).expect("simple by construction");
                if seen.insert(canonical_mask(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}

/// Connected graphs on `n` vertices, one per isomorphism class.
pub fn connected_graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    graphs_up_to_isomorphism(n).into_iter().filter(|g| g.is_connected()).collect()
}
