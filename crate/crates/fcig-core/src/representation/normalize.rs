//! Making every fuzzy pair proper and homogeneous.
//!
//! For a fuzzy interval `[p, q]` with `X` on `p` and `Y` on `q`, vertices that
//! are complete or anticomplete to the other side are peeled off one at a
//! time. Complete vertices move just inside the interval, anticomplete ones
//! just outside, and each anticomplete vertex gets a new interval restoring
//! the adjacencies it lost. The peel order decides the cross adjacency of two
//! peeled vertices: whichever left first fixed it by its type.
//!
//! Circle layout around the interval, clockwise:
//!
//! ```text
//! [A-peeled X, oldest first] p [C-peeled X newest first, + starts of A-peeled Y]
//!   ... interior ...
//! [C-peeled Y oldest first, + ends of A-peeled X] q [A-peeled Y, newest first]
//! ```

use crate::graph::{Graph, Vertex};

use super::{Arc, Point, RepError, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, Copy)]
struct Peel {
    vertex: Vertex,
    side: Side,
    complete: bool,
    time: usize,
}

/// Peels vertices of `xs`/`ys` that are complete or anticomplete to the
/// remaining other side, lowest id first, `xs` before `ys`.
fn peel_order(g: &Graph, xs: &[Vertex], ys: &[Vertex]) -> Vec<Peel> {
    let mut cur_x: Vec<Vertex> = xs.to_vec();
    let mut cur_y: Vec<Vertex> = ys.to_vec();
    let mut cnt_x: Vec<usize> = cur_x
        .iter()
        .map(|&x| cur_y.iter().filter(|&&y| g.has_edge(x, y)).count())
        .collect();
    let mut cnt_y: Vec<usize> = cur_y
        .iter()
        .map(|&y| cur_x.iter().filter(|&&x| g.has_edge(x, y)).count())
        .collect();
    let mut out = Vec::new();
    while !cur_x.is_empty() && !cur_y.is_empty() {
        let (ny, nx) = (cur_y.len(), cur_x.len());
        if let Some(i) = cnt_x.iter().position(|&c| c == 0 || c == ny) {
            let x = cur_x.remove(i);
            let c = cnt_x.remove(i);
            for (j, &y) in cur_y.iter().enumerate() {
                if g.has_edge(x, y) {
                    cnt_y[j] -= 1;
                }
            }
            out.push(Peel { vertex: x, side: Side::X, complete: c == ny, time: out.len() });
        } else if let Some(j) = cnt_y.iter().position(|&c| c == 0 || c == nx) {
            let y = cur_y.remove(j);
            let c = cnt_y.remove(j);
            for (i, &x) in cur_x.iter().enumerate() {
                if g.has_edge(x, y) {
                    cnt_x[i] -= 1;
                }
            }
            out.push(Peel { vertex: y, side: Side::Y, complete: c == nx, time: out.len() });
        } else {
            break;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Old(Point),
    Seat(Vertex),
    StartOf(Vertex),
    EndOf(Vertex),
}

fn relocate(rep: &Representation, arc: Arc, peels: &[Peel]) -> Representation {
    let (p, q) = (arc.start, arc.end);
    let pick = |side: Side, complete: bool| -> Vec<Peel> {
        peels
            .iter()
            .copied()
            .filter(|e| e.side == side && e.complete == complete)
            .collect()
    };
    // Peels are produced in time order, so each list is already ascending.
    let ax = pick(Side::X, false);
    let cx = pick(Side::X, true);
    let ay = pick(Side::Y, false);
    let cy = pick(Side::Y, true);

    let before_p: Vec<Token> = ax.iter().map(|e| Token::Seat(e.vertex)).collect();

    // Clockwise after p: C-peeled X newest first; a start for an A-peeled y
    // goes right before the C-peeled X that left earlier than y.
    let cx_desc: Vec<Peel> = cx.iter().rev().copied().collect();
    let mut after_p = Vec::new();
    for idx in 0..=cx_desc.len() {
        let mut starts: Vec<Peel> = ay
            .iter()
            .copied()
            .filter(|y| cx_desc.iter().position(|x| x.time < y.time).unwrap_or(cx_desc.len()) == idx)
            .collect();
        starts.sort_by_key(|y| std::cmp::Reverse(y.time));
        after_p.extend(starts.iter().map(|y| Token::StartOf(y.vertex)));
        if let Some(x) = cx_desc.get(idx) {
            after_p.push(Token::Seat(x.vertex));
        }
    }

    // Clockwise before q: C-peeled Y oldest first; the end for an A-peeled x
    // goes right after the C-peeled Y that left earlier than x.
    let mut before_q = Vec::new();
    for idx in 0..=cy.len() {
        if idx > 0 {
            before_q.push(Token::Seat(cy[idx - 1].vertex));
        }
        let ends = ax
            .iter()
            .filter(|x| cy.iter().filter(|y| y.time < x.time).count() == idx);
        before_q.extend(ends.map(|x| Token::EndOf(x.vertex)));
    }

    let after_q: Vec<Token> = ay.iter().rev().map(|e| Token::Seat(e.vertex)).collect();

    let mut seq = Vec::with_capacity(rep.point_count + 2 * peels.len());
    for o in 0..rep.point_count {
        if o == p {
            seq.extend_from_slice(&before_p);
            seq.push(Token::Old(o));
            seq.extend_from_slice(&after_p);
        } else if o == q {
            seq.extend_from_slice(&before_q);
            seq.push(Token::Old(o));
            seq.extend_from_slice(&after_q);
        } else {
            seq.push(Token::Old(o));
        }
    }
    let n = rep.vertex_count();
    let mut old_index = vec![0; rep.point_count];
    let mut seat = vec![usize::MAX; n];
    let mut start_of = vec![usize::MAX; n];
    let mut end_of = vec![usize::MAX; n];
    for (i, t) in seq.iter().enumerate() {
        match *t {
            Token::Old(o) => old_index[o] = i,
            Token::Seat(v) => seat[v] = i,
            Token::StartOf(v) => start_of[v] = i,
            Token::EndOf(v) => end_of[v] = i,
        }
    }
    let phi = (0..n)
        .map(|v| if seat[v] != usize::MAX { seat[v] } else { old_index[rep.phi[v]] })
        .collect();
    let mut intervals: Vec<Arc> = rep
        .intervals
        .iter()
        .map(|a| Arc::new(old_index[a.start], old_index[a.end]))
        .collect();
    for x in &ax {
        intervals.push(Arc::new(seat[x.vertex], end_of[x.vertex]));
    }
    for y in &ay {
        intervals.push(Arc::new(start_of[y.vertex], seat[y.vertex]));
    }
    Representation::new(rep.kind, seq.len(), phi, intervals, Vec::new())
}

/// Returns a representation of the same graph in which, for every fuzzy
/// interval `[p, q]`, the pair `(Φ⁻¹(p), Φ⁻¹(q))` is proper and homogeneous.
pub fn make_fuzzy_pairs_proper_homogeneous(
    rep: &Representation,
    g: &Graph,
) -> Result<Representation, RepError> {
    rep.validate(g).map_err(RepError::Invalid)?;
    let mut cur = rep.clone();
    let mut changed = false;
    loop {
        let occ = cur.occupants();
        let next = cur.fuzzy_intervals().into_iter().find_map(|a| {
            let peels = peel_order(g, &occ[a.start], &occ[a.end]);
            (!peels.is_empty()).then_some((a, peels))
        });
        let Some((arc, peels)) = next else { break };
        cur = relocate(&cur, arc, &peels);
        changed = true;
    }
    if !changed {
        return Ok(rep.clone());
    }
    cur.recompute_fuzzy_edges(g);
    let n = g.vertex_count();
    if cur.intervals.len() > n {
        cur = cur.prune_intervals(g)?;
    }
    cur.validate(g).map_err(RepError::NormalizeFailed)?;
    Ok(cur)
}
