//! Replacing a homogeneous pair of cliques by the four-vertex gadget, and
//! the inverse step that carries a representation back.

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::pairs::CliquePair;
use crate::representation::{RepError, Representation, Violation};
use crate::tightening::{collapse, TightenError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the two sides are not disjoint nonempty cliques")]
    NotCliquePair,
    #[error("the pair is not homogeneous")]
    NotHomogeneous,
    #[error("collapsing the gadget pair failed: {0}")]
    Collapse(#[from] TightenError),
    #[error("extended representation is invalid: {0}")]
    ExtensionInvalid(Violation),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// One reduction `G → G|(K1, K2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// The reduced pair, in ids of the graph before the step.
    pub pair: CliquePair,
    /// `[x1, y1, x2, y2]` in ids of the graph after the step.
    pub gadget: [Vertex; 4],
    /// Old id to new id; `None` for vertices of the pair.
    pub id_map: Vec<Option<Vertex>>,
}

impl ReductionStep {
    pub fn x_side(&self) -> [Vertex; 2] {
        [self.gadget[0], self.gadget[2]]
    }

    pub fn y_side(&self) -> [Vertex; 2] {
        [self.gadget[1], self.gadget[3]]
    }
}

/// The graphs `G⁰ … G^q` and the steps between them.
#[derive(Debug, Clone, Default)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub graphs: Vec<Graph>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One line per step: `step <i> k1 <ids> k2 <ids> gadget <x1> <y1> <x2> <y2>`,
    /// 1-based ids.
    pub fn to_text(&self) -> String {
        let ids = |vs: &[Vertex]| vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step {} k1 {} k2 {} gadget {}\n",
                i + 1,
                ids(&s.pair.k1),
                ids(&s.pair.k2),
                s.gadget.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
            ));
        }
        out
    }
}

/// Builds `G|(K1, K2)`: the pair is removed, survivors keep their relative
/// order, and `x1, y1, x2, y2` are appended with edges `x1x2`, `y1y2`,
/// `x1y1`, plus `ux1, ux2` for `u` complete to `K1` and `uy1, uy2` for `u`
/// complete to `K2`.
pub fn reduce(g: &Graph, p: &CliquePair) -> Result<(Graph, ReductionStep), ReductionError> {
    let flags = crate::pairs::pair_flags(g, &p.k1, &p.k2);
    if !crate::pairs::is_clique_pair(g, &p.k1, &p.k2) {
        return Err(ReductionError::NotCliquePair);
    }
    if !flags.homogeneous {
        return Err(ReductionError::NotHomogeneous);
    }
    let n = g.vertex_count();
    let in1 = g.membership(&p.k1);
    let in2 = g.membership(&p.k2);
    let mut id_map = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if !in1[v] && !in2[v] {
            id_map[v] = Some(next);
            next += 1;
        }
    }
    let (x1, y1, x2, y2) = (next, next + 1, next + 2, next + 3);
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .into_iter()
        .filter_map(|(u, v)| Some((id_map[u]?, id_map[v]?)))
        .collect();
    edges.extend([(x1, x2), (y1, y2), (x1, y1)]);
    let (a, b) = (p.k1[0], p.k2[0]);
    for u in 0..n {
        let Some(nu) = id_map[u] else { continue };
        if g.has_edge(u, a) {
            edges.push((nu, x1));
            edges.push((nu, x2));
        }
        if g.has_edge(u, b) {
            edges.push((nu, y1));
            edges.push((nu, y2));
        }
    }
    let reduced = Graph::from_edges(next + 4, &edges).expect("reduction edges are simple");
    Ok((
        reduced,
        ReductionStep {
            pair: p.clone(),
            gadget: [x1, y1, x2, y2],
            id_map,
        },
    ))
}

/// Carries a representation of the reduced graph back to `g_original`:
/// the gadget pair is collapsed onto two points `a, b` joined by an interval,
/// then `K1` goes to `a`, `K2` to `b`, and fuzzy choices are read from
/// `g_original`.
pub fn extend_representation(
    step: &ReductionStep,
    rep_reduced: &Representation,
    g_original: &Graph,
) -> Result<Representation, ReductionError> {
    let (g_reduced, _) = reduce(g_original, &step.pair)?;
    extend_with_reduced(step, rep_reduced, g_original, &g_reduced)
}

/// [`extend_representation`] with the reduced graph supplied by the caller.
pub fn extend_with_reduced(
    step: &ReductionStep,
    rep_reduced: &Representation,
    g_original: &Graph,
    g_reduced: &Graph,
) -> Result<Representation, ReductionError> {
    let gadget_pair = CliquePair::new(g_reduced, step.x_side().to_vec(), step.y_side().to_vec());
    let collapsed = collapse(rep_reduced, g_reduced, &gadget_pair)?;
    let a = collapsed.phi[step.gadget[0]];
    let b = collapsed.phi[step.gadget[1]];
    let n = g_original.vertex_count();
    let in1 = g_original.membership(&step.pair.k1);
    let in2 = g_original.membership(&step.pair.k2);
    let phi = (0..n)
        .map(|v| {
            if in1[v] {
                a
            } else if in2[v] {
                b
            } else {
                collapsed.phi[step.id_map[v].expect("survivor has a new id")]
            }
        })
        .collect();
    let mut rep = Representation::new(
        collapsed.kind,
        collapsed.point_count,
        phi,
        collapsed.intervals.clone(),
        Vec::new(),
    );
    rep.recompute_fuzzy_edges(g_original);
    if rep.intervals.len() > n {
        rep = rep.prune_intervals(g_original)?;
    }
    let rep = rep.compact();
    rep.validate(g_original).map_err(ReductionError::ExtensionInvalid)?;
    Ok(rep)
}
