//! End-to-end recognition: reduce until no pair is left, recognize the
//! terminal graph as a (linear) circular interval graph, then carry the
//! representation back through the reductions.

use thiserror::Error;

use crate::cig::{recognize_circular, recognize_linear};
use crate::graph::{Graph, Vertex};
use crate::pairs::{verify_pair, CandidateScanner, PairError, ScanMode};
use crate::reduction::{extend_with_reduced, reduce, ReductionError, ReductionTrace};
use crate::representation::{Arc, Kind, Representation, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub scan: ScanMode,
    /// Ask for a linear representation (each component fuzzy linear).
    pub linear: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            scan: ScanMode::Amortized,
            linear: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
}

/// Counters of one connected run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub reductions: usize,
    pub scans: usize,
    pub initial_candidates: usize,
    pub edges: usize,
}

/// The reduction run on one connected component.
#[derive(Debug, Clone)]
pub struct ComponentRun {
    /// Component vertices in ids of the input graph, ascending; position `i`
    /// is vertex `i` of the component graph.
    pub vertices: Vec<Vertex>,
    pub trace: ReductionTrace,
    pub stats: Stats,
}

/// Why the answer is NO: the terminal graph of a component is not a
/// (linear) circular interval graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoWitness {
    pub component: usize,
    pub terminal_graph: Graph,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub answer: Answer,
    /// Present iff the answer is YES; always accepted by `validate`.
    pub representation: Option<Representation>,
    pub components: Vec<ComponentRun>,
    pub no_witness: Option<NoWitness>,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    /// Total number of reductions over all components.
    pub fn reductions(&self) -> usize {
        self.components.iter().map(|c| c.trace.len()).sum()
    }

    /// Trace of a connected input; `None` for inputs with other than one
    /// component.
    pub fn trace(&self) -> Option<&ReductionTrace> {
        match self.components.as_slice() {
            [c] => Some(&c.trace),
            _ => None,
        }
    }

    /// One line per step, each prefixed with its component index.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.components.iter().enumerate() {
            for line in c.trace.to_text().lines() {
                out.push_str(&format!("component {} {}\n", i + 1, line));
            }
        }
        out
    }
}

/// Failures here are internal errors: a correct run never produces one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("input graph is not connected")]
    NotConnected,
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("structural check failed: {0}")]
    Invariant(String),
    #[error("final representation rejected: {0}")]
    Unsound(Violation),
}

fn invariant(ok: bool, msg: impl FnOnce() -> String) -> Result<(), PipelineError> {
    if ok {
        Ok(())
    } else {
        Err(PipelineError::Invariant(msg()))
    }
}

/// Outcome of one connected run before assembly.
struct Connected {
    rep: Option<Representation>,
    run: ComponentRun,
    terminal: Graph,
}

fn run_connected(g: &Graph, opts: Options) -> Result<Connected, PipelineError> {
    if !g.is_connected() {
        return Err(PipelineError::NotConnected);
    }
    let m0 = g.edge_count();
    let mut scanner = CandidateScanner::new(g, opts.scan);
    let mut trace = ReductionTrace {
        steps: Vec::new(),
        graphs: vec![g.clone()],
    };
    loop {
        let current = trace.graphs.last().expect("trace starts with the input");
        let Some(pair) = scanner.find_any_pair(current)? else {
            break;
        };
        invariant(verify_pair(current, &pair), || format!("step {}: found pair fails verification", trace.len() + 1))?;
        let (next, step) = reduce(current, &pair)?;
        invariant(next.edge_count() < current.edge_count(), || {
            format!("step {}: edge count did not drop", trace.len() + 1)
        })?;
        invariant(next.is_connected(), || format!("step {}: reduced graph is disconnected", trace.len() + 1))?;
        scanner.record_reduction(current, &next, &step);
        trace.steps.push(step);
        trace.graphs.push(next);
        invariant(trace.len() <= m0, || format!("more than {m0} reductions"))?;
    }
    let stats = Stats {
        reductions: trace.len(),
        scans: scanner.scans(),
        initial_candidates: scanner.initial_candidates(),
        edges: m0,
    };
    if opts.scan == ScanMode::Amortized {
        invariant(stats.scans <= stats.initial_candidates, || {
            format!("{} scans exceed {} initial candidates", stats.scans, stats.initial_candidates)
        })?;
    }
    let terminal = trace.graphs.last().expect("nonempty").clone();
    let base = if opts.linear {
        recognize_linear(&terminal)
    } else {
        recognize_circular(&terminal)
    };
    let rep = match base {
        None => None,
        Some(mut rep) => {
            for h in (0..trace.len()).rev() {
                rep = extend_with_reduced(&trace.steps[h], &rep, &trace.graphs[h], &trace.graphs[h + 1])?;
            }
            rep.validate(g).map_err(PipelineError::Unsound)?;
            Some(rep)
        }
    };
    let run = ComponentRun {
        vertices: (0..g.vertex_count()).collect(),
        trace,
        stats,
    };
    Ok(Connected { rep, run, terminal })
}

fn single(g: &Graph, opts: Options) -> Result<Verdict, PipelineError> {
    let c = run_connected(g, opts)?;
    let answer = if c.rep.is_some() { Answer::Yes } else { Answer::No };
    let no_witness = match c.rep {
        Some(_) => None,
        None => Some(NoWitness {
            component: 0,
            terminal_graph: c.terminal,
        }),
    };
    Ok(Verdict {
        answer,
        representation: c.rep,
        components: vec![c.run],
        no_witness,
    })
}

/// Recognition of a connected graph as fuzzy circular interval.
pub fn recognize_fcig_connected(g: &Graph, scan: ScanMode) -> Result<Verdict, PipelineError> {
    single(g, Options { scan, linear: false })
}

/// Recognition of a connected graph as fuzzy linear interval.
pub fn recognize_flig_connected(g: &Graph, scan: ScanMode) -> Result<Verdict, PipelineError> {
    single(g, Options { scan, linear: true })
}

/// Recognition of any graph. A disconnected graph is fuzzy circular interval
/// iff every component is fuzzy linear interval; the component
/// representations are then laid out one after another on one circle.
pub fn recognize_fcig(g: &Graph) -> Result<Verdict, PipelineError> {
    recognize(g, Options::default())
}

/// [`recognize_fcig`] with options; `linear` asks for a fuzzy linear
/// representation instead.
pub fn recognize(g: &Graph, opts: Options) -> Result<Verdict, PipelineError> {
    let n = g.vertex_count();
    let kind = if opts.linear { Kind::Linear } else { Kind::Circular };
    if n == 0 {
        return Ok(Verdict {
            answer: Answer::Yes,
            representation: Some(Representation::new(kind, 1, Vec::new(), Vec::new(), Vec::new())),
            components: Vec::new(),
            no_witness: None,
        });
    }
    if g.is_connected() {
        return single(g, opts);
    }
    let parts = g.connected_components();
    let mut runs = Vec::with_capacity(parts.len());
    let mut pieces = Vec::with_capacity(parts.len());
    let mut witness = None;
    for (i, vs) in parts.iter().enumerate() {
        let h = g.induced(vs);
        let mut c = run_connected(&h, Options { linear: true, ..opts })?;
        c.run.vertices = vs.clone();
        match c.rep {
            Some(rep) => pieces.push(rep),
            None if witness.is_none() => {
                witness = Some(NoWitness {
                    component: i,
                    terminal_graph: c.terminal,
                })
            }
            None => {}
        }
        runs.push(c.run);
    }
    if witness.is_some() {
        return Ok(Verdict {
            answer: Answer::No,
            representation: None,
            components: runs,
            no_witness: witness,
        });
    }
    let rep = assemble(&parts, &pieces, n, kind)?;
    rep.validate(g).map_err(PipelineError::Unsound)?;
    Ok(Verdict {
        answer: Answer::Yes,
        representation: Some(rep),
        components: runs,
        no_witness: None,
    })
}

/// Places linear component representations on consecutive stretches of one
/// circle, each cut at its gap point so that the gap ends its stretch.
fn assemble(parts: &[Vec<Vertex>], pieces: &[Representation], n: usize, kind: Kind) -> Result<Representation, PipelineError> {
    let mut phi = vec![0; n];
    let mut intervals = Vec::new();
    let mut fuzzy = Vec::new();
    let mut base = 0;
    for (vs, rep) in parts.iter().zip(pieces) {
        let p = rep.point_count;
        let gap = rep
            .gap_point()
            .ok_or_else(|| PipelineError::Invariant("component representation has no gap point".into()))?;
        let shift = |x: usize| base + (x + p - gap - 1) % p;
        for (local, &v) in vs.iter().enumerate() {
            phi[v] = shift(rep.phi[local]);
        }
        intervals.extend(rep.intervals.iter().map(|a| Arc::new(shift(a.start), shift(a.end))));
        fuzzy.extend(rep.fuzzy_edges.iter().map(|&(u, v)| {
            let (a, b) = (vs[u], vs[v]);
            (a.min(b), a.max(b))
        }));
        base += p;
    }
    Ok(Representation::new(kind, base, phi, intervals, fuzzy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn c4_takes_one_reduction() {
        let g = named::cycle(4);
        let v = recognize_fcig(&g).unwrap();
        assert!(v.is_yes());
        assert_eq!(v.trace().unwrap().len(), 1);
        assert_eq!(v.representation.unwrap().validate(&g), Ok(()));
    }

    #[test]
    fn claw_is_no_without_reductions() {
        let g = named::claw();
        let v = recognize_fcig(&g).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert_eq!(v.reductions(), 0);
        assert_eq!(v.no_witness.unwrap().terminal_graph, g);
    }

    #[test]
    fn linear_examples() {
        let v = recognize_flig_connected(&named::path(4), ScanMode::Amortized).unwrap();
        assert!(v.is_yes());
        assert_eq!(v.reductions(), 0);
        let v = recognize_flig_connected(&named::cycle(4), ScanMode::Amortized).unwrap();
        assert!(v.is_yes());
        assert_eq!(v.representation.unwrap().kind, Kind::Linear);
        let v = recognize_flig_connected(&named::cycle(6), ScanMode::Amortized).unwrap();
        assert_eq!(v.answer, Answer::No);
    }

    #[test]
    fn disconnected_examples() {
        let g = named::disjoint_union(&named::cycle(4), &named::cycle(4));
        let v = recognize_fcig(&g).unwrap();
        assert!(v.is_yes());
        assert_eq!(v.representation.as_ref().unwrap().validate(&g), Ok(()));
        let g = named::disjoint_union(&named::cycle(6), &named::complete(2));
        let v = recognize_fcig(&g).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert_eq!(v.no_witness.unwrap().component, 0);
        for n in 0..4 {
            let g = Graph::empty(n);
            assert!(recognize_fcig(&g).unwrap().is_yes());
        }
    }

    #[test]
    fn connected_entry_points_reject_disconnected_input() {
        let g = Graph::empty(2);
        assert_eq!(
            recognize_fcig_connected(&g, ScanMode::Amortized).unwrap_err(),
            PipelineError::NotConnected
        );
    }
}
