use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fcig_core::cig::{recognize_circular, recognize_linear};
use fcig_core::gen;
use fcig_core::oracle;
use fcig_core::pairs::{all_found_pairs, find_pair_from, CandidateScanner, CliquePair, ScanMode};
use fcig_core::pipeline::{recognize, Options};
use fcig_core::reduction::reduce;
use fcig_core::tightening::{collapse, tighten};
use fcig_core::{Graph, Kind, Representation, Vertex};

mod bench;
mod render;

#[derive(Parser)]
#[command(name = "fcig", version, about = "Recognize fuzzy circular interval graphs and check their representations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide membership; exit 0 for YES, 1 for NO.
    Recognize {
        graph: PathBuf,
        /// Write the representation here on YES.
        #[arg(long)]
        emit_rep: Option<PathBuf>,
        /// Ask for a fuzzy linear representation.
        #[arg(long)]
        linear: bool,
        /// Rescan every candidate pair after each reduction.
        #[arg(long)]
        rescan: bool,
        /// Write the reduction steps here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// On NO, write the terminal graph of the failing component here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check a representation against a graph; exit 0 if valid, 1 if not.
    Validate { graph: PathBuf, rep: PathBuf },
    /// Apply one reduction and print the reduced graph.
    Reduce {
        graph: PathBuf,
        /// First clique, 1-based ids separated by commas. Defaults to the
        /// first pair the scanner finds.
        #[arg(long, requires = "k2")]
        k1: Option<String>,
        #[arg(long, requires = "k1")]
        k2: Option<String>,
    },
    /// List the pairs found from every candidate edge.
    Pairs { graph: PathBuf },
    /// Recognize a circular (or linear) interval graph directly.
    Cig {
        graph: PathBuf,
        #[arg(long)]
        linear: bool,
        #[arg(long)]
        emit_rep: Option<PathBuf>,
    },
    /// Exhaustive decision for tiny graphs; exit 2 when over budget.
    Oracle { class: OracleClass, graph: PathBuf },
    /// Generate an instance; positives come with a representation.
    Gen {
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Edge probability for random graphs.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Graph output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Representation output file.
        #[arg(long)]
        rep_out: Option<PathBuf>,
    },
    /// Draw a valid representation as SVG.
    Render {
        graph: PathBuf,
        rep: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Time recognition on generated instances in both scan modes.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Make a representation tight for a pair.
    Tighten {
        graph: PathBuf,
        rep: PathBuf,
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
    },
    /// Move both cliques of a pair onto the ends of one interval.
    Collapse {
        graph: PathBuf,
        rep: PathBuf,
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleClass {
    Cig,
    Lig,
    Fcig,
    Flig,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Cig,
    Fcig,
    Random,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse(&text).with_context(|| format!("parsing graph {}", path.display()))
}

fn read_rep(path: &Path) -> Result<Representation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Representation::parse(&text).with_context(|| format!("parsing representation {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parse_ids(s: &str, n: usize) -> Result<Vec<Vertex>> {
    s.split(',')
        .map(|t| {
            let id: usize = t.trim().parse().with_context(|| format!("bad vertex id {t:?}"))?;
            if id == 0 || id > n {
                bail!("vertex {id} out of range 1..={n}");
            }
            Ok(id - 1)
        })
        .collect()
}

fn ids(vs: &[Vertex]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn pair_arg(g: &Graph, k1: &str, k2: &str) -> Result<CliquePair> {
    let (a, b) = (parse_ids(k1, g.vertex_count())?, parse_ids(k2, g.vertex_count())?);
    if !fcig_core::pairs::is_clique_pair(g, &a, &b) {
        bail!("--k1 and --k2 must be disjoint nonempty cliques");
    }
    Ok(CliquePair::new(g, a, b))
}

fn verdict_code(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Recognize {
            graph,
            emit_rep,
            linear,
            rescan,
            trace,
            witness,
        } => {
            let g = read_graph(&graph)?;
            let scan = if rescan { ScanMode::Rescan } else { ScanMode::Amortized };
            let v = recognize(&g, Options { scan, linear })?;
            if let Some(path) = trace {
                write(&path, &v.trace_text())?;
            }
            if let (Some(path), Some(rep)) = (emit_rep, &v.representation) {
                write(&path, &rep.to_text())?;
            }
            if let (Some(path), Some(w)) = (witness, &v.no_witness) {
                write(&path, &w.terminal_graph.to_text())?;
            }
            println!("{}", if v.is_yes() { "YES" } else { "NO" });
            Ok(verdict_code(v.is_yes()))
        }
        Cmd::Validate { graph, rep } => {
            let g = read_graph(&graph)?;
            let r = read_rep(&rep)?;
            match r.validate(&g) {
                Ok(()) => {
                    println!("OK");
                    Ok(ExitCode::SUCCESS)
                }
                Err(v) => {
                    println!("INVALID {v}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Reduce { graph, k1, k2 } => {
            let g = read_graph(&graph)?;
            let pair = match (k1, k2) {
                (Some(a), Some(b)) => pair_arg(&g, &a, &b)?,
                _ => match CandidateScanner::new(&g, ScanMode::Amortized).find_any_pair(&g)? {
                    Some(p) => p,
                    None => {
                        println!("c no pair found");
                        return Ok(ExitCode::from(1));
                    }
                },
            };
            let (h, step) = reduce(&g, &pair)?;
            println!("c k1 {} k2 {}", ids(&pair.k1), ids(&pair.k2));
            println!("c gadget {}", ids(&step.gadget));
            print!("{}", h.to_text());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Pairs { graph } => {
            let g = read_graph(&graph)?;
            for (u, v) in g.candidate_pairs() {
                match find_pair_from(&g, u, v)? {
                    Some(p) => {
                        let f = p.flags;
                        println!(
                            "seed {},{} k1 {} k2 {} proper {} homogeneous {} almost_proper {} dominating {}",
                            u + 1,
                            v + 1,
                            ids(&p.k1),
                            ids(&p.k2),
                            f.proper,
                            f.homogeneous,
                            f.almost_proper,
                            f.fuzzy_dominating
                        );
                    }
                    None => println!("seed {},{} none", u + 1, v + 1),
                }
            }
            let found = all_found_pairs(&g)?;
            Ok(verdict_code(!found.is_empty()))
        }
        Cmd::Cig { graph, linear, emit_rep } => {
            let g = read_graph(&graph)?;
            let rep = if linear { recognize_linear(&g) } else { recognize_circular(&g) };
            if let (Some(path), Some(r)) = (emit_rep, &rep) {
                write(&path, &r.to_text())?;
            }
            println!("{}", if rep.is_some() { "YES" } else { "NO" });
            Ok(verdict_code(rep.is_some()))
        }
        Cmd::Oracle { class, graph } => {
            let g = read_graph(&graph)?;
            let answer = match class {
                OracleClass::Cig => oracle::cig_bruteforce(&g),
                OracleClass::Lig => oracle::lig_bruteforce(&g),
                OracleClass::Fcig => oracle::fcig_bruteforce(&g),
                OracleClass::Flig => oracle::flig_bruteforce(&g),
            }?;
            println!("{}", if answer { "yes" } else { "no" });
            Ok(verdict_code(answer))
        }
        Cmd::Gen {
            kind,
            n,
            seed,
            p,
            out,
            rep_out,
        } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            let mut rng = gen::rng(seed);
            let (g, rep) = match kind {
                GenKind::Random => (gen::random_graph(&mut rng, n, p), None),
                GenKind::Cig | GenKind::Fcig => {
                    let mut params = gen::RepParams::new(n, Kind::Circular);
                    params.exact_endpoints = matches!(kind, GenKind::Fcig);
                    let (g, rep) = gen::random_fcig(&mut rng, &params, false);
                    (g, Some(rep))
                }
            };
            match out {
                Some(path) => write(&path, &g.to_text())?,
                None => print!("{}", g.to_text()),
            }
            match (rep_out, rep) {
                (Some(path), Some(rep)) => write(&path, &rep.to_text())?,
                (Some(_), None) => bail!("random graphs come without a representation"),
                _ => {}
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Render { graph, rep, out } => {
            let g = read_graph(&graph)?;
            let r = read_rep(&rep)?;
            r.validate(&g).context("representation does not match the graph")?;
            let svg = render::svg(&r);
            match out {
                Some(path) => write(&path, &svg)?,
                None => print!("{svg}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench { n, trials, seed } => {
            let rows = bench::run(n, trials, seed, &[ScanMode::Amortized, ScanMode::Rescan])?;
            println!("{}", bench::HEADER);
            for row in rows {
                println!("{}", row.line());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tighten { graph, rep, k1, k2 } => {
            let g = read_graph(&graph)?;
            let r = read_rep(&rep)?;
            let pair = pair_arg(&g, &k1, &k2)?;
            print!("{}", tighten(&r, &g, &pair)?.to_text());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Collapse { graph, rep, k1, k2 } => {
            let g = read_graph(&graph)?;
            let r = read_rep(&rep)?;
            let pair = pair_arg(&g, &k1, &k2)?;
            print!("{}", collapse(&r, &g, &pair)?.to_text());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
