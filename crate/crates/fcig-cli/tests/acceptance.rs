//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so that the lines always reach the output.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use fcig_core::gen;
use fcig_core::graph::named;
use fcig_core::oracle::{cig_bruteforce, connected_graphs_up_to_isomorphism, fcig_bruteforce, lig_bruteforce};
use fcig_core::pairs::{all_found_pairs, verify_pair, CliquePair, ScanMode};
use fcig_core::pipeline::{recognize, recognize_fcig, recognize_fcig_connected, Answer, Options, Verdict};
use fcig_core::reduction::{extend_representation, extend_with_reduced, reduce};
use fcig_core::tightening::{collapse, is_collapsed, is_tight, tighten};
use fcig_core::{cig, Graph, Kind};

const CERTIFICATE_INSTANCES: usize = 1000;
const RANDOM_SIX_VERTEX_GRAPHS: usize = 500;
const ROUND_TRIPS: usize = 500;
const SCALING_SIZES: [usize; 4] = [50, 100, 200, 400];
const SCALING_TRIALS: usize = 9;
const MAX_EXPONENT: f64 = 3.5;

struct Outcome {
    pass: bool,
    detail: String,
}

/// Independent replay of a YES run: checks every step of the trace and
/// redoes the extension with explicit tighten/collapse checks. Returns the
/// number of violated checks.
fn structural_violations(g: &Graph, v: &Verdict, steps: &mut usize) -> usize {
    let mut bad = 0;
    *steps += v.reductions();
    for run in &v.components {
        let t = &run.trace;
        let m = t.graphs[0].edge_count();
        bad += usize::from(t.len() > m);
        for (h, step) in t.steps.iter().enumerate() {
            let (before, after) = (&t.graphs[h], &t.graphs[h + 1]);
            bad += usize::from(after.edge_count() >= before.edge_count());
            bad += usize::from(!after.is_connected());
            bad += usize::from(!verify_pair(before, &step.pair));
        }
        if run.stats.scans > run.stats.initial_candidates {
            bad += 1;
        }
        if v.answer == Answer::No {
            continue;
        }
        let terminal = t.graphs.last().unwrap();
        let base = if v.components.len() > 1 {
            cig::recognize_linear(terminal)
        } else {
            cig::recognize_circular(terminal)
        };
        let Some(mut rep) = base else {
            bad += 1;
            continue;
        };
        for h in (0..t.len()).rev() {
            let step = &t.steps[h];
            let reduced = &t.graphs[h + 1];
            let gadget = CliquePair::new(reduced, step.x_side().to_vec(), step.y_side().to_vec());
            match tighten(&rep, reduced, &gadget) {
                Ok(tight) => bad += usize::from(!is_tight(&tight, &gadget)),
                Err(_) => bad += 1,
            }
            match collapse(&rep, reduced, &gadget) {
                Ok(c) => bad += usize::from(!is_collapsed(&c, &gadget)),
                Err(_) => bad += 1,
            }
            match extend_with_reduced(step, &rep, &t.graphs[h], reduced) {
                Ok(next) => rep = next,
                Err(_) => {
                    bad += 1;
                    break;
                }
            }
        }
    }
    if v.is_yes() && v.representation.as_ref().map(|r| r.validate(g).is_ok()) != Some(true) {
        bad += 1;
    }
    bad
}

fn certificate_instance(seed_rng: &mut impl rand::Rng, i: usize) -> Graph {
    let n = seed_rng.gen_range(5..=60);
    let kind = if i % 4 == 0 { Kind::Linear } else { Kind::Circular };
    let mut params = gen::RepParams::new(n, kind);
    params.slots = (n / (2 + i % 3)).max(2);
    params.max_span = 1 + i % 5;
    gen::random_fcig(seed_rng, &params, i % 5 != 0).0
}

fn criterion_1(checks: &mut (usize, usize)) -> Outcome {
    let mut r = gen::rng(1001);
    let mut yes = 0;
    let mut sizes = (usize::MAX, 0);
    for i in 0..CERTIFICATE_INSTANCES {
        let g = certificate_instance(&mut r, i);
        sizes = (sizes.0.min(g.vertex_count()), sizes.1.max(g.vertex_count()));
        if let Ok(v) = recognize_fcig(&g) {
            if v.is_yes() && v.representation.as_ref().unwrap().validate(&g).is_ok() {
                yes += 1;
            }
            checks.0 += structural_violations(&g, &v, &mut checks.1);
        }
    }
    Outcome {
        pass: yes == CERTIFICATE_INSTANCES,
        detail: format!("{yes}/{CERTIFICATE_INSTANCES} certified YES, n from {} to {}", sizes.0, sizes.1),
    }
}

fn criterion_2(checks: &mut (usize, usize)) -> Outcome {
    let mut graphs: Vec<Graph> = (1..=5).flat_map(connected_graphs_up_to_isomorphism).collect();
    let exhaustive = graphs.len();
    let mut r = gen::rng(2002);
    for i in 0..RANDOM_SIX_VERTEX_GRAPHS {
        let p = 0.3 + 0.4 * (i % 5) as f64 / 4.0;
        graphs.push(gen::random_connected_graph(&mut r, 6, p));
    }
    let mut agree = 0;
    let mut yes = 0;
    for g in &graphs {
        let expected = fcig_bruteforce(g).unwrap();
        if let Ok(v) = recognize_fcig(g) {
            checks.0 += structural_violations(g, &v, &mut checks.1);
            if v.is_yes() == expected {
                agree += 1;
            }
            yes += usize::from(v.is_yes());
        }
    }
    Outcome {
        pass: agree == graphs.len(),
        detail: format!(
            "{agree}/{} agree ({exhaustive} exhaustive up to 5 vertices, {RANDOM_SIX_VERTEX_GRAPHS} random on 6; {yes} YES)",
            graphs.len()
        ),
    }
}

fn criterion_3() -> Outcome {
    let (mut total, mut agree) = (0, 0);
    for n in 1..=7 {
        for g in connected_graphs_up_to_isomorphism(n) {
            total += 2;
            let circ = cig::recognize_circular(&g);
            if circ.is_some() == cig_bruteforce(&g).unwrap() && circ.is_none_or(|r| r.validate(&g).is_ok()) {
                agree += 1;
            }
            let lin = cig::recognize_linear(&g);
            if lin.is_some() == lig_bruteforce(&g).unwrap() && lin.is_none_or(|r| r.validate(&g).is_ok()) {
                agree += 1;
            }
        }
    }
    Outcome {
        pass: agree == total,
        detail: format!("{agree}/{total} decisions agree over connected graphs up to 7 vertices"),
    }
}

fn criterion_5() -> Outcome {
    let verdict = |g: &Graph, linear: bool| recognize(g, Options { scan: ScanMode::Amortized, linear }).ok();
    let mut failures = Vec::new();
    let c4 = verdict(&named::cycle(4), false);
    let p4_like = c4
        .as_ref()
        .and_then(|v| v.trace())
        .map(|t| t.len() == 1 && cig::recognize_linear(&t.graphs[1]).is_some() && t.graphs[1].edge_count() == 3);
    if !(c4.as_ref().map(Verdict::is_yes) == Some(true) && p4_like == Some(true)) {
        failures.push("C4");
    }
    if verdict(&named::claw(), false).map(|v| v.is_yes()) != Some(false) {
        failures.push("claw");
    }
    for n in 4..=12 {
        if verdict(&named::cycle(n), false).map(|v| v.is_yes()) != Some(true) {
            failures.push("cycle");
        }
    }
    if verdict(&named::cycle(6), true).map(|v| v.is_yes()) != Some(false) {
        failures.push("C6 linear");
    }
    let c4c4 = named::disjoint_union(&named::cycle(4), &named::cycle(4));
    if verdict(&c4c4, false).map(|v| v.is_yes()) != Some(true) {
        failures.push("C4+C4");
    }
    let c6k2 = named::disjoint_union(&named::cycle(6), &named::complete(2));
    if verdict(&c6k2, false).map(|v| v.is_yes()) != Some(false) {
        failures.push("C6+K2");
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "all 14 named verdicts match".into()
        } else {
            format!("mismatch on {}", failures.join(", "))
        },
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}

fn criterion_6() -> Outcome {
    let mut points = Vec::new();
    let mut counter_ok = true;
    let mut ratio = Vec::new();
    for &n in &SCALING_SIZES {
        let mut times = Vec::new();
        for trial in 0..SCALING_TRIALS {
            let mut rng = gen::rng(6000 + trial as u64);
            let (g, _) = gen::scaling_instance(&mut rng, n);
            ratio.push(g.edge_count() as f64 / n as f64);
            let start = Instant::now();
            let v = recognize_fcig_connected(&g, ScanMode::Amortized);
            times.push(start.elapsed().as_secs_f64());
            match v {
                Ok(v) if v.is_yes() => {
                    let s = v.components[0].stats;
                    counter_ok &= s.scans <= s.initial_candidates;
                }
                _ => counter_ok = false,
            }
        }
        points.push(((n as f64).ln(), median(times).ln()));
    }
    let k = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let num: f64 = points.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = points.iter().map(|&(x, _)| (x - mx).powi(2)).sum();
    let slope = num / den;
    let avg_ratio = ratio.iter().sum::<f64>() / ratio.len() as f64;
    Outcome {
        pass: slope <= MAX_EXPONENT && counter_ok,
        detail: format!(
            "fitted exponent {slope:.2} (limit {MAX_EXPONENT}), mean m/n {avg_ratio:.2}, scan counters {}",
            if counter_ok { "within bound" } else { "exceeded" }
        ),
    }
}

fn criterion_7() -> Outcome {
    let mut r = gen::rng(7007);
    let (mut cases, mut ok, mut draws) = (0, 0, 0);
    while cases < ROUND_TRIPS && draws < 100_000 {
        draws += 1;
        let n = 6 + draws % 25;
        let mut params = gen::RepParams::new(n, Kind::Circular);
        params.slots = (n / (2 + draws % 3)).max(2);
        let (g, _) = gen::random_fcig(&mut r, &params, true);
        let Ok(pairs) = all_found_pairs(&g) else { continue };
        for p in pairs.into_iter().take(2) {
            if cases == ROUND_TRIPS {
                break;
            }
            cases += 1;
            let good = reduce(&g, &p).ok().and_then(|(h, step)| {
                let rep = recognize_fcig_connected(&h, ScanMode::Amortized).ok()?.representation?;
                let back = extend_representation(&step, &rep, &g).ok()?;
                back.validate(&g).ok()
            });
            ok += usize::from(good.is_some());
        }
    }
    Outcome {
        pass: cases == ROUND_TRIPS && ok == cases,
        detail: format!("{ok}/{cases} extensions validate"),
    }
}

fn run_cli(args: &[String]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fcig")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

/// Bench rows end in a wall-clock time; everything before it must match.
fn mask_seconds(bytes: &[u8]) -> Vec<u8> {
    let text = String::from_utf8_lossy(bytes);
    text.lines()
        .map(|l| l.rsplit_once(' ').map_or(l, |(head, _)| head).to_string())
        .collect::<Vec<_>>()
        .join("\n")
        .into_bytes()
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let file = |name: &str| d.join(name).to_str().unwrap().to_string();
    std::fs::write(d.join("c4.txt"), named::cycle(4).to_text()).unwrap();
    std::fs::write(d.join("claw.txt"), named::claw().to_text()).unwrap();
    let mut r = gen::rng(8008);
    let (g, _) = gen::random_fcig(&mut r, &gen::RepParams::new(30, Kind::Circular), true);
    std::fs::write(d.join("g.txt"), g.to_text()).unwrap();
    run_cli(&["cig".into(), file("c4.txt"), "--emit-rep".into(), file("c4.rep")]);

    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<String>>();
    // (arguments, output files written by the command)
    let commands: Vec<(Vec<String>, Vec<String>)> = vec![
        (
            s(&["recognize", &file("g.txt"), "--emit-rep", &file("o.rep"), "--trace", &file("o.trace")]),
            vec![file("o.rep"), file("o.trace")],
        ),
        (s(&["recognize", &file("g.txt"), "--rescan"]), vec![]),
        (s(&["recognize", &file("claw.txt"), "--witness", &file("w.txt")]), vec![file("w.txt")]),
        (s(&["validate", &file("c4.txt"), &file("c4.rep")]), vec![]),
        (s(&["reduce", &file("g.txt")]), vec![]),
        (s(&["pairs", &file("g.txt")]), vec![]),
        (s(&["cig", &file("g.txt")]), vec![]),
        (s(&["oracle", "fcig", &file("c4.txt")]), vec![]),
        (
            s(&["gen", "fcig", "--n", "12", "--seed", "3", "--out", &file("gg.txt"), "--rep-out", &file("gg.rep")]),
            vec![file("gg.txt"), file("gg.rep")],
        ),
        (s(&["gen", "cig", "--n", "12", "--seed", "3"]), vec![]),
        (s(&["gen", "random", "--n", "6", "--seed", "3"]), vec![]),
        (s(&["render", &file("c4.txt"), &file("c4.rep")]), vec![]),
        (s(&["collapse", &file("c4.txt"), &file("c4.rep"), "--k1", "1,2", "--k2", "3,4"]), vec![]),
        (s(&["tighten", &file("c4.txt"), &file("c4.rep"), "--k1", "1,2", "--k2", "3,4"]), vec![]),
        (s(&["bench", "--n", "50", "--trials", "2", "--seed", "4"]), vec![]),
    ];
    let mut diffs = Vec::new();
    for (args, outputs) in &commands {
        let mut runs = Vec::new();
        for _ in 0..2 {
            let (code, mut stdout) = run_cli(args);
            if args[0] == "bench" {
                stdout = mask_seconds(&stdout);
            }
            let files: Vec<Vec<u8>> = outputs.iter().map(|f| std::fs::read(Path::new(f)).unwrap_or_default()).collect();
            runs.push((code, stdout, files));
        }
        if runs[0] != runs[1] || runs[0].0 == Some(2) {
            diffs.push(args[0].clone());
        }
    }
    Outcome {
        pass: diffs.is_empty(),
        detail: if diffs.is_empty() {
            format!("{} commands byte-identical across two runs", commands.len())
        } else {
            format!("differences or errors in: {}", diffs.join(", "))
        },
    }
}

fn main() {
    // (violations, reduction steps replayed)
    let mut checks = (0, 0);
    let report: Vec<(u8, &str, Outcome)> = vec![
        (1, "certificate soundness", criterion_1(&mut checks)),
        (2, "fuzzy oracle completeness", criterion_2(&mut checks)),
        (3, "circular/linear oracle completeness", criterion_3()),
        (
            4,
            "structural checks",
            Outcome {
                pass: checks.0 == 0,
                detail: format!("{} violations over {} reduction steps in the runs of criteria 1 and 2", checks.0, checks.1),
            },
        ),
        (5, "named instances", criterion_5()),
        (6, "complexity scaling", criterion_6()),
        (7, "reduction round trips", criterion_7()),
        (8, "CLI determinism", criterion_8()),
    ];
    let mut all = true;
    for (id, name, o) in &report {
        println!("criterion {id} {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
    }
    if !all {
        std::process::exit(1);
    }
}
