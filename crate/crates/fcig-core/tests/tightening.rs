use fcig_core::gen;
use fcig_core::pairs::{all_found_pairs, CliquePair};
use fcig_core::tightening::{
    check_fuzzy_dominating, collapse, is_collapsed, is_tight, represent_dominating, tighten, tightening_context,
};
use fcig_core::{Graph, Kind, Representation};

const FOREIGN_ON_ARC_GRAPH: &str = "p 16 93\ne 1 2\ne 1 4\ne 1 5\ne 1 6\ne 1 7\ne 1 8\ne 1 9\ne 1 10\ne 1 11\ne 1 12\ne 1 13\ne 1 14\ne 1 15\ne 2 3\ne 2 4\ne 2 6\ne 2 8\ne 2 9\ne 2 10\ne 2 11\ne 2 12\ne 2 13\ne 2 14\ne 2 15\ne 3 5\ne 3 6\ne 3 7\ne 3 8\ne 3 9\ne 3 11\ne 3 16\ne 4 5\ne 4 6\ne 4 7\ne 4 8\ne 4 9\ne 4 10\ne 4 11\ne 4 12\ne 4 13\ne 4 14\ne 4 15\ne 5 7\ne 5 8\ne 5 10\ne 5 12\ne 5 13\ne 5 14\ne 5 15\ne 5 16\ne 6 8\ne 6 9\ne 6 10\ne 6 11\ne 6 12\ne 6 13\ne 6 14\ne 6 15\ne 7 8\ne 7 10\ne 7 12\ne 7 13\ne 7 14\ne 7 15\ne 7 16\ne 8 9\ne 8 10\ne 8 11\ne 8 12\ne 8 13\ne 8 14\ne 8 15\ne 9 10\ne 9 11\ne 9 12\ne 9 13\ne 9 14\ne 9 15\ne 10 11\ne 10 12\ne 10 13\ne 10 14\ne 10 15\ne 11 12\ne 11 13\ne 11 14\ne 11 15\ne 12 13\ne 12 14\ne 12 15\ne 13 14\ne 13 15\ne 14 15\n";

const FOREIGN_ON_ARC_REP: &str = "rep circular 27\nv 1 7\nv 2 13\nv 3 19\nv 4 4\nv 5 1\nv 6 13\nv 7 1\nv 8 10\nv 9 13\nv 10 7\nv 11 13\nv 12 4\nv 13 4\nv 14 4\nv 15 7\nv 16 22\ni 3 13\ni 5 14\ni 6 15\ni 8 20\ni 16 21\ni 17 0\ni 19 2\ni 23 7\ni 26 11\n";

/// Vertex 7 sits strictly inside the arc of K2 under a member of J and is
/// complete to both cliques; the construction must accept it.
#[test]
fn vertex_complete_to_both_on_clique_arc() {
    let g = Graph::parse(FOREIGN_ON_ARC_GRAPH).unwrap();
    let mut rep = Representation::parse(FOREIGN_ON_ARC_REP).unwrap();
    rep.recompute_fuzzy_edges(&g);
    assert_eq!(rep.validate(&g), Ok(()));
    let p = CliquePair::new(&g, vec![2, 4, 6], vec![0, 1, 3, 5, 8, 9, 10, 11, 12, 13, 14]);
    assert!(p.flags.almost_proper && p.flags.homogeneous && !p.flags.fuzzy_dominating);
    assert!(!is_tight(&rep, &p));
    let ctx = tightening_context(&rep, &g, &p).unwrap();
    assert!(!ctx.j_family.is_empty());
    let t = tighten(&rep, &g, &p).unwrap();
    assert_eq!(t.validate(&g), Ok(()));
    assert!(is_tight(&t, &p));
    let c = collapse(&rep, &g, &p).unwrap();
    assert!(is_collapsed(&c, &p));
}

#[test]
fn generated_pairs_collapse_across_shapes() {
    let mut r = gen::rng(2024);
    let mut built = 0;
    for round in 0..6000 {
        let n = 5 + round % 30;
        let kind = if round % 3 == 0 { Kind::Linear } else { Kind::Circular };
        let mut params = gen::RepParams::new(n, kind);
        params.slots = (n / (2 + round % 4) + round % 3).max(2);
        params.max_span = 1 + round % 5;
        params.interval_attempts = n * (1 + round % 7);
        let (g, rep) = gen::random_fcig(&mut r, &params, true);
        for p in all_found_pairs(&g).unwrap() {
            if !is_tight(&rep, &p) && !p.flags.fuzzy_dominating {
                built += 1;
            }
            let t = tighten(&rep, &g, &p).unwrap();
            assert!(is_tight(&t, &p));
            assert_eq!(t.kind, kind);
            let c = collapse(&rep, &g, &p).unwrap();
            assert!(is_collapsed(&c, &p));
            assert_eq!(c.validate(&g), Ok(()));
        }
    }
    assert!(built >= 5, "only {built} pairs needed the construction");
}

/// Homogeneous pair with random outside: each outside vertex is complete to
/// K1, K2, both or neither; all other edges are random.
fn homogeneous_instance(r: &mut impl rand::Rng) -> (fcig_core::Graph, CliquePair) {
    let (a, b) = (r.gen_range(1..=3), r.gen_range(1..=3));
    let outside = r.gen_range(0..=12);
    let n = a + b + outside;
    let k1: Vec<usize> = (0..a).collect();
    let k2: Vec<usize> = (a..a + b).collect();
    let mut edges = Vec::new();
    for side in [&k1, &k2] {
        for (i, &u) in side.iter().enumerate() {
            edges.extend(side[i + 1..].iter().map(|&v| (u, v)));
        }
    }
    for &u in &k1 {
        for &v in &k2 {
            if r.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    let p_out = r.gen_range(0.5..1.0);
    for z in a + b..n {
        let kind: u8 = r.gen_range(0..4);
        if kind & 1 == 1 {
            edges.extend(k1.iter().map(|&u| (u, z)));
        }
        if kind & 2 == 2 {
            edges.extend(k2.iter().map(|&u| (u, z)));
        }
        for w in z + 1..n {
            if r.gen_bool(p_out) {
                edges.push((z, w));
            }
        }
    }
    let g = fcig_core::Graph::from_edges(n, &edges).unwrap();
    let p = CliquePair::new(&g, k1, k2);
    (g, p)
}

/// The dominating condition checked by trying every split of S3.
fn dominating_bruteforce(g: &fcig_core::Graph, p: &CliquePair) -> bool {
    let complete = |z: usize, k: &[usize]| k.iter().all(|&u| g.has_edge(u, z));
    let clique = |s: &[usize]| s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v)));
    let (mut s1, mut s2, mut s3) = (Vec::new(), Vec::new(), Vec::new());
    for z in 0..g.vertex_count() {
        if p.k1.contains(&z) || p.k2.contains(&z) {
            continue;
        }
        match (complete(z, &p.k1), complete(z, &p.k2)) {
            (true, true) => s3.push(z),
            (true, false) => s1.push(z),
            (false, true) => s2.push(z),
            (false, false) => return false,
        }
    }
    let joined = |x: &[usize], y: &[usize]| x.iter().all(|&u| y.iter().all(|&v| g.has_edge(u, v)));
    if !clique(&s1) || !clique(&s2) || !joined(&s1, &s3) || !joined(&s2, &s3) {
        return false;
    }
    (0u32..1 << s3.len()).any(|mask| {
        let (s4, s5): (Vec<usize>, Vec<usize>) = s3.iter().enumerate().map(|(i, &v)| (mask >> i & 1 == 1, v)).fold(
            (Vec::new(), Vec::new()),
            |(mut x, mut y), (left, v)| {
                if left {
                    x.push(v)
                } else {
                    y.push(v)
                }
                (x, y)
            },
        );
        clique(&s4) && clique(&s5)
    })
}

#[test]
fn dominating_check_matches_exhaustive_split() {
    let mut r = gen::rng(404);
    let mut positives = 0;
    for _ in 0..4000 {
        let (g, p) = homogeneous_instance(&mut r);
        assert!(p.flags.homogeneous);
        let expected = dominating_bruteforce(&g, &p);
        let got = check_fuzzy_dominating(&g, &p);
        assert_eq!(got.is_ok(), expected, "{}", g.to_text());
        if let Ok(parts) = got {
            positives += 1;
            let rep = represent_dominating(&g, &p, &parts, fcig_core::Kind::Circular).unwrap();
            assert_eq!(rep.validate(&g), Ok(()));
        }
    }
    assert!(positives > 200, "only {positives} dominating pairs");
}
