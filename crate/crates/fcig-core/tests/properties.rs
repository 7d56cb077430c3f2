use fcig_core::cig::{recognize_circular, recognize_linear};
use fcig_core::gen;
use fcig_core::oracle::{cig_bruteforce, fcig_bruteforce, lig_bruteforce};
use fcig_core::pairs::ScanMode;
use fcig_core::pipeline::{recognize, Options};
use fcig_core::{Graph, Kind, Representation};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn generated(seed: u64, n: usize, linear: bool) -> (Graph, Representation) {
    let kind = if linear { Kind::Linear } else { Kind::Circular };
    gen::random_fcig(&mut gen::rng(seed), &gen::RepParams::new(n, kind), false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn yes_answers_carry_valid_certificates(g in graph_strategy(9), linear in any::<bool>()) {
        let v = recognize(&g, Options { scan: ScanMode::Amortized, linear }).unwrap();
        if let Some(rep) = &v.representation {
            prop_assert_eq!(rep.validate(&g), Ok(()));
            prop_assert_eq!(rep.kind == Kind::Linear, linear);
        }
        prop_assert_eq!(v.is_yes(), v.representation.is_some());
    }

    #[test]
    fn scan_modes_agree(g in graph_strategy(9)) {
        let a = recognize(&g, Options { scan: ScanMode::Amortized, linear: false }).unwrap();
        let b = recognize(&g, Options { scan: ScanMode::Rescan, linear: false }).unwrap();
        prop_assert_eq!(a.answer, b.answer);
    }

    #[test]
    fn linear_implies_circular(g in graph_strategy(10)) {
        if recognize_linear(&g).is_some() {
            prop_assert!(recognize_circular(&g).is_some());
        }
        let lin = recognize(&g, Options { scan: ScanMode::Amortized, linear: true }).unwrap();
        if lin.is_yes() {
            prop_assert!(recognize(&g, Options::default()).unwrap().is_yes());
        }
    }

    #[test]
    fn oracle_classes_nest(g in graph_strategy(6)) {
        if lig_bruteforce(&g).unwrap() {
            prop_assert!(cig_bruteforce(&g).unwrap());
        }
        if cig_bruteforce(&g).unwrap() {
            prop_assert!(fcig_bruteforce(&g).unwrap());
        }
    }

    #[test]
    fn generated_graphs_are_recognized(seed in any::<u64>(), n in 1usize..40, linear in any::<bool>()) {
        let (g, rep) = generated(seed, n, linear);
        prop_assert_eq!(rep.validate(&g), Ok(()));
        let v = recognize(&g, Options { scan: ScanMode::Amortized, linear }).unwrap();
        prop_assert!(v.is_yes());
    }

    #[test]
    fn text_forms_round_trip(seed in any::<u64>(), n in 1usize..30) {
        let (g, rep) = generated(seed, n, seed % 2 == 0);
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g.clone());
        let back = Representation::parse(&rep.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), rep.to_text());
        prop_assert_eq!(back.validate(&g), Ok(()));
    }

    #[test]
    fn recognition_ignores_labels(seed in any::<u64>(), g in graph_strategy(8)) {
        let mut r = gen::rng(seed);
        let dummy = Representation::new(Kind::Circular, 1, vec![0; g.vertex_count()], Vec::new(), Vec::new());
        let (h, _) = gen::shuffle_vertices(&mut r, &g, &dummy);
        let a = recognize(&g, Options::default()).unwrap();
        let b = recognize(&h, Options::default()).unwrap();
        prop_assert_eq!(a.answer, b.answer);
    }
}
