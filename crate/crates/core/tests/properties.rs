use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_lab::oracle::{primitivity_check, ToricConfig};
use toric_lab::random::random_connected_graph;
use toric_lab::report::{analyze, AnalysisReport, AnalyzeOptions};
use toric_lab::suite::run_graph;
use toric_lab::Graph;

fn graph_from_seed(seed: u64, vertices: usize, max_edges: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected_graph(&mut rng, vertices, max_edges)
}

/// The same graph with vertices renamed and edges listed in another order.
fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let mut relabel: Vec<usize> = (0..n).collect();
    relabel.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|&[u, v]| (relabel[v], relabel[u])).collect();
    edges.shuffle(&mut rng);
    Graph::from_edges(n, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counts_and_verdicts_are_isomorphism_invariant(seed in any::<u64>(), n in 4usize..=7, extra in 0usize..=4) {
        let m = n - 1 + extra;
        let g = graph_from_seed(seed, n, m);
        let h = shuffled(&g, seed ^ 0x5eed);
        let a = run_graph(&g, false).unwrap();
        let b = run_graph(&h, false).unwrap();
        prop_assert_eq!(a.counts, b.counts);
    }

    #[test]
    fn basis_containments(seed in any::<u64>(), n in 4usize..=7, extra in 0usize..=4) {
        let m = n - 1 + extra;
        let g = graph_from_seed(seed, n, m);
        let run = run_graph(&g, false).unwrap();
        let b = &run.bases;
        prop_assert!(b.circuits().is_subset(&b.graver()));
        prop_assert!(b.universal_groebner().is_subset(&b.graver()));
        prop_assert!(b.universal_markov().is_subset(&b.universal_groebner()));
        prop_assert!(run.indispensable.is_subset(&b.universal_markov()));
        prop_assert!(run.verdict.checkers_agree());
        let config = ToricConfig::from_graph(&g);
        for e in b.elements() {
            prop_assert!(primitivity_check(&config, &e.binomial).unwrap());
            prop_assert_eq!(&e.walk.binomial(&g).unwrap(), &e.binomial);
        }
    }

    #[test]
    fn reports_round_trip(seed in any::<u64>(), n in 4usize..=6, extra in 0usize..=3) {
        let m = n - 1 + extra;
        let g = graph_from_seed(seed, n, m);
        let report = analyze(&g, AnalyzeOptions { oracle: true, ..AnalyzeOptions::default() }).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &report);
        prop_assert!(report.invariant_breaches().is_empty());
        let again = analyze(&g, AnalyzeOptions { oracle: true, ..AnalyzeOptions::default() }).unwrap();
        prop_assert_eq!(serde_json::to_string(&again).unwrap(), text);
    }
}

#[test]
fn graph_and_incidence_matrix_agree() {
    let g = Graph::parse(include_str!("../../../fixtures/graphs/k4.txt")).unwrap();
    let from_file = ToricConfig::parse(include_str!("../../../fixtures/matrices/k4-incidence.json")).unwrap();
    assert_eq!(from_file, ToricConfig::from_graph(&g));
}
