mod common;

use equitiler::enumerate::{labeled_count, labeled_graph};
use equitiler::graph::{cliques_of_size, find_clique_of_size, low_degree_set, ore_edge_bound, sigma};
use equitiler::io::{parse, write, Format};
use equitiler::oracle::Combinations;
use equitiler::rational::int;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

#[test]
fn edge_bound_matches_complement_sigma() {
    for n in 1..=6 {
        for mask in 0..labeled_count(n) {
            let g = labeled_graph(n, mask);
            let h = g.complement();
            for k in 0..=n {
                let via_sigma = sigma(&h).at_least(2 * (n as i64 - k as i64) - 2);
                assert_eq!(ore_edge_bound(&g, k).holds, via_sigma, "{g:?} k={k}");
            }
        }
    }
}

#[test]
fn clique_search_matches_enumeration() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..300 {
        let g = common::graph(1, 12).new_tree(&mut runner).unwrap().current();
        let all: Vec<usize> = (0..g.n()).collect();
        for r in 1..=5 {
            let brute: Vec<Vec<usize>> = Combinations::new(&all, r).filter(|c| g.is_clique(c)).collect();
            assert_eq!(find_clique_of_size(&g, r, &g.all()), brute.first().cloned(), "{g:?} r={r}");
            assert_eq!(cliques_of_size(&g, r, &g.all(), usize::MAX).len(), brute.len());
        }
    }
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in common::graph(0, 40)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn edge_list_and_dimacs_round_trip(g in common::graph(0, 30)) {
        for f in [Format::Edgelist, Format::Dimacs] {
            prop_assert_eq!(&parse(&write(&g, f), f).unwrap(), &g);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn low_degree_vertices_form_a_clique(g in common::dense_graph(1, 32, 0.3), t in 0usize..32) {
        if sigma(&g).at_least(2 * t as i64) {
            let s = low_degree_set(&g, int(t as i64)).to_vec();
            prop_assert!(g.is_clique(&s), "{:?} t={}", g, t);
        }
    }
}
