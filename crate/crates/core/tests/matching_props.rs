mod common;

use equitiler::generate::random_gnp;
use equitiler::matching::{maximum_matching, sn_sets};
use equitiler::Graph;
use proptest::prelude::*;

/// Maximum matching size by dynamic programming over vertex subsets.
fn brute_matching(g: &Graph) -> usize {
    let n = g.n();
    let mut best = vec![0u8; 1 << n];
    for mask in 1usize..1 << n {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut b = best[rest];
        for u in g.neighbors(v).iter() {
            if rest >> u & 1 == 1 {
                b = b.max(1 + best[rest & !(1 << u)]);
            }
        }
        best[mask] = b;
    }
    best[(1 << n) - 1] as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn no_augmenting_path(g in common::graph(0, 14)) {
        let m = maximum_matching(&g);
        prop_assert!(m.is_valid_in(&g));
        prop_assert_eq!(m.size(), brute_matching(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn second_neighbourhoods_are_anticomplete(g in common::graph(2, 24)) {
        let m = maximum_matching(&g);
        let exposed = m.exposed();
        for (i, &x) in exposed.iter().enumerate() {
            for &y in &exposed[i + 1..] {
                let (sx, sy) = sn_sets(&g, &m, x, y).unwrap();
                prop_assert_eq!(g.edges_between(&sx, &sy), 0, "{:?} x={} y={}", g, x, y);
            }
        }
    }
}

#[test]
fn bounded_degree_graphs_have_large_matchings() {
    let mut checked = 0;
    for seed in 0..20_000u64 {
        let n = 5 + (seed % 36) as usize;
        let p = 0.15 + (seed % 7) as f64 * 0.1;
        let g = random_gnp(n, p, seed).unwrap();
        let (lo, hi) = (g.min_degree(), g.max_degree());
        let Some(d) = (1..=lo).rev().find(|&d| n >= 3 * d + 2 && hi + 2 * d < n) else { continue };
        checked += 1;
        assert!(maximum_matching(&g).size() > d, "{g:?} d={d}");
    }
    assert!(checked > 1000, "only {checked} instances met the degree window");
}
