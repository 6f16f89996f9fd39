mod common;

use equitiler::oracle::{equitable_coloring_exact, kr_factor_exact};
use equitiler::Graph;
use proptest::prelude::*;

fn independent_factor_check(g: &Graph, r: usize, cliques: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; g.n()];
    for c in cliques {
        if c.len() != r {
            return false;
        }
        for (i, &u) in c.iter().enumerate() {
            if std::mem::replace(&mut seen[u], true) {
                return false;
            }
            if c[i + 1..].iter().any(|&v| !g.has_edge(u, v)) {
                return false;
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn independent_coloring_check(g: &Graph, k: usize, classes: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; g.n()];
    for c in classes {
        for (i, &u) in c.iter().enumerate() {
            if std::mem::replace(&mut seen[u], true) || c[i + 1..].iter().any(|&v| g.has_edge(u, v)) {
                return false;
            }
        }
    }
    let lo = classes.iter().map(Vec::len).min().unwrap_or(0);
    let hi = classes.iter().map(Vec::len).max().unwrap_or(0);
    classes.len() == k && hi <= lo + 1 && seen.iter().all(|&s| s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn certificates_check_out(g in common::graph(1, 12), k in 1usize..=12) {
        let n = g.n();
        let k = 1 + (k - 1) % n;
        let c = equitable_coloring_exact(&g, k).unwrap();
        if let Some(c) = &c {
            prop_assert!(independent_coloring_check(&g, k, &c.classes));
        }
        if n % k == 0 {
            let f = kr_factor_exact(&g.complement(), n / k).unwrap();
            prop_assert_eq!(f.is_some(), c.is_some());
            if let Some(t) = f {
                prop_assert!(independent_factor_check(&g.complement(), n / k, &t.cliques));
            }
        }
    }

    #[test]
    fn adding_edges_keeps_factors(g in common::graph(3, 15), r in 2usize..=5, extra in proptest::collection::vec((0usize..15, 0usize..15), 1..6)) {
        let n = g.n() - g.n() % r;
        prop_assume!(n >= r);
        let g = g.induced(&(0..n).collect::<Vec<_>>());
        if kr_factor_exact(&g, r).unwrap().is_some() {
            let mut h = g.clone();
            for (u, v) in extra {
                if u % n != v % n {
                    h.add_edge(u % n, v % n);
                }
            }
            prop_assert!(kr_factor_exact(&h, r).unwrap().is_some());
        }
    }
}
