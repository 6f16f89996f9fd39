use equitiler::extremal::{build_ex2, build_obstruction, recognize_ex2, recognize_extremal, ExtremalWitness};
use equitiler::graph::ore_edge_bound;
use equitiler::oracle::kr_factor_exact;

fn ex2_params(n_max: usize, rs: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for &r in rs {
        for n in (r..=n_max).step_by(r) {
            for s in (1..=n / r).step_by(2) {
                out.push((n, r, s));
            }
        }
    }
    out
}

#[test]
fn ex2_round_trip() {
    for (n, r, s) in ex2_params(24, &[2, 3, 4, 5, 6]) {
        let g = build_ex2(n, r, s).unwrap();
        match recognize_ex2(&g, r).unwrap() {
            Some(ExtremalWitness::Ex2 { b0, b1, .. }) => {
                assert_eq!(b0.len().min(b1.len()), s.min(2 * n / r - s), "n={n} r={r} s={s}");
            }
            other => panic!("n={n} r={r} s={s}: {other:?}"),
        }
        assert!(recognize_extremal(&g, r).unwrap().is_some());
    }
}

#[test]
fn ex2_has_no_factor() {
    for (n, r, s) in ex2_params(12, &[2, 3, 4]) {
        let g = build_ex2(n, r, s).unwrap();
        assert!(kr_factor_exact(&g, r).unwrap().is_none(), "n={n} r={r} s={s}");
    }
}

#[test]
fn obstructions_are_tight() {
    for k in 1..=6 {
        let mut shapes = vec![None];
        shapes.extend((1..=k).step_by(2).map(Some));
        for m in shapes {
            let g = build_obstruction(k, m).unwrap();
            let b = ore_edge_bound(&g, k);
            assert!(b.holds, "k={k} m={m:?}");
            assert_eq!(b.worst_edge.map(|(_, _, s)| s), Some(2 * k), "k={k} m={m:?}");
        }
    }
}
