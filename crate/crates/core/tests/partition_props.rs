use equitiler::extremal::{build_ex2, ex2_layout};
use equitiler::generate::random_gnp;
use equitiler::partition::{classify, peel_partition, refine_to_good, validate_good, ConstantsConfig, RefineOutcome, RsPartition};
use equitiler::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// EX2 with a few random pairs flipped.
fn noisy_ex2(n: usize, r: usize, s: usize, flips: usize, seed: u64) -> Graph {
    let mut g = build_ex2(n, r, s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..flips {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.remove_edge(u, v) {
            g.add_edge(u, v);
        }
    }
    g
}

fn instances() -> Vec<(Graph, usize)> {
    let mut out = Vec::new();
    let mut seed = 0;
    for (n, r) in [(12, 3), (18, 3), (24, 3), (30, 3), (16, 4), (24, 4), (32, 4)] {
        for s in (1..=n / r).step_by(2) {
            for flips in [0, 1, 2, 4] {
                seed += 1;
                out.push((noisy_ex2(n, r, s, flips, seed), r));
            }
        }
    }
    out
}

fn degree_into(g: &Graph, v: usize, part: &VertexSet) -> usize {
    g.degree_into(v, part)
}

#[test]
fn refinement_keeps_part_sizes_and_bounds_drift() {
    let mut refined = 0;
    for (g, r) in instances() {
        let n = g.n();
        for cfg in [ConstantsConfig::default(), ConstantsConfig::desk(n, r)] {
            let (p, s) = peel_partition(&g, r, &cfg).unwrap();
            if s == 0 {
                continue;
            }
            let Ok((outcome, trace)) = refine_to_good(&g, &p, &cfg) else { continue };
            refined += 1;
            let mut cur = p.clone();
            for step in &trace.steps {
                let before = cur.clone();
                for &(x, y) in step.exchanged.iter().chain(&step.rebalanced) {
                    let home = cur.part_of(x);
                    cur.move_vertex(x, step.k - 1);
                    cur.move_vertex(y, home);
                }
                assert!(cur.parts.iter().all(|a| a.len() == n / r), "step {}: sizes {:?}", step.k, cur.parts.iter().map(|a| a.len()).collect::<Vec<_>>());
                let moved = step.exchanged.len() + step.rebalanced.len();
                for v in 0..n {
                    for i in 0..s {
                        let (a, b) = (degree_into(&g, v, before.part(i)), degree_into(&g, v, cur.part(i)));
                        assert!(a.abs_diff(b) <= moved, "vertex {v} part {i}: {a} -> {b} with {moved} swaps");
                    }
                }
            }
            match outcome {
                RefineOutcome::Good(gp) => {
                    assert_eq!(gp.partition.parts, cur.parts);
                    assert!(validate_good(&g, &gp).is_empty());
                }
                RefineOutcome::Unvalidated(gp, v) => {
                    assert_eq!(gp.partition.parts, cur.parts);
                    assert!(!v.is_empty());
                }
                RefineOutcome::Ex1(w) => assert!(equitiler::extremal::verify_witness(&g, r, &w).is_ok()),
            }
        }
    }
    assert!(refined > 50, "only {refined} refinements ran");
}

/// High-degree vertices are exceptional for at most one part when every part
/// is sparse.
#[test]
fn exceptional_for_at_most_one_part() {
    for seed in 0..300u64 {
        let (n, r) = if seed % 2 == 0 { (24, 3) } else { (24, 4) };
        let s = r - 2;
        let (a, _, _) = ex2_layout(n, r, 1).unwrap();
        let g = noisy_ex2(n, r, 1, (seed % 5) as usize, seed);
        let p = RsPartition::new(n, r, a[..s].to_vec()).unwrap();
        for delta in [equitiler::rational::q(1, 24), equitiler::rational::q(1, 12)] {
            let cls = classify(&g, &p, delta);
            assert!(cls.fact_violations.is_empty(), "seed {seed}: {:?}", cls.fact_violations);
        }
    }
    let g = random_gnp(20, 0.9, 3).unwrap();
    let p = RsPartition::new(20, 4, vec![(0..5).collect(), (5..10).collect()]).unwrap();
    assert!(classify(&g, &p, equitiler::rational::q(1, 20)).fact_violations.is_empty());
}
