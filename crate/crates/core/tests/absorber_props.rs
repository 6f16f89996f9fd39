use equitiler::absorber::{absorb, build_absorbing_set_with, enumerate_absorbers, layered_greedy};
use equitiler::generate::random_gnp;
use equitiler::graph::find_clique_of_size;
use equitiler::oracle::{count_absorbers_exact, is_absorber};
use equitiler::partition::ConstantsConfig;
use equitiler::Graph;

#[test]
fn stored_absorbers_pass_the_oracle() {
    for seed in 0..40u64 {
        let g = random_gnp(13, 0.8, seed).unwrap();
        let Some(q) = find_clique_of_size(&g, 3, &g.all()) else { continue };
        let fam = enumerate_absorbers(&g, &q, 3, usize::MAX, seed).unwrap();
        for s in &fam.members {
            assert!(is_absorber(&g, &q, s, 3).unwrap(), "seed {seed} {s:?}");
        }
        if fam.exhaustive {
            assert_eq!(fam.members.len(), count_absorbers_exact(&g, &q, 3, usize::MAX).unwrap(), "seed {seed}");
        }
    }
}

#[test]
fn absorb_covers_exactly_the_union() {
    let g = Graph::complete(45);
    let cfg = ConstantsConfig::default();
    let m = build_absorbing_set_with(&g, 3, &cfg, 3, 5).unwrap().expect("absorbers in K_45");
    let used = m.vertices(45);
    let leftover: Vec<usize> = (0..45).filter(|&v| !used.contains(v)).take(6).collect();
    let t = absorb(&g, &m, &leftover, 1).unwrap();
    let mut got: Vec<usize> = t.cliques.iter().flatten().copied().collect();
    got.sort_unstable();
    let mut want: Vec<usize> = used.iter().chain(leftover.iter().copied()).collect();
    want.sort_unstable();
    assert_eq!(got, want);
    assert!(t.verify_partial(&g).is_ok());
}

#[test]
fn augmentation_moves_improve_profiles() {
    for seed in 0..200u64 {
        let g = random_gnp(10 + (seed % 15) as usize, 0.5 + (seed % 5) as f64 * 0.1, seed).unwrap();
        for r in 3..=4 {
            let (lf, moves) = layered_greedy(&g, r);
            assert!(lf.verify(&g).is_ok());
            for mv in &moves {
                assert!(mv.is_valid(&g, r), "seed {seed} {mv:?}");
                let top = |cs: &[Vec<usize>]| cs.iter().filter(|c| c.len() == r).count();
                assert!(top(&mv.replacement) >= top(&mv.sources));
            }
        }
    }
}
