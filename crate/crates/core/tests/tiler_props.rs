use equitiler::extremal::{build_ex2, ex2_layout};
use equitiler::generate::random_gnp;
use equitiler::oracle::kr_factor_exact;
use equitiler::partition::{finish_good, ConstantsConfig, RsPartition};
use equitiler::tiler::{multipartite_factor, tile_extremal, TileOutcome};
use equitiler::{Graph, Result, Tiling};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle_sub(h: &Graph, t: usize) -> Result<Option<Tiling>> {
    kr_factor_exact(h, t)
}

fn perturbations(n: usize, r: usize, s: usize) -> Vec<(&'static str, Graph)> {
    let (a, b0, b1) = ex2_layout(n, r, s).unwrap();
    let base = build_ex2(n, r, s).unwrap();
    let mut out = vec![("plain", base.clone())];
    if let Some(p) = a.first() {
        let mut g = base.clone();
        g.add_edge(p[0], p[p.len() - 1]);
        out.push(("a-edge", g));
    }
    let mut g = base.clone();
    g.add_edge(b0[0], b1[b1.len() - 1]);
    out.push(("b-edge", g));
    let mut g = base.clone();
    let (u, v) = base.edges().nth(n).unwrap();
    g.remove_edge(u, v);
    out.push(("delete", g));
    out
}

#[test]
fn tiler_agrees_with_oracle_near_ex2() {
    for (n, r) in [(12, 3), (18, 3), (24, 3), (36, 3), (16, 4), (24, 4), (36, 4)] {
        for s in (1..=n / r).step_by(2) {
            let (a, _, _) = ex2_layout(n, r, s).unwrap();
            for (name, g) in perturbations(n, r, s) {
                let p = RsPartition::new(n, r, a.clone()).unwrap();
                let gp = finish_good(&g, p, ConstantsConfig::desk(n, r).resolve(r, r - 2).unwrap());
                let (out, trace) = tile_extremal(&g, &gp, &oracle_sub, 0).unwrap();
                let truth = kr_factor_exact(&g, r).unwrap().is_some();
                match &out {
                    TileOutcome::Factor(t) => assert!(t.verify_factor(&g).is_ok()),
                    TileOutcome::Ex2Signal => assert!(!truth),
                    TileOutcome::Failed(why) => assert!(!truth, "n={n} r={r} s={s} {name}: {why}"),
                }
                assert_eq!(matches!(out, TileOutcome::Factor(_)), truth, "n={n} r={r} s={s} {name}");
                if let Some(&b) = trace.residual_sizes.last() {
                    assert_eq!(b % 2, 0, "n={n} r={r} s={s} {name}");
                }
            }
        }
    }
}

#[test]
fn multipartite_factor_above_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..60 {
        let r = rng.gen_range(2..=5);
        let m = rng.gen_range(4..=30);
        let n = r * m;
        let parts: Vec<Vec<usize>> = (0..r).map(|i| (i * m..(i + 1) * m).collect()).collect();
        let need = m - m / (2 * r);
        let mut g = Graph::new(n);
        for i in 0..r {
            for j in i + 1..r {
                for &u in &parts[i] {
                    for &v in &parts[j] {
                        g.add_edge(u, v);
                    }
                }
            }
        }
        let noise = random_gnp(n, 0.5, trial).unwrap();
        for (u, v) in noise.edges() {
            if u / m != v / m && g.degree_into(u, &equitiler::VertexSet::from_iter(n, parts[v / m].iter().copied())) > need
                && g.degree_into(v, &equitiler::VertexSet::from_iter(n, parts[u / m].iter().copied())) > need
            {
                g.remove_edge(u, v);
            }
        }
        let t = multipartite_factor(&parts, &g, trial).unwrap().expect("factor above threshold");
        assert!(t.verify_factor(&g).is_ok());
        assert!(t.cliques.iter().all(|c| (0..r).all(|i| c.iter().filter(|&&v| v / m == i).count() == 1)));
    }
}
