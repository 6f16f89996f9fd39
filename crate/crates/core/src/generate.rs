//! Instance families: the extremal constructions, the coloring-side
//! obstructions and seeded random graphs.

use crate::error::{Error, Result};
use crate::extremal::{build_ex1_like, build_ex2, build_obstruction};
use crate::graph::{sigma, Graph};
use crate::rational::{int, q, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Ex1,
    Ex2,
    KClique,
    Biclique,
    RandomOre,
    RandomGnp,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ex1" => Family::Ex1,
            "ex2" => Family::Ex2,
            "kclique" => Family::KClique,
            "biclique" => Family::Biclique,
            "random-ore" => Family::RandomOre,
            "random-gnp" => Family::RandomGnp,
            other => return Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        })
    }
}

/// Parameters shared by all families; each family reads the ones it needs.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub p: Option<f64>,
    pub alpha: Option<Q>,
    pub seed: u64,
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidArgument(format!("missing parameter {name}")))
}

pub fn generate(family: Family, p: &Params) -> Result<Graph> {
    match family {
        Family::Ex1 => build_ex1_like(need(p.n, "n")?, need(p.r, "r")?),
        Family::Ex2 => build_ex2(need(p.n, "n")?, need(p.r, "r")?, need(p.s, "s")?),
        Family::KClique => build_obstruction(need(p.k, "k")?, None),
        Family::Biclique => build_obstruction(need(p.k, "k")?, Some(need(p.m, "m")?)),
        Family::RandomGnp => {
            let prob = p.p.ok_or_else(|| Error::InvalidArgument("missing parameter p".into()))?;
            random_gnp(need(p.n, "n")?, prob, p.seed)
        }
        Family::RandomOre => {
            let r = need(p.r, "r")?;
            random_ore(need(p.n, "n")?, r, p.alpha.unwrap_or(int(0)), p.p, p.seed)
        }
    }
}

pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} is not a probability")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// `sigma >= 2 (1 - 1/r - alpha) n - 2`, as an integer bound.
pub fn ore_bound(n: usize, r: usize, alpha: Q) -> i64 {
    ((int(1) - q(1, r as i64) - alpha) * int(2 * n as i64) - int(2)).ceil().to_integer()
}

/// `G(n, p)` (default `p = 1 - 1/r`) repaired until
/// `sigma(G) >= 2 (1 - 1/r - alpha) n - 2`: the non-adjacent pair of least
/// degree sum gets an edge, with ties broken at random.
pub fn random_ore(n: usize, r: usize, alpha: Q, p: Option<f64>, seed: u64) -> Result<Graph> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    if alpha < int(0) {
        return Err(Error::InvalidArgument("alpha must be non-negative".into()));
    }
    let p = p.unwrap_or(1.0 - 1.0 / r as f64);
    let mut g = random_gnp(n, p, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let bound = ore_bound(n, r, alpha);
    loop {
        if sigma(&g).at_least(bound) {
            return Ok(g);
        }
        let mut best = usize::MAX;
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !g.has_edge(u, v) {
                    let d = g.degree(u) + g.degree(v);
                    if d < best {
                        best = d;
                        pairs.clear();
                    }
                    if d == best {
                        pairs.push((u, v));
                    }
                }
            }
        }
        let (u, v) = pairs[rng.gen_range(0..pairs.len())];
        g.add_edge(u, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ore_repair_meets_bound() {
        let g = random_ore(30, 3, q(1, 50), None, 7).unwrap();
        assert!(sigma(&g).at_least(ore_bound(30, 3, q(1, 50))));
        let again = random_ore(30, 3, q(1, 50), None, 7).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn families() {
        let p = Params { k: Some(3), m: Some(3), ..Default::default() };
        assert_eq!(generate(Family::Biclique, &p).unwrap(), Graph::complete_bipartite(3, 3));
        assert_eq!(generate(Family::KClique, &p).unwrap(), Graph::complete(4));
        assert!("nope".parse::<Family>().is_err());
    }
}
