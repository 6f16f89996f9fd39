//! `(r,s)`-partitions: peeling sparse parts, classifying vertices against
//! the parts, and refining toward a good partition.

use crate::bitset::VertexSet;
use crate::cover::Violation;
use crate::error::{Error, Result};
use crate::extremal::{self, ExtremalWitness, EXACT_MIS_CAP};
use crate::graph::{low_degree_set, Graph};
use crate::matching::{bipartite_matching, maximum_matching};
use crate::rational::{self, int, q, serde_q, Q};
use crate::search::{self, Found};
use serde::{Deserialize, Serialize};

// ====================================================================
// Constants
// ====================================================================

/// Tunable constants. The `gamma` chain is `gamma_i = (1/r) * gamma_step^(r+1-i)`
/// unless overridden; `alpha`, `beta'` and `beta` default to fixed multiples
/// of `gamma_s`, which keeps them strictly between `gamma_s` and `gamma_{s+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConstantsConfig {
    #[serde(with = "serde_q")]
    pub gamma_step: Q,
    /// Explicit `gamma_1..gamma_r`.
    pub gammas: Option<Vec<String>>,
    /// Explicit `gamma` (the sparse-set probe threshold).
    pub gamma: Option<String>,
    #[serde(with = "serde_q")]
    pub alpha_mult: Q,
    #[serde(with = "serde_q")]
    pub beta_prime_mult: Q,
    #[serde(with = "serde_q")]
    pub beta_mult: Q,
    pub alpha: Option<String>,
    pub beta_prime: Option<String>,
    pub beta: Option<String>,
    #[serde(with = "serde_q")]
    pub epsilon: Q,
    #[serde(with = "serde_q")]
    pub xi: Q,
    #[serde(with = "serde_q")]
    pub mu: Q,
    /// Each constant in a chain must be at most this fraction of the next.
    #[serde(with = "serde_q")]
    pub max_ratio: Q,
    /// Place `alpha`, `beta'`, `beta` at 1/4, 1/2, 3/4 of the way from
    /// `gamma_s` to `gamma_{s+1}` instead of using the multipliers.
    pub interpolate: bool,
    /// Node budget for sparse-set and independent-set searches.
    pub search_nodes: u64,
    pub seed: u64,
}

impl Default for ConstantsConfig {
    fn default() -> Self {
        ConstantsConfig {
            gamma_step: q(1, 10),
            gammas: None,
            gamma: None,
            alpha_mult: int(2),
            beta_prime_mult: int(4),
            beta_mult: int(8),
            alpha: None,
            beta_prime: None,
            beta: None,
            epsilon: q(1, 50),
            xi: q(2, 25),
            mu: q(1, 10),
            max_ratio: q(4, 5),
            interpolate: false,
            search_nodes: 2_000_000,
            seed: 0,
        }
    }
}

/// Constants resolved for a given `r` and `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    pub r: usize,
    pub s: usize,
    #[serde(with = "serde_q")]
    pub gamma: Q,
    /// `gammas[i]` is `gamma_i` for `i = 1..=r+1`; index 0 repeats `gamma`.
    #[serde(with = "serde_qvec")]
    pub gammas: Vec<Q>,
    #[serde(with = "serde_q")]
    pub alpha: Q,
    #[serde(with = "serde_q")]
    pub beta_prime: Q,
    #[serde(with = "serde_q")]
    pub beta: Q,
    /// `delta = gamma_s`
    #[serde(with = "serde_q")]
    pub delta: Q,
    /// `zeta = gamma_{s+1}`
    #[serde(with = "serde_q")]
    pub zeta: Q,
    #[serde(with = "serde_q")]
    pub epsilon: Q,
    #[serde(with = "serde_q")]
    pub xi: Q,
    #[serde(with = "serde_q")]
    pub mu: Q,
}

mod serde_qvec {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(crate::rational::format))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| crate::rational::parse(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

fn parse_opt(v: &Option<String>, name: &str) -> Result<Option<Q>> {
    match v {
        None => Ok(None),
        Some(s) => rational::parse(s).map(Some).ok_or_else(|| Error::InvalidArgument(format!("{name}: bad rational {s:?}"))),
    }
}

impl ConstantsConfig {
    /// Constants sized for small `n`: every `gamma_i n^2` lies in `[1, 2)`,
    /// so peeled parts may carry a single edge.
    pub fn desk(n: usize, r: usize) -> Self {
        let n2 = (n * n).max(1) as i64;
        let gammas = (1..=r).map(|i| rational::format(&(q((r + 2 + i) as i64, (r + 2) as i64) / int(n2)))).collect();
        ConstantsConfig {
            gammas: Some(gammas),
            gamma: Some(rational::format(&q(1, n2))),
            interpolate: true,
            max_ratio: int(1),
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ConstantsConfig = serde_json::from_str(text)?;
        cfg.resolve(3, 1)?;
        Ok(cfg)
    }

    /// The `gamma` chain `[gamma, gamma_1, .., gamma_{r+1}]`.
    pub fn gamma_chain(&self, r: usize) -> Result<Vec<Q>> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be positive".into()));
        }
        let top = q(1, r as i64);
        let mut chain = vec![int(0); r + 2];
        chain[r + 1] = top;
        match &self.gammas {
            Some(list) => {
                if list.len() != r {
                    return Err(Error::InvalidArgument(format!("gammas: expected {r} values, got {}", list.len())));
                }
                for (i, s) in list.iter().enumerate() {
                    chain[i + 1] = parse_opt(&Some(s.clone()), "gammas")?.expect("present");
                }
            }
            None => {
                for i in (1..=r).rev() {
                    chain[i] = chain[i + 1] * self.gamma_step;
                }
            }
        }
        chain[0] = parse_opt(&self.gamma, "gamma")?.unwrap_or(chain[1] * self.gamma_step);
        Ok(chain)
    }

    /// Resolves and validates the constants for an `(r,s)`-partition.
    pub fn resolve(&self, r: usize, s: usize) -> Result<Constants> {
        let chain = self.gamma_chain(r)?;
        let s_eff = s.clamp(1, r);
        let base = chain[s_eff];
        let gap = chain[s_eff + 1] - base;
        let (am, bpm, bm) = if self.interpolate {
            (base + gap / int(4), base + gap / int(2), base + gap * q(3, 4))
        } else {
            (base * self.alpha_mult, base * self.beta_prime_mult, base * self.beta_mult)
        };
        let alpha = parse_opt(&self.alpha, "alpha")?.unwrap_or(am);
        let beta_prime = parse_opt(&self.beta_prime, "beta_prime")?.unwrap_or(bpm);
        let beta = parse_opt(&self.beta, "beta")?.unwrap_or(bm);
        let c = Constants {
            r,
            s,
            gamma: chain[0],
            gammas: chain.clone(),
            alpha,
            beta_prime,
            beta,
            delta: base,
            zeta: chain[s_eff + 1],
            epsilon: self.epsilon,
            xi: self.xi,
            mu: self.mu,
        };
        self.check_hierarchy(&c)?;
        Ok(c)
    }

    fn check_hierarchy(&self, c: &Constants) -> Result<()> {
        let ratio = self.max_ratio;
        let chain_ok = |xs: &[Q]| xs.windows(2).all(|w| w[0] > int(0) && w[0] < w[1] && w[0] <= w[1] * ratio);
        if !chain_ok(&c.gammas) {
            return Err(Error::InvalidArgument("gamma chain violates the hierarchy".into()));
        }
        if !chain_ok(&[c.delta, c.alpha, c.beta_prime, c.beta, c.zeta]) {
            return Err(Error::InvalidArgument("gamma_s < alpha < beta' < beta < gamma_(s+1) violated".into()));
        }
        for (name, v) in [("epsilon", c.epsilon), ("xi", c.xi), ("mu", c.mu)] {
            if v <= int(0) || v >= int(1) {
                return Err(Error::InvalidArgument(format!("{name} must lie in (0, 1)")));
            }
        }
        Ok(())
    }
}

// ====================================================================
// Partitions and classification
// ====================================================================

/// Parts `A_1..A_s` of size `n/r` each, and the rest `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsPartition {
    pub r: usize,
    pub parts: Vec<VertexSet>,
    pub b: VertexSet,
}

impl RsPartition {
    pub fn new(n: usize, r: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut used = VertexSet::new(n);
        let mut sets = Vec::new();
        for p in parts {
            let set = VertexSet::from_iter(n, p.iter().copied());
            if set.len() != p.len() || !set.is_disjoint(&used) || set.len() * r != n {
                return Err(Error::InvalidArgument("parts must be disjoint with n/r vertices each".into()));
            }
            used.union_with(&set);
            sets.push(set);
        }
        Ok(RsPartition { r, parts: sets, b: used.complement() })
    }

    pub fn n(&self) -> usize {
        self.b.universe()
    }

    pub fn s(&self) -> usize {
        self.parts.len()
    }

    /// Index of the part holding `v`; `s` stands for `B`.
    pub fn part_of(&self, v: usize) -> usize {
        self.parts.iter().position(|p| p.contains(v)).unwrap_or(self.s())
    }

    pub fn part(&self, i: usize) -> &VertexSet {
        if i == self.s() {
            &self.b
        } else {
            &self.parts[i]
        }
    }

    fn part_mut(&mut self, i: usize) -> &mut VertexSet {
        if i == self.parts.len() {
            &mut self.b
        } else {
            &mut self.parts[i]
        }
    }

    /// Moves `v` from its current part to part `to`.
    pub fn move_vertex(&mut self, v: usize, to: usize) {
        let from = self.part_of(v);
        self.part_mut(from).remove(v);
        self.part_mut(to).insert(v);
    }

    pub fn is_valid(&self) -> bool {
        let n = self.n();
        let mut all = self.b.clone();
        for p in &self.parts {
            if p.len() * self.r != n || !p.is_disjoint(&all) {
                return false;
            }
            all.union_with(p);
        }
        all.len() == n
    }
}

/// Threshold classification of every vertex against every part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClassification {
    #[serde(with = "serde_q")]
    pub delta: Q,
    /// The low-degree set `S`.
    pub low: VertexSet,
    /// `V_b(delta, i)`: members of `A_i` with `d(x, A_i) >= delta n`.
    pub bad: Vec<VertexSet>,
    /// `V_ex(delta, i)`: non-members with `d(x, A_i) <= delta n`.
    pub exceptional: Vec<VertexSet>,
    /// `V_e(delta, i)`: non-members with `d(x, A_i) >= |A_i| - delta n`.
    pub excellent: Vec<VertexSet>,
    /// `V_ne(delta, i) = V - A_i - V_e(delta, i)`.
    pub non_excellent: Vec<VertexSet>,
    pub excellent_b: VertexSet,
    pub non_excellent_b: VertexSet,
    /// High-degree vertices that are exceptional for two or more parts.
    pub fact_violations: Vec<usize>,
}

impl VertexClassification {
    /// `X^S`: the part of `x` inside the low-degree set.
    pub fn low_part(&self, x: &VertexSet) -> VertexSet {
        x.intersection(&self.low)
    }

    /// `X^L`: the part of `x` outside the low-degree set.
    pub fn high_part(&self, x: &VertexSet) -> VertexSet {
        x.difference(&self.low)
    }

    /// Vertices failing to be excellent for some part other than their own.
    pub fn non_excellent_any(&self) -> VertexSet {
        let mut u = self.non_excellent_b.clone();
        for s in &self.non_excellent {
            u.union_with(s);
        }
        u
    }
}

/// The low-degree set at threshold `(1 - 1/r) n - 1`.
pub fn low_set(g: &Graph, r: usize) -> VertexSet {
    let n = g.n() as i64;
    low_degree_set(g, (int(1) - q(1, r as i64)) * int(n) - int(1))
}

pub fn classify(g: &Graph, p: &RsPartition, delta: Q) -> VertexClassification {
    let n = g.n();
    let s = p.s();
    let low = low_set(g, p.r);
    let mut c = VertexClassification {
        delta,
        low,
        bad: vec![VertexSet::new(n); s],
        exceptional: vec![VertexSet::new(n); s],
        excellent: vec![VertexSet::new(n); s],
        non_excellent: vec![VertexSet::new(n); s],
        excellent_b: VertexSet::new(n),
        non_excellent_b: VertexSet::new(n),
        fact_violations: Vec::new(),
    };
    let high = (int(1) - q(2, p.r as i64) + delta * int(2)) * int(n as i64);
    for v in 0..n {
        let mut exc_count = 0;
        for i in 0..s {
            let a = &p.parts[i];
            let d = g.degree_into(v, a);
            if a.contains(v) {
                if rational::ge(d, delta, n) {
                    c.bad[i].insert(v);
                }
                continue;
            }
            if rational::le(d, delta, n) {
                c.exceptional[i].insert(v);
                exc_count += 1;
            }
            if rational::le(a.len() - d, delta, n) {
                c.excellent[i].insert(v);
            } else {
                c.non_excellent[i].insert(v);
            }
        }
        if !p.b.contains(v) {
            let d = g.degree_into(v, &p.b);
            if rational::le(p.b.len() - d, delta, n) {
                c.excellent_b.insert(v);
            } else {
                c.non_excellent_b.insert(v);
            }
        }
        if exc_count > 1 && rational::cmp_scaled(g.degree(v) as i64, high, 1).is_gt() {
            c.fact_violations.push(v);
        }
    }
    c
}

// ====================================================================
// Peeling
// ====================================================================

/// Searches `within` for an `size`-set with at most `gamma n^2` edges.
fn find_sparse(g: &Graph, size: usize, gamma: Q, within: &VertexSet, cfg: &ConstantsConfig, salt: u64) -> Option<Vec<usize>> {
    let n = g.n();
    let max_edges = rational::floor_scaled(gamma, n * n).max(-1);
    if max_edges < 0 || within.len() < size {
        return None;
    }
    let max_edges = max_edges as usize;
    if n <= EXACT_MIS_CAP {
        if let Found::Yes(s) = search::sparse_set(g, size, max_edges, within, cfg.search_nodes) {
            return Some(s);
        }
        return None;
    }
    // two independent seeds must both fail before giving up
    for k in 0..2u64 {
        let cand = search::sparse_set_annealing(g, size, within, cfg.seed ^ (salt * 2 + k), 20 * n);
        if cand.len() == size && g.edges_within(&VertexSet::from_iter(n, cand.iter().copied())) <= max_edges {
            return Some(cand);
        }
    }
    match search::sparse_set(g, size, max_edges, within, cfg.search_nodes / 4) {
        Found::Yes(s) => Some(s),
        _ => None,
    }
}

/// Probes for a `gamma`-independent set of size `n/r`.
pub fn sparse_probe(g: &Graph, r: usize, cfg: &ConstantsConfig) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if r == 0 || n % r != 0 {
        return Err(Error::InvalidArgument(format!("r = {r} must divide n = {n}")));
    }
    let chain = cfg.gamma_chain(r)?;
    Ok(find_sparse(g, n / r, chain[0], &g.all(), cfg, 0))
}

/// Peels `gamma_i`-independent parts of size `n/r` avoiding the low-degree
/// set. Returns `s = 0` when the probe finds no sparse set at all.
pub fn peel_partition(g: &Graph, r: usize, cfg: &ConstantsConfig) -> Result<(RsPartition, usize)> {
    let n = g.n();
    if r == 0 || n % r != 0 {
        return Err(Error::InvalidArgument(format!("r = {r} must divide n = {n}")));
    }
    let empty = RsPartition { r, parts: Vec::new(), b: g.all() };
    if sparse_probe(g, r, cfg)?.is_none() {
        return Ok((empty, 0));
    }
    let chain = cfg.gamma_chain(r)?;
    let mut avail = g.all().difference(&low_set(g, r));
    let mut parts = Vec::new();
    for i in 1..=r {
        match find_sparse(g, n / r, chain[i], &avail, cfg, i as u64) {
            Some(a) => {
                for &v in &a {
                    avail.remove(v);
                }
                parts.push(a);
            }
            None => break,
        }
    }
    let s = parts.len();
    Ok((RsPartition::new(n, r, parts)?, s))
}

// ====================================================================
// Refinement
// ====================================================================

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementStep {
    pub k: usize,
    #[serde(with = "serde_q")]
    pub delta: Q,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub t: usize,
    pub c: usize,
    /// `(x_j, y_j)`: `x_j` moved into `A_k`, `y_j` to the former part of `x_j`.
    pub exchanged: Vec<(usize, usize)>,
    pub h: Vec<usize>,
    pub matching: Vec<(usize, usize)>,
    /// Swaps making every matching edge meet `A_k` exactly once.
    pub rebalanced: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementTrace {
    pub steps: Vec<RefinementStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPartition {
    pub partition: RsPartition,
    /// Classification at `delta = 2 beta'`.
    pub classification: VertexClassification,
    /// `M_i`: disjoint matchings covering `V_ex^L(beta/2, i)` into `A_i`.
    pub rescue: Vec<Vec<(usize, usize)>>,
    pub constants: Constants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RefineOutcome {
    /// A partition passing every clause of the validation.
    Good(GoodPartition),
    /// The refinement ran to completion but some clause fails under the
    /// configured constants at this order.
    Unvalidated(GoodPartition, Vec<Violation>),
    Ex1(ExtremalWitness),
}

pub fn refine_to_good(g: &Graph, p: &RsPartition, cfg: &ConstantsConfig) -> Result<(RefineOutcome, RefinementTrace)> {
    let n = g.n();
    let r = p.r;
    let s = p.s();
    if s == 0 || !p.is_valid() {
        return Err(Error::Precondition("refinement needs a valid partition with s >= 1".into()));
    }
    let cons = cfg.resolve(r, s)?;
    let mut trace = RefinementTrace::default();
    if n <= EXACT_MIS_CAP {
        if let Some(w) = extremal::recognize_ex1(g, r)? {
            return Ok((RefineOutcome::Ex1(w), trace));
        }
    }
    let low = low_set(g, r);
    let mut cur = p.clone();
    for k in 0..s {
        let delta = cons.beta + cons.alpha * int(k as i64);
        let cls = classify(g, &cur, delta);
        let x: Vec<usize> = cls.exceptional[k].difference(&low).to_vec();
        let y: Vec<usize> = cls.bad[k].to_vec();
        let t = x.len().min(y.len());
        let mut step = RefinementStep { k: k + 1, delta, x: x.clone(), y: y.clone(), t, ..Default::default() };
        for j in 0..t {
            let home = cur.part_of(x[j]);
            cur.move_vertex(x[j], k);
            cur.move_vertex(y[j], home);
            step.exchanged.push((x[j], y[j]));
        }
        if x.len() > y.len() {
            let c = x.len() - y.len();
            step.c = c;
            let rest: Vec<usize> = x[t..].to_vec();
            let mut hv: Vec<usize> = cur.parts[k].iter().chain(rest.iter().copied()).collect();
            hv.sort_unstable();
            step.h = hv.clone();
            let h = g.induced(&hv);
            let mm = maximum_matching(&h);
            if mm.size() < c {
                let hs = VertexSet::from_iter(n, hv.iter().copied());
                if let Found::Yes(set) = search::independent_set_at_least(g, n / r + 1, &hs, cfg.search_nodes) {
                    trace.steps.push(step);
                    return Ok((RefineOutcome::Ex1(ExtremalWitness::Ex1 { independent_set: set }), trace));
                }
                trace.steps.push(step);
                return Err(Error::Internal(format!("step {}: no {c}-matching in H and no escape set", k + 1)));
            }
            let edges: Vec<(usize, usize)> = mm.edges().into_iter().take(c).map(|(a, b)| (hv[a], hv[b])).collect();
            rebalance(&mut cur, k, &rest, &edges, &mut step)?;
            step.matching = edges;
        }
        trace.steps.push(step);
    }
    let cons = cfg.resolve(r, s)?;
    let gp = finish_good(g, cur, cons);
    let violations = validate_good(g, &gp);
    if violations.is_empty() {
        Ok((RefineOutcome::Good(gp), trace))
    } else {
        Ok((RefineOutcome::Unvalidated(gp, violations), trace))
    }
}

/// Makes every matching edge meet `A_k` in exactly one endpoint by swapping
/// an inside endpoint with an outside vertex.
fn rebalance(cur: &mut RsPartition, k: usize, rest: &[usize], edges: &[(usize, usize)], step: &mut RefinementStep) -> Result<()> {
    let inside: Vec<(usize, usize)> =
        edges.iter().copied().filter(|&(a, b)| cur.parts[k].contains(a) && cur.parts[k].contains(b)).collect();
    let outside: Vec<(usize, usize)> =
        edges.iter().copied().filter(|&(a, b)| !cur.parts[k].contains(a) && !cur.parts[k].contains(b)).collect();
    let matched: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut spare = rest.iter().copied().filter(|v| !matched.contains(v));
    let mut out_iter = outside.iter();
    for &(_, b_in) in &inside {
        let incoming = match out_iter.next() {
            Some(&(a_out, _)) => a_out,
            None => spare.next().ok_or_else(|| Error::Internal("rebalance ran out of outside vertices".into()))?,
        };
        let home = cur.part_of(incoming);
        cur.move_vertex(incoming, k);
        cur.move_vertex(b_in, home);
        step.rebalanced.push((incoming, b_in));
    }
    if out_iter.next().is_some() {
        return Err(Error::Internal("more outside than inside matching edges".into()));
    }
    Ok(())
}

/// Computes the classification and the rescue matchings for a final partition.
pub fn finish_good(g: &Graph, p: RsPartition, cons: Constants) -> GoodPartition {
    let classification = classify(g, &p, cons.beta_prime * int(2));
    let rescue = rescue_matchings(g, &p, &cons);
    GoodPartition { partition: p, classification, rescue, constants: cons }
}

/// Disjoint matchings `M_i` from `V_ex^L(beta/2, i)` into `A_i`.
fn rescue_matchings(g: &Graph, p: &RsPartition, cons: &Constants) -> Vec<Vec<(usize, usize)>> {
    let cls = classify(g, p, cons.beta / int(2));
    let s = p.s();
    let mut demands: Vec<(usize, usize)> = Vec::new();
    for i in 0..s {
        for v in cls.high_part(&cls.exceptional[i]).iter() {
            demands.push((v, i));
        }
    }
    let demanded = VertexSet::from_iter(g.n(), demands.iter().map(|&(v, _)| v));
    let adj: Vec<Vec<usize>> = demands
        .iter()
        .map(|&(v, i)| p.parts[i].intersection(g.neighbors(v)).difference(&demanded).iter().collect())
        .collect();
    let m = bipartite_matching(g.n(), &adj);
    let mut out = vec![Vec::new(); s];
    for (d, part) in m.iter().enumerate() {
        if let Some(a) = part {
            let (v, i) = demands[d];
            out[i].push((v, *a));
        }
    }
    for o in out.iter_mut() {
        o.sort_unstable();
    }
    out
}

/// Lists every violated clause of the good-partition definition.
pub fn validate_good(g: &Graph, gp: &GoodPartition) -> Vec<Violation> {
    let n = g.n();
    let p = &gp.partition;
    let c = &gp.constants;
    let mut out = Vec::new();
    if !p.is_valid() {
        out.push(Violation::new("partition", "parts do not form an (r,s)-partition"));
        return out;
    }
    let n2 = (n * n) as i64;
    // e <= sqrt(alpha) n^2  <=>  e^2 <= alpha n^4
    let sqrt_alpha_le = |count: usize, scale: i64| -> bool {
        let lhs = (count as i128).pow(2) * *c.alpha.denom() as i128;
        let rhs = *c.alpha.numer() as i128 * (scale as i128).pow(2);
        lhs <= rhs
    };
    for (i, a) in p.parts.iter().enumerate() {
        let e = g.edges_within(a);
        if !sqrt_alpha_le(e, n2) {
            out.push(Violation::new("A1", format!("A_{} spans {e} edges", i + 1)));
        }
    }
    if p.b.len() * p.r >= 2 * n {
        let z = c.zeta * c.zeta / int(4);
        let max_e = rational::floor_scaled(z, n * n);
        if max_e >= 0 {
            if let Found::Yes(set) = search::sparse_set(g, n / p.r, max_e as usize, &p.b, 200_000) {
                out.push(Violation::new("A2", format!("B contains the sparse set {set:?}")));
            }
        }
    }
    let bad = classify(g, p, c.beta * int(2));
    let ne = classify(g, p, c.beta_prime * int(2));
    let ex = classify(g, p, c.beta / int(2));
    for i in 0..p.s() {
        let nb = bad.bad[i].len();
        if !sqrt_alpha_le(nb, n as i64) {
            out.push(Violation::new("A3", format!("|V_b(2beta, {})| = {nb}", i + 1)));
        }
        let nne = ne.non_excellent[i].len();
        if !sqrt_alpha_le(nne, n as i64) {
            out.push(Violation::new("A3", format!("|V_ne(2beta', {})| = {nne}", i + 1)));
        }
        let exl = ex.high_part(&ex.exceptional[i]);
        if !bad.bad[i].is_empty() && !exl.is_empty() {
            out.push(Violation::new("A4", format!("part {} has both bad and exceptional vertices", i + 1)));
        }
    }
    // rescue matchings
    let mut used = VertexSet::new(n);
    for i in 0..p.s() {
        let exl = ex.high_part(&ex.exceptional[i]);
        let m = gp.rescue.get(i).cloned().unwrap_or_default();
        let mut covered = VertexSet::new(n);
        for &(v, a) in &m {
            if v >= n || a >= n {
                out.push(Violation::new("A4", format!("M_{} edge ({v}, {a}) out of range", i + 1)));
                continue;
            }
            if !used.insert(v) | !used.insert(a) {
                out.push(Violation::new("A4", format!("M_{} is not disjoint from the other matchings at ({v}, {a})", i + 1)));
            }
            if !g.has_edge(v, a) || !exl.contains(v) || !p.parts[i].contains(a) {
                out.push(Violation::new("A4", format!("M_{} edge ({v}, {a}) is not an edge of G[V_ex^L, A_i]", i + 1)));
                continue;
            }
            covered.insert(v);
        }
        if !exl.is_subset(&covered) {
            out.push(Violation::new("A4", format!("M_{} leaves V_ex^L(beta/2, {}) uncovered", i + 1, i + 1)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_ex2;

    #[test]
    fn default_constants_are_admissible() {
        let cfg = ConstantsConfig::default();
        for r in 2..=6 {
            for s in 1..=r {
                let c = cfg.resolve(r, s).unwrap();
                assert!(c.delta < c.alpha && c.alpha < c.beta_prime && c.beta_prime < c.beta && c.beta < c.zeta);
            }
        }
        let chain = cfg.gamma_chain(3).unwrap();
        assert_eq!(chain[4], q(1, 3));
        assert_eq!(chain[1], q(1, 3000));
        assert_eq!(chain[0], q(1, 30000));
    }

    #[test]
    fn desk_constants_allow_one_edge() {
        for (n, r) in [(12, 3), (36, 3), (16, 4), (36, 4)] {
            let cfg = ConstantsConfig::desk(n, r);
            let chain = cfg.gamma_chain(r).unwrap();
            for g in &chain[..=r] {
                assert_eq!(rational::floor_scaled(*g, n * n), 1);
            }
            for s in 1..=r {
                cfg.resolve(r, s).unwrap();
            }
        }
    }

    #[test]
    fn bad_override_rejected() {
        let cfg = ConstantsConfig { alpha: Some("1/2".into()), ..Default::default() };
        assert!(cfg.resolve(3, 1).is_err());
        let json = r#"{"xi": "3/2"}"#;
        assert!(ConstantsConfig::from_json(json).is_err());
        assert!(ConstantsConfig::from_json(r#"{"epsilon": "1/100"}"#).is_ok());
    }

    #[test]
    fn peel_ex2_9() {
        let g = build_ex2(9, 3, 1).unwrap();
        let (p, s) = peel_partition(&g, 3, &ConstantsConfig::default()).unwrap();
        assert_eq!(s, 1);
        assert_eq!(p.parts[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(p.b.to_vec(), (3..9).collect::<Vec<_>>());
    }

    #[test]
    fn peel_complete_graph() {
        let (_, s) = peel_partition(&Graph::complete(9), 3, &ConstantsConfig::default()).unwrap();
        assert_eq!(s, 0);
    }

    #[test]
    fn classify_ex2_9() {
        let g = build_ex2(9, 3, 1).unwrap();
        let p = RsPartition::new(9, 3, vec![vec![0, 1, 2]]).unwrap();
        let c = classify(&g, &p, q(1, 9));
        assert!(c.exceptional[0].is_empty());
        assert_eq!(c.excellent[0].to_vec(), (3..9).collect::<Vec<_>>());
        assert!(c.bad[0].is_empty());
    }

    #[test]
    fn peel_ex2_12_two_parts() {
        let g = build_ex2(12, 4, 1).unwrap();
        let (p, s) = peel_partition(&g, 4, &ConstantsConfig::default()).unwrap();
        assert_eq!(s, 2);
        let mut parts: Vec<Vec<usize>> = p.parts.iter().map(|a| a.to_vec()).collect();
        parts.sort();
        assert_eq!(parts, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn single_edge_makes_endpoints_bad() {
        let mut g = build_ex2(9, 3, 1).unwrap();
        g.add_edge(0, 1);
        let p = RsPartition::new(9, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(classify(&g, &p, q(1, 9)).bad[0].to_vec(), vec![0, 1]);
        assert!(classify(&g, &p, q(2, 9)).bad[0].is_empty());
    }

    fn swap_config() -> ConstantsConfig {
        ConstantsConfig {
            gammas: Some(vec!["1/100".into(), "1/5".into(), "3/10".into()]),
            gamma: Some("1/1000".into()),
            alpha: Some("1/20".into()),
            beta_prime: Some("1/10".into()),
            beta: Some("1/6".into()),
            max_ratio: q(9, 10),
            ..Default::default()
        }
    }

    #[test]
    fn refine_undoes_a_swap() {
        let g = build_ex2(12, 3, 1).unwrap();
        let p = RsPartition::new(12, 3, vec![vec![1, 2, 3, 4]]).unwrap();
        let (out, trace) = refine_to_good(&g, &p, &swap_config()).unwrap();
        let step = &trace.steps[0];
        assert_eq!((step.t, step.c), (1, 0));
        assert_eq!(step.exchanged, vec![(0, 4)]);
        let fin = match out {
            RefineOutcome::Good(gp) | RefineOutcome::Unvalidated(gp, _) => gp.partition,
            RefineOutcome::Ex1(w) => panic!("{w:?}"),
        };
        assert_eq!(fin.parts[0].to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn refine_finds_ex1_escape() {
        let g = Graph::new(4).join(&Graph::complete(2));
        let p = RsPartition::new(6, 3, vec![vec![0, 1]]).unwrap();
        let (out, _) = refine_to_good(&g, &p, &ConstantsConfig::default()).unwrap();
        match out {
            RefineOutcome::Ex1(ExtremalWitness::Ex1 { independent_set }) => {
                assert!(independent_set.len() >= 3 && g.is_independent(&independent_set));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validate_reports_heavy_part() {
        let g = build_ex2(9, 3, 1).unwrap();
        let p = RsPartition::new(9, 3, vec![vec![4, 5, 6]]).unwrap();
        let gp = finish_good(&g, p, ConstantsConfig::default().resolve(3, 1).unwrap());
        let v = validate_good(&g, &gp);
        assert!(v.iter().any(|x| x.clause == "A1" && x.detail == "A_1 spans 3 edges"), "{v:?}");
    }

    #[test]
    fn validate_reports_overlapping_rescue() {
        let g = build_ex2(12, 4, 1).unwrap();
        let p = RsPartition::new(12, 4, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let mut gp = finish_good(&g, p, ConstantsConfig::default().resolve(4, 2).unwrap());
        assert!(validate_good(&g, &gp).is_empty());
        gp.rescue = vec![vec![(7, 0)], vec![(7, 3)]];
        let v = validate_good(&g, &gp);
        assert!(v.iter().any(|x| x.clause == "A4" && x.detail.contains("not disjoint")), "{v:?}");
    }

    #[test]
    fn refine_ex2_9_is_identity() {
        let g = build_ex2(9, 3, 1).unwrap();
        let cfg = ConstantsConfig::default();
        let (p, _) = peel_partition(&g, 3, &cfg).unwrap();
        let (out, trace) = refine_to_good(&g, &p, &cfg).unwrap();
        assert!(trace.steps.iter().all(|s| s.exchanged.is_empty() && s.matching.is_empty()));
        match out {
            RefineOutcome::Good(gp) => assert_eq!(gp.partition, p),
            other => panic!("{other:?}"),
        }
    }
}
