//! Extremal-case tiling over a good partition: bases covering the
//! non-excellent vertices, balanced extension to `K_r` copies, the parity
//! repair for `r - s = 2`, contraction and the multipartite finish.

use crate::bitset::VertexSet;
use crate::cover::Tiling;
use crate::error::{Error, Result};
use crate::graph::{cliques_of_size, Graph};
use crate::matching::{bipartite_matching, maximum_matching};
use crate::partition::{classify, GoodPartition, RsPartition};
use crate::rational::{int, q, Q};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Node budget for a single clique completion.
const COMPLETION_NODES: u64 = 20_000;
/// Candidate limit per parity-repair move family.
const REPAIR_CANDIDATES: usize = 400;
pub const MULTIPARTITE_RESTARTS: usize = 20;

// ====================================================================
// Bases
// ====================================================================

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Base {
    Single { clique: Vec<usize> },
    /// `c0` overfills part `d0` by one, `c1` overfills `d1` by one; part
    /// indices follow [`RsPartition::part`], with `s` standing for `B`.
    Double { c0: Vec<usize>, c1: Vec<usize>, d0: usize, d1: usize },
}

impl Base {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = match self {
            Base::Single { clique } => clique.clone(),
            Base::Double { c0, c1, .. } => c0.iter().chain(c1).copied().collect(),
        };
        v.sort_unstable();
        v
    }
}

/// Intersection counts and common-neighbourhood sizes of each clique of a
/// base against every part, with the largest slack the base attains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseReport {
    pub counts: Vec<Vec<usize>>,
    pub common: Vec<Vec<usize>>,
    /// The count conditions hold.
    pub shape_ok: bool,
    /// Largest `xi` for which the neighbourhood conditions hold.
    #[serde(with = "crate::rational::serde_q")]
    pub slack: Q,
}

fn part_counts(p: &RsPartition, c: &[usize]) -> Vec<usize> {
    let mut counts = vec![0; p.s() + 1];
    for &v in c {
        counts[p.part_of(v)] += 1;
    }
    counts
}

fn common_counts(g: &Graph, p: &RsPartition, c: &[usize]) -> Vec<usize> {
    let nb = g.common_neighbors(c);
    (0..=p.s()).map(|d| nb.intersection_len(p.part(d))).collect()
}

/// `r |D| / n`
fn quota(p: &RsPartition, d: usize) -> Q {
    q((p.r * p.part(d).len()) as i64, p.n() as i64)
}

/// `(|N(C) ∩ D| - |D|) / n + extra / r`
fn nb_slack(p: &RsPartition, d: usize, common: usize, extra: usize) -> Q {
    let n = p.n() as i64;
    q(common as i64 - p.part(d).len() as i64, n) + q(extra as i64, p.r as i64)
}

pub fn base_report(g: &Graph, p: &RsPartition, b: &Base) -> BaseReport {
    let parts = p.s() + 1;
    match b {
        Base::Single { clique } => {
            let counts = part_counts(p, clique);
            let common = common_counts(g, p, clique);
            let mut shape_ok = g.is_clique(clique);
            let mut slack: Option<Q> = None;
            for d in 0..parts {
                shape_ok &= int(counts[d] as i64) <= quota(p, d);
                let sl = nb_slack(p, d, common[d], counts[d] + 1);
                slack = Some(slack.map_or(sl, |x| x.min(sl)));
            }
            BaseReport { counts: vec![counts], common: vec![common], shape_ok, slack: slack.unwrap_or(int(0)) }
        }
        Base::Double { c0, c1, d0, d1 } => {
            let cs = [c0, c1];
            let ds = [*d0, *d1];
            let mut shape_ok = d0 != d1 && *d0 < parts && *d1 < parts;
            shape_ok &= g.is_clique(c0) && g.is_clique(c1) && c0.iter().all(|v| !c1.contains(v));
            let counts: Vec<Vec<usize>> = cs.iter().map(|c| part_counts(p, c)).collect();
            let common: Vec<Vec<usize>> = cs.iter().map(|c| common_counts(g, p, c)).collect();
            let mut slack: Option<Q> = None;
            if shape_ok {
                for i in 0..2 {
                    let (own, other) = (ds[i], ds[1 - i]);
                    for d in 0..parts {
                        let cnt = int(counts[i][d] as i64);
                        if d == own {
                            shape_ok &= cnt == quota(p, d) + int(1);
                        } else {
                            shape_ok &= cnt <= quota(p, d);
                        }
                        let extra = if d == other { counts[i][d] + 2 } else { counts[i][d] + 1 };
                        let sl = nb_slack(p, d, common[i][d], extra);
                        slack = Some(slack.map_or(sl, |x| x.min(sl)));
                    }
                }
            }
            BaseReport { counts, common, shape_ok, slack: slack.unwrap_or(int(-1)) }
        }
    }
}

/// Whether `b` is a `xi`-base (or a `(2, xi)`-base) for `p`.
pub fn is_base(g: &Graph, p: &RsPartition, b: &Base, xi: Q) -> bool {
    let rep = base_report(g, p, b);
    rep.shape_ok && rep.slack >= xi
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSet {
    pub bases: Vec<Base>,
    #[serde(with = "serde_qvec")]
    pub slacks: Vec<Q>,
    /// The extension of each base.
    pub tilings: Vec<Tiling>,
    pub covered: Vec<usize>,
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

impl BaseSet {
    pub fn used(&self, n: usize) -> VertexSet {
        let mut u = VertexSet::new(n);
        for t in &self.tilings {
            u.union_with(&t.covered(n));
        }
        u
    }

    pub fn min_slack(&self) -> Option<Q> {
        self.slacks.iter().copied().min()
    }

    pub fn tiling(&self, r: usize) -> Tiling {
        let mut t = Tiling::new(r, Vec::new());
        for x in &self.tilings {
            t.extend(x.clone());
        }
        t
    }

    fn push(&mut self, g: &Graph, p: &RsPartition, b: Base, t: Tiling, covers: &[usize]) {
        self.slacks.push(base_report(g, p, &b).slack);
        self.bases.push(b);
        self.tilings.push(t);
        self.covered.extend_from_slice(covers);
        self.covered.sort_unstable();
        self.covered.dedup();
    }
}

// ====================================================================
// Clique completion with a part profile
// ====================================================================

struct Completion<'a> {
    g: &'a Graph,
    parts: Vec<VertexSet>,
    prefer: &'a VertexSet,
    nodes: u64,
    limit: u64,
}

impl Completion<'_> {
    fn new<'a>(g: &'a Graph, p: &RsPartition, prefer: &'a VertexSet) -> Completion<'a> {
        let parts = (0..=p.s()).map(|d| p.part(d).clone()).collect();
        Completion { g, parts, prefer, nodes: 0, limit: COMPLETION_NODES }
    }

    /// Extends the clique `cur` until part `d` holds exactly `profile[d]`
    /// of its vertices, choosing vertices outside `avoid`.
    fn complete(&mut self, start: &[usize], profile: &[usize], avoid: &VertexSet) -> Option<Vec<usize>> {
        if !self.g.is_clique(start) {
            return None;
        }
        let mut need: Vec<i64> = profile.iter().map(|&x| x as i64).collect();
        for &v in start {
            let d = self.parts.iter().position(|s| s.contains(v))?;
            need[d] -= 1;
        }
        if need.iter().any(|&x| x < 0) {
            return None;
        }
        let mut cur = start.to_vec();
        let mut cand = self.g.common_neighbors(start);
        cand.difference_with(avoid);
        for &v in start {
            cand.remove(v);
        }
        self.nodes = 0;
        if self.rec(&mut cur, cand, &mut need) {
            cur.sort_unstable();
            Some(cur)
        } else {
            None
        }
    }

    fn rec(&mut self, cur: &mut Vec<usize>, cand: VertexSet, need: &mut [i64]) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit {
            return false;
        }
        // the part with the fewest candidates relative to its demand
        let mut pick: Option<(usize, VertexSet)> = None;
        for d in 0..need.len() {
            if need[d] == 0 {
                continue;
            }
            let cd = cand.intersection(&self.parts[d]);
            if (cd.len() as i64) < need[d] {
                return false;
            }
            if pick.as_ref().is_none_or(|(_, best)| cd.len() < best.len()) {
                pick = Some((d, cd));
            }
        }
        let Some((d, cd)) = pick else {
            return true;
        };
        let mut order: Vec<usize> = cd.intersection(self.prefer).iter().collect();
        order.extend(cd.difference(self.prefer).iter());
        let mut cand = cand;
        for v in order {
            cand.remove(v);
            need[d] -= 1;
            cur.push(v);
            let next = cand.intersection(self.g.neighbors(v));
            if self.rec(cur, next, need) {
                return true;
            }
            cur.pop();
            need[d] += 1;
            if self.nodes > self.limit {
                return false;
            }
        }
        false
    }
}

/// Per-part counts of one balanced `K_r`: one vertex in each `A_i`, `r - s` in `B`.
pub fn balanced_profile(p: &RsPartition) -> Vec<usize> {
    let mut prof = vec![1; p.s() + 1];
    prof[p.s()] = p.r - p.s();
    prof
}

/// Vertices excellent for every part they are not in.
fn preferred(gp: &GoodPartition) -> VertexSet {
    gp.classification.non_excellent_any().complement()
}

/// Extends a base to one or two `K_r` copies avoiding `avoid`, such that the
/// copies meet every part in exactly (copies) * r|D|/n vertices.
pub fn extend_base(g: &Graph, gp: &GoodPartition, h: &Base, avoid: &VertexSet) -> Result<Tiling> {
    let p = &gp.partition;
    let prefer = preferred(gp);
    let mut comp = Completion::new(g, p, &prefer);
    let bal = balanced_profile(p);
    let mut blocked = avoid.clone();
    match h {
        Base::Single { clique } => {
            for &v in clique {
                blocked.remove(v);
            }
            comp.complete(clique, &bal, &blocked).map(|c| Tiling::new(p.r, vec![c])).ok_or_else(|| {
                let counts = part_counts(p, clique);
                let short = (0..bal.len()).find(|&d| counts[d] < bal[d]).unwrap_or(p.s());
                Error::Internal(format!("extension of {clique:?} failed, part {short} lacked candidates"))
            })
        }
        Base::Double { c0, c1, d0, d1 } => {
            let (d0, d1) = (*d0, *d1);
            if d0 == d1 || bal[d0] == 0 || bal[d1] == 0 {
                return Err(Error::InvalidArgument("double base needs two distinct nonempty parts".into()));
            }
            let mut p0 = bal.clone();
            p0[d0] += 1;
            p0[d1] -= 1;
            let mut p1 = bal.clone();
            p1[d1] += 1;
            p1[d0] -= 1;
            for v in c0.iter().chain(c1) {
                blocked.remove(*v);
            }
            let mut fence0 = blocked.clone();
            fence0.union_with(&VertexSet::from_iter(g.n(), c1.iter().copied()));
            let mut fence1 = blocked.clone();
            fence1.union_with(&VertexSet::from_iter(g.n(), c0.iter().copied()));
            // scarcer side first
            for first in [0, 1] {
                let (sa, pa, fa, sb, pb) = if first == 0 { (c0, &p0, &fence0, c1, &p1) } else { (c1, &p1, &fence1, c0, &p0) };
                if let Some(ka) = comp.complete(sa, pa, fa) {
                    let mut fb = blocked.clone();
                    fb.union_with(&VertexSet::from_iter(g.n(), ka.iter().copied()));
                    if let Some(kb) = comp.complete(sb, pb, &fb) {
                        return Ok(Tiling::new(p.r, vec![ka, kb]));
                    }
                }
            }
            Err(Error::Internal(format!("extension of the double base ({d0}, {d1}) failed")))
        }
    }
}

/// Cliques through `v` and avoiding `used`, tried in order: the rescue edge,
/// `v` alone, then double bases over every pair of parts.
fn base_for(g: &Graph, gp: &GoodPartition, v: usize, used: &VertexSet) -> Option<(Base, Tiling)> {
    let p = &gp.partition;
    let mut tries: Vec<Base> = Vec::new();
    for m in &gp.rescue {
        for &(x, a) in m {
            if x == v && !used.contains(a) {
                tries.push(Base::Single { clique: vec![v, a] });
            }
        }
    }
    tries.push(Base::Single { clique: vec![v] });
    let own = p.part_of(v);
    let parts = p.s() + 1;
    let bal = balanced_profile(p);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for d0 in 0..parts {
        for d1 in 0..parts {
            if d0 != d1 && bal[d0] > 0 && bal[d1] > 0 {
                pairs.push((d0, d1));
            }
        }
    }
    pairs.sort_by_key(|&(d0, _)| usize::from(d0 != own));
    for (d0, d1) in pairs {
        tries.push(Base::Double { c0: vec![v], c1: Vec::new(), d0, d1 });
    }
    for b in tries {
        if let Ok(t) = extend_base(g, gp, &b, used) {
            let b = settle(p, b, &t);
            return Some((b, t));
        }
    }
    None
}

/// Records a double base by its overfilled cores after extension.
fn settle(p: &RsPartition, b: Base, t: &Tiling) -> Base {
    match b {
        Base::Double { c0, d0, d1, .. } if t.cliques.len() == 2 => {
            let (k0, k1) = if t.cliques[0].contains(&c0[0]) { (&t.cliques[0], &t.cliques[1]) } else { (&t.cliques[1], &t.cliques[0]) };
            let core = |k: &Vec<usize>, d: usize, keep: &[usize]| -> Vec<usize> {
                k.iter().copied().filter(|&x| p.part_of(x) == d || keep.contains(&x)).collect()
            };
            Base::Double { c0: core(k0, d0, &c0), c1: core(k1, d1, &[]), d0, d1 }
        }
        other => other,
    }
}

/// Covers `V_ex(beta/2)` in order of increasing vertex index.
pub fn cover_exceptional(g: &Graph, gp: &GoodPartition) -> std::result::Result<BaseSet, Vec<usize>> {
    let cls = classify(g, &gp.partition, gp.constants.beta / int(2));
    let mut targets = VertexSet::new(g.n());
    for x in &cls.exceptional {
        targets.union_with(x);
    }
    cover_targets(g, gp, &targets, &VertexSet::new(g.n()))
}

/// Covers `V_ne(2 beta') - V_ex(beta/2)` avoiding `u`.
pub fn cover_nonexcellent(g: &Graph, gp: &GoodPartition, u: &VertexSet) -> Result<BaseSet> {
    let n = g.n();
    let a4 = gp.constants.alpha.pow(4);
    let cap4 = q((4 * gp.partition.r * n) as i64, 1).pow(4) * a4;
    if int((u.len() as i64).pow(4)) > cap4 && u.len() > 4 * gp.partition.r {
        return Err(Error::Precondition(format!("|U| = {} is too large to avoid", u.len())));
    }
    let cls = classify(g, &gp.partition, gp.constants.beta / int(2));
    let mut ex = VertexSet::new(n);
    for x in &cls.exceptional {
        ex.union_with(x);
    }
    let targets = gp.classification.non_excellent_any().difference(&ex);
    cover_targets(g, gp, &targets, u).map_err(|missing| Error::Precondition(format!("no base covers {missing:?}")))
}

fn cover_targets(g: &Graph, gp: &GoodPartition, targets: &VertexSet, avoid: &VertexSet) -> std::result::Result<BaseSet, Vec<usize>> {
    let mut set = BaseSet::default();
    let mut used = avoid.clone();
    let mut missing = Vec::new();
    for v in targets.iter() {
        if used.contains(v) {
            continue;
        }
        match base_for(g, gp, v, &used) {
            Some((b, t)) => {
                used.union_with(&t.covered(g.n()));
                let covers: Vec<usize> = t.cliques.iter().flatten().copied().filter(|&x| targets.contains(x)).collect();
                set.push(g, &gp.partition, b, t, &covers);
            }
            None => missing.push(v),
        }
    }
    if missing.is_empty() {
        Ok(set)
    } else {
        Err(missing)
    }
}

// ====================================================================
// Contraction and the multipartite finish
// ====================================================================

#[derive(Clone, Debug)]
pub struct ContractedInstance {
    pub graph: Graph,
    /// Vertex indices of `G*` per part: `A_1'..A_s'` then `B*`.
    pub parts: Vec<Vec<usize>>,
    /// Original vertices behind each vertex of `G*`.
    pub origin: Vec<Vec<usize>>,
}

impl ContractedInstance {
    /// Replaces every contracted vertex by its clique.
    pub fn lift(&self, t: &Tiling) -> Vec<Vec<usize>> {
        t.cliques.iter().map(|c| c.iter().flat_map(|&x| self.origin[x].iter().copied()).collect()).collect()
    }
}

/// Contracts each clique of `ts` (a `K_{r-s}`-factor of `G[B']`) to a vertex
/// adjacent to the common neighbourhood of the clique.
pub fn contract_residual(g: &Graph, a_parts: &[VertexSet], b_prime: &VertexSet, ts: &Tiling) -> Result<ContractedInstance> {
    let n = g.n();
    if ts.covered(n) != *b_prime || ts.verify_partial(g).is_err() {
        return Err(Error::Precondition("the residual tiling is not a clique factor of B'".into()));
    }
    let mut origin: Vec<Vec<usize>> = Vec::new();
    let mut parts = Vec::new();
    for a in a_parts {
        let mut idx = Vec::new();
        for v in a.iter() {
            idx.push(origin.len());
            origin.push(vec![v]);
        }
        parts.push(idx);
    }
    let na = origin.len();
    let mut bidx = Vec::new();
    for c in &ts.cliques {
        bidx.push(origin.len());
        origin.push(c.clone());
    }
    parts.push(bidx);
    let mut gs = Graph::new(origin.len());
    for x in 0..origin.len() {
        let nb = g.common_neighbors(&origin[x]);
        for y in x + 1..origin.len() {
            if x >= na && y >= na {
                continue;
            }
            if origin[y].iter().all(|&v| nb.contains(v)) {
                gs.add_edge(x, y);
            }
        }
    }
    Ok(ContractedInstance { graph: gs, parts, origin })
}

/// A `K_k`-factor of `g` with one vertex from each of the `k` equal-sized
/// `parts`, built layer by layer through bipartite matchings between the
/// partial cliques and the next part; randomized restarts on failure.
pub fn multipartite_factor(parts: &[Vec<usize>], g: &Graph, seed: u64) -> Result<Option<Tiling>> {
    multipartite_factor_with(parts, g, seed, MULTIPARTITE_RESTARTS)
}

pub fn multipartite_factor_with(parts: &[Vec<usize>], g: &Graph, seed: u64, restarts: usize) -> Result<Option<Tiling>> {
    let k = parts.len();
    if k == 0 {
        return Ok(Some(Tiling::new(0, Vec::new())));
    }
    let m = parts[0].len();
    if parts.iter().any(|p| p.len() != m) {
        return Err(Error::InvalidArgument("parts must have equal sizes".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..=restarts {
        let mut order: Vec<usize> = (0..k).collect();
        let mut ps: Vec<Vec<usize>> = parts.to_vec();
        if attempt > 0 {
            order.shuffle(&mut rng);
            for p in ps.iter_mut() {
                p.shuffle(&mut rng);
            }
        } else {
            // sparsest part first
            order.sort_by_key(|&i| ps[i].iter().map(|&v| g.degree(v)).sum::<usize>());
        }
        let mut cliques: Vec<Vec<usize>> = ps[order[0]].iter().map(|&v| vec![v]).collect();
        let mut ok = true;
        for &pi in &order[1..] {
            let layer = &ps[pi];
            let pos: std::collections::HashMap<usize, usize> = layer.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let adj: Vec<Vec<usize>> = cliques
                .iter()
                .map(|c| g.common_neighbors(c).iter().filter_map(|v| pos.get(&v).copied()).collect::<Vec<_>>())
                .map(|mut a: Vec<usize>| {
                    if attempt > 0 {
                        a.shuffle(&mut rng);
                    }
                    a
                })
                .collect();
            let mm = bipartite_matching(m, &adj);
            if mm.iter().any(|x| x.is_none()) {
                ok = false;
                break;
            }
            for (c, y) in cliques.iter_mut().zip(mm) {
                c.push(layer[y.expect("perfect")]);
            }
        }
        if ok {
            let t = Tiling::new(k, cliques);
            if t.verify_partial(g).is_ok() {
                return Ok(Some(t));
            }
        }
    }
    Ok(None)
}

// ====================================================================
// Parity repair for r - s = 2
// ====================================================================

/// A perfect matching of `G[rest]`, in original labels.
pub fn residual_matching(g: &Graph, rest: &VertexSet) -> Option<Vec<(usize, usize)>> {
    let vs = rest.to_vec();
    let h = g.induced(&vs);
    let mm = maximum_matching(&h);
    mm.is_perfect().then(|| mm.edges().into_iter().map(|(a, b)| (vs[a], vs[b])).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Repair {
    pub tiling: Tiling,
    pub matching: Vec<(usize, usize)>,
    /// Which move produced the repair.
    pub kind: String,
}

/// Modifies `tiling` (which must keep covering `keep`) so that the rest of
/// `B` has a perfect matching. `None` when the bounded search exhausts.
pub fn parity_repair(g: &Graph, gp: &GoodPartition, keep: &VertexSet, tiling: &Tiling) -> Option<Repair> {
    let p = &gp.partition;
    let n = g.n();
    if p.r != p.s() + 2 {
        return None;
    }
    let covered = tiling.covered(n);
    let b_rest = p.b.difference(&covered);
    if let Some(m) = residual_matching(g, &b_rest) {
        return Some(Repair { tiling: tiling.clone(), matching: m, kind: "none".into() });
    }
    let prefer = preferred(gp);
    let mut comp = Completion::new(g, p, &prefer);
    let bal = balanced_profile(p);
    let bi = p.s();
    let accept = |extra: &[Vec<usize>], dropped: Option<usize>| -> Option<Repair> {
        let mut cl: Vec<Vec<usize>> =
            tiling.cliques.iter().enumerate().filter(|(i, _)| Some(*i) != dropped).map(|(_, c)| c.clone()).collect();
        cl.extend(extra.iter().cloned());
        let t = Tiling::new(p.r, cl);
        if t.verify_partial(g).is_err() || !keep.is_subset(&t.covered(n)) {
            return None;
        }
        let rest = p.b.difference(&t.covered(n));
        residual_matching(g, &rest).map(|m| Repair { tiling: t, matching: m, kind: String::new() })
    };

    // an edge inside some A_i with a B vertex forms one copy, a B-heavy copy
    // restores the balance
    for i in 0..p.s() {
        let a_rest = p.parts[i].difference(&covered);
        let mut p0 = bal.clone();
        p0[i] += 1;
        p0[bi] -= 1;
        let mut p1 = bal.clone();
        p1[i] -= 1;
        p1[bi] += 1;
        let mut tried = 0;
        for u in a_rest.iter() {
            for v in g.neighbors(u).intersection(&a_rest).iter().filter(|&v| v > u) {
                let ws = g.common_neighbors(&[u, v]).intersection(&b_rest);
                for w in ws.iter() {
                    tried += 1;
                    if tried > REPAIR_CANDIDATES {
                        break;
                    }
                    let Some(k0) = comp.complete(&[u, v, w], &p0, &covered) else { continue };
                    let mut fence = covered.clone();
                    fence.union_with(&VertexSet::from_iter(n, k0.iter().copied()));
                    let pool = b_rest.difference(&fence);
                    for core in cliques_of_size(g, p1[bi], &pool, 64) {
                        if let Some(k1) = comp.complete(&core, &p1, &fence) {
                            if let Some(mut rep) = accept(&[k0.clone(), k1], None) {
                                rep.kind = "internal-edge".into();
                                return Some(rep);
                            }
                        }
                    }
                }
            }
        }
    }

    // re-choose the B side of one copy
    for (ci, c) in tiling.cliques.iter().enumerate() {
        let core: Vec<usize> = c.iter().copied().filter(|&x| p.part_of(x) != bi || keep.contains(x)).collect();
        let free = b_rest.union(&VertexSet::from_iter(n, c.iter().copied().filter(|&x| p.part_of(x) == bi)));
        let need = p.r - core.len();
        let pool = g.common_neighbors(&core).intersection(&free);
        for extra in cliques_of_size(g, need, &pool, REPAIR_CANDIDATES) {
            let mut k: Vec<usize> = core.iter().chain(extra.iter()).copied().collect();
            k.sort_unstable();
            if let Some(mut rep) = accept(&[k], Some(ci)) {
                rep.kind = "re-extend".into();
                return Some(rep);
            }
        }
    }

    // re-extend one copy from its A side alone, letting it reach into either component
    for (ci, c) in tiling.cliques.iter().enumerate() {
        let core: Vec<usize> = c.iter().copied().filter(|&x| p.part_of(x) != bi).collect();
        if core.iter().any(|&x| !keep.contains(x)) && c.iter().any(|&x| keep.contains(x) && p.part_of(x) == bi) {
            continue;
        }
        let mut fence = covered.clone();
        for &x in c {
            fence.remove(x);
        }
        let prof = part_counts(p, c);
        let pool = b_rest.union(&VertexSet::from_iter(n, c.iter().copied())).intersection(&g.common_neighbors(&core));
        let want = prof[bi];
        for extra in cliques_of_size(g, want, &pool.intersection(&p.b), REPAIR_CANDIDATES) {
            let start: Vec<usize> = core.iter().chain(extra.iter()).copied().collect();
            if let Some(k) = comp.complete(&start, &prof, &fence) {
                if let Some(mut rep) = accept(&[k], Some(ci)) {
                    rep.kind = "swap".into();
                    return Some(rep);
                }
            }
        }
    }
    None
}

// ====================================================================
// Driver
// ====================================================================

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileTrace {
    pub bases: BaseSet,
    pub residual_sizes: Vec<usize>,
    pub repair: Option<String>,
    pub contracted_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TileOutcome {
    Factor(Tiling),
    /// `B` splits into two odd cliques and no repair move applies.
    Ex2Signal,
    Failed(String),
}

/// Sub-solver for a `K_t`-factor of the residual `G[B']` when `t >= 3`.
pub type SubSolver<'a> = &'a dyn Fn(&Graph, usize) -> Result<Option<Tiling>>;

pub fn tile_extremal(g: &Graph, gp: &GoodPartition, sub: SubSolver<'_>, seed: u64) -> Result<(TileOutcome, TileTrace)> {
    let p = &gp.partition;
    let n = g.n();
    let r = p.r;
    let s = p.s();
    let mut trace = TileTrace::default();
    if s == 0 || !p.is_valid() {
        return Err(Error::Precondition("tiling needs a valid partition with s >= 1".into()));
    }
    let ex = match cover_exceptional(g, gp) {
        Ok(b) => b,
        Err(missing) => return Ok((TileOutcome::Failed(format!("no base covers {missing:?}")), trace)),
    };
    let used = ex.used(n);
    let ne = match cover_nonexcellent(g, gp, &used) {
        Ok(b) => b,
        Err(e) => return Ok((TileOutcome::Failed(e.to_string()), trace)),
    };
    let mut bases = ex;
    for ((b, t), sl) in ne.bases.into_iter().zip(ne.tilings).zip(ne.slacks) {
        bases.bases.push(b);
        bases.tilings.push(t);
        bases.slacks.push(sl);
    }
    bases.covered.extend(ne.covered);
    bases.covered.sort_unstable();
    let keep = VertexSet::from_iter(n, bases.covered.iter().copied());
    let mut cover = bases.tiling(r);
    trace.bases = bases;
    if let Err(v) = cover.verify_partial(g) {
        return Err(Error::Internal(format!("base extension produced an invalid tiling: {v}")));
    }

    let mut b_rest = p.b.difference(&cover.covered(n));
    let mut ts = match r - s {
        0 => Tiling::new(0, Vec::new()),
        1 => Tiling::new(1, b_rest.iter().map(|v| vec![v]).collect()),
        2 => match residual_matching(g, &b_rest) {
            Some(m) => Tiling::new(2, m.into_iter().map(|(a, b)| vec![a, b]).collect()),
            None => match parity_repair(g, gp, &keep, &cover) {
                Some(rep) => {
                    trace.repair = Some(rep.kind.clone());
                    cover = rep.tiling;
                    b_rest = p.b.difference(&cover.covered(n));
                    Tiling::new(2, rep.matching.into_iter().map(|(a, b)| vec![a, b]).collect())
                }
                None => return Ok((TileOutcome::Ex2Signal, trace)),
            },
        },
        t => {
            let vs = b_rest.to_vec();
            match sub(&g.induced(&vs), t)? {
                Some(f) => Tiling::new(t, f.cliques.iter().map(|c| c.iter().map(|&x| vs[x]).collect()).collect()),
                None => return Ok((TileOutcome::Failed(format!("G[B'] has no K_{t}-factor")), trace)),
            }
        }
    };
    if r - s == 0 {
        ts = Tiling::new(0, Vec::new());
    }
    let used = cover.covered(n);
    let a_rest: Vec<VertexSet> = p.parts.iter().map(|a| a.difference(&used)).collect();
    trace.residual_sizes = a_rest.iter().map(|a| a.len()).chain([b_rest.len()]).collect();
    let m = a_rest[0].len();
    if a_rest.iter().any(|a| a.len() != m) || b_rest.len() != (r - s) * m {
        return Err(Error::Internal(format!("residual parts unbalanced: {:?}", trace.residual_sizes)));
    }
    let (ci, parts) = if r == s {
        let ci = ContractedInstance { graph: g.clone(), parts: Vec::new(), origin: (0..n).map(|v| vec![v]).collect() };
        let parts = a_rest.iter().map(|a| a.to_vec()).collect::<Vec<_>>();
        (ci, parts)
    } else {
        let ci = contract_residual(g, &a_rest, &b_rest, &ts)?;
        let parts = ci.parts.clone();
        (ci, parts)
    };
    trace.contracted_order = parts.iter().map(|p| p.len()).sum();
    let Some(tf) = multipartite_factor(&parts, &ci.graph, seed)? else {
        return Ok((TileOutcome::Failed("the contracted instance has no transversal factor".into()), trace));
    };
    let mut all = cover.cliques.clone();
    all.extend(ci.lift(&tf));
    let t = Tiling::new(r, all);
    match t.verify_factor(g) {
        Ok(()) => Ok((TileOutcome::Factor(t), trace)),
        Err(v) => Err(Error::Internal(format!("assembled tiling fails verification: {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_ex2;
    use crate::partition::{finish_good, ConstantsConfig};

    fn good(g: &Graph, r: usize, parts: Vec<Vec<usize>>) -> GoodPartition {
        let p = RsPartition::new(g.n(), r, parts).unwrap();
        let s = p.s();
        finish_good(g, p, ConstantsConfig::default().resolve(r, s).unwrap())
    }

    fn no_sub(_: &Graph, _: usize) -> Result<Option<Tiling>> {
        Ok(None)
    }

    #[test]
    fn single_b_vertex_base() {
        let g = build_ex2(9, 3, 1).unwrap();
        let gp = good(&g, 3, vec![vec![0, 1, 2]]);
        let rep = base_report(&g, &gp.partition, &Base::Single { clique: vec![4] });
        assert!(rep.shape_ok);
        assert_eq!(rep.common[0], vec![3, 4]);
        assert_eq!(rep.slack, q(1, 3));
    }

    #[test]
    fn internal_edge_is_not_a_base() {
        let mut g = build_ex2(9, 3, 1).unwrap();
        g.add_edge(0, 1);
        let gp = good(&g, 3, vec![vec![0, 1, 2]]);
        assert!(!is_base(&g, &gp.partition, &Base::Single { clique: vec![0, 1] }, int(0)));
        assert!(is_base(&g, &gp.partition, &Base::Single { clique: vec![] }, q(1, 3)));
    }

    #[test]
    fn multipartite_complete() {
        let g = Graph::complete(3).complement().join(&Graph::complete(3).complement()).join(&Graph::complete(3).complement());
        let parts = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        let t = multipartite_factor(&parts, &g, 1).unwrap().unwrap();
        assert!(t.verify_factor(&g).is_ok());
    }

    #[test]
    fn ex2_signals() {
        let g = build_ex2(9, 3, 1).unwrap();
        let gp = good(&g, 3, vec![vec![0, 1, 2]]);
        let (out, _) = tile_extremal(&g, &gp, &no_sub, 0).unwrap();
        assert_eq!(out, TileOutcome::Ex2Signal);
    }

    #[test]
    fn internal_edge_is_repaired() {
        let mut g = build_ex2(9, 3, 1).unwrap();
        g.add_edge(0, 1);
        let gp = good(&g, 3, vec![vec![0, 1, 2]]);
        let (out, trace) = tile_extremal(&g, &gp, &no_sub, 0).unwrap();
        match out {
            TileOutcome::Factor(t) => assert!(t.verify_factor(&g).is_ok()),
            other => panic!("{other:?}"),
        }
        assert_eq!(trace.repair.as_deref(), Some("internal-edge"));
    }

    #[test]
    fn contraction_of_ex_like_instance_is_complete_multipartite() {
        // A_1, A_2 of size 2 joined to everything; B' two triangles
        let n = 10;
        let mut g = Graph::new(n);
        for u in 0..4 {
            for v in 4..n {
                g.add_edge(u, v);
            }
        }
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        g.add_edge(1, 2);
        g.add_edge(1, 3);
        for t in [[4, 5, 6], [7, 8, 9]] {
            g.add_edge(t[0], t[1]);
            g.add_edge(t[0], t[2]);
            g.add_edge(t[1], t[2]);
        }
        let a = vec![VertexSet::from_iter(n, [0, 1]), VertexSet::from_iter(n, [2, 3])];
        let b = VertexSet::from_iter(n, 4..n);
        let ts = Tiling::new(3, vec![vec![4, 5, 6], vec![7, 8, 9]]);
        let ci = contract_residual(&g, &a, &b, &ts).unwrap();
        assert_eq!(ci.graph.n(), 6);
        assert_eq!(ci.graph.edge_count(), 12);
    }

    #[test]
    fn empty_base_with_s_equal_r() {
        let g = Graph::complete(2).complement().join(&Graph::complete(2).complement()).join(&Graph::complete(2).complement());
        let gp = good(&g, 3, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        let t = extend_base(&g, &gp, &Base::Single { clique: vec![] }, &VertexSet::new(6)).unwrap();
        assert_eq!(t.cliques.len(), 1);
        assert_eq!(part_counts(&gp.partition, &t.cliques[0]), vec![1, 1, 1, 0]);
    }
}
