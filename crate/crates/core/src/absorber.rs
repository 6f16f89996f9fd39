//! Non-extremal engine: absorbers, absorbing sets, greedy layered tilings
//! improved by local moves, the almost cover and the absorb step.

use crate::bitset::VertexSet;
use crate::cover::{LayeredFactor, Tiling};
use crate::error::{Error, Result};
use crate::graph::{cliques_of_size, find_clique_of_size, sigma, Graph};
use crate::matching::bipartite_matching;
use crate::oracle::{binomial, is_absorber, kr_factor_exact, layered_factor_exact, Combinations, LAYERED_CAP};
use crate::partition::{low_set, ConstantsConfig};
use crate::rational::{self, int, q};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Exhaustive candidate testing is used when there are at most this many
/// `r^2`-subsets to try.
pub const EXHAUSTIVE_CANDIDATES: u128 = 50_000;
pub const ABSORB_RETRIES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorberFamily {
    pub q: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// All `r^2`-subsets were tested.
    pub exhaustive: bool,
}

/// Exact cover of `set` by `r`-cliques, through an explicit clique list.
fn factor_by_cliques(g: &Graph, set: &[usize], r: usize) -> Option<Vec<Vec<usize>>> {
    if set.len() % r != 0 {
        return None;
    }
    let within = VertexSet::from_iter(g.n(), set.iter().copied());
    let all = cliques_of_size(g, r, &within, usize::MAX);
    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, c) in all.iter().enumerate() {
        by_first[c[0]].push(i);
    }
    let mut chosen = Vec::new();
    fn rec(all: &[Vec<usize>], by_first: &[Vec<usize>], left: &mut VertexSet, chosen: &mut Vec<usize>) -> bool {
        let Some(v) = left.first() else { return true };
        for &ci in &by_first[v] {
            let c = &all[ci];
            if c.iter().all(|&x| left.contains(x)) {
                for &x in c {
                    left.remove(x);
                }
                chosen.push(ci);
                if rec(all, by_first, left, chosen) {
                    return true;
                }
                chosen.pop();
                for &x in c {
                    left.insert(x);
                }
            }
        }
        false
    }
    let mut left = within;
    rec(&all, &by_first, &mut left, &mut chosen).then(|| chosen.into_iter().map(|i| all[i].clone()).collect())
}

fn absorbs(g: &Graph, q: &[usize], s: &[usize], r: usize) -> bool {
    if factor_by_cliques(g, s, r).is_none() {
        return false;
    }
    let mut both = s.to_vec();
    both.extend_from_slice(q);
    both.sort_unstable();
    factor_by_cliques(g, &both, r).is_some()
}

/// Random clique of order `k` inside `pool`, by randomized greedy growth.
fn random_clique(g: &Graph, k: usize, pool: &VertexSet, rng: &mut ChaCha8Rng, tries: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let verts: Vec<usize> = pool.iter().collect();
    if verts.len() < k {
        return None;
    }
    for _ in 0..tries {
        let mut cand = pool.clone();
        let mut c = Vec::with_capacity(k);
        while c.len() < k {
            let opts: Vec<usize> = cand.iter().collect();
            if opts.len() < k - c.len() {
                break;
            }
            let v = opts[rng.gen_range(0..opts.len())];
            c.push(v);
            cand.intersect_with(g.neighbors(v));
        }
        if c.len() == k {
            c.sort_unstable();
            return Some(c);
        }
    }
    None
}

/// Absorbers for `q`: every `r^2`-subset when there are few enough,
/// otherwise samples of the recipe `K_r = {v_1..v_r}` plus an `(r-1)`-set
/// `X_i` completing both `u_i` and `v_i` to cliques.
pub fn enumerate_absorbers(g: &Graph, q: &[usize], r: usize, budget: usize, seed: u64) -> Result<AbsorberFamily> {
    let n = g.n();
    if q.len() != r || r == 0 {
        return Err(Error::InvalidArgument(format!("|Q| = {} but r = {r}", q.len())));
    }
    if r * r + r > n {
        return Ok(AbsorberFamily { q: q.to_vec(), members: Vec::new(), exhaustive: true });
    }
    let rest: Vec<usize> = (0..n).filter(|v| !q.contains(v)).collect();
    if binomial(rest.len(), r * r) <= EXHAUSTIVE_CANDIDATES {
        let mut members = Vec::new();
        for s in Combinations::new(&rest, r * r) {
            if members.len() >= budget {
                break;
            }
            if absorbs(g, q, &s, r) {
                members.push(s);
            }
        }
        let exhaustive = members.len() < budget;
        return Ok(AbsorberFamily { q: q.to_vec(), members, exhaustive });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base_pool = VertexSet::from_iter(n, rest.iter().copied());
    let mut seen = std::collections::HashSet::new();
    let mut members = Vec::new();
    for _ in 0..budget.saturating_mul(40).max(40) {
        if members.len() >= budget {
            break;
        }
        let Some(red) = random_clique(g, r, &base_pool, &mut rng, 4) else { continue };
        let mut pool = base_pool.clone();
        for &v in &red {
            pool.remove(v);
        }
        let mut s = red.clone();
        let mut ok = true;
        let mut order: Vec<usize> = (0..r).collect();
        order.shuffle(&mut rng);
        for &i in &order {
            let common = g.common_neighbors(&[q[i], red[i]]).intersection(&pool);
            match random_clique(g, r - 1, &common, &mut rng, 4) {
                Some(x) => {
                    for &v in &x {
                        pool.remove(v);
                    }
                    s.extend(x);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        s.sort_unstable();
        if seen.insert(s.clone()) && is_absorber(g, q, &s, r)? {
            members.push(s);
        }
    }
    Ok(AbsorberFamily { q: q.to_vec(), members, exhaustive: false })
}

// ====================================================================
// Absorbing sets
// ====================================================================

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorbingSet {
    pub r: usize,
    /// Disjoint `r^2`-sets, each with its own factor.
    pub members: Vec<Vec<usize>>,
    pub factors: Vec<Tiling>,
}

impl AbsorbingSet {
    pub fn vertices(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.members.iter().flatten().copied())
    }
}

/// `sigma(G) >= 2 (1 - 1/r - alpha) n - 2`
pub fn absorbing_precondition(g: &Graph, r: usize, cfg: &ConstantsConfig) -> Result<bool> {
    let alpha = cfg.resolve(r, 1)?.alpha;
    let n = g.n();
    let bound = (int(1) - q(1, r as i64) - alpha) * int(2 * n as i64) - int(2);
    Ok(sigma(g).at_least_q(bound, 1))
}

/// Number of absorbers to collect: enough for `mu n` leftover vertices.
pub fn family_target(n: usize, r: usize, cfg: &ConstantsConfig) -> usize {
    let by_xi = rational::floor_scaled(cfg.xi, n) as usize / (r * r).max(1);
    let by_mu = (rational::floor_scaled(cfg.mu, n) as usize).div_ceil(r) + 1;
    by_xi.max(by_mu)
}

/// Disjoint random `r^2`-sets, each a union of `r` disjoint `K_r` copies.
pub fn build_absorbing_set(g: &Graph, r: usize, cfg: &ConstantsConfig, seed: u64) -> Result<Option<AbsorbingSet>> {
    build_absorbing_set_with(g, r, cfg, family_target(g.n(), r, cfg), seed)
}

pub fn build_absorbing_set_with(g: &Graph, r: usize, cfg: &ConstantsConfig, count: usize, seed: u64) -> Result<Option<AbsorbingSet>> {
    let n = g.n();
    if r < 2 {
        return Err(Error::InvalidArgument("absorbing sets need r >= 2".into()));
    }
    if !absorbing_precondition(g, r, cfg)? {
        return Err(Error::Precondition("sigma(G) is below 2(1 - 1/r - alpha)n - 2".into()));
    }
    if count * r * r > n {
        return Ok(None);
    }
    let low = low_set(g, r);
    let avoid_low = rational::le(low.len(), cfg.xi, n);
    for attempt in 0..ABSORB_RETRIES as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(attempt));
        let mut pool = g.all();
        if avoid_low {
            pool.difference_with(&low);
        }
        let mut members = Vec::new();
        let mut factors = Vec::new();
        'outer: while members.len() < count {
            let mut s = Vec::new();
            let mut cl = Vec::new();
            let mut local = pool.clone();
            for _ in 0..r {
                match random_clique(g, r, &local, &mut rng, 8) {
                    Some(c) => {
                        for &v in &c {
                            local.remove(v);
                        }
                        s.extend_from_slice(&c);
                        cl.push(c);
                    }
                    None => break 'outer,
                }
            }
            s.sort_unstable();
            pool = local;
            members.push(s);
            factors.push(Tiling::new(r, cl));
        }
        if members.len() == count {
            return Ok(Some(AbsorbingSet { r, members, factors }));
        }
    }
    Ok(None)
}

// ====================================================================
// Layered tilings and local moves
// ====================================================================

/// A local move replacing `sources` by `replacement`, a better layered
/// partition of the same vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentationMove {
    pub sources: Vec<Vec<usize>>,
    pub replacement: Vec<Vec<usize>>,
}

impl AugmentationMove {
    /// Same vertex set, all cliques, and a lexicographically larger profile.
    pub fn is_valid(&self, g: &Graph, r: usize) -> bool {
        let mut a: Vec<usize> = self.sources.iter().flatten().copied().collect();
        let mut b: Vec<usize> = self.replacement.iter().flatten().copied().collect();
        a.sort_unstable();
        b.sort_unstable();
        let dup = b.windows(2).any(|w| w[0] == w[1]);
        a == b && !dup && self.replacement.iter().all(|c| !c.is_empty() && c.len() <= r && g.is_clique(c))
            && profile_of(&self.replacement, r) > profile_of(&self.sources, r)
    }
}

fn profile_of(cliques: &[Vec<usize>], r: usize) -> Vec<usize> {
    let mut p = vec![0; r];
    for c in cliques {
        p[r - c.len()] += 1;
    }
    p
}

/// Greedy layered factor: maximal packings of `K_r`, then `K_{r-1}`, and so on.
pub fn layered_greedy_raw(g: &Graph, r: usize) -> LayeredFactor {
    let mut left = g.all();
    let mut cliques = Vec::new();
    for t in (1..=r).rev() {
        while let Some(c) = find_clique_of_size(g, t, &left) {
            for &v in &c {
                left.remove(v);
            }
            cliques.push(c);
        }
    }
    LayeredFactor::from_cliques(r, cliques)
}

/// Greedy layered factor improved by local moves until none applies.
pub fn layered_greedy(g: &Graph, r: usize) -> (LayeredFactor, Vec<AugmentationMove>) {
    let lf = layered_greedy_raw(g, r);
    improve(g, lf, r)
}

/// Re-partitions the union of a small clique with one or two others when
/// that yields a lexicographically better profile.
fn improve(g: &Graph, lf: LayeredFactor, r: usize) -> (LayeredFactor, Vec<AugmentationMove>) {
    let mut cliques: Vec<Vec<usize>> = lf.cliques().cloned().collect();
    let mut moves = Vec::new();
    let cap = LAYERED_CAP;
    loop {
        cliques.sort_by_key(|c| (c.len(), c[0]));
        let mut applied = false;
        let small: Vec<usize> = (0..cliques.len()).filter(|&i| cliques[i].len() < r).collect();
        'search: for &i in &small {
            for j in 0..cliques.len() {
                if j == i {
                    continue;
                }
                let mut tried = vec![vec![i, j]];
                for k in j + 1..cliques.len() {
                    if k != i {
                        tried.push(vec![i, j, k]);
                    }
                }
                for group in tried {
                    let verts: Vec<usize> = group.iter().flat_map(|&x| cliques[x].iter().copied()).collect();
                    if verts.len() > cap {
                        continue;
                    }
                    let sources: Vec<Vec<usize>> = group.iter().map(|&x| cliques[x].clone()).collect();
                    let sub = g.induced(&verts);
                    let best = layered_factor_exact(&sub, r).expect("within cap");
                    if best.profile() > profile_of(&sources, r) {
                        let replacement: Vec<Vec<usize>> = best.cliques().map(|c| c.iter().map(|&x| verts[x]).collect()).collect();
                        let mv = AugmentationMove { sources, replacement };
                        debug_assert!(mv.is_valid(g, r));
                        let mut rest: Vec<Vec<usize>> =
                            cliques.iter().enumerate().filter(|(x, _)| !group.contains(x)).map(|(_, c)| c.clone()).collect();
                        rest.extend(mv.replacement.iter().cloned());
                        cliques = rest;
                        moves.push(mv);
                        applied = true;
                        break 'search;
                    }
                }
            }
        }
        if !applied {
            break;
        }
    }
    (LayeredFactor::from_cliques(r, cliques), moves)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostCover {
    pub tiling: Tiling,
    pub uncovered: Vec<usize>,
    pub moves: usize,
    /// Uncovered count within `mu n`.
    pub within_target: bool,
}

/// `K_r`-tiling of `G - avoid` from the top layer of the improved greedy
/// layered factor.
pub fn almost_cover(g: &Graph, r: usize, cfg: &ConstantsConfig, avoid: &VertexSet) -> AlmostCover {
    let keep: Vec<usize> = avoid.complement().to_vec();
    let h = g.induced(&keep);
    let (lf, moves) = layered_greedy(&h, r);
    let mut cl = Vec::new();
    let mut uncovered = Vec::new();
    for c in lf.cliques() {
        let orig: Vec<usize> = c.iter().map(|&x| keep[x]).collect();
        if c.len() == r {
            cl.push(orig);
        } else {
            uncovered.extend(orig);
        }
    }
    uncovered.sort_unstable();
    let within_target = rational::le(uncovered.len(), cfg.mu, g.n());
    AlmostCover { tiling: Tiling::new(r, cl), uncovered, moves: moves.len(), within_target }
}

/// Factor of `M ∪ leftover`: the leftover is split into `r`-sets, each
/// matched to a distinct absorber that absorbs it.
pub fn absorb(g: &Graph, m: &AbsorbingSet, leftover: &[usize], seed: u64) -> Result<Tiling> {
    let r = m.r;
    let n = g.n();
    if leftover.len() % r != 0 {
        return Err(Error::Precondition(format!("|U| = {} is not a multiple of r", leftover.len())));
    }
    let mv = m.vertices(n);
    if leftover.iter().any(|&v| mv.contains(v)) {
        return Err(Error::Precondition("the leftover meets the absorbing set".into()));
    }
    let groups = leftover.len() / r;
    if groups > m.members.len() {
        return Err(Error::Precondition(format!("{groups} leftover sets but only {} absorbers", m.members.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = leftover.to_vec();
    let mut memo: std::collections::HashMap<(Vec<usize>, usize), bool> = std::collections::HashMap::new();
    for _ in 0..ABSORB_RETRIES * 4 {
        let sets: Vec<Vec<usize>> = order.chunks(r).map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c
        }).collect();
        let mut adj: Vec<Vec<usize>> = Vec::new();
        for qs in &sets {
            let mut row = Vec::new();
            for (ai, a) in m.members.iter().enumerate() {
                let key = (qs.clone(), ai);
                let ok = match memo.get(&key) {
                    Some(&b) => b,
                    None => {
                        let b = is_absorber(g, qs, a, r)?;
                        memo.insert(key, b);
                        b
                    }
                };
                if ok {
                    row.push(ai);
                }
            }
            adj.push(row);
        }
        let mm = bipartite_matching(m.members.len(), &adj);
        if mm.iter().all(|x| x.is_some()) {
            let mut cl: Vec<Vec<usize>> = Vec::new();
            let mut used = vec![false; m.members.len()];
            for (qs, ai) in sets.iter().zip(mm) {
                let ai = ai.expect("perfect");
                used[ai] = true;
                let mut both = m.members[ai].clone();
                both.extend_from_slice(qs);
                both.sort_unstable();
                let f = kr_factor_exact(&g.induced(&both), r)?.ok_or_else(|| Error::Internal("absorber lost its factor".into()))?;
                cl.extend(f.cliques.iter().map(|c| c.iter().map(|&x| both[x]).collect::<Vec<_>>()));
            }
            for (ai, f) in m.factors.iter().enumerate() {
                if !used[ai] {
                    cl.extend(f.cliques.iter().cloned());
                }
            }
            let t = Tiling::new(r, cl);
            t.verify_partial(g).map_err(|v| Error::Internal(format!("absorbed tiling invalid: {v}")))?;
            return Ok(t);
        }
        order.shuffle(&mut rng);
    }
    Err(Error::Precondition("no assignment of leftover sets to absorbers".into()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorptionTrace {
    pub attempts: usize,
    pub absorbers: usize,
    pub uncovered: usize,
}

/// Absorbing set, almost cover of the rest, then absorption of the leftover,
/// rebuilding with fresh seeds on failure.
pub fn absorption_pipeline(g: &Graph, r: usize, cfg: &ConstantsConfig, seed: u64) -> Result<(Option<Tiling>, AbsorptionTrace)> {
    let n = g.n();
    let mut trace = AbsorptionTrace::default();
    if n % r != 0 {
        return Err(Error::InvalidArgument(format!("r = {r} must divide n = {n}")));
    }
    let mut count = family_target(n, r, cfg);
    for attempt in 0..ABSORB_RETRIES as u64 {
        trace.attempts += 1;
        let Some(m) = build_absorbing_set_with(g, r, cfg, count, seed.wrapping_add(attempt * 7919))? else {
            if count > 1 {
                count -= 1;
                continue;
            }
            break;
        };
        trace.absorbers = m.members.len();
        let ac = almost_cover(g, r, cfg, &m.vertices(n));
        trace.uncovered = ac.uncovered.len();
        if ac.uncovered.len() / r > m.members.len() {
            count = (count + 1).min(n / (r * r));
            continue;
        }
        if let Ok(t) = absorb(g, &m, &ac.uncovered, seed ^ attempt) {
            let mut all = ac.tiling.clone();
            all.extend(t);
            if all.verify_factor(g).is_ok() {
                return Ok((Some(all), trace));
            }
        }
    }
    Ok((None, trace))
}
