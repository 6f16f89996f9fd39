//! Exhaustive ground truth for small instances.

use crate::bitset::VertexSet;
use crate::cover::{Coloring, LayeredFactor, Tiling};
use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::{HashMap, HashSet};

/// Largest order accepted by [`layered_factor_exact`].
pub const LAYERED_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Treat members of a twin class as interchangeable.
    pub twin_reduction: bool,
    /// Remember uncovered sets already shown to be infeasible.
    pub memo: bool,
    /// Abort with [`Error::BudgetExhausted`] after this many search nodes.
    pub node_limit: Option<u64>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { twin_reduction: true, memo: false, node_limit: None }
    }
}

// ====================================================================
// K_r-factors
// ====================================================================

pub fn kr_factor_exact(g: &Graph, r: usize) -> Result<Option<Tiling>> {
    kr_factor_exact_with(g, r, &OracleOptions::default())
}

/// Backtracking on the lowest uncovered vertex, trying the cliques through it
/// in lexicographic order.
pub fn kr_factor_exact_with(g: &Graph, r: usize, opts: &OracleOptions) -> Result<Option<Tiling>> {
    let n = g.n();
    if r == 0 || n % r != 0 {
        return Err(Error::InvalidArgument(format!("r = {r} does not divide n = {n}")));
    }
    if r == 1 {
        return Ok(Some(Tiling::new(1, (0..n).map(|v| vec![v]).collect())));
    }
    let rep = if opts.twin_reduction { g.twin_classes() } else { (0..n).collect() };
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        members[rep[v]].push(v);
    }
    let mut s = FactorSearch {
        g,
        r,
        rep,
        members,
        opts,
        nodes: 0,
        failed: HashSet::new(),
        acc: Vec::new(),
    };
    if s.search(g.all())? {
        Ok(Some(Tiling::new(r, s.acc)))
    } else {
        Ok(None)
    }
}

struct FactorSearch<'a> {
    g: &'a Graph,
    r: usize,
    rep: Vec<usize>,
    members: Vec<Vec<usize>>,
    opts: &'a OracleOptions,
    nodes: u64,
    failed: HashSet<VertexSet>,
    acc: Vec<Vec<usize>>,
}

impl FactorSearch<'_> {
    fn search(&mut self, uncovered: VertexSet) -> Result<bool> {
        let Some(v) = uncovered.first() else { return Ok(true) };
        self.nodes += 1;
        if self.opts.node_limit.is_some_and(|lim| self.nodes > lim) {
            return Err(Error::BudgetExhausted);
        }
        if self.opts.memo && self.failed.contains(&uncovered) {
            return Ok(false);
        }
        let need = self.r - 1;
        if uncovered.iter().any(|u| self.g.degree_into(u, &uncovered) < need) {
            self.fail(uncovered);
            return Ok(false);
        }
        let mut rest = uncovered.clone();
        rest.remove(v);
        let cand = rest.intersection(self.g.neighbors(v));
        let mut chosen = vec![v];
        let ok = self.cliques_through(&rest, cand, need, &mut chosen)?;
        if !ok {
            self.fail(uncovered);
        }
        Ok(ok)
    }

    fn fail(&mut self, uncovered: VertexSet) {
        if self.opts.memo {
            self.failed.insert(uncovered);
        }
    }

    /// A vertex may join only if every uncovered lower member of its twin
    /// class has already joined.
    fn canonical(&self, w: usize, uncovered: &VertexSet, chosen: &[usize]) -> bool {
        self.members[self.rep[w]].iter().take_while(|&&u| u < w).all(|&u| !uncovered.contains(u) || chosen.contains(&u))
    }

    fn cliques_through(
        &mut self,
        rest: &VertexSet,
        cand: VertexSet,
        need: usize,
        chosen: &mut Vec<usize>,
    ) -> Result<bool> {
        if need == 0 {
            let mut next = rest.clone();
            for &c in chosen.iter().skip(1) {
                next.remove(c);
            }
            self.acc.push(chosen.clone());
            if self.search(next)? {
                return Ok(true);
            }
            self.acc.pop();
            return Ok(false);
        }
        let mut pool = cand;
        while let Some(w) = pool.first() {
            if pool.len() < need {
                break;
            }
            pool.remove(w);
            if !self.canonical(w, rest, chosen) {
                continue;
            }
            let next = pool.intersection(self.g.neighbors(w));
            if next.len() + 1 < need {
                continue;
            }
            chosen.push(w);
            if self.cliques_through(rest, next, need - 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

// ====================================================================
// Equitable colorings
// ====================================================================

/// Direct search for an equitable `k`-coloring: colour vertices one at a
/// time, always the uncoloured vertex with the fewest admissible classes.
pub fn equitable_coloring_exact(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    let n = g.n();
    if k == 0 || k > n.max(1) {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
    }
    let mut s = ColorSearch {
        g,
        k,
        floor: n / k,
        big: n % k,
        classes: vec![VertexSet::new(n); k],
        sizes: vec![0; k],
        full_big: 0,
        color: vec![usize::MAX; n],
    };
    if s.search(n)? {
        let mut classes = vec![Vec::new(); k];
        for v in 0..n {
            classes[s.color[v]].push(v);
        }
        Ok(Some(Coloring::new(k, classes)))
    } else {
        Ok(None)
    }
}

struct ColorSearch<'a> {
    g: &'a Graph,
    k: usize,
    floor: usize,
    big: usize,
    classes: Vec<VertexSet>,
    sizes: Vec<usize>,
    full_big: usize,
    color: Vec<usize>,
}

impl ColorSearch<'_> {
    fn admissible(&self, v: usize, c: usize) -> bool {
        let s = self.sizes[c];
        if s > self.floor || (s == self.floor && (self.big == 0 || self.full_big == self.big)) {
            return false;
        }
        self.classes[c].is_disjoint(self.g.neighbors(v))
    }

    fn search(&mut self, left: usize) -> Result<bool> {
        if left == 0 {
            return Ok(true);
        }
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.g.n() {
            if self.color[v] != usize::MAX {
                continue;
            }
            let cnt = (0..self.k).filter(|&c| self.admissible(v, c)).count();
            if cnt == 0 {
                return Ok(false);
            }
            if best.is_none_or(|(b, _)| cnt < b) {
                best = Some((cnt, v));
            }
        }
        let (_, v) = best.expect("an uncoloured vertex exists");
        let mut tried_empty = false;
        for c in 0..self.k {
            if !self.admissible(v, c) {
                continue;
            }
            if self.sizes[c] == 0 {
                if tried_empty {
                    continue;
                }
                tried_empty = true;
            }
            self.place(v, c, true);
            if self.search(left - 1)? {
                return Ok(true);
            }
            self.place(v, c, false);
        }
        Ok(false)
    }

    fn place(&mut self, v: usize, c: usize, on: bool) {
        if on {
            self.classes[c].insert(v);
            self.sizes[c] += 1;
            self.color[v] = c;
            if self.sizes[c] == self.floor + 1 {
                self.full_big += 1;
            }
        } else {
            if self.sizes[c] == self.floor + 1 {
                self.full_big -= 1;
            }
            self.classes[c].remove(v);
            self.sizes[c] -= 1;
            self.color[v] = usize::MAX;
        }
    }
}

// ====================================================================
// Absorbers
// ====================================================================

/// Iterator over `k`-subsets of a slice in lexicographic order.
pub struct Combinations<'a> {
    items: &'a [usize],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub fn new(items: &'a [usize], k: usize) -> Self {
        Combinations { items, idx: (0..k).collect(), done: k > items.len() }
    }
}

impl Iterator for Combinations<'_> {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out: Vec<usize> = self.idx.iter().map(|&i| self.items[i]).collect();
        let k = self.idx.len();
        let n = self.items.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `G[s]` and `G[s + q]` both have `K_r`-factors.
pub fn is_absorber(g: &Graph, q: &[usize], s: &[usize], r: usize) -> Result<bool> {
    if s.len() % r != 0 || q.len() % r != 0 {
        return Ok(false);
    }
    if kr_factor_exact(&g.induced(s), r)?.is_none() {
        return Ok(false);
    }
    let mut both = s.to_vec();
    both.extend_from_slice(q);
    both.sort_unstable();
    Ok(kr_factor_exact(&g.induced(&both), r)?.is_some())
}

/// Every `r^2`-subset of `V - q` that absorbs `q`, in lexicographic order,
/// stopping after `cap` of them.
pub fn absorbers_exact(g: &Graph, q: &[usize], r: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if q.len() != r || r * r + r > n {
        return Err(Error::InvalidArgument(format!("need |Q| = r and r^2 + r <= n (r = {r}, n = {n})")));
    }
    let rest: Vec<usize> = (0..n).filter(|v| !q.contains(v)).collect();
    let mut out = Vec::new();
    for s in Combinations::new(&rest, r * r) {
        if out.len() >= cap {
            break;
        }
        if is_absorber(g, q, &s, r)? {
            out.push(s);
        }
    }
    Ok(out)
}

pub fn count_absorbers_exact(g: &Graph, q: &[usize], r: usize, cap: usize) -> Result<usize> {
    Ok(absorbers_exact(g, q, r, cap)?.len())
}

// ====================================================================
// Layered factors
// ====================================================================

/// The layered factor whose clique counts, read from `K_r` down, are
/// lexicographically largest. Dynamic programming over vertex subsets.
pub fn layered_factor_exact(g: &Graph, r: usize) -> Result<LayeredFactor> {
    let n = g.n();
    if n > LAYERED_CAP {
        return Err(Error::TooLarge { n, cap: LAYERED_CAP });
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, w| m | 1 << w)).collect();
    let mut memo: HashMap<u32, (Vec<u32>, u32)> = HashMap::new();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    layered_best(full, r, &adj, &mut memo);
    let mut cliques = Vec::new();
    let mut u = full;
    while u != 0 {
        let c = memo[&u].1;
        cliques.push((0..n).filter(|&v| c >> v & 1 == 1).collect());
        u &= !c;
    }
    Ok(LayeredFactor::from_cliques(r, cliques))
}

/// Profile indexed from `K_r` down to `K_1`.
fn layered_best(u: u32, r: usize, adj: &[u32], memo: &mut HashMap<u32, (Vec<u32>, u32)>) -> Vec<u32> {
    if u == 0 {
        return vec![0; r];
    }
    if let Some((p, _)) = memo.get(&u) {
        return p.clone();
    }
    let v = u.trailing_zeros() as usize;
    let mut options = Vec::new();
    clique_masks(1 << v, adj[v] & u, r - 1, adj, &mut options);
    let mut best: Option<(Vec<u32>, u32)> = None;
    for c in options {
        let mut p = layered_best(u & !c, r, adj, memo);
        p[r - c.count_ones() as usize] += 1;
        if best.as_ref().is_none_or(|(b, _)| p > *b) {
            best = Some((p, c));
        }
    }
    let best = best.expect("the singleton clique is always available");
    memo.insert(u, best.clone());
    best.0
}

/// All cliques `cur + X` with `X` drawn from `cand` (higher-indexed) and
/// `|X| <= room`.
fn clique_masks(cur: u32, cand: u32, room: usize, adj: &[u32], out: &mut Vec<u32>) {
    out.push(cur);
    if room == 0 {
        return;
    }
    let mut pool = cand;
    while pool != 0 {
        let w = pool.trailing_zeros() as usize;
        pool &= pool - 1;
        clique_masks(cur | 1 << w, pool & adj[w], room - 1, adj, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_triangles_factor() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let t = kr_factor_exact(&g, 3).unwrap().unwrap();
        assert_eq!(t.cliques, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(kr_factor_exact(&Graph::cycle(6), 3).unwrap().is_none());
        assert!(kr_factor_exact(&Graph::cycle(5), 3).is_err());
    }

    #[test]
    fn coloring_basics() {
        assert!(equitable_coloring_exact(&Graph::complete(4), 3).unwrap().is_none());
        let c = equitable_coloring_exact(&Graph::cycle(5), 3).unwrap().unwrap();
        assert!(c.verify_equitable(&Graph::cycle(5)).is_ok());
        // K_{3,3} has no equitable 3-coloring
        assert!(equitable_coloring_exact(&Graph::complete_bipartite(3, 3), 3).unwrap().is_none());
        assert!(equitable_coloring_exact(&Graph::complete_bipartite(3, 3), 2).unwrap().is_some());
    }

    #[test]
    fn combinations_lexicographic() {
        let items = [1, 3, 5, 7];
        let all: Vec<_> = Combinations::new(&items, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![1, 3]);
        assert_eq!(all[5], vec![5, 7]);
        assert_eq!(Combinations::new(&items, 0).count(), 1);
        assert_eq!(Combinations::new(&items, 5).count(), 0);
        assert_eq!(binomial(9, 3), 84);
    }

    #[test]
    fn layered_small() {
        let g = Graph::cycle(5);
        let lf = layered_factor_exact(&g, 3).unwrap();
        assert_eq!(lf.counts(), vec![0, 1, 2, 0]);
        assert!(lf.verify(&g).is_ok());
    }

    #[test]
    fn node_limit_aborts() {
        let g = Graph::complete_bipartite(6, 6);
        let opts = OracleOptions { twin_reduction: false, memo: false, node_limit: Some(3) };
        assert!(matches!(kr_factor_exact_with(&g, 3, &opts), Err(Error::BudgetExhausted) | Ok(None)));
    }
}
