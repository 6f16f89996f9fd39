//! Maximum matchings (Edmonds' blossom algorithm) and the structural
//! consequences used elsewhere: covering matchings, second neighbourhoods,
//! and the perfect-matching trichotomy for dense even graphs.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{ore_stats, Graph};
use crate::rational::{self, Q};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

const NIL: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<usize>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching { mate: vec![NIL; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut m = Matching::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v || m.mate[u] != NIL || m.mate[v] != NIL {
                return Err(Error::InvalidArgument(format!("({u}, {v}) does not extend the matching")));
            }
            m.mate[u] = v;
            m.mate[v] = u;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        (self.mate[v] != NIL).then_some(self.mate[v])
    }

    pub fn is_covered(&self, v: usize) -> bool {
        self.mate[v] != NIL
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NIL).count() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n()).filter(|&u| self.mate[u] != NIL && u < self.mate[u]).map(|u| (u, self.mate[u])).collect()
    }

    pub fn covered(&self) -> VertexSet {
        VertexSet::from_iter(self.n(), (0..self.n()).filter(|&v| self.mate[v] != NIL))
    }

    pub fn exposed(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.mate[v] == NIL).collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|&m| m != NIL)
    }

    /// Every matched pair is an edge of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.n() == g.n()
            && (0..self.n()).all(|u| {
                let v = self.mate[u];
                v == NIL || (v < self.n() && self.mate[v] == u && g.has_edge(u, v))
            })
    }
}

// ====================================================================
// Blossom
// ====================================================================

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph, mate: Vec<usize>) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate,
            parent: vec![NIL; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NIL {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches for an augmenting path from the exposed vertex `root`;
    /// returns its other end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in self.g.neighbors(v).iter() {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NIL && self.parent[self.mate[to]] != NIL) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NIL {
                    self.parent[to] = v;
                    if self.mate[to] == NIL {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NIL {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn run(mut self) -> Matching {
        for v in 0..self.g.n() {
            if self.mate[v] == NIL {
                if let Some(end) = self.find_path(v) {
                    self.augment(end);
                }
            }
        }
        Matching { mate: self.mate }
    }
}

/// Maximum matching, deterministic: greedy start, then augmenting paths from
/// exposed vertices in increasing order.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut mate = vec![NIL; n];
    for u in 0..n {
        if mate[u] == NIL {
            if let Some(v) = g.neighbors(u).iter().find(|&v| mate[v] == NIL) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }
    Blossom::new(g, mate).run()
}

/// Augments `init` to a maximum matching; vertices covered by `init` stay covered.
pub fn augment_to_maximum(g: &Graph, init: &Matching) -> Result<Matching> {
    if !init.is_valid_in(g) {
        return Err(Error::InvalidArgument("initial matching is not a matching of the graph".into()));
    }
    Ok(Blossom::new(g, init.mate.clone()).run())
}

/// A matching with exactly `d` edges covering every vertex of `x`, where
/// `|x| = d`. `None` when no such matching exists.
pub fn covering_matching(g: &Graph, x: &VertexSet, d: usize) -> Result<Option<Matching>> {
    if x.len() != d {
        return Err(Error::InvalidArgument(format!("|X| = {} but d = {d}", x.len())));
    }
    let n = g.n();
    // X is matchable iff the gadget G + Z (Z a clique joined to V - X) has a
    // perfect matching.
    let z = n - d + d % 2;
    let mut h = Graph::new(n + z);
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    for i in 0..z {
        for j in i + 1..z {
            h.add_edge(n + i, n + j);
        }
        for v in (0..n).filter(|&v| !x.contains(v)) {
            h.add_edge(n + i, v);
        }
    }
    let pm = maximum_matching(&h);
    if !pm.is_perfect() {
        return Ok(None);
    }
    let base: Vec<(usize, usize)> = pm.edges().into_iter().filter(|&(u, v)| u < n && v < n).collect();
    let full = augment_to_maximum(g, &Matching::from_edges(n, &base)?)?;
    if full.size() < d {
        return Ok(None);
    }
    let edges = full.edges();
    let (mut keep, rest): (Vec<_>, Vec<_>) = edges.into_iter().partition(|&(u, v)| x.contains(u) || x.contains(v));
    debug_assert!(keep.len() <= d);
    for e in rest {
        if keep.len() == d {
            break;
        }
        keep.push(e);
    }
    keep.sort_unstable();
    Ok(Some(Matching::from_edges(n, &keep)?))
}

/// `SN(v)`: matched partners of the matched neighbours of an exposed `v`.
pub fn second_neighborhood(g: &Graph, m: &Matching, v: usize) -> Result<VertexSet> {
    if m.is_covered(v) {
        return Err(Error::Precondition(format!("vertex {v} is covered by the matching")));
    }
    let mut s = VertexSet::new(g.n());
    for w in g.neighbors(v).iter() {
        if let Some(z) = m.mate(w) {
            s.insert(z);
        }
    }
    Ok(s)
}

/// Both second neighbourhoods of exposed `x` and `y`.
pub fn sn_sets(g: &Graph, m: &Matching, x: usize, y: usize) -> Result<(VertexSet, VertexSet)> {
    Ok((second_neighborhood(g, m, x)?, second_neighborhood(g, m, y)?))
}

// ====================================================================
// Perfect matching or structure
// ====================================================================

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PmOutcome {
    PerfectMatching { edges: Vec<(usize, usize)> },
    /// A set of at least `n/2` vertices spanning at most `2 gamma n^2` edges.
    NearIndependent { set: Vec<usize>, edges: usize, exposed_pair: Option<(usize, usize)> },
    /// Two odd vertex classes with no edge between them; a class of size at
    /// most `(1 - gamma) n / 2` is verified to be a clique.
    TwoOddComponents { sides: [Vec<usize>; 2], small_side_clique: [bool; 2] },
}

/// Decides between the three outcomes for an even-order graph with
/// `sigma >= n - gamma n`.
pub fn pm_or_structure(g: &Graph, gamma: Q) -> Result<PmOutcome> {
    let n = g.n();
    if n == 0 || n % 2 == 1 {
        return Err(Error::Precondition(format!("n = {n} must be positive and even")));
    }
    let bound = rational::int(1) - gamma;
    if !ore_stats(g).sigma.at_least_q(bound, n) {
        return Err(Error::Precondition("sigma(G) < n - gamma n".into()));
    }
    let m = maximum_matching(g);
    if m.is_perfect() {
        return Ok(PmOutcome::PerfectMatching { edges: m.edges() });
    }
    let budget = gamma * rational::int(2);
    let exposed = m.exposed();
    for (i, &x) in exposed.iter().enumerate() {
        for &y in &exposed[i + 1..] {
            let (sx, sy) = sn_sets(g, &m, x, y)?;
            let core = sx.intersection(&sy);
            if core.is_empty() {
                continue;
            }
            let set = pad_sparse(g, core, n / 2);
            let e = g.edges_within(&set);
            if rational::le(e, budget, n * n) {
                return Ok(PmOutcome::NearIndependent { set: set.to_vec(), edges: e, exposed_pair: Some((x, y)) });
            }
        }
    }
    let comps = g.components();
    let odd: Vec<&Vec<usize>> = comps.iter().filter(|c| c.len() % 2 == 1).collect();
    if odd.len() == 2 {
        let big = if odd[0].len() >= odd[1].len() { 0 } else { 1 };
        let mut sides = [odd[0].clone(), odd[1].clone()];
        for c in comps.iter().filter(|c| c.len() % 2 == 0) {
            sides[big].extend_from_slice(c);
        }
        sides[big].sort_unstable();
        let small_bound = (rational::int(1) - gamma) / rational::int(2);
        let mut flags = [false; 2];
        for (i, side) in sides.iter().enumerate() {
            if rational::le(side.len(), small_bound, n) {
                if !g.is_clique(side) {
                    return Err(Error::Internal(format!("side {i} is small but not a clique")));
                }
                flags[i] = true;
            }
        }
        return Ok(PmOutcome::TwoOddComponents { sides, small_side_clique: flags });
    }
    let set = pad_sparse(g, VertexSet::new(n), n / 2);
    let e = g.edges_within(&set);
    if rational::le(e, budget, n * n) {
        return Ok(PmOutcome::NearIndependent { set: set.to_vec(), edges: e, exposed_pair: None });
    }
    Err(Error::Internal("no outcome of the trichotomy could be certified".into()))
}

/// Grows `core` to `size` vertices, each time adding the vertex with the
/// fewest neighbours in the current set (lowest index on ties).
fn pad_sparse(g: &Graph, mut core: VertexSet, size: usize) -> VertexSet {
    while core.len() < size {
        let v = (0..g.n()).filter(|&v| !core.contains(v)).min_by_key(|&v| (g.degree_into(v, &core), v));
        match v {
            Some(v) => {
                core.insert(v);
            }
            None => break,
        }
    }
    core
}

// ====================================================================
// Bipartite matching
// ====================================================================

/// Maximum bipartite matching; `adj[l]` lists right vertices adjacent to
/// left vertex `l`. Returns the partner of each left vertex.
pub fn bipartite_matching(n_right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut left_of: Vec<usize> = vec![NIL; n_right];
    let mut right_of: Vec<usize> = vec![NIL; adj.len()];
    for l in 0..adj.len() {
        let mut seen = vec![false; n_right];
        kuhn(l, adj, &mut seen, &mut left_of, &mut right_of);
    }
    right_of.into_iter().map(|r| (r != NIL).then_some(r)).collect()
}

fn kuhn(l: usize, adj: &[Vec<usize>], seen: &mut [bool], left_of: &mut [usize], right_of: &mut [usize]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if left_of[r] == NIL || kuhn(left_of[r], adj, seen, left_of, right_of) {
            left_of[r] = l;
            right_of[l] = r;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn odd_cycle_matching() {
        let g = Graph::cycle(5);
        let m = maximum_matching(&g);
        assert_eq!(m.size(), 2);
        assert!(m.is_valid_in(&g));
    }

    #[test]
    fn petersen_is_perfect() {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
            g.add_edge(i, 5 + i);
        }
        assert!(maximum_matching(&g).is_perfect());
    }

    #[test]
    fn blossom_needed() {
        // triangle 0-1-2 with pendant 3 on 2 and pendant 4 on 0
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (0, 4), (1, 5)]).unwrap();
        assert!(maximum_matching(&g).is_perfect());
    }

    #[test]
    fn k4_covering() {
        let g = Graph::complete(4);
        let x = VertexSet::from_iter(4, [0, 1]);
        let m = covering_matching(&g, &x, 2).unwrap().unwrap();
        assert_eq!(m.size(), 2);
        assert!(m.is_covered(0) && m.is_covered(1));
    }

    #[test]
    fn covering_impossible() {
        // star: two leaves cannot both be covered
        let g = Graph::complete_bipartite(1, 3);
        let x = VertexSet::from_iter(4, [1, 2]);
        assert!(covering_matching(&g, &x, 2).unwrap().is_none());
        assert!(covering_matching(&g, &x, 1).is_err());
    }

    #[test]
    fn triangle_and_k5() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(5));
        match pm_or_structure(&g, q(1, 4)).unwrap() {
            PmOutcome::TwoOddComponents { sides, small_side_clique } => {
                assert_eq!(sides, [vec![0, 1, 2], vec![3, 4, 5, 6, 7]]);
                assert_eq!(small_side_clique, [true, false]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trichotomy_precondition() {
        assert!(pm_or_structure(&Graph::cycle(5), q(1, 10)).is_err());
        assert!(pm_or_structure(&Graph::new(4), q(1, 10)).is_err());
    }

    #[test]
    fn kuhn_basic() {
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        let m = bipartite_matching(3, &adj);
        assert_eq!(m, vec![Some(1), Some(0), Some(2)]);
    }
}
