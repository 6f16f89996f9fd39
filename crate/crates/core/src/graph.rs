//! Simple undirected graphs with bitset adjacency.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use serde::{Deserialize, Serialize};

/// Largest vertex count accepted anywhere in the library.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "n = {n} exceeds {MAX_VERTICES}");
        Graph { n, m: 0, adj: vec![VertexSet::new(n); n] }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, cap: MAX_VERTICES });
        }
        let mut g = Graph::new(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge {i} ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("edge {i} is a loop at {u}")));
            }
            if !g.add_edge(u, v) {
                return Err(Error::InvalidArgument(format!("edge {i} ({u},{v}) is a duplicate")));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n && v < self.n);
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
            true
        } else {
            false
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u < self.n && v < self.n && self.adj[u].remove(v) {
            self.adj[v].remove(u);
            self.m -= 1;
            true
        } else {
            false
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `d(v, S)`: neighbours of `v` inside `s`.
    #[inline]
    pub fn degree_into(&self, v: usize, s: &VertexSet) -> usize {
        self.adj[v].intersection_len(s)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of edges of `G[s]`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.adj[v].intersection_len(s)).sum::<usize>() / 2
    }

    /// Number of edges with one end in `a` and the other in `b` (disjoint sets).
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|v| self.adj[v].intersection_len(b)).sum()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Common neighbourhood `N(S)`; the whole vertex set when `s` is empty.
    pub fn common_neighbors(&self, s: &[usize]) -> VertexSet {
        let mut c = self.all();
        for &v in s {
            c.intersect_with(&self.adj[v]);
        }
        c
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            let mut row = self.adj[u].complement();
            row.remove(u);
            g.adj[u] = row;
        }
        g.m = self.n * self.n.saturating_sub(1) / 2 - self.m;
        g
    }

    /// Subgraph induced by `vs`, with vertex `vs[i]` relabelled `i`.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut g = Graph::new(vs.len());
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if self.has_edge(vs[i], vs[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, self.n + v);
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&self.all())
    }

    /// Components of `G[s]`.
    pub fn components_within(&self, s: &VertexSet) -> Vec<Vec<usize>> {
        let mut left = s.clone();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::new(self.n);
            comp.insert(start);
            let mut frontier = vec![start];
            left.remove(start);
            while let Some(v) = frontier.pop() {
                for w in self.adj[v].intersection(&left).iter() {
                    left.remove(w);
                    comp.insert(w);
                    frontier.push(w);
                }
            }
            out.push(comp.to_vec());
        }
        out
    }

    /// Twin classes: vertices `u`, `v` are twins when `N(u) - v = N(v) - u`.
    /// Any permutation inside a class is an automorphism.
    /// Returns, for each vertex, the smallest member of its class.
    pub fn twin_classes(&self) -> Vec<usize> {
        let n = self.n;
        let mut rep: Vec<usize> = (0..n).collect();
        let twins = |u: usize, v: usize| {
            let mut a = self.adj[u].clone();
            a.remove(v);
            let mut b = self.adj[v].clone();
            b.remove(u);
            a == b
        };
        for v in 0..n {
            for u in 0..v {
                if rep[u] == u && twins(u, v) {
                    rep[v] = u;
                    break;
                }
            }
        }
        // members of a class must be pairwise twins; fall back to singletons otherwise
        for c in 0..n {
            if rep[c] != c {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&v| rep[v] == c).collect();
            let ok = members.iter().enumerate().all(|(i, &a)| members[i + 1..].iter().all(|&b| twins(a, b)));
            if !ok {
                for &v in &members {
                    rep[v] = v;
                }
            }
        }
        rep
    }
}

// ====================================================================
// Degree-sum statistics
// ====================================================================

/// Minimum non-adjacent degree sum; `Infinite` for complete graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sigma {
    Finite(usize),
    Infinite,
}

impl Sigma {
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Sigma::Infinite => true,
            Sigma::Finite(s) => s as i64 >= bound,
        }
    }

    /// `sigma >= coef * scale`, exactly.
    pub fn at_least_q(self, coef: Q, scale: usize) -> bool {
        match self {
            Sigma::Infinite => true,
            Sigma::Finite(s) => rational::ge(s, coef, scale),
        }
    }
}

impl std::fmt::Display for Sigma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sigma::Finite(s) => write!(f, "{s}"),
            Sigma::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OreStats {
    pub sigma: Sigma,
    /// Lexicographically first non-adjacent pair attaining sigma.
    pub witness: Option<(usize, usize)>,
    pub min_degree: usize,
    pub max_degree: usize,
}

pub fn ore_stats(g: &Graph) -> OreStats {
    let deg = g.degrees();
    let mut best: Option<(usize, (usize, usize))> = None;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                let s = deg[u] + deg[v];
                if best.is_none_or(|(b, _)| s < b) {
                    best = Some((s, (u, v)));
                }
            }
        }
    }
    OreStats {
        sigma: best.map_or(Sigma::Infinite, |(s, _)| Sigma::Finite(s)),
        witness: best.map(|(_, p)| p),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
    }
}

pub fn sigma(g: &Graph) -> Sigma {
    ore_stats(g).sigma
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OreEdgeBound {
    pub holds: bool,
    /// Lexicographically first edge with the largest degree sum, and that sum.
    pub worst_edge: Option<(usize, usize, usize)>,
}

/// Checks `d(x) + d(y) <= 2k` on every edge.
pub fn ore_edge_bound(g: &Graph, k: usize) -> OreEdgeBound {
    let deg = g.degrees();
    let mut worst: Option<(usize, usize, usize)> = None;
    for (u, v) in g.edges() {
        let s = deg[u] + deg[v];
        if worst.is_none_or(|(_, _, w)| s > w) {
            worst = Some((u, v, s));
        }
    }
    OreEdgeBound { holds: worst.is_none_or(|(_, _, w)| w <= 2 * k), worst_edge: worst }
}

/// `|E(G[s])| <= gamma n^2`.
pub fn gamma_independent(g: &Graph, s: &VertexSet, gamma: Q) -> bool {
    let n = g.n();
    rational::le(g.edges_within(s), gamma, n * n)
}

/// Vertices of degree strictly below `threshold`.
pub fn low_degree_set(g: &Graph, threshold: Q) -> VertexSet {
    VertexSet::from_iter(g.n(), (0..g.n()).filter(|&v| rational::lt(g.degree(v), threshold, 1)))
}

/// Lexicographically first `r`-clique inside `within`.
pub fn find_clique_of_size(g: &Graph, r: usize, within: &VertexSet) -> Option<Vec<usize>> {
    let mut acc = Vec::with_capacity(r);
    if clique_rec(g, r, within.clone(), &mut acc) {
        Some(acc)
    } else {
        None
    }
}

fn clique_rec(g: &Graph, need: usize, cand: VertexSet, acc: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    if cand.len() < need {
        return false;
    }
    let mut rest = cand;
    while let Some(v) = rest.first() {
        if rest.len() < need {
            return false;
        }
        rest.remove(v);
        let next = rest.intersection(g.neighbors(v));
        if next.len() + 1 >= need {
            acc.push(v);
            if clique_rec(g, need - 1, next, acc) {
                return true;
            }
            acc.pop();
        }
    }
    false
}

/// All `r`-cliques inside `within`, in lexicographic order, up to `limit`.
pub fn cliques_of_size(g: &Graph, r: usize, within: &VertexSet, limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(r);
    all_cliques_rec(g, r, within.clone(), &mut acc, &mut out, limit);
    out
}

fn all_cliques_rec(
    g: &Graph,
    need: usize,
    cand: VertexSet,
    acc: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if need == 0 {
        out.push(acc.clone());
        return;
    }
    let mut rest = cand;
    while let Some(v) = rest.first() {
        if rest.len() < need || out.len() >= limit {
            return;
        }
        rest.remove(v);
        let next = rest.intersection(g.neighbors(v));
        if next.len() + 1 >= need {
            acc.push(v);
            all_cliques_rec(g, need - 1, next, acc, out, limit);
            acc.pop();
        }
    }
}
