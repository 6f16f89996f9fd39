//! Bounded searches for large cliques, independent sets and sparse sets.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of a search that may run out of budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Found<T> {
    Yes(T),
    /// The search space was exhausted.
    No,
    /// The node budget ran out first.
    Unknown,
}

impl<T> Found<T> {
    pub fn into_option(self) -> Option<T> {
        match self {
            Found::Yes(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Found::Yes(_))
    }
}

// ====================================================================
// Cliques with a coloring bound
// ====================================================================

/// Greedy sequential coloring of `cand`; returns vertices in color order
/// together with the color number of each.
fn color_order(g: &Graph, cand: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.len());
    let mut colors = Vec::with_capacity(cand.len());
    let mut left = cand.clone();
    let mut c = 0;
    while !left.is_empty() {
        c += 1;
        let mut avail = left.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(g.neighbors(v));
            left.remove(v);
            order.push(v);
            colors.push(c);
        }
    }
    (order, colors)
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    target: usize,
    /// Cliques of at most this size are not worth finding.
    floor: usize,
    best: Vec<usize>,
    nodes: u64,
    limit: u64,
    exhausted: bool,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, cur: &mut Vec<usize>, cand: VertexSet) {
        if self.best.len() >= self.target {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.exhausted = true;
            return;
        }
        let (order, colors) = color_order(self.g, &cand);
        let mut cand = cand;
        for i in (0..order.len()).rev() {
            if cur.len() + colors[i] <= self.best.len().max(self.floor) || self.exhausted {
                return;
            }
            let v = order[i];
            cur.push(v);
            let next = cand.intersection(self.g.neighbors(v));
            if next.is_empty() {
                if cur.len() > self.best.len() {
                    self.best = cur.clone();
                }
            } else {
                self.expand(cur, next);
            }
            cur.pop();
            cand.remove(v);
            if self.best.len() >= self.target {
                return;
            }
        }
    }
}

/// A clique of at least `target` vertices inside `within`.
pub fn clique_at_least(g: &Graph, target: usize, within: &VertexSet, node_limit: u64) -> Found<Vec<usize>> {
    if target == 0 {
        return Found::Yes(Vec::new());
    }
    let mut s = CliqueSearch { g, target, floor: target - 1, best: Vec::new(), nodes: 0, limit: node_limit, exhausted: false };
    s.expand(&mut Vec::new(), within.clone());
    if s.best.len() >= target {
        let mut b = s.best;
        b.truncate(target);
        b.sort_unstable();
        Found::Yes(b)
    } else if s.exhausted {
        Found::Unknown
    } else {
        Found::No
    }
}

/// Maximum clique inside `within` (exact when the budget suffices).
pub fn maximum_clique(g: &Graph, within: &VertexSet, node_limit: u64) -> (Vec<usize>, bool) {
    let mut s = CliqueSearch { g, target: usize::MAX, floor: 0, best: Vec::new(), nodes: 0, limit: node_limit, exhausted: false };
    s.expand(&mut Vec::new(), within.clone());
    let mut b = s.best;
    b.sort_unstable();
    (b, !s.exhausted)
}

/// An independent set of at least `target` vertices inside `within`.
pub fn independent_set_at_least(g: &Graph, target: usize, within: &VertexSet, node_limit: u64) -> Found<Vec<usize>> {
    clique_at_least(&g.complement(), target, within, node_limit)
}

pub fn maximum_independent_set(g: &Graph, node_limit: u64) -> (Vec<usize>, bool) {
    let c = g.complement();
    maximum_clique(&c, &c.all(), node_limit)
}

// ====================================================================
// Sparse sets
// ====================================================================

/// A `size`-subset of `within` spanning at most `max_edges` edges.
/// Branch and bound; each candidate carries its number of neighbours in the
/// partial set.
pub fn sparse_set(g: &Graph, size: usize, max_edges: usize, within: &VertexSet, node_limit: u64) -> Found<Vec<usize>> {
    if within.len() < size {
        return Found::No;
    }
    if max_edges == 0 {
        return independent_set_at_least(g, size, within, node_limit);
    }
    let cand: Vec<usize> = within.iter().collect();
    let mut st = SparseSearch { g, size, max_edges, nodes: 0, limit: node_limit, exhausted: false };
    let mut chosen = Vec::new();
    let cost = vec![0usize; g.n()];
    if st.rec(&mut chosen, &cand, 0, &cost) {
        chosen.sort_unstable();
        Found::Yes(chosen)
    } else if st.exhausted {
        Found::Unknown
    } else {
        Found::No
    }
}

struct SparseSearch<'a> {
    g: &'a Graph,
    size: usize,
    max_edges: usize,
    nodes: u64,
    limit: u64,
    exhausted: bool,
}

impl SparseSearch<'_> {
    fn rec(&mut self, chosen: &mut Vec<usize>, cand: &[usize], edges: usize, cost: &[usize]) -> bool {
        if chosen.len() == self.size {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.exhausted = true;
            return false;
        }
        let need = self.size - chosen.len();
        let room = self.max_edges - edges;
        let mut live: Vec<usize> = cand.iter().copied().filter(|&v| cost[v] <= room).collect();
        // cheapest-first keeps good solutions early
        live.sort_by_key(|&v| (cost[v], v));
        if live.len() < need {
            return false;
        }
        // the `need` cheapest additions already overflow the budget
        let lower: usize = live.iter().take(need).map(|&v| cost[v]).sum();
        if lower > room {
            return false;
        }
        for i in 0..live.len() {
            if live.len() - i < need || self.exhausted {
                return false;
            }
            let v = live[i];
            let mut next_cost = cost.to_vec();
            for w in self.g.neighbors(v).iter() {
                next_cost[w] += 1;
            }
            chosen.push(v);
            if self.rec(chosen, &live[i + 1..], edges + cost[v], &next_cost) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Local search for a sparse `size`-subset: random start, then swaps that
/// lower the induced edge count, with occasional uphill moves.
pub fn sparse_set_annealing(g: &Graph, size: usize, within: &VertexSet, seed: u64, rounds: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = within.iter().collect();
    if pool.len() <= size {
        return pool;
    }
    pool.shuffle(&mut rng);
    let mut inside = VertexSet::from_iter(g.n(), pool[..size].iter().copied());
    let mut best = inside.clone();
    let mut best_e = g.edges_within(&inside);
    let mut cur_e = best_e;
    for step in 0..rounds {
        if cur_e == 0 {
            break;
        }
        let ins: Vec<usize> = inside.iter().collect();
        let outs: Vec<usize> = pool.iter().copied().filter(|&v| !inside.contains(v)).collect();
        let u = ins[rng.gen_range(0..ins.len())];
        let v = outs[rng.gen_range(0..outs.len())];
        let du = g.degree_into(u, &inside);
        let dv = g.degree_into(v, &inside) - usize::from(g.has_edge(u, v));
        let temp = 1.0 - step as f64 / rounds as f64;
        let accept = dv <= du || rng.gen_bool(0.2 * temp);
        if accept {
            inside.remove(u);
            inside.insert(v);
            cur_e = cur_e + dv - du;
            if cur_e < best_e {
                best_e = cur_e;
                best = inside.clone();
            }
        }
    }
    best.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cliques() {
        let g = Graph::complete(4).disjoint_union(&Graph::cycle(5));
        assert_eq!(maximum_clique(&g, &g.all(), u64::MAX), (vec![0, 1, 2, 3], true));
        assert_eq!(clique_at_least(&g, 5, &g.all(), u64::MAX), Found::No);
        let c = clique_at_least(&g, 3, &g.all(), u64::MAX).into_option().unwrap();
        assert!(c.len() == 3 && g.is_clique(&c));
    }

    #[test]
    fn independent_sets() {
        let (s, exact) = maximum_independent_set(&Graph::cycle(7), u64::MAX);
        assert!(exact);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn sparse_sets() {
        let g = Graph::complete(6);
        assert_eq!(sparse_set(&g, 3, 2, &g.all(), u64::MAX), Found::No);
        assert!(sparse_set(&g, 3, 3, &g.all(), u64::MAX).is_yes());
        let c = Graph::cycle(6);
        assert_eq!(sparse_set(&c, 4, 1, &c.all(), u64::MAX), Found::No);
        let s = sparse_set(&c, 4, 2, &c.all(), u64::MAX).into_option().unwrap();
        assert_eq!(c.edges_within(&VertexSet::from_iter(6, s)), 2);
        let a = sparse_set_annealing(&c, 3, &c.all(), 1, 500);
        assert_eq!(c.edges_within(&VertexSet::from_iter(6, a)), 0);
    }
}
