//! Exhaustive enumeration: labeled graphs by edge mask and isomorphism
//! classes by canonical deduplication of one-vertex extensions.

use crate::graph::Graph;
use std::collections::HashSet;

/// Largest order handled by the canonical enumeration.
pub const CANON_CAP: usize = 10;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Bit `i` of `mask` is the `i`-th pair `(u, v)`, `u < v`, in lexicographic
/// order.
pub fn labeled_graph(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

/// Number of labeled graphs on `n` vertices.
pub fn labeled_count(n: usize) -> u64 {
    1u64 << pair_count(n)
}

/// Colour refinement started from degrees; the returned colours are
/// isomorphism invariant and ordered by signature.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = g.degrees();
    let mut cells = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect();
        if sorted.len() == cells {
            return next;
        }
        cells = sorted.len();
        color = next;
    }
}

struct Canon<'a> {
    g: &'a Graph,
    slot_color: Vec<usize>,
    color: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
    best: Option<u64>,
    bits: usize,
}

impl Canon<'_> {
    /// Positions are filled in order; position `p` fixes the bits of pairs
    /// `(i, p)`, `i < p`, which are contiguous in colexicographic order.
    fn search(&mut self, p: usize, code: u64) {
        let n = self.g.n();
        if p == n {
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.color[v] != self.slot_color[p] {
                continue;
            }
            let mut c = code;
            for i in 0..p {
                c = c << 1 | self.g.has_edge(self.order[i], v) as u64;
            }
            let known = pair_count(p + 1);
            if let Some(b) = self.best {
                if c < b >> (self.bits - known) {
                    continue;
                }
            }
            self.used[v] = true;
            self.order.push(v);
            self.search(p + 1, c);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

/// Canonical code: the largest colexicographic adjacency string over the
/// orderings compatible with the refined colours. Equal codes on graphs of
/// equal order mean isomorphic graphs.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= CANON_CAP, "canonical codes need n <= {CANON_CAP}");
    let color = refine(g);
    let mut slot_color = color.clone();
    slot_color.sort_unstable();
    let mut c = Canon { g, slot_color, color, order: Vec::new(), used: vec![false; n], best: None, bits: pair_count(n) };
    c.search(0, 0);
    c.best.unwrap_or(0)
}

/// Inverse of [`canonical_code`].
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let bits = pair_count(n);
    let mut g = Graph::new(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (bits - 1 - idx) & 1 == 1 {
                g.add_edge(i, j);
            }
            idx += 1;
        }
    }
    g
}

/// One representative per isomorphism class on `n` vertices, for every
/// `n` in `0..=n_max`, each in canonical form.
pub fn all_graphs_up_to_iso(n_max: usize) -> Vec<Vec<Graph>> {
    assert!(n_max <= CANON_CAP);
    let mut levels = vec![vec![Graph::new(0)]];
    for n in 1..=n_max {
        let mut seen = HashSet::new();
        let mut level = Vec::new();
        for h in &levels[n - 1] {
            for nb in 0u64..1 << (n - 1) {
                let mut g = h.disjoint_union(&Graph::new(1));
                for u in 0..n - 1 {
                    if nb >> u & 1 == 1 {
                        g.add_edge(u, n - 1);
                    }
                }
                let code = canonical_code(&g);
                if seen.insert(code) {
                    level.push(code);
                }
            }
        }
        level.sort_unstable();
        levels.push(level.into_iter().map(|c| graph_from_code(n, c)).collect());
    }
    levels
}

pub fn is_connected(g: &Graph) -> bool {
    g.components().len() <= 1
}

/// Connected graphs up to isomorphism on `1..=n_max` vertices.
pub fn connected_graphs(n_max: usize) -> Vec<Graph> {
    all_graphs_up_to_iso(n_max).into_iter().skip(1).flatten().filter(is_connected).collect()
}
