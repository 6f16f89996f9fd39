//! The two extremal families that block `K_r`-factors, their recognisers,
//! and the matching obstructions on the coloring side.

use crate::bitset::VertexSet;
use crate::cover::{Check, Violation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{self, Found};
use serde::{Deserialize, Serialize};

/// Exact independent-set search is used up to this order.
pub const EXACT_MIS_CAP: usize = 64;
const MIS_NODE_LIMIT: u64 = 2_000_000;

/// Proof that a graph has no `K_r`-factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExtremalWitness {
    /// An independent set of `n/r + 1` vertices.
    Ex1 { independent_set: Vec<usize> },
    /// Parts `A_1..A_{r-2}` of size `n/r`, `B_0` of odd size `s`, `B_1` of
    /// size `2n/r - s`, with exactly the edge set of the family.
    Ex2 { a_parts: Vec<Vec<usize>>, b0: Vec<usize>, b1: Vec<usize> },
}

fn check_divides(n: usize, r: usize) -> Result<()> {
    if r == 0 || n % r != 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("r = {r} must divide n = {n}")));
    }
    Ok(())
}

/// An independent set of `n/r + 1` vertices (0..=n/r) joined to a clique on
/// the remaining vertices.
pub fn build_ex1_like(n: usize, r: usize) -> Result<Graph> {
    check_divides(n, r)?;
    let t = n / r + 1;
    if t > n {
        return Err(Error::InvalidArgument(format!("n/r + 1 = {t} exceeds n = {n}")));
    }
    Ok(Graph::new(t).join(&Graph::complete(n - t)))
}

/// Vertex layout: `A_1, .., A_{r-2}` first, then `B_0`, then `B_1`.
pub fn ex2_layout(n: usize, r: usize, s: usize) -> Result<(Vec<Vec<usize>>, Vec<usize>, Vec<usize>)> {
    check_divides(n, r)?;
    let t = n / r;
    if r < 2 {
        return Err(Error::InvalidArgument("r must be at least 2".into()));
    }
    if s % 2 == 0 || s == 0 || s > t {
        return Err(Error::InvalidArgument(format!("s = {s} must be odd with 1 <= s <= n/r = {t}")));
    }
    let a: Vec<Vec<usize>> = (0..r - 2).map(|i| (i * t..(i + 1) * t).collect()).collect();
    let base = (r - 2) * t;
    let b0 = (base..base + s).collect();
    let b1 = (base + s..n).collect();
    Ok((a, b0, b1))
}

pub fn build_ex2(n: usize, r: usize, s: usize) -> Result<Graph> {
    let (a, b0, b1) = ex2_layout(n, r, s)?;
    Ok(ex2_graph(n, &a, &b0, &b1))
}

fn ex2_graph(n: usize, a: &[Vec<usize>], b0: &[usize], b1: &[usize]) -> Graph {
    let mut part = vec![usize::MAX; n];
    for (i, p) in a.iter().enumerate() {
        for &v in p {
            part[v] = i;
        }
    }
    let (j0, j1) = (a.len(), a.len() + 1);
    for &v in b0 {
        part[v] = j0;
    }
    for &v in b1 {
        part[v] = j1;
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (pu, pv) = (part[u], part[v]);
            let join = if pu < j0 || pv < j0 { pu != pv } else { pu == pv };
            if join {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Recognises either family. EX1 is tried first.
pub fn recognize_extremal(g: &Graph, r: usize) -> Result<Option<ExtremalWitness>> {
    if let Some(w) = recognize_ex1(g, r)? {
        return Ok(Some(w));
    }
    recognize_ex2(g, r)
}

/// Searches for an independent set of `n/r + 1` vertices; exact up to
/// [`EXACT_MIS_CAP`] vertices, a bounded search beyond.
pub fn recognize_ex1(g: &Graph, r: usize) -> Result<Option<ExtremalWitness>> {
    check_divides(g.n(), r)?;
    let target = g.n() / r + 1;
    if target > g.n() {
        return Ok(None);
    }
    let limit = if g.n() <= EXACT_MIS_CAP { u64::MAX } else { MIS_NODE_LIMIT };
    Ok(match search::independent_set_at_least(g, target, &g.all(), limit) {
        Found::Yes(set) => Some(ExtremalWitness::Ex1 { independent_set: set }),
        _ => None,
    })
}

/// The complement of an EX2 graph is `(r-2) K_{n/r}` plus one complete
/// bipartite component `K_{s, 2n/r - s}`; recognition reads that off the
/// components of the complement and then checks every edge.
pub fn recognize_ex2(g: &Graph, r: usize) -> Result<Option<ExtremalWitness>> {
    let n = g.n();
    check_divides(n, r)?;
    if r < 2 {
        return Ok(None);
    }
    let t = n / r;
    let comp = g.complement();
    let comps = comp.components();
    if comps.len() != r - 1 {
        return Ok(None);
    }
    let mut a_parts = Vec::new();
    let mut b: Option<&Vec<usize>> = None;
    for c in &comps {
        if c.len() == t && comp.is_clique(c) {
            a_parts.push(c.clone());
        } else if c.len() == 2 * t && b.is_none() {
            b = Some(c);
        } else {
            return Ok(None);
        }
    }
    let Some(b) = b else { return Ok(None) };
    if a_parts.len() != r - 2 {
        return Ok(None);
    }
    // 2-colour the B component of the complement
    let mut side = vec![u8::MAX; n];
    side[b[0]] = 0;
    let mut stack = vec![b[0]];
    while let Some(v) = stack.pop() {
        for w in comp.neighbors(v).iter() {
            if side[w] == u8::MAX {
                side[w] = 1 - side[v];
                stack.push(w);
            } else if side[w] == side[v] {
                return Ok(None);
            }
        }
    }
    let x: Vec<usize> = b.iter().copied().filter(|&v| side[v] == 0).collect();
    let y: Vec<usize> = b.iter().copied().filter(|&v| side[v] == 1).collect();
    let (b0, b1) = if x.len() < y.len() || (x.len() == y.len() && x[0] < y[0]) { (x, y) } else { (y, x) };
    if b0.len() % 2 == 0 || b0.len() > t {
        return Ok(None);
    }
    let w = ExtremalWitness::Ex2 { a_parts, b0, b1 };
    Ok(verify_witness(g, r, &w).is_ok().then_some(w))
}

/// Checks that the witness really describes the graph.
pub fn verify_witness(g: &Graph, r: usize, w: &ExtremalWitness) -> Check {
    let n = g.n();
    if r == 0 || n % r != 0 {
        return Err(Violation::new("divisibility", format!("r = {r} does not divide n = {n}")));
    }
    let t = n / r;
    match w {
        ExtremalWitness::Ex1 { independent_set } => {
            if independent_set.len() != t + 1 {
                return Err(Violation::new("size", format!("{} vertices, expected {}", independent_set.len(), t + 1)));
            }
            let set = VertexSet::from_iter(n, independent_set.iter().copied().filter(|&v| v < n));
            if set.len() != t + 1 {
                return Err(Violation::new("vertex range", "repeated or out-of-range vertex"));
            }
            if !g.is_independent(independent_set) {
                return Err(Violation::new("independence", "the set spans an edge"));
            }
            Ok(())
        }
        ExtremalWitness::Ex2 { a_parts, b0, b1 } => {
            if r < 2 || a_parts.len() != r - 2 {
                return Err(Violation::new("part count", format!("{} A-parts for r = {r}", a_parts.len())));
            }
            if a_parts.iter().any(|p| p.len() != t) {
                return Err(Violation::new("part size", format!("every A-part must have {t} vertices")));
            }
            if b0.len() % 2 == 0 || b0.len() + b1.len() != 2 * t {
                return Err(Violation::new("B parity", format!("|B_0| = {}, |B_1| = {}", b0.len(), b1.len())));
            }
            let all: Vec<usize> = a_parts.iter().flatten().chain(b0).chain(b1).copied().collect();
            let cover = VertexSet::from_iter(n, all.iter().copied().filter(|&v| v < n));
            if all.len() != n || cover.len() != n {
                return Err(Violation::new("partition", "parts do not partition the vertex set"));
            }
            let expect = ex2_graph(n, a_parts, b0, b1);
            if let Some((u, v)) = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .find(|&(u, v)| expect.has_edge(u, v) != g.has_edge(u, v))
            {
                return Err(Violation::new("edge pattern", format!("pair ({u}, {v}) differs from the family")));
            }
            Ok(())
        }
    }
}

// ====================================================================
// Coloring-side obstructions
// ====================================================================

/// Subgraph that blocks an equitable `k`-coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Obstruction {
    /// `K_{k+1}`.
    Clique { vertices: Vec<usize> },
    /// `K_{m, 2k-m}` with `m` odd.
    Biclique { left: Vec<usize>, right: Vec<usize> },
}

/// `K_{k+1}` when `m` is `None`, otherwise `K_{m, 2k-m}`.
pub fn build_obstruction(k: usize, m: Option<usize>) -> Result<Graph> {
    match m {
        None => Ok(Graph::complete(k + 1)),
        Some(m) if m % 2 == 1 && m <= k => Ok(Graph::complete_bipartite(m, 2 * k - m)),
        Some(m) => Err(Error::InvalidArgument(format!("m = {m} must be odd and at most k = {k}"))),
    }
}

pub fn verify_obstruction(g: &Graph, k: usize, o: &Obstruction) -> Check {
    let n = g.n();
    match o {
        Obstruction::Clique { vertices } => {
            if vertices.len() != k + 1 || VertexSet::from_iter(n, vertices.iter().copied().filter(|&v| v < n)).len() != k + 1 {
                return Err(Violation::new("size", format!("need {} distinct vertices", k + 1)));
            }
            if !g.is_clique(vertices) {
                return Err(Violation::new("clique", "missing edge"));
            }
            Ok(())
        }
        Obstruction::Biclique { left, right } => {
            let m = left.len();
            if m % 2 == 0 || m > k || left.len() + right.len() != 2 * k {
                return Err(Violation::new("shape", format!("K_{{{m},{}}} for k = {k}", right.len())));
            }
            let both = VertexSet::from_iter(n, left.iter().chain(right).copied().filter(|&v| v < n));
            if both.len() != 2 * k {
                return Err(Violation::new("disjointness", "sides overlap or leave the graph"));
            }
            if left.iter().any(|&u| right.iter().any(|&v| !g.has_edge(u, v))) {
                return Err(Violation::new("biclique", "missing cross edge"));
            }
            Ok(())
        }
    }
}

/// Direct search for `K_{k+1}` or an odd `K_{m, 2k-m}` subgraph.
pub fn find_obstruction(g: &Graph, k: usize, node_limit: u64) -> Option<Obstruction> {
    if let Found::Yes(vertices) = search::clique_at_least(g, k + 1, &g.all(), node_limit) {
        return Some(Obstruction::Clique { vertices });
    }
    for m in (1..=k).step_by(2) {
        if let Some((left, right)) = find_biclique(g, m, 2 * k - m, node_limit) {
            return Some(Obstruction::Biclique { left, right });
        }
    }
    None
}

/// `a` vertices whose common neighbourhood has at least `b` vertices.
pub fn find_biclique(g: &Graph, a: usize, b: usize, node_limit: u64) -> Option<(Vec<usize>, Vec<usize>)> {
    if a + b > g.n() {
        return None;
    }
    let cand: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= b).collect();
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    biclique_rec(g, a, b, &cand, &g.all(), &mut chosen, &mut nodes, node_limit)
}

#[allow(clippy::too_many_arguments)]
fn biclique_rec(
    g: &Graph,
    a: usize,
    b: usize,
    cand: &[usize],
    common: &VertexSet,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    limit: u64,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if chosen.len() == a {
        // a common neighbourhood never meets the set itself
        let right: Vec<usize> = common.iter().take(b).collect();
        return (right.len() == b).then(|| (chosen.clone(), right));
    }
    *nodes += 1;
    if *nodes > limit {
        return None;
    }
    for (i, &v) in cand.iter().enumerate() {
        if cand.len() - i < a - chosen.len() {
            break;
        }
        let next = common.intersection(g.neighbors(v));
        if next.len() < b {
            continue;
        }
        chosen.push(v);
        if let Some(res) = biclique_rec(g, a, b, &cand[i + 1..], &next, chosen, nodes, limit) {
            return Some(res);
        }
        chosen.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ex2_9_3_1() {
        let g = build_ex2(9, 3, 1).unwrap();
        // A_1 = {0,1,2} is independent and joined to everything else
        assert!(g.is_independent(&[0, 1, 2]));
        assert!(!g.has_edge(3, 4));
        assert!(g.is_clique(&[4, 5, 6, 7, 8]));
        assert_eq!(g.degree(0), 6);
        assert_eq!(g.degree(3), 3);
        assert_eq!(g.degree(4), 7);
        match recognize_extremal(&g, 3).unwrap() {
            Some(ExtremalWitness::Ex2 { a_parts, b0, b1 }) => {
                assert_eq!(a_parts, vec![vec![0, 1, 2]]);
                assert_eq!(b0, vec![3]);
                assert_eq!(b1, vec![4, 5, 6, 7, 8]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ex2_r2_is_two_cliques() {
        let g = build_ex2(6, 2, 3).unwrap();
        assert_eq!(g, Graph::complete(3).disjoint_union(&Graph::complete(3)));
        assert!(matches!(recognize_ex2(&g, 2).unwrap(), Some(ExtremalWitness::Ex2 { .. })));
    }

    #[test]
    fn ex1_recognition() {
        let g = Graph::cycle(9);
        match recognize_extremal(&g, 3).unwrap() {
            Some(ExtremalWitness::Ex1 { independent_set }) => {
                assert_eq!(independent_set.len(), 4);
                assert!(g.is_independent(&independent_set));
            }
            other => panic!("{other:?}"),
        }
        let k = build_ex1_like(4, 2).unwrap();
        assert_eq!(k, Graph::complete_bipartite(3, 1));
    }

    #[test]
    fn ex2_argument_checks() {
        assert!(build_ex2(9, 3, 2).is_err());
        assert!(build_ex2(9, 3, 5).is_err());
        assert!(build_ex2(10, 3, 1).is_err());
    }

    #[test]
    fn obstructions() {
        let k4 = build_obstruction(3, None).unwrap();
        let o = find_obstruction(&k4, 3, u64::MAX).unwrap();
        assert!(verify_obstruction(&k4, 3, &o).is_ok());
        let k33 = build_obstruction(3, Some(3)).unwrap();
        match find_obstruction(&k33, 3, u64::MAX).unwrap() {
            Obstruction::Biclique { left, right } => {
                assert_eq!(left.len(), 3);
                assert_eq!(right.len(), 3);
            }
            other => panic!("{other:?}"),
        }
        assert!(find_obstruction(&Graph::cycle(6), 3, u64::MAX).is_none());
        assert!(build_obstruction(4, Some(2)).is_err());
    }
}
