//! Tilings, layered factors and colorings, with their checkers.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A failed certificate clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

impl Violation {
    pub fn new(clause: &str, detail: impl Into<String>) -> Self {
        Violation { clause: clause.to_string(), detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.detail)
    }
}

pub type Check = Result<(), Violation>;

/// Vertex-disjoint copies of `K_r`, each stored as a sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tiling {
    pub r: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl Tiling {
    pub fn new(r: usize, mut cliques: Vec<Vec<usize>>) -> Self {
        for c in cliques.iter_mut() {
            c.sort_unstable();
        }
        cliques.sort();
        Tiling { r, cliques }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn covered(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.cliques.iter().flatten().copied())
    }

    pub fn extend(&mut self, other: Tiling) {
        self.cliques.extend(other.cliques);
        self.cliques.sort();
    }

    /// Cliques of size `r`, pairwise disjoint, each a clique of `g`.
    pub fn verify_partial(&self, g: &Graph) -> Check {
        let mut seen = VertexSet::new(g.n());
        for c in &self.cliques {
            if c.len() != self.r {
                return Err(Violation::new("clique size", format!("{c:?} has {} vertices, expected {}", c.len(), self.r)));
            }
            for &v in c {
                if v >= g.n() {
                    return Err(Violation::new("vertex range", format!("vertex {v} in {c:?}")));
                }
                if !seen.insert(v) {
                    return Err(Violation::new("disjointness", format!("vertex {v} covered twice")));
                }
            }
            if !g.is_clique(c) {
                return Err(Violation::new("clique", format!("{c:?} is not a clique")));
            }
        }
        Ok(())
    }

    /// A `K_r`-factor of `g`: a partial tiling covering every vertex.
    pub fn verify_factor(&self, g: &Graph) -> Check {
        self.verify_partial(g)?;
        let covered = self.covered(g.n()).len();
        if covered != g.n() {
            return Err(Violation::new("coverage", format!("{covered} of {} vertices covered", g.n())));
        }
        Ok(())
    }
}

impl Serialize for Tiling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.cliques.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tiling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let cliques = Vec::<Vec<usize>>::deserialize(d)?;
        let r = cliques.first().map_or(0, |c| c.len());
        Ok(Tiling::new(r, cliques))
    }
}

/// Vertex-disjoint cliques of sizes `1..=r` covering every vertex.
/// `layers[s]` holds the copies of `K_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredFactor {
    pub r: usize,
    pub layers: Vec<Vec<Vec<usize>>>,
}

impl LayeredFactor {
    pub fn from_cliques(r: usize, cliques: Vec<Vec<usize>>) -> Self {
        let mut layers = vec![Vec::new(); r + 1];
        for mut c in cliques {
            c.sort_unstable();
            layers[c.len()].push(c);
        }
        for l in layers.iter_mut() {
            l.sort();
        }
        LayeredFactor { r, layers }
    }

    /// `counts()[s]` is the number of copies of `K_s`.
    pub fn counts(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len()).collect()
    }

    /// Counts from the top layer down, for lexicographic comparison.
    pub fn profile(&self) -> Vec<usize> {
        self.layers.iter().skip(1).rev().map(|l| l.len()).collect()
    }

    pub fn cliques(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.layers.iter().flatten()
    }

    pub fn verify(&self, g: &Graph) -> Check {
        let mut seen = VertexSet::new(g.n());
        for (s, layer) in self.layers.iter().enumerate() {
            for c in layer {
                if c.len() != s || s == 0 {
                    return Err(Violation::new("clique size", format!("{c:?} filed under layer {s}")));
                }
                for &v in c {
                    if v >= g.n() || !seen.insert(v) {
                        return Err(Violation::new("disjointness", format!("vertex {v}")));
                    }
                }
                if !g.is_clique(c) {
                    return Err(Violation::new("clique", format!("{c:?} is not a clique")));
                }
            }
        }
        if seen.len() != g.n() {
            return Err(Violation::new("coverage", format!("{} of {} vertices covered", seen.len(), g.n())));
        }
        Ok(())
    }
}

/// A proper coloring given by its color classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub k: usize,
    pub classes: Vec<Vec<usize>>,
}

impl Coloring {
    pub fn new(k: usize, mut classes: Vec<Vec<usize>>) -> Self {
        for c in classes.iter_mut() {
            c.sort_unstable();
        }
        classes.sort_by(|a, b| (b.len(), a).cmp(&(a.len(), b)));
        Coloring { k, classes }
    }

    pub fn color_of(&self, n: usize) -> Vec<usize> {
        let mut col = vec![usize::MAX; n];
        for (i, c) in self.classes.iter().enumerate() {
            for &v in c {
                if v < n {
                    col[v] = i;
                }
            }
        }
        col
    }

    /// Partition into `k` independent classes whose sizes differ by at most one.
    pub fn verify_equitable(&self, g: &Graph) -> Check {
        if self.classes.len() != self.k {
            return Err(Violation::new("class count", format!("{} classes, expected {}", self.classes.len(), self.k)));
        }
        let mut seen = VertexSet::new(g.n());
        for c in &self.classes {
            for &v in c {
                if v >= g.n() || !seen.insert(v) {
                    return Err(Violation::new("partition", format!("vertex {v} repeated or out of range")));
                }
            }
        }
        if seen.len() != g.n() {
            return Err(Violation::new("partition", format!("{} of {} vertices colored", seen.len(), g.n())));
        }
        for c in &self.classes {
            if !g.is_independent(c) {
                return Err(Violation::new("class independence", format!("class {c:?} spans an edge")));
            }
        }
        let lo = self.classes.iter().map(|c| c.len()).min().unwrap_or(0);
        let hi = self.classes.iter().map(|c| c.len()).max().unwrap_or(0);
        if hi > lo + 1 {
            return Err(Violation::new("equitability", format!("class sizes range over {lo}..={hi}")));
        }
        Ok(())
    }
}
