#![allow(dead_code)]

use equitiler::generate::random_gnp;
use equitiler::Graph;
use proptest::prelude::*;

/// Random graphs with order in `lo..=hi` and density drawn from `0..=1`.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| random_gnp(n, p, seed).unwrap())
}

pub fn dense_graph(lo: usize, hi: usize, p_lo: f64) -> impl Strategy<Value = Graph> {
    (lo..=hi, p_lo..=1.0, any::<u64>()).prop_map(|(n, p, seed)| random_gnp(n, p, seed).unwrap())
}
