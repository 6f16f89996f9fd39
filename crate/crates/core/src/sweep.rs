//! Exhaustive small-order sweeps over labeled graphs and isomorphism
//! classes.

use crate::decider::{decide_equitable, verify_certificate, Answer, DecideOptions, Witness};
use crate::enumerate::{connected_graphs, labeled_count, labeled_graph};
use crate::graph::{ore_edge_bound, Graph};
use crate::oracle::{equitable_coloring_exact, kr_factor_exact};
use crate::par;
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::time::Instant;

/// Largest order for labeled sweeps.
pub const LABELED_CAP: usize = 7;
/// Largest order for the connected canonical sweep.
pub const CONNECTED_CAP: usize = 8;
const EXAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Factor oracle on the complement against the coloring oracle.
    Equivalence,
    /// Decider against the coloring oracle for every `k`.
    Agreement,
    /// `d(x)+d(y) <= 2k+1` on every edge gives an equitable `(k+1)`-coloring.
    Kk2008,
    /// Under `d(x)+d(y) <= 2k`, every negative answer carries a subgraph
    /// witness.
    Dichotomy,
    /// Connected graphs with `Delta <= k`: negative exactly for `K_{k+1}`
    /// and, for odd `k`, `K_{k,k}`.
    Clw,
}

impl FromStr for Mode {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        Ok(match s {
            "equivalence" => Mode::Equivalence,
            "agreement" => Mode::Agreement,
            "kk2008" => Mode::Kk2008,
            "dichotomy" => Mode::Dichotomy,
            "clw" => Mode::Clw,
            other => return Err(crate::Error::InvalidArgument(format!("unknown sweep mode {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub graphs: u64,
    pub instances: u64,
    pub no_instances: u64,
    pub witnesses: u64,
    pub anomalies: u64,
    pub examples: Vec<String>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.graphs += other.graphs;
        self.instances += other.instances;
        self.no_instances += other.no_instances;
        self.witnesses += other.witnesses;
        self.anomalies += other.anomalies;
        self.examples.extend(other.examples);
        self.examples.sort();
        self.examples.truncate(EXAMPLES);
        self
    }

    fn anomaly(&mut self, what: String) {
        self.anomalies += 1;
        if self.examples.len() < EXAMPLES {
            self.examples.push(what);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub mode: Mode,
    pub n_max: usize,
    pub per_order: Vec<(usize, Tally)>,
    pub total: Tally,
    pub wall_ms: u64,
    pub threads: usize,
}

fn edges_label(g: &Graph) -> String {
    format!("n={} edges={:?}", g.n(), g.edges().collect::<Vec<_>>())
}

/// Runs one mode on a single graph.
pub fn check_graph(mode: Mode, g: &Graph, opts: &DecideOptions, t: &mut Tally) {
    let n = g.n();
    t.graphs += 1;
    match mode {
        Mode::Equivalence => {
            for k in (1..=n).filter(|k| n % k == 0) {
                t.instances += 1;
                let f = kr_factor_exact(&g.complement(), n / k).map(|x| x.is_some());
                let c = equitable_coloring_exact(g, k).map(|x| x.is_some());
                match (f, c) {
                    (Ok(a), Ok(b)) if a == b => t.no_instances += !a as u64,
                    (f, c) => t.anomaly(format!("{} k={k}: factor {f:?} coloring {c:?}", edges_label(g))),
                }
            }
        }
        Mode::Agreement => {
            for k in 1..=n {
                t.instances += 1;
                let truth = equitable_coloring_exact(g, k).map(|x| x.is_some());
                match (decide_equitable(g, k, opts), truth) {
                    (Ok(c), Ok(b)) => {
                        let agree = matches!((c.answer, b), (Answer::Yes, true) | (Answer::No, false));
                        if !agree || verify_certificate(g, &c).is_err() {
                            t.anomaly(format!("{} k={k}: decider {:?} oracle {b}", edges_label(g), c.answer));
                        }
                        if !b {
                            t.no_instances += 1;
                            t.witnesses += c.witness.is_some() as u64;
                        }
                    }
                    (c, b) => t.anomaly(format!("{} k={k}: {:?} / {b:?}", edges_label(g), c.err())),
                }
            }
        }
        Mode::Kk2008 => {
            let worst = ore_edge_bound(g, 0).worst_edge.map_or(0, |(_, _, s)| s);
            let k0 = worst.saturating_sub(1).div_ceil(2);
            for k in k0..n {
                t.instances += 1;
                match decide_equitable(g, k + 1, opts) {
                    Ok(c) if c.answer == Answer::Yes && c.verified => {}
                    Ok(c) => {
                        t.no_instances += (c.answer == Answer::No) as u64;
                        t.anomaly(format!("{} k+1={}: {:?}", edges_label(g), k + 1, c.answer));
                    }
                    Err(e) => t.anomaly(format!("{} k+1={}: {e}", edges_label(g), k + 1)),
                }
            }
        }
        Mode::Dichotomy => {
            for k in 3..=n {
                if !ore_edge_bound(g, k).holds {
                    continue;
                }
                t.instances += 1;
                match decide_equitable(g, k, opts) {
                    Ok(c) if c.answer == Answer::Yes => {}
                    Ok(c) if c.answer == Answer::No => {
                        t.no_instances += 1;
                        if matches!(c.witness, Some(Witness::Subgraph(_))) && verify_certificate(g, &c).is_ok() {
                            t.witnesses += 1;
                        } else {
                            t.anomaly(format!("{} k={k}: negative without a subgraph witness", edges_label(g)));
                        }
                    }
                    Ok(c) => t.anomaly(format!("{} k={k}: {:?}", edges_label(g), c.answer)),
                    Err(e) => t.anomaly(format!("{} k={k}: {e}", edges_label(g))),
                }
            }
        }
        Mode::Clw => {
            let delta = g.max_degree();
            for k in delta.max(3)..=n {
                t.instances += 1;
                let expected_no = is_clw_exception(g, k);
                match decide_equitable(g, k, opts) {
                    Ok(c) if c.answer != Answer::Unresolved => {
                        let no = c.answer == Answer::No;
                        t.no_instances += no as u64;
                        t.witnesses += c.witness.is_some() as u64;
                        if no != expected_no {
                            t.anomaly(format!("{} k={k}: answer {:?}, exception {expected_no}", edges_label(g), c.answer));
                        }
                    }
                    Ok(c) => t.anomaly(format!("{} k={k}: {:?}", edges_label(g), c.answer)),
                    Err(e) => t.anomaly(format!("{} k={k}: {e}", edges_label(g))),
                }
            }
        }
    }
}

/// `G = K_{k+1}`, or `k` odd and `G = K_{k,k}`.
pub fn is_clw_exception(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n == k + 1 && g.edge_count() == n * (n - 1) / 2 {
        return true;
    }
    if k % 2 == 1 && n == 2 * k && g.edge_count() == k * k && (0..n).all(|v| g.degree(v) == k) {
        let comps = g.complement().components();
        return comps.len() == 2 && comps.iter().all(|c| c.len() == k);
    }
    false
}

/// Labeled sweep over every graph on `1..=n_max` vertices.
pub fn sweep_labeled(mode: Mode, n_max: usize, opts: &DecideOptions, parallel: bool) -> crate::Result<SweepReport> {
    if n_max > LABELED_CAP {
        return Err(crate::Error::TooLarge { n: n_max, cap: LABELED_CAP });
    }
    let start = Instant::now();
    let mut per_order = Vec::new();
    let mut total = Tally::default();
    for n in 1..=n_max {
        let step = |mut t: Tally, mask: u64| {
            check_graph(mode, &labeled_graph(n, mask), opts, &mut t);
            t
        };
        let t = if parallel {
            par::fold_range(0..labeled_count(n), Tally::default, step, Tally::merge)
        } else {
            par::fold_range_seq(0..labeled_count(n), Tally::default, step)
        };
        total = total.merge(t.clone());
        per_order.push((n, t));
    }
    Ok(SweepReport { mode, n_max, per_order, total, wall_ms: start.elapsed().as_millis() as u64, threads: par::threads() })
}

/// Sweep over connected graphs up to isomorphism.
pub fn sweep_connected(mode: Mode, n_max: usize, opts: &DecideOptions, parallel: bool) -> crate::Result<SweepReport> {
    if n_max > CONNECTED_CAP {
        return Err(crate::Error::TooLarge { n: n_max, cap: CONNECTED_CAP });
    }
    let start = Instant::now();
    let graphs = connected_graphs(n_max);
    let mut per_order = Vec::new();
    let mut total = Tally::default();
    for n in 1..=n_max {
        let level: Vec<&Graph> = graphs.iter().filter(|g| g.n() == n).collect();
        let run = |g: &&Graph| {
            let mut t = Tally::default();
            check_graph(mode, g, opts, &mut t);
            t
        };
        let parts: Vec<Tally> = if parallel { par::map(&level, run) } else { level.iter().map(run).collect() };
        let t = parts.into_iter().fold(Tally::default(), Tally::merge);
        total = total.merge(t.clone());
        per_order.push((n, t));
    }
    Ok(SweepReport { mode, n_max, per_order, total, wall_ms: start.elapsed().as_millis() as u64, threads: par::threads() })
}
