//! Top-level decisions for equitable `k`-colorings and `K_r`-factors, each
//! returned with a certificate that is checked before it leaves.

use crate::absorber::{absorbing_precondition, absorption_pipeline};
use crate::cover::{Check, Coloring, Tiling, Violation};
use crate::error::{Error, Result};
use crate::extremal::{
    find_obstruction, recognize_ex2, recognize_extremal, verify_obstruction, verify_witness, ExtremalWitness, Obstruction,
};
use crate::graph::{ore_edge_bound, Graph, OreEdgeBound};
use crate::io::graph_hash;
use crate::matching::maximum_matching;
use crate::oracle::{equitable_coloring_exact, kr_factor_exact_with, OracleOptions};
use crate::partition::{peel_partition, refine_to_good, ConstantsConfig, RefineOutcome};
use crate::tiler::{tile_extremal, TileOutcome};
use serde::{Deserialize, Serialize};
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct DecideOptions {
    /// Orders up to which the exact oracle is tried first.
    pub exact_cap: usize,
    /// Orders up to which the oracle is tried after the pipeline fails.
    pub fallback_cap: usize,
    /// Overrides the built-in ladder of constant sets.
    pub constants: Option<ConstantsConfig>,
    pub seed: u64,
    pub oracle_nodes: u64,
    pub timings: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            exact_cap: 24,
            fallback_cap: 40,
            constants: None,
            seed: 0,
            oracle_nodes: 20_000_000,
            timings: false,
        }
    }
}

impl DecideOptions {
    fn ladder(&self, n: usize, r: usize) -> Vec<(&'static str, ConstantsConfig)> {
        match &self.constants {
            Some(c) => vec![("custom", c.clone())],
            None => vec![("default", ConstantsConfig::default()), ("desk", ConstantsConfig::desk(n, r))],
        }
    }

    fn oracle(&self) -> OracleOptions {
        OracleOptions { twin_reduction: true, memo: true, node_limit: Some(self.oracle_nodes) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    EquitableColoring,
    KrFactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Pipeline,
    Oracle,
    Recognizer,
}

/// Negative evidence: an extremal structure on the factor side or a
/// blocking subgraph on the coloring side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Extremal(ExtremalWitness),
    Subgraph(Obstruction),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    Colorable { coloring: Coloring },
    Factorable { tiling: Tiling },
    /// The blocking structure is in the `witness` field.
    Obstructed {},
    /// An answer settled by exhaustive search; positive answers found by
    /// the oracle are reported as `Colorable` or `Factorable`.
    Exact { answer: bool, coloring: Option<Coloring>, tiling: Option<Tiling> },
    Unresolved { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub total_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionCertificate {
    pub schema: u32,
    pub problem: Problem,
    /// `k` for colorings, `r` for factors.
    pub parameter: usize,
    pub n: usize,
    pub graph_hash: String,
    pub answer: Answer,
    pub certificate: Certificate,
    pub witness: Option<Witness>,
    pub provenance: Provenance,
    pub verified: bool,
    pub route: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ore_edge_bound: Option<OreEdgeBound>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl DecisionCertificate {
    pub fn tiling(&self) -> Option<&Tiling> {
        match &self.certificate {
            Certificate::Factorable { tiling } => Some(tiling),
            Certificate::Exact { tiling, .. } => tiling.as_ref(),
            _ => None,
        }
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match &self.certificate {
            Certificate::Colorable { coloring } => Some(coloring),
            Certificate::Exact { coloring, .. } => coloring.as_ref(),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialise")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Internal verdict before the certificate envelope is attached.
struct Verdict {
    answer: Answer,
    certificate: Certificate,
    witness: Option<Witness>,
    provenance: Provenance,
}

impl Verdict {
    fn factor(t: Tiling, provenance: Provenance) -> Self {
        Verdict { answer: Answer::Yes, certificate: Certificate::Factorable { tiling: t }, witness: None, provenance }
    }

    fn obstructed(w: Witness, provenance: Provenance) -> Self {
        Verdict { answer: Answer::No, certificate: Certificate::Obstructed {}, witness: Some(w), provenance }
    }

    fn exact_no(provenance: Provenance) -> Self {
        Verdict {
            answer: Answer::No,
            certificate: Certificate::Exact { answer: false, coloring: None, tiling: None },
            witness: None,
            provenance,
        }
    }

    fn unresolved(reason: String) -> Self {
        Verdict {
            answer: Answer::Unresolved,
            certificate: Certificate::Unresolved { reason },
            witness: None,
            provenance: Provenance::Pipeline,
        }
    }
}

// ====================================================================
// Padding and lifting
// ====================================================================

/// `G` plus a disjoint `K_q` with `0 <= q < k` and `k | n + q`.
pub fn pad_to_divisible(g: &Graph, k: usize) -> (Graph, usize) {
    let q = (k - g.n() % k) % k;
    if q == 0 {
        (g.clone(), 0)
    } else {
        (g.disjoint_union(&Graph::complete(q)), q)
    }
}

/// Turns a `K_{(n+q)/k}`-factor of the padded complement into an equitable
/// `k`-coloring of `g` by dropping the padding vertices.
pub fn lift_coloring(g: &Graph, tiling: &Tiling, q: usize, k: usize) -> Result<Coloring> {
    let n = g.n();
    if tiling.cliques.len() != k || tiling.cliques.iter().flatten().count() != n + q {
        return Err(Error::Internal(format!("tiling does not cover {} vertices with {k} cliques", n + q)));
    }
    let classes = tiling.cliques.iter().map(|c| c.iter().copied().filter(|&v| v < n).collect()).collect();
    let col = Coloring::new(k, classes);
    col.verify_equitable(g).map_err(|v| Error::Internal(format!("lifted coloring fails: {v}")))?;
    Ok(col)
}

// ====================================================================
// K_r-factors
// ====================================================================

pub fn decide_kr_factor(g: &Graph, r: usize, opts: &DecideOptions) -> Result<DecisionCertificate> {
    let start = Instant::now();
    let mut route = Vec::new();
    let v = kr_verdict(g, r, opts, &mut route)?;
    finish(g, Problem::KrFactor, r, v, route, None, opts, start)
}

fn kr_verdict(g: &Graph, r: usize, opts: &DecideOptions, route: &mut Vec<String>) -> Result<Verdict> {
    let n = g.n();
    if r == 0 || n % r != 0 {
        return Err(Error::InvalidArgument(format!("r = {r} must divide n = {n}")));
    }
    if r == 1 || n == 0 {
        route.push("trivial".into());
        return Ok(Verdict::factor(Tiling::new(r, (0..n).map(|v| vec![v]).collect()), Provenance::Pipeline));
    }
    if r == n {
        route.push("single-clique".into());
        if g.is_clique(&(0..n).collect::<Vec<_>>()) {
            return Ok(Verdict::factor(Tiling::new(r, vec![(0..n).collect()]), Provenance::Pipeline));
        }
        let (u, w) = g.complement().edges().next().expect("a non-edge exists");
        return Ok(Verdict::obstructed(
            Witness::Extremal(ExtremalWitness::Ex1 { independent_set: vec![u, w] }),
            Provenance::Recognizer,
        ));
    }
    if n <= opts.exact_cap {
        route.push("oracle".into());
        if let Some(v) = oracle_verdict(g, r, opts, route)? {
            return Ok(v);
        }
    }
    if r == 2 {
        route.push("blossom".into());
        let m = maximum_matching(g);
        if m.is_perfect() {
            return Ok(Verdict::factor(Tiling::new(2, m.edges().into_iter().map(|(a, b)| vec![a, b]).collect()), Provenance::Pipeline));
        }
        if let Some(w) = recognize_extremal(g, 2)? {
            route.push("recognizer".into());
            return Ok(Verdict::obstructed(Witness::Extremal(w), Provenance::Recognizer));
        }
        return Ok(Verdict::exact_no(Provenance::Pipeline));
    }

    let sub = |h: &Graph, t: usize| -> Result<Option<Tiling>> {
        let mut inner = Vec::new();
        let v = kr_verdict(h, t, opts, &mut inner)?;
        Ok(match v.certificate {
            Certificate::Factorable { tiling } | Certificate::Exact { tiling: Some(tiling), .. } => {
                tiling.verify_factor(h).is_ok().then_some(tiling)
            }
            _ => None,
        })
    };
    for (name, cfg) in opts.ladder(n, r) {
        let (p, s) = peel_partition(g, r, &cfg)?;
        route.push(format!("peel[{name}] s={s}"));
        if s == 0 {
            continue;
        }
        let (outcome, _) = refine_to_good(g, &p, &cfg)?;
        let gp = match outcome {
            RefineOutcome::Ex1(w) => {
                if verify_witness(g, r, &w).is_ok() {
                    route.push("refine: ex1".into());
                    return Ok(Verdict::obstructed(Witness::Extremal(w), Provenance::Pipeline));
                }
                route.push("refine: ex1 witness rejected".into());
                continue;
            }
            RefineOutcome::Good(gp) => {
                route.push("refine: good".into());
                gp
            }
            RefineOutcome::Unvalidated(gp, viol) => {
                route.push(format!("refine: unvalidated ({} clauses)", viol.len()));
                gp
            }
        };
        let (out, trace) = tile_extremal(g, &gp, &sub, opts.seed)?;
        match out {
            TileOutcome::Factor(t) => {
                if t.verify_factor(g).is_ok() {
                    match trace.repair {
                        Some(kind) => route.push(format!("tile: factor after {kind} repair")),
                        None => route.push("tile: factor".into()),
                    }
                    return Ok(Verdict::factor(t, Provenance::Pipeline));
                }
                route.push("tile: factor rejected".into());
            }
            TileOutcome::Ex2Signal => {
                route.push("tile: ex2 signal".into());
                if let Some(w) = recognize_ex2(g, r)? {
                    return Ok(Verdict::obstructed(Witness::Extremal(w), Provenance::Recognizer));
                }
            }
            TileOutcome::Failed(why) => route.push(format!("tile: {why}")),
        }
    }
    let cfg = opts.constants.clone().unwrap_or_default();
    if absorbing_precondition(g, r, &cfg)? {
        route.push("absorption".into());
        if let (Some(t), _) = absorption_pipeline(g, r, &cfg, opts.seed)? {
            return Ok(Verdict::factor(t, Provenance::Pipeline));
        }
    }
    route.push("recognizer".into());
    if let Some(w) = recognize_extremal(g, r)? {
        return Ok(Verdict::obstructed(Witness::Extremal(w), Provenance::Recognizer));
    }
    if n > opts.exact_cap && n <= opts.fallback_cap {
        route.push("oracle fallback".into());
        if let Some(v) = oracle_verdict(g, r, opts, route)? {
            return Ok(v);
        }
    }
    Ok(Verdict::unresolved(format!("no method settled n = {n}, r = {r}")))
}

/// `None` when the search budget runs out.
fn oracle_verdict(g: &Graph, r: usize, opts: &DecideOptions, route: &mut Vec<String>) -> Result<Option<Verdict>> {
    match kr_factor_exact_with(g, r, &opts.oracle()) {
        Ok(Some(t)) => Ok(Some(Verdict::factor(t, Provenance::Oracle))),
        Ok(None) => {
            if let Some(w) = recognize_extremal(g, r)? {
                return Ok(Some(Verdict::obstructed(Witness::Extremal(w), Provenance::Recognizer)));
            }
            Ok(Some(Verdict::exact_no(Provenance::Oracle)))
        }
        Err(Error::BudgetExhausted) => {
            route.push("oracle budget exhausted".into());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

// ====================================================================
// Equitable colorings
// ====================================================================

const OBSTRUCTION_NODES: u64 = 1_000_000;

pub fn decide_equitable(g: &Graph, k: usize, opts: &DecideOptions) -> Result<DecisionCertificate> {
    let start = Instant::now();
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
    }
    let ore = ore_edge_bound(g, k);
    let mut route = Vec::new();
    let (padded, q) = pad_to_divisible(g, k);
    if q > 0 {
        route.push(format!("pad q={q}"));
    }
    let h = padded.complement();
    let r = (n + q) / k;
    let fv = kr_verdict(&h, r, opts, &mut route)?;
    let verdict = match fv.answer {
        Answer::Yes => {
            let t = match &fv.certificate {
                Certificate::Factorable { tiling } | Certificate::Exact { tiling: Some(tiling), .. } => tiling,
                _ => return Err(Error::Internal("positive verdict without a tiling".into())),
            };
            let coloring = lift_coloring(g, t, q, k)?;
            Verdict { answer: Answer::Yes, certificate: Certificate::Colorable { coloring }, witness: None, provenance: fv.provenance }
        }
        Answer::No => {
            let translated = match &fv.witness {
                Some(Witness::Extremal(w)) => translate(w, n),
                _ => None,
            };
            match translated.filter(|o| obstruction_holds(g, k, o, ore.holds)) {
                Some(o) => {
                    route.push("translate".into());
                    Verdict::obstructed(Witness::Subgraph(o), fv.provenance)
                }
                None => match search_obstruction(g, k, ore.holds) {
                    Some(o) => {
                        route.push("subgraph search".into());
                        Verdict::obstructed(Witness::Subgraph(o), Provenance::Recognizer)
                    }
                    None => Verdict::exact_no(fv.provenance),
                },
            }
        }
        Answer::Unresolved => match search_obstruction(g, k, ore.holds) {
            Some(o) => {
                route.push("subgraph search".into());
                Verdict::obstructed(Witness::Subgraph(o), Provenance::Recognizer)
            }
            None => fv,
        },
    };
    finish(g, Problem::EquitableColoring, k, verdict, route, Some(ore), opts, start)
}

/// Complement-side extremal structure to a subgraph of `G`: an independent
/// set of the complement is a clique of `G`, and `B_0, B_1` span a
/// biclique.
fn translate(w: &ExtremalWitness, n: usize) -> Option<Obstruction> {
    match w {
        ExtremalWitness::Ex1 { independent_set } => Some(Obstruction::Clique { vertices: independent_set.clone() }),
        ExtremalWitness::Ex2 { b0, b1, .. } => {
            if b0.iter().chain(b1).any(|&v| v >= n) {
                return None;
            }
            let (left, right) = if b0.len() <= b1.len() { (b0, b1) } else { (b1, b0) };
            Some(Obstruction::Biclique { left: left.clone(), right: right.clone() })
        }
    }
}

/// A clique always blocks; a biclique only under the edge bound.
fn obstruction_holds(g: &Graph, k: usize, o: &Obstruction, ore: bool) -> bool {
    verify_obstruction(g, k, o).is_ok() && (ore || matches!(o, Obstruction::Clique { .. }))
}

fn search_obstruction(g: &Graph, k: usize, ore: bool) -> Option<Obstruction> {
    if ore {
        return find_obstruction(g, k, OBSTRUCTION_NODES).filter(|o| obstruction_holds(g, k, o, ore));
    }
    match crate::search::clique_at_least(g, k + 1, &g.all(), OBSTRUCTION_NODES) {
        crate::search::Found::Yes(vertices) => Some(Obstruction::Clique { vertices }),
        _ => None,
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    g: &Graph,
    problem: Problem,
    parameter: usize,
    v: Verdict,
    route: Vec<String>,
    ore: Option<OreEdgeBound>,
    opts: &DecideOptions,
    start: Instant,
) -> Result<DecisionCertificate> {
    let mut cert = DecisionCertificate {
        schema: SCHEMA_VERSION,
        problem,
        parameter,
        n: g.n(),
        graph_hash: graph_hash(g),
        answer: v.answer,
        certificate: v.certificate,
        witness: v.witness,
        provenance: v.provenance,
        verified: false,
        route,
        ore_edge_bound: ore,
        timings: None,
    };
    if let Err(viol) = check(g, &cert, false) {
        return Err(Error::Internal(format!("certificate failed its own check: {viol}")));
    }
    cert.verified = cert.answer != Answer::Unresolved;
    if opts.timings {
        cert.timings = Some(Timings { total_us: start.elapsed().as_micros() as u64 });
    }
    Ok(cert)
}

// ====================================================================
// Verification
// ====================================================================

/// Orders up to which a bare negative answer is re-derived by search.
pub const RECHECK_CAP: usize = 24;

/// Independent re-check of a certificate against `g`. Bare negative answers
/// are re-derived with a different exhaustive search.
pub fn verify_certificate(g: &Graph, cert: &DecisionCertificate) -> Check {
    check(g, cert, true)
}

fn check(g: &Graph, cert: &DecisionCertificate, recheck_exact: bool) -> Check {
    let n = g.n();
    if cert.n != n || cert.graph_hash != graph_hash(g) {
        return Err(Violation::new("graph", "certificate was issued for a different graph"));
    }
    let p = cert.parameter;
    let shape_ok = match cert.problem {
        Problem::EquitableColoring => p >= 1 && p <= n,
        Problem::KrFactor => p >= 1 && n % p == 0,
    };
    if !shape_ok {
        return Err(Violation::new("parameter", format!("parameter {p} invalid for n = {n}")));
    }
    let expect = match &cert.certificate {
        Certificate::Colorable { .. } | Certificate::Factorable { .. } => Answer::Yes,
        Certificate::Obstructed {} => Answer::No,
        Certificate::Exact { answer: true, .. } => Answer::Yes,
        Certificate::Exact { answer: false, .. } => Answer::No,
        Certificate::Unresolved { .. } => Answer::Unresolved,
    };
    if cert.answer != expect {
        return Err(Violation::new("answer", format!("answer {:?} contradicts the certificate kind", cert.answer)));
    }
    match (&cert.certificate, cert.problem) {
        (Certificate::Colorable { coloring }, Problem::EquitableColoring) => check_coloring(g, p, coloring),
        (Certificate::Factorable { tiling }, Problem::KrFactor) => check_tiling(g, p, tiling),
        (Certificate::Exact { answer: true, coloring: Some(c), .. }, Problem::EquitableColoring) => check_coloring(g, p, c),
        (Certificate::Exact { answer: true, tiling: Some(t), .. }, Problem::KrFactor) => check_tiling(g, p, t),
        (Certificate::Exact { answer: true, .. }, _) => Err(Violation::new("certificate", "positive answer without its object")),
        (Certificate::Exact { answer: false, .. }, _) => {
            if recheck_exact {
                recheck_negative(g, cert.problem, p)
            } else {
                Ok(())
            }
        }
        (Certificate::Obstructed {}, problem) => match (&cert.witness, problem) {
            (Some(Witness::Subgraph(o)), Problem::EquitableColoring) => {
                verify_obstruction(g, p, o)?;
                if matches!(o, Obstruction::Biclique { .. }) && !ore_edge_bound(g, p).holds {
                    return Err(Violation::new("ore bound", "a biclique only blocks under d(x)+d(y) <= 2k"));
                }
                Ok(())
            }
            (Some(Witness::Extremal(w)), Problem::KrFactor) => verify_witness(g, p, w),
            _ => Err(Violation::new("witness", "missing or of the wrong type")),
        },
        (Certificate::Unresolved { .. }, _) => Ok(()),
        _ => Err(Violation::new("certificate", "object does not match the problem")),
    }
}

fn check_coloring(g: &Graph, k: usize, c: &Coloring) -> Check {
    if c.k != k {
        return Err(Violation::new("class count", format!("coloring uses k = {}, expected {k}", c.k)));
    }
    c.verify_equitable(g)
}

fn check_tiling(g: &Graph, r: usize, t: &Tiling) -> Check {
    if t.cliques.iter().any(|c| c.len() != r) {
        return Err(Violation::new("clique size", format!("expected cliques of size {r}")));
    }
    t.verify_factor(g)
}

fn recheck_negative(g: &Graph, problem: Problem, p: usize) -> Check {
    let n = g.n();
    let found = match problem {
        Problem::KrFactor if p == 2 => maximum_matching(g).is_perfect(),
        _ if n > RECHECK_CAP => {
            return Err(Violation::new("exact", format!("negative answer not re-checkable above n = {RECHECK_CAP}")));
        }
        Problem::EquitableColoring => equitable_coloring_exact(g, p).map_err(|e| Violation::new("exact", e.to_string()))?.is_some(),
        Problem::KrFactor => {
            let opts = OracleOptions { twin_reduction: false, memo: true, node_limit: None };
            kr_factor_exact_with(g, p, &opts).map_err(|e| Violation::new("exact", e.to_string()))?.is_some()
        }
    };
    if found {
        return Err(Violation::new("exact", "an independent search found a solution"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_ex2;

    fn opts() -> DecideOptions {
        DecideOptions::default()
    }

    #[test]
    fn ex2_small_is_obstructed() {
        let g = build_ex2(9, 3, 1).unwrap();
        let c = decide_kr_factor(&g, 3, &opts()).unwrap();
        assert_eq!(c.answer, Answer::No);
        assert!(matches!(c.witness, Some(Witness::Extremal(ExtremalWitness::Ex2 { .. }))));
        assert!(verify_certificate(&g, &c).is_ok());
    }

    #[test]
    fn k9_has_triangle_factor() {
        let c = decide_kr_factor(&Graph::complete(9), 3, &opts()).unwrap();
        assert_eq!(c.answer, Answer::Yes);
        assert_eq!(c.tiling().unwrap().cliques.len(), 3);
    }

    #[test]
    fn k4_blocks_three_colors() {
        let g = Graph::complete(4);
        let c = decide_equitable(&g, 3, &opts()).unwrap();
        assert_eq!(c.answer, Answer::No);
        assert!(matches!(&c.witness, Some(Witness::Subgraph(Obstruction::Clique { vertices })) if vertices.len() == 4));
        assert!(verify_certificate(&g, &c).is_ok());
    }

    #[test]
    fn k33_blocks_three_colors() {
        let g = Graph::complete_bipartite(3, 3);
        let c = decide_equitable(&g, 3, &opts()).unwrap();
        assert_eq!(c.answer, Answer::No);
        match &c.witness {
            Some(Witness::Subgraph(Obstruction::Biclique { left, right })) => assert_eq!((left.len(), right.len()), (3, 3)),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn c5_three_colors() {
        let g = Graph::cycle(5);
        let c = decide_equitable(&g, 3, &opts()).unwrap();
        let mut sizes: Vec<usize> = c.coloring().unwrap().classes.iter().map(|x| x.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2]);
    }

    #[test]
    fn padding() {
        let (h, q) = pad_to_divisible(&Graph::new(7), 3);
        assert_eq!((h.n(), q), (9, 2));
        let (h, q) = pad_to_divisible(&Graph::cycle(6), 3);
        assert_eq!((h, q), (Graph::cycle(6), 0));
        let (h, _) = pad_to_divisible(&Graph::complete(4), 3);
        assert!(equitable_coloring_exact(&h, 3).unwrap().is_none());
    }

    #[test]
    fn lift_two_k2() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let t = Tiling::new(2, vec![vec![0, 2], vec![1, 3]]);
        let c = lift_coloring(&g, &t, 0, 2).unwrap();
        assert_eq!(c.classes, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn tampered_certificate_rejected() {
        let g = Graph::cycle(6);
        let mut c = decide_equitable(&g, 3, &opts()).unwrap();
        assert!(verify_certificate(&g, &c).is_ok());
        if let Some(Coloring { classes, .. }) = match &mut c.certificate {
            Certificate::Exact { coloring, .. } => coloring.as_mut(),
            Certificate::Colorable { coloring } => Some(coloring),
            _ => None,
        } {
            classes[0] = vec![0, 1];
            classes[1] = vec![2, 4];
            classes[2] = vec![3, 5];
        }
        assert_eq!(verify_certificate(&g, &c).unwrap_err().clause, "class independence");
        let back = DecisionCertificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}
