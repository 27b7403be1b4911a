//! Weighted incidence matrices, the normality and subnormality checks on
//! them, closed-form certificate solvers for the decorated families, and
//! the strict-subnormality witnesses that order pairs of families.
//!
//! A weighted incidence matrix assigns a positive weight to every
//! incident (vertex, edge) pair. It is *normal at `alpha`* when every
//! vertex's weights sum to 1 and every edge's weights multiply to
//! `alpha`; *consistent* when the alternating ratio product around the
//! unique cycle is 1; and *subnormal at `alpha`* when the sums are at
//! most 1 and the products at least `alpha`. A consistently normal matrix
//! pins the host's spectral radius to exactly `alpha^(-1/k)`; a strictly
//! subnormal one pins it strictly below. The solvers reduce each family's
//! weight system to a single scalar residual in `alpha` and bisect.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{build_family, Family, FamilySpec, LabeledHypergraph};
use crate::hypergraph::UniformHypergraph;

/// Bisection tolerance on `alpha`.
pub const DEFAULT_ALPHA_TOL: f64 = 1e-13;

/// Tolerance at which solved certificates must self-check.
pub const CERT_CHECK_TOL: f64 = 1e-10;

const BISECT_LO: f64 = 1e-9;
const BISECT_HI: f64 = 1.0 - 1e-9;

/// Positive weights on the incidences of a host hypergraph.
///
/// Entries for non-incident pairs are identically zero; incidences start
/// unset (NaN) and must all be assigned before the matrix is well-formed.
#[derive(Debug, Clone)]
pub struct WeightedIncidenceMatrix {
    host: UniformHypergraph,
    /// `w[e][i]` weights vertex `host.edge(e)[i]` in edge `e`.
    w: Vec<Vec<f64>>,
}

impl WeightedIncidenceMatrix {
    /// A matrix over `host` with every incidence unset.
    pub fn new(host: &UniformHypergraph) -> Self {
        let w = host.edges().iter().map(|e| vec![f64::NAN; e.len()]).collect();
        WeightedIncidenceMatrix { host: host.clone(), w }
    }

    pub fn host(&self) -> &UniformHypergraph {
        &self.host
    }

    fn slot(&self, v: usize, e: usize) -> Option<usize> {
        self.host.edge(e).iter().position(|&x| x == v)
    }

    /// Sets the weight of incidence `(v, e)`; errors when `v` is not in `e`.
    pub fn set(&mut self, v: usize, e: usize, weight: f64) -> Result<()> {
        if e >= self.host.num_edges() {
            return Err(Error::InvalidInput(format!("edge index {e} out of range")));
        }
        match self.slot(v, e) {
            Some(i) => {
                self.w[e][i] = weight;
                Ok(())
            }
            None => Err(Error::InvalidInput(format!(
                "vertex {v} is not incident with edge {e}"
            ))),
        }
    }

    /// The weight of `(v, e)`: 0 when `v` is not in `e`, NaN when unset.
    pub fn get(&self, v: usize, e: usize) -> f64 {
        match self.slot(v, e) {
            Some(i) => self.w[e][i],
            None => 0.0,
        }
    }

    /// Sum of the weights at `v` over its incident edges.
    pub fn vertex_sum(&self, v: usize) -> f64 {
        self.host
            .incident_edges(v)
            .iter()
            .map(|&e| self.get(v, e))
            .sum()
    }

    /// Product of the weights inside edge `e`.
    pub fn edge_product(&self, e: usize) -> f64 {
        self.w[e].iter().product()
    }

    /// True when every incidence carries a finite positive weight.
    pub fn is_well_formed(&self) -> bool {
        self.w
            .iter()
            .all(|row| row.iter().all(|&x| x.is_finite() && x > 0.0))
    }

    /// All incidence weights as `(vertex, edge, weight)`, sorted by
    /// `(vertex, edge)`.
    pub fn weights_sorted(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for v in 0..self.host.n() {
            for &e in self.host.incident_edges(v) {
                out.push((v, e, self.get(v, e)));
            }
        }
        out
    }
}

/// True iff all vertex sums equal 1 and all edge products equal `alpha`,
/// each within `tol`. An ill-formed matrix never passes.
pub fn check_alpha_normal(b: &WeightedIncidenceMatrix, alpha: f64, tol: f64) -> bool {
    if !b.is_well_formed() {
        return false;
    }
    let g = b.host();
    (0..g.n()).all(|v| (b.vertex_sum(v) - 1.0).abs() <= tol)
        && (0..g.num_edges()).all(|e| (b.edge_product(e) - alpha).abs() <= tol)
}

/// Checks the alternating ratio product around the host's unique cycle.
///
/// Walking the cycle `v0 e1 v1 e2 ... vl (= v0)`, the product of
/// `B(v_i, e_i) / B(v_{i-1}, e_i)` must be 1 within `tol`. Acyclic hosts
/// pass vacuously; hosts with two or more independent cycles are not
/// supported. The two-edge cycle counts as a valid cycle here.
pub fn check_consistency(b: &WeightedIncidenceMatrix, tol: f64) -> Result<bool> {
    let g = b.host();
    let r = g.cyclomatic_number();
    if r <= 0 {
        return Ok(true);
    }
    if r > 1 {
        return Err(Error::Unsupported(format!(
            "consistency check requires at most one cycle, got cyclomatic number {r}"
        )));
    }
    let cycle = g.unique_cycle()?;
    let l = cycle.edges.len();
    let mut product = 1.0;
    for i in 0..l {
        let e = cycle.edges[i];
        let tail = cycle.corners[i];
        let head = cycle.corners[(i + 1) % l];
        product *= b.get(head, e) / b.get(tail, e);
    }
    Ok((product - 1.0).abs() <= tol)
}

/// Outcome of the subnormality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubnormalVerdict {
    NotSubnormal,
    Subnormal,
    StrictlySubnormal,
}

impl SubnormalVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            SubnormalVerdict::NotSubnormal => "not-subnormal",
            SubnormalVerdict::Subnormal => "subnormal",
            SubnormalVerdict::StrictlySubnormal => "strictly-subnormal",
        }
    }
}

impl fmt::Display for SubnormalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies the matrix as subnormal at `alpha`: all vertex sums at most
/// `1 + tol` and all edge products at least `alpha - tol`; strictly so
/// when additionally some sum falls below `1 - tol` or some product rises
/// above `alpha + tol`.
pub fn check_alpha_subnormal(
    b: &WeightedIncidenceMatrix,
    alpha: f64,
    tol: f64,
) -> SubnormalVerdict {
    if !b.is_well_formed() {
        return SubnormalVerdict::NotSubnormal;
    }
    let g = b.host();
    let mut strict = false;
    for v in 0..g.n() {
        let sum = b.vertex_sum(v);
        if sum > 1.0 + tol {
            return SubnormalVerdict::NotSubnormal;
        }
        if sum < 1.0 - tol {
            strict = true;
        }
    }
    for e in 0..g.num_edges() {
        let product = b.edge_product(e);
        if product < alpha - tol {
            return SubnormalVerdict::NotSubnormal;
        }
        if product > alpha + tol {
            strict = true;
        }
    }
    if strict {
        SubnormalVerdict::StrictlySubnormal
    } else {
        SubnormalVerdict::Subnormal
    }
}

/// The spectral radius certified by a normal weighting: `alpha^(-1/k)`.
///
/// Accepts `0 < alpha <= 1` (the boundary value 1 arises for a single
/// edge) and `k >= 2`.
pub fn rho_from_alpha(alpha: f64, k: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidInput(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if k < 2 {
        return Err(Error::InvalidInput(format!("uniformity k must be at least 2, got {k}")));
    }
    Ok(alpha.powf(-1.0 / k as f64))
}

/// Families with a closed certificate system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertFamily {
    A,
    D,
    L,
    I,
}

impl CertFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertFamily::A => "A",
            CertFamily::D => "D",
            CertFamily::L => "L",
            CertFamily::I => "I",
        }
    }

    /// The corresponding construction tag.
    pub fn family(&self) -> Family {
        match self {
            CertFamily::A => Family::A,
            CertFamily::D => Family::D,
            CertFamily::L => Family::L,
            CertFamily::I => Family::I,
        }
    }

    fn min_m(&self) -> usize {
        match self {
            CertFamily::A => 3,
            CertFamily::D | CertFamily::L => 2,
            CertFamily::I => 1,
        }
    }
}

impl fmt::Display for CertFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CertFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(CertFamily::A),
            "D" => Ok(CertFamily::D),
            "L" => Ok(CertFamily::L),
            "I" => Ok(CertFamily::I),
            other => Err(Error::InvalidInput(format!(
                "no certificate system for family {other:?} (expected A, D, L, or I)"
            ))),
        }
    }
}

/// A solved, self-checked certificate: the weighting is normal at `alpha`
/// and consistent, so the family's spectral radius is exactly `rho`.
#[derive(Debug, Clone)]
pub struct CertificateSolution {
    pub family: CertFamily,
    pub m: usize,
    pub k: usize,
    pub alpha: f64,
    pub rho: f64,
    /// The solved unknowns, keyed by their conventional names.
    pub params: BTreeMap<String, f64>,
    pub matrix: WeightedIncidenceMatrix,
}

/// Serde mirror fixing the JSON field order.
#[derive(Serialize)]
struct CertificateSolutionJson<'a> {
    family: &'a str,
    m: usize,
    k: usize,
    alpha: f64,
    rho: f64,
    params: &'a BTreeMap<String, f64>,
    weights: Vec<(usize, usize, f64)>,
}

impl CertificateSolution {
    pub fn to_json(&self) -> String {
        let mirror = CertificateSolutionJson {
            family: self.family.as_str(),
            m: self.m,
            k: self.k,
            alpha: self.alpha,
            rho: self.rho,
            params: &self.params,
            weights: self.matrix.weights_sorted(),
        };
        serde_json::to_string_pretty(&mirror).expect("certificate serializes")
    }
}

/// Ordered pairs with a strict-subnormality witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessPair {
    /// `B` weighted at `A`'s alpha.
    BUnderA,
    /// `A` weighted at `D`'s alpha.
    AUnderD,
    /// `I` weighted at `L`'s alpha.
    IUnderL,
    /// `J` weighted at `I`'s alpha.
    JUnderI,
}

impl WitnessPair {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessPair::BUnderA => "B-under-A",
            WitnessPair::AUnderD => "A-under-D",
            WitnessPair::IUnderL => "I-under-L",
            WitnessPair::JUnderI => "J-under-I",
        }
    }
}

impl fmt::Display for WitnessPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WitnessPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "B-UNDER-A" => Ok(WitnessPair::BUnderA),
            "A-UNDER-D" => Ok(WitnessPair::AUnderD),
            "I-UNDER-L" => Ok(WitnessPair::IUnderL),
            "J-UNDER-I" => Ok(WitnessPair::JUnderI),
            other => Err(Error::InvalidInput(format!(
                "unknown witness pair {other:?} (expected B-under-A, A-under-D, I-under-L, or J-under-I)"
            ))),
        }
    }
}

/// A strict-subnormality witness: the dominated family's graph weighted
/// at the comparator family's solved `alpha`.
///
/// When `guaranteed` the slack is provably positive and the construction
/// errors if it is not; outside the proven range (`A-under-D` below
/// `m = 9`) the outcome is recorded without assertion.
#[derive(Debug, Clone)]
pub struct SubnormalWitness {
    pub pair: WitnessPair,
    pub m: usize,
    pub k: usize,
    /// The comparator family's alpha.
    pub alpha: f64,
    /// The comparator family's certified radius `alpha^(-1/k)`.
    pub rho: f64,
    /// Strict margin: excess of the off-system edge product over `alpha`,
    /// or the deficit of the off-system vertex sum below 1.
    pub slack: f64,
    /// True when the parameters lie in the proven-positive range.
    pub guaranteed: bool,
    pub verdict: SubnormalVerdict,
    /// Derived entries, keyed by their conventional names.
    pub params: BTreeMap<String, f64>,
    pub matrix: WeightedIncidenceMatrix,
}

#[derive(Serialize)]
struct SubnormalWitnessJson<'a> {
    pair: &'a str,
    m: usize,
    k: usize,
    alpha: f64,
    rho: f64,
    slack: f64,
    guaranteed: bool,
    verdict: &'a str,
    params: &'a BTreeMap<String, f64>,
    weights: Vec<(usize, usize, f64)>,
}

impl SubnormalWitness {
    pub fn to_json(&self) -> String {
        let mirror = SubnormalWitnessJson {
            pair: self.pair.as_str(),
            m: self.m,
            k: self.k,
            alpha: self.alpha,
            rho: self.rho,
            slack: self.slack,
            guaranteed: self.guaranteed,
            verdict: self.verdict.as_str(),
            params: &self.params,
            weights: self.matrix.weights_sorted(),
        };
        serde_json::to_string_pretty(&mirror).expect("witness serializes")
    }
}

/// Bisects `f` for a sign change on `(BISECT_LO, BISECT_HI)` down to an
/// interval of width `tol`.
fn bisect(f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (BISECT_LO, BISECT_HI);
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Solver(format!(
            "no sign change on ({lo:e}, {hi:e}): f(lo) = {flo:e}, f(hi) = {fhi:e}"
        )));
    }
    let lo_sign = flo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The weight every star edge carries at the hub: `alpha/(1-alpha)^(k-1)`.
fn hub_weight(alpha: f64, k: usize) -> f64 {
    alpha / (1.0 - alpha).powi(k as i32 - 1)
}

/// Shared weight-assignment routine: defaults first, then the family's
/// named overrides.
///
/// Defaults per incidence `(v, e)`: degree-1 vertices get 1; the attach
/// vertex of a pendent edge gets `alpha` (any degree); remaining
/// degree-2 vertices get `1 - alpha` on their non-pendent edges; star
/// edges (labels `g*`) get `hub_weight` at `hub_label`. Anything still
/// unset must be covered by `overrides`, which always win.
fn assemble_weights(
    lh: &LabeledHypergraph,
    alpha: f64,
    hub_label: &str,
    overrides: &[(&str, &str, f64)],
) -> Result<WeightedIncidenceMatrix> {
    let g = &lh.graph;
    let mut b = WeightedIncidenceMatrix::new(g);
    for e in 0..g.num_edges() {
        let attach = g.pendent_attach_vertex(e);
        for &v in g.edge(e) {
            let weight = if g.degree(v)? == 1 {
                1.0
            } else if attach == Some(v) {
                alpha
            } else if g.degree(v)? == 2 {
                1.0 - alpha
            } else {
                f64::NAN
            };
            b.set(v, e, weight)?;
        }
    }
    let star_edges: Vec<usize> = lh
        .edge_labels
        .iter()
        .filter(|(name, _)| name.starts_with('g'))
        .map(|(_, &e)| e)
        .collect();
    if !star_edges.is_empty() {
        let hub = lh.vertex(hub_label)?;
        for e in star_edges {
            b.set(hub, e, hub_weight(alpha, g.k()))?;
        }
    }
    for &(v_label, e_label, weight) in overrides {
        b.set(lh.vertex(v_label)?, lh.edge_index(e_label)?, weight)?;
    }
    if !b.is_well_formed() {
        return Err(Error::Solver(
            "weight assembly left an incidence unset or nonpositive".into(),
        ));
    }
    Ok(b)
}

/// Per-family closed chains: given `alpha`, derive the remaining unknowns
/// and the single leftover residual equation.
struct Chain {
    residual: f64,
    params: Vec<(&'static str, f64)>,
}

fn chain_a(alpha: f64, m: usize, k: usize) -> Chain {
    let q = (1.0 - alpha).powi(k as i32 - 2);
    let sq = q.sqrt();
    let ra = alpha.sqrt();
    // Substituting the two corner sums and the cycle-ratio equation into
    // each other collapses the inner system to a value for d0.
    let d0 = (ra * (1.0 - alpha) + alpha / sq) / ((1.0 - alpha).powf(k as f64 / 2.0) + ra);
    let y0 = 1.0 - alpha - d0;
    if y0 <= 0.0 || d0 <= 0.0 {
        return Chain { residual: 1.0, params: Vec::new() };
    }
    let x0 = alpha / (y0 * q);
    let c0 = ra * d0 / (y0 * sq);
    let residual = x0 + alpha + c0 + (m as f64 - 3.0) * hub_weight(alpha, k) - 1.0;
    Chain {
        residual,
        params: vec![("x0", x0), ("y0", y0), ("c0", c0), ("d0", d0)],
    }
}

fn chain_d(alpha: f64, m: usize, k: usize) -> Chain {
    let c1 = alpha.sqrt();
    let y2 = 1.0 - c1;
    if y2 <= 0.0 {
        return Chain { residual: 1.0, params: Vec::new() };
    }
    let x2 = alpha / (y2 * (1.0 - alpha).powi(k as i32 - 2));
    let residual = 2.0 * x2 + alpha + (m as f64 - 2.0) * hub_weight(alpha, k) - 1.0;
    Chain {
        residual,
        params: vec![("x2", x2), ("y2", y2), ("c1", c1)],
    }
}

fn chain_l(alpha: f64, m: usize, k: usize) -> Chain {
    let y4 = 0.5 * (1.0 - alpha);
    let x4 = 2.0 * alpha / (1.0 - alpha).powi(k as i32 - 1);
    // The leftover residual is the shared vertex's sum.
    let residual = 2.0 * x4 + alpha + (m as f64 - 2.0) * hub_weight(alpha, k) - 1.0;
    Chain {
        residual,
        params: vec![("x4", x4), ("y4", y4)],
    }
}

fn chain_i(alpha: f64, m: usize, k: usize) -> Chain {
    let p = (1.0 - alpha).powf(k as f64 / 2.0 - 1.0);
    let d3 = p / (1.0 + p);
    let y6 = 1.0 - d3;
    let b = alpha * (1.0 + p).powi(2) / (1.0 - alpha).powi(k as i32 - 2);
    let x6 = b * y6;
    let c3 = b * d3;
    let residual = (m as f64 - 1.0) * hub_weight(alpha, k) - (1.0 - b);
    Chain {
        residual,
        params: vec![("x6", x6), ("y6", y6), ("c3", c3), ("d3", d3), ("b", b)],
    }
}

fn chain(family: CertFamily, alpha: f64, m: usize, k: usize) -> Chain {
    match family {
        CertFamily::A => chain_a(alpha, m, k),
        CertFamily::D => chain_d(alpha, m, k),
        CertFamily::L => chain_l(alpha, m, k),
        CertFamily::I => chain_i(alpha, m, k),
    }
}

/// Builds the override list placing a family's solved parameters on its
/// cycle incidences.
fn family_overrides(
    family: CertFamily,
    p: &BTreeMap<String, f64>,
    alpha: f64,
    k: usize,
) -> Vec<(&'static str, &'static str, f64)> {
    let q = (1.0 - alpha).powi(k as i32 - 2);
    match family {
        CertFamily::A => vec![
            ("v1", "e1", p["x0"]),
            ("v2", "e1", p["y0"]),
            ("v1", "e3", p["c0"]),
            ("v2", "e2", p["d0"]),
            ("v3", "e3", alpha / (p["c0"] * q)),
            ("v3", "e2", alpha / (p["d0"] * q)),
        ],
        CertFamily::D => vec![
            ("v1", "e1", p["x2"]),
            ("v1", "e3", p["x2"]),
            ("v2", "e1", p["y2"]),
            ("v3", "e3", p["y2"]),
            ("v2", "e2", p["c1"]),
            ("v3", "e2", p["c1"]),
        ],
        CertFamily::L => vec![
            ("u1", "e1", p["x4"]),
            ("u1", "e2", p["x4"]),
            ("u2", "e1", p["y4"]),
            ("u2", "e2", p["y4"]),
        ],
        CertFamily::I => vec![
            ("u1", "e2", p["x6"]),
            ("u2", "e2", p["y6"]),
            ("u1", "e1", p["c3"]),
            ("u2", "e1", p["d3"]),
        ],
    }
}

fn star_hub_label(family: Family) -> &'static str {
    match family {
        Family::A | Family::B | Family::D => "v1",
        Family::J => "u2_1",
        _ => "u1",
    }
}

/// Solves the family's certificate system: bisects the scalar residual in
/// `alpha`, assembles the full weighting, and self-checks normality and
/// consistency before returning.
pub fn solve_certificate(family: CertFamily, m: usize, k: usize) -> Result<CertificateSolution> {
    solve_certificate_with_tol(family, m, k, DEFAULT_ALPHA_TOL)
}

/// [`solve_certificate`] with an explicit bisection tolerance on `alpha`.
pub fn solve_certificate_with_tol(
    family: CertFamily,
    m: usize,
    k: usize,
    alpha_tol: f64,
) -> Result<CertificateSolution> {
    if k < 3 {
        return Err(Error::InvalidInput(format!("certificates require k >= 3, got {k}")));
    }
    if m < family.min_m() {
        return Err(Error::InvalidInput(format!(
            "family {family} requires m >= {}, got {m}",
            family.min_m()
        )));
    }
    if !(alpha_tol > 0.0 && alpha_tol < 1e-3) {
        return Err(Error::InvalidInput(format!(
            "alpha tolerance must lie in (0, 1e-3), got {alpha_tol}"
        )));
    }
    let alpha = bisect(|a| chain(family, a, m, k).residual, alpha_tol)?;
    let solved = chain(family, alpha, m, k);
    if solved.params.is_empty() {
        return Err(Error::Solver(format!(
            "residual root at alpha = {alpha} is infeasible for family {family}"
        )));
    }
    let mut params = BTreeMap::new();
    for (name, value) in &solved.params {
        let upper_ok = if *name == "b" { *value <= 1.0 + 1e-6 } else { *value < 1.0 };
        if !(value.is_finite() && *value > 0.0 && upper_ok) {
            return Err(Error::Solver(format!(
                "parameter {name} = {value} outside (0, 1) for family {family}, m = {m}, k = {k}"
            )));
        }
        params.insert((*name).to_string(), *value);
    }
    let lh = build_family(&FamilySpec::new(family.family(), k, Some(m)))?;
    let overrides = family_overrides(family, &params, alpha, k);
    let matrix = assemble_weights(&lh, alpha, star_hub_label(family.family()), &overrides)?;
    if !check_alpha_normal(&matrix, alpha, CERT_CHECK_TOL) {
        return Err(Error::Solver(format!(
            "solved weighting for {family} (m = {m}, k = {k}) fails the normality self-check"
        )));
    }
    if !check_consistency(&matrix, CERT_CHECK_TOL)? {
        return Err(Error::Solver(format!(
            "solved weighting for {family} (m = {m}, k = {k}) fails the consistency self-check"
        )));
    }
    let rho = rho_from_alpha(alpha, k)?;
    Ok(CertificateSolution {
        family,
        m,
        k,
        alpha,
        rho,
        params,
        matrix,
    })
}

/// Builds the strict-subnormality witness for an ordered family pair: the
/// dominated family's graph weighted at the comparator's solved `alpha`.
///
/// The returned slack is the strict margin of the one off-system
/// constraint. Within the proven range a nonpositive slack or a failed
/// subnormality check is an error; for `A-under-D` with `3 <= m <= 8`
/// the outcome is recorded without assertion (`guaranteed = false`).
pub fn subnormal_witness(pair: WitnessPair, m: usize, k: usize) -> Result<SubnormalWitness> {
    subnormal_witness_with_tol(pair, m, k, DEFAULT_ALPHA_TOL)
}

/// [`subnormal_witness`] with an explicit bisection tolerance on `alpha`.
pub fn subnormal_witness_with_tol(
    pair: WitnessPair,
    m: usize,
    k: usize,
    alpha_tol: f64,
) -> Result<SubnormalWitness> {
    if k < 3 {
        return Err(Error::InvalidInput(format!("witnesses require k >= 3, got {k}")));
    }
    let min_m = match pair {
        WitnessPair::BUnderA | WitnessPair::AUnderD => 3,
        WitnessPair::IUnderL | WitnessPair::JUnderI => 2,
    };
    if m < min_m {
        return Err(Error::InvalidInput(format!(
            "witness {pair} requires m >= {min_m}, got {m}"
        )));
    }
    let guaranteed = match pair {
        WitnessPair::AUnderD => m >= 9,
        _ => true,
    };
    let (comparator, dominated) = match pair {
        WitnessPair::BUnderA => (CertFamily::A, Family::B),
        WitnessPair::AUnderD => (CertFamily::D, Family::A),
        WitnessPair::IUnderL => (CertFamily::L, Family::I),
        WitnessPair::JUnderI => (CertFamily::I, Family::J),
    };
    let base = solve_certificate_with_tol(comparator, m, k, alpha_tol)?;
    let alpha = base.alpha;
    let q = (1.0 - alpha).powi(k as i32 - 2);
    let hub_w = hub_weight(alpha, k);
    let lh = build_family(&FamilySpec::new(dominated, k, Some(m)))?;

    let mut params = BTreeMap::new();
    let overrides: Vec<(&str, &str, f64)> = match pair {
        WitnessPair::BUnderA => {
            let x1 = base.params["x0"] + alpha - hub_w;
            let y1 = base.params["y0"] + alpha;
            params.insert("x1".into(), x1);
            params.insert("y1".into(), y1);
            params.insert("c0".into(), base.params["c0"]);
            params.insert("d0".into(), base.params["d0"]);
            vec![
                ("v1", "e1", x1),
                ("v2", "e1", y1),
                ("v1", "e3", base.params["c0"]),
                ("v2", "e2", base.params["d0"]),
                ("v3", "e3", alpha / (base.params["c0"] * q)),
                ("v3", "e2", alpha / (base.params["d0"] * q)),
            ]
        }
        WitnessPair::AUnderD => {
            let c2 = (alpha / q).sqrt();
            let y3 = 1.0 - alpha - c2;
            if y3 <= 0.0 {
                return Err(Error::Solver(format!(
                    "witness {pair} infeasible at alpha = {alpha}: corner weight is nonpositive"
                )));
            }
            let x3 = alpha / (y3 * q);
            params.insert("x3".into(), x3);
            params.insert("y3".into(), y3);
            params.insert("c2".into(), c2);
            vec![
                ("v1", "e1", x3),
                ("v1", "e3", x3),
                ("v2", "e1", y3),
                ("v3", "e3", y3),
                ("v2", "e2", c2),
                ("v3", "e2", c2),
            ]
        }
        WitnessPair::IUnderL => {
            let x5 = base.params["x4"] + alpha - hub_w;
            let y5 = base.params["y4"] + alpha;
            params.insert("x5".into(), x5);
            params.insert("y5".into(), y5);
            params.insert("x4".into(), base.params["x4"]);
            params.insert("y4".into(), base.params["y4"]);
            vec![
                ("u1", "e1", x5),
                ("u2", "e1", y5),
                ("u1", "e2", base.params["x4"]),
                ("u2", "e2", base.params["y4"]),
            ]
        }
        WitnessPair::JUnderI => {
            let x7 = 1.0 - base.params["c3"];
            let y7 = 1.0 - base.params["d3"];
            let shared_interior = 1.0 - alpha - (m as f64 - 1.0) * hub_w;
            params.insert("x7".into(), x7);
            params.insert("y7".into(), y7);
            params.insert("c3".into(), base.params["c3"]);
            params.insert("d3".into(), base.params["d3"]);
            params.insert("u2_1_e2".into(), shared_interior);
            vec![
                ("u2", "e2", x7),
                ("u1", "e2", y7),
                ("u2", "e1", base.params["c3"]),
                ("u1", "e1", base.params["d3"]),
                ("u2_1", "e2", shared_interior),
            ]
        }
    };
    let matrix = assemble_weights(&lh, alpha, star_hub_label(dominated), &overrides)?;
    let slack = match pair {
        WitnessPair::BUnderA | WitnessPair::IUnderL => {
            matrix.edge_product(lh.edge_index("e1")?) - alpha
        }
        WitnessPair::AUnderD => 1.0 - matrix.vertex_sum(lh.vertex("v1")?),
        WitnessPair::JUnderI => matrix.edge_product(lh.edge_index("e2")?) - alpha,
    };
    let verdict = check_alpha_subnormal(&matrix, alpha, CERT_CHECK_TOL);
    if guaranteed {
        if slack <= 0.0 {
            return Err(Error::Solver(format!(
                "witness {pair} (m = {m}, k = {k}) produced nonpositive slack {slack}"
            )));
        }
        if verdict != SubnormalVerdict::StrictlySubnormal {
            return Err(Error::Solver(format!(
                "witness {pair} (m = {m}, k = {k}) is not strictly subnormal: {verdict}"
            )));
        }
    }
    Ok(SubnormalWitness {
        pair,
        m,
        k,
        alpha,
        rho: base.rho,
        slack,
        guaranteed,
        verdict,
        params,
        matrix,
    })
}
