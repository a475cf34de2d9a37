//! Matrix-free power-method solvers with exact operation accounting.
//!
//! Four solvers share the same skeleton: start from `e/N` (or a given
//! vector), sweep the sparse adjacency lists, and stop once the 1-norm
//! distance between successive iterates drops to `epsilon` or the iteration
//! cap is reached.
//!
//! | solver | multiplications / iter | additions / iter |
//! |---|---|---|
//! | [`run_hits`] | `N` | `2 nnz` |
//! | [`run_accelerated_hits`] | `3N` | `2 nnz` |
//! | [`run_pagerank`], graph with dangling pages | `N + |ND|` | `nnz + N + |ND|` |
//! | [`run_pagerank`], dangling-free graph | `N` | `nnz + N` |
//! | [`run_accelerated_hits_positive`] | `4N` | `2 nnz + N` |
//!
//! The counts are abstract: a sweep over the adjacency lists is `nnz`
//! additions, elementwise scaling or normalization is `N` multiplications.
//! Sums used only to compute a normalizer are not counted.

mod export;
mod hits;
mod pagerank;
mod positive;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::time::Duration;

pub use export::{read_scores_csv, read_trace_csv, write_scores_csv, write_trace_csv};
pub use hits::{run_accelerated_hits, run_hits};
pub use pagerank::run_pagerank;
pub use positive::run_accelerated_hits_positive;

use crate::error::{Error, Result};
use crate::graph::WebGraph;
use crate::weights::compute_weights;

/// A length-`N` nonnegative score vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    values: Vec<f64>,
    normalized: bool,
}

impl RankVector {
    /// Wraps values already scaled to unit 1-norm.
    pub fn normalized(values: Vec<f64>) -> Self {
        RankVector { values, normalized: true }
    }

    /// Wraps arbitrary nonnegative values, e.g. a degree sequence.
    pub fn raw(values: Vec<f64>) -> Self {
        RankVector { values, normalized: false }
    }

    pub fn from_degrees(degrees: &[usize]) -> Self {
        Self::raw(degrees.iter().map(|&d| d as f64).collect())
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Node ids by descending score; ties broken by ascending id.
    pub fn ordering(&self) -> Vec<usize> {
        descending_order(&self.values)
    }

    pub fn top_k(&self, k: usize) -> Vec<usize> {
        let mut order = self.ordering();
        order.truncate(k);
        order
    }
}

impl Deref for RankVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

impl AsRef<[f64]> for RankVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

pub(crate) fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    idx
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum StartVector {
    /// `e/N`.
    #[default]
    Uniform,
    /// Any nonnegative vector with positive mass; scaled to unit 1-norm before use.
    Given(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub epsilon: f64,
    pub max_iter: usize,
    /// PageRank damping factor.
    pub alpha: f64,
    /// Weight of the link structure in the positive accelerated variant.
    pub zeta: f64,
    pub start: StartVector,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            epsilon: 1e-10,
            max_iter: 10_000,
            alpha: 0.85,
            zeta: 0.99,
            start: StartVector::Uniform,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidConfig(format!("alpha must lie in (0,1), got {}", self.alpha)));
        }
        if !(self.zeta > 0.0 && self.zeta < 1.0) {
            return Err(Error::InvalidConfig(format!("zeta must lie in (0,1), got {}", self.zeta)));
        }
        Ok(())
    }

    /// The starting iterate for an `n`-node graph, scaled to unit 1-norm.
    pub(crate) fn initial_vector(&self, n: usize) -> Result<Vec<f64>> {
        match &self.start {
            StartVector::Uniform => Ok(vec![1.0 / n as f64; n]),
            StartVector::Given(v) => {
                if v.len() != n {
                    return Err(Error::InvalidConfig(format!(
                        "start vector has length {}, graph has {n} nodes",
                        v.len()
                    )));
                }
                if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return Err(Error::InvalidConfig("start vector must be finite and nonnegative".into()));
                }
                let mass: f64 = v.iter().sum();
                if !mass.is_finite() || mass <= 0.0 {
                    return Err(Error::InvalidConfig("start vector has zero mass".into()));
                }
                Ok(v.iter().map(|x| x / mass).collect())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    Hits,
    AcceleratedHits,
    AcceleratedHitsPositive,
    PageRank,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 4] = [
        AlgorithmKind::Hits,
        AlgorithmKind::AcceleratedHits,
        AlgorithmKind::AcceleratedHitsPositive,
        AlgorithmKind::PageRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Hits => "hits",
            AlgorithmKind::AcceleratedHits => "ahits",
            AlgorithmKind::AcceleratedHitsPositive => "ahits-pos",
            AlgorithmKind::PageRank => "pagerank",
        }
    }

    /// Whether the solver produces an authority/hub pair.
    pub fn is_hits_family(self) -> bool {
        !matches!(self, AlgorithmKind::PageRank)
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm {s:?}")))
    }
}

/// Per-iteration operation counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CostModel {
    pub mults: u64,
    pub adds: u64,
}

/// Closed-form per-iteration cost of `algorithm` on `g`.
pub fn count_costs(algorithm: AlgorithmKind, g: &WebGraph) -> CostModel {
    let n = g.node_count() as u64;
    let nnz = g.edge_count() as u64;
    match algorithm {
        AlgorithmKind::Hits => CostModel { mults: n, adds: 2 * nnz },
        AlgorithmKind::AcceleratedHits => CostModel { mults: 3 * n, adds: 2 * nnz },
        AlgorithmKind::AcceleratedHitsPositive => CostModel { mults: 4 * n, adds: 2 * nnz + n },
        AlgorithmKind::PageRank => {
            if g.dangling_count() == 0 {
                CostModel { mults: n, adds: nnz + n }
            } else {
                let nd = g.nondangling_count() as u64;
                CostModel { mults: n + nd, adds: nnz + n + nd }
            }
        }
    }
}

/// Running multiplication/addition tallies.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct OpCounter {
    pub mults: u64,
    pub adds: u64,
}

impl OpCounter {
    #[inline]
    pub fn mul(&mut self, count: usize) {
        self.mults += count as u64;
    }

    #[inline]
    pub fn add(&mut self, count: usize) {
        self.adds += count as u64;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Converged,
    MaxIterations,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Converged => "converged",
            Termination::MaxIterations => "max_iter",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    /// 1-based iteration number.
    pub iter: usize,
    pub residual: f64,
    /// Cumulative multiplications after this iteration.
    pub mults: u64,
    /// Cumulative additions after this iteration.
    pub adds: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    pub records: Vec<IterationRecord>,
    pub termination: Termination,
}

impl ConvergenceTrace {
    /// `K`, the number of iterations run.
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    pub fn final_residual(&self) -> f64 {
        self.records.last().map_or(f64::NAN, |r| r.residual)
    }

    pub fn total_mults(&self) -> u64 {
        self.records.last().map_or(0, |r| r.mults)
    }

    pub fn total_adds(&self) -> u64 {
        self.records.last().map_or(0, |r| r.adds)
    }

    pub fn elapsed(&self) -> Duration {
        self.records.last().map_or(Duration::ZERO, |r| r.elapsed)
    }

    pub fn residuals(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.residual)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HitsResult {
    pub authority: RankVector,
    pub hub: RankVector,
    pub trace: ConvergenceTrace,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankResult {
    pub scores: RankVector,
    pub trace: ConvergenceTrace,
}

/// Output of any of the four solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum RankOutput {
    Hits(HitsResult),
    PageRank(PageRankResult),
}

impl RankOutput {
    pub fn trace(&self) -> &ConvergenceTrace {
        match self {
            RankOutput::Hits(r) => &r.trace,
            RankOutput::PageRank(r) => &r.trace,
        }
    }

    /// The authority vector, or the PageRank vector.
    pub fn primary(&self) -> &RankVector {
        match self {
            RankOutput::Hits(r) => &r.authority,
            RankOutput::PageRank(r) => &r.scores,
        }
    }

    pub fn hub(&self) -> Option<&RankVector> {
        match self {
            RankOutput::Hits(r) => Some(&r.hub),
            RankOutput::PageRank(_) => None,
        }
    }
}

/// Runs `kind` on `g`, computing the acceleration weights when needed.
pub fn run_algorithm(kind: AlgorithmKind, g: &WebGraph, cfg: &SolverConfig) -> Result<RankOutput> {
    Ok(match kind {
        AlgorithmKind::Hits => RankOutput::Hits(run_hits(g, cfg)?),
        AlgorithmKind::AcceleratedHits => RankOutput::Hits(run_accelerated_hits(g, &compute_weights(g), cfg)?),
        AlgorithmKind::AcceleratedHitsPositive => {
            RankOutput::Hits(run_accelerated_hits_positive(g, &compute_weights(g), cfg)?)
        }
        AlgorithmKind::PageRank => RankOutput::PageRank(run_pagerank(g, cfg)?),
    })
}

pub(crate) fn l1_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Scales `v` to unit 1-norm, returning `false` when it carries no usable mass.
pub(crate) fn normalize_in_place(v: &mut [f64]) -> bool {
    let mass: f64 = v.iter().sum();
    if !mass.is_finite() || mass <= 0.0 {
        return false;
    }
    let inv = 1.0 / mass;
    v.iter_mut().for_each(|x| *x *= inv);
    true
}
