//! Link analysis over sparse web graphs: HITS, degree-weighted accelerated
//! HITS (plain and positive), and PageRank as instrumented power-method
//! solvers, plus the back-button graph rewrite, synthetic graph generation,
//! vector comparison metrics and a benchmark harness.

pub mod bench;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod ranking;
pub mod synth;
pub mod weights;

pub use error::{Error, Result};
pub use graph::{compute_stats, GraphStats, WebGraph};
pub use ranking::{
    count_costs, run_accelerated_hits, run_accelerated_hits_positive, run_hits, run_pagerank, run_algorithm, AlgorithmKind,
    ConvergenceTrace, HitsResult, PageRankResult, RankOutput, RankVector, SolverConfig, StartVector, Termination,
};
pub use weights::{compute_weights, WeightDiagonals};
