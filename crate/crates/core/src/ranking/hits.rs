use std::time::Instant;

use super::{
    l1_diff, normalize_in_place, ConvergenceTrace, HitsResult, IterationRecord, OpCounter, RankVector,
    SolverConfig, Termination,
};
use crate::error::{Error, Result};
use crate::graph::WebGraph;
use crate::weights::WeightDiagonals;

/// Query-independent HITS.
///
/// Each iteration computes `a = h L` (sum of hub scores over in-neighbors),
/// then `h = a L^T` (sum of authority scores over out-neighbors), and
/// normalizes `h`. The residual is measured on `h`; `a` is normalized once
/// after the loop.
pub fn run_hits(g: &WebGraph, cfg: &SolverConfig) -> Result<HitsResult> {
    coupled_iteration(g, None, cfg)
}

/// HITS with each hub score weighted by `ch_j` before it flows to an
/// authority, and each authority score weighted by `ca_j` before it flows
/// back: `a = h Ch L`, `h = a Ca L^T`.
pub fn run_accelerated_hits(g: &WebGraph, w: &WeightDiagonals, cfg: &SolverConfig) -> Result<HitsResult> {
    if w.len() != g.node_count() {
        return Err(Error::LengthMismatch { left: w.len(), right: g.node_count() });
    }
    coupled_iteration(g, Some(w), cfg)
}

fn coupled_iteration(g: &WebGraph, weights: Option<&WeightDiagonals>, cfg: &SolverConfig) -> Result<HitsResult> {
    cfg.validate()?;
    let n = g.node_count();
    let mut h = cfg.initial_vector(n)?;
    let mut a = vec![0.0; n];
    let mut h_next = vec![0.0; n];
    // Weighted copies of the vector being swept; unused for plain HITS.
    let mut scaled = vec![0.0; if weights.is_some() { n } else { 0 }];

    let mut ops = OpCounter::default();
    let mut records = Vec::new();
    let mut termination = Termination::MaxIterations;
    let start = Instant::now();

    for iter in 1..=cfg.max_iter {
        let source: &[f64] = match weights {
            Some(w) => {
                scaled.iter_mut().zip(&h).zip(&w.ch).for_each(|((s, x), c)| *s = x * c);
                ops.mul(n);
                &scaled
            }
            None => &h,
        };
        for (i, ai) in a.iter_mut().enumerate() {
            *ai = g.in_neighbors(i).iter().map(|&j| source[j]).sum();
        }
        ops.add(g.edge_count());

        let source: &[f64] = match weights {
            Some(w) => {
                scaled.iter_mut().zip(&a).zip(&w.ca).for_each(|((s, x), c)| *s = x * c);
                ops.mul(n);
                &scaled
            }
            None => &a,
        };
        for (i, hi) in h_next.iter_mut().enumerate() {
            *hi = g.out_neighbors(i).iter().map(|&j| source[j]).sum();
        }
        ops.add(g.edge_count());

        if !normalize_in_place(&mut h_next) {
            return Err(Error::Degenerate);
        }
        ops.mul(n);

        let residual = l1_diff(&h_next, &h);
        std::mem::swap(&mut h, &mut h_next);
        records.push(IterationRecord {
            iter,
            residual,
            mults: ops.mults,
            adds: ops.adds,
            elapsed: start.elapsed(),
        });
        if residual <= cfg.epsilon {
            termination = Termination::Converged;
            break;
        }
    }

    if !normalize_in_place(&mut a) {
        return Err(Error::Degenerate);
    }
    Ok(HitsResult {
        authority: RankVector::normalized(a),
        hub: RankVector::normalized(h),
        trace: ConvergenceTrace { records, termination },
    })
}
