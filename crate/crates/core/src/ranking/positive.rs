use std::time::Instant;

use super::{
    l1_diff, normalize_in_place, ConvergenceTrace, HitsResult, IterationRecord, OpCounter, RankVector,
    SolverConfig, Termination,
};
use crate::error::{Error, Result};
use crate::graph::WebGraph;
use crate::weights::WeightDiagonals;

/// Accelerated HITS on the positive authority matrix
/// `X^ = zeta X + (1 - zeta)/N e e^T` with `X = Ca L^T Ch L`.
///
/// `a X` is applied matrix-free as two sparse sweeps, `((a Ca) L^T) Ch L`.
/// Because `X^` is not stochastic the authority vector is renormalized every
/// step; the residual is measured on successive authority vectors. After
/// convergence the hub vector is recovered as `h = a Ca L^T`, normalized.
///
/// `X^` is strictly positive, so the result is strictly positive and does
/// not depend on the (positive) starting vector. When `a Ca L^T` vanishes
/// (no page both linked and linking), the hub vector is reported as uniform.
pub fn run_accelerated_hits_positive(
    g: &WebGraph,
    w: &WeightDiagonals,
    cfg: &SolverConfig,
) -> Result<HitsResult> {
    cfg.validate()?;
    let n = g.node_count();
    if w.len() != n {
        return Err(Error::LengthMismatch { left: w.len(), right: n });
    }
    let zeta = cfg.zeta;

    let mut a = cfg.initial_vector(n)?;
    let mut a_next = vec![0.0; n];
    let mut scaled = vec![0.0; n];
    let mut hub = vec![0.0; n];

    let mut ops = OpCounter::default();
    let mut records = Vec::new();
    let mut termination = Termination::MaxIterations;
    let start = Instant::now();

    for iter in 1..=cfg.max_iter {
        hub_from_authority(g, w, &a, &mut scaled, &mut hub);
        ops.mul(n);
        ops.add(g.edge_count());

        scaled.iter_mut().zip(&hub).zip(&w.ch).for_each(|((s, x), c)| *s = x * c);
        ops.mul(n);
        for (i, t) in a_next.iter_mut().enumerate() {
            *t = g.in_neighbors(i).iter().map(|&j| scaled[j]).sum();
        }
        ops.add(g.edge_count());

        let teleport = (1.0 - zeta) * a.iter().sum::<f64>() / n as f64;
        a_next.iter_mut().for_each(|x| *x = zeta * *x + teleport);
        ops.mul(n);
        ops.add(n);

        if !normalize_in_place(&mut a_next) {
            // Unreachable for finite weights: every entry gets a positive teleport share.
            return Err(Error::Degenerate);
        }
        ops.mul(n);

        let residual = l1_diff(&a_next, &a);
        std::mem::swap(&mut a, &mut a_next);
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

    hub_from_authority(g, w, &a, &mut scaled, &mut hub);
    if !normalize_in_place(&mut hub) {
        hub.fill(1.0 / n as f64);
    }

    Ok(HitsResult {
        authority: RankVector::normalized(a),
        hub: RankVector::normalized(hub),
        trace: ConvergenceTrace { records, termination },
    })
}

/// `hub = (a Ca) L^T`, using `scratch` for `a Ca`.
fn hub_from_authority(g: &WebGraph, w: &WeightDiagonals, a: &[f64], scratch: &mut [f64], hub: &mut [f64]) {
    scratch.iter_mut().zip(a).zip(&w.ca).for_each(|((s, x), c)| *s = x * c);
    for (i, h) in hub.iter_mut().enumerate() {
        *h = g.out_neighbors(i).iter().map(|&j| scratch[j]).sum();
    }
}
