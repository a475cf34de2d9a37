use std::time::Instant;

use super::{l1_diff, ConvergenceTrace, IterationRecord, OpCounter, PageRankResult, RankVector, SolverConfig, Termination};
use crate::error::Result;
use crate::graph::WebGraph;

/// PageRank with uniform teleportation and dangling mass redistributed uniformly:
///
/// ```text
/// p' = alpha p Do^-1 L + (alpha p d + 1 - alpha) e / N
/// ```
///
/// Dangling rows of `Do^-1 L` are zero; their mass enters only through the
/// `p d` term. The update preserves `sum(p) = 1`, so iterates are never
/// renormalized.
pub fn run_pagerank(g: &WebGraph, cfg: &SolverConfig) -> Result<PageRankResult> {
    cfg.validate()?;
    let n = g.node_count();
    let nnz = g.edge_count();
    let alpha = cfg.alpha;
    let dangling: Vec<usize> = g.dangling_nodes();
    let nondangling = n - dangling.len();
    let share: Vec<f64> = (0..n)
        .map(|i| match g.outdeg(i) {
            0 => 0.0,
            d => alpha / d as f64,
        })
        .collect();

    let mut p = cfg.initial_vector(n)?;
    let mut next = vec![0.0; n];
    let mut ops = OpCounter::default();
    let mut records = Vec::new();
    let mut termination = Termination::MaxIterations;
    let start = Instant::now();

    for iter in 1..=cfg.max_iter {
        // alpha p Do^-1 L, gathered over in-neighbors.
        for (j, nj) in next.iter_mut().enumerate() {
            *nj = g.in_neighbors(j).iter().map(|&i| p[i] * share[i]).sum();
        }
        ops.mul(n);
        ops.add(nnz);

        let dangling_mass = alpha * dangling.iter().map(|&i| p[i]).sum::<f64>();
        let teleport = (dangling_mass + 1.0 - alpha) / n as f64;
        next.iter_mut().for_each(|x| *x += teleport);
        if dangling.is_empty() {
            ops.add(n);
        } else {
            ops.mul(nondangling);
            ops.add(n + nondangling);
        }

        let residual = l1_diff(&next, &p);
        std::mem::swap(&mut p, &mut next);
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

    Ok(PageRankResult {
        scores: RankVector::normalized(p),
        trace: ConvergenceTrace { records, termination },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::{count_costs, AlgorithmKind};

    fn graph(n: usize, edges: &[(usize, usize)]) -> WebGraph {
        WebGraph::from_edges(n, edges.iter().copied()).unwrap().0
    }

    #[test]
    fn two_cycle_is_uniform() {
        let r = run_pagerank(&graph(2, &[(0, 1), (1, 0)]), &SolverConfig::default()).unwrap();
        assert_eq!(r.scores.values(), &[0.5, 0.5]);
        assert!(r.trace.converged());
    }

    #[test]
    fn single_node_keeps_all_mass() {
        let r = run_pagerank(&graph(1, &[]), &SolverConfig::default()).unwrap();
        assert!((r.scores[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn back_button_g1_matches_linear_system() {
        // p0 = (1-a)/3 + a (p1 + p2) with p1 + p2 = 1 - p0, and p1 = p2 by symmetry.
        let alpha: f64 = 0.85;
        let p0 = ((1.0 - alpha) / 3.0 + alpha) / (1.0 + alpha);
        let p1 = (1.0 - p0) / 2.0;
        let g = graph(3, &[(1, 0), (2, 0)]).back_button();
        let r = run_pagerank(&g, &SolverConfig::default()).unwrap();
        for (got, want) in r.scores.iter().zip([p0, p1, p1]) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        assert!((p0 - 0.486486).abs() < 1e-6);
    }

    #[test]
    fn counters_follow_dangling_rule() {
        for g in [graph(3, &[(1, 0), (2, 0)]), graph(3, &[(1, 0), (2, 0)]).back_button(), graph(4, &[])] {
            let r = run_pagerank(&g, &SolverConfig::default()).unwrap();
            let cost = count_costs(AlgorithmKind::PageRank, &g);
            for rec in &r.trace.records {
                assert_eq!((rec.mults, rec.adds), (cost.mults * rec.iter as u64, cost.adds * rec.iter as u64));
            }
        }
    }
}
