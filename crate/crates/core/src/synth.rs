//! Seeded synthetic web graphs with power-law degree tails.
//!
//! Directed configuration-style construction:
//!
//! 1. pick `round(dangling_fraction * n)` pages that get no outlinks;
//! 2. give every other page an out-degree target drawn from a discrete power
//!    law (exponent `out_exponent`, support `1..=n-1`), rescaled so the
//!    targets add up to `round(target_avg_degree * n)`;
//! 3. give every page a power-law in-weight (exponent `in_exponent`) and wire
//!    each out-stub to a target drawn proportionally to in-weight;
//! 4. redraw a stub's target when it would form a self-loop or repeat an
//!    edge, giving up on that stub after a fixed number of attempts.

use std::collections::HashSet;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::WebGraph;

const REDRAWS_PER_STUB: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub n: usize,
    pub target_avg_degree: f64,
    pub in_exponent: f64,
    pub out_exponent: f64,
    pub dangling_fraction: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            n: 10_000,
            target_avg_degree: 8.0,
            in_exponent: 2.1,
            out_exponent: 2.7,
            dangling_fraction: 0.8,
            seed: 0,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InfeasibleSpec(msg));
        if self.n < 2 {
            return bad(format!("need at least 2 nodes, got {}", self.n));
        }
        if !(self.target_avg_degree > 0.0 && self.target_avg_degree.is_finite()) {
            return bad(format!("average degree must be positive, got {}", self.target_avg_degree));
        }
        for (name, e) in [("in", self.in_exponent), ("out", self.out_exponent)] {
            if !(e > 1.0 && e.is_finite()) {
                return bad(format!("{name}-degree exponent must exceed 1, got {e}"));
            }
        }
        if !(0.0..1.0).contains(&self.dangling_fraction) {
            return bad(format!("dangling fraction must lie in [0,1), got {}", self.dangling_fraction));
        }
        let linking = self.n - self.dangling_target();
        let edges = self.edge_target();
        if linking == 0 {
            return bad("no page is left to carry outlinks".into());
        }
        if edges < linking {
            return bad(format!("{edges} edges cannot give each of {linking} linking pages an outlink"));
        }
        if edges > linking * (self.n - 1) {
            return bad(format!("{edges} edges exceed the {} possible from {linking} linking pages", linking * (self.n - 1)));
        }
        Ok(())
    }

    fn dangling_target(&self) -> usize {
        (self.dangling_fraction * self.n as f64).round() as usize
    }

    fn edge_target(&self) -> usize {
        (self.target_avg_degree * self.n as f64).round() as usize
    }
}

/// Continuous Pareto sample with minimum 1 and density exponent `exponent`, capped at `cap`.
fn power_law<R: Rng>(rng: &mut R, exponent: f64, cap: f64) -> f64 {
    let u: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
    u.powf(-1.0 / (exponent - 1.0)).min(cap)
}

/// Integer targets in `[1, cap]` proportional to `weights`, summing to `total`.
fn scaled_targets<R: Rng>(rng: &mut R, weights: &[f64], total: usize, cap: usize) -> Vec<usize> {
    let realize = |scale: f64| -> Vec<usize> {
        weights.iter().map(|w| ((w * scale).round() as usize).clamp(1, cap)).collect()
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while realize(hi).iter().sum::<usize>() < total && hi < 1e18 {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if realize(mid).iter().sum::<usize>() < total {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut targets = realize(hi);
    let mut sum: usize = targets.iter().sum();
    while sum != total {
        let i = rng.random_range(0..targets.len());
        if sum > total && targets[i] > 1 {
            targets[i] -= 1;
            sum -= 1;
        } else if sum < total && targets[i] < cap {
            targets[i] += 1;
            sum += 1;
        }
    }
    targets
}

pub fn generate(spec: &SynthSpec) -> Result<WebGraph> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let cap = (n - 1) as f64;

    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let mut linking = ids.split_off(spec.dangling_target());
    linking.sort_unstable();

    let out_weights: Vec<f64> = linking.iter().map(|_| power_law(&mut rng, spec.out_exponent, cap)).collect();
    let out_targets = scaled_targets(&mut rng, &out_weights, spec.edge_target(), n - 1);

    let in_weights: Vec<f64> = (0..n).map(|_| power_law(&mut rng, spec.in_exponent, cap)).collect();
    let pick = WeightedIndex::new(&in_weights).map_err(|e| Error::InfeasibleSpec(e.to_string()))?;

    let mut edges = Vec::with_capacity(spec.edge_target());
    let mut row = HashSet::new();
    for (&src, &count) in linking.iter().zip(&out_targets) {
        row.clear();
        for _ in 0..count {
            for _ in 0..REDRAWS_PER_STUB {
                let dst = pick.sample(&mut rng);
                if dst != src && row.insert(dst) {
                    edges.push((src, dst));
                    break;
                }
            }
        }
    }
    Ok(WebGraph::from_edges(n, edges)?.0)
}
