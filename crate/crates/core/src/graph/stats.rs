use super::WebGraph;

/// Thresholds at which authoritative (`fi`) and hubby (`fo`) page fractions are reported.
pub const FRACTION_THRESHOLDS: [f64; 4] = [0.6, 0.7, 0.8, 0.9];

#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub n: usize,
    pub nnz: usize,
    pub dangling_count: usize,
    pub dangling_percent: f64,
    /// Links per page, `nnz / n`.
    pub average_degree: f64,
    /// Share of connected pages with `indeg/deg` strictly above each threshold.
    pub fi: [f64; 4],
    /// Share of connected pages with `outdeg/deg` strictly above each threshold.
    pub fo: [f64; 4],
}

impl GraphStats {
    pub fn nondangling_count(&self) -> usize {
        self.n - self.dangling_count
    }
}

pub fn compute_stats(g: &WebGraph) -> GraphStats {
    let n = g.node_count();
    let dangling_count = g.dangling_count();
    let mut connected = 0usize;
    let mut fi_counts = [0usize; 4];
    let mut fo_counts = [0usize; 4];
    for i in 0..n {
        let deg = g.deg(i);
        if deg == 0 {
            continue;
        }
        connected += 1;
        let fi = g.indeg(i) as f64 / deg as f64;
        let fo = g.outdeg(i) as f64 / deg as f64;
        for (k, &t) in FRACTION_THRESHOLDS.iter().enumerate() {
            fi_counts[k] += usize::from(fi > t);
            fo_counts[k] += usize::from(fo > t);
        }
    }
    let share = |c: usize| if connected == 0 { 0.0 } else { c as f64 / connected as f64 };
    GraphStats {
        n,
        nnz: g.edge_count(),
        dangling_count,
        dangling_percent: 100.0 * dangling_count as f64 / n as f64,
        average_degree: g.edge_count() as f64 / n as f64,
        fi: fi_counts.map(share),
        fo: fo_counts.map(share),
    }
}
