//! Degree-imbalance weights `ca_i` and `ch_i` of the accelerated HITS iteration.
//!
//! For a page with `deg_i = indeg_i + outdeg_i > 0` and `d_i = |indeg_i - outdeg_i|`:
//!
//! ```text
//! p_i  = +1 if indeg_i > outdeg_i, -1 if indeg_i < outdeg_i, 0 otherwise
//! ca_i = (indeg_i  / deg_i) * d_i^( p_i)
//! ch_i = (outdeg_i / deg_i) * d_i^(-p_i)
//! ```
//!
//! with `0^0 = 1`, so balanced pages get `ca_i = ch_i = 1/2`. Pages with no
//! links at all get zero weights and stay inert in the iteration.
//!
//! Every weight is evaluated as a single division of two exact integers, so
//! it is the correctly rounded value of the underlying rational.

use std::io::{BufWriter, Write};

use crate::error::Result;
use crate::graph::WebGraph;

/// Diagonals of `Ca` and `Ch`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightDiagonals {
    pub ca: Vec<f64>,
    pub ch: Vec<f64>,
}

impl WeightDiagonals {
    pub fn len(&self) -> usize {
        self.ca.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ca.is_empty()
    }

    /// Writes `id,ca,ch` rows.
    pub fn write_csv<W: Write>(&self, sink: W) -> Result<()> {
        let mut w = BufWriter::new(sink);
        writeln!(w, "id,ca,ch")?;
        for (i, (ca, ch)) in self.ca.iter().zip(&self.ch).enumerate() {
            writeln!(w, "{i},{ca},{ch}")?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `(ca, ch)` for a single page.
pub fn weight_pair(indeg: usize, outdeg: usize) -> (f64, f64) {
    let deg = indeg + outdeg;
    if deg == 0 {
        return (0.0, 0.0);
    }
    let (i, o, d) = (indeg as u128, outdeg as u128, deg as u128);
    let diff = i.abs_diff(o);
    let ratio = |num: u128, den: u128| num as f64 / den as f64;
    match indeg.cmp(&outdeg) {
        std::cmp::Ordering::Greater => (ratio(i * diff, d), ratio(o, d * diff)),
        std::cmp::Ordering::Less => (ratio(i, d * diff), ratio(o * diff, d)),
        std::cmp::Ordering::Equal => (ratio(i, d), ratio(o, d)),
    }
}

pub fn compute_weights(g: &WebGraph) -> WeightDiagonals {
    let (ca, ch) = (0..g.node_count()).map(|i| weight_pair(g.indeg(i), g.outdeg(i))).unzip();
    WeightDiagonals { ca, ch }
}
