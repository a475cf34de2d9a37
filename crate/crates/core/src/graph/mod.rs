//! Sparse directed web graphs.
//!
//! A [`WebGraph`] stores the 0/1 adjacency matrix `L` twice, in compressed
//! row form: the forward lists (`F_i`, row `i` of `L`) and the reverse lists
//! (`B_i`, column `i` of `L`). Both are sorted ascending, self-loops are never
//! stored and every edge appears at most once, so two graphs with the same
//! edge set compare equal.

mod io;
mod stats;

pub use io::{
    load_edge_list, load_graph_path, read_binary, read_labels, write_binary, write_edge_list,
    write_labels, EdgeListFormat, Labels, LoadReport, BINARY_MAGIC,
};
pub use stats::{compute_stats, GraphStats, FRACTION_THRESHOLDS};

use crate::error::{Error, Result};

/// Counts of edges rejected while building a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebGraph {
    n: usize,
    out_offsets: Vec<usize>,
    out_targets: Vec<usize>,
    in_offsets: Vec<usize>,
    in_sources: Vec<usize>,
}

impl WebGraph {
    /// Builds a canonical graph on `n` nodes from an arbitrary edge list.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Self, BuildReport)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut report = BuildReport::default();
        let mut list = Vec::new();
        for (src, dst) in edges {
            for id in [src, dst] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if src == dst {
                report.self_loops_dropped += 1;
                continue;
            }
            list.push((src, dst));
        }
        list.sort_unstable();
        let before = list.len();
        list.dedup();
        report.duplicates_collapsed = before - list.len();
        Ok((Self::from_sorted_unique(n, &list), report))
    }

    /// `edges` must be sorted, duplicate-free and loop-free.
    fn from_sorted_unique(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for &(s, d) in edges {
            out_offsets[s + 1] += 1;
            in_offsets[d + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
            in_offsets[i + 1] += in_offsets[i];
        }
        let out_targets = edges.iter().map(|&(_, d)| d).collect();

        // Edges are sorted by (src, dst), so filling the reverse lists in this
        // order leaves every in-list sorted by source.
        let mut cursor = in_offsets.clone();
        let mut in_sources = vec![0usize; edges.len()];
        for &(s, d) in edges {
            in_sources[cursor[d]] = s;
            cursor[d] += 1;
        }

        WebGraph { n, out_offsets, out_targets, in_offsets, in_sources }
    }

    /// Builds a graph from a forward CSR, validating canonical form.
    pub fn from_csr(n: usize, offsets: Vec<usize>, targets: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if offsets.len() != n + 1 || offsets[0] != 0 || offsets[n] != targets.len() {
            return Err(Error::BadBinary("offset array inconsistent with node/edge counts".into()));
        }
        let mut edges = Vec::with_capacity(targets.len());
        for i in 0..n {
            if offsets[i] > offsets[i + 1] {
                return Err(Error::BadBinary(format!("offsets decrease at node {i}")));
            }
            let row = &targets[offsets[i]..offsets[i + 1]];
            for (k, &j) in row.iter().enumerate() {
                if j >= n {
                    return Err(Error::NodeOutOfRange { id: j, n });
                }
                if j == i || (k > 0 && row[k - 1] >= j) {
                    return Err(Error::BadBinary(format!("row {i} is not canonical")));
                }
                edges.push((i, j));
            }
        }
        Ok(Self::from_sorted_unique(n, &edges))
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// `nnz(L)`.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    #[inline]
    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        &self.out_targets[self.out_offsets[i]..self.out_offsets[i + 1]]
    }

    #[inline]
    pub fn in_neighbors(&self, i: usize) -> &[usize] {
        &self.in_sources[self.in_offsets[i]..self.in_offsets[i + 1]]
    }

    #[inline]
    pub fn outdeg(&self, i: usize) -> usize {
        self.out_offsets[i + 1] - self.out_offsets[i]
    }

    #[inline]
    pub fn indeg(&self, i: usize) -> usize {
        self.in_offsets[i + 1] - self.in_offsets[i]
    }

    #[inline]
    pub fn deg(&self, i: usize) -> usize {
        self.indeg(i) + self.outdeg(i)
    }

    pub fn outdegrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.outdeg(i)).collect()
    }

    pub fn indegrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.indeg(i)).collect()
    }

    pub fn out_offsets(&self) -> &[usize] {
        &self.out_offsets
    }

    pub fn out_targets(&self) -> &[usize] {
        &self.out_targets
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.out_neighbors(i).iter().map(move |&j| (i, j)))
    }

    pub fn is_dangling(&self, i: usize) -> bool {
        self.outdeg(i) == 0
    }

    /// Ids of pages with no outlink, ascending.
    pub fn dangling_nodes(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_dangling(i)).collect()
    }

    pub fn dangling_count(&self) -> usize {
        (0..self.n).filter(|&i| self.is_dangling(i)).count()
    }

    /// `|ND|`, the number of pages with at least one outlink.
    pub fn nondangling_count(&self) -> usize {
        self.n - self.dangling_count()
    }

    /// The graph with every edge reversed (`L^T`).
    pub fn transpose(&self) -> WebGraph {
        WebGraph {
            n: self.n,
            out_offsets: self.in_offsets.clone(),
            out_targets: self.in_sources.clone(),
            in_offsets: self.out_offsets.clone(),
            in_sources: self.out_targets.clone(),
        }
    }

    /// Back-button rewrite `L* = L + M`: every dangling page `i` gains an
    /// outlink to each page that links to it. Non-dangling rows are left
    /// untouched. A dangling page nobody links to stays dangling.
    pub fn back_button(&self) -> WebGraph {
        let extra: usize = (0..self.n).filter(|&i| self.is_dangling(i)).map(|i| self.indeg(i)).sum();
        if extra == 0 {
            return self.clone();
        }
        let mut edges = Vec::with_capacity(self.edge_count() + extra);
        for i in 0..self.n {
            if self.is_dangling(i) {
                edges.extend(self.in_neighbors(i).iter().map(|&j| (i, j)));
            } else {
                edges.extend(self.out_neighbors(i).iter().map(|&j| (i, j)));
            }
        }
        // Rows are emitted in order and each row is already sorted.
        Self::from_sorted_unique(self.n, &edges)
    }
}

/// Free-function form of [`WebGraph::dangling_nodes`].
pub fn dangling_nodes(g: &WebGraph) -> Vec<usize> {
    g.dangling_nodes()
}

/// Free-function form of [`WebGraph::back_button`].
pub fn back_button_transform(g: &WebGraph) -> WebGraph {
    g.back_button()
}
