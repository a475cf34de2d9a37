//! Random graphs and dense reference computations shared by the integration
//! tests. Nothing here calls the solvers under test.
#![allow(dead_code)]

use linkrank::WebGraph;
use rand::Rng;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> WebGraph {
    WebGraph::from_edges(n, edges.iter().copied()).unwrap().0
}

/// `1 -> 0`, `2 -> 0`.
pub fn g1() -> WebGraph {
    graph(3, &[(1, 0), (2, 0)])
}

/// Random simple digraph on `n` nodes with edge probability `p`, never empty
/// when `n >= 2`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> WebGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    if edges.is_empty() && n >= 2 {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        edges.push((i, j));
    }
    graph(n, &edges)
}

/// Disjoint union of random blocks, each on its own id range, plus isolated nodes.
pub fn reducible_graph<R: Rng>(rng: &mut R) -> WebGraph {
    let mut edges = Vec::new();
    let mut base = 0;
    for _ in 0..rng.random_range(2..=4) {
        let size = rng.random_range(2..=6);
        let block = random_graph(rng, size, 0.4);
        edges.extend(block.edges().map(|(i, j)| (i + base, j + base)));
        base += size;
    }
    let n = base + rng.random_range(0..=3);
    graph(n, &edges)
}

pub type Dense = Vec<Vec<f64>>;

pub fn adjacency(g: &WebGraph) -> Dense {
    let n = g.node_count();
    let mut m = vec![vec![0.0; n]; n];
    for (i, j) in g.edges() {
        m[i][j] = 1.0;
    }
    m
}

pub fn transpose(m: &Dense) -> Dense {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0.0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

pub fn diag(d: &[f64]) -> Dense {
    let n = d.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0.0 }).collect()).collect()
}

/// Row vector times matrix.
pub fn vecmat(v: &[f64], m: &Dense) -> Vec<f64> {
    let n = v.len();
    (0..n).map(|j| (0..n).map(|i| v[i] * m[i][j]).sum()).collect()
}

pub fn l1(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b).abs()).sum()
}

/// Scales to unit 1-norm; `None` for a zero vector.
pub fn normalized(v: Vec<f64>) -> Option<Vec<f64>> {
    let s: f64 = v.iter().sum();
    (s > 0.0).then(|| v.into_iter().map(|x| x / s).collect())
}

/// Power iteration `v <- normalize(v M)` until successive iterates differ by
/// at most `tol`. `None` if the iterate vanishes or `max_iter` runs out.
pub fn power_iterate(start: Vec<f64>, m: &Dense, tol: f64, max_iter: usize) -> Option<Vec<f64>> {
    let mut v = normalized(start)?;
    for _ in 0..max_iter {
        let next = normalized(vecmat(&v, m))?;
        let done = l1(&next, &v) <= tol;
        v = next;
        if done {
            return Some(v);
        }
    }
    None
}

/// Weights from their defining formula, coded directly in floating point.
pub fn weights_by_formula(g: &WebGraph) -> (Vec<f64>, Vec<f64>) {
    (0..g.node_count())
        .map(|i| {
            let (din, dout) = (g.indeg(i) as f64, g.outdeg(i) as f64);
            let deg = din + dout;
            if deg == 0.0 {
                return (0.0, 0.0);
            }
            let p = (din - dout).signum();
            let gap = (din - dout).abs();
            let pow = |e: f64| if gap == 0.0 { 1.0 } else { gap.powf(e) };
            (din / deg * pow(p), dout / deg * pow(-p))
        })
        .unzip()
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Dense, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (x, p) in a[row].iter_mut().zip(&pivot_row).skip(col) {
                *x -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Stationary PageRank vector from the linear system
/// `p (I - alpha S) = (1 - alpha)/N e`, where `S` is the row-stochastic link
/// matrix with dangling rows replaced by `e/N`.
pub fn pagerank_by_solve(g: &WebGraph, alpha: f64) -> Vec<f64> {
    let n = g.node_count();
    let l = adjacency(g);
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..n {
        let out: f64 = l[i].iter().sum();
        for j in 0..n {
            s[i][j] = if out == 0.0 { 1.0 / n as f64 } else { l[i][j] / out };
        }
    }
    // Transposed system: (I - alpha S)^T p^T = (1 - alpha)/N e.
    let a: Dense = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 } - alpha * s[j][i]).collect())
        .collect();
    solve(a, vec![(1.0 - alpha) / n as f64; n])
}
