//! Comparisons between score vectors: cosine, Spearman rank correlation,
//! 1-norm distance and top-k overlap.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::ranking::descending_order;

fn same_len(u: &[f64], v: &[f64]) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
    }
    Ok(())
}

pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64> {
    same_len(u, v)?;
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv = v.iter().map(|b| b * b).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::UndefinedCosine);
    }
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}

/// Fractional ranks, 1 for the largest value; tied values share the mean of
/// the positions they occupy.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let order = descending_order(values);
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start+1 ..= end.
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Pearson correlation of the average-rank vectors.
pub fn spearman(u: &[f64], v: &[f64]) -> Result<f64> {
    same_len(u, v)?;
    if u.len() < 2 {
        return Err(Error::UndefinedCorrelation);
    }
    pearson(&average_ranks(u), &average_ranks(v))
}

pub fn l1_distance(u: &[f64], v: &[f64]) -> Result<f64> {
    same_len(u, v)?;
    Ok(u.iter().zip(v).map(|(a, b)| (a - b).abs()).sum())
}

/// `|topk(u) ∩ topk(v)| / k`, with ties in each top-k broken by ascending id.
pub fn topk_overlap(u: &[f64], v: &[f64], k: usize) -> Result<f64> {
    same_len(u, v)?;
    if k == 0 || k > u.len() {
        return Err(Error::InvalidArgument(format!("k must lie in [1, {}], got {k}", u.len())));
    }
    let top_u: HashSet<usize> = descending_order(u).into_iter().take(k).collect();
    let shared = descending_order(v).into_iter().take(k).filter(|i| top_u.contains(i)).count();
    Ok(shared as f64 / k as f64)
}

/// All four measures for one pair of vectors. Undefined measures are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityReport {
    pub cosine: Option<f64>,
    pub spearman: Option<f64>,
    pub l1_distance: f64,
    pub topk_overlap: BTreeMap<usize, f64>,
}

impl SimilarityReport {
    pub fn compute(u: &[f64], v: &[f64], ks: &[usize]) -> Result<Self> {
        let defined = |r: Result<f64>| match r {
            Ok(x) => Ok(Some(x)),
            Err(Error::UndefinedCosine | Error::UndefinedCorrelation) => Ok(None),
            Err(e) => Err(e),
        };
        let mut topk_overlap = BTreeMap::new();
        for &k in ks {
            topk_overlap.insert(k, topk_overlap_clamped(u, v, k)?);
        }
        Ok(SimilarityReport {
            cosine: defined(cosine(u, v))?,
            spearman: defined(spearman(u, v))?,
            l1_distance: l1_distance(u, v)?,
            topk_overlap,
        })
    }
}

fn topk_overlap_clamped(u: &[f64], v: &[f64], k: usize) -> Result<f64> {
    topk_overlap(u, v, k.clamp(1, u.len().max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_examples() {
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert_eq!(cosine(&[2.0, 0.0], &[1.0, 0.0]).unwrap(), 1.0);
        assert!((cosine(&[1.0, 1.0, 0.0], &[1.0, 0.0, 1.0]).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(cosine(&[0.0, 0.0], &[1.0, 0.0]), Err(Error::UndefinedCosine)));
        assert!(matches!(cosine(&[1.0], &[1.0, 0.0]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn ranks_average_ties() {
        assert_eq!(average_ranks(&[1.0, 1.0, 2.0]), vec![2.5, 2.5, 1.0]);
        assert_eq!(average_ranks(&[3.0, 3.0, 3.0, 0.0]), vec![2.0, 2.0, 2.0, 4.0]);
    }

    #[test]
    fn spearman_examples() {
        let v = [0.3, 0.1, 0.6];
        assert!((spearman(&v, &v).unwrap() - 1.0).abs() < 1e-15);
        assert!((spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-15);
        // Ranks (2.5, 2.5, 1) against (3, 2, 1): cov 1.5, variances 1.5 and 2.
        let expected = 1.5 / (1.5f64 * 2.0).sqrt();
        assert!((spearman(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0]).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(matches!(spearman(&[1.0, 1.0], &[1.0, 2.0]), Err(Error::UndefinedCorrelation)));
        assert!(matches!(spearman(&[1.0], &[1.0]), Err(Error::UndefinedCorrelation)));
    }

    #[test]
    fn l1_examples() {
        assert_eq!(l1_distance(&[0.2, 0.8], &[0.2, 0.8]).unwrap(), 0.0);
        assert_eq!(l1_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 2.0);
        assert_eq!(l1_distance(&[0.5, 0.5], &[0.25, 0.75]).unwrap(), 0.5);
    }

    #[test]
    fn topk_examples() {
        let v = [0.1, 0.4, 0.2, 0.3];
        assert_eq!(topk_overlap(&v, &v, 3).unwrap(), 1.0);
        assert_eq!(topk_overlap(&[1.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 1.0, 1.0], 2).unwrap(), 0.0);
        assert_eq!(topk_overlap(&[3.0, 2.0, 1.0], &[1.0, 2.0, 3.0], 2).unwrap(), 0.5);
        assert!(topk_overlap(&v, &v, 0).is_err());
        assert!(topk_overlap(&v, &v, 5).is_err());
    }

    #[test]
    fn report_marks_undefined() {
        let r = SimilarityReport::compute(&[0.5, 0.5], &[0.5, 0.5], &[1, 10]).unwrap();
        assert!((r.cosine.unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(r.spearman, None);
        assert_eq!(r.topk_overlap[&10], 1.0);
    }
}
