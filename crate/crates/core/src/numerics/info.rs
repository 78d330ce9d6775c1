//! Plug-in entropy and mutual information on discrete codes, and the
//! equal-frequency discretizer that produces them.

use ndarray::Array2;

use crate::error::{FsError, Result};
use crate::types::DataMatrix;

/// Bin count used when none is given: `ceil(sqrt(T))`, capped at 256.
pub fn default_bins(n_samples: usize) -> usize {
    ((n_samples as f64).sqrt().ceil() as usize).clamp(2, 256)
}

fn contingency(xs: &[usize], ys: &[usize]) -> (Array2<f64>, Vec<f64>, Vec<f64>) {
    let nx = xs.iter().max().map_or(0, |m| m + 1);
    let ny = ys.iter().max().map_or(0, |m| m + 1);
    let mut joint = Array2::<f64>::zeros((nx, ny));
    for (&a, &b) in xs.iter().zip(ys) {
        joint[[a, b]] += 1.0;
    }
    let px = (0..nx).map(|a| joint.row(a).sum()).collect();
    let py = (0..ny).map(|b| joint.column(b).sum()).collect();
    (joint, px, py)
}

/// Empirical mutual information in bits.
pub fn mutual_information(xs: &[usize], ys: &[usize]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(FsError::DimensionMismatch(format!(
            "mutual information of sequences with lengths {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.is_empty() {
        return Ok(0.0);
    }
    let t = xs.len() as f64;
    let (joint, px, py) = contingency(xs, ys);
    let mut mi = 0.0;
    for ((a, b), &count) in joint.indexed_iter() {
        if count > 0.0 {
            // p(x,y) log2( p(x,y) / (p(x) p(y)) ) with counts
            mi += (count / t) * ((count * t) / (px[a] * py[b])).log2();
        }
    }
    Ok(mi.max(0.0))
}

/// Empirical entropy in bits.
pub fn entropy(xs: &[usize]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let t = xs.len() as f64;
    let k = xs.iter().max().map_or(0, |m| m + 1);
    let mut counts = vec![0.0; k];
    for &x in xs {
        counts[x] += 1.0;
    }
    counts
        .iter()
        .filter(|&&c| c > 0.0)
        .map(|&c| -(c / t) * (c / t).log2())
        .sum()
}

/// Per-feature bin edges fitted by [`discretize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Discretizer {
    /// Strictly increasing interior edges per feature. A value `v` falls in
    /// bin `#{e : v > e}`, so a value equal to an edge goes to the lower bin.
    pub edges: Vec<Vec<f64>>,
    /// Requested bin count.
    pub bins: usize,
}

impl Discretizer {
    pub fn bin_of(&self, feature: usize, value: f64) -> usize {
        self.edges[feature].partition_point(|&e| value > e)
    }

    /// Codes for a single feature column.
    pub fn transform_column(&self, feature: usize, values: impl IntoIterator<Item = f64>) -> Vec<usize> {
        values.into_iter().map(|v| self.bin_of(feature, v)).collect()
    }

    /// Number of bins actually used by a feature.
    pub fn n_bins(&self, feature: usize) -> usize {
        self.edges[feature].len() + 1
    }
}

/// Equal-frequency edges for one feature with at most `bins` bins.
fn quantile_edges(values: &[f64], bins: usize) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let t = sorted.len();
    let mut distinct = sorted.clone();
    distinct.dedup();
    let b = bins.min(distinct.len());
    if b <= 1 {
        return Vec::new();
    }
    let max = sorted[t - 1];
    let mut edges: Vec<f64> = Vec::with_capacity(b - 1);
    for k in 1..b {
        // ceil(k T / b) - th order statistic
        let pos = (k * t).div_ceil(b) - 1;
        let e = sorted[pos];
        if e < max && edges.last().is_none_or(|&last| e > last) {
            edges.push(e);
        }
    }
    edges
}

/// Column-wise equal-frequency binning into at most `bins` bins.
///
/// Returns the `T x n` code matrix (column-major as a `Vec` per feature) and
/// the fitted [`Discretizer`].
pub fn discretize(data: &DataMatrix, bins: usize) -> Result<(Vec<Vec<usize>>, Discretizer)> {
    if bins < 2 {
        return Err(FsError::InvalidArgument(format!(
            "need at least 2 bins, got {bins}"
        )));
    }
    let mut edges = Vec::with_capacity(data.n_features());
    let mut codes = Vec::with_capacity(data.n_features());
    for j in 0..data.n_features() {
        let col: Vec<f64> = data.column(j).to_vec();
        let e = quantile_edges(&col, bins);
        codes.push(
            col.iter()
                .map(|&v| e.partition_point(|&edge| v > edge))
                .collect(),
        );
        edges.push(e);
    }
    Ok((codes, Discretizer { edges, bins }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn mi_examples() {
        assert!((mutual_information(&[0, 1, 0, 1], &[0, 1, 0, 1]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(mutual_information(&[0, 0, 0, 0], &[0, 1, 0, 1]).unwrap(), 0.0);
        assert!(mutual_information(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap().abs() < 1e-15);
        assert!(mutual_information(&[0, 1], &[0]).is_err());
    }

    #[test]
    fn mi_symmetric_and_bounded() {
        let x = [0, 1, 2, 2, 1, 0, 3, 3, 1];
        let y = [1, 1, 0, 0, 1, 0, 1, 0, 0];
        let a = mutual_information(&x, &y).unwrap();
        let b = mutual_information(&y, &x).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(a <= entropy(&x).min(entropy(&y)) + 1e-12);
    }

    #[test]
    fn discretize_median_split() {
        let d = DataMatrix::from_columns(&[vec![1.0, 2.0, 3.0, 4.0], vec![5.0; 4]]).unwrap();
        let (codes, disc) = discretize(&d, 2).unwrap();
        assert_eq!(codes[0], vec![0, 0, 1, 1]);
        assert_eq!(codes[1], vec![0, 0, 0, 0]);
        assert_eq!(disc.n_bins(1), 1);
        assert_eq!(disc.bin_of(0, 2.0), 0);
        assert_eq!(disc.bin_of(0, 2.5), 1);
    }

    #[test]
    fn discretize_normal_quartiles() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let col: Vec<f64> = (0..200).map(|_| StandardNormal.sample(&mut rng)).collect();
        let d = DataMatrix::from_columns(&[col]).unwrap();
        let (codes, disc) = discretize(&d, 4).unwrap();
        let mut occ = [0usize; 4];
        for &c in &codes[0] {
            occ[c] += 1;
        }
        for o in occ {
            assert!((49..=51).contains(&o), "{occ:?}");
        }
        assert!(disc.edges[0].windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn discretize_ties_go_low() {
        let d = DataMatrix::from_columns(&[vec![0.0, 0.0, 0.0, 1.0, 2.0, 3.0]]).unwrap();
        let (codes, disc) = discretize(&d, 3).unwrap();
        assert_eq!(disc.edges[0], vec![0.0, 1.0]);
        assert_eq!(codes[0], vec![0, 0, 0, 1, 2, 2]);
    }

    #[test]
    fn default_bin_rule() {
        assert_eq!(default_bins(200), 15);
        assert_eq!(default_bins(4), 2);
        assert_eq!(default_bins(1_000_000), 256);
    }
}
