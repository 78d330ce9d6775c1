//! Infinite Feature Selection: every feature is a node, every path through
//! the feature graph a candidate subset, and a feature's score is the total
//! weight of all paths leaving it.

use ndarray::{Array2, ArrayView2};

use crate::error::{FsError, Result};
use crate::numerics::eigen::power_iteration;
use crate::numerics::linalg::solve;
use crate::numerics::stats::{mid_ranks, pearson, pop_std, rescale_unit};
use crate::types::{DataMatrix, FeatureScores};

/// Fraction of `1/ρ(A)` used as the series decay, so that `ρ(rA) = 0.9`.
pub const DECAY: f64 = 0.9;

const POWER_TOL: f64 = 1e-13;
const POWER_MAX_ITER: usize = 100_000;

/// Feature adjacency `A_ij = α max(σ_i, σ_j) + (1 - α)(1 - |ρ_s(f_i, f_j)|)`.
///
/// `σ` are population standard deviations rescaled to `[0, 1]` across
/// features and `ρ_s` is Spearman correlation. The diagonal is kept.
pub fn inffs_adjacency(data: &DataMatrix, alpha: f64) -> Result<Array2<f64>> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(FsError::InvalidArgument(format!(
            "alpha must be in [0, 1], got {alpha}"
        )));
    }
    let n = data.n_features();
    let cols: Vec<Vec<f64>> = (0..n).map(|j| data.column(j).to_vec()).collect();
    let sigma = rescale_unit(&cols.iter().map(|c| pop_std(c)).collect::<Vec<_>>());
    let ranks: Vec<Vec<f64>> = cols.iter().map(|c| mid_ranks(c)).collect();
    let mut a = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        for j in i..n {
            let c = 1.0 - pearson(&ranks[i], &ranks[j]).abs();
            let v = alpha * sigma[i].max(sigma[j]) + (1.0 - alpha) * c;
            a[[i, j]] = v;
            a[[j, i]] = v;
        }
    }
    Ok(a)
}

/// Path scores of an adjacency matrix.
#[derive(Debug, Clone)]
pub struct PathScores {
    /// Row sums of `(I - rA)^{-1} - I`.
    pub scores: Vec<f64>,
    /// Decay `r = 0.9 / ρ(A)`.
    pub r: f64,
    pub spectral_radius: f64,
}

/// Sums the geometric series `Σ_{l≥1} r^l A^l` in closed form and returns its
/// row sums. A zero adjacency yields all-zero scores.
pub fn path_scores(a: ArrayView2<'_, f64>) -> Result<PathScores> {
    let n = a.nrows();
    if a.iter().all(|&v| v == 0.0) {
        return Ok(PathScores {
            scores: vec![0.0; n],
            r: 0.0,
            spectral_radius: 0.0,
        });
    }
    let rho = power_iteration(a, POWER_TOL, POWER_MAX_ITER)?.value;
    if !(rho > 0.0) {
        return Err(FsError::Numerical(format!(
            "non-positive spectral radius estimate {rho}"
        )));
    }
    let r = DECAY / rho;
    let m = Array2::from_shape_fn((n, n), |(i, j)| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - r * a[[i, j]]
    });
    // (I - rA)^{-1} 1 - 1 gives the row sums of (I - rA)^{-1} - I
    let ones = vec![1.0; n];
    let s = solve(m.view(), &ones)?;
    Ok(PathScores {
        scores: s.iter().map(|v| v - 1.0).collect(),
        r,
        spectral_radius: rho,
    })
}

/// Inf-FS scores (higher is better).
pub fn inf_fs(data: &DataMatrix, alpha: f64) -> Result<FeatureScores> {
    if data.n_features() < 2 {
        return Err(FsError::InvalidArgument(
            "inffs needs at least 2 features".into(),
        ));
    }
    let a = inffs_adjacency(data, alpha)?;
    Ok(FeatureScores::higher(path_scores(a.view())?.scores))
}
