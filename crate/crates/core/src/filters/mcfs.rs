//! Multi-Cluster Feature Selection: sparse regression of the spectral
//! embedding onto the features.

use ndarray::Array2;

use super::laplacian::{knn_affinity, GraphParams};
use crate::error::{FsError, Result};
use crate::numerics::eigen::smallest_generalized_eigvecs;
use crate::numerics::lasso::{lambda_max, lasso_cd};
use crate::types::{DataMatrix, FeatureScores};

#[derive(Debug, Clone)]
pub struct McfsParams {
    pub graph: GraphParams,
    /// Number of embedding dimensions `K`.
    pub n_clusters: usize,
    /// Lasso penalty as a fraction of each eigenvector's `λ_max`.
    pub lambda_frac: f64,
    /// Scale columns to unit variance before the regressions.
    pub standardize: bool,
    pub lasso_tol: f64,
    pub lasso_max_iter: usize,
}

impl Default for McfsParams {
    fn default() -> Self {
        Self {
            graph: GraphParams::default(),
            n_clusters: 5,
            lambda_frac: 0.01,
            standardize: false,
            lasso_tol: 1e-9,
            lasso_max_iter: 10_000,
        }
    }
}

/// MCFS scores `max_k |a_kj|` (higher is better, always ≥ 0).
///
/// Columns and targets are centred before each lasso, which is the same as
/// fitting an unpenalized intercept.
pub fn mcfs_score(data: &DataMatrix, params: &McfsParams) -> Result<FeatureScores> {
    let t = data.n_samples();
    let n = data.n_features();
    let k = params.n_clusters;
    if k < 1 || k >= t {
        return Err(FsError::InvalidArgument(format!(
            "mcfs needs 1 <= K < T, got K={k}, T={t}"
        )));
    }
    if !(params.lambda_frac >= 0.0) {
        return Err(FsError::InvalidArgument(format!(
            "lambda_frac must be >= 0, got {}",
            params.lambda_frac
        )));
    }
    let graph = knn_affinity(data, &params.graph)?;
    if graph.degrees.iter().any(|&d| d <= 0.0) {
        return Err(FsError::Numerical(
            "affinity graph has an isolated sample (heat kernel underflow)".into(),
        ));
    }
    let embedding = smallest_generalized_eigvecs(graph.laplacian().view(), &graph.degrees, k)?;

    let x = data.values();
    let mut design = Array2::<f64>::zeros((t, n));
    for j in 0..n {
        let col = x.column(j);
        let mean = col.sum() / t as f64;
        let mut sd = 1.0;
        if params.standardize {
            let var = col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / t as f64;
            sd = if var > 0.0 { var.sqrt() } else { 1.0 };
        }
        for i in 0..t {
            design[[i, j]] = (col[i] - mean) / sd;
        }
    }

    let mut scores = vec![0.0f64; n];
    for y in &embedding.vectors {
        let ym = y.iter().sum::<f64>() / t as f64;
        let target: Vec<f64> = y.iter().map(|v| v - ym).collect();
        let lambda = params.lambda_frac * lambda_max(design.view(), &target);
        let fit = lasso_cd(
            design.view(),
            &target,
            lambda,
            params.lasso_tol,
            params.lasso_max_iter,
        )?;
        for (s, a) in scores.iter_mut().zip(&fit.coef) {
            *s = s.max(a.abs());
        }
    }
    Ok(FeatureScores::higher(scores))
}
