//! Lasso by cyclic coordinate descent.

use ndarray::ArrayView2;

use crate::error::{FsError, Result};

#[derive(Debug, Clone)]
pub struct LassoFit {
    pub coef: Vec<f64>,
    pub sweeps: usize,
}

#[inline]
pub fn soft_threshold(x: f64, lambda: f64) -> f64 {
    if x > lambda {
        x - lambda
    } else if x < -lambda {
        x + lambda
    } else {
        0.0
    }
}

/// Smallest `lambda` for which the all-zero vector is optimal: `max_j |X_jᵀy| / T`.
pub fn lambda_max(x: ArrayView2<'_, f64>, y: &[f64]) -> f64 {
    let t = x.nrows() as f64;
    x.columns()
        .into_iter()
        .map(|col| col.iter().zip(y).map(|(a, b)| a * b).sum::<f64>().abs() / t)
        .fold(0.0, f64::max)
}

/// Minimizes `(1/2T)||y - X a||² + lambda ||a||₁`.
///
/// Sweeps coordinates in index order and stops when the largest coordinate
/// change in a sweep drops below `tol`.
pub fn lasso_cd(
    x: ArrayView2<'_, f64>,
    y: &[f64],
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<LassoFit> {
    let (t, n) = x.dim();
    if y.len() != t {
        return Err(FsError::DimensionMismatch(format!(
            "lasso: {t} rows but {} targets",
            y.len()
        )));
    }
    if !(lambda >= 0.0) {
        return Err(FsError::InvalidArgument(format!(
            "lasso penalty must be >= 0, got {lambda}"
        )));
    }
    let tf = t as f64;
    let col_sq: Vec<f64> = x
        .columns()
        .into_iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>() / tf)
        .collect();
    let mut coef = vec![0.0; n];
    let mut resid = y.to_vec();
    let mut sweeps = 0;
    while sweeps < max_iter {
        sweeps += 1;
        let mut max_change = 0.0f64;
        for j in 0..n {
            if col_sq[j] == 0.0 {
                continue;
            }
            let col = x.column(j);
            let old = coef[j];
            // X_jᵀ(partial residual)/T
            let rho = col.iter().zip(&resid).map(|(a, r)| a * r).sum::<f64>() / tf
                + col_sq[j] * old;
            let new = soft_threshold(rho, lambda) / col_sq[j];
            let delta = new - old;
            if delta != 0.0 {
                for (r, a) in resid.iter_mut().zip(col.iter()) {
                    *r -= a * delta;
                }
                coef[j] = new;
                max_change = max_change.max(delta.abs());
            }
        }
        if max_change < tol {
            break;
        }
    }
    Ok(LassoFit { coef, sweeps })
}
