//! Principal eigenpair by power iteration, and the low end of a normalized
//! graph-Laplacian spectrum.

use ndarray::{Array2, ArrayView2};

use super::linalg::{dot, jacobi_eigen, matvec, norm2, orient_nonnegative};
use crate::error::{FsError, Result};

/// Off-diagonal tolerance for the Jacobi solver used on Laplacians.
pub const JACOBI_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Eigenpair {
    /// Unit 2-norm, first non-negligible component positive.
    pub vector: Vec<f64>,
    /// Rayleigh quotient of `vector`.
    pub value: f64,
    pub iterations: usize,
}

/// Principal eigenpair of a nonnegative symmetric matrix.
///
/// Starts from the normalized all-ones vector and stops once two successive
/// iterates differ by less than `tol` in 2-norm, or after `max_iter` steps.
pub fn power_iteration(a: ArrayView2<'_, f64>, tol: f64, max_iter: usize) -> Result<Eigenpair> {
    let n = a.nrows();
    if a.ncols() != n || n == 0 {
        return Err(FsError::DimensionMismatch(
            "power iteration needs a non-empty square matrix".into(),
        ));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(FsError::Numerical("matrix has non-finite entries".into()));
    }
    if a.iter().all(|&v| v == 0.0) {
        return Err(FsError::Numerical("power iteration on a zero matrix".into()));
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut iterations = 0;
    for _ in 0..max_iter {
        let mut y = matvec(a, &x);
        let norm = norm2(&y);
        if norm == 0.0 {
            return Err(FsError::Numerical(
                "power iteration collapsed to the zero vector".into(),
            ));
        }
        y.iter_mut().for_each(|v| *v /= norm);
        orient_nonnegative(&mut y);
        let change = x
            .iter()
            .zip(&y)
            .map(|(p, q)| (p - q) * (p - q))
            .sum::<f64>()
            .sqrt();
        x = y;
        iterations += 1;
        if change < tol {
            break;
        }
    }
    let value = dot(&x, &matvec(a, &x));
    Ok(Eigenpair {
        vector: x,
        value,
        iterations,
    })
}

/// Generalized eigenvectors of `L y = λ D y`.
#[derive(Debug, Clone)]
pub struct SpectralEmbedding {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// `D^{-1/2} u` for each unit eigenvector `u` of the normalized Laplacian.
    pub vectors: Vec<Vec<f64>>,
}

/// The `k` smallest non-trivial generalized eigenvectors of a graph Laplacian
/// `laplacian` with positive degree vector `degrees`.
///
/// Works on `N = D^{-1/2} L D^{-1/2}`. The trivial mode `D^{1/2} 1` is
/// shifted above the rest of the spectrum before the Jacobi solve, so the
/// returned vectors are all D-orthogonal to the constant vector, even when
/// the eigenvalue 0 is repeated (disconnected graphs).
pub fn smallest_generalized_eigvecs(
    laplacian: ArrayView2<'_, f64>,
    degrees: &[f64],
    k: usize,
) -> Result<SpectralEmbedding> {
    let n = laplacian.nrows();
    if laplacian.ncols() != n || degrees.len() != n {
        return Err(FsError::DimensionMismatch(
            "Laplacian and degree vector sizes differ".into(),
        ));
    }
    if k >= n {
        return Err(FsError::InvalidArgument(format!(
            "asked for {k} eigenvectors of a {n}-node graph"
        )));
    }
    if let Some(i) = degrees.iter().position(|&d| d.is_nan() || d <= 0.0) {
        return Err(FsError::InvalidArgument(format!(
            "degree {i} is not positive"
        )));
    }
    let inv_sqrt: Vec<f64> = degrees.iter().map(|d| 1.0 / d.sqrt()).collect();
    let sqrt_deg: Vec<f64> = degrees.iter().map(|d| d.sqrt()).collect();
    let qn = norm2(&sqrt_deg);
    let q: Vec<f64> = sqrt_deg.iter().map(|v| v / qn).collect();

    let mut norm_lap =
        Array2::from_shape_fn((n, n), |(i, j)| inv_sqrt[i] * laplacian[[i, j]] * inv_sqrt[j]);
    let shift = (0..n).map(|i| norm_lap[[i, i]]).sum::<f64>().abs() + 1.0;
    for i in 0..n {
        for j in 0..n {
            norm_lap[[i, j]] += shift * q[i] * q[j];
        }
    }
    // symmetrize away rounding before the solve
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (norm_lap[[i, j]] + norm_lap[[j, i]]);
            norm_lap[[i, j]] = avg;
            norm_lap[[j, i]] = avg;
        }
    }

    let eig = jacobi_eigen(norm_lap.view(), JACOBI_TOL)?;
    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    for c in 0..k {
        let u = eig.vectors.column(c);
        let mut y: Vec<f64> = u.iter().zip(&inv_sqrt).map(|(a, b)| a * b).collect();
        orient_nonnegative(&mut y);
        values.push(eig.values[c]);
        vectors.push(y);
    }
    Ok(SpectralEmbedding { values, vectors })
}
