//! Small dense linear-algebra kernels: LU solve and symmetric eigensolvers.

use ndarray::{Array1, Array2, ArrayView2};

use crate::error::{FsError, Result};

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: ArrayView2<'_, f64>, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.nrows();
    if a.ncols() != n || b.len() != n {
        return Err(FsError::DimensionMismatch(format!(
            "solve: {}x{} system with rhs of length {}",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    let mut m = a.to_owned();
    let mut x = b.to_vec();
    let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0);
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if m[[r, col]].abs() > m[[piv, col]].abs() {
                piv = r;
            }
        }
        if m[[piv, col]].abs() <= 1e-14 * scale {
            return Err(FsError::Numerical("singular linear system".into()));
        }
        if piv != col {
            for k in 0..n {
                m.swap([piv, k], [col, k]);
            }
            x.swap(piv, col);
        }
        let p = m[[col, col]];
        for r in (col + 1)..n {
            let f = m[[r, col]] / p;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                m[[r, k]] -= f * m[[col, k]];
            }
            x[r] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in (col + 1)..n {
            s -= m[[col, k]] * x[k];
        }
        x[col] = s / m[[col, col]];
    }
    Ok(x)
}

pub fn matvec(a: ArrayView2<'_, f64>, x: &[f64]) -> Vec<f64> {
    a.rows()
        .into_iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Flips `v` so that its first non-negligible component is positive.
pub fn orient_nonnegative(v: &mut [f64]) {
    let scale = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return;
    }
    if let Some(&first) = v.iter().find(|x| x.abs() > 1e-12 * scale) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Unit eigenvectors as columns, in the order of `values`.
    pub vectors: Array2<f64>,
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// `tol * max(1, ||A||_F)`.
pub fn jacobi_eigen(a: ArrayView2<'_, f64>, tol: f64) -> Result<SymmetricEigen> {
    const MAX_SWEEPS: usize = 100;
    let n = a.nrows();
    if a.ncols() != n {
        return Err(FsError::DimensionMismatch("jacobi: matrix not square".into()));
    }
    let mut m = a.to_owned();
    let mut v = Array2::<f64>::eye(n);
    let frob = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = tol * frob.max(1.0);

    let off_norm = |m: &Array2<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[[i, j]] * m[[i, j]];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&m) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[[q, q]] - m[[p, p]]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[[k, p]];
                    let akq = m[[k, q]];
                    m[[k, p]] = c * akp - s * akq;
                    m[[k, q]] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[[p, k]];
                    let aqk = m[[q, k]];
                    m[[p, k]] = c * apk - s * aqk;
                    m[[q, k]] = s * apk + c * aqk;
                }
                m[[p, q]] = 0.0;
                m[[q, p]] = 0.0;
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        converged = off_norm(&m) <= threshold;
    }
    if !converged {
        return Err(FsError::Numerical(format!(
            "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let diag: Vec<f64> = (0..n).map(|i| m[[i, i]]).collect();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| diag[a].total_cmp(&diag[b]));
    let values = idx.iter().map(|&i| diag[i]).collect();
    let mut vectors = Array2::<f64>::zeros((n, n));
    for (out, &i) in idx.iter().enumerate() {
        let mut col: Vec<f64> = v.column(i).to_vec();
        orient_nonnegative(&mut col);
        vectors.column_mut(out).assign(&Array1::from(col));
    }
    Ok(SymmetricEigen { values, vectors })
}
