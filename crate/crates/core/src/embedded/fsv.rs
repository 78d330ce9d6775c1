//! Feature selection via concave minimization, solved by successive
//! linearization: each step is one LP in `(w, γ, y, z, v)`.

use ndarray::Array2;

use crate::error::{FsError, Result};
use crate::methods::Method;
use crate::numerics::lp::{solve_lp, LpProblem, LpStatus};
use crate::pipeline::{ranking_from_scores, require_binary};
use crate::types::{DataMatrix, FeatureRanking, FeatureScores, LabelVector};

#[derive(Debug, Clone)]
pub struct FsvParams {
    /// Weight of the sparsity term, in `(0, 1)`.
    pub lambda: f64,
    /// Steepness of the `1 - exp(-α v)` surrogate.
    pub alpha_cc: f64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for FsvParams {
    fn default() -> Self {
        Self {
            lambda: 0.5,
            alpha_cc: 5.0,
            max_iter: 50,
            tol: 1e-6,
        }
    }
}

impl FsvParams {
    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(FsError::InvalidParam { method: "fsv".into(), message: m });
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return bad(format!("lambda must be in (0, 1), got {}", self.lambda));
        }
        if !(self.alpha_cc > 0.0) || !self.alpha_cc.is_finite() {
            return bad(format!("alpha must be > 0, got {}", self.alpha_cc));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be >= 1".into());
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol must be > 0, got {}", self.tol));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct FsvFit {
    pub w: Vec<f64>,
    pub gamma: f64,
    pub v: Vec<f64>,
    /// Concave objective `(1-λ)(Σy/m + Σz/k) + λ Σ (1 - e^{-α v})` after
    /// every LP; successive linearization never increases it.
    pub objectives: Vec<f64>,
    /// Number of LPs solved.
    pub iterations: usize,
}

/// Runs successive linearization from `v⁰ = 1` until `‖Δv‖∞ < tol` or
/// `max_iter` LPs.
pub fn fsv_fit(data: &DataMatrix, labels: &LabelVector, params: &FsvParams) -> Result<FsvFit> {
    let labels = require_binary("fsv", data, Some(labels))?;
    params.check()?;
    let x = data.values();
    let (t, n) = x.dim();
    let counts = labels.class_counts();
    let (m, k) = (counts[0] as f64, counts[1] as f64);

    // columns: w (n, free) | γ (free) | slack per sample (t) | v (n)
    let gamma_col = n;
    let slack0 = n + 1;
    let v0 = slack0 + t;
    let n_vars = v0 + n;
    let mut a = Array2::<f64>::zeros((t + 2 * n, n_vars));
    let mut b = vec![-1.0; t + 2 * n];
    for i in 0..t {
        // class 0:  -a·w + γ - y ≤ -1      class 1:  b·w - γ - z ≤ -1
        let sign = if labels.get(i) == 0 { -1.0 } else { 1.0 };
        for j in 0..n {
            a[[i, j]] = sign * x[[i, j]];
        }
        a[[i, gamma_col]] = -sign;
        a[[i, slack0 + i]] = -1.0;
    }
    for j in 0..n {
        let (r1, r2) = (t + 2 * j, t + 2 * j + 1);
        a[[r1, j]] = 1.0;
        a[[r1, v0 + j]] = -1.0;
        a[[r2, j]] = -1.0;
        a[[r2, v0 + j]] = -1.0;
        b[r1] = 0.0;
        b[r2] = 0.0;
    }
    let mut bounds = vec![(0.0, f64::INFINITY); n_vars];
    for bound in bounds.iter_mut().take(n + 1) {
        *bound = (f64::NEG_INFINITY, f64::INFINITY);
    }
    let slack_cost: Vec<f64> = (0..t)
        .map(|i| (1.0 - params.lambda) / if labels.get(i) == 0 { m } else { k })
        .collect();

    let (lambda, alpha) = (params.lambda, params.alpha_cc);
    let concave = |slacks: &[f64], v: &[f64]| -> f64 {
        let fit: f64 = slacks.iter().zip(&slack_cost).map(|(s, c)| s * c).sum();
        let sparse: f64 = v.iter().map(|vj| 1.0 - (-alpha * vj).exp()).sum();
        fit + lambda * sparse
    };

    let mut v = vec![1.0; n];
    let mut w = vec![0.0; n];
    let mut gamma = 0.0;
    let mut objectives = Vec::new();
    let mut iterations = 0;
    while iterations < params.max_iter {
        let mut c = vec![0.0; n_vars];
        c[slack0..v0].copy_from_slice(&slack_cost);
        for j in 0..n {
            c[v0 + j] = lambda * alpha * (-alpha * v[j]).exp();
        }
        let problem = LpProblem { c, a_ub: a.clone(), b_ub: b.clone(), bounds: bounds.clone() };
        let sol = solve_lp(&problem)?;
        iterations += 1;
        if sol.status != LpStatus::Optimal {
            return Err(FsError::Numerical(format!(
                "fsv linear program returned {:?} at step {iterations}",
                sol.status
            )));
        }
        w.copy_from_slice(&sol.x[..n]);
        gamma = sol.x[gamma_col];
        let next: Vec<f64> = sol.x[v0..].iter().map(|&vj| vj.max(0.0)).collect();
        objectives.push(concave(&sol.x[slack0..v0], &next));
        let change = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if change < params.tol {
            break;
        }
    }
    Ok(FsvFit { w, gamma, v, objectives, iterations })
}

/// FSV ranking by the final `v` (higher is better).
pub fn fsv_rank(data: &DataMatrix, labels: &LabelVector, params: &FsvParams) -> Result<FeatureRanking> {
    let fit = fsv_fit(data, labels, params)?;
    let mut desc = Method::Fsv.descriptor().with_iterations(fit.iterations);
    desc.params = [
        ("lambda".to_string(), params.lambda.to_string()),
        ("alpha".to_string(), params.alpha_cc.to_string()),
        ("max_iter".to_string(), params.max_iter.to_string()),
        ("tol".to_string(), params.tol.to_string()),
    ]
    .into();
    ranking_from_scores(FeatureScores::higher(fit.v), desc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separable_line() {
        let d = DataMatrix::from_columns(&[vec![-1.0, -1.0, 1.0, 1.0]]).unwrap();
        let l = LabelVector::new(vec![0, 0, 1, 1]);
        let fit = fsv_fit(&d, &l, &FsvParams::default()).unwrap();
        // class 0 sits on the positive side: w = -1, γ = 0, no slack
        assert!((fit.w[0] + 1.0).abs() < 1e-9);
        assert!(fit.gamma.abs() < 1e-9);
        assert!((fit.v[0] - 1.0).abs() < 1e-9);
        let last = *fit.objectives.last().unwrap();
        assert!((last - 0.5 * (1.0 - (-5.0f64).exp())).abs() < 1e-9);
    }

    #[test]
    fn objective_never_increases() {
        let d = DataMatrix::from_columns(&[
            vec![-1.0, -0.5, -0.9, 0.2, 1.0, 0.7, 1.2, -0.1],
            vec![0.3, -0.2, 0.1, 0.4, -0.3, 0.2, 0.0, -0.4],
            vec![1.0, 0.0, 0.5, 0.5, 0.0, 1.0, 0.5, 0.5],
        ])
        .unwrap();
        let l = LabelVector::new(vec![0, 0, 0, 0, 1, 1, 1, 1]);
        let fit = fsv_fit(&d, &l, &FsvParams::default()).unwrap();
        for pair in fit.objectives.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-9, "{:?}", fit.objectives);
        }
    }

    #[test]
    fn rejects_bad_lambda() {
        let d = DataMatrix::from_columns(&[vec![0.0, 1.0]]).unwrap();
        let l = LabelVector::new(vec![0, 1]);
        let p = FsvParams { lambda: 1.0, ..FsvParams::default() };
        assert!(matches!(fsv_fit(&d, &l, &p), Err(FsError::InvalidParam { .. })));
    }
}
