use ndarray::Array2;

use crate::error::Result;
use crate::methods::Method;
use crate::numerics::svm::{signed_labels, train_svm, SvmParams};
use crate::pipeline::{ranking_from_scores, require_binary, standardize};
use crate::types::{DataMatrix, FeatureRanking, FeatureScores, LabelVector};

#[derive(Debug, Clone)]
pub struct L0Params {
    pub c_reg: f64,
    pub max_iter: usize,
}

impl Default for L0Params {
    fn default() -> Self {
        Self {
            c_reg: 1.0,
            max_iter: 20,
        }
    }
}

/// Final scaling vector `z` and the number of SVM trainings.
#[derive(Debug, Clone)]
pub struct L0Fit {
    pub z: Vec<f64>,
    pub iterations: usize,
}

/// Zero-norm approximation by multiplicative rescaling: train on `X diag(z)`,
/// set `z ← z ∘ |w|`, until `z` stops moving (`< 1e-8` in ∞-norm).
pub fn l0_fit(data: &DataMatrix, labels: &LabelVector, params: &L0Params) -> Result<L0Fit> {
    let labels = require_binary("l0", data, Some(labels))?;
    let x = standardize(data).into_values();
    let (t, n) = x.dim();
    let y = signed_labels(labels);
    let svm = SvmParams::new(params.c_reg);
    let mut z = vec![1.0; n];
    let mut iterations = 0;
    let mut scaled = Array2::<f64>::zeros((t, n));
    while iterations < params.max_iter {
        for ((i, j), v) in scaled.indexed_iter_mut() {
            *v = x[[i, j]] * z[j];
        }
        let model = train_svm(scaled.view(), &y, &svm)?;
        iterations += 1;
        let mut change = 0.0f64;
        for (zj, wj) in z.iter_mut().zip(&model.w) {
            let next = *zj * wj.abs();
            change = change.max((next - *zj).abs());
            *zj = next;
        }
        if change < 1e-8 {
            break;
        }
    }
    Ok(L0Fit { z, iterations })
}

/// Ranking by the final `z` (higher is better).
pub fn l0_fs(data: &DataMatrix, labels: &LabelVector, params: &L0Params) -> Result<FeatureRanking> {
    let fit = l0_fit(data, labels, params)?;
    let mut desc = Method::L0.descriptor().with_iterations(fit.iterations);
    desc.params = [
        ("C".to_string(), params.c_reg.to_string()),
        ("max_iter".to_string(), params.max_iter.to_string()),
    ]
    .into();
    ranking_from_scores(FeatureScores::higher(fit.z), desc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weight_is_absorbing() {
        // feature 1 is constant, so it standardizes to zeros and w_1 = 0
        let d = DataMatrix::from_columns(&[
            vec![-1.0, -0.8, -1.2, 1.0, 0.9, 1.1],
            vec![3.0; 6],
        ])
        .unwrap();
        let l = LabelVector::new(vec![0, 0, 0, 1, 1, 1]);
        let fit = l0_fit(&d, &l, &L0Params::default()).unwrap();
        assert_eq!(fit.z[1], 0.0);
        assert!(fit.z[0] > 0.0);
    }

    #[test]
    fn duplicated_columns_stay_equal() {
        let a = vec![-1.0, -0.3, -1.2, 1.0, 0.4, 1.1, -0.2, 0.8];
        let b = vec![0.2, -0.4, 0.1, 0.3, -0.1, -0.2, 0.5, 0.0];
        let d = DataMatrix::from_columns(&[a.clone(), b, a]).unwrap();
        let l = LabelVector::new(vec![0, 0, 0, 1, 1, 1, 0, 1]);
        let fit = l0_fit(&d, &l, &L0Params::default()).unwrap();
        assert!((fit.z[0] - fit.z[2]).abs() <= 1e-9 * fit.z[0].abs().max(1e-300));
        assert!(fit.z.iter().all(|&v| v >= 0.0));
    }
}
