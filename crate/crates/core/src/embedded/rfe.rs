use crate::error::{FsError, Result};
use crate::methods::Method;
use crate::numerics::svm::{signed_labels, train_svm, SvmParams};
use crate::pipeline::{require_binary, standardize};
use crate::types::{DataMatrix, FeatureRanking, FeatureScores, LabelVector};

#[derive(Debug, Clone)]
pub struct RfeParams {
    pub c_reg: f64,
    /// Fraction of surviving features dropped per round (at least one).
    /// `None`: one per round for `n <= 200`, half per round otherwise.
    pub elim_fraction: Option<f64>,
}

impl Default for RfeParams {
    fn default() -> Self {
        Self {
            c_reg: 1.0,
            elim_fraction: None,
        }
    }
}

/// SVM recursive feature elimination.
///
/// Repeatedly trains a linear SVM on the surviving (standardized) features and
/// drops the batch with the smallest `w_j²`. The ranking is the reverse
/// elimination order. Stored scores are `-(elimination position)` with
/// [`crate::Direction::LowerBetter`], so they reproduce the order exactly.
pub fn svm_rfe(data: &DataMatrix, labels: &LabelVector, params: &RfeParams) -> Result<FeatureRanking> {
    let labels = require_binary("svmrfe", data, Some(labels))?;
    let n = data.n_features();
    let fraction = match params.elim_fraction {
        Some(f) if f > 0.0 && f <= 1.0 => f,
        Some(f) => {
            return Err(FsError::InvalidArgument(format!(
                "elim_fraction must be in (0, 1], got {f}"
            )))
        }
        None if n <= 200 => 0.0,
        None => 0.5,
    };
    let x = standardize(data);
    let y = signed_labels(labels);
    let svm = SvmParams::new(params.c_reg);

    let mut surviving: Vec<usize> = (0..n).collect();
    let mut eliminated: Vec<usize> = Vec::with_capacity(n);
    let mut rounds = 0;
    while !surviving.is_empty() {
        rounds += 1;
        if surviving.len() == 1 {
            eliminated.push(surviving[0]);
            break;
        }
        let sub = x.select_columns(&surviving);
        let model = train_svm(sub.values(), &y, &svm)?;
        let mut by_weight: Vec<(usize, f64)> = surviving
            .iter()
            .zip(&model.w)
            .map(|(&f, w)| (f, w * w))
            .collect();
        // smallest weight first; among ties the higher index goes first so the
        // final ranking lists tied features in ascending index order
        by_weight.sort_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)));
        let batch = ((fraction * surviving.len() as f64).floor() as usize).max(1);
        let dropped: Vec<usize> = by_weight[..batch].iter().map(|p| p.0).collect();
        eliminated.extend(&dropped);
        surviving.retain(|f| !dropped.contains(f));
    }

    let mut scores = vec![0.0; n];
    for (pos, &f) in eliminated.iter().enumerate() {
        scores[f] = -(pos as f64);
    }
    eliminated.reverse();
    let mut desc = Method::SvmRfe.descriptor().with_iterations(rounds);
    desc.params = [
        ("C".to_string(), params.c_reg.to_string()),
        (
            "elim_fraction".to_string(),
            params
                .elim_fraction
                .map_or_else(|| "auto".to_string(), |f| f.to_string()),
        ),
    ]
    .into();
    Ok(FeatureRanking {
        order: eliminated,
        scores: FeatureScores::lower(scores),
        method: desc,
        seed: None,
    })
}
