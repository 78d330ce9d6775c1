use crate::error::Result;
use crate::pipeline::require_labels;
use crate::types::{DataMatrix, FeatureScores, LabelVector, SENTINEL};

/// Fisher score: between-class scatter over pooled within-class variance.
///
/// `F_j = Σ_c T_c (μ_cj - μ_j)² / Σ_c T_c σ²_cj` with population variances.
/// A vanishing denominator gives 0 when the numerator also vanishes, and the
/// `1e12` sentinel otherwise.
pub fn fisher_score(data: &DataMatrix, labels: &LabelVector) -> Result<FeatureScores> {
    let labels = require_labels("fisher", data, Some(labels))?;
    let c = labels.n_classes();
    let counts: Vec<f64> = labels.class_counts().iter().map(|&k| k as f64).collect();
    let t = data.n_samples() as f64;
    let y = labels.as_slice();

    let n = data.n_features();
    let x = data.values();

    // row-major passes; per-feature sums still accumulate in sample order
    let mut sums = vec![0.0; c * n];
    for (row, &l) in x.rows().into_iter().zip(y) {
        for (s, v) in sums[l * n..(l + 1) * n].iter_mut().zip(row) {
            *s += v;
        }
    }
    let means: Vec<f64> = sums
        .chunks(n)
        .zip(&counts)
        .flat_map(|(s, k)| s.iter().map(move |v| v / k))
        .collect();
    let mut within = vec![0.0; n];
    for (row, &l) in x.rows().into_iter().zip(y) {
        for ((w, v), m) in within.iter_mut().zip(row).zip(&means[l * n..(l + 1) * n]) {
            *w += (v - m) * (v - m);
        }
    }

    let scores = (0..n)
        .map(|j| {
            let mean = (0..c).map(|k| sums[k * n + j]).sum::<f64>() / t;
            let between: f64 = (0..c)
                .map(|k| counts[k] * (means[k * n + j] - mean) * (means[k * n + j] - mean))
                .sum();
            // Σ_c T_c σ²_c equals the pooled sum of squared deviations
            if within[j] < 1e-12 {
                if between < 1e-12 {
                    0.0
                } else {
                    SENTINEL
                }
            } else {
                between / within[j]
            }
        })
        .collect();
    Ok(FeatureScores::higher(scores))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels() -> LabelVector {
        LabelVector::new(vec![0, 0, 1, 1])
    }

    #[test]
    fn hand_computed() {
        let d = DataMatrix::from_columns(&[
            vec![0.0, 2.0, 4.0, 6.0],
            vec![3.0, 3.0, 3.0, 3.0],
            vec![0.0, 2.0, 0.0, 2.0],
        ])
        .unwrap();
        let s = fisher_score(&d, &labels()).unwrap();
        assert!((s.scores[0] - 4.0).abs() < 1e-12);
        assert_eq!(s.scores[1], 0.0);
        assert_eq!(s.scores[2], 0.0);
    }

    #[test]
    fn perfectly_separated_hits_sentinel() {
        let d = DataMatrix::from_columns(&[vec![1.0, 1.0, 5.0, 5.0]]).unwrap();
        assert_eq!(fisher_score(&d, &labels()).unwrap().scores[0], SENTINEL);
    }

    #[test]
    fn single_class_is_rejected() {
        let d = DataMatrix::from_columns(&[vec![1.0, 2.0, 3.0, 4.0]]).unwrap();
        assert!(fisher_score(&d, &LabelVector::new(vec![0; 4])).is_err());
    }
}
