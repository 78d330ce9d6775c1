//! Linear soft-margin SVM trained in the dual.
//!
//! Solves `min ½||w||² + C Σ max(0, 1 - yᵢ(wᵀxᵢ + b))` with an unregularized
//! bias. The dual carries the equality constraint `Σ αᵢ yᵢ = 0`, so each
//! coordinate step moves a pair `(i, j)`: the sweep visits `i` in cyclic
//! order and pairs it with its most violating partner.

use ndarray::{Array2, ArrayView2};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FsError, Result};
use crate::types::{DataMatrix, LabelVector};

#[derive(Debug, Clone)]
pub struct SvmParams {
    pub c_reg: f64,
    /// Relative duality-gap target.
    pub tol: f64,
    pub max_epochs: usize,
    /// When set, the visiting order is reshuffled every epoch.
    pub shuffle_seed: Option<u64>,
}

impl SvmParams {
    pub fn new(c_reg: f64) -> Self {
        Self {
            c_reg,
            tol: 1e-6,
            max_epochs: 2000,
            shuffle_seed: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SvmModel {
    pub w: Vec<f64>,
    pub b: f64,
    pub c_reg: f64,
    pub epochs: usize,
    /// Final duality gap.
    pub gap: f64,
}

impl SvmModel {
    pub fn decision(&self, x: &[f64]) -> f64 {
        self.w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + self.b
    }

    /// `½||w||² + C Σ hinge` on the given data.
    pub fn primal_objective(&self, x: ArrayView2<'_, f64>, y: &[f64]) -> f64 {
        0.5 * self.w.iter().map(|v| v * v).sum::<f64>() + self.c_reg * self.hinge_loss(x, y)
    }

    pub fn hinge_loss(&self, x: ArrayView2<'_, f64>, y: &[f64]) -> f64 {
        x.rows()
            .into_iter()
            .zip(y)
            .map(|(row, &yi)| {
                let f = self.w.iter().zip(row.iter()).map(|(a, b)| a * b).sum::<f64>() + self.b;
                (1.0 - yi * f).max(0.0)
            })
            .sum()
    }
}

/// Class 0 → -1, class 1 → +1.
pub fn signed_labels(labels: &LabelVector) -> Vec<f64> {
    labels
        .as_slice()
        .iter()
        .map(|&l| if l == 0 { -1.0 } else { 1.0 })
        .collect()
}

/// Trains on a two-class dataset.
pub fn train_linear_svm(data: &DataMatrix, labels: &LabelVector, c_reg: f64) -> Result<SvmModel> {
    if labels.n_classes() != 2 {
        return Err(FsError::NotBinary {
            method: "linear SVM".into(),
            classes: labels.n_classes(),
        });
    }
    if labels.len() != data.n_samples() {
        return Err(FsError::DimensionMismatch(format!(
            "{} labels for {} samples",
            labels.len(),
            data.n_samples()
        )));
    }
    train_svm(data.values(), &signed_labels(labels), &SvmParams::new(c_reg))
}

/// Trains on `x` with `±1` targets `y`.
pub fn train_svm(x: ArrayView2<'_, f64>, y: &[f64], params: &SvmParams) -> Result<SvmModel> {
    let (t, n) = x.dim();
    if y.len() != t {
        return Err(FsError::DimensionMismatch(format!(
            "{t} samples but {} targets",
            y.len()
        )));
    }
    if !(params.c_reg > 0.0) || !params.c_reg.is_finite() {
        return Err(FsError::InvalidArgument(format!(
            "SVM regularization must be > 0, got {}",
            params.c_reg
        )));
    }
    if !(y.iter().any(|&v| v > 0.0) && y.iter().any(|&v| v < 0.0)) {
        return Err(FsError::InvalidArgument("SVM needs both classes".into()));
    }
    let c = params.c_reg;

    let mut gram = Array2::<f64>::zeros((t, t));
    for i in 0..t {
        for j in i..t {
            let v = x.row(i).dot(&x.row(j));
            gram[[i, j]] = v;
            gram[[j, i]] = v;
        }
    }

    let mut alpha = vec![0.0; t];
    // f[t] = -y_t * grad_t, with grad_t = y_t (Σ α_s y_s K_ts) - 1
    let mut f: Vec<f64> = y.to_vec();
    let in_up = |a: f64, yi: f64| (yi > 0.0 && a < c) || (yi < 0.0 && a > 0.0);
    let in_low = |a: f64, yi: f64| (yi > 0.0 && a > 0.0) || (yi < 0.0 && a < c);
    const VIOLATION_EPS: f64 = 1e-12;

    let mut order: Vec<usize> = (0..t).collect();
    let mut rng = params.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
    let mut epochs = 0;
    let mut w = vec![0.0; n];
    let mut b = 0.0;
    let mut gap = f64::INFINITY;

    while epochs < params.max_epochs {
        epochs += 1;
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let mut moved = false;
        for &i in &order {
            // pair i with its most violating partner
            let pair = if in_up(alpha[i], y[i]) {
                (0..t)
                    .filter(|&j| in_low(alpha[j], y[j]))
                    .min_by(|&a, &b| f[a].total_cmp(&f[b]))
                    .filter(|&j| f[i] - f[j] > VIOLATION_EPS)
                    .map(|j| (i, j))
            } else {
                None
            };
            let pair = pair.or_else(|| {
                if in_low(alpha[i], y[i]) {
                    (0..t)
                        .filter(|&j| in_up(alpha[j], y[j]))
                        .max_by(|&a, &b| f[a].total_cmp(&f[b]).then(b.cmp(&a)))
                        .filter(|&j| f[j] - f[i] > VIOLATION_EPS)
                        .map(|j| (j, i))
                } else {
                    None
                }
            });
            let Some((up, low)) = pair else { continue };
            // α_up += y_up τ, α_low -= y_low τ, τ ≥ 0
            let cap_up = if y[up] > 0.0 { c - alpha[up] } else { alpha[up] };
            let cap_low = if y[low] > 0.0 { alpha[low] } else { c - alpha[low] };
            let cap = cap_up.min(cap_low);
            let eta = gram[[up, up]] + gram[[low, low]] - 2.0 * gram[[up, low]];
            let tau = if eta > 1e-12 {
                ((f[up] - f[low]) / eta).min(cap)
            } else {
                cap
            };
            if tau <= 0.0 {
                continue;
            }
            alpha[up] += y[up] * tau;
            alpha[low] -= y[low] * tau;
            alpha[up] = alpha[up].clamp(0.0, c);
            alpha[low] = alpha[low].clamp(0.0, c);
            for s in 0..t {
                f[s] -= tau * (gram[[s, up]] - gram[[s, low]]);
            }
            moved = true;
        }

        w.iter_mut().for_each(|v| *v = 0.0);
        for s in 0..t {
            if alpha[s] != 0.0 {
                let coef = alpha[s] * y[s];
                for (wk, xk) in w.iter_mut().zip(x.row(s).iter()) {
                    *wk += coef * xk;
                }
            }
        }
        let scores: Vec<f64> = (0..t).map(|s| x.row(s).dot(&ndarray::ArrayView1::from(&w))).collect();
        b = best_bias(&alpha, y, &f, &scores, c);
        let norm_sq = w.iter().map(|v| v * v).sum::<f64>();
        let hinge = hinge_at(&scores, y, b);
        let primal = 0.5 * norm_sq + c * hinge;
        let dual = alpha.iter().sum::<f64>() - 0.5 * norm_sq;
        gap = primal - dual;
        if gap <= params.tol * primal.abs().max(1.0) || !moved {
            break;
        }
    }

    Ok(SvmModel {
        w,
        b,
        c_reg: c,
        epochs,
        gap,
    })
}

fn hinge_at(scores: &[f64], y: &[f64], b: f64) -> f64 {
    scores
        .iter()
        .zip(y)
        .map(|(s, yi)| (1.0 - yi * (s + b)).max(0.0))
        .sum()
}

/// Bias from the KKT conditions, replaced by the exact minimizer of the
/// hinge sum when that is strictly better.
fn best_bias(alpha: &[f64], y: &[f64], f: &[f64], scores: &[f64], c: f64) -> f64 {
    let free: Vec<f64> = (0..alpha.len())
        .filter(|&s| alpha[s] > 1e-12 * c && alpha[s] < c * (1.0 - 1e-12))
        .map(|s| f[s])
        .collect();
    let kkt_b = if free.is_empty() {
        let up = (0..alpha.len())
            .filter(|&s| (y[s] > 0.0 && alpha[s] < c) || (y[s] < 0.0 && alpha[s] > 0.0))
            .map(|s| f[s])
            .fold(f64::NEG_INFINITY, f64::max);
        let low = (0..alpha.len())
            .filter(|&s| (y[s] > 0.0 && alpha[s] > 0.0) || (y[s] < 0.0 && alpha[s] < c))
            .map(|s| f[s])
            .fold(f64::INFINITY, f64::min);
        if up.is_finite() && low.is_finite() {
            0.5 * (up + low)
        } else if up.is_finite() {
            up
        } else {
            low
        }
    } else {
        free.iter().sum::<f64>() / free.len() as f64
    };
    let exact = exact_bias(scores, y);
    let h_kkt = hinge_at(scores, y, kkt_b);
    let h_exact = hinge_at(scores, y, exact);
    if h_exact < h_kkt - 1e-15 * (1.0 + h_kkt) {
        exact
    } else {
        kkt_b
    }
}

/// Minimizer of the convex piecewise-linear `b ↦ Σ max(0, 1 - yᵢ(sᵢ + b))`;
/// midpoint of the flat bottom when it is an interval.
fn exact_bias(scores: &[f64], y: &[f64]) -> f64 {
    let mut bp: Vec<(f64, bool)> = scores
        .iter()
        .zip(y)
        .map(|(&s, &yi)| (yi - s, yi > 0.0))
        .collect();
    bp.sort_by(|a, b| a.0.total_cmp(&b.0));
    let k = bp.len();
    let total_pos = bp.iter().filter(|p| p.1).count() as f64;
    let mut values = Vec::with_capacity(k);
    let mut h = hinge_at(scores, y, bp[0].0);
    values.push(h);
    let mut pos_le = if bp[0].1 { 1.0 } else { 0.0 };
    let mut neg_le = if bp[0].1 { 0.0 } else { 1.0 };
    for idx in 1..k {
        let slope = -(total_pos - pos_le) + neg_le;
        h += slope * (bp[idx].0 - bp[idx - 1].0);
        values.push(h);
        if bp[idx].1 {
            pos_le += 1.0;
        } else {
            neg_le += 1.0;
        }
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let thresh = min + 1e-12 * (1.0 + min.abs());
    let first = values.iter().position(|&v| v <= thresh).unwrap_or(0);
    let last = values.iter().rposition(|&v| v <= thresh).unwrap_or(first);
    0.5 * (bp[first].0 + bp[last].0)
}
