//! Multi-class Relief-F.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{FsError, Result};
use crate::numerics::stats::pairwise_sq_dists;
use crate::pipeline::require_labels;
use crate::types::{DataMatrix, FeatureScores, LabelVector};

/// Which samples act as probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    /// Every sample once, in index order.
    AllSamples,
    /// `i` probes drawn uniformly with replacement from the seeded RNG.
    Sampled(usize),
}

#[derive(Debug, Clone)]
pub struct ReliefParams {
    /// Neighbours per class; truncated to what each class can provide.
    pub k: usize,
    pub sweep: Sweep,
    pub seed: u64,
}

impl Default for ReliefParams {
    fn default() -> Self {
        Self {
            k: 10,
            sweep: Sweep::AllSamples,
            seed: 0,
        }
    }
}

/// k nearest samples of class `class` to `probe`, by (distance, index).
fn nearest(
    dists: &ndarray::Array2<f64>,
    by_class: &[Vec<usize>],
    probe: usize,
    class: usize,
    k: usize,
) -> Vec<usize> {
    let mut cand: Vec<usize> = by_class[class]
        .iter()
        .copied()
        .filter(|&s| s != probe)
        .collect();
    cand.sort_by(|&a, &b| {
        dists[[probe, a]]
            .total_cmp(&dists[[probe, b]])
            .then(a.cmp(&b))
    });
    cand.truncate(k);
    cand
}

/// Relief-F feature weights in `[-1, 1]`.
///
/// Per probe `x`: subtract the mean range-normalized difference to its `k`
/// nearest hits and add, for every other class `c`, the mean difference to
/// its `k` nearest misses of class `c` weighted by `P(c) / (1 - P(class(x)))`.
/// Everything is divided by the number of probes.
pub fn relief_f(
    data: &DataMatrix,
    labels: &LabelVector,
    params: &ReliefParams,
) -> Result<FeatureScores> {
    let labels = require_labels("relieff", data, Some(labels))?;
    if params.k < 1 {
        return Err(FsError::InvalidArgument("relieff needs k >= 1".into()));
    }
    let t = data.n_samples();
    let n = data.n_features();
    let x = data.values();
    let y = labels.as_slice();
    let n_classes = labels.n_classes();

    let probes: Vec<usize> = match params.sweep {
        Sweep::AllSamples => (0..t).collect(),
        Sweep::Sampled(i) => {
            if i == 0 {
                return Err(FsError::InvalidArgument(
                    "relieff needs at least one probe".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            (0..i).map(|_| rng.random_range(0..t)).collect()
        }
    };
    let m = probes.len() as f64;

    let range: Vec<f64> = (0..n)
        .map(|j| {
            let col = x.column(j);
            let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
            hi - lo
        })
        .collect();
    let prior: Vec<f64> = labels
        .class_counts()
        .iter()
        .map(|&c| c as f64 / t as f64)
        .collect();
    let mut by_class = vec![Vec::new(); n_classes];
    for (i, &l) in y.iter().enumerate() {
        by_class[l].push(i);
    }
    let dists = pairwise_sq_dists(x);

    let mut w = vec![0.0; n];
    let mut acc = vec![0.0; n];
    for &p in &probes {
        let cp = y[p];
        let hits = nearest(&dists, &by_class, p, cp, params.k);
        if !hits.is_empty() {
            acc.iter_mut().for_each(|v| *v = 0.0);
            for &h in &hits {
                for j in 0..n {
                    if range[j] > 0.0 {
                        acc[j] += (x[[p, j]] - x[[h, j]]).abs() / range[j];
                    }
                }
            }
            let k = hits.len() as f64;
            for j in 0..n {
                w[j] -= acc[j] / k / m;
            }
        }
        for c in (0..n_classes).filter(|&c| c != cp) {
            let misses = nearest(&dists, &by_class, p, c, params.k);
            if misses.is_empty() {
                continue;
            }
            let weight = prior[c] / (1.0 - prior[cp]);
            acc.iter_mut().for_each(|v| *v = 0.0);
            for &q in &misses {
                for j in 0..n {
                    if range[j] > 0.0 {
                        acc[j] += (x[[p, j]] - x[[q, j]]).abs() / range[j];
                    }
                }
            }
            let k = misses.len() as f64;
            for j in 0..n {
                w[j] += weight * acc[j] / k / m;
            }
        }
    }
    Ok(FeatureScores::higher(w))
}
