//! Heat-kernel k-nearest-neighbour graph and the Laplacian Score.

use ndarray::Array2;

use crate::error::{FsError, Result};
use crate::numerics::stats::pairwise_sq_dists;
use crate::types::{DataMatrix, FeatureScores, SENTINEL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeatWidth {
    /// Mean of the nonzero pairwise squared distances.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphParams {
    pub k_neighbors: usize,
    pub heat_t: HeatWidth,
}

impl Default for GraphParams {
    fn default() -> Self {
        Self {
            k_neighbors: 5,
            heat_t: HeatWidth::Auto,
        }
    }
}

/// Sample affinity graph `S` with its degree vector `D 1`.
#[derive(Debug, Clone)]
pub struct Affinity {
    pub weights: Array2<f64>,
    pub degrees: Vec<f64>,
}

impl Affinity {
    /// `L = D - S`.
    pub fn laplacian(&self) -> Array2<f64> {
        let mut l = self.weights.mapv(|w| -w);
        for (i, d) in self.degrees.iter().enumerate() {
            l[[i, i]] += d;
        }
        l
    }
}

/// OR-symmetrized kNN graph with heat-kernel weights `exp(-d²/t)`.
/// Neighbour ties are broken by ascending sample index.
pub fn knn_affinity(data: &DataMatrix, params: &GraphParams) -> Result<Affinity> {
    let t = data.n_samples();
    let k = params.k_neighbors;
    if k < 1 || k >= t {
        return Err(FsError::InvalidArgument(format!(
            "k_neighbors must be in [1, {}), got {k}",
            t
        )));
    }
    let d2 = pairwise_sq_dists(data.values());
    let width = match params.heat_t {
        HeatWidth::Fixed(w) if w > 0.0 && w.is_finite() => w,
        HeatWidth::Fixed(w) => {
            return Err(FsError::InvalidArgument(format!(
                "heat kernel width must be > 0, got {w}"
            )))
        }
        HeatWidth::Auto => {
            let (sum, count) = (0..t)
                .flat_map(|i| ((i + 1)..t).map(move |j| (i, j)))
                .map(|(i, j)| d2[[i, j]])
                .filter(|&v| v > 0.0)
                .fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
            if count == 0 {
                1.0
            } else {
                sum / count as f64
            }
        }
    };

    let mut adj = Array2::<bool>::from_elem((t, t), false);
    for i in 0..t {
        let mut cand: Vec<usize> = (0..t).filter(|&j| j != i).collect();
        cand.sort_by(|&a, &b| d2[[i, a]].total_cmp(&d2[[i, b]]).then(a.cmp(&b)));
        for &j in &cand[..k] {
            adj[[i, j]] = true;
            adj[[j, i]] = true;
        }
    }
    let weights = Array2::from_shape_fn((t, t), |(i, j)| {
        if adj[[i, j]] {
            (-d2[[i, j]] / width).exp()
        } else {
            0.0
        }
    });
    let degrees = (0..t).map(|i| weights.row(i).sum()).collect();
    Ok(Affinity { weights, degrees })
}

/// Laplacian Score of every feature (lower is better).
///
/// With `f̃ = f - (fᵀD1 / 1ᵀD1) 1`, the score is `f̃ᵀ L f̃ / f̃ᵀ D f̃`.
/// Constant features get the `1e12` sentinel.
pub fn laplacian_score(data: &DataMatrix, params: &GraphParams) -> Result<FeatureScores> {
    let graph = knn_affinity(data, params)?;
    Ok(FeatureScores::lower(scores_on_graph(data, &graph)))
}

pub(crate) fn scores_on_graph(data: &DataMatrix, graph: &Affinity) -> Vec<f64> {
    let t = data.n_samples();
    let d = &graph.degrees;
    let total: f64 = d.iter().sum();
    (0..data.n_features())
        .map(|j| {
            let f = data.column(j);
            let first = f[0];
            if f.iter().all(|&v| v == first) || total <= 0.0 {
                return SENTINEL;
            }
            let shift = f.iter().zip(d).map(|(a, b)| a * b).sum::<f64>() / total;
            let g: Vec<f64> = f.iter().map(|v| v - shift).collect();
            let denom: f64 = g.iter().zip(d).map(|(a, b)| a * a * b).sum();
            // f̃ᵀ L f̃ = f̃ᵀ D f̃ - f̃ᵀ S f̃
            let mut quad_s = 0.0;
            for a in 0..t {
                let row = graph.weights.row(a);
                let mut s = 0.0;
                for b in 0..t {
                    s += row[b] * g[b];
                }
                quad_s += g[a] * s;
            }
            if denom <= 0.0 {
                return SENTINEL;
            }
            ((denom - quad_s) / denom).max(0.0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_feature_beats_noise() {
        // two tight pairs; feature 0 follows the pair id, feature 1 is noise
        let d = DataMatrix::from_columns(&[
            vec![0.0, 0.01, 1.0, 0.99],
            vec![0.3, -0.5, 0.6, -0.2],
            vec![2.0, 2.0, 2.0, 2.0],
        ])
        .unwrap();
        // the graph sees only the first two features through distances;
        // scores computed on all three
        let gp = GraphParams {
            k_neighbors: 1,
            heat_t: HeatWidth::Auto,
        };
        let s = laplacian_score(&d, &gp).unwrap();
        assert!(s.scores[0] < s.scores[1]);
        assert_eq!(s.scores[2], SENTINEL);
        assert!(s.scores[..2].iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn duplicates_score_equal() {
        let a = vec![0.1, 0.5, 0.2, 0.9, 0.4, 0.7];
        let b = vec![1.0, 0.0, 1.5, 0.3, 0.8, 0.2];
        let d = DataMatrix::from_columns(&[a.clone(), b, a]).unwrap();
        let s = laplacian_score(&d, &GraphParams::default()).unwrap();
        assert_eq!(s.scores[0], s.scores[2]);
    }

    #[test]
    fn k_must_be_below_t() {
        let d = DataMatrix::from_columns(&[vec![0.0, 1.0, 2.0]]).unwrap();
        let gp = GraphParams {
            k_neighbors: 3,
            ..GraphParams::default()
        };
        assert!(laplacian_score(&d, &gp).is_err());
    }
}
