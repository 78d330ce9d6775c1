//! Seeded synthetic datasets. Labels come in two equal blocks: the first
//! half of the samples is class 0, the second half class 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{FsError, Result};
use crate::types::{DataMatrix, LabelVector};

fn balanced(t: usize) -> Result<LabelVector> {
    if t < 4 || !t.is_multiple_of(2) {
        return Err(FsError::InvalidArgument(format!(
            "sample count must be even and >= 4, got {t}"
        )));
    }
    Ok(LabelVector::new((0..t).map(|i| usize::from(i >= t / 2)).collect()))
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Columns `[x, x]` with `x ~ N(4·class, 1)`: the second feature carries no
/// information beyond the first.
pub fn gen_fig4_redundant(t: usize, seed: u64) -> Result<(DataMatrix, LabelVector)> {
    let labels = balanced(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<f64> = labels
        .as_slice()
        .iter()
        .map(|&c| 4.0 * c as f64 + normal(&mut rng))
        .collect();
    Ok((DataMatrix::from_columns(&[x.clone(), x])?, labels))
}

/// Columns `[x, y]` with `x ~ N(4·class, 1)` and `y ~ N(0, 1)` independent
/// of the class.
pub fn gen_fig4_irrelevant(t: usize, seed: u64) -> Result<(DataMatrix, LabelVector)> {
    let labels = balanced(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(t);
    let mut y = Vec::with_capacity(t);
    for &c in labels.as_slice() {
        x.push(4.0 * c as f64 + normal(&mut rng));
        y.push(normal(&mut rng));
    }
    Ok((DataMatrix::from_columns(&[x, y])?, labels))
}

/// [`gen_fig4_redundant`] plus a third, independent and weaker feature
/// `w ~ N(class, 1)`.
pub fn gen_redundant_with_weak(t: usize, seed: u64) -> Result<(DataMatrix, LabelVector)> {
    let (d, labels) = gen_fig4_redundant(t, seed)?;
    // a separate stream so the first two columns match gen_fig4_redundant
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let w: Vec<f64> = labels
        .as_slice()
        .iter()
        .map(|&c| c as f64 + normal(&mut rng))
        .collect();
    let x = d.column(0).to_vec();
    Ok((DataMatrix::from_columns(&[x.clone(), x, w])?, labels))
}

/// `n` features of which the first `n_informative` are `N(gap·class, 1)` and
/// the rest `N(0, 1)` noise.
pub fn gen_informative(
    t: usize,
    n: usize,
    n_informative: usize,
    gap: f64,
    seed: u64,
) -> Result<(DataMatrix, LabelVector)> {
    let labels = balanced(t)?;
    if n == 0 || n_informative > n {
        return Err(FsError::InvalidArgument(format!(
            "need 1 <= n and n_informative <= n, got n={n}, n_informative={n_informative}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = labels
        .as_slice()
        .iter()
        .map(|&c| {
            (0..n)
                .map(|j| {
                    let shift = if j < n_informative { gap * c as f64 } else { 0.0 };
                    shift + normal(&mut rng)
                })
                .collect()
        })
        .collect();
    Ok((DataMatrix::from_rows(&rows)?, labels))
}

/// Pure noise features with labels `i mod C` that carry no signal.
pub fn gen_random_labels(
    t: usize,
    n: usize,
    n_classes: usize,
    seed: u64,
) -> Result<(DataMatrix, LabelVector)> {
    if n_classes < 2 || t < 2 * n_classes || n == 0 {
        return Err(FsError::InvalidArgument(format!(
            "need C >= 2, T >= 2C and n >= 1, got T={t}, n={n}, C={n_classes}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..t).map(|_| (0..n).map(|_| normal(&mut rng)).collect()).collect();
    let labels = LabelVector::new((0..t).map(|i| i % n_classes).collect());
    Ok((DataMatrix::from_rows(&rows)?, labels))
}
