//! Column-permutation check shared by the equivariance tests.

use fslib::{rank, DataMatrix, Direction, LabelVector, Method, Params};

use super::*;

/// Relative tolerance for score agreement. Iterative solvers (lasso, SVM,
/// simplex) visit coordinates in column order, so their results agree only
/// to solver precision; the SVM stops at a 1e-6 relative duality gap.
fn tolerance(m: Method) -> f64 {
    match m {
        Method::Mcfs | Method::SvmRfe | Method::L0 | Method::Fsv => 1e-5,
        _ => 1e-10,
    }
}

pub fn equivariance_failures(m: Method, data_seed: u64) -> Vec<String> {
    let rows = random_rows(20, 8, data_seed);
    let labels = LabelVector::new(random_labels(20, 2, data_seed + 1));
    let d = DataMatrix::from_rows(&rows).unwrap();
    let params = Params::new();
    let base = rank(m, &d, Some(&labels), &params, Some(0)).unwrap();
    let mut failures = Vec::new();
    for p in 0..5 {
        let perm = random_permutation(8, 1000 * data_seed + p);
        let dp = DataMatrix::from_rows(&permute_columns(&rows, &perm)).unwrap();
        let r = rank(m, &dp, Some(&labels), &params, Some(0)).unwrap();
        let check = if m == Method::Mrmr {
            mrmr_equivariance(&base.order, &r.order, &perm, &rows, labels.as_slice())
        } else {
            check_equivariance(
                &base.scores.scores,
                &base.order,
                &r.scores.scores,
                &r.order,
                &perm,
                base.scores.direction == Direction::HigherBetter,
                tolerance(m),
            )
        };
        if let Err(e) = check {
            failures.push(format!("{m} perm {p}: {e}"));
        }
    }
    failures
}

/// mRMR picks among exactly tied candidates by index, so under a column
/// permutation only the sequence of criterion values is invariant; check
/// that the permuted run is a valid greedy trace on the original columns.
fn mrmr_equivariance(
    base: &[usize],
    permuted: &[usize],
    perm: &[usize],
    rows: &[Vec<f64>],
    labels: &[usize],
) -> Result<(), String> {
    let n = perm.len();
    let bins = 5;
    let codes: Vec<Vec<usize>> = (0..n)
        .map(|j| bin_codes(&rows.iter().map(|r| r[j]).collect::<Vec<_>>(), bins))
        .collect();
    let rel: Vec<f64> = codes.iter().map(|c| brute_mi(c, labels)).collect();
    let mapped: Vec<usize> = permuted.iter().map(|&o| perm[o]).collect();
    for trace in [base, &mapped[..]] {
        for step in 0..n {
            let chosen = &trace[..step];
            let crit = |j: usize| {
                if step == 0 {
                    rel[j]
                } else {
                    rel[j] - chosen.iter().map(|&s| brute_mi(&codes[j], &codes[s])).sum::<f64>() / step as f64
                }
            };
            let best = (0..n)
                .filter(|j| !chosen.contains(j))
                .map(crit)
                .fold(f64::NEG_INFINITY, f64::max);
            if crit(trace[step]) < best - 1e-12 {
                return Err(format!("step {step} of {trace:?} is not a greedy choice"));
            }
        }
    }
    Ok(())
}
