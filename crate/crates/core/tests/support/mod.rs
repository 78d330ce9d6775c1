//! Independent reference computations shared by the integration and
//! acceptance tests. The oracles never call into the library's numerics;
//! `equivariance` drives the public ranking entry point.

#![allow(dead_code, clippy::needless_range_loop)]

pub mod equivariance;
pub mod fixtures;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Mutual information in bits from explicit joint and marginal frequency
/// tables.
pub fn brute_mi(x: &[usize], y: &[usize]) -> f64 {
    let n = x.len() as f64;
    let mut joint: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut px: BTreeMap<usize, f64> = BTreeMap::new();
    let mut py: BTreeMap<usize, f64> = BTreeMap::new();
    for (&a, &b) in x.iter().zip(y) {
        *joint.entry((a, b)).or_default() += 1.0 / n;
        *px.entry(a).or_default() += 1.0 / n;
        *py.entry(b).or_default() += 1.0 / n;
    }
    joint
        .iter()
        .map(|(&(a, b), &p)| p * (p / (px[&a] * py[&b])).log2())
        .sum()
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Row sums of `Σ_{l=1..terms} (rA)^l`, accumulated power by power.
pub fn truncated_series_row_sums(a: &[Vec<f64>], r: f64, terms: usize) -> Vec<f64> {
    let n = a.len();
    let ra: Vec<Vec<f64>> = a.iter().map(|row| row.iter().map(|v| r * v).collect()).collect();
    let mut power = ra.clone();
    let mut sums = vec![0.0; n];
    for l in 1..=terms {
        for i in 0..n {
            sums[i] += power[i].iter().sum::<f64>();
        }
        if l < terms {
            power = matmul(&power, &ra);
        }
    }
    sums
}

/// Dense Gaussian elimination with full pivoting; `None` when singular.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (mut pi, mut pj, mut best) = (k, k, 0.0);
        for i in k..n {
            for j in k..n {
                if a[i][j].abs() > best {
                    best = a[i][j].abs();
                    pi = i;
                    pj = j;
                }
            }
        }
        if best < 1e-12 {
            return None;
        }
        a.swap(k, pi);
        b.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        perm.swap(k, pj);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut y = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * y[j]).sum();
        y[k] = (b[k] - s) / a[k][k];
    }
    let mut x = vec![0.0; n];
    for k in 0..n {
        x[perm[k]] = y[k];
    }
    Some(x)
}

/// Minimum of `cᵀx` over `A x ≤ b, lo ≤ x ≤ hi` by enumerating every basic
/// point (intersection of `n` active constraints). Only valid when the
/// optimum is attained at a vertex, i.e. for bounded feasible problems.
pub fn lp_vertex_optimum(
    c: &[f64],
    a: &[Vec<f64>],
    b: &[f64],
    bounds: &[(f64, f64)],
) -> Option<(Vec<f64>, f64)> {
    let n = c.len();
    let mut rows: Vec<(Vec<f64>, f64)> = a.iter().cloned().zip(b.iter().copied()).collect();
    for (j, &(lo, hi)) in bounds.iter().enumerate() {
        let unit = |s: f64| (0..n).map(|k| if k == j { s } else { 0.0 }).collect::<Vec<_>>();
        if lo.is_finite() {
            rows.push((unit(-1.0), -lo));
        }
        if hi.is_finite() {
            rows.push((unit(1.0), hi));
        }
    }
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut pick = vec![0usize; n];
    fn combos(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            combos(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    combos(rows.len(), n, 0, &mut Vec::new(), &mut all);
    for set in all {
        pick.copy_from_slice(&set);
        let m: Vec<Vec<f64>> = pick.iter().map(|&i| rows[i].0.clone()).collect();
        let rhs: Vec<f64> = pick.iter().map(|&i| rows[i].1).collect();
        let Some(x) = gauss_solve(m, rhs) else { continue };
        let feasible = rows
            .iter()
            .all(|(r, bi)| r.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= bi + 1e-9);
        if !feasible {
            continue;
        }
        let obj: f64 = c.iter().zip(&x).map(|(p, q)| p * q).sum();
        if best.as_ref().is_none_or(|(_, o)| obj < *o - 1e-12) {
            best = Some((x, obj));
        }
    }
    best
}

/// `½‖w‖² + C Σ max(0, 1 - y(wᵀx + b))` for two-dimensional inputs.
pub fn svm_primal(points: &[[f64; 2]], y: &[f64], c: f64, w: [f64; 2], b: f64) -> f64 {
    let hinge: f64 = points
        .iter()
        .zip(y)
        .map(|(p, &yi)| (1.0 - yi * (w[0] * p[0] + w[1] * p[1] + b)).max(0.0))
        .sum();
    0.5 * (w[0] * w[0] + w[1] * w[1]) + c * hinge
}

/// Coarse-to-fine grid search for the minimum of [`svm_primal`] over
/// `(w₁, w₂, b)`.
pub fn svm_grid_oracle(points: &[[f64; 2]], y: &[f64], c: f64) -> f64 {
    let mut center = [0.0f64; 3];
    let mut half = 8.0f64;
    let steps = 20i32;
    let mut best = f64::INFINITY;
    for _ in 0..60 {
        let h = half / steps as f64;
        let mut arg = center;
        for i in -steps..=steps {
            for j in -steps..=steps {
                for k in -steps..=steps {
                    let p = [
                        center[0] + i as f64 * h,
                        center[1] + j as f64 * h,
                        center[2] + k as f64 * h,
                    ];
                    let v = svm_primal(points, y, c, [p[0], p[1]], p[2]);
                    if v < best {
                        best = v;
                        arg = p;
                    }
                }
            }
        }
        center = arg;
        half *= 0.5;
    }
    best
}

/// Laplacian-score quotients computed with explicit dense matrices: OR-kNN
/// heat-kernel graph, `D`, `L = D - S`, degree-weighted centring.
pub fn laplacian_quotients(rows: &[Vec<f64>], k: usize, t: Option<f64>) -> Vec<f64> {
    let m = rows.len();
    let n = rows[0].len();
    let d2 = |a: &Vec<f64>, b: &Vec<f64>| a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>();
    let mut dist = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            dist[i][j] = d2(&rows[i], &rows[j]);
        }
    }
    let t = t.unwrap_or_else(|| {
        let nz: Vec<f64> = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| dist[i][j])
            .filter(|&v| v > 0.0)
            .collect();
        nz.iter().sum::<f64>() / nz.len() as f64
    });
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        let mut others: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        others.sort_by(|&a, &b| dist[i][a].partial_cmp(&dist[i][b]).unwrap().then(a.cmp(&b)));
        for &j in &others[..k] {
            adj[i][j] = true;
            adj[j][i] = true;
        }
    }
    let s: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if adj[i][j] { (-dist[i][j] / t).exp() } else { 0.0 })
                .collect()
        })
        .collect();
    let deg: Vec<f64> = s.iter().map(|r| r.iter().sum()).collect();
    (0..n)
        .map(|f| {
            let col: Vec<f64> = rows.iter().map(|r| r[f]).collect();
            let shift = col.iter().zip(&deg).map(|(a, d)| a * d).sum::<f64>() / deg.iter().sum::<f64>();
            let ft: Vec<f64> = col.iter().map(|v| v - shift).collect();
            let mut num = 0.0;
            let mut den = 0.0;
            for i in 0..m {
                den += ft[i] * ft[i] * deg[i];
                for j in 0..m {
                    let l = if i == j { deg[i] - s[i][j] } else { -s[i][j] };
                    num += ft[i] * l * ft[j];
                }
            }
            num / den
        })
        .collect()
}

/// Between-class over within-class scatter, written out per class.
pub fn fisher_oracle(rows: &[Vec<f64>], labels: &[usize]) -> Vec<f64> {
    let n = rows[0].len();
    let classes = labels.iter().max().unwrap() + 1;
    (0..n)
        .map(|f| {
            let all: Vec<f64> = rows.iter().map(|r| r[f]).collect();
            let mu = all.iter().sum::<f64>() / all.len() as f64;
            let (mut between, mut within) = (0.0, 0.0);
            for c in 0..classes {
                let xs: Vec<f64> = all.iter().zip(labels).filter(|(_, &l)| l == c).map(|(v, _)| *v).collect();
                let nc = xs.len() as f64;
                let mc = xs.iter().sum::<f64>() / nc;
                between += nc * (mc - mu) * (mc - mu);
                within += xs.iter().map(|v| (v - mc) * (v - mc)).sum::<f64>();
            }
            if within < 1e-12 {
                if between < 1e-12 { 0.0 } else { 1e12 }
            } else {
                between / within
            }
        })
        .collect()
}

/// Equal-frequency bin codes written independently of the library: value
/// `v` goes to the number of edges strictly below it, edges being the
/// `ceil(kT/B)`-th order statistics that are strictly increasing and below
/// the column maximum.
pub fn bin_codes(col: &[f64], bins: usize) -> Vec<usize> {
    let mut sorted = col.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let t = sorted.len();
    let max = sorted[t - 1];
    let mut edges: Vec<f64> = Vec::new();
    for k in 1..bins {
        let pos = (k * t).div_ceil(bins);
        let e = sorted[pos - 1];
        if e < max && edges.last().is_none_or(|&l| e > l) {
            edges.push(e);
        }
    }
    col.iter().map(|&v| edges.iter().filter(|&&e| v > e).count()).collect()
}

pub fn random_rows(t: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..t).map(|_| (0..n).map(|_| rng.sample(StandardNormal)).collect()).collect()
}

/// Labels covering every class, in random order.
pub fn random_labels(t: usize, classes: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l: Vec<usize> = (0..t).map(|i| i % classes).collect();
    for i in (1..t).rev() {
        let j = rng.random_range(0..=i);
        l.swap(i, j);
    }
    l
}

pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        p.swap(i, j);
    }
    p
}

pub fn permute_columns(rows: &[Vec<f64>], perm: &[usize]) -> Vec<Vec<f64>> {
    rows.iter().map(|r| perm.iter().map(|&p| r[p]).collect()).collect()
}

/// Checks that scores computed on columns permuted by `perm` (new column `j`
/// is old column `perm[j]`) are the original scores permuted, and that the
/// permuted ranking maps back to an ordering consistent with the original
/// one. Scores closer than `tol` count as tied; between tie groups the
/// top-m sets must agree exactly.
pub fn check_equivariance(
    orig_scores: &[f64],
    orig_order: &[usize],
    perm_scores: &[f64],
    perm_order: &[usize],
    perm: &[usize],
    higher_better: bool,
    tol: f64,
) -> Result<(), String> {
    let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0);
    for (j, &p) in perm.iter().enumerate() {
        if !close(perm_scores[j], orig_scores[p]) {
            return Err(format!(
                "score of permuted column {j} is {}, original column {p} had {}",
                perm_scores[j], orig_scores[p]
            ));
        }
    }
    let mapped: Vec<usize> = perm_order.iter().map(|&o| perm[o]).collect();
    let n = mapped.len();
    for m in 1..n {
        let a = orig_scores[orig_order[m - 1]];
        let b = orig_scores[orig_order[m]];
        let strict = if higher_better { a > b } else { a < b };
        if strict && !close(a, b) {
            let mut x = mapped[..m].to_vec();
            let mut y = orig_order[..m].to_vec();
            x.sort_unstable();
            y.sort_unstable();
            if x != y {
                return Err(format!("top-{m} sets differ: {x:?} vs {y:?}"));
            }
        }
    }
    Ok(())
}
