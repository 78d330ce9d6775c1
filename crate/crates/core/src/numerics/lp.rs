//! Dense two-phase primal simplex with Bland's anti-cycling rule.
//!
//! Problems are stated as
//!
//! ```text
//!   minimize    cᵀx
//!   subject to  A_ub x ≤ b_ub
//!               lo ≤ x ≤ hi      (lo may be -∞, hi may be +∞)
//! ```
//!
//! and rewritten into `A u + s = b, u, s ≥ 0` by shifting finite lower bounds,
//! reflecting variables with only an upper bound and splitting free variables.

use ndarray::Array2;

use crate::error::{FsError, Result};

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-9;
const FEAS_EPS: f64 = 1e-9;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone)]
pub struct LpProblem {
    pub c: Vec<f64>,
    /// One row per inequality.
    pub a_ub: Array2<f64>,
    pub b_ub: Vec<f64>,
    /// `(lo, hi)` per variable.
    pub bounds: Vec<(f64, f64)>,
}

impl LpProblem {
    /// All variables nonnegative.
    pub fn nonnegative(c: Vec<f64>, a_ub: Array2<f64>, b_ub: Vec<f64>) -> Self {
        let n = c.len();
        Self {
            c,
            a_ub,
            b_ub,
            bounds: vec![(0.0, f64::INFINITY); n],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.c.len()
    }

    fn check(&self) -> Result<()> {
        let n = self.c.len();
        if self.a_ub.ncols() != n && self.a_ub.nrows() > 0 {
            return Err(FsError::DimensionMismatch(format!(
                "A_ub has {} columns for {n} variables",
                self.a_ub.ncols()
            )));
        }
        if self.a_ub.nrows() != self.b_ub.len() {
            return Err(FsError::DimensionMismatch(format!(
                "A_ub has {} rows, b_ub has {}",
                self.a_ub.nrows(),
                self.b_ub.len()
            )));
        }
        if self.bounds.len() != n {
            return Err(FsError::DimensionMismatch(format!(
                "{} bounds for {n} variables",
                self.bounds.len()
            )));
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo.is_nan() || hi.is_nan() || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return Err(FsError::InvalidArgument(format!("bad bounds on variable {j}")));
            }
            if lo > hi {
                return Err(FsError::InvalidArgument(format!(
                    "variable {j} has lo > hi"
                )));
            }
        }
        let finite = self.c.iter().chain(&self.b_ub).chain(self.a_ub.iter());
        if finite.into_iter().any(|v| !v.is_finite()) {
            return Err(FsError::InvalidArgument("LP data must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal point; empty unless `status == Optimal`.
    pub x: Vec<f64>,
    /// Objective at `x`; NaN unless optimal.
    pub objective: f64,
    pub pivots: usize,
}

impl LpSolution {
    fn with_status(status: LpStatus, pivots: usize) -> Self {
        Self {
            status,
            x: Vec::new(),
            objective: f64::NAN,
            pivots,
        }
    }
}

/// How an original variable is expressed in the nonnegative variables.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// x = offset + u
    Shift { u: usize, offset: f64 },
    /// x = offset - u
    Reflect { u: usize, offset: f64 },
    /// x = u⁺ - u⁻
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// Constraint rows, last column is the right-hand side.
    rows: Array2<f64>,
    /// Reduced-cost row, last entry is minus the objective value.
    cost: Vec<f64>,
    basis: Vec<usize>,
    pivots: usize,
}

enum PhaseOutcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.rows.ncols() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.rows.ncols();
        let p = self.rows[[r, c]];
        for k in 0..width {
            self.rows[[r, k]] /= p;
        }
        for i in 0..self.rows.nrows() {
            if i == r {
                continue;
            }
            let f = self.rows[[i, c]];
            if f == 0.0 {
                continue;
            }
            for k in 0..width {
                self.rows[[i, k]] -= f * self.rows[[r, k]];
            }
            self.rows[[i, c]] = 0.0;
        }
        let f = self.cost[c];
        if f != 0.0 {
            for k in 0..width {
                self.cost[k] -= f * self.rows[[r, k]];
            }
            self.cost[c] = 0.0;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Loads `costs` (one per column) and prices out the current basis.
    fn set_costs(&mut self, costs: &[f64]) {
        let width = self.rows.ncols();
        let mut row = vec![0.0; width];
        row[..costs.len()].copy_from_slice(costs);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = row[b];
            if cb != 0.0 {
                for k in 0..width {
                    row[k] -= cb * self.rows[[i, k]];
                }
            }
        }
        self.cost = row;
    }

    /// Primal simplex over columns `0..allowed`, Bland's rule.
    fn run(&mut self, allowed: usize) -> Result<PhaseOutcome> {
        let rhs = self.rhs_col();
        loop {
            if self.pivots >= MAX_PIVOTS {
                return Err(FsError::Numerical(format!(
                    "simplex exceeded {MAX_PIVOTS} pivots"
                )));
            }
            let Some(enter) = (0..allowed).find(|&j| self.cost[j] < -COST_EPS) else {
                return Ok(PhaseOutcome::Optimal);
            };
            let mut leave: Option<usize> = None;
            let mut best = f64::INFINITY;
            for i in 0..self.rows.nrows() {
                let a = self.rows[[i, enter]];
                if a > PIVOT_EPS {
                    let ratio = self.rows[[i, rhs]].max(0.0) / a;
                    match leave {
                        None => {
                            leave = Some(i);
                            best = ratio;
                        }
                        Some(l) => {
                            if ratio < best - 1e-12 {
                                leave = Some(i);
                                best = ratio;
                            } else if ratio <= best + 1e-12 && self.basis[i] < self.basis[l] {
                                leave = Some(i);
                                best = best.min(ratio);
                            }
                        }
                    }
                }
            }
            match leave {
                None => return Ok(PhaseOutcome::Unbounded),
                Some(r) => self.pivot(r, enter),
            }
        }
    }
}

/// Solves `p`. Infeasible and unbounded problems are reported through
/// [`LpStatus`]; an error is returned only for malformed input or when the
/// pivot budget is exhausted.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution> {
    p.check()?;
    let n = p.n_vars();

    // variable substitution
    let mut maps = Vec::with_capacity(n);
    let mut n_u = 0usize;
    let mut extra_rows: Vec<(usize, f64)> = Vec::new();
    for &(lo, hi) in &p.bounds {
        if lo.is_finite() {
            maps.push(VarMap::Shift { u: n_u, offset: lo });
            if hi.is_finite() {
                extra_rows.push((n_u, hi - lo));
            }
            n_u += 1;
        } else if hi.is_finite() {
            maps.push(VarMap::Reflect { u: n_u, offset: hi });
            n_u += 1;
        } else {
            maps.push(VarMap::Split {
                pos: n_u,
                neg: n_u + 1,
            });
            n_u += 2;
        }
    }

    let m_orig = p.a_ub.nrows();
    let m = m_orig + extra_rows.len();
    let mut a = Array2::<f64>::zeros((m, n_u));
    let mut b = vec![0.0; m];
    let mut cost_u = vec![0.0; n_u];
    for (j, map) in maps.iter().enumerate() {
        match *map {
            VarMap::Shift { u, .. } => {
                for i in 0..m_orig {
                    a[[i, u]] += p.a_ub[[i, j]];
                }
                cost_u[u] += p.c[j];
            }
            VarMap::Reflect { u, .. } => {
                for i in 0..m_orig {
                    a[[i, u]] -= p.a_ub[[i, j]];
                }
                cost_u[u] -= p.c[j];
            }
            VarMap::Split { pos, neg } => {
                for i in 0..m_orig {
                    a[[i, pos]] += p.a_ub[[i, j]];
                    a[[i, neg]] -= p.a_ub[[i, j]];
                }
                cost_u[pos] += p.c[j];
                cost_u[neg] -= p.c[j];
            }
        }
    }
    for i in 0..m_orig {
        let mut shift = 0.0;
        for (j, map) in maps.iter().enumerate() {
            match *map {
                VarMap::Shift { offset, .. } | VarMap::Reflect { offset, .. } => {
                    shift += p.a_ub[[i, j]] * offset;
                }
                VarMap::Split { .. } => {}
            }
        }
        b[i] = p.b_ub[i] - shift;
    }
    for (k, &(u, cap)) in extra_rows.iter().enumerate() {
        a[[m_orig + k, u]] = 1.0;
        b[m_orig + k] = cap;
    }

    // columns: u (n_u) | slacks (m) | artificials (n_art) | rhs
    let needs_art: Vec<usize> = (0..m).filter(|&i| b[i] < 0.0).collect();
    let n_art = needs_art.len();
    let width = n_u + m + n_art + 1;
    let rhs = width - 1;
    let mut rows = Array2::<f64>::zeros((m, width));
    let mut basis = vec![0usize; m];
    let mut art_k = 0;
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n_u {
            rows[[i, j]] = sign * a[[i, j]];
        }
        rows[[i, n_u + i]] = sign;
        rows[[i, rhs]] = sign * b[i];
        if b[i] < 0.0 {
            let col = n_u + m + art_k;
            rows[[i, col]] = 1.0;
            basis[i] = col;
            art_k += 1;
        } else {
            basis[i] = n_u + i;
        }
    }
    let mut tab = Tableau {
        rows,
        cost: vec![0.0; width],
        basis,
        pivots: 0,
    };

    let real_cols = n_u + m;
    if n_art > 0 {
        let mut phase1 = vec![0.0; real_cols + n_art];
        phase1[real_cols..].iter_mut().for_each(|c| *c = 1.0);
        tab.set_costs(&phase1);
        // phase I is bounded below by 0, so it always ends Optimal
        tab.run(real_cols + n_art)?;
        let infeas = -tab.cost[rhs];
        let scale = b.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        if infeas > FEAS_EPS * scale {
            return Ok(LpSolution::with_status(LpStatus::Infeasible, tab.pivots));
        }
        // drive zero-level artificials out of the basis where possible
        for i in 0..m {
            if tab.basis[i] >= real_cols {
                if let Some(j) = (0..real_cols).find(|&j| tab.rows[[i, j]].abs() > PIVOT_EPS) {
                    tab.pivot(i, j);
                }
            }
        }
    }

    let mut phase2 = vec![0.0; real_cols];
    phase2[..n_u].copy_from_slice(&cost_u);
    tab.set_costs(&phase2);
    match tab.run(real_cols)? {
        PhaseOutcome::Unbounded => {
            return Ok(LpSolution::with_status(LpStatus::Unbounded, tab.pivots));
        }
        PhaseOutcome::Optimal => {}
    }

    let mut u = vec![0.0; n_u];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n_u {
            u[bv] = tab.rows[[i, rhs]].max(0.0);
        }
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            VarMap::Shift { u: k, offset } => offset + u[k],
            VarMap::Reflect { u: k, offset } => offset - u[k],
            VarMap::Split { pos, neg } => u[pos] - u[neg],
        })
        .collect();
    let objective = p.c.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective,
        pivots: tab.pivots,
    })
}
