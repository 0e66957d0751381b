//! Dense revised simplex for `min c^T x` subject to `A x = b`, `x >= 0`,
//! two-phase with artificial variables. Small row counts, many columns.

use crate::error::{Error, Result};
use crate::linalg::{Lu, Mat};
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub struct LpSolution<T> {
    pub x: Vec<T>,
    /// Simplex multipliers `y` with `A^T y <= c` at optimality.
    pub y: Vec<T>,
    pub objective: T,
    pub pivots: usize,
}

struct State<'a, T> {
    cols: &'a [Vec<T>],
    /// Rounded copy of `cols` for a cheap first pricing pass.
    cols64: Vec<Vec<f64>>,
    m: usize,
    basis: Vec<usize>,
    binv: Vec<Vec<T>>,
    xb: Vec<T>,
    b: Vec<T>,
    tol: T,
    pivots: usize,
}

impl<T: Real> State<'_, T> {
    fn n(&self) -> usize {
        self.cols.len()
    }

    fn column(&self, j: usize) -> Vec<T> {
        if j < self.n() {
            self.cols[j].clone()
        } else {
            let mut e = vec![T::zero(); self.m];
            e[j - self.n()] = T::one();
            e
        }
    }

    fn ftran(&self, a: &[T]) -> Vec<T> {
        self.binv
            .iter()
            .map(|row| row.iter().zip(a).map(|(&p, &q)| p * q).sum())
            .collect()
    }

    fn duals(&self, cost: &dyn Fn(usize) -> T) -> Vec<T> {
        let mut y = vec![T::zero(); self.m];
        for (k, &j) in self.basis.iter().enumerate() {
            let c = cost(j);
            if c != T::zero() {
                for i in 0..self.m {
                    y[i] += c * self.binv[k][i];
                }
            }
        }
        y
    }

    fn pivot(&mut self, r: usize, q: usize, u: &[T]) {
        let piv = u[r];
        for v in self.binv[r].iter_mut() {
            *v /= piv;
        }
        self.xb[r] /= piv;
        for i in 0..self.m {
            if i != r && u[i] != T::zero() {
                let f = u[i];
                for c in 0..self.m {
                    let d = f * self.binv[r][c];
                    self.binv[i][c] -= d;
                }
                let d = f * self.xb[r];
                self.xb[i] -= d;
            }
        }
        self.basis[r] = q;
        self.pivots += 1;
        if self.pivots % 64 == 0 {
            self.refactor();
        }
    }

    fn refactor(&mut self) {
        let bm = Mat::from_fn(self.m, self.m, |i, k| self.column(self.basis[k])[i]);
        let Ok(lu) = Lu::new(&bm) else { return };
        for i in 0..self.m {
            let mut e = vec![T::zero(); self.m];
            e[i] = T::one();
            let col = lu.solve(&e);
            for k in 0..self.m {
                self.binv[k][i] = col[k];
            }
        }
        self.xb = lu.solve(&self.b);
        for v in self.xb.iter_mut() {
            if *v < T::zero() && *v > -self.tol {
                *v = T::zero();
            }
        }
    }

    /// Runs simplex iterations for `cost`; artificial columns never enter.
    fn optimize(&mut self, cost: &dyn Fn(usize) -> T, max_pivots: usize) -> Result<()> {
        let mut degenerate_run = 0;
        loop {
            if self.pivots > max_pivots {
                return Err(Error::NoConvergence {
                    iterations: self.pivots,
                    error: f64::NAN,
                    defect: f64::NAN,
                });
            }
            let y = self.duals(cost);
            let bland = degenerate_run > 2 * self.m;
            let mut enter: Option<(usize, T)> = None;
            if !bland && T::BITS > 53 {
                let y64: Vec<f64> = y.iter().map(|v| v.to_f64()).collect();
                let mut best = -1e-12;
                for j in 0..self.n() {
                    let a = &self.cols64[j];
                    let d = cost(j).to_f64() - a.iter().zip(&y64).map(|(p, q)| p * q).sum::<f64>();
                    let scale = 1.0 + a.iter().fold(0.0f64, |s, v| s.max(v.abs()));
                    if d / scale < best && !self.basis.contains(&j) {
                        best = d / scale;
                        enter = Some((j, T::from_f64(best)));
                    }
                }
            }
            if enter.is_none() {
                for j in 0..self.n() {
                    if self.basis.contains(&j) {
                        continue;
                    }
                    let a = &self.cols[j];
                    let d = cost(j) - a.iter().zip(&y).map(|(&p, &q)| p * q).sum::<T>();
                    let scale = T::one() + a.iter().fold(T::zero(), |s, v| s.max(v.abs()));
                    if d < -self.tol * scale {
                        let score = d / scale;
                        match enter {
                            None => enter = Some((j, score)),
                            Some((_, s)) if !bland && score < s => enter = Some((j, score)),
                            _ => {}
                        }
                        if bland {
                            break;
                        }
                    }
                }
            }
            let Some((q, _)) = enter else { return Ok(()) };
            let u = self.ftran(&self.cols[q]);
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.m {
                if u[i] > self.tol {
                    let ratio = self.xb[i].max(T::zero()) / u[i];
                    match leave {
                        None => leave = Some((i, ratio)),
                        Some((r, best)) => {
                            if ratio < best || (ratio == best && self.basis[i] < self.basis[r]) {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return Err(Error::Unresolvable("linear program is unbounded".into()));
            };
            if ratio == T::zero() {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, q, &u);
        }
    }
}

/// Solves the standard-form program. `cols[j]` is column `j` of `A`.
pub fn solve_standard<T: Real>(cols: &[Vec<T>], cost: &[T], b: &[T]) -> Result<LpSolution<T>> {
    let m = b.len();
    let n = cols.len();
    if cost.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: cost.len(),
        });
    }
    if cols.iter().any(|c| c.len() != m) {
        return Err(Error::InvalidInput("column length differs from row count".into()));
    }
    // make b >= 0 by flipping rows
    let flip: Vec<bool> = b.iter().map(|&v| v < T::zero()).collect();
    let cols_f: Vec<Vec<T>> = cols
        .iter()
        .map(|c| c.iter().zip(&flip).map(|(&v, &f)| if f { -v } else { v }).collect())
        .collect();
    let b_f: Vec<T> = b.iter().map(|v| v.abs()).collect();
    let tol = T::epsilon() * T::from_f64(1e4);
    let cols64 = cols_f.iter().map(|c| c.iter().map(|v| v.to_f64()).collect()).collect();
    let mut st = State {
        cols: &cols_f,
        cols64,
        m,
        basis: (n..n + m).collect(),
        binv: (0..m)
            .map(|i| (0..m).map(|k| if i == k { T::one() } else { T::zero() }).collect())
            .collect(),
        xb: b_f.clone(),
        b: b_f.clone(),
        tol,
        pivots: 0,
    };
    let max_pivots = 50 * (n + m);
    let phase1 = |j: usize| if j >= n { T::one() } else { T::zero() };
    st.optimize(&phase1, max_pivots)?;
    let infeas: T = st
        .basis
        .iter()
        .zip(&st.xb)
        .filter(|(&j, _)| j >= n)
        .map(|(_, &v)| v)
        .sum();
    let bscale = b_f.iter().copied().fold(T::one(), T::max);
    if infeas > T::epsilon().sqrt() * bscale {
        return Err(Error::Infeasible);
    }
    // drive remaining zero-level artificials out of the basis
    for r in 0..m {
        if st.basis[r] < n {
            continue;
        }
        let mut best: Option<(usize, T)> = None;
        for j in 0..n {
            if st.basis.contains(&j) {
                continue;
            }
            let v = st.binv[r].iter().zip(&st.cols[j]).map(|(&p, &q)| p * q).sum::<T>();
            if v.abs() > tol && best.map_or(true, |(_, b)| v.abs() > b) {
                best = Some((j, v.abs()));
            }
        }
        if let Some((j, _)) = best {
            let u = st.ftran(&st.cols[j]);
            st.pivot(r, j, &u);
        }
    }
    let phase2 = |j: usize| if j < n { cost[j] } else { T::zero() };
    st.optimize(&phase2, max_pivots)?;
    let y_f = st.duals(&phase2);
    let y = y_f.iter().zip(&flip).map(|(&v, &f)| if f { -v } else { v }).collect();
    let mut x = vec![T::zero(); n];
    let mut objective = T::zero();
    for (&j, &v) in st.basis.iter().zip(&st.xb) {
        if j < n {
            x[j] = v;
            objective += cost[j] * v;
        }
    }
    Ok(LpSolution {
        x,
        y,
        objective,
        pivots: st.pivots,
    })
}
