//! Differential correction for discrete type-(k, k) minimax approximation.
//!
//! Given the current error level `delta` and denominator `Q~`, each step
//! solves the linear program
//!
//! ```text
//! minimize z  subject to  |f_i Q_i - P_i| - delta Q_i <= z Q~_i,  Q_i <= 1
//! ```
//!
//! over the Chebyshev coefficients of `P` and `Q`. A negative optimum gives a
//! strictly better `P/Q`; zero certifies optimality on the grid. The program
//! is solved through its dual, which has only `2k + 3` rows.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::simplex::solve_standard;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffCorrResult<T> {
    /// Discrete minimax error on the grid.
    pub error: T,
    /// Chebyshev coefficients (on the grid hull) of numerator and denominator.
    pub p: Vec<T>,
    pub q: Vec<T>,
    pub iterations: usize,
}

fn cheb_row<T: Real>(u: T, k: usize) -> Vec<T> {
    let mut t = Vec::with_capacity(k + 1);
    t.push(T::one());
    if k >= 1 {
        t.push(u);
    }
    for j in 2..=k {
        let next = T::from_f64(2.0) * u * t[j - 1] - t[j - 2];
        t.push(next);
    }
    t
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Discrete minimax error of `f` on `grid` over rationals of type `(k, k)`.
pub fn differential_correction<T, F>(f: F, k: usize, grid: &[T]) -> Result<DiffCorrResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let m = grid.len();
    if m < 4 * k + 4 {
        return Err(Error::InvalidInput(format!(
            "differential correction needs at least {} grid points, got {m}",
            4 * k + 4
        )));
    }
    let fv: Vec<T> = grid.iter().map(|&x| f(x)).collect();
    if fv.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("target is not bounded on the grid".into()));
    }
    let lo = grid.iter().copied().fold(T::infinity(), T::min);
    let hi = grid.iter().copied().fold(-T::infinity(), T::max);
    if !(lo < hi) {
        return Err(Error::InvalidInput("grid spans no interval".into()));
    }
    let tk: Vec<Vec<T>> = grid
        .iter()
        .map(|&x| cheb_row((x + x - lo - hi) / (hi - lo), k))
        .collect();
    let fmax = fv.iter().copied().fold(-T::infinity(), T::max);
    let fmin = fv.iter().copied().fold(T::infinity(), T::min);
    let half = T::from_f64(0.5);
    let mut p = vec![T::zero(); k + 1];
    let mut q = vec![T::zero(); k + 1];
    p[0] = (fmax + fmin) * half;
    q[0] = T::one();
    let mut delta = (fmax - fmin) * half;
    let mut qt = vec![T::one(); m];
    let d = k + 1;
    let rows = 2 * d + 1;
    let mut iterations = 0;
    let stop = T::epsilon() * T::from_f64(16.0);
    while delta > T::zero() && iterations < 100 {
        iterations += 1;
        // dual columns: one per primal constraint
        let mut cols = Vec::with_capacity(3 * m);
        let mut cost = Vec::with_capacity(3 * m);
        for i in 0..m {
            let t = &tk[i];
            let mut c1 = Vec::with_capacity(rows);
            let mut c2 = Vec::with_capacity(rows);
            let mut c3 = Vec::with_capacity(rows);
            for &tj in t {
                c1.push(-tj);
                c2.push(tj);
                c3.push(T::zero());
            }
            for &tj in t {
                c1.push((fv[i] - delta) * tj);
                c2.push(-(fv[i] + delta) * tj);
                c3.push(tj);
            }
            c1.push(-qt[i]);
            c2.push(-qt[i]);
            c3.push(T::zero());
            cols.extend([c1, c2, c3]);
            cost.extend([T::zero(), T::zero(), T::one()]);
        }
        let mut rhs = vec![T::zero(); rows];
        rhs[rows - 1] = -T::one();
        let sol = solve_standard(&cols, &cost, &rhs)?;
        // primal variables are the simplex multipliers
        let (pn, rest) = sol.y.split_at(d);
        let (qn, z) = rest.split_at(d);
        let z = z[0];
        if z >= -stop * delta {
            break;
        }
        let qvals: Vec<T> = tk.iter().map(|t| dot(t, qn)).collect();
        if qvals.iter().any(|&v| !(v > T::zero())) {
            break;
        }
        let err = (0..m)
            .map(|i| (fv[i] - dot(&tk[i], pn) / qvals[i]).abs())
            .fold(T::zero(), T::max);
        if !(err < delta) {
            break;
        }
        delta = err;
        let qmax = qvals.iter().copied().fold(T::zero(), T::max);
        qt = qvals.iter().map(|&v| v / qmax).collect();
        p = pn.to_vec();
        q = qn.to_vec();
    }
    Ok(DiffCorrResult {
        error: delta,
        p,
        q,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: usize) -> Vec<f64> {
        (0..m).map(|i| i as f64 / (m - 1) as f64).collect()
    }

    #[test]
    fn constant_target() {
        let r = differential_correction(|_x: f64| 4.0, 2, &grid(20)).unwrap();
        assert_eq!(r.error, 0.0);
    }

    #[test]
    fn square_by_a_constant() {
        let r = differential_correction(|x: f64| x * x, 0, &grid(21)).unwrap();
        assert!((r.error - 0.5).abs() < 1e-14);
    }

    #[test]
    fn exact_rational_is_found() {
        // 1 / (2 - x) is type (0, 1)
        let r = differential_correction(|x: f64| 1.0 / (2.0 - x), 1, &grid(41)).unwrap();
        assert!(r.error < 1e-10, "{}", r.error);
    }

    #[test]
    fn too_small_grid() {
        assert!(differential_correction(|x: f64| x, 2, &grid(11)).is_err());
    }
}
