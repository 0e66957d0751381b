//! Lawson refinement of a barycentric rational: iteratively reweighted
//! linearized least squares with the support points held fixed.

use crate::barycentric::BarycentricRational;
use crate::error::{Error, Result};
use crate::linalg::{null_vector, Mat};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    Stagnated,
}

#[derive(Clone, Debug)]
pub struct LawsonOutcome<T> {
    /// Best iterate seen (smallest max error on the grid), never worse than
    /// the input.
    pub approximant: BarycentricRational<T>,
    pub error: T,
    pub status: SolveStatus,
    /// Max grid error of every iterate, input first.
    pub trace: Vec<T>,
}

fn grid_error<T: Real>(r: &BarycentricRational<T>, fvals: &[T], grid: &[T]) -> (Vec<T>, T) {
    let e: Vec<T> = grid.iter().zip(fvals).map(|(&x, &fx)| fx - r.eval(x)).collect();
    let max = e.iter().map(|v| v.abs()).fold(T::zero(), T::max);
    (e, max)
}

pub fn lawson_refine<T, F>(r: &BarycentricRational<T>, f: &F, grid: &[T], iters: usize) -> Result<LawsonOutcome<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if r.pole_on_grid(grid).is_some() {
        return Err(Error::InvalidInput("Lawson start has a pole on the grid".into()));
    }
    let fvals: Vec<T> = grid.iter().map(|&x| f(x)).collect();
    let (mut e, err0) = grid_error(r, &fvals, grid);
    let mut out = LawsonOutcome {
        approximant: r.clone(),
        error: err0,
        status: SolveStatus::Converged,
        trace: vec![err0],
    };
    let nodes = r.nodes().to_vec();
    let d = nodes.len();
    let rows: Vec<usize> = (0..grid.len()).filter(|&i| !nodes.contains(&grid[i])).collect();
    if rows.len() < 2 * d {
        return Ok(out);
    }
    let mut w = vec![T::one() / T::from_usize(rows.len()); rows.len()];
    for _ in 0..iters {
        // reweight by the current error, then re-solve
        let mut total = T::zero();
        for (wi, &i) in w.iter_mut().zip(&rows) {
            *wi *= e[i].abs();
            total += *wi;
        }
        if total == T::zero() {
            break;
        }
        let mut top = T::zero();
        for wi in w.iter_mut() {
            *wi /= total;
            top = top.max(*wi);
        }
        if top >= T::one() - T::from_f64(1e-12) {
            out.status = SolveStatus::Stagnated;
            break;
        }
        let a = Mat::from_fn(rows.len(), 2 * d, |r_, c| {
            let i = rows[r_];
            let s = w[r_].sqrt();
            let cauchy = T::one() / (grid[i] - nodes[c % d]);
            if c < d {
                s * cauchy
            } else {
                -s * fvals[i] * cauchy
            }
        });
        let (v, _) = null_vector(&a);
        let (alpha, beta) = v.split_at(d);
        if beta.iter().any(|&b| b == T::zero()) {
            out.status = SolveStatus::Stagnated;
            break;
        }
        let Ok(cand) = BarycentricRational::from_coefficients(nodes.clone(), alpha, beta) else {
            out.status = SolveStatus::Stagnated;
            break;
        };
        let (e_new, err) = grid_error(&cand, &fvals, grid);
        out.trace.push(err);
        if !err.is_finite() || cand.pole_on_grid(grid).is_some() {
            out.status = SolveStatus::Stagnated;
            break;
        }
        e = e_new;
        if err < out.error {
            out.error = err;
            out.approximant = cand;
        }
    }
    Ok(out)
}
