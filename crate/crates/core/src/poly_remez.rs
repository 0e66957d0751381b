//! Best polynomial approximation by the Remez exchange algorithm.

use crate::cheb::{cheb_fit, cheb_points, ChebSeries, Interval};
use crate::erfc::erfc;
use crate::error::{Error, Result};
use crate::extrema::{alternating_extrema, select_alternating, EquioscillationCertificate, Extremum};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RemezOptions {
    /// Target relative spread of `|error|` on the reference.
    pub tol: f64,
    pub max_iter: usize,
    /// Spread accepted in the final certificate when the target cannot be
    /// reached because of rounding noise.
    pub certificate_tol: f64,
}

impl Default for RemezOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 100,
            certificate_tol: 1e-3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMinimaxResult<T> {
    pub approximant: ChebSeries<T>,
    /// `max |f - p|` over the domain.
    pub error: T,
    pub certificate: EquioscillationCertificate<T>,
    pub iterations: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum PolyRemezError<T: Real> {
    #[error("Remez exchange did not converge in {} iterations (defect {})", .0.iterations, .0.certificate.residual_defect)]
    NoConvergence(Box<PolyMinimaxResult<T>>),
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Barycentric weights `1 / prod_{j != i} (x_i - x_j)` rescaled so the
/// largest has magnitude one; products are accumulated in logarithms.
pub(crate) fn bary_weights<T: Real>(x: &[T]) -> Vec<T> {
    let n = x.len();
    let mut logs = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    for i in 0..n {
        let mut l = T::zero();
        let mut neg = false;
        for j in 0..n {
            if j != i {
                let d = x[i] - x[j];
                if d < T::zero() {
                    neg = !neg;
                }
                l += d.abs().ln();
            }
        }
        logs.push(-l);
        signs.push(neg);
    }
    let top = logs.iter().copied().fold(-T::infinity(), T::max);
    logs.iter()
        .zip(&signs)
        .map(|(&l, &neg)| {
            let w = (l - top).exp();
            if neg { -w } else { w }
        })
        .collect()
}

/// Barycentric polynomial interpolant through `(nodes, values)`.
#[derive(Clone, Debug)]
struct BaryPoly<T> {
    nodes: Vec<T>,
    values: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> BaryPoly<T> {
    fn eval(&self, x: T) -> T {
        let mut num = T::zero();
        let mut den = T::zero();
        for ((&t, &v), &w) in self.nodes.iter().zip(&self.values).zip(&self.weights) {
            let d = x - t;
            if d == T::zero() {
                return v;
            }
            let c = w / d;
            num += c * v;
            den += c;
        }
        num / den
    }
}

/// Levelled solution on a reference of `k + 2` points: the degree-`k`
/// polynomial with `f(x_i) - p(x_i) = (-1)^i h`.
fn level_on_reference<T: Real>(refs: &[T], fvals: &[T]) -> (BaryPoly<T>, T) {
    let w = bary_weights(refs);
    let mut num = T::zero();
    let mut den = T::zero();
    for (i, (&wi, &fi)) in w.iter().zip(fvals).enumerate() {
        num += wi * fi;
        den += if i % 2 == 0 { wi } else { -wi };
    }
    let h = num / den;
    let k1 = refs.len() - 1;
    let last = refs[k1];
    let nodes = refs[..k1].to_vec();
    let values = (0..k1)
        .map(|i| if i % 2 == 0 { fvals[i] - h } else { fvals[i] + h })
        .collect();
    let weights = (0..k1).map(|i| w[i] * (refs[i] - last)).collect();
    (
        BaryPoly {
            nodes,
            values,
            weights,
        },
        h,
    )
}

/// Search grid: each gap between consecutive reference points (and the two
/// end gaps) sampled at `per_gap` interior points.
fn search_grid<T: Real>(refs: &[T], domain: &Interval<T>, per_gap: usize) -> Vec<T> {
    let mut knots = Vec::with_capacity(refs.len() + 2);
    if refs[0] > domain.lo() {
        knots.push(domain.lo());
    }
    knots.extend_from_slice(refs);
    if *refs.last().unwrap() < domain.hi() {
        knots.push(domain.hi());
    }
    let mut grid = Vec::with_capacity(knots.len() * (per_gap + 1));
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        grid.push(a);
        for j in 1..=per_gap {
            let t = T::from_usize(j) / T::from_usize(per_gap + 1);
            grid.push(a + (b - a) * t);
        }
    }
    grid.push(*knots.last().unwrap());
    grid
}

fn to_series<T: Real>(p: &BaryPoly<T>, k: usize, domain: &Interval<T>) -> Result<ChebSeries<T>> {
    if k == 0 {
        return ChebSeries::new(vec![p.eval(domain.lo())], *domain);
    }
    let pts = cheb_points(k, domain)?;
    let vals: Vec<T> = pts.iter().map(|&x| p.eval(x)).collect();
    cheb_fit(&vals, domain)
}

/// Best approximation of `f` on `domain` by polynomials of degree `<= k`.
///
/// Starts from the `k + 2` Chebyshev points and replaces the whole reference
/// with the alternating extrema of the current error at every step.
pub fn remez_poly<T, F>(
    f: F,
    k: usize,
    domain: &Interval<T>,
    opts: &RemezOptions,
) -> Result<PolyMinimaxResult<T>, PolyRemezError<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let n_ref = k + 2;
    let mut refs = cheb_points(k + 1, domain)?;
    let scale = {
        let grid = cheb_points(4 * n_ref, domain)?;
        grid.iter().map(|&x| f(x).abs()).fold(T::zero(), T::max)
    };
    if !scale.is_finite() {
        return Err(Error::InvalidInput("target is not finite on the domain".into()).into());
    }
    let noise = T::epsilon() * T::from_f64(64.0) * scale.max(T::from_f64(1e-300));
    let per_gap = 12;

    let mut best: Option<PolyMinimaxResult<T>> = None;
    let mut stalls = 0;
    for iter in 1..=opts.max_iter {
        let fvals: Vec<T> = refs.iter().map(|&x| f(x)).collect();
        let (p, _h) = level_on_reference(&refs, &fvals);
        let err = |x: T| f(x) - p.eval(x);
        let grid = search_grid(&refs, domain, per_gap);
        let ext = alternating_extrema(&err, &grid);
        let max_err = ext.iter().map(|e| e.value.abs()).fold(T::zero(), T::max);

        if max_err <= noise {
            // f is reproduced to rounding: a polynomial of degree <= k
            return Ok(PolyMinimaxResult {
                approximant: to_series(&p, k, domain)?,
                error: max_err,
                certificate: EquioscillationCertificate::degenerate(max_err),
                iterations: iter,
            });
        }

        let Some(sel) = select_alternating(ext, n_ref) else {
            return Err(Error::Unresolvable(format!(
                "error curve has fewer than {n_ref} alternations"
            ))
            .into());
        };
        let cert = EquioscillationCertificate::from_extrema(&sel);
        let spread = cert.levelled_error - min_abs(&sel);
        let result = PolyMinimaxResult {
            approximant: to_series(&p, k, domain)?,
            error: max_err,
            certificate: cert,
            iterations: iter,
        };
        let improved = match &best {
            Some(b) => result.certificate.residual_defect < b.certificate.residual_defect,
            None => true,
        };
        let done = result.certificate.residual_defect.to_f64() <= opts.tol
            || spread <= noise;
        if improved {
            best = Some(result);
            stalls = 0;
        } else {
            stalls += 1;
        }
        if done {
            return Ok(best.unwrap());
        }
        let b = best.as_ref().unwrap();
        if stalls >= 4 && b.certificate.residual_defect.to_f64() <= opts.certificate_tol {
            // rounding noise floor reached
            return Ok(best.unwrap());
        }
        refs = sel.iter().map(|e| e.x).collect();
    }
    let b = best.expect("at least one iteration");
    if b.certificate.residual_defect.to_f64() <= opts.certificate_tol {
        Ok(b)
    } else {
        Err(PolyRemezError::NoConvergence(Box::new(b)))
    }
}

fn min_abs<T: Real>(ext: &[Extremum<T>]) -> T {
    ext.iter().map(|e| e.value.abs()).fold(T::infinity(), T::min)
}

/// `(1/2) erfc(k / sqrt(n))`, the estimate for the degree-`k` polynomial
/// minimax error of `x^n` on `[0, 1]`.
pub fn newman_rivlin<T: Real>(k: usize, n: T) -> T {
    T::from_f64(0.5) * erfc(T::from_usize(k) / n.sqrt())
}
