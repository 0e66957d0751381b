//! AAA rational approximation: greedy support-point selection, weights from
//! the smallest right singular vector of the Loewner matrix.

use crate::barycentric::BarycentricRational;
use crate::error::{Error, Result};
use crate::linalg::{null_vector, Mat};
use crate::scalar::Real;

/// Weights for the support set `chosen`, fitted in least squares on the
/// remaining samples.
fn loewner_weights<T: Real>(z: &[T], f: &[T], chosen: &[usize]) -> Vec<T> {
    if chosen.len() == 1 {
        return vec![T::one()];
    }
    let rest: Vec<usize> = (0..z.len()).filter(|i| !chosen.contains(i)).collect();
    let a = Mat::from_fn(rest.len(), chosen.len(), |r, c| {
        let (i, j) = (rest[r], chosen[c]);
        (f[i] - f[j]) / (z[i] - z[j])
    });
    null_vector(&a).0
}

fn build<T: Real>(z: &[T], f: &[T], chosen: &[usize]) -> Result<BarycentricRational<T>> {
    let w = loewner_weights(z, f, chosen);
    BarycentricRational::new(
        chosen.iter().map(|&j| z[j]).collect(),
        chosen.iter().map(|&j| f[j]).collect(),
        w,
    )
}

/// A pole that is either real inside the sample hull or paired with a zero
/// closer than `1e-13` (relative to the hull width).
fn spurious_pole<T: Real>(r: &BarycentricRational<T>, lo: T, hi: T) -> Result<Option<(T, T)>> {
    let poles = r.poles()?;
    if poles.is_empty() {
        return Ok(None);
    }
    let zeros = r.zeros()?;
    let width = hi - lo;
    let close = width * T::from_f64(1e-13);
    for &(pr, pi) in &poles {
        let on_hull = pi.abs() <= close && pr >= lo && pr <= hi;
        let doublet = zeros
            .iter()
            .any(|&(zr, zi)| ((zr - pr) * (zr - pr) + (zi - pi) * (zi - pi)).sqrt() <= close);
        if on_hull || doublet {
            return Ok(Some((pr, pi)));
        }
    }
    Ok(None)
}

/// Fits a rational of type at most `(max_degree, max_degree)` to the samples,
/// stopping early once the sample error drops below `tol` relative to the
/// largest sample.
pub fn aaa_fit<T: Real>(points: &[T], values: &[T], max_degree: usize, tol: f64) -> Result<BarycentricRational<T>> {
    let m = points.len();
    if m != values.len() {
        return Err(Error::LengthMismatch {
            expected: m,
            got: values.len(),
        });
    }
    if m < 2 * max_degree + 2 {
        return Err(Error::InvalidInput(format!(
            "need at least {} sample points for degree {max_degree}, got {m}",
            2 * max_degree + 2
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite sample value".into()));
    }
    let scale = values.iter().map(|v| v.abs()).fold(T::zero(), T::max);
    let lo = points.iter().copied().fold(T::infinity(), T::min);
    let hi = points.iter().copied().fold(-T::infinity(), T::max);
    let mean = values.iter().copied().sum::<T>() / T::from_usize(m);
    let mut approx = vec![mean; m];
    let mut chosen: Vec<usize> = Vec::new();
    let mut r = BarycentricRational::constant(points[0], values[0]);
    for _ in 0..=max_degree {
        let next = (0..m)
            .filter(|i| !chosen.contains(i))
            .max_by(|&a, &b| {
                let ea = (values[a] - approx[a]).abs();
                let eb = (values[b] - approx[b]).abs();
                ea.partial_cmp(&eb).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("more samples than nodes");
        chosen.push(next);
        r = build(points, values, &chosen)?;
        let mut err = T::zero();
        for i in 0..m {
            approx[i] = r.eval(points[i]);
            err = err.max((values[i] - approx[i]).abs());
        }
        if err <= scale * T::from_f64(tol) {
            break;
        }
    }
    // Froissart doublets and poles among the samples: drop the nearest
    // support point and re-solve
    while chosen.len() > 1 {
        let Some((pr, _)) = spurious_pole(&r, lo, hi)? else {
            break;
        };
        let (idx, _) = chosen
            .iter()
            .enumerate()
            .map(|(c, &j)| (c, (points[j] - pr).abs()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        chosen.remove(idx);
        r = build(points, values, &chosen)?;
    }
    if r.eval(points[0]).is_nan() {
        return Err(Error::Unresolvable("AAA weights collapsed".into()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::{cheb_points, Interval};

    #[test]
    fn constant_samples_give_degree_zero() {
        let z: Vec<f64> = (0..10).map(|i| i as f64 / 9.0).collect();
        let f = vec![2.5; 10];
        let r = aaa_fit(&z, &f, 4, 1e-13).unwrap();
        assert_eq!(r.type_bound(), 0);
        assert_eq!(r.eval(0.37), 2.5);
    }

    #[test]
    fn identity_is_reproduced() {
        let z: Vec<f64> = (0..10).map(|i| i as f64 / 9.0).collect();
        let r = aaa_fit(&z, &z, 1, 1e-15).unwrap();
        for &x in &z {
            assert!((r.eval(x) - x).abs() < 1e-13);
        }
    }

    #[test]
    fn too_few_samples() {
        assert!(aaa_fit(&[0.0, 1.0, 2.0], &[0.0, 1.0, 2.0], 1, 1e-13).is_err());
    }

    #[test]
    fn pole_free_fit_of_a_power() {
        let dom = Interval::<f64>::unit();
        let z = cheb_points(1023, &dom).unwrap();
        let f: Vec<f64> = z.iter().map(|x| x.powi(1000)).collect();
        let r = aaa_fit(&z, &f, 4, 1e-15).unwrap();
        assert!(r.pole_on_grid(&z).is_none());
        let err = r.max_error_on(&|x: f64| x.powi(1000), &z);
        assert!(err < 1e-2, "{err}");
    }
}
