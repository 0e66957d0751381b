//! Complementary error function, `erfc(x) = 2/sqrt(pi) * int_x^inf exp(-t^2) dt`.
//!
//! Evaluated internally in double-double and rounded to the caller's
//! precision. For `0 <= x < 3` the all-positive series
//! `erf(x) = 2/sqrt(pi) exp(-x^2) sum 2^n x^(2n+1) / (1*3*...*(2n+1))`
//! is summed and `erfc = 1 - erf` keeps at least 27 digits after the
//! cancellation; for `x >= 3` the Laplace continued fraction is used.

use crate::dd::DoubleDouble;
use crate::scalar::Real;

const SERIES_LIMIT: f64 = 3.0;

fn erfc_dd(x: DoubleDouble) -> DoubleDouble {
    if x.is_nan() {
        return x;
    }
    if x < DoubleDouble::ZERO {
        return DoubleDouble::new(2.0) - erfc_dd(-x);
    }
    if x.hi() > 27.3 {
        // below the smallest subnormal
        return DoubleDouble::ZERO;
    }
    let sqrt_pi = DoubleDouble::pi().sqrt();
    let gauss = (-x.sqr()).exp();
    if x.hi() < SERIES_LIMIT {
        let two_x2 = x.sqr().ldexp(1);
        let mut term = x;
        let mut sum = x;
        let mut k = 1.0;
        loop {
            term = term * two_x2 / DoubleDouble::new(2.0 * k + 1.0);
            sum += term;
            if term.hi() <= 1e-34 * sum.hi() {
                break;
            }
            k += 1.0;
        }
        let erf = sum.ldexp(1) * gauss / sqrt_pi;
        DoubleDouble::ONE - erf
    } else {
        // modified Lentz on x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))
        let tiny = DoubleDouble::new(1e-300);
        let mut f = x;
        let mut c = f;
        let mut d = DoubleDouble::ZERO;
        for n in 1..10_000 {
            let a = DoubleDouble::new(0.5 * n as f64);
            d = x + a * d;
            if d.abs() < tiny {
                d = tiny;
            }
            d = d.recip();
            c = x + a / c;
            if c.abs() < tiny {
                c = tiny;
            }
            let delta = c * d;
            f *= delta;
            if (delta - DoubleDouble::ONE).abs().hi() < 1e-33 {
                break;
            }
        }
        gauss / (sqrt_pi * f)
    }
}

/// Complementary error function at working precision.
pub fn erfc<T: Real>(x: T) -> T {
    T::from_dd(erfc_dd(x.to_dd()))
}
