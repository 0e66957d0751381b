//! Closed-form models and transformations for `x^n` approximation: the
//! geometric law `2 H^{k+1/2}`, the Möbius change of variables
//! `x = n / (n - s)`, the transplanted target `(1 - s/n)^{-n}`, its gap to
//! `e^s`, half-line approximation of `e^s`, and the even reduction on
//! `[-1, 1]`.

use crate::cheb::{cheb_points, Interval};
use crate::error::{Error, Result};
use crate::rational_remez::{rational_remez, RationalMinimaxResult, RationalOptions};
use crate::scalar::Real;

/// `1/H` to 13 significant digits.
pub const HALPHEN_INVERSE: &str = "9.2890254919208";

/// Halphen's constant `H ~ 0.1076539192`.
pub fn halphen_constant<T: Real>() -> T {
    T::one() / T::parse_decimal(HALPHEN_INVERSE).expect("valid literal")
}

/// `2 H^{k + 1/2}`.
pub fn halphen_model<T: Real>(k: usize) -> T {
    let h = halphen_constant::<T>();
    let e = T::from_usize(k) + T::from_f64(0.5);
    T::from_f64(2.0) * (e * h.ln()).exp()
}

/// `x = n / (n - s)` and its inverse `s = n (x - 1) / x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap<T> {
    n: T,
}

impl<T: Real> MobiusMap<T> {
    pub fn new(n: T) -> Result<Self> {
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::InvalidInput(format!("power must be positive, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> T {
        self.n
    }

    pub fn x_of_s(&self, s: T) -> Result<T> {
        if s == self.n {
            return Err(Error::InvalidInput(format!("s = n = {s} is the pole of the map")));
        }
        if s == -T::infinity() {
            return Ok(T::zero());
        }
        Ok(self.n / (self.n - s))
    }

    pub fn s_of_x(&self, x: T) -> Result<T> {
        if x == T::zero() {
            return Err(Error::InvalidInput("x = 0 maps to s = -infinity".into()));
        }
        Ok(self.n * (x - T::one()) / x)
    }
}

/// `g_n(s) = (1 - s/n)^{-n}`, the image of `x^n` under the map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransplantedTarget<T> {
    n: T,
}

impl<T: Real> TransplantedTarget<T> {
    pub fn new(n: T) -> Result<Self> {
        MobiusMap::new(n).map(|m| Self { n: m.n })
    }

    pub fn eval(&self, s: T) -> T {
        if s == -T::infinity() {
            return T::zero();
        }
        (-self.n * (-s / self.n).ln_1p()).exp()
    }

    /// `g_n(s) - e^s`. With `u = -s/n` and `a = n (u - log1p u)` this is
    /// `e^s expm1(a)`, used while `a` is small; for large `a` the direct
    /// difference has no cancellation and survives underflow of `e^s`.
    pub fn gap(&self, s: T) -> T {
        let u = -s / self.n;
        let a = self.n * u_minus_log1p(u);
        if a < T::one() {
            s.exp() * a.exp_m1()
        } else {
            self.eval(s) - s.exp()
        }
    }
}

/// `u - log(1 + u)` without cancellation for small `u`.
fn u_minus_log1p<T: Real>(u: T) -> T {
    if u.abs() < T::from_f64(0.01) {
        // u^2/2 - u^3/3 + u^4/4 - ...
        let mut pow = u * u;
        let mut sum = T::zero();
        let mut j = 2usize;
        loop {
            let term = pow / T::from_usize(j);
            let term = if j % 2 == 0 { term } else { -term };
            sum += term;
            if term.abs() <= sum.abs() * T::epsilon() * T::from_f64(0.25) {
                break;
            }
            pow = pow * u;
            j += 1;
        }
        sum
    } else {
        u - u.ln_1p()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma2Gap<T> {
    /// Stationary point of the gap, `(1 - sigma/n)^{-(n+1)} = e^sigma`.
    pub sigma: T,
    /// Gap at `sigma`.
    pub max_gap: T,
    /// `1 / (e n)`.
    pub bound: T,
    /// `|g(sigma) + sigma e^sigma / n| / g(sigma)`.
    pub identity_residual: T,
    /// Largest gap on the log-spaced scan.
    pub scanned_max: T,
    /// Whether the gap was positive at every scanned point.
    pub positive: bool,
    /// Set when the default bracket did not contain the stationary point and
    /// its left end had to be pushed out.
    pub bracket_expanded: bool,
}

/// Locates the maximum of `(1 - s/n)^{-n} - e^s` on `s < 0` by bisection on
/// the sign of its derivative, and checks it against a scan of `scan_points`
/// log-spaced points `s = -10^t`.
pub fn lemma2_gap<T: Real>(n: T, scan_points: usize) -> Result<Lemma2Gap<T>> {
    let target = TransplantedTarget::new(n)?;
    // sign of d/ds gap: n u - (n + 1) log1p(u), u = -s/n
    let slope_sign = |s: T| {
        let u = -s / n;
        n * u_minus_log1p(u) - u.ln_1p()
    };
    let tiny = T::from_f64(1e-12);
    let mut hi = -n * tiny;
    let mut lo = -n * (T::one() - tiny);
    let mut bracket_expanded = false;
    while !(slope_sign(lo) > T::zero()) {
        lo = lo * T::from_f64(2.0);
        bracket_expanded = true;
        if !lo.is_finite() {
            return Err(Error::Unresolvable("no sign change of the gap derivative".into()));
        }
    }
    if !(slope_sign(hi) < T::zero()) {
        return Err(Error::Unresolvable("gap derivative not negative near 0".into()));
    }
    for _ in 0..400 {
        let mid = (lo + hi) / T::from_f64(2.0);
        if !(lo < mid && mid < hi) {
            break;
        }
        if slope_sign(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let sigma = (lo + hi) / T::from_f64(2.0);
    let max_gap = target.gap(sigma);
    let closed = -sigma * sigma.exp() / n;
    let identity_residual = ((max_gap - closed) / max_gap).abs();

    let t_lo = -8.0;
    // stop before g_n itself underflows
    let nf = n.to_f64();
    let s_far = (100.0 + 10.0 * nf).min(nf * (575.0 / nf).exp_m1());
    let t_hi = s_far.log10();
    let mut scanned_max = T::zero();
    let mut positive = true;
    let steps = scan_points.max(2);
    for i in 0..steps {
        let t = t_lo + (t_hi - t_lo) * i as f64 / (steps - 1) as f64;
        let s = -T::from_f64(10f64.powf(t));
        let g = target.gap(s);
        if !(g > T::zero()) {
            positive = false;
        }
        scanned_max = scanned_max.max(g);
    }
    Ok(Lemma2Gap {
        sigma,
        max_gap,
        bound: T::one() / (n * T::one().exp()),
        identity_residual,
        scanned_max,
        positive,
        bracket_expanded,
    })
}

/// `s = -c (1 - y) / (1 + y)`, taking `[-1, 1]` onto `[-inf, 0]`.
pub fn halfline_s<T: Real>(y: T, c: T) -> T {
    if y <= -T::one() {
        return -T::infinity();
    }
    -c * (T::one() - y) / (T::one() + y)
}

/// Type-`(k, k)` minimax approximation of `g` on `(-inf, 0]`, solved on
/// `[-1, 1]` after the change of variables [`halfline_s`].
pub fn halfline_minimax<T, G>(g: G, k: usize, c: T, opts: &RationalOptions) -> Result<RationalMinimaxResult<T>>
where
    T: Real,
    G: Fn(T) -> T,
{
    if !(c > T::zero()) {
        return Err(Error::InvalidInput("transplant scale must be positive".into()));
    }
    rational_remez(|y: T| g(halfline_s(y, c)), k, &Interval::symmetric(), opts)
}

/// `F_kk`: minimax error of `e^s` on `(-inf, 0]` over type `(k, k)`.
pub fn exp_halfline_error<T: Real>(k: usize, opts: &RationalOptions) -> Result<T> {
    let exp0 = |s: T| if s == -T::infinity() { T::zero() } else { s.exp() };
    Ok(halfline_minimax(exp0, k, T::from_f64(4.0), opts)?.error)
}

/// Minimax error of `(1 - s/n)^{-n}` on `(-inf, 0]`, the transplanted form
/// of `x^n` on `[0, 1]`.
pub fn transplanted_error<T: Real>(n: T, k: usize, opts: &RationalOptions) -> Result<T> {
    let g = TransplantedTarget::new(n)?;
    Ok(halfline_minimax(|s| g.eval(s), k, T::from_f64(4.0), opts)?.error)
}

/// Sup of `|r(x(s)) - g_n(s)|` over the half-line images of `m + 1`
/// Chebyshev points, for an approximant `r` of `x^n` on `[0, 1]`.
pub fn transplant_sup_error<T, R>(r: R, n: T, m: usize) -> Result<T>
where
    T: Real,
    R: Fn(T) -> T,
{
    let map = MobiusMap::new(n)?;
    let g = TransplantedTarget::new(n)?;
    let mut sup = T::zero();
    for y in cheb_points(m, &Interval::symmetric())? {
        let s = halfline_s(y, T::from_f64(4.0));
        let x = map.x_of_s(s)?;
        sup = sup.max((r(x) - g.eval(s)).abs());
    }
    Ok(sup)
}

/// `(n, k) -> (n/2, floor(k/2))`: the minimax problem for `x^n` on `[-1, 1]`
/// with even `n` is the problem for `x^{n/2}` on `[0, 1]` in `s = x^2`.
pub fn even_reduction(n: u64, k: usize) -> Result<(u64, usize)> {
    if n % 2 == 1 {
        return Err(Error::InvalidInput(format!(
            "n = {n} is odd: x^n on [-1, 1] is only approximately, not exactly, the half-interval problem"
        )));
    }
    Ok((n / 2, k / 2))
}

/// Least-squares line `y = a + b x`; returns `(b, a, r_squared)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (b, a, r2)
}

/// `H` estimated from the geometric decay of `errors[i]` at `ks[i]`.
pub fn fitted_decay_rate(ks: &[usize], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    linear_fit(&xs, &ys).0.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DoubleDouble;

    #[test]
    fn halphen_literal() {
        let h: f64 = halphen_constant();
        assert!((1.0 / h - 9.289_025_491_920_8).abs() < 1e-12);
        assert!(h > 0.0 && h < 1.0 / 9.0);
        let m0: f64 = halphen_model(0);
        assert!((m0 - 2.0 * h.sqrt()).abs() < 1e-15);
        assert!((m0 - 0.656_22).abs() < 1e-5);
        for k in 0..8 {
            let r = halphen_model::<f64>(k + 1) / halphen_model::<f64>(k);
            assert!((r - h).abs() < 1e-14);
        }
        let m5: f64 = halphen_model(5);
        // 2 * 9.2890254919208^{-5.5}
        assert!((m5 - 9.488_425_340_823_7e-6).abs() < 1e-17);
    }

    #[test]
    fn mobius_anchors() {
        let m = MobiusMap::new(1000.0).unwrap();
        assert_eq!(m.x_of_s(0.0).unwrap(), 1.0);
        assert_eq!(m.x_of_s(f64::NEG_INFINITY).unwrap(), 0.0);
        let m2 = MobiusMap::new(2.0).unwrap();
        assert_eq!(m2.x_of_s(1.0).unwrap(), 2.0);
        let back = m.s_of_x(m.x_of_s(-7.3).unwrap()).unwrap();
        assert!((back + 7.3).abs() < 1e-13 * 7.3);
        assert!(m.s_of_x(0.0).is_err());
        assert!(m2.x_of_s(2.0).is_err());
        assert!(MobiusMap::new(0.0).is_err());
    }

    #[test]
    fn target_properties() {
        let g = TransplantedTarget::new(10.0).unwrap();
        assert_eq!(g.eval(0.0), 1.0);
        let mut prev = 0.0;
        for i in 0..200 {
            let s = -40.0 + i as f64 * 0.2;
            let v = g.eval(s);
            assert!(v > prev);
            assert!(v > s.exp());
            prev = v;
        }
    }

    #[test]
    fn lemma2_small_and_large_n() {
        let one = lemma2_gap(1.0f64, 1000).unwrap();
        assert!(one.bracket_expanded);
        assert!(one.sigma < -2.0 && one.sigma > -3.0);
        assert!(one.max_gap <= one.bound);
        let big = lemma2_gap(1e4f64, 1000).unwrap();
        // g(s) ~ s^2 e^s / (2n) for large n, maximal at s = -2
        assert!((big.sigma + 2.0).abs() < 1e-3, "{}", big.sigma);
        let scaled = big.max_gap * std::f64::consts::E * 1e4;
        assert!((scaled - 2.0 / std::f64::consts::E).abs() < 0.02 * 2.0 / std::f64::consts::E, "{scaled}");
        assert!(big.identity_residual < 1e-10);
        let dd = lemma2_gap(DoubleDouble::new(100.0), 100).unwrap();
        assert!(dd.identity_residual.to_f64() < 1e-25);
    }

    #[test]
    fn even_reduction_contract() {
        assert_eq!(even_reduction(100, 4).unwrap(), (50, 2));
        assert_eq!(even_reduction(100, 5).unwrap(), (50, 2));
        assert!(even_reduction(101, 4).is_err());
    }

    #[test]
    fn best_constant_on_half_line() {
        let f0: f64 = exp_halfline_error(0, &RationalOptions::default()).unwrap();
        assert!((f0 - 0.5).abs() < 1e-14);
    }

    #[test]
    fn fit_recovers_line() {
        let (b, a, r2) = linear_fit(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert!((b - 2.0).abs() < 1e-15 && (a - 1.0).abs() < 1e-15 && (r2 - 1.0).abs() < 1e-15);
    }
}
