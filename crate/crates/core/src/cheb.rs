//! Chebyshev grids, transforms and series on an interval.

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A closed interval `[lo, hi]` with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInput(format!(
                "interval needs finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    /// `[0, 1]`
    pub fn unit() -> Self {
        Self {
            lo: T::zero(),
            hi: T::one(),
        }
    }

    /// `[-1, 1]`
    pub fn symmetric() -> Self {
        Self {
            lo: -T::one(),
            hi: T::one(),
        }
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Maps `t` in `[-1, 1]` onto the interval.
    pub fn from_unit(&self, t: T) -> T {
        let half = T::from_f64(0.5);
        half * (self.lo + self.hi) + half * (self.hi - self.lo) * t
    }

    /// Maps `x` in the interval onto `[-1, 1]`.
    pub fn to_unit(&self, x: T) -> T {
        let half = T::from_f64(0.5);
        (x - half * (self.lo + self.hi)) / (half * (self.hi - self.lo))
    }

    pub fn to_f64(&self) -> Interval<f64> {
        Interval {
            lo: self.lo.to_f64(),
            hi: self.hi.to_f64(),
        }
    }
}

/// The `m + 1` Chebyshev points of the second kind on `[-1, 1]`, ascending.
///
/// Computed as `sin(pi (2j - m) / (2m))`, which is exactly antisymmetric.
fn unit_cheb_points<T: Real>(m: usize) -> Vec<T> {
    let two_m = T::from_usize(2 * m);
    (0..=m)
        .map(|j| {
            if 2 * j == m {
                T::zero()
            } else {
                let num = 2 * j as i64 - m as i64;
                (T::pi() * T::from_f64(num as f64) / two_m).sin()
            }
        })
        .collect()
}

/// Chebyshev points of the second kind mapped to `domain`, ascending, with
/// the endpoints exactly `lo` and `hi`.
pub fn cheb_points<T: Real>(m: usize, domain: &Interval<T>) -> Result<Vec<T>> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "cheb_points needs m >= 1".to_string(),
        ));
    }
    let mut pts: Vec<T> = unit_cheb_points::<T>(m)
        .into_iter()
        .map(|t| domain.from_unit(t))
        .collect();
    pts[0] = domain.lo;
    pts[m] = domain.hi;
    Ok(pts)
}

/// A polynomial `sum c_k T_k(t)` in the Chebyshev basis, where `t` is the
/// affine image of `x` in `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebSeries<T> {
    coeffs: Vec<T>,
    domain: Interval<T>,
}

impl<T: Real> ChebSeries<T> {
    pub fn new(coeffs: Vec<T>, domain: Interval<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("empty coefficient list".into()));
        }
        Ok(Self { coeffs, domain })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn domain(&self) -> &Interval<T> {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Clenshaw evaluation; `x` must lie in the domain.
    pub fn eval(&self, x: T) -> Result<T> {
        if !self.domain.contains(x) {
            return Err(Error::OutsideDomain(
                x.to_f64(),
                self.domain.lo.to_f64(),
                self.domain.hi.to_f64(),
            ));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: T) -> T {
        let t = self.domain.to_unit(x);
        clenshaw(&self.coeffs, t)
    }
}

/// Clenshaw recurrence carried in double-double: in plain f64 the
/// recurrence loses up to ~10 ulps near the ends of long series.
pub(crate) fn clenshaw<T: Real>(coeffs: &[T], t: T) -> T {
    let t = t.to_dd();
    let two_t = t + t;
    let mut b1 = DoubleDouble::ZERO;
    let mut b2 = DoubleDouble::ZERO;
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = c.to_dd() + two_t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    T::from_dd(coeffs[0].to_dd() + t * b1 - b2)
}

pub fn cheb_eval<T: Real>(s: &ChebSeries<T>, x: T) -> Result<T> {
    s.eval(x)
}

/// Interpolating Chebyshev series through samples taken at
/// `cheb_points(samples.len() - 1, domain)`.
pub fn cheb_fit<T: Real>(samples: &[T], domain: &Interval<T>) -> Result<ChebSeries<T>> {
    if samples.len() < 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            got: samples.len(),
        });
    }
    let coeffs = values_to_coeffs(samples);
    ChebSeries::new(coeffs, *domain)
}

/// Like [`cheb_fit`] but checks the sample count against an expected degree.
pub fn cheb_fit_degree<T: Real>(
    samples: &[T],
    m: usize,
    domain: &Interval<T>,
) -> Result<ChebSeries<T>> {
    if samples.len() != m + 1 {
        return Err(Error::LengthMismatch {
            expected: m + 1,
            got: samples.len(),
        });
    }
    cheb_fit(samples, domain)
}

/// Discrete Chebyshev transform of values at ascending second-kind points.
pub(crate) fn values_to_coeffs<T: Real>(values: &[T]) -> Vec<T> {
    let m = values.len() - 1;
    // values in the classical descending order x_j = cos(j pi / m)
    let w: Vec<T> = values.iter().rev().copied().collect();
    let mut c = if m.is_power_of_two() && m >= 4 {
        dct1_fft(&w)
    } else {
        dct1_direct(&w)
    };
    let scale = T::from_usize(m);
    for ck in c.iter_mut() {
        *ck /= scale;
    }
    c[0] *= T::from_f64(0.5);
    c[m] *= T::from_f64(0.5);
    c
}

/// `Y_k = w_0 + (-1)^k w_m + 2 sum_{j=1}^{m-1} w_j cos(pi j k / m)`.
///
/// The sums cancel heavily, so they are accumulated in double-double; the
/// plain O(m) summation loses two decimal digits by m ~ 500.
fn dct1_direct<T: Real>(w: &[T]) -> Vec<T> {
    let m = w.len() - 1;
    let two_m = 2 * m;
    let table: Vec<DoubleDouble> = (0..two_m)
        .map(|i| (DoubleDouble::pi() * DoubleDouble::from_usize(i) / DoubleDouble::from_usize(m)).cos())
        .collect();
    let wd: Vec<DoubleDouble> = w.iter().map(|v| v.to_dd()).collect();
    (0..=m)
        .map(|k| {
            let mut acc = wd[0] + if k % 2 == 0 { wd[m] } else { -wd[m] };
            for (j, &wj) in wd.iter().enumerate().take(m).skip(1) {
                acc += (wj + wj) * table[(j * k) % two_m];
            }
            T::from_dd(acc)
        })
        .collect()
}

/// Same transform as [`dct1_direct`] through an FFT of the even extension,
/// also carried in double-double.
fn dct1_fft<T: Real>(w: &[T]) -> Vec<T> {
    let m = w.len() - 1;
    let n = 2 * m;
    let mut re: Vec<DoubleDouble> = Vec::with_capacity(n);
    re.extend(w.iter().map(|v| v.to_dd()));
    re.extend(w[1..m].iter().rev().map(|v| v.to_dd()));
    let mut im = vec![DoubleDouble::ZERO; n];
    fft_in_place(&mut re, &mut im);
    re.into_iter().take(m + 1).map(T::from_dd).collect()
}

/// Iterative radix-2 forward FFT, `X_k = sum x_j exp(-2 pi i j k / n)`.
pub(crate) fn fft_in_place<T: Real>(re: &mut [T], im: &mut [T]) {
    let n = re.len();
    assert!(n.is_power_of_two() && im.len() == n);
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            re.swap(i, j);
            im.swap(i, j);
        }
    }
    // twiddles for the full length; sub-lengths stride through them
    let half = n / 2;
    let tw: Vec<(T, T)> = (0..half)
        .map(|k| {
            let a = T::pi() * T::from_usize(2 * k) / T::from_usize(n);
            (a.cos(), -a.sin())
        })
        .collect();
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let (wr, wi) = tw[k * stride];
                let a = start + k;
                let b = a + len / 2;
                let tr = re[b] * wr - im[b] * wi;
                let ti = re[b] * wi + im[b] * wr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
            }
        }
        len <<= 1;
    }
}

/// Chopping rule for a Chebyshev coefficient sequence: returns how many
/// leading coefficients to keep, or `coeffs.len()` when the sequence has
/// not yet reached a noise plateau below `tol`.
///
/// The monotone envelope of `|c_j|` is scanned for a plateau; the cut is then
/// placed at the minimum of the log-envelope tilted by a ramp of slope
/// `-log10(tol) / 3`.
pub fn standard_chop(coeffs: &[f64], tol: f64) -> usize {
    if tol >= 1.0 {
        return 1;
    }
    let n = coeffs.len();
    if n < 17 {
        return n;
    }
    let mut env: Vec<f64> = coeffs.iter().map(|c| c.abs()).collect();
    for j in (0..n - 1).rev() {
        env[j] = env[j].max(env[j + 1]);
    }
    if env[0] == 0.0 {
        return 1;
    }
    let top = env[0];
    for e in env.iter_mut() {
        *e /= top;
    }

    // 1-based indices below
    let mut plateau_point = 0;
    let mut j2 = 0;
    for j in 2..=n {
        j2 = (1.25 * j as f64 + 5.0).round() as usize;
        if j2 > n {
            return n;
        }
        let e1 = env[j - 1];
        let e2 = env[j2 - 1];
        let r = 3.0 * (1.0 - e1.ln() / tol.ln());
        if e1 == 0.0 || e2 / e1 > r {
            plateau_point = j - 1;
            break;
        }
    }
    if plateau_point == 0 {
        return n;
    }
    if env[plateau_point - 1] == 0.0 {
        return plateau_point;
    }
    let floor = tol.powf(7.0 / 6.0);
    let j3 = env.iter().filter(|&&e| e >= floor).count();
    if j3 < j2 {
        j2 = j3 + 1;
        env[j2 - 1] = floor;
    }
    let ramp = -tol.log10() / 3.0;
    let mut best = f64::INFINITY;
    let mut d = 1;
    for i in 0..j2 {
        let lin = if j2 == 1 {
            ramp
        } else {
            ramp * i as f64 / (j2 - 1) as f64
        };
        let cc = env[i].log10() + lin;
        if cc < best {
            best = cc;
            d = i + 1;
        }
    }
    d.saturating_sub(1).max(1)
}

/// Grid sizes tried by [`adaptive_fit`]: `m = 16, 32, ..., 2^20` intervals.
pub const ADAPTIVE_MAX_LOG2: u32 = 20;

/// Chebyshev series of `f` on `domain` whose degree is set adaptively:
/// `f` is sampled on nested grids of `m + 1` points, `m = 16, 32, 64, ...`,
/// until [`standard_chop`] finds a plateau below `tol`, and the series is
/// truncated there.
pub fn adaptive_fit<T, F>(f: F, domain: &Interval<T>, tol: f64) -> Result<ChebSeries<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidInput(format!("tol must lie in (0, 1), got {tol}")));
    }
    for log2 in 4..=ADAPTIVE_MAX_LOG2 {
        let m = 1usize << log2;
        let pts = cheb_points(m, domain)?;
        let vals: Vec<T> = pts.iter().map(|&x| f(x)).collect();
        if let Some(bad) = vals.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite sample {bad}")));
        }
        let mut coeffs = values_to_coeffs(&vals);
        let mags: Vec<f64> = coeffs.iter().map(|c| c.to_f64()).collect();
        let cutoff = standard_chop(&mags, tol);
        if cutoff < coeffs.len() {
            coeffs.truncate(cutoff);
            return ChebSeries::new(coeffs, *domain);
        }
    }
    Err(Error::NotResolved {
        tol,
        points: (1 << ADAPTIVE_MAX_LOG2) + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DoubleDouble;

    #[test]
    fn points_small_cases() {
        let sym = Interval::<f64>::symmetric();
        assert_eq!(cheb_points(1, &sym).unwrap(), vec![-1.0, 1.0]);
        assert_eq!(cheb_points(2, &sym).unwrap(), vec![-1.0, 0.0, 1.0]);
        let p = cheb_points(4, &Interval::<f64>::unit()).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p[2], 0.5);
        assert_eq!((p[0], p[4]), (0.0, 1.0));
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        assert!(cheb_points(0, &sym).is_err());
    }

    #[test]
    fn degenerate_interval_rejected() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
    }

    #[test]
    fn fit_known_expansions() {
        let sym = Interval::<f64>::symmetric();
        let c = cheb_fit(&[1.0; 9], &sym).unwrap();
        assert!((c.coeffs()[0] - 1.0).abs() < 1e-15);
        assert!(c.coeffs()[1..].iter().all(|v| v.abs() < 1e-15));

        let c = cheb_fit(&[-1.0, 1.0], &sym).unwrap();
        assert_eq!(c.coeffs(), &[0.0, 1.0]);

        let c = cheb_fit(&[1.0, 0.0, 1.0], &sym).unwrap();
        assert!((c.coeffs()[0] - 0.5).abs() < 1e-16);
        assert!(c.coeffs()[1].abs() < 1e-16);
        assert!((c.coeffs()[2] - 0.5).abs() < 1e-16);
        assert_eq!(c.eval(1.0).unwrap(), 1.0);
    }

    #[test]
    fn eval_identity_and_domain_check() {
        let s = ChebSeries::new(vec![0.0, 1.0], Interval::symmetric()).unwrap();
        assert_eq!(s.eval(0.3).unwrap(), 0.3);
        assert!(matches!(s.eval(1.5), Err(Error::OutsideDomain(..))));
    }

    #[test]
    fn length_mismatch() {
        let sym = Interval::<f64>::symmetric();
        assert!(matches!(
            cheb_fit_degree(&[1.0, 2.0, 3.0], 3, &sym),
            Err(Error::LengthMismatch { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn fft_matches_direct_transform() {
        let w: Vec<f64> = (0..=64).map(|j| ((j * j) as f64 * 0.37).sin()).collect();
        let a = dct1_direct(&w);
        let b = dct1_fft(&w);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }

    // In f64 the rounding of the nodes themselves, amplified 64-fold by the
    // power, already leaves ~1.5e-13 relative error at 0.9.
    #[test]
    fn power_64_on_unit_interval() {
        let dom = Interval::<DoubleDouble>::unit();
        let pts = cheb_points(64, &dom).unwrap();
        let vals: Vec<DoubleDouble> = pts.iter().map(|x| x.powi(64)).collect();
        let s = cheb_fit(&vals, &dom).unwrap();
        let x = DoubleDouble::new(0.9);
        let want = x.powi(64);
        assert!(f64::from((s.eval(x).unwrap() - want).abs() / want) < 1e-13);
        let s64 = cheb_fit(&vals.iter().map(|v| v.hi()).collect::<Vec<_>>(), &Interval::unit()).unwrap();
        let want = 0.9f64.powi(64);
        assert!((s64.eval(0.9).unwrap() - want).abs() / want < 1e-12);
    }

    #[test]
    fn double_double_round_trip() {
        let dom = Interval::<DoubleDouble>::unit();
        let pts = cheb_points(32, &dom).unwrap();
        let vals: Vec<DoubleDouble> = pts.iter().map(|x| x.exp()).collect();
        let s = cheb_fit(&vals, &dom).unwrap();
        for (x, v) in pts.iter().zip(&vals) {
            let e = (s.eval(*x).unwrap() - *v).abs();
            assert!(f64::from(e) < 1e-29);
        }
    }

    #[test]
    fn chop_constant_and_zero() {
        assert_eq!(standard_chop(&[0.0; 20], 1e-15), 1);
        assert_eq!(standard_chop(&[1.0; 5], 1e-15), 5);
        assert_eq!(standard_chop(&[1.0], 2.0), 1);
    }

    #[test]
    fn adaptive_rejects_bad_tol() {
        assert!(adaptive_fit(|x: f64| x, &Interval::unit(), 0.0).is_err());
        assert!(adaptive_fit(|x: f64| x, &Interval::unit(), 1.0).is_err());
    }

    #[test]
    fn adaptive_identity_has_degree_one() {
        let s = adaptive_fit(|x: f64| x, &Interval::unit(), 1e-15).unwrap();
        assert_eq!(s.degree(), 1);
    }

    #[test]
    fn adaptive_gives_up_on_a_jump() {
        let step = |x: f64| if x < 0.3 { 0.0 } else { 1.0 };
        let r = adaptive_fit(step, &Interval::unit(), 1e-15);
        assert!(matches!(r, Err(Error::NotResolved { .. })));
    }
}
