//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`s with
//! `|lo| <= ulp(hi) / 2`, giving roughly 106 significand bits.
//!
//! The error-free transformations follow Dekker and Knuth; the elementary
//! functions reduce their argument and sum a Taylor series, then undo the
//! reduction.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[allow(clippy::excessive_precision)]
const LN2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.319046813846299558e-17,
};
#[allow(clippy::excessive_precision)]
const PI: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::PI,
    lo: 1.224646799147353207e-16,
};
const EPS: f64 = 4.93038065763132e-32; // 2^-104

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub const fn new(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }

    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn epsilon() -> Self {
        Self::new(EPS)
    }

    pub fn pi() -> Self {
        PI
    }

    pub fn ln2() -> Self {
        LN2
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    pub fn is_nan(self) -> bool {
        self.hi.is_nan()
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 { -self } else { self }
    }

    pub fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (hi, lo) = quick_two_sum(hi, self.lo.floor());
            Self { hi, lo }
        } else {
            Self::new(hi)
        }
    }

    /// Multiplies by `2^e` exactly.
    pub fn ldexp(self, e: i32) -> Self {
        let s = 2f64.powi(e);
        Self {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn sqr(self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, self.hi);
        p2 += 2.0 * self.hi * self.lo;
        p2 += self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::ZERO } else { Self::new(f64::NAN) };
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let (p, e) = two_prod(ax, ax);
        let rem = self - Self { hi: p, lo: e };
        Self::new(ax) + Self::new(rem.hi * x * 0.5)
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 { acc.recip() } else { acc }
    }

    /// `e^r - 1` for `|r| <= 1/2048` by Taylor series.
    fn expm1_small(r: Self) -> Self {
        let mut term = r;
        let mut sum = r;
        let mut i = 2.0;
        loop {
            term = term * r / Self::new(i);
            sum += term;
            if term.hi.abs() <= EPS * 1e-3 * sum.hi.abs() {
                break;
            }
            i += 1.0;
        }
        sum
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.7 {
            return Self::new(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        if self.hi == 0.0 {
            return Self::ONE;
        }
        let m = (self.hi / LN2.hi).round();
        let r = (self - LN2 * Self::new(m)).ldexp(-10);
        // s = e^r - 1; squaring 10 times gives e^(1024 r) - 1
        let mut s = Self::expm1_small(r);
        for _ in 0..10 {
            s = s.ldexp(1) + s.sqr();
        }
        let v = s + Self::ONE;
        // scale in two steps so that 2^m cannot overflow on its own
        let m = m as i32;
        let half = m / 2;
        v.ldexp(half).ldexp(m - half)
    }

    pub fn exp_m1(self) -> Self {
        if self.hi.abs() < 0.5 {
            let r = self.ldexp(-10);
            let mut s = Self::expm1_small(r);
            for _ in 0..10 {
                s = s.ldexp(1) + s.sqr();
            }
            s
        } else {
            self.exp() - Self::ONE
        }
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Self::new(f64::NEG_INFINITY)
            } else {
                Self::new(f64::NAN)
            };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let mut x = Self::new(self.hi.ln());
        for _ in 0..2 {
            x = x + self * (-x).exp() - Self::ONE;
        }
        x
    }

    pub fn ln_1p(self) -> Self {
        if self.hi.abs() > 0.25 {
            return (Self::ONE + self).ln();
        }
        // Newton on expm1(y) = x, which keeps relative accuracy for tiny x
        let mut y = Self::new(self.hi.ln_1p());
        for _ in 0..2 {
            let em = y.exp_m1();
            y = y - (em - self) / (em + Self::ONE);
        }
        y
    }

    fn sin_taylor(r: Self) -> Self {
        let r2 = r.sqr();
        let mut term = r;
        let mut sum = r;
        let mut i = 2.0;
        loop {
            term = -(term * r2) / Self::new(i * (i + 1.0));
            sum += term;
            if term.hi.abs() <= EPS * 1e-3 * sum.hi.abs().max(1e-300) {
                break;
            }
            i += 2.0;
        }
        sum
    }

    fn cos_taylor(r: Self) -> Self {
        let r2 = r.sqr();
        let mut term = Self::ONE;
        let mut sum = Self::ONE;
        let mut i = 1.0;
        loop {
            term = -(term * r2) / Self::new(i * (i + 1.0));
            sum += term;
            if term.hi.abs() <= EPS * 1e-3 {
                break;
            }
            i += 2.0;
        }
        sum
    }

    /// Reduces `self` to `r + q * pi / 2` with `|r| <= pi / 4`.
    fn reduce_half_pi(self) -> (Self, i64) {
        let half_pi = PI.ldexp(-1);
        let q = (self.hi / half_pi.hi).round();
        (self - half_pi * Self::new(q), q as i64)
    }

    pub fn sin(self) -> Self {
        let (r, q) = self.reduce_half_pi();
        match q.rem_euclid(4) {
            0 => Self::sin_taylor(r),
            1 => Self::cos_taylor(r),
            2 => -Self::sin_taylor(r),
            _ => -Self::cos_taylor(r),
        }
    }

    pub fn cos(self) -> Self {
        let (r, q) = self.reduce_half_pi();
        match q.rem_euclid(4) {
            0 => Self::cos_taylor(r),
            1 => -Self::sin_taylor(r),
            2 => -Self::cos_taylor(r),
            _ => Self::sin_taylor(r),
        }
    }

    /// Parses a plain or scientific decimal literal such as `9.2890254919208`
    /// or `-1.5e-3`.
    pub fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mantissa, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
            None => (body, 0),
        };
        let mut acc = Self::ZERO;
        let mut frac_digits = 0i32;
        let mut seen_point = false;
        let mut any = false;
        for c in mantissa.chars() {
            match c {
                '.' if !seen_point => seen_point = true,
                '0'..='9' => {
                    any = true;
                    acc = acc * Self::new(10.0) + Self::new(f64::from(c as u8 - b'0'));
                    if seen_point {
                        frac_digits += 1;
                    }
                }
                _ => return None,
            }
        }
        if !any {
            return None;
        }
        let e = exp - frac_digits;
        let ten = Self::new(10.0);
        let v = if e >= 0 { acc * ten.powi(e) } else { acc / ten.powi(-e) };
        Some(if neg { -v } else { v })
    }

    /// Decimal rendering with `digits` significant digits in scientific form.
    pub fn to_sci_string(self, digits: usize) -> String {
        if self.hi.is_nan() {
            return "NaN".into();
        }
        if self.hi.is_infinite() {
            return if self.hi > 0.0 { "inf".into() } else { "-inf".into() };
        }
        if self.hi == 0.0 {
            return "0".into();
        }
        let neg = self.hi < 0.0;
        let mut x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        let ten = Self::new(10.0);
        x = if e >= 0 { x / ten.powi(e) } else { x * ten.powi(-e) };
        if x.hi >= 10.0 {
            x /= ten;
            e += 1;
        } else if x.hi < 1.0 {
            x *= ten;
            e -= 1;
        }
        let mut ds = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = x.hi.floor().clamp(0.0, 9.0);
            ds.push(d as u8);
            x = (x - Self::new(d)) * ten;
        }
        // round on the guard digit
        if ds[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        ds.truncate(digits);
        while ds.len() > 1 && *ds.last().unwrap() == 0 {
            ds.pop();
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push((b'0' + ds[0]) as char);
        if ds.len() > 1 {
            out.push('.');
            for d in &ds[1..] {
                out.push((b'0' + d) as char);
            }
        }
        out.push_str(&format!("e{e}"));
        out
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::new(x)
    }
}

impl From<DoubleDouble> for f64 {
    fn from(x: DoubleDouble) -> f64 {
        x.hi + x.lo
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Self::new(s1);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b.hi);
        if !p1.is_finite() {
            return Self::new(p1);
        }
        p2 += self.hi * b.lo + self.lo * b.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Self::new(q1);
        }
        let r = self - b * Self::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Self::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::new(q3)
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DoubleDouble {
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(32))
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(32))
    }
}
