//! Working-precision scalars.
//!
//! Every numerical routine in the crate is generic over [`Real`]. Two
//! precisions are provided: `f64` (53 significand bits) and
//! [`DoubleDouble`] (106 bits). The precision is chosen once per run through
//! [`Precision`].

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};

pub trait Real:
    Copy
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
{
    /// Significand size in bits.
    const BITS: u32;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn from_dd(x: DoubleDouble) -> Self;
    fn to_dd(self) -> DoubleDouble;

    fn epsilon() -> Self;
    fn pi() -> Self;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn exp_m1(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn floor(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn is_finite(self) -> bool;
    fn is_nan(self) -> bool;

    /// Full-precision decimal rendering; parsing it back yields the same value.
    fn to_decimal(self) -> String;
    fn parse_decimal(s: &str) -> Option<Self>;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn infinity() -> Self {
        Self::from_f64(f64::INFINITY)
    }

    fn from_usize(n: usize) -> Self {
        Self::from_f64(n as f64)
    }

    fn max(self, other: Self) -> Self {
        if other > self { other } else { self }
    }

    fn min(self, other: Self) -> Self {
        if other < self { other } else { self }
    }

    fn signum(self) -> Self {
        if self < Self::zero() {
            -Self::one()
        } else {
            Self::one()
        }
    }

    fn powf(self, y: Self) -> Self {
        (y * self.ln()).exp()
    }
}

impl Real for f64 {
    const BITS: u32 = 53;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn from_dd(x: DoubleDouble) -> Self {
        x.into()
    }
    fn to_dd(self) -> DoubleDouble {
        DoubleDouble::new(self)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn floor(self) -> Self {
        f64::floor(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn is_nan(self) -> bool {
        f64::is_nan(self)
    }
    fn to_decimal(self) -> String {
        // shortest representation that round-trips
        format!("{self:e}")
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn powf(self, y: Self) -> Self {
        f64::powf(self, y)
    }
}

impl Real for DoubleDouble {
    const BITS: u32 = 106;

    fn from_f64(x: f64) -> Self {
        DoubleDouble::new(x)
    }
    fn to_f64(self) -> f64 {
        self.into()
    }
    fn from_dd(x: DoubleDouble) -> Self {
        x
    }
    fn to_dd(self) -> DoubleDouble {
        self
    }
    fn epsilon() -> Self {
        DoubleDouble::epsilon()
    }
    fn pi() -> Self {
        DoubleDouble::pi()
    }
    fn abs(self) -> Self {
        DoubleDouble::abs(self)
    }
    fn sqrt(self) -> Self {
        DoubleDouble::sqrt(self)
    }
    fn exp(self) -> Self {
        DoubleDouble::exp(self)
    }
    fn exp_m1(self) -> Self {
        DoubleDouble::exp_m1(self)
    }
    fn ln(self) -> Self {
        DoubleDouble::ln(self)
    }
    fn ln_1p(self) -> Self {
        DoubleDouble::ln_1p(self)
    }
    fn sin(self) -> Self {
        DoubleDouble::sin(self)
    }
    fn cos(self) -> Self {
        DoubleDouble::cos(self)
    }
    fn floor(self) -> Self {
        DoubleDouble::floor(self)
    }
    fn powi(self, n: i32) -> Self {
        DoubleDouble::powi(self, n)
    }
    fn is_finite(self) -> bool {
        DoubleDouble::is_finite(self)
    }
    fn is_nan(self) -> bool {
        DoubleDouble::is_nan(self)
    }
    fn to_decimal(self) -> String {
        self.to_sci_string(33)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        DoubleDouble::parse_decimal(s)
    }
}

/// `x^n` for real `n >= 0`: integer powers by repeated squaring, otherwise
/// `exp(n log x)`; `0^n = 0` for `n > 0`.
pub fn pow_real<T: Real>(x: T, n: T) -> T {
    if n == T::zero() {
        return T::one();
    }
    if x == T::zero() {
        return T::zero();
    }
    let nf = n.to_f64();
    if nf.fract() == 0.0 && nf.abs() < 2f64.powi(31) {
        x.powi(nf as i32)
    } else {
        (n * x.ln()).exp()
    }
}

/// Run-wide working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// IEEE double, 53 bits.
    Double,
    /// Double-double, 106 bits.
    DoubleDouble,
}

impl Precision {
    /// Picks the narrowest supported format with at least `bits` bits.
    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            0..=52 => Err(Error::InvalidInput(format!(
                "precision must be at least 53 bits, got {bits}"
            ))),
            53 => Ok(Self::Double),
            _ => Ok(Self::DoubleDouble),
        }
    }

    /// Raises the precision when the smallest error the run must resolve is
    /// below the double-precision noise floor.
    pub fn escalate_for_target(self, error_target: f64) -> Self {
        if error_target < 1e-11 { Self::DoubleDouble } else { self }
    }

    pub fn bits(self) -> u32 {
        match self {
            Self::Double => <f64 as Real>::BITS,
            Self::DoubleDouble => DoubleDouble::BITS,
        }
    }
}
