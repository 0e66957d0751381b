//! Rational functions in barycentric form
//! `r(x) = sum w_j v_j / (x - t_j) / sum w_j / (x - t_j)`.

use crate::cheb::Interval;
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, Lu, Mat};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct BarycentricRational<T> {
    nodes: Vec<T>,
    values: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> BarycentricRational<T> {
    pub fn new(nodes: Vec<T>, values: Vec<T>, weights: Vec<T>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != values.len() || nodes.len() != weights.len() {
            return Err(Error::InvalidInput(
                "nodes, values and weights must be non-empty and of equal length".into(),
            ));
        }
        if weights.iter().all(|&w| w == T::zero()) {
            return Err(Error::InvalidInput("all barycentric weights are zero".into()));
        }
        for (i, a) in nodes.iter().enumerate() {
            if nodes[i + 1..].iter().any(|b| b == a) {
                return Err(Error::InvalidInput(format!("repeated support node {a}")));
            }
        }
        Ok(Self {
            nodes,
            values,
            weights,
        })
    }

    /// Builds the form from numerator coefficients `alpha_j = w_j v_j` and
    /// denominator coefficients `beta_j = w_j`.
    pub fn from_coefficients(nodes: Vec<T>, alpha: &[T], beta: &[T]) -> Result<Self> {
        let values = alpha
            .iter()
            .zip(beta)
            .map(|(&a, &b)| if b == T::zero() { T::infinity() } else { a / b })
            .collect();
        Self::new(nodes, values, beta.to_vec())
    }

    /// A constant function.
    pub fn constant(node: T, value: T) -> Self {
        Self {
            nodes: vec![node],
            values: vec![value],
            weights: vec![T::one()],
        }
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `m` for a type-`(m, m)` function.
    pub fn type_bound(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Evaluates the barycentric quotient. At a support node the stored value
    /// is returned; at a pole the result is a signed infinity.
    pub fn eval(&self, x: T) -> T {
        let mut num = T::zero();
        let mut den = T::zero();
        for ((&t, &v), &w) in self.nodes.iter().zip(&self.values).zip(&self.weights) {
            let d = x - t;
            if d == T::zero() {
                if w == T::zero() {
                    continue;
                }
                return v;
            }
            let c = w / d;
            num += c * v;
            den += c;
        }
        if den == T::zero() {
            return if num < T::zero() { -T::infinity() } else { T::infinity() };
        }
        num / den
    }

    /// Sign of the denominator polynomial `q(x) = sum_j w_j prod_{m != j}(x - t_m)`
    /// at `x`, computed without forming the product.
    pub fn denominator_sign(&self, x: T) -> i8 {
        let mut den = T::zero();
        let mut node_sign = false;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let d = x - t;
            if d == T::zero() {
                // q(t_j) = w_j prod_{m != j}(t_j - t_m)
                let mut neg = w < T::zero();
                for &s in &self.nodes {
                    if s != t && t < s {
                        neg = !neg;
                    }
                }
                return if neg { -1 } else { 1 };
            }
            if d < T::zero() {
                node_sign = !node_sign;
            }
            den += w / d;
        }
        let neg = (den < T::zero()) != node_sign;
        if den == T::zero() {
            0
        } else if neg {
            -1
        } else {
            1
        }
    }

    /// First point of `grid` (ascending) after which the denominator
    /// polynomial has changed sign, i.e. a real pole lies between two samples.
    pub fn pole_on_grid(&self, grid: &[T]) -> Option<T> {
        let mut prev = 0i8;
        for &x in grid {
            let s = self.denominator_sign(x);
            if s == 0 {
                return Some(x);
            }
            if prev != 0 && s != prev {
                return Some(x);
            }
            prev = s;
        }
        None
    }

    /// Poles as `(re, im)` pairs.
    pub fn poles(&self) -> Result<Vec<(T, T)>> {
        roots_of_cauchy_sum(&self.nodes, &self.weights)
    }

    /// Zeros as `(re, im)` pairs.
    pub fn zeros(&self) -> Result<Vec<(T, T)>> {
        let alpha: Vec<T> = self
            .weights
            .iter()
            .zip(&self.values)
            .map(|(&w, &v)| w * v)
            .collect();
        if alpha.iter().all(|&a| a == T::zero()) {
            return Ok(Vec::new());
        }
        roots_of_cauchy_sum(&self.nodes, &alpha)
    }

    /// Sup of `|f - r|` over `grid`.
    pub fn max_error_on<F: Fn(T) -> T>(&self, f: &F, grid: &[T]) -> T {
        grid.iter()
            .map(|&x| (f(x) - self.eval(x)).abs())
            .fold(T::zero(), T::max)
    }
}

/// Roots of `sum_j c_j / (x - t_j)` as eigenvalues of a shifted arrowhead
/// pencil `[[0, c^T], [1, T - s I]]` against `diag(0, 1, ..., 1)`: with `E`
/// the first matrix, finite roots are `s + 1/nu` for the nonzero eigenvalues
/// `nu` of `E^{-1} B`.
fn roots_of_cauchy_sum<T: Real>(t: &[T], c: &[T]) -> Result<Vec<(T, T)>> {
    let n = t.len();
    if n < 2 {
        return Ok(Vec::new());
    }
    let lo = t.iter().copied().fold(T::infinity(), T::min);
    let hi = t.iter().copied().fold(-T::infinity(), T::max);
    let width = (hi - lo).max(T::one());
    let shift = hi + width * T::from_f64(2.5);
    let size = n + 1;
    let e = Mat::from_fn(size, size, |i, j| match (i, j) {
        (0, 0) => T::zero(),
        (0, j) => c[j - 1],
        (_, 0) => T::one(),
        (i, j) if i == j => t[i - 1] - shift,
        _ => T::zero(),
    });
    let lu = Lu::new(&e)?;
    // columns of E^{-1} B: B zeroes the first column
    let mut m = Mat::zeros(size, size);
    for j in 1..size {
        let mut col = vec![T::zero(); size];
        col[j] = T::one();
        let x = lu.solve(&col);
        for i in 0..size {
            m[(i, j)] = x[i];
        }
    }
    let nus = eigenvalues(&m)?;
    let far = width * T::from_f64(1e8);
    let mut roots = Vec::new();
    for (re, im) in nus {
        let mag2 = re * re + im * im;
        if mag2 == T::zero() {
            continue;
        }
        // 1 / (re + i im) = (re - i im) / |nu|^2
        let (rr, ri) = (re / mag2, -im / mag2);
        if (rr * rr + ri * ri).sqrt() > far {
            continue;
        }
        roots.push((shift + rr, ri));
    }
    Ok(roots)
}

/// Checks that `r` has no pole on `domain` by scanning the denominator sign
/// over `m + 1` Chebyshev points.
pub fn assert_pole_free<T: Real>(r: &BarycentricRational<T>, domain: &Interval<T>, m: usize) -> Result<()> {
    let grid = crate::cheb::cheb_points(m, domain)?;
    match r.pole_on_grid(&grid) {
        Some(x) => Err(Error::PoleOnDomain(x.to_f64())),
        None => Ok(()),
    }
}

pub fn eval_rational<T: Real>(r: &BarycentricRational<T>, x: T) -> T {
    r.eval(x)
}
