//! Small dense linear algebra over [`Real`]: LU solves, Householder QR,
//! one-sided Jacobi SVD and Hessenberg QR eigenvalues.
//!
//! The matrices in this crate are at most a few dozen columns wide, so
//! everything is written for clarity rather than blocking or cache use.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * other[(k, j)]).sum()
        })
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial pivoting of a square matrix.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Mat<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    /// Factors `a`; exactly zero pivots are an error.
    pub fn new(a: &Mat<T>) -> Result<Self> {
        Self::factor(a, false)
    }

    /// Factors `a`, nudging zero pivots to a tiny value instead of failing.
    /// Used by inverse iteration, where the matrix is singular on purpose.
    pub fn new_perturbed(a: &Mat<T>) -> Self {
        Self::factor(a, true).expect("perturbed LU cannot fail")
    }

    fn factor(a: &Mat<T>, perturb: bool) -> Result<Self> {
        assert_eq!(a.rows, a.cols);
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a
            .data
            .iter()
            .fold(T::zero(), |m, &v| m.max(v.abs()))
            .max(T::from_f64(1e-300));
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if lu[(i, k)].abs() > lu[(p, k)].abs() {
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let mut pivot = lu[(k, k)];
            if pivot == T::zero() || !pivot.is_finite() {
                if !perturb {
                    return Err(Error::Singular);
                }
                pivot = T::epsilon() * scale;
                lu[(k, k)] = pivot;
            }
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f != T::zero() {
                    for j in k + 1..n {
                        let v = lu[(k, j)];
                        lu[(i, j)] -= f * v;
                    }
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.lu.rows;
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }
}

pub fn solve<T: Real>(a: &Mat<T>, b: &[T]) -> Result<Vec<T>> {
    let x = Lu::new(a)?.solve(b);
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular);
    }
    Ok(x)
}

fn norm2<T: Real>(v: &[T]) -> T {
    let scale = v.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    if scale == T::zero() {
        return T::zero();
    }
    let s: T = v.iter().map(|&x| (x / scale) * (x / scale)).sum();
    scale * s.sqrt()
}

/// Upper triangular factor `R` (`cols x cols`) of a tall matrix `a = QR`.
pub fn qr_r<T: Real>(a: &Mat<T>) -> Mat<T> {
    let (m, n) = (a.rows, a.cols);
    let mut r = a.clone();
    for k in 0..n.min(m) {
        let x: Vec<T> = (k..m).map(|i| r[(i, k)]).collect();
        let alpha = norm2(&x);
        if alpha == T::zero() {
            continue;
        }
        let alpha = if x[0] > T::zero() { -alpha } else { alpha };
        let mut v = x;
        v[0] -= alpha;
        let vnorm = norm2(&v);
        if vnorm == T::zero() {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= vnorm;
        }
        for j in k..n {
            let dot: T = (k..m).map(|i| v[i - k] * r[(i, j)]).sum();
            let two_dot = dot + dot;
            for i in k..m {
                r[(i, j)] -= two_dot * v[i - k];
            }
        }
    }
    Mat::from_fn(n, n, |i, j| if i <= j && i < m { r[(i, j)] } else { T::zero() })
}

/// Singular values (descending) and right singular vectors (as columns of
/// `V`, in the same order) by one-sided Jacobi.
pub fn svd_right<T: Real>(a: &Mat<T>) -> (Vec<T>, Mat<T>) {
    let n = a.cols;
    let mut w = if a.rows > n { qr_r(a) } else { a.clone() };
    let mut v = Mat::identity(n);
    let tol = T::epsilon();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = T::zero();
                for i in 0..w.rows {
                    let (x, y) = (w[(i, p)], w[(i, q)]);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == T::zero() || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..w.rows {
                    let (x, y) = (w[(i, p)], w[(i, q)]);
                    w[(i, p)] = c * x - s * y;
                    w[(i, q)] = s * x + c * y;
                }
                for i in 0..n {
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * x - s * y;
                    v[(i, q)] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma: Vec<T> = (0..n).map(|j| norm2(&w.col(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap_or(std::cmp::Ordering::Equal));
    let sorted_sigma = order.iter().map(|&j| sigma[j]).collect();
    let sorted_v = Mat::from_fn(n, n, |i, k| v[(i, order[k])]);
    (sorted_sigma, sorted_v)
}

/// Right singular vector for the smallest singular value, and that value.
pub fn null_vector<T: Real>(a: &Mat<T>) -> (Vec<T>, T) {
    let (s, v) = svd_right(a);
    let n = a.cols;
    (v.col(n - 1), s[n - 1])
}

/// Eigenvalues of a general real square matrix as `(re, im)` pairs.
pub fn eigenvalues<T: Real>(a: &Mat<T>) -> Result<Vec<(T, T)>> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return Ok(Vec::new());
    }
    // 1-based working copy, as in the classical EISPACK formulation
    let mut h = vec![vec![T::zero(); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            h[i + 1][j + 1] = a[(i, j)];
        }
    }
    elmhes(&mut h, n);
    for i in 1..=n {
        for j in 1..=n {
            if i > j + 1 {
                h[i][j] = T::zero();
            }
        }
    }
    hqr(&mut h, n)
}

fn elmhes<T: Real>(a: &mut [Vec<T>], n: usize) {
    for m in 2..n {
        let mut x = T::zero();
        let mut i = m;
        for j in m..=n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                i = j;
            }
        }
        if i != m {
            for j in m - 1..=n {
                let t = a[i][j];
                a[i][j] = a[m][j];
                a[m][j] = t;
            }
            for row in a.iter_mut().skip(1) {
                row.swap(i, m);
            }
        }
        if x != T::zero() {
            for i in m + 1..=n {
                let mut y = a[i][m - 1];
                if y != T::zero() {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..=n {
                        let v = a[m][j];
                        a[i][j] -= y * v;
                    }
                    for j in 1..=n {
                        let v = a[j][i];
                        a[j][m] += y * v;
                    }
                }
            }
        }
    }
}

#[allow(unused_assignments)]
fn hqr<T: Real>(a: &mut [Vec<T>], n: usize) -> Result<Vec<(T, T)>> {
    let eps = T::epsilon();
    let zero = T::zero();
    let mut wr = vec![zero; n + 1];
    let mut wi = vec![zero; n + 1];
    let mut anorm = zero;
    for i in 1..=n {
        for j in (i.max(2) - 1)..=n {
            anorm += a[i][j].abs();
        }
    }
    let mut nn = n;
    let mut t = zero;
    let (mut p, mut q, mut r) = (zero, zero, zero);
    let (mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == zero {
                    s = anorm;
                }
                if a[l][l - 1].abs() <= eps * s {
                    a[l][l - 1] = zero;
                    break;
                }
                l -= 1;
            }
            x = a[nn][nn];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = zero;
                nn -= 1;
            } else {
                y = a[nn - 1][nn - 1];
                w = a[nn][nn - 1] * a[nn - 1][nn];
                if l == nn - 1 {
                    p = T::from_f64(0.5) * (y - x);
                    q = p * p + w;
                    z = q.abs().sqrt();
                    x += t;
                    if q >= zero {
                        z = p + if p >= zero { z } else { -z };
                        wr[nn - 1] = x + z;
                        wr[nn] = x + z;
                        if z != zero {
                            wr[nn] = x - w / z;
                        }
                        wi[nn - 1] = zero;
                        wi[nn] = zero;
                    } else {
                        wr[nn - 1] = x + p;
                        wr[nn] = x + p;
                        wi[nn - 1] = -z;
                        wi[nn] = z;
                    }
                    if nn < 2 {
                        nn = 0;
                    } else {
                        nn -= 2;
                    }
                } else {
                    if its == 60 {
                        return Err(Error::NoConvergence {
                            iterations: its,
                            error: f64::NAN,
                            defect: f64::NAN,
                        });
                    }
                    if its == 10 || its == 20 || its == 40 {
                        t += x;
                        for i in 1..=nn {
                            a[i][i] -= x;
                        }
                        let s = a[nn][nn - 1].abs() + a[nn - 1][nn - 2].abs();
                        x = T::from_f64(0.75) * s;
                        y = x;
                        w = T::from_f64(-0.4375) * s * s;
                    }
                    its += 1;
                    let mut m = nn - 2;
                    loop {
                        z = a[m][m];
                        let rr = x - z;
                        let ss = y - z;
                        p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - rr - ss;
                        r = a[m + 2][m + 1];
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                        if u <= eps * v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in m + 2..=nn {
                        a[i][i - 2] = zero;
                        if i != m + 2 {
                            a[i][i - 3] = zero;
                        }
                    }
                    let mut k = m;
                    while k + 1 <= nn {
                        if k != m {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = zero;
                            if k != nn - 1 {
                                r = a[k + 2][k - 1];
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != zero {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let mag = (p * p + q * q + r * r).sqrt();
                        let s = if p >= zero { mag } else { -mag };
                        if s != zero {
                            if k == m {
                                if l != m {
                                    a[k][k - 1] = -a[k][k - 1];
                                }
                            } else {
                                a[k][k - 1] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nn {
                                p = a[k][j] + q * a[k + 1][j];
                                if k != nn - 1 {
                                    p += r * a[k + 2][j];
                                    a[k + 2][j] -= p * z;
                                }
                                a[k + 1][j] -= p * y;
                                a[k][j] -= p * x;
                            }
                            let mmin = nn.min(k + 3);
                            for i in l..=mmin {
                                p = x * a[i][k] + y * a[i][k + 1];
                                if k != nn - 1 {
                                    p += z * a[i][k + 2];
                                    a[i][k + 2] -= p * r;
                                }
                                a[i][k + 1] -= p * q;
                                a[i][k] -= p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if nn < 2 || l + 1 >= nn {
                break;
            }
        }
    }
    Ok((1..=n).map(|i| (wr[i], wi[i])).collect())
}

/// Eigenvector for a (real) eigenvalue `lambda` by inverse iteration.
pub fn eigenvector<T: Real>(a: &Mat<T>, lambda: T) -> Vec<T> {
    let n = a.rows;
    let scale = a.data.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    let shift = lambda + (lambda.abs() + scale) * T::epsilon() * T::from_f64(8.0);
    let shifted = Mat::from_fn(n, n, |i, j| {
        if i == j { a[(i, j)] - shift } else { a[(i, j)] }
    });
    let lu = Lu::new_perturbed(&shifted);
    let mut v: Vec<T> = (0..n)
        .map(|i| T::one() + T::from_f64(0.01 * i as f64))
        .collect();
    for _ in 0..4 {
        let mut next = lu.solve(&v);
        let nrm = norm2(&next);
        if nrm == T::zero() || !nrm.is_finite() {
            break;
        }
        for x in next.iter_mut() {
            *x /= nrm;
        }
        v = next;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DoubleDouble;

    #[test]
    fn lu_solves_small_system() {
        let a = Mat::from_fn(3, 3, |i, j| [[2.0, 1.0, 1.0], [4.0, -6.0, 0.0], [-2.0, 7.0, 2.0]][i][j]);
        let x = solve(&a, &[5.0, -2.0, 9.0]).unwrap();
        for (xi, want) in x.iter().zip([1.0, 1.0, 2.0]) {
            assert!((xi - want).abs() < 1e-14);
        }
        let sing = Mat::from_fn(2, 2, |i, _| i as f64);
        assert_eq!(solve(&sing, &[1.0, 1.0]), Err(Error::Singular));
    }

    #[test]
    fn null_vector_of_rank_deficient_matrix() {
        // columns: c0, c1, c0 + 2 c1
        let a = Mat::from_fn(6, 3, |i, j| {
            let c0 = (i as f64 + 1.0).sqrt();
            let c1 = (i as f64).sin();
            [c0, c1, c0 + 2.0 * c1][j]
        });
        let (v, s) = null_vector(&a);
        assert!(s < 1e-14);
        let r = a.mul_vec(&v);
        assert!(r.iter().all(|x| x.abs() < 1e-14));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        assert!((n - 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_values_of_diagonal() {
        let a = Mat::from_fn(4, 3, |i, j| if i == j { [3.0, -7.0, 0.5][i] } else { 0.0 });
        let (s, _) = svd_right(&a);
        assert!((s[0] - 7.0).abs() < 1e-14 && (s[1] - 3.0).abs() < 1e-14 && (s[2] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_real_and_complex() {
        // companion matrix of (x - 1)(x - 2)(x^2 + 1) = x^4 - 3x^3 + 3x^2 - 3x + 2
        let c = [2.0, -3.0, 3.0, -3.0];
        let a = Mat::from_fn(4, 4, |i, j| {
            if j == 3 {
                -c[i]
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        let mut ev = eigenvalues(&a).unwrap();
        ev.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.partial_cmp(&b.1).unwrap()));
        let want = [(0.0, -1.0), (0.0, 1.0), (1.0, 0.0), (2.0, 0.0)];
        for ((re, im), (wr, wi)) in ev.iter().zip(want) {
            assert!((re - wr).abs() < 1e-12 && (im - wi).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn eigenpair_in_double_double() {
        let a: Mat<DoubleDouble> = Mat::from_fn(3, 3, |i, j| {
            DoubleDouble::new([[4.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]][i][j])
        });
        let ev = eigenvalues(&a).unwrap();
        for (lam, im) in ev {
            assert_eq!(im, DoubleDouble::ZERO);
            let v = eigenvector(&a, lam);
            let av = a.mul_vec(&v);
            for (x, y) in av.iter().zip(&v) {
                assert!(f64::from((*x - lam * *y).abs()) < 1e-28);
            }
        }
    }
}
