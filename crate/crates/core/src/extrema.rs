//! Error-curve extrema: location, refinement and alternation selection, and
//! the equioscillation certificate built from them.

use crate::cheb::{cheb_points, Interval};
use crate::scalar::Real;

/// Witness of (near-)optimality: points where the error reaches its maximum
/// magnitude with alternating sign.
#[derive(Clone, Debug, PartialEq)]
pub struct EquioscillationCertificate<T> {
    /// Alternation set, strictly ascending.
    pub points: Vec<T>,
    /// `+1` / `-1`, strictly alternating.
    pub signs: Vec<i8>,
    /// Largest `|error|` on the alternation set.
    pub levelled_error: T,
    /// `(max |e_i| - min |e_i|) / max |e_i|` over the alternation set.
    pub residual_defect: T,
    /// Set when the target is reproduced exactly and no alternation exists.
    pub degenerate: bool,
}

impl<T: Real> EquioscillationCertificate<T> {
    pub fn from_extrema(ext: &[Extremum<T>]) -> Self {
        let (lo, hi) = ext.iter().fold((T::infinity(), T::zero()), |(lo, hi), e| {
            (lo.min(e.value.abs()), hi.max(e.value.abs()))
        });
        let defect = if hi > T::zero() { (hi - lo) / hi } else { T::zero() };
        Self {
            points: ext.iter().map(|e| e.x).collect(),
            signs: ext.iter().map(|e| if e.value < T::zero() { -1 } else { 1 }).collect(),
            levelled_error: hi,
            residual_defect: defect,
            degenerate: false,
        }
    }

    pub fn degenerate(error: T) -> Self {
        Self {
            points: Vec::new(),
            signs: Vec::new(),
            levelled_error: error,
            residual_defect: T::zero(),
            degenerate: true,
        }
    }

    /// Structural checks: ascending points inside `domain`, alternating signs,
    /// defect within `tol`.
    pub fn is_valid(&self, domain: &Interval<T>, tol: f64) -> bool {
        if self.degenerate {
            return true;
        }
        let ascending = self.points.windows(2).all(|w| w[0] < w[1]);
        let inside = self.points.iter().all(|&x| domain.contains(x));
        let alternating = self.signs.windows(2).all(|s| s[0] == -s[1]);
        ascending && inside && alternating && self.residual_defect.to_f64() <= tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum<T> {
    pub x: T,
    pub value: T,
}

/// Golden-section iterations enough to pin a smooth maximum to working
/// precision in its value.
fn golden_iterations<T: Real>() -> usize {
    (T::BITS as usize * 3) / 4 + 4
}

/// Maximizes `|err|` on `[a, b]` by golden-section search; returns the best
/// of the interior optimum and the two ends.
pub fn golden_max_abs<T, E>(err: &E, a: T, b: T) -> Extremum<T>
where
    T: Real,
    E: Fn(T) -> T,
{
    let ea = err(a);
    let eb = err(b);
    let mut best = if ea.abs() >= eb.abs() {
        Extremum { x: a, value: ea }
    } else {
        Extremum { x: b, value: eb }
    };
    if !(a < b) {
        return best;
    }
    let invphi = T::from_f64(0.618_033_988_749_894_9);
    let (mut lo, mut hi) = (a, b);
    let mut c = hi - invphi * (hi - lo);
    let mut d = lo + invphi * (hi - lo);
    let mut ec = err(c);
    let mut ed = err(d);
    for _ in 0..golden_iterations::<T>() {
        if ec.abs() > ed.abs() {
            hi = d;
            d = c;
            ed = ec;
            c = hi - invphi * (hi - lo);
            ec = err(c);
        } else {
            lo = c;
            c = d;
            ec = ed;
            d = lo + invphi * (hi - lo);
            ed = err(d);
        }
        if !(lo < c && c < d && d < hi) {
            break;
        }
    }
    for (x, v) in [(c, ec), (d, ed)] {
        if v.abs() > best.value.abs() {
            best = Extremum { x, value: v };
        }
    }
    best
}

/// Local extrema of `err` with alternating sign: the grid is split into runs
/// of constant sign, the largest sample of each run is refined by golden
/// section between its neighbours.
pub fn alternating_extrema<T, E>(err: &E, grid: &[T]) -> Vec<Extremum<T>>
where
    T: Real,
    E: Fn(T) -> T,
{
    let vals: Vec<T> = grid.iter().map(|&x| err(x)).collect();
    let mut out: Vec<Extremum<T>> = Vec::new();
    let mut run_best: Option<usize> = None;
    let mut run_sign = 0i8;
    let flush = |idx: usize, out: &mut Vec<Extremum<T>>| {
        let a = if idx == 0 { grid[0] } else { grid[idx - 1] };
        let b = if idx + 1 == grid.len() { grid[idx] } else { grid[idx + 1] };
        let mut e = golden_max_abs(err, a, b);
        if e.value.abs() < vals[idx].abs() || (e.value < T::zero()) != (vals[idx] < T::zero()) {
            e = Extremum {
                x: grid[idx],
                value: vals[idx],
            };
        }
        out.push(e);
    };
    for (i, &v) in vals.iter().enumerate() {
        if v == T::zero() || v.is_nan() {
            continue;
        }
        let s: i8 = if v > T::zero() { 1 } else { -1 };
        if s != run_sign {
            if let Some(b) = run_best {
                flush(b, &mut out);
            }
            run_sign = s;
            run_best = Some(i);
        } else if let Some(b) = run_best {
            if v.abs() > vals[b].abs() {
                run_best = Some(i);
            }
        }
    }
    if let Some(b) = run_best {
        flush(b, &mut out);
    }
    // refinement may have pushed neighbours out of order; keep the larger
    let mut cleaned: Vec<Extremum<T>> = Vec::with_capacity(out.len());
    for e in out {
        match cleaned.last_mut() {
            Some(last) if !(last.x < e.x) || (last.value < T::zero()) == (e.value < T::zero()) => {
                if e.value.abs() > last.value.abs() {
                    *last = e;
                }
            }
            _ => cleaned.push(e),
        }
    }
    cleaned
}

/// Trims an alternating list to exactly `n` entries, dropping the smallest
/// magnitudes while preserving alternation. Returns `None` when fewer than
/// `n` alternations exist.
pub fn select_alternating<T: Real>(mut ext: Vec<Extremum<T>>, n: usize) -> Option<Vec<Extremum<T>>> {
    while ext.len() > n {
        let len = ext.len();
        if len == n + 1 {
            if ext[0].value.abs() < ext[len - 1].value.abs() {
                ext.remove(0);
            } else {
                ext.pop();
            }
            continue;
        }
        let (imin, _) = ext
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.value.abs().partial_cmp(&b.1.value.abs()).unwrap())
            .unwrap();
        if imin == 0 || imin == len - 1 {
            ext.remove(imin);
        } else {
            // neighbours now share a sign; keep the larger one
            let keep_left = ext[imin - 1].value.abs() >= ext[imin + 1].value.abs();
            ext.remove(imin);
            if keep_left {
                ext.remove(imin);
            } else {
                ext.remove(imin - 1);
            }
        }
    }
    if ext.len() < n {
        None
    } else {
        Some(ext)
    }
}

/// Sup-norm of `err` over `m + 1` Chebyshev points of `domain`.
pub fn dense_sup<T, E>(err: &E, domain: &Interval<T>, m: usize) -> T
where
    T: Real,
    E: Fn(T) -> T,
{
    cheb_points(m, domain)
        .expect("m >= 1")
        .into_iter()
        .map(|x| err(x).abs())
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_interior_peak() {
        let e = golden_max_abs(&|x: f64| -(x - 0.3) * (x - 0.3) + 0.2, 0.0, 0.6);
        assert!((e.x - 0.3).abs() < 1e-6);
        assert!((e.value - 0.2).abs() < 1e-14);
    }

    #[test]
    fn extrema_of_chebyshev_polynomial() {
        // T_4 equioscillates at cos(j pi / 4)
        let t4 = |x: f64| 8.0 * x.powi(4) - 8.0 * x * x + 1.0;
        let grid: Vec<f64> = (0..=200).map(|i| -1.0 + i as f64 / 100.0).collect();
        let ext = alternating_extrema(&t4, &grid);
        assert_eq!(ext.len(), 5);
        for (e, j) in ext.iter().zip((0..=4).rev()) {
            let want = (j as f64 * std::f64::consts::PI / 4.0).cos();
            assert!((e.x - want).abs() < 1e-6, "{e:?}");
            assert!((e.value.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn selection_keeps_alternation() {
        let mk = |v: &[f64]| -> Vec<Extremum<f64>> {
            v.iter().enumerate().map(|(i, &value)| Extremum { x: i as f64, value }).collect()
        };
        let sel = select_alternating(mk(&[1.0, -0.1, 0.9, -1.0, 1.0, -1.0]), 4).unwrap();
        let vals: Vec<f64> = sel.iter().map(|e| e.value).collect();
        assert_eq!(vals, vec![1.0, -1.0, 1.0, -1.0]);
        assert!(sel.windows(2).all(|w| w[0].value * w[1].value < 0.0));
        assert!(select_alternating(mk(&[1.0, -1.0]), 3).is_none());
    }
}
