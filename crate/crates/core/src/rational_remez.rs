//! Best type-(k, k) rational approximation on an interval.
//!
//! AAA on a dense Chebyshev sample gives a starting point, Lawson iteration
//! moves it close to equioscillation, and a barycentric Remez exchange
//! levels the error. The exchange keeps the even-indexed reference points as
//! support nodes; with `t_j` the support and `s_i` the remaining points the
//! levelled error `h` solves the eigenproblem `C^{-1} A beta = 2h beta`,
//! `A_ij = (f(t_j) - f(s_i)) / (s_i - t_j)`, `C_ij = 1 / (s_i - t_j)`.

use crate::aaa::aaa_fit;
use crate::barycentric::{assert_pole_free, BarycentricRational};
use crate::cheb::{cheb_points, Interval};
use crate::error::{Error, Result};
use crate::extrema::{alternating_extrema, golden_max_abs, select_alternating, EquioscillationCertificate, Extremum};
use crate::lawson::lawson_refine;
pub use crate::lawson::SolveStatus;
use crate::linalg::{eigenvalues, eigenvector, Lu, Mat};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RationalOptions {
    /// Number of Chebyshev sample points for AAA, Lawson and pole checks.
    pub grid_size: usize,
    /// Certificate tolerance on the relative spread of the extrema.
    pub tol: f64,
    /// Spread at which the exchange stops early.
    pub level_tol: f64,
    pub max_iter: usize,
    pub lawson_iters: usize,
}

impl Default for RationalOptions {
    fn default() -> Self {
        Self {
            grid_size: 4096,
            tol: 1e-3,
            level_tol: 1e-10,
            max_iter: 60,
            lawson_iters: 30,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RationalMinimaxResult<T> {
    pub approximant: BarycentricRational<T>,
    /// Sup of `|f - r|` over the sample grid refined around every extremum.
    pub error: T,
    pub certificate: EquioscillationCertificate<T>,
    /// How far the true type falls short of `(k, k)`; 0 for a full solution.
    pub defect: usize,
    pub status: SolveStatus,
    pub iterations: usize,
}

fn merge_sorted<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out.dedup();
    out
}

fn refine_around<T: Real>(refs: &[T], per_gap: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(refs.len() * per_gap);
    for w in refs.windows(2) {
        for j in 1..=per_gap {
            let t = T::from_usize(j) / T::from_usize(per_gap + 1);
            out.push(w[0] + (w[1] - w[0]) * t);
        }
    }
    out
}

/// Best constant: midpoint of the range of `f`.
fn best_constant<T, F>(f: &F, grid: &[T]) -> RationalMinimaxResult<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let vals: Vec<T> = grid.iter().map(|&x| f(x)).collect();
    let idx = |better: &dyn Fn(T, T) -> bool| {
        let mut b = 0;
        for i in 1..vals.len() {
            if better(vals[i], vals[b]) {
                b = i;
            }
        }
        b
    };
    let imax = idx(&|a, b| a > b);
    let imin = idx(&|a, b| a < b);
    let nb = |i: usize| (grid[i.saturating_sub(1)], grid[(i + 1).min(grid.len() - 1)]);
    let (lo_ref, hi_ref) = (vals[imin], vals[imax]);
    let (a, b) = nb(imax);
    let top = golden_max_abs(&|x| f(x) - lo_ref, a, b);
    let (a, b) = nb(imin);
    let bottom = golden_max_abs(&|x| hi_ref - f(x), a, b);
    let (fmax, fmin) = (top.value + lo_ref, hi_ref - bottom.value);
    let c = (fmax + fmin) / T::from_f64(2.0);
    let e = (fmax - fmin) / T::from_f64(2.0);
    let r = BarycentricRational::constant(grid[0], c);
    let mut ext = vec![
        Extremum { x: top.x, value: e },
        Extremum { x: bottom.x, value: -e },
    ];
    ext.sort_by(|p, q| p.x.partial_cmp(&q.x).unwrap());
    let certificate = if e == T::zero() || top.x == bottom.x {
        EquioscillationCertificate::degenerate(e)
    } else {
        EquioscillationCertificate::from_extrema(&ext)
    };
    RationalMinimaxResult {
        approximant: r,
        error: e,
        certificate,
        defect: 0,
        status: SolveStatus::Converged,
        iterations: 0,
    }
}

/// Pole-free rational with `f - r = (-1)^i h` on the reference, smallest `|h|`.
fn level<T, F>(f: &F, refs: &[T], check: &[T]) -> Option<BarycentricRational<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let t: Vec<T> = refs.iter().copied().step_by(2).collect();
    let s: Vec<T> = refs.iter().copied().skip(1).step_by(2).collect();
    let d = t.len();
    let ft: Vec<T> = t.iter().map(|&x| f(x)).collect();
    let fs: Vec<T> = s.iter().map(|&x| f(x)).collect();
    let c = Mat::from_fn(d, d, |i, j| T::one() / (s[i] - t[j]));
    let a = Mat::from_fn(d, d, |i, j| (ft[j] - fs[i]) / (s[i] - t[j]));
    let lu = Lu::new(&c).ok()?;
    let mut m = Mat::zeros(d, d);
    for j in 0..d {
        let col = lu.solve(&a.col(j));
        for i in 0..d {
            m[(i, j)] = col[i];
        }
    }
    let mut best: Option<(T, BarycentricRational<T>)> = None;
    for (re, im) in eigenvalues(&m).ok()? {
        if im != T::zero() || !re.is_finite() {
            continue;
        }
        let h = re / T::from_f64(2.0);
        if let Some((bh, _)) = &best {
            if h.abs() >= bh.abs() {
                continue;
            }
        }
        let beta = eigenvector(&m, re);
        let values = ft.iter().map(|&v| v - h).collect();
        let Ok(r) = BarycentricRational::new(t.clone(), values, beta) else {
            continue;
        };
        if r.pole_on_grid(check).is_none() {
            best = Some((h, r));
        }
    }
    best.map(|(_, r)| r)
}

struct Exchanged<T> {
    r: BarycentricRational<T>,
    error: T,
    cert: EquioscillationCertificate<T>,
    iterations: usize,
}

fn exchange<T, F>(f: &F, k: usize, grid: &[T], mut refs: Vec<T>, opts: &RationalOptions) -> Result<Exchanged<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let n_ref = 2 * k + 2;
    let mut best: Option<Exchanged<T>> = None;
    let mut stalls = 0;
    for iter in 1..=opts.max_iter {
        let check = merge_sorted(grid, &refs);
        let Some(r) = level(f, &refs, &check) else {
            break;
        };
        let err = |x: T| f(x) - r.eval(x);
        let search = merge_sorted(&check, &refine_around(&refs, 8));
        let ext = alternating_extrema(&err, &search);
        let sup = ext.iter().map(|e| e.value.abs()).fold(T::zero(), T::max);
        let Some(sel) = select_alternating(ext, n_ref) else {
            break;
        };
        let cert = EquioscillationCertificate::from_extrema(&sel);
        let defect = cert.residual_defect.to_f64();
        refs = sel.iter().map(|e| e.x).collect();
        let improved = best.as_ref().map_or(true, |b| sup < b.error);
        if improved {
            best = Some(Exchanged {
                r,
                error: sup,
                cert,
                iterations: iter,
            });
            stalls = 0;
        } else {
            stalls += 1;
        }
        let b = best.as_ref().unwrap();
        let bd = b.cert.residual_defect.to_f64();
        if defect <= opts.level_tol || bd <= opts.level_tol || (stalls >= 4 && bd <= opts.tol) {
            break;
        }
    }
    best.ok_or_else(|| Error::Unresolvable(format!("no pole-free levelled solution of type ({k}, {k})")))
}

/// Nondegenerate attempt at type `(k, k)`, `k >= 1`.
fn solve_at<T, F>(f: &F, k: usize, grid: &[T], fvals: &[T], noise: T, opts: &RationalOptions) -> Result<RationalMinimaxResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let tol = T::epsilon().to_f64() * 16.0;
    let r0 = aaa_fit(grid, fvals, k, tol)?;
    let e0 = r0.max_error_on(f, grid);
    if e0 <= noise {
        return Ok(RationalMinimaxResult {
            error: e0,
            certificate: EquioscillationCertificate::degenerate(e0),
            defect: k - r0.type_bound(),
            approximant: r0,
            status: SolveStatus::Converged,
            iterations: 0,
        });
    }
    let lawson = lawson_refine(&r0, f, grid, opts.lawson_iters)?;
    let r1 = lawson.approximant;
    let err = |x: T| f(x) - r1.eval(x);
    let ext = alternating_extrema(&err, grid);
    let refs: Vec<T> = select_alternating(ext, 2 * k + 2)
        .ok_or_else(|| Error::Unresolvable(format!("fewer than {} alternations after Lawson", 2 * k + 2)))?
        .iter()
        .map(|e| e.x)
        .collect();
    let ex = exchange(f, k, grid, refs, opts)?;
    let status = if ex.cert.residual_defect.to_f64() <= opts.tol {
        SolveStatus::Converged
    } else {
        SolveStatus::Stagnated
    };
    Ok(RationalMinimaxResult {
        approximant: ex.r,
        error: ex.error,
        certificate: ex.cert,
        defect: 0,
        status,
        iterations: ex.iterations,
    })
}

/// Longest alternating run among extrema within `rel` of `level`.
fn alternation_set<T: Real>(ext: &[Extremum<T>], level: T, rel: f64) -> Vec<Extremum<T>> {
    let cut = level * T::from_f64(1.0 - rel);
    let mut out: Vec<Extremum<T>> = Vec::new();
    for e in ext.iter().filter(|e| e.value.abs() >= cut) {
        match out.last_mut() {
            Some(last) if (last.value < T::zero()) == (e.value < T::zero()) => {
                if e.value.abs() > last.value.abs() {
                    *last = *e;
                }
            }
            _ => out.push(*e),
        }
    }
    out
}

fn error_extrema<T, F>(f: &F, r: &BarycentricRational<T>, grid: &[T]) -> Vec<Extremum<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    alternating_extrema(&|x: T| f(x) - r.eval(x), grid)
}

/// Best approximation of `f` on `domain` by rationals of type `(k, k)`.
///
/// When fewer than `2k + 2` alternation points persist the problem is
/// degenerate; lower types `j < k` are tried and accepted once their error
/// alternates on at least `k + j + 2` points, with `defect = k - j`.
pub fn rational_remez<T, F>(f: F, k: usize, domain: &Interval<T>, opts: &RationalOptions) -> Result<RationalMinimaxResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if opts.grid_size < 2 * k + 4 {
        return Err(Error::InvalidInput(format!("grid of {} points too small for type ({k}, {k})", opts.grid_size)));
    }
    let grid = cheb_points(opts.grid_size - 1, domain)?;
    let fvals: Vec<T> = grid.iter().map(|&x| f(x)).collect();
    if fvals.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("target is not finite on the domain".into()));
    }
    if k == 0 {
        return Ok(best_constant(&f, &grid));
    }
    let scale = fvals.iter().map(|v| v.abs()).fold(T::zero(), T::max);
    let noise = T::epsilon() * T::from_f64(64.0) * scale.max(T::from_f64(1e-300));

    let primary = solve_at(&f, k, &grid, &fvals, noise, opts);
    let clean = matches!(&primary, Ok(p) if p.certificate.degenerate
        || p.certificate.residual_defect.to_f64() <= opts.level_tol.max(1e-8));
    let mut result = primary;
    if !clean {
        for j in (0..k).rev() {
            let cand = if j == 0 {
                Ok(best_constant(&f, &grid))
            } else {
                solve_at(&f, j, &grid, &fvals, noise, opts)
            };
            let Ok(mut c) = cand else { continue };
            let ext = error_extrema(&f, &c.approximant, &merge_sorted(&grid, &c.certificate.points));
            let alt = alternation_set(&ext, c.error, opts.tol);
            let better = match &result {
                Ok(p) => c.error <= p.error,
                Err(_) => true,
            };
            if alt.len() >= k + j + 2 && better {
                let mut cert = EquioscillationCertificate::from_extrema(&alt);
                cert.levelled_error = c.error.max(cert.levelled_error);
                c.certificate = cert;
                c.defect += k - j;
                result = Ok(c);
            }
            break;
        }
    }
    let res = result?;
    assert_pole_free(&res.approximant, domain, opts.grid_size)?;
    Ok(res)
}
