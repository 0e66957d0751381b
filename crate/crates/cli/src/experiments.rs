//! The figure and table experiments and the verification suites, as row
//! producers.

use halphen_core::models::{
    even_reduction, exp_halfline_error, halphen_constant, halphen_model, lemma2_gap, linear_fit, transplanted_error,
};
use halphen_core::poly_remez::PolyRemezError;
use halphen_core::{
    adaptive_fit, newman_rivlin, pow_real, rational_remez, remez_poly, DoubleDouble, Interval, Precision, Real,
    RationalOptions, RemezOptions, SolveStatus,
};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::row::{pass_fail, sort_rows, ExperimentRow, OK, STAGNATED};

pub const FIGURE1_N: [f64; 2] = [250.0, 1000.0];
pub const FIGURE2_N: f64 = 1000.0;
pub const FIGURE2_KMAX: usize = 8;
pub const TABLE1_N: [u32; 7] = [1, 4, 16, 64, 256, 1024, 4096];
pub const TABLE1_REFERENCE: [usize; 7] = [1, 4, 16, 44, 91, 178, 349];
pub const TABLE1_TOL: f64 = 1e-15;

/// Model values in this band take part in the figure-1 summary rows.
pub const FIGURE1_BAND: (f64, f64) = (1e-10, 1e-1);

/// `ceil(4.5 sqrt(n))`, where the degree-`k` error model reaches ~1e-10.
pub fn default_poly_kmax(n: f64) -> usize {
    (4.5 * n.sqrt()).ceil() as usize
}

fn power<T: Real>(n: T) -> impl Fn(T) -> T + Copy {
    move |x| pow_real(x, n)
}

fn remez_opts(cfg: &RunConfig) -> RemezOptions {
    let mut o = RemezOptions::default();
    if let Some(t) = cfg.tol {
        o.tol = t;
    }
    o
}

fn rational_opts(cfg: &RunConfig) -> RationalOptions {
    let mut o = RationalOptions {
        grid_size: cfg.grid_size,
        ..Default::default()
    };
    if let Some(t) = cfg.tol {
        o.level_tol = t;
    }
    o
}

/// Precision for a rational run whose smallest error is `target`: the
/// Lawson and exchange steps need roughly three digits below the error
/// itself.
pub fn rational_precision(base: Precision, target: f64) -> Precision {
    base.escalate_for_target(target * 1e-3)
}

macro_rules! at_precision {
    ($p:expr, $f:ident ( $($arg:expr),* )) => {
        match $p {
            Precision::Double => $f::<f64>($($arg),*),
            Precision::DoubleDouble => $f::<DoubleDouble>($($arg),*),
        }
    };
}

pub fn poly_cell<T: Real>(n: f64, k: usize, cfg: &RunConfig, experiment: &str) -> ExperimentRow {
    let nt = T::from_f64(n);
    let model = newman_rivlin(k, nt);
    match remez_poly(power(nt), k, &Interval::unit(), &remez_opts(cfg)) {
        Ok(r) => ExperimentRow::new(experiment, nt, Some(k), Some(r.error), Some(model), OK),
        Err(PolyRemezError::NoConvergence(r)) => {
            ExperimentRow::new(experiment, nt, Some(k), Some(r.error), Some(model), STAGNATED)
        }
        Err(e) => ExperimentRow::error(experiment, nt, Some(k), e),
    }
}

pub fn rational_cell<T: Real>(n: f64, k: usize, cfg: &RunConfig, experiment: &str) -> ExperimentRow {
    let nt = T::from_f64(n);
    let model = halphen_model::<T>(k);
    match rational_remez(power(nt), k, &Interval::unit(), &rational_opts(cfg)) {
        Ok(r) => {
            let status = match r.status {
                SolveStatus::Converged => OK,
                SolveStatus::Stagnated => STAGNATED,
            };
            ExperimentRow::new(experiment, nt, Some(k), Some(r.error), Some(model), status)
        }
        Err(e) => ExperimentRow::error(experiment, nt, Some(k), e),
    }
}

fn figure1_at<T: Real>(cells: &[(f64, usize)], cfg: &RunConfig) -> Vec<ExperimentRow> {
    cells
        .par_iter()
        .map(|&(n, k)| poly_cell::<T>(n, k, cfg, "figure1"))
        .collect()
}

/// `E_k^(n)` for polynomials against `(1/2) erfc(k / sqrt(n))`.
pub fn run_figure1(n_list: &[f64], k_max: Option<usize>, cfg: &RunConfig) -> Vec<ExperimentRow> {
    let n_list = if n_list.is_empty() { &FIGURE1_N[..] } else { n_list };
    let cells: Vec<(f64, usize)> = n_list
        .iter()
        .flat_map(|&n| (0..=k_max.unwrap_or_else(|| default_poly_kmax(n))).map(move |k| (n, k)))
        .collect();
    let target = cells
        .iter()
        .map(|&(n, k)| newman_rivlin(k, n))
        .fold(f64::INFINITY, f64::min);
    let mut rows = at_precision!(cfg.precision().escalate_for_target(target), figure1_at(&cells, cfg));
    for &n in n_list {
        rows.extend(figure1_summary(n, &rows));
    }
    sort_rows(&mut rows);
    rows
}

/// Factor-of-three agreement and the `log E ~ k^2` fit over the cells whose
/// model value lies in [`FIGURE1_BAND`].
fn figure1_summary(n: f64, rows: &[ExperimentRow]) -> Vec<ExperimentRow> {
    let band: Vec<&ExperimentRow> = rows
        .iter()
        .filter(|r| r.experiment == "figure1" && r.n_value() == n)
        .filter(|r| r.model().is_some_and(|m| m >= FIGURE1_BAND.0 && m <= FIGURE1_BAND.1))
        .collect();
    if band.is_empty() {
        return Vec::new();
    }
    if band.iter().any(|r| !r.is_success()) {
        return vec![
            ExperimentRow::new::<f64>("figure1_band", n, None, None, Some(3.0), "fail"),
            ExperimentRow::new::<f64>("figure1_fit", n, None, None, Some(0.99), "fail"),
        ];
    }
    let worst = band
        .iter()
        .filter_map(|r| r.ratio_value())
        .map(|q| q.max(1.0 / q))
        .fold(1.0, f64::max);
    let xs: Vec<f64> = band.iter().map(|r| (r.k.unwrap_or(0) as f64).powi(2)).collect();
    let ys: Vec<f64> = band.iter().map(|r| r.computed().unwrap_or(f64::NAN).ln()).collect();
    let r2 = if xs.len() >= 3 { linear_fit(&xs, &ys).2 } else { f64::NAN };
    vec![
        ExperimentRow::new("figure1_band", n, None, Some(worst), Some(3.0), pass_fail(worst <= 3.0)),
        ExperimentRow::new("figure1_fit", n, None, Some(r2), Some(0.99), pass_fail(r2 >= 0.99)),
    ]
}

fn figure2_at<T: Real>(n: f64, ks: &[usize], cfg: &RunConfig) -> Vec<ExperimentRow> {
    ks.par_iter().map(|&k| rational_cell::<T>(n, k, cfg, "figure2")).collect()
}

/// `E_kk^(n)` against `2 H^{k+1/2}`, with the fitted decay rate as a summary.
pub fn run_figure2(n: Option<f64>, k_max: Option<usize>, cfg: &RunConfig) -> Vec<ExperimentRow> {
    let n = n.unwrap_or(FIGURE2_N);
    let k_max = k_max.unwrap_or(FIGURE2_KMAX);
    let ks: Vec<usize> = (0..=k_max).collect();
    let p = rational_precision(cfg.precision(), halphen_model::<f64>(k_max));
    let mut rows = at_precision!(p, figure2_at(n, &ks, cfg));
    rows.push(figure2_slope(n, &rows));
    sort_rows(&mut rows);
    rows
}

fn figure2_slope(n: f64, rows: &[ExperimentRow]) -> ExperimentRow {
    let ln_h = halphen_constant::<f64>().ln();
    let used: Vec<&ExperimentRow> = rows.iter().filter(|r| r.k.unwrap_or(0) >= 1).collect();
    if used.len() < 2 || used.iter().any(|r| !r.is_success()) {
        return ExperimentRow::new::<f64>("figure2_slope", n, None, None, Some(ln_h), "fail");
    }
    let xs: Vec<f64> = used.iter().map(|r| r.k.unwrap_or(0) as f64).collect();
    let ys: Vec<f64> = used.iter().map(|r| r.computed().unwrap_or(f64::NAN).ln()).collect();
    let slope = linear_fit(&xs, &ys).0;
    let ok = (slope / ln_h - 1.0).abs() <= 0.05;
    ExperimentRow::new("figure2_slope", n, None, Some(slope), Some(ln_h), pass_fail(ok))
}

fn table1_at<T: Real>(tol: f64) -> Vec<ExperimentRow> {
    TABLE1_N
        .par_iter()
        .zip(TABLE1_REFERENCE.par_iter())
        .map(|(&n, &reference)| {
            let nt = T::from_f64(n as f64);
            match adaptive_fit(move |x: T| x.powi(n as i32), &Interval::unit(), tol) {
                Ok(s) => {
                    let k = s.degree();
                    let ok = if n <= 16 {
                        k == reference
                    } else {
                        (k as f64 - reference as f64).abs() <= 0.1 * reference as f64
                    };
                    ExperimentRow::new(
                        "table1",
                        nt,
                        Some(k),
                        Some(T::from_usize(k)),
                        Some(T::from_usize(reference)),
                        pass_fail(ok),
                    )
                }
                Err(e) => ExperimentRow::error("table1", nt, None, e),
            }
        })
        .collect()
}

/// Adaptive Chebyshev degrees of `x^n`; `computed_error` and `model_error`
/// hold the computed and reference degree.
pub fn run_table1(cfg: &RunConfig) -> Vec<ExperimentRow> {
    let tol = cfg.tol.unwrap_or(TABLE1_TOL);
    let mut rows = at_precision!(cfg.precision(), table1_at(tol));
    sort_rows(&mut rows);
    rows
}

pub const LEMMA1_CELLS: [(f64, usize); 2] = [(100.0, 2), (1000.0, 3)];
pub const LIMIT_N: [f64; 3] = [1e2, 1e3, 1e4];
pub const LIMIT_K: [usize; 3] = [1, 2, 3];
pub const LEMMA2_N: [f64; 5] = [1.0, 10.0, 100.0, 1000.0, 1e4];
pub const LEMMA2_SCAN: usize = 200_000;
pub const EQUIVALENCE_TOL: f64 = 1e-6;

enum Task {
    Rational(f64, usize, Interval<f64>),
    HalfLine(usize),
    Transplanted(f64, usize),
    Lemma2(f64),
}

enum Outcome<T> {
    Value(T),
    Lemma2(ExperimentRow),
    Failed(String),
}

fn checks_at<T: Real>(cfg: &RunConfig) -> Vec<ExperimentRow> {
    let opts = rational_opts(cfg);
    let sym = Interval::symmetric();
    let unit = Interval::unit();
    let mut tasks = Vec::new();
    for &n in &LIMIT_N {
        for &k in &LIMIT_K {
            tasks.push(Task::Rational(n, k, unit));
        }
    }
    for &k in &LIMIT_K {
        tasks.push(Task::HalfLine(k));
    }
    for &(n, k) in &LEMMA1_CELLS {
        if !LIMIT_K.contains(&k) || !LIMIT_N.contains(&n) {
            tasks.push(Task::Rational(n, k, unit));
        }
        tasks.push(Task::Transplanted(n, k));
    }
    tasks.push(Task::Rational(100.0, 4, sym));
    tasks.push(Task::Rational(100.0, 5, sym));
    tasks.push(Task::Rational(50.0, 2, unit));
    for &n in &LEMMA2_N {
        tasks.push(Task::Lemma2(n));
    }

    let outcomes: Vec<Outcome<T>> = tasks
        .par_iter()
        .map(|t| match *t {
            Task::Rational(n, k, d) => {
                let dom = Interval::new(T::from_f64(d.lo()), T::from_f64(d.hi())).expect("valid interval");
                match rational_remez(power(T::from_f64(n)), k, &dom, &opts) {
                    Ok(r) if r.status == SolveStatus::Converged => Outcome::Value(r.error),
                    Ok(_) => Outcome::Failed(STAGNATED.into()),
                    Err(e) => Outcome::Failed(format!("error: {e}")),
                }
            }
            Task::HalfLine(k) => match exp_halfline_error::<T>(k, &opts) {
                Ok(v) => Outcome::Value(v),
                Err(e) => Outcome::Failed(format!("error: {e}")),
            },
            Task::Transplanted(n, k) => match transplanted_error(T::from_f64(n), k, &opts) {
                Ok(v) => Outcome::Value(v),
                Err(e) => Outcome::Failed(format!("error: {e}")),
            },
            Task::Lemma2(n) => Outcome::Lemma2(lemma2_row::<T>(n)),
        })
        .collect();

    let find = |pred: &dyn Fn(&Task) -> bool| -> Result<T, String> {
        let i = tasks.iter().position(pred).expect("task scheduled");
        match &outcomes[i] {
            Outcome::Value(v) => Ok(*v),
            Outcome::Failed(s) => Err(s.clone()),
            Outcome::Lemma2(_) => unreachable!(),
        }
    };
    let rational = |n: f64, k: usize, d: Interval<f64>| {
        find(&|t| matches!(*t, Task::Rational(a, b, c) if a == n && b == k && c == d))
    };

    let mut rows: Vec<ExperimentRow> = outcomes
        .iter()
        .filter_map(|o| match o {
            Outcome::Lemma2(r) => Some(r.clone()),
            _ => None,
        })
        .collect();

    let rel = |a: T, b: T| (a - b).abs() / a.abs().max(b.abs());
    let tol = T::from_f64(EQUIVALENCE_TOL);
    let compare = |name: &str, n: f64, k: usize, a: Result<T, String>, b: Result<T, String>| match (a, b) {
        (Ok(a), Ok(b)) => {
            let d = rel(a, b);
            ExperimentRow::new(name, T::from_f64(n), Some(k), Some(d), Some(tol), pass_fail(d <= tol))
        }
        (Err(s), _) | (_, Err(s)) => ExperimentRow::new::<T>(name, T::from_f64(n), Some(k), None, Some(tol), s),
    };

    for &(n, k) in &LEMMA1_CELLS {
        let t = find(&|t| matches!(*t, Task::Transplanted(a, b) if a == n && b == k));
        rows.push(compare("lemma1", n, k, rational(n, k, unit), t));
    }
    rows.push(compare(
        "even_reduction",
        100.0,
        4,
        rational(100.0, 4, sym),
        rational(50.0, 2, unit),
    ));
    rows.push(compare(
        "odd_collapse",
        100.0,
        5,
        rational(100.0, 5, sym),
        rational(100.0, 4, sym),
    ));
    debug_assert_eq!(even_reduction(100, 4).ok(), Some((50, 2)));

    for &n in &LIMIT_N {
        for &k in &LIMIT_K {
            let nt = T::from_f64(n);
            let bound = T::one() / (T::one().exp() * nt);
            let f = find(&|t| matches!(*t, Task::HalfLine(b) if b == k));
            rows.push(match (rational(n, k, unit), f) {
                (Ok(e), Ok(f)) => {
                    let d = (e - f).abs();
                    ExperimentRow::new("limit", nt, Some(k), Some(d), Some(bound), pass_fail(d <= bound))
                }
                (Err(s), _) | (_, Err(s)) => ExperimentRow::new::<T>("limit", nt, Some(k), None, Some(bound), s),
            });
        }
    }
    sort_rows(&mut rows);
    rows
}

fn lemma2_row<T: Real>(n: f64) -> ExperimentRow {
    let nt = T::from_f64(n);
    match lemma2_gap(nt, LEMMA2_SCAN) {
        Ok(g) => {
            let agree = (g.scanned_max - g.max_gap).abs() <= T::from_f64(1e-8) * g.max_gap;
            let ok = g.positive
                && g.max_gap <= g.bound
                && g.scanned_max <= g.bound
                && g.identity_residual <= T::from_f64(1e-10)
                && agree;
            ExperimentRow::new("lemma2", nt, None, Some(g.max_gap), Some(g.bound), pass_fail(ok))
        }
        Err(e) => ExperimentRow::error("lemma2", nt, None, e),
    }
}

/// Transplant equivalence, the gap-bound scan, the limit law
/// `|E_kk^(n) - F_kk| <= 1/(e n)` and the even reduction on `[-1, 1]`.
/// `computed_error` is the measured discrepancy and `model_error` the
/// allowed one.
pub fn run_checks(cfg: &RunConfig) -> Vec<ExperimentRow> {
    at_precision!(cfg.precision(), checks_at(cfg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveKind {
    Poly,
    Rational,
}

/// A single `(n, k)` solve on `[0, 1]`.
pub fn run_solve(kind: SolveKind, n: f64, k: usize, cfg: &RunConfig) -> Vec<ExperimentRow> {
    match kind {
        SolveKind::Poly => {
            let p = cfg.precision().escalate_for_target(newman_rivlin(k, n));
            vec![at_precision!(p, poly_cell(n, k, cfg, "solve_poly"))]
        }
        SolveKind::Rational => {
            let p = rational_precision(cfg.precision(), halphen_model::<f64>(k));
            vec![at_precision!(p, rational_cell(n, k, cfg, "solve_rational"))]
        }
    }
}
