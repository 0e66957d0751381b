//! One line per acceptance criterion. Runs as a plain binary so the lines
//! are always shown; exits non-zero when any criterion fails.

use halphen_cli::experiments::{run_figure1, run_table1, run_figure2};
use halphen_cli::{read_csv, write_csv, RunConfig};
use halphen_core::models::{exp_halfline_error, halphen_constant, halphen_model, lemma2_gap, linear_fit};
use halphen_core::{
    adaptive_fit, cheb_eval, cheb_fit, cheb_points, differential_correction, erfc, pow_real, rational_remez,
    remez_poly, DoubleDouble, Interval, Precision, RationalOptions, Real, RemezOptions, SolveStatus,
};
use std::time::Instant;

fn e_kk<T: Real>(n: f64, k: usize, dom: Interval<T>) -> Result<T, String> {
    let nt = T::from_f64(n);
    match rational_remez(move |x: T| pow_real(x, nt), k, &dom, &RationalOptions::default()) {
        Ok(r) if r.status == SolveStatus::Converged => Ok(r.error),
        Ok(r) => Err(format!("({n},{k}) stagnated at {}", r.error)),
        Err(e) => Err(format!("({n},{k}): {e}")),
    }
}

fn e_poly(n: f64, k: usize) -> Result<f64, String> {
    remez_poly(move |x: f64| pow_real(x, n), k, &Interval::unit(), &RemezOptions::default())
        .map(|r| r.error)
        .map_err(|e| e.to_string())
}

type Check = Result<String, String>;

fn halphen_law() -> Check {
    let ks: Vec<usize> = (1..=6).collect();
    let mut errs = Vec::new();
    let mut ratios = Vec::new();
    for &k in &ks {
        // below ~1e-5 the run is escalated to double-double
        let p = Precision::Double.escalate_for_target(halphen_model::<f64>(k) * 1e-6);
        let e = match p {
            Precision::Double => e_kk::<f64>(1000.0, k, Interval::unit())?,
            Precision::DoubleDouble => e_kk::<DoubleDouble>(1000.0, k, Interval::unit())?.to_f64(),
        };
        ratios.push(e / halphen_model::<f64>(k));
        errs.push(e);
    }
    let xs: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let slope = linear_fit(&xs, &ys).0;
    let want = halphen_constant::<f64>().ln();
    let rel = (slope / want - 1.0).abs();
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    let msg = format!("ratios in [{lo:.4}, {hi:.4}], slope {slope:.5} vs ln H {want:.5} ({:.2}%)", 100.0 * rel);
    if lo >= 0.5 && hi <= 2.0 && rel <= 0.05 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn n_independence() -> Check {
    let ns = [500.0, 1000.0, 2000.0, 4000.0];
    let e = ns.iter().map(|&n| e_kk::<f64>(n, 3, Interval::unit())).collect::<Result<Vec<_>, _>>()?;
    let lo = e.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = e.iter().copied().fold(0.0, f64::max);
    let spread = (hi - lo) / lo;
    let msg = format!("E_33 in [{lo:.5e}, {hi:.5e}], spread {:.2}%", 100.0 * spread);
    if spread < 0.1 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn newman_rivlin_law() -> Check {
    let rows = run_figure1(&[250.0, 1000.0], None, &RunConfig::default());
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.is_success())
        .map(|r| format!("{} n={} k={:?}: {}", r.experiment, r.n, r.k, r.status))
        .collect();
    let summary: Vec<String> = rows
        .iter()
        .filter(|r| r.k.is_none())
        .map(|r| format!("{} n={}: {:.5}", r.experiment, r.n, r.computed().unwrap_or(f64::NAN)))
        .collect();
    if bad.is_empty() && summary.len() == 4 {
        Ok(format!("{} cells; {}", rows.len() - 4, summary.join(", ")))
    } else {
        Err(format!("{}; {}", bad.join("; "), summary.join(", ")))
    }
}

fn table1() -> Check {
    let rows = run_table1(&RunConfig::default());
    let degs: Vec<String> = rows.iter().map(|r| format!("{}", r.k.unwrap_or(0))).collect();
    let msg = format!("degrees [{}] vs [1, 4, 16, 44, 91, 178, 349]", degs.join(", "));
    if rows.iter().all(|r| r.is_success()) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn lemma2() -> Check {
    let mut worst: f64 = 0.0;
    let mut worst_id: f64 = 0.0;
    for n in [1.0, 10.0, 100.0, 1000.0, 1e4] {
        let g = lemma2_gap(n, 200_000).map_err(|e| e.to_string())?;
        if !(g.positive && g.scanned_max <= g.bound && g.max_gap <= g.bound && g.identity_residual <= 1e-10) {
            return Err(format!("n={n}: {g:?}"));
        }
        worst = worst.max(g.scanned_max / g.bound);
        worst_id = worst_id.max(g.identity_residual);
    }
    Ok(format!("max gap ≤ {worst:.4}·1/(en), gap positive, identity residual ≤ {worst_id:.1e}"))
}

fn limit_law() -> Check {
    let opts = RationalOptions::default();
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        let f: f64 = exp_halfline_error(k, &opts).map_err(|e| e.to_string())?;
        for n in [1e2, 1e3, 1e4] {
            let e = e_kk::<f64>(n, k, Interval::unit())?;
            let bound = 1.0 / (std::f64::consts::E * n);
            let d = (e - f).abs();
            if d > bound {
                return Err(format!("n={n} k={k}: |E-F| = {d:.3e} > {bound:.3e}"));
            }
            worst = worst.max(d / bound);
        }
    }
    Ok(format!("|E - F| ≤ {worst:.4}·1/(en) over 9 cells"))
}

fn reduction() -> Check {
    let sym = Interval::symmetric();
    let e44 = e_kk::<f64>(100.0, 4, sym)?;
    let e55 = e_kk::<f64>(100.0, 5, sym)?;
    let e22 = e_kk::<f64>(50.0, 2, Interval::unit())?;
    let d1 = (e44 - e22).abs() / e22;
    let d2 = (e55 - e44).abs() / e44;
    let msg = format!("(4,4) vs x^50 (2,2): {d1:.1e}; (5,5) vs (4,4): {d2:.1e}");
    if d1 <= 1e-6 && d2 <= 1e-6 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn oracle() -> Check {
    let grid: Vec<DoubleDouble> = cheb_points(2048, &Interval::unit()).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, k) in [(100.0, 2), (1000.0, 3), (1000.0, 5)] {
        let e = e_kk::<f64>(n, k, Interval::unit())?;
        let nd = DoubleDouble::new(n);
        let dc = differential_correction(move |x: DoubleDouble| pow_real(x, nd), k, &grid)
            .map_err(|e| e.to_string())?
            .error
            .to_f64();
        let rel = (e - dc).abs() / e;
        ok &= rel <= 1e-3;
        parts.push(format!("({n},{k}) {rel:.1e}"));
    }
    let sq = e_poly(2.0, 1)?;
    ok &= (sq - 0.125).abs() <= 1e-12;
    let msg = format!("remez vs differential correction: {}; x^2 degree 1: {sq:.15}", parts.join(", "));
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// A condensed pass over the property suites (the full versions live in
/// the per-crate test targets).
fn properties() -> Check {
    let mut failed = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failed.push(name.to_string());
        }
    };
    let mut rt = true;
    for m in [1, 7, 64, 239, 500, 512] {
        let dom = Interval::<f64>::unit();
        let pts = cheb_points(m, &dom).unwrap();
        let v: Vec<f64> = pts.iter().map(|&x| (3.0 * x).sin() + x.exp()).collect();
        let s = cheb_fit(&v, &dom).unwrap();
        let scale = v.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        rt &= pts.iter().zip(&v).all(|(x, y)| (cheb_eval(&s, *x).unwrap() - y).abs() <= 10.0 * f64::EPSILON * scale);
    }
    check("cheb round trip", rt);
    check(
        "erfc reflection",
        (0..=1000).all(|i| {
            let x = -5.0 + 0.01 * i as f64;
            (erfc(x) + erfc(-x) - 2.0).abs() <= 1e-14
        }),
    );
    check(
        "erfc decreasing",
        (0..2000).all(|i| erfc(-5.0 + 0.01 * (i + 1) as f64) < erfc(-5.0 + 0.01 * i as f64)),
    );
    for n in [4, 64, 1024] {
        let d: Vec<usize> = [1e-15, 1e-10, 1e-5]
            .iter()
            .map(|&t| adaptive_fit(|x: f64| x.powi(n), &Interval::unit(), t).unwrap().degree())
            .collect();
        check("adaptive degree monotone", d.windows(2).all(|w| w[1] <= w[0]));
    }
    let poly: Vec<f64> = (0..=40).map(|k| e_poly(250.0, k).unwrap_or(f64::NAN)).collect();
    check("poly monotone in k", poly.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    check("poly exact for n <= k", (0..=4).all(|n| e_poly(n as f64, 5).is_ok_and(|e| e <= 1e-14)));
    let rat: Vec<f64> = (0..=6).map(|k| e_kk::<f64>(1000.0, k, Interval::unit()).unwrap_or(f64::NAN)).collect();
    check("rational strictly decreasing", rat.windows(2).all(|w| w[1] < w[0]));
    check(
        "rational ≤ polynomial",
        (0..=6).all(|k| e_poly(1000.0, k).is_ok_and(|p| rat[k] <= p * (1.0 + 1e-9))),
    );
    let cfg = RunConfig::default();
    let a = run_figure2(Some(1000.0), Some(4), &cfg);
    let b = run_figure2(Some(1000.0), Some(4), &cfg);
    check("deterministic rows", a == b);
    let mut buf = Vec::new();
    write_csv(&a, &mut buf).unwrap();
    let mut again = Vec::new();
    write_csv(&read_csv(buf.as_slice()).unwrap(), &mut again).unwrap();
    check("csv round trip", buf == again);
    if failed.is_empty() {
        Ok("cheb round trip, erfc, adaptive monotonicity, poly/rational monotonicity, rational ≤ poly, determinism, csv round trip".into())
    } else {
        Err(format!("failed: {}", failed.join(", ")))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("Halphen law at n = 1000", halphen_law),
        ("n-independence of E_33", n_independence),
        ("Newman-Rivlin law", newman_rivlin_law),
        ("adaptive degree table", table1),
        ("gap bound", lemma2),
        ("limit law", limit_law),
        ("even reduction and odd collapse", reduction),
        ("oracle equivalence", oracle),
        ("property suites", properties),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
