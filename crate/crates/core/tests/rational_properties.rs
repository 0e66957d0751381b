use halphen_core::extrema::golden_max_abs;
use halphen_core::{
    cheb_points, differential_correction, pow_real, rational_remez, remez_poly, DoubleDouble, Interval, Real,
    RationalOptions, RemezOptions, SolveStatus,
};

fn rational(n: f64, k: usize) -> halphen_core::RationalMinimaxResult<f64> {
    rational_remez(move |x: f64| pow_real(x, n), k, &Interval::unit(), &RationalOptions::default()).unwrap()
}

/// Sup of the error over a 2048-point Chebyshev scan, refined by golden
/// section between neighbouring scan points.
fn refined_sup(n: f64, r: &halphen_core::BarycentricRational<f64>) -> f64 {
    let err = |x: f64| pow_real(x, n) - r.eval(x);
    let grid = cheb_points(2047, &Interval::unit()).unwrap();
    grid.windows(2)
        .map(|w| golden_max_abs(&err, w[0], w[1]).value.abs())
        .fold(0.0, f64::max)
}

#[test]
fn oracle_sandwich() {
    let grid: Vec<DoubleDouble> = cheb_points(2048, &Interval::unit()).unwrap();
    for (n, k) in [(100.0, 2), (1000.0, 3), (1000.0, 5)] {
        let r = rational(n, k);
        assert_eq!(r.status, SolveStatus::Converged);
        let nd = DoubleDouble::new(n);
        let dc = differential_correction(move |x: DoubleDouble| pow_real(x, nd), k, &grid)
            .unwrap()
            .error
            .to_f64();
        let sup = refined_sup(n, &r.approximant);
        assert!(dc <= r.error * (1.0 + 1e-12), "({n},{k}): dc {dc} > {}", r.error);
        assert!(r.error <= sup * (1.0 + 1e-12), "({n},{k}): {} > scan {sup}", r.error);
        assert!((sup - dc) / sup <= 1e-3, "({n},{k}): spread {}", (sup - dc) / sup);
    }
}

#[test]
fn strictly_decreasing_in_type() {
    let errs: Vec<f64> = (0..=8).map(|k| rational(1000.0, k).error).collect();
    for (k, w) in errs.windows(2).enumerate() {
        assert!(w[1] < w[0], "k={}: {} !< {}", k + 1, w[1], w[0]);
    }
}

#[test]
fn rational_never_worse_than_polynomial() {
    for n in [10.0, 100.0, 1000.0] {
        for k in 0..=6 {
            let e_rat = rational(n, k).error;
            let e_poly = remez_poly(move |x: f64| pow_real(x, n), k, &Interval::unit(), &RemezOptions::default())
                .unwrap()
                .error;
            assert!(e_rat <= e_poly * (1.0 + 1e-9), "n={n} k={k}: {e_rat} > {e_poly}");
        }
    }
}

#[test]
fn certificates_alternate() {
    for (n, k) in [(100.0, 2), (1000.0, 4), (2.5, 1)] {
        let r = rational(n, k);
        let c = &r.certificate;
        assert!(c.is_valid(&Interval::unit(), 1e-3), "({n},{k}): {c:?}");
        assert!(c.points.len() >= 2 * k + 2 - 2 * r.defect);
    }
}

#[test]
fn even_power_on_symmetric_interval() {
    let sym = Interval::symmetric();
    let opts = RationalOptions::default();
    let e44 = rational_remez(|x: f64| x.powi(100), 4, &sym, &opts).unwrap();
    let e55 = rational_remez(|x: f64| x.powi(100), 5, &sym, &opts).unwrap();
    let half = rational(50.0, 2).error;
    assert!((e44.error - half).abs() / half <= 1e-6, "{} vs {half}", e44.error);
    assert!((e55.error - e44.error).abs() / e44.error <= 1e-6, "{} vs {}", e55.error, e44.error);
    assert_eq!(e55.defect, 1);
}

#[test]
fn analytic_square() {
    let r = remez_poly(|x: f64| x * x, 1, &Interval::unit(), &RemezOptions::default()).unwrap();
    assert!((r.error - 0.125).abs() < 1e-12);
    // type (1, 1) is at least as good as degree 1
    assert!(rational(2.0, 1).error <= 0.125);
}
