//! Result rows and their CSV / JSON encodings.

use std::cmp::Ordering;
use std::io::{Read, Write};

use halphen_core::Real;
use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str = "experiment,n,k,computed_error,model_error,ratio,status";

pub const OK: &str = "ok";
pub const PASS: &str = "pass";
pub const FAIL: &str = "fail";
pub const STAGNATED: &str = "stagnated";

/// One line of output. Scalars are kept as decimal strings so that
/// double-double results survive serialization unrounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub experiment: String,
    pub n: String,
    pub k: Option<usize>,
    pub computed_error: String,
    pub model_error: String,
    pub ratio: String,
    pub status: String,
}

impl ExperimentRow {
    pub fn new<T: Real>(
        experiment: &str,
        n: T,
        k: Option<usize>,
        computed: Option<T>,
        model: Option<T>,
        status: impl Into<String>,
    ) -> Self {
        let ratio = match (computed, model) {
            (Some(c), Some(m)) if m > T::zero() => (c / m).to_decimal(),
            _ => String::new(),
        };
        Self {
            experiment: experiment.to_string(),
            n: format!("{}", n.to_f64()),
            k,
            computed_error: computed.map(Real::to_decimal).unwrap_or_default(),
            model_error: model.map(Real::to_decimal).unwrap_or_default(),
            ratio,
            status: status.into(),
        }
    }

    pub fn error<T: Real>(experiment: &str, n: T, k: Option<usize>, msg: impl std::fmt::Display) -> Self {
        Self::new::<T>(experiment, n, k, None, None, format!("error: {msg}"))
    }

    pub fn n_value(&self) -> f64 {
        self.n.parse().unwrap_or(f64::NAN)
    }

    pub fn computed(&self) -> Option<f64> {
        self.computed_error.parse().ok()
    }

    pub fn model(&self) -> Option<f64> {
        self.model_error.parse().ok()
    }

    pub fn ratio_value(&self) -> Option<f64> {
        self.ratio.parse().ok()
    }

    pub fn is_success(&self) -> bool {
        self.status == OK || self.status == PASS
    }

    pub fn is_solver_failure(&self) -> bool {
        self.status == STAGNATED || self.status.starts_with("error")
    }
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        PASS
    } else {
        FAIL
    }
}

/// Orders rows by `(n, k)`; summary rows (no `k`) follow the cells of their
/// `n`. The sort is stable, so rows with equal keys keep insertion order.
pub fn sort_rows(rows: &mut [ExperimentRow]) {
    rows.sort_by(|a, b| {
        a.n_value()
            .partial_cmp(&b.n_value())
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.k.unwrap_or(usize::MAX).cmp(&b.k.unwrap_or(usize::MAX)))
    });
}

pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<ExperimentRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().collect()
}

pub fn write_json<W: Write>(rows: &[ExperimentRow], mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)
}

pub fn to_csv_string(rows: &[ExperimentRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}
