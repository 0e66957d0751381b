//! Reproduction harness for minimax approximation of `x^n`: the two error
//! figures, the adaptive-degree table and the verification checks, emitted
//! as CSV or JSON rows with optional SVG plots.

pub mod config;
pub mod experiments;
pub mod plot;
pub mod row;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

pub use config::{Format, RunConfig};
pub use row::{read_csv, sort_rows, write_csv, write_json, ExperimentRow, CSV_HEADER};

use plot::{Series, Style, XScale, PALETTE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

/// 0 when every row is `ok`/`pass`; solver failures take precedence over
/// failed checks.
pub fn exit_code(rows: &[ExperimentRow]) -> i32 {
    if rows.iter().any(ExperimentRow::is_solver_failure) {
        EXIT_SOLVER
    } else if rows.iter().all(ExperimentRow::is_success) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

pub fn write_rows<W: Write>(rows: &[ExperimentRow], format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(rows, out).map_err(io::Error::other),
        Format::Json => write_json(rows, out),
    }
}

/// Writes the rows to `cfg.out` (stdout when unset) and, if requested, the
/// plot next to it. Returns the plot path.
pub fn emit(rows: &[ExperimentRow], experiment: &str, cfg: &RunConfig) -> io::Result<Option<PathBuf>> {
    match &cfg.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_rows(rows, cfg.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            write_rows(rows, cfg.format, stdout.lock())?;
        }
    }
    if !cfg.plot {
        return Ok(None);
    }
    let Some(svg) = figure_svg(experiment, rows) else {
        return Ok(None);
    };
    let path = plot_path(cfg.out.as_deref(), experiment);
    std::fs::write(&path, svg)?;
    Ok(Some(path))
}

fn plot_path(out: Option<&Path>, experiment: &str) -> PathBuf {
    match out {
        Some(p) => p.with_extension("svg"),
        None => PathBuf::from(format!("{experiment}.svg")),
    }
}

/// SVG for `figure1` (quadratic k axis) or `figure2` (linear k axis);
/// `None` for other experiments.
pub fn figure_svg(experiment: &str, rows: &[ExperimentRow]) -> Option<String> {
    let (scale, title, model_label) = match experiment {
        "figure1" => (XScale::Quadratic, "Polynomial minimax error of x^n on [0,1]", "erfc model"),
        "figure2" => (XScale::Linear, "Rational (k,k) minimax error of x^n on [0,1]", "2H^(k+1/2)"),
        _ => return None,
    };
    let mut ns: Vec<String> = Vec::new();
    for r in rows.iter().filter(|r| r.experiment == experiment) {
        if !ns.contains(&r.n) {
            ns.push(r.n.clone());
        }
    }
    let mut series = Vec::new();
    for (i, n) in ns.iter().enumerate() {
        let cells: Vec<&ExperimentRow> = rows
            .iter()
            .filter(|r| r.experiment == experiment && &r.n == n && r.k.is_some())
            .collect();
        let pick = |f: fn(&ExperimentRow) -> Option<f64>| -> Vec<(f64, f64)> {
            cells
                .iter()
                .filter_map(|r| Some((r.k? as f64, f(r)?)))
                .collect()
        };
        let color = PALETTE[i % PALETTE.len()];
        let label_n = n.parse::<f64>().map(|v| v.to_string()).unwrap_or_else(|_| n.clone());
        series.push(Series {
            label: format!("computed, n = {label_n}"),
            points: pick(ExperimentRow::computed),
            style: Style::Markers,
            color,
        });
        series.push(Series {
            label: format!("{model_label}, n = {label_n}"),
            points: pick(ExperimentRow::model),
            style: Style::Line,
            color,
        });
    }
    Some(plot::render(title, "k", "max error", scale, &series))
}
