//! Minimal SVG line/marker plots with a logarithmic y axis.

use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XScale {
    Linear,
    /// Plots `k` at horizontal position `k^2`.
    Quadratic,
}

impl XScale {
    fn apply(self, x: f64) -> f64 {
        match self {
            Self::Linear => x,
            Self::Quadratic => x * x,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Markers,
    Line,
}

#[derive(Clone, Debug)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub style: Style,
    pub color: &'static str,
}

pub const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

const W: f64 = 720.0;
const H: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

fn nice_step(range: f64, target: usize) -> f64 {
    let raw = range / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag)
}

/// Renders the series; points with non-positive or non-finite `y` are skipped.
pub fn render(title: &str, x_label: &str, y_label: &str, scale: XScale, series: &[Series]) -> String {
    let pts = || {
        series
            .iter()
            .flat_map(|s| s.points.iter())
            .filter(|(_, y)| *y > 0.0 && y.is_finite())
    };
    let (mut xmin, mut xmax) = pts().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(x, _)| (a.min(x), b.max(x)));
    let (ymin, ymax) = pts().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(_, y)| (a.min(y), b.max(y)));
    if !xmin.is_finite() {
        xmin = 0.0;
        xmax = 1.0;
    }
    if xmax <= xmin {
        xmax = xmin + 1.0;
    }
    let (mut dlo, mut dhi) = if ymin.is_finite() {
        (ymin.log10().floor(), ymax.log10().ceil())
    } else {
        (-1.0, 0.0)
    };
    if dhi <= dlo {
        dhi = dlo + 1.0;
    }
    if dhi - dlo < 1.0 {
        dlo -= 1.0;
    }
    let (sx0, sx1) = (scale.apply(xmin), scale.apply(xmax));
    let px = |x: f64| LEFT + (scale.apply(x) - sx0) / (sx1 - sx0) * (W - LEFT - RIGHT);
    let py = |y: f64| TOP + (dhi - y.log10()) / (dhi - dlo) * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#, W / 2.0, escape(title));

    // y decades
    let step = ((dhi - dlo) / 10.0).ceil().max(1.0);
    let mut d = dlo;
    while d <= dhi + 1e-9 {
        let y = py(10f64.powf(d));
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{}</text>"##,
            W - RIGHT,
            LEFT - 6.0,
            y + 4.0,
            d as i64
        );
        d += step;
    }
    // x ticks, labelled in the original variable
    let xstep = nice_step(xmax - xmin, 8);
    let mut t = (xmin / xstep).ceil() * xstep;
    let mut last = f64::NEG_INFINITY;
    while t <= xmax + 1e-9 * xstep {
        let x = px(t);
        // quadratic axes bunch the low ticks together
        if x - last < 32.0 {
            t += xstep;
            continue;
        }
        last = x;
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#eee"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
            H - BOTTOM,
            H - BOTTOM + 18.0,
            t
        );
        t += xstep;
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        W - LEFT - RIGHT,
        H - TOP - BOTTOM
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 16.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(18 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
        (TOP + H - BOTTOM) / 2.0,
        escape(y_label)
    );

    for (i, ser) in series.iter().enumerate() {
        let visible: Vec<(f64, f64)> = ser
            .points
            .iter()
            .copied()
            .filter(|(_, y)| *y > 0.0 && y.is_finite())
            .map(|(x, y)| (px(x), py(y)))
            .collect();
        match ser.style {
            Style::Line => {
                let path: Vec<String> = visible.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                    path.join(" "),
                    ser.color
                );
            }
            Style::Markers => {
                for (x, y) in &visible {
                    let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{}"/>"#, ser.color);
                }
            }
        }
        // legend
        let ly = TOP + 16.0 + 16.0 * i as f64;
        let lx = W - RIGHT - 190.0;
        match ser.style {
            Style::Line => {
                let _ = write!(
                    s,
                    r#"<line x1="{lx}" y1="{:.2}" x2="{}" y2="{:.2}" stroke="{}" stroke-width="1.5"/>"#,
                    ly - 4.0,
                    lx + 20.0,
                    ly - 4.0,
                    ser.color
                );
            }
            Style::Markers => {
                let _ = write!(s, r#"<circle cx="{}" cy="{:.2}" r="3" fill="{}"/>"#, lx + 10.0, ly - 4.0, ser.color);
            }
        }
        let _ = writeln!(s, r#"<text x="{}" y="{ly:.2}">{}</text>"#, lx + 26.0, escape(&ser.label));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_axis_spacing() {
        let ser = Series {
            label: "a".into(),
            points: vec![(0.0, 1.0), (1.0, 0.1), (2.0, 0.01)],
            style: Style::Markers,
            color: PALETTE[0],
        };
        let svg = render("t", "k", "err", XScale::Quadratic, &[ser]);
        let cx: Vec<f64> = svg
            .lines()
            .filter(|l| l.starts_with("<circle cx="))
            .map(|l| l[12..].split('"').next().unwrap().parse().unwrap())
            .collect();
        // positions 0, 1, 4 in k^2
        let (a, b, c) = (cx[0], cx[1], cx[2]);
        assert!(((c - a) / (b - a) - 4.0).abs() < 1e-2);
        assert!(svg.ends_with("</svg>\n"));
    }
}
