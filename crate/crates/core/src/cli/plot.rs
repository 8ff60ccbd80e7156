//! Static SVG charts of relative error against bandwidth.

use std::fmt::Write;

use crate::cli::output::CurveRow;
use crate::error::{Error, Result};
use crate::kernels::KernelKind;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 52.0;

struct Series {
    label: &'static str,
    color: &'static str,
    dashed: bool,
    points: Vec<(f64, f64)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Round tick spacing covering `span` in roughly five steps.
fn tick_step(span: f64) -> f64 {
    if span <= 0.0 || !span.is_finite() {
        return 1.0;
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.0 {
        2.0
    } else if norm < 7.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

/// Chart for one (split, kernel) slice of a curve table. Splits without a
/// test set get only the two training curves.
pub fn render_svg(rows: &[CurveRow], split: usize, kernel: KernelKind) -> Result<String> {
    let mut slice: Vec<&CurveRow> = rows
        .iter()
        .filter(|r| r.split == split && r.kernel == kernel)
        .collect();
    if slice.is_empty() {
        return Err(Error::MissingSlice {
            split,
            kernel: kernel.to_string(),
        });
    }
    slice.sort_by(|a, b| a.bandwidth.total_cmp(&b.bandwidth));
    let dataset = slice[0].dataset.clone();

    let mut series = vec![Series {
        label: "train",
        color: "#1f77b4",
        dashed: false,
        points: slice.iter().map(|r| (r.bandwidth, r.re_train_nu)).collect(),
    }];
    let has_test = slice.iter().all(|r| r.re_test_nu.is_some());
    if has_test {
        series.push(Series {
            label: "test",
            color: "#d62728",
            dashed: false,
            points: slice
                .iter()
                .map(|r| (r.bandwidth, r.re_test_nu.expect("checked")))
                .collect(),
        });
    }
    series.push(Series {
        label: "train global",
        color: "#1f77b4",
        dashed: true,
        points: slice.iter().map(|r| (r.bandwidth, r.re_train_u)).collect(),
    });
    if has_test {
        series.push(Series {
            label: "test global",
            color: "#d62728",
            dashed: true,
            points: slice
                .iter()
                .filter_map(|r| r.re_test_u.map(|v| (r.bandwidth, v)))
                .collect(),
        });
    }

    let x_lo = slice[0].bandwidth;
    let x_hi = slice[slice.len() - 1].bandwidth.max(x_lo + 1.0);
    let y_max = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max);
    let y_step = tick_step(y_max.max(1e-9));
    let y_hi = ((y_max / y_step).ceil() * y_step).max(y_step);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + plot_h - (y.min(y_hi) / y_hi) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{} split {} ({})</text>"#,
        LEFT + plot_w / 2.0,
        escape(&dataset),
        split,
        kernel
    );

    // axes and grid
    let _ = writeln!(
        svg,
        r##"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#333"/>"##
    );
    let x_step = tick_step(x_hi - x_lo);
    let mut x = (x_lo / x_step).ceil() * x_step;
    while x <= x_hi + 1e-9 {
        let px = sx(x);
        let _ = writeln!(
            svg,
            r##"<line x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{:.2}" stroke="#ddd"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
            TOP + plot_h,
            TOP + plot_h + 16.0,
            x
        );
        x += x_step;
    }
    let mut y = 0.0;
    while y <= y_hi + 1e-12 {
        let py = sy(y);
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            LEFT + plot_w,
            LEFT - 6.0,
            py + 4.0,
            (y * 1e6).round() / 1e6
        );
        y += y_step;
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">bandwidth</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">relative error</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, s) in series.iter().enumerate() {
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|p| p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let dash = if s.dashed {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.8"{dash} points="{}"><title>{}</title></polyline>"#,
            s.color,
            pts.join(" "),
            s.label
        );
        let ly = TOP + 12.0 + i as f64 * 20.0;
        let lx = WIDTH - RIGHT + 16.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="1.8"{dash}/><text x="{}" y="{}">{}</text>"#,
            lx + 28.0,
            s.color,
            lx + 34.0,
            ly + 4.0,
            s.label
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
