//! Output emission: per-variable comparison CSVs, single-run CSVs, and a
//! small-multiples SVG grid.
//!
//! CSV is the contract; floats are written in shortest round-trip form so
//! reloading reproduces the exact values. The SVG renderer is dependency-free
//! string generation.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::scenario::{ComparisonResult, RunResult, OUTPUT_VARIABLES};

/// Write one CSV per variable: `period, <baseline>, <variant...>`.
/// Returns the file paths in emission order.
pub fn write_comparison_csv(
    cmp: &ComparisonResult,
    out_dir: impl AsRef<Path>,
) -> Result<Vec<std::path::PathBuf>> {
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir)?;
    let periods = cmp.runs[0].periods();
    let mut written = Vec::with_capacity(OUTPUT_VARIABLES.len());
    for var in OUTPUT_VARIABLES {
        let mut text = String::new();
        text.push_str("period");
        for run in &cmp.runs {
            text.push(',');
            text.push_str(&run.name);
        }
        text.push('\n');
        let columns: Vec<Vec<f64>> = cmp.runs.iter().map(|r| r.variable(var)).collect();
        for (i, period) in periods.iter().enumerate() {
            let _ = write!(text, "{period}");
            for col in &columns {
                let _ = write!(text, ",{}", col[i]);
            }
            text.push('\n');
        }
        let path = out_dir.join(format!("{var}.csv"));
        std::fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

/// Single-run CSV: `period` plus the eight variables.
pub fn write_run_csv(run: &RunResult, path: impl AsRef<Path>) -> Result<()> {
    let mut text = String::new();
    text.push_str("period");
    for var in OUTPUT_VARIABLES {
        text.push(',');
        text.push_str(var);
    }
    text.push('\n');
    for (i, period) in run.periods().iter().enumerate() {
        let _ = write!(text, "{period}");
        for var in OUTPUT_VARIABLES {
            let _ = write!(text, ",{}", run.variable(var)[i]);
        }
        text.push('\n');
    }
    if let Some(parent) = path.as_ref().parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, text)?;
    Ok(())
}

const PANEL_W: f64 = 300.0;
const PANEL_H: f64 = 220.0;
const MARGIN: f64 = 42.0;
const COLS: usize = 4;
const PALETTE: [&str; 6] = [
    "#444444", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
];

/// Small-multiples grid: one panel per variable, one polyline per run.
pub fn write_comparison_svg(cmp: &ComparisonResult, path: impl AsRef<Path>) -> Result<()> {
    let rows = OUTPUT_VARIABLES.len().div_ceil(COLS);
    let width = COLS as f64 * PANEL_W;
    let height = rows as f64 * PANEL_H + 30.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    // legend
    let mut lx = 10.0;
    for (i, run) in cmp.runs.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            svg,
            r#"<rect x="{lx}" y="8" width="14" height="3" fill="{color}"/><text x="{}" y="14">{}</text>"#,
            lx + 18.0,
            escape(&run.name)
        );
        lx += 24.0 + 7.0 * run.name.len() as f64;
    }

    for (vi, var) in OUTPUT_VARIABLES.iter().enumerate() {
        let px = (vi % COLS) as f64 * PANEL_W;
        let py = (vi / COLS) as f64 * PANEL_H + 30.0;
        let plot_w = PANEL_W - 2.0 * MARGIN;
        let plot_h = PANEL_H - 2.0 * MARGIN;

        let columns: Vec<Vec<f64>> = cmp.runs.iter().map(|r| r.variable(var)).collect();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for col in &columns {
            for &v in col {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        if !(hi > lo) {
            hi = lo + 1.0;
        }
        let pad = 0.05 * (hi - lo);
        let (lo, hi) = (lo - pad, hi + pad);
        let n = columns[0].len();

        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle" font-weight="bold">{}</text>"#,
            px + PANEL_W / 2.0,
            py + 16.0,
            var
        );
        let _ = writeln!(
            svg,
            r##"<rect x="{}" y="{}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#999"/>"##,
            px + MARGIN,
            py + MARGIN
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end">{:.2}</text>"#,
            px + MARGIN - 4.0,
            py + MARGIN + 8.0,
            hi
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end">{:.2}</text>"#,
            px + MARGIN - 4.0,
            py + MARGIN + plot_h,
            lo
        );

        for (ci, col) in columns.iter().enumerate() {
            let color = PALETTE[ci % PALETTE.len()];
            let mut points = String::new();
            for (i, &v) in col.iter().enumerate() {
                let x = px + MARGIN + plot_w * i as f64 / (n.max(2) - 1) as f64;
                let y = py + MARGIN + plot_h * (1.0 - (v - lo) / (hi - lo));
                let _ = write!(points, "{x:.2},{y:.2} ");
            }
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                points.trim_end()
            );
        }
        // first and last period labels
        let periods = cmp.runs[0].periods();
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}">{}</text>"#,
            px + MARGIN,
            py + MARGIN + plot_h + 14.0,
            periods[0]
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            px + MARGIN + plot_w,
            py + MARGIN + plot_h + 14.0,
            periods[periods.len() - 1]
        );
    }
    let _ = writeln!(svg, "</svg>");
    if let Some(parent) = path.as_ref().parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, svg)?;
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
