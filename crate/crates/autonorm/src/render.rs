//! Minimal self-contained SVG plots with a tab-separated data sidecar.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use autonorm_core::diagnostics::{PlotSeries, SeriesKind};

use crate::error::{Error, Result};

const PALETTE: [&str; 4] = ["#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd"];
const REFERENCE: &str = "#d62728";

#[derive(Clone, Debug)]
pub struct RenderOptions {
    pub width: f64,
    pub height: f64,
    pub title: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            width: 640.0,
            height: 480.0,
            title: String::new(),
        }
    }
}

/// Writes `path` (SVG) and a sidecar with the same stem and a `.tsv`
/// extension holding the raw points. Returns the sidecar path.
pub fn render_svg(series: &[PlotSeries], path: &Path, opts: &RenderOptions) -> Result<PathBuf> {
    let svg = svg_document(series, opts)?;
    fs::write(path, svg).map_err(|e| Error::io(path, e))?;
    let sidecar = path.with_extension("tsv");
    fs::write(&sidecar, series_tsv(series)).map_err(|e| Error::io(&sidecar, e))?;
    Ok(sidecar)
}

pub fn series_tsv(series: &[PlotSeries]) -> String {
    let mut out = String::from("series\tkind\tx\ty\n");
    for s in series {
        for (x, y) in &s.points {
            let _ = writeln!(out, "{}\t{}\t{x}\t{y}", s.label, s.kind.as_str());
        }
    }
    out
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x0) / (self.x1 - self.x0) * (self.right - self.left)
    }

    fn py(&self, y: f64) -> f64 {
        self.bottom - (y - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top)
    }
}

/// Jitter heights in (0, 1) are placed in a strip just below zero, scaled
/// to the tallest density curve when there is one.
fn placed_points(s: &PlotSeries, density_top: f64) -> Vec<(f64, f64)> {
    let finite = s
        .points
        .iter()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite());
    match s.kind {
        SeriesKind::Jitter => finite
            .map(|(x, y)| (x, -density_top * (0.03 + 0.12 * y)))
            .collect(),
        _ => finite.collect(),
    }
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.04 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

pub fn svg_document(series: &[PlotSeries], opts: &RenderOptions) -> Result<String> {
    if series.is_empty() {
        return Err(Error::Config("nothing to plot: empty series list".into()));
    }
    let density_top = series
        .iter()
        .filter(|s| s.kind == SeriesKind::Kde)
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .fold(0.0, f64::max);
    let density_top = if density_top > 0.0 { density_top } else { 1.0 };
    let placed: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| placed_points(s, density_top))
        .collect();
    let all = placed.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = all.fold(
        (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ),
        |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
    );
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let has_qq = series.iter().any(|s| s.kind == SeriesKind::Qq);
    if has_qq {
        // square frame so the reference line is at 45 degrees
        let (lo, hi) = (x0.min(y0), x1.max(y1));
        (x0, x1, y0, y1) = (lo, hi, lo, hi);
    }
    let (x0, x1) = padded(x0, x1);
    let (y0, y1) = padded(y0, y1);
    let (w, h) = (opts.width, opts.height);
    let f = Frame {
        x0,
        x1,
        y0,
        y1,
        left: 60.0,
        right: w - 20.0,
        top: 40.0,
        bottom: h - 50.0,
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        f.left,
        f.top,
        f.right - f.left,
        f.bottom - f.top
    );
    if !opts.title.is_empty() {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
            w / 2.0,
            escape(&opts.title)
        );
    }
    for (v, anchor, x, y) in [
        (x0, "start", f.left, f.bottom + 18.0),
        (x1, "end", f.right, f.bottom + 18.0),
    ] {
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}">{v:.3}</text>"#
        );
    }
    for (v, y) in [(y0, f.bottom), (y1, f.top + 10.0)] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{y:.2}" text-anchor="end">{v:.3}</text>"#,
            f.left - 6.0
        );
    }
    if has_qq {
        let _ = writeln!(
            s,
            r#"<line class="reference" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{REFERENCE}" stroke-width="1.5" stroke-dasharray="6,4"/>"#,
            f.px(x0.max(y0)),
            f.py(x0.max(y0)),
            f.px(x1.min(y1)),
            f.py(x1.min(y1))
        );
    }

    for (k, (series, points)) in series.iter().zip(&placed).enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(
            s,
            r#"<g class="{}" fill="none" stroke="{color}">"#,
            series.kind.as_str()
        );
        match series.kind {
            SeriesKind::Kde => {
                let coords: Vec<String> = points
                    .iter()
                    .map(|&(x, y)| format!("{:.2},{:.2}", f.px(x), f.py(y)))
                    .collect();
                let _ = writeln!(
                    s,
                    r#"<polyline stroke-width="2" points="{}"/>"#,
                    coords.join(" ")
                );
            }
            SeriesKind::Qq => {
                for &(x, y) in points {
                    let (px, py) = (f.px(x), f.py(y));
                    let _ = writeln!(
                        s,
                        r#"<path d="M{:.2} {py:.2}h6M{px:.2} {:.2}v6"/>"#,
                        px - 3.0,
                        py - 3.0
                    );
                }
            }
            SeriesKind::Scatter | SeriesKind::Jitter => {
                for &(x, y) in points {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{:.2}" cy="{:.2}" r="2"/>"#,
                        f.px(x),
                        f.py(y)
                    );
                }
            }
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" fill="{color}">{}</text>"#,
            f.left + 8.0,
            f.top + 16.0 * (k + 1) as f64,
            escape(&series.label)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
