//! Report emission: versioned JSON envelopes, scatter CSV and SVG plots.

use std::fmt::Write as _;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::indicators::{LineFit, ModelPoint};

pub const SCHEMA_VERSION: u32 = 1;

/// `{schema_version, command, config, result}`; `config` is the full run
/// configuration so the output can be reproduced from itself.
pub fn envelope(command: &str, config: &impl Serialize, result: &impl Serialize) -> Result<Value> {
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": serde_json::to_value(config)?,
        "result": serde_json::to_value(result)?,
    }))
}

/// Pretty JSON with a trailing newline.
pub fn to_json_text(value: &Value) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn scatter_csv(points: &[ModelPoint]) -> String {
    let mut out = String::from("name,indicator,robustness\n");
    for p in points {
        let _ = writeln!(out, "{},{},{}", p.name, p.indicator, p.robustness);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Adds a `<!-- generated at ... -->` comment; the only non-reproducible
    /// byte range of an SVG.
    pub timestamp: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 640.0,
            height: 480.0,
            margin: 60.0,
            title: String::new(),
            x_label: "indicator".into(),
            y_label: "robustness".into(),
            timestamp: true,
        }
    }
}

/// Maps data coordinates to SVG pixels (y grows downward).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

impl Frame {
    pub fn fit(points: &[ModelPoint], opts: &SvgOptions) -> Self {
        let xs = points.iter().map(|p| p.indicator);
        let ys = points.iter().map(|p| p.robustness);
        let (x_min, x_max) = padded(xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
        let (y_min, y_max) = padded(ys.clone().fold(f64::INFINITY, f64::min), ys.fold(f64::NEG_INFINITY, f64::max));
        Frame {
            x_min,
            x_max,
            y_min,
            y_max,
            left: opts.margin,
            right: opts.width - opts.margin / 2.0,
            top: opts.margin / 2.0,
            bottom: opts.height - opts.margin,
        }
    }

    pub fn to_px(&self, x: f64, y: f64) -> (f64, f64) {
        let px = self.left + (x - self.x_min) / (self.x_max - self.x_min) * (self.right - self.left);
        let py = self.bottom - (y - self.y_min) / (self.y_max - self.y_min) * (self.bottom - self.top);
        (px, py)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Scatter plot with one labeled dot per model and, if given, the fitted line
/// drawn across the plotted x range.
pub fn scatter_svg(points: &[ModelPoint], fit: Option<&LineFit>, opts: &SvgOptions) -> Result<String> {
    if points.is_empty() {
        return Err(Error::DegenerateInput("scatter plot needs at least one point".into()));
    }
    let f = Frame::fit(points, opts);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = opts.width,
        h = opts.height
    );
    if opts.timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let _ = writeln!(s, "<!-- generated at unix time {secs} -->");
    }
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
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
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#,
            (f.left + f.right) / 2.0,
            f.top - 8.0,
            escape(&opts.title)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12">{}</text>"#,
        (f.left + f.right) / 2.0,
        opts.height - opts.margin / 3.0,
        escape(&opts.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="{x:.2}" y="{y:.2}" text-anchor="middle" font-size="12" transform="rotate(-90 {x:.2} {y:.2})">{}</text>"#,
        escape(&opts.y_label),
        x = opts.margin / 3.0,
        y = (f.top + f.bottom) / 2.0
    );
    for (value, anchor) in [(f.x_min, "start"), (f.x_max, "end")] {
        let (px, _) = f.to_px(value, f.y_min);
        let _ = writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="{anchor}" font-size="10">{value:.3}</text>"#,
            f.bottom + 14.0
        );
    }
    for value in [f.y_min, f.y_max] {
        let (_, py) = f.to_px(f.x_min, value);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{py:.2}" text-anchor="end" font-size="10">{value:.3}</text>"#,
            f.left - 4.0
        );
    }
    if let Some(line) = fit {
        let (x1, y1) = f.to_px(f.x_min, line.at(f.x_min));
        let (x2, y2) = f.to_px(f.x_max, line.at(f.x_max));
        let _ = writeln!(
            s,
            r##"<line class="fit" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#c0392b" stroke-width="1.5"/>"##
        );
    }
    for p in points {
        let (cx, cy) = f.to_px(p.indicator, p.robustness);
        let _ = writeln!(
            s,
            r##"<circle class="point" cx="{cx:.2}" cy="{cy:.2}" r="4" fill="#2c3e50"><title>{}</title></circle>"##,
            escape(&p.name)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="10">{}</text>"#,
            cx + 6.0,
            cy - 6.0,
            escape(&p.name)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Writes the scatter CSV, and the SVG when a path is given.
pub fn emit_scatter(
    points: &[ModelPoint],
    fit: &LineFit,
    csv_path: &Path,
    svg_path: Option<&Path>,
    opts: &SvgOptions,
) -> Result<()> {
    if points.is_empty() {
        return Err(Error::DegenerateInput("scatter needs at least one point".into()));
    }
    std::fs::write(csv_path, scatter_csv(points))?;
    if let Some(path) = svg_path {
        std::fs::write(path, scatter_svg(points, Some(fit), opts)?)?;
    }
    Ok(())
}

/// `index,label,pc1,pc2` rows.
pub fn projection_csv(coords: &[[f64; 2]], labels: &[usize]) -> String {
    let mut out = String::from("index,label,pc1,pc2\n");
    for (i, (c, l)) in coords.iter().zip(labels).enumerate() {
        let _ = writeln!(out, "{i},{l},{},{}", c[0], c[1]);
    }
    out
}
