//! Deterministic SVG rendering. The geometry is only illustrative; the
//! caption carries the crossing count computed by the drawing model.

mod book;
mod cert;
mod cylindrical;

pub use book::render_book;
pub use cert::render_certificate;
pub use cylindrical::render_cylindrical;

use std::fmt::Write;

const PALETTE: [&str; 6] = ["#1f5fa8", "#b8401a", "#2f8a3a", "#7a3ea1", "#9a7b12", "#127a7a"];

pub(crate) fn page_color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

/// Element list with a fixed canvas and caption; elements keep the order
/// they were added in.
pub(crate) struct Svg {
    width: f64,
    height: f64,
    body: String,
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        Self {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn line(&mut self, class: &str, color: &str, a: (f64, f64), b: (f64, f64)) {
        writeln!(
            self.body,
            r#"<line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" fill="none"/>"#,
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    }

    pub fn path(&mut self, class: &str, color: &str, d: &str, dashed: bool) {
        let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
        writeln!(self.body, r#"<path class="{class}" d="{d}" stroke="{color}" fill="none"{dash}/>"#).unwrap();
    }

    pub fn circle(&mut self, class: &str, c: (f64, f64), r: f64, stroke: &str, fill: &str, dashed: bool) {
        let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
        writeln!(
            self.body,
            r#"<circle class="{class}" cx="{:.2}" cy="{:.2}" r="{r:.2}" stroke="{stroke}" fill="{fill}"{dash}/>"#,
            c.0, c.1
        )
        .unwrap();
    }

    pub fn vertex(&mut self, c: (f64, f64), label: usize) {
        self.circle("vertex", c, 4.0, "black", "white", false);
        writeln!(
            self.body,
            r#"<text class="label" x="{:.2}" y="{:.2}" font-size="10">{label}</text>"#,
            c.0 + 6.0,
            c.1 - 6.0
        )
        .unwrap();
    }

    pub fn crossing(&mut self, c: (f64, f64)) {
        self.circle("crossing", c, 3.0, "red", "red", false);
    }

    pub fn finish(self, caption: &str) -> String {
        let (w, h) = (self.width, self.height);
        let mut out = String::new();
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
        )
        .unwrap();
        out.push_str(&self.body);
        writeln!(
            out,
            r#"<text class="caption" x="10" y="{:.0}" font-size="14">{caption}</text>"#,
            h - 10.0
        )
        .unwrap();
        out.push_str("</svg>\n");
        out
    }
}

/// `M x y L …` through the points, closed when asked.
pub(crate) fn polyline(points: &[(f64, f64)], closed: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        write!(d, "{}{:.2} {:.2} ", if i == 0 { "M" } else { "L" }, p.0, p.1).unwrap();
    }
    if closed {
        d.push('Z');
    }
    d.trim_end().to_string()
}
