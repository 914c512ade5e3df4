//! Minimal deterministic SVG output: region overlays in the `(d1, d2)` plane
//! and line charts of sum-GDoF against alpha.
//!
//! Coordinates are printed with three decimals and nothing depends on time
//! or hashing order, so equal inputs give byte-identical files.

use std::fmt::Write;

use crate::geometry::Region2D;
use crate::rational::to_f64;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stroke {
    Solid,
    Dashed,
    Dotted,
}

impl Stroke {
    fn dash(&self) -> &'static str {
        match self {
            Stroke::Solid => "",
            Stroke::Dashed => r#" stroke-dasharray="8 4""#,
            Stroke::Dotted => r#" stroke-dasharray="2 3""#,
        }
    }
}

pub struct RegionLayer<'a> {
    pub label: String,
    pub region: &'a Region2D,
    pub stroke: Stroke,
}

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub stroke: Stroke,
}

struct Frame {
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN + v / self.x_max * (SIZE - 2.0 * MARGIN)
    }
    fn y(&self, v: f64) -> f64 {
        SIZE - MARGIN - v / self.y_max * (SIZE - 2.0 * MARGIN)
    }
}

fn nice_max(v: f64) -> f64 {
    v.ceil().max(1.0)
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="14">{}</text>"#,
        SIZE / 2.0,
        MARGIN / 2.0,
        escape(title)
    );
}

fn axes(out: &mut String, fr: &Frame, x_label: &str, y_label: &str, x_step: f64, y_step: f64) {
    let (x0, y0) = (fr.x(0.0), fr.y(0.0));
    let _ = writeln!(
        out,
        r#"<path d="M{:.3},{:.3} L{:.3},{:.3} M{:.3},{:.3} L{:.3},{:.3}" stroke="black" fill="none"/>"#,
        x0,
        y0,
        fr.x(fr.x_max),
        y0,
        x0,
        y0,
        x0,
        fr.y(fr.y_max)
    );
    let mut t = 0.0;
    while t <= fr.x_max + 1e-9 {
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
            fr.x(t),
            y0 + 18.0,
            tick(t)
        );
        t += x_step;
    }
    let mut t = 0.0;
    while t <= fr.y_max + 1e-9 {
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            fr.y(t) + 4.0,
            tick(t)
        );
        t += y_step;
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
        SIZE / 2.0,
        SIZE - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" transform="rotate(-90 {:.3} {:.3})">{}</text>"#,
        20.0,
        SIZE / 2.0,
        20.0,
        SIZE / 2.0,
        escape(y_label)
    );
}

fn legend(out: &mut String, entries: &[(String, Stroke)]) {
    for (i, (label, stroke)) in entries.iter().enumerate() {
        let y = MARGIN + 10.0 + 16.0 * i as f64;
        let x = SIZE - MARGIN - 120.0;
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{}" stroke-width="2"{}/>"#,
            x,
            y,
            x + 24.0,
            y,
            PALETTE[i % PALETTE.len()],
            stroke.dash()
        );
        let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}">{}</text>"#, x + 30.0, y + 4.0, escape(label));
    }
}

fn tick(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.1}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Overlay of convex regions. Axes are labelled d₁ and d₂.
pub fn render_regions(title: &str, layers: &[RegionLayer<'_>]) -> String {
    let mut x_max: f64 = 0.0;
    let mut y_max: f64 = 0.0;
    for l in layers {
        for v in l.region.vertices() {
            x_max = x_max.max(to_f64(&v.d1));
            y_max = y_max.max(to_f64(&v.d2));
        }
    }
    let m = nice_max(x_max.max(y_max));
    let fr = Frame { x_max: m, y_max: m };
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &fr, "d₁", "d₂", 1.0, 1.0);
    for (i, l) in layers.iter().enumerate() {
        let pts: Vec<String> = l
            .region
            .vertices()
            .iter()
            .map(|v| format!("{:.3},{:.3}", fr.x(to_f64(&v.d1)), fr.y(to_f64(&v.d2))))
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="2"{}/>"#,
            pts.join(" "),
            PALETTE[i % PALETTE.len()],
            l.stroke.dash()
        );
    }
    legend(
        &mut out,
        &layers.iter().map(|l| (l.label.clone(), l.stroke)).collect::<Vec<_>>(),
    );
    out.push_str("</svg>\n");
    out
}

/// Line chart of one or more series sharing the x axis.
pub fn render_series(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let mut x_max: f64 = 0.0;
    let mut y_max: f64 = 0.0;
    for s in series {
        for &(x, y) in &s.points {
            x_max = x_max.max(x);
            y_max = y_max.max(y);
        }
    }
    let fr = Frame {
        x_max: nice_max(x_max),
        y_max: nice_max(y_max),
    };
    let x_step = if fr.x_max <= 4.0 { 0.5 } else { 1.0 };
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &fr, x_label, y_label, x_step, 1.0);
    for (i, s) in series.iter().enumerate() {
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", fr.x(x), fr.y(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"{}/>"#,
            pts.join(" "),
            PALETTE[i % PALETTE.len()],
            s.stroke.dash()
        );
    }
    legend(
        &mut out,
        &series.iter().map(|s| (s.label.clone(), s.stroke)).collect::<Vec<_>>(),
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::{delayed_region, perfect_csit_region};

    #[test]
    fn region_svg_is_deterministic_and_labelled() {
        let c = "1,2,1,1".parse().unwrap();
        let a = "0.4".parse().unwrap();
        let d = delayed_region(&c, a);
        let p = perfect_csit_region(&c, a).unwrap();
        let render = || {
            render_regions(
                "(1,2,1,1) at alpha = 0.4",
                &[
                    RegionLayer { label: "delayed".into(), region: &d, stroke: Stroke::Solid },
                    RegionLayer { label: "perfect".into(), region: &p, stroke: Stroke::Dashed },
                ],
            )
        };
        let a = render();
        assert_eq!(a, render());
        assert!(a.contains("d₁") && a.contains("d₂"));
        assert_eq!(a.matches("<polygon").count(), 2);
        assert!(a.contains("stroke-dasharray"));
        assert!(a.starts_with("<svg"));
    }

    #[test]
    fn series_svg_has_one_polyline_per_series() {
        let s = render_series(
            "sum",
            "α",
            "sum-GDoF",
            &[
                Series { label: "a".into(), points: vec![(0.0, 1.0), (1.0, 2.0)], stroke: Stroke::Solid },
                Series { label: "b".into(), points: vec![(0.0, 2.0), (1.0, 1.0)], stroke: Stroke::Dashed },
            ],
        );
        assert_eq!(s.matches("<polyline").count(), 2);
    }
}
