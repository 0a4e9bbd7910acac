use std::fmt::Write;

use thermo_core::rational::to_f64;
use thermo_core::{format_rational, GibbsContext, ThermoCurve};

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];
const MARGIN: f64 = 48.0;
const LEGEND_LINE: f64 = 18.0;

pub struct Canvas {
    pub width: u32,
    pub height: u32,
}

impl Canvas {
    /// Curves in the unit box `[0, Z] x [0, 1]`, the Gibbs line dashed,
    /// elbows as circles, and a legend naming each state.
    pub fn render(&self, ctx: &GibbsContext, curves: &[(String, ThermoCurve)]) -> String {
        let w = f64::from(self.width);
        let legend = LEGEND_LINE * curves.len() as f64;
        let h = f64::from(self.height);
        let plot_h = (h - 2.0 * MARGIN - legend).max(40.0);
        let z = to_f64(ctx.partition_sum());
        let sx = |x: f64| MARGIN + x / z * (w - 2.0 * MARGIN);
        let sy = |y: f64| MARGIN + (1.0 - y) * plot_h;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
        );
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            self.width, self.height, self.width, self.height
        );
        let _ = writeln!(
            out,
            r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#
        );
        let _ = writeln!(
            out,
            r#"<g font-family="sans-serif" font-size="12" fill="black">"#
        );

        // Axes and end labels.
        let (x0, y0, x1, y1) = (sx(0.0), sy(0.0), sx(z), sy(1.0));
        let _ = writeln!(
            out,
            r#"<polyline points="{x0:.2},{y1:.2} {x0:.2},{y0:.2} {x1:.2},{y0:.2}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{x0:.2}" y="{:.2}" text-anchor="middle">0</text>"#,
            y0 + 16.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{x1:.2}" y="{:.2}" text-anchor="middle">Z = {}</text>"#,
            y0 + 16.0,
            format_rational(ctx.partition_sum())
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1</text>"#,
            x0 - 6.0,
            y1 + 4.0
        );

        // Gibbs state: the straight line to (Z, 1).
        let _ = writeln!(
            out,
            r##"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="#888888" stroke-dasharray="6,4"/>"##
        );

        for (k, (label, curve)) in curves.iter().enumerate() {
            let color = PALETTE[k % PALETTE.len()];
            let pts: Vec<(f64, f64)> = std::iter::once((0.0, 0.0))
                .chain(curve.elbows().iter().map(|(x, y)| (to_f64(x), to_f64(y))))
                .map(|(x, y)| (sx(x), sy(y)))
                .collect();
            let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                path.join(" ")
            );
            for (x, y) in &pts[1..] {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="white" stroke="{color}" stroke-width="2"/>"#
                );
            }
            let ly = sy(0.0) + 36.0 + LEGEND_LINE * k as f64;
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
                MARGIN,
                ly - 4.0,
                MARGIN + 24.0,
                ly - 4.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#,
                MARGIN + 32.0,
                escape(label)
            );
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
