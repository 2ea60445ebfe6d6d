//! Static SVG plots of exact piecewise-linear functions.
//!
//! Coordinates are converted to `f64` only for pixel placement; every label
//! is printed from the exact value.

use std::fmt::Write;

use upsilon_core::pl::PLFunction;
use upsilon_core::rational::Rational;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 4] = ["#1f4e9c", "#c0392b", "#27853f", "#8e44ad"];

pub struct Series<'a> {
    pub label: String,
    pub function: &'a PLFunction,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render(series: &[Series<'_>]) -> String {
    let zero = Rational::zero();
    let lowest = series
        .iter()
        .flat_map(|s| s.function.breakpoints().iter().map(|(_, v)| v.clone()))
        .min()
        .unwrap_or_else(Rational::zero)
        .min(zero.clone());
    let depth = if lowest.is_zero() { 1.0 } else { -lowest.to_f64() };
    let x = |t: &Rational| MARGIN + t.to_f64() / 2.0 * (WIDTH - 2.0 * MARGIN);
    let y = |v: &Rational| MARGIN + (-v.to_f64()) / depth * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    let (x0, x2) = (x(&zero), x(&Rational::from(2)));
    let (y0, ylow) = (y(&zero), y(&lowest));
    writeln!(out, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x2:.2}" y2="{y0:.2}" stroke="black"/>"#).unwrap();
    writeln!(out, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{ylow:.2}" stroke="black"/>"#).unwrap();
    for k in 0..=4 {
        let t = Rational::frac(k, 2);
        let px = x(&t);
        writeln!(out, r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#, y0 - 4.0, y0 + 4.0)
            .unwrap();
        writeln!(out, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{t}</text>"#, y0 - 10.0).unwrap();
    }
    let mut y_ticks = vec![zero.clone()];
    if !lowest.is_zero() {
        y_ticks.push(&lowest / Rational::from(2));
        y_ticks.push(lowest.clone());
    }
    for v in &y_ticks {
        let py = y(v);
        writeln!(out, r#"<line x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="black"/>"#, x0 - 4.0, x0 + 4.0)
            .unwrap();
        writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v}</text>"#, x0 - 8.0, py + 4.0).unwrap();
    }

    for (n, s) in series.iter().enumerate() {
        let color = COLORS[n % COLORS.len()];
        let points: Vec<String> =
            s.function.breakpoints().iter().map(|(t, v)| format!("{:.2},{:.2}", x(t), y(v))).collect();
        writeln!(out, r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#, points.join(" "))
            .unwrap();
        for (t, v) in s.function.breakpoints() {
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"><title>({t}, {v})</title></circle>"#,
                x(t),
                y(v)
            )
            .unwrap();
        }
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" fill="{color}">{}</text>"#,
            WIDTH - MARGIN,
            HEIGHT - MARGIN / 2.0 + 14.0 * n as f64 - 14.0 * (series.len() as f64 - 1.0),
            escape(&s.label)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_exact() {
        let f = PLFunction::new(vec![
            (Rational::zero(), Rational::zero()),
            (Rational::frac(2, 3), Rational::from(-2)),
            (Rational::frac(4, 3), Rational::from(-2)),
            (Rational::from(2), Rational::zero()),
        ])
        .unwrap();
        let svg = render(&[Series { label: "torus(3,4)".into(), function: &f }]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(">3/2</text>"));
        assert!(svg.contains("<title>(2/3, -2)</title>"));
        assert!(svg.contains(">-1</text>"));
        assert_eq!(svg.matches("<polyline").count(), 1);
    }
}
