//! Bare-bones SVG line/scatter plots.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;

pub enum Series {
    Line { points: Vec<(f64, f64)>, color: &'static str },
    /// Points with symmetric vertical error bars.
    Scatter { points: Vec<(f64, f64, f64)>, color: &'static str },
    /// Horizontal dashed line across the full x range.
    HLine { y: f64, color: &'static str },
}

pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn n(x: f64) -> String {
    format!("{x:.2}")
}

impl Plot {
    fn bounds(&self) -> (f64, f64, f64, f64) {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for s in &self.series {
            match s {
                Series::Line { points, .. } => {
                    for &(x, y) in points {
                        (x0, x1, y0, y1) = (x0.min(x), x1.max(x), y0.min(y), y1.max(y));
                    }
                }
                Series::Scatter { points, .. } => {
                    for &(x, y, e) in points {
                        (x0, x1, y0, y1) = (x0.min(x), x1.max(x), y0.min(y - e), y1.max(y + e));
                    }
                }
                Series::HLine { y, .. } => (y0, y1) = (y0.min(*y), y1.max(*y)),
            }
        }
        if !x0.is_finite() {
            (x0, x1) = (0.0, 1.0);
        }
        if !y0.is_finite() {
            (y0, y1) = (0.0, 1.0);
        }
        if x1 <= x0 {
            x1 = x0 + 1.0;
        }
        if y1 <= y0 {
            y1 = y0 + 1.0;
        }
        let pad = 0.05 * (y1 - y0);
        (x0, x1, y0 - pad, y1 + pad)
    }

    pub fn render(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
            w = WIDTH,
            h = HEIGHT
        )
        .unwrap();
        writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        writeln!(out, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, n(WIDTH / 2.0), escape(&self.title)).unwrap();

        // axes with five ticks each
        let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
        writeln!(out, r#"<path d="M{} {} L{} {} L{} {}" fill="none" stroke="black"/>"#, n(left), n(top), n(left), n(bottom), n(right), n(bottom)).unwrap();
        for i in 0..=4 {
            let f = i as f64 / 4.0;
            let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
            let (px, py) = (sx(xv), sy(yv));
            writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/><text x="{0}" y="{3}" text-anchor="middle">{4}</text>"#,
                n(px), n(bottom), n(bottom + 5.0), n(bottom + 18.0), tick(xv)).unwrap();
            writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/><text x="{3}" y="{4}" text-anchor="end">{5}</text>"#,
                n(left - 5.0), n(py), n(left), n(left - 8.0), n(py + 4.0), tick(yv)).unwrap();
        }
        writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, n(WIDTH / 2.0), n(HEIGHT - 15.0), escape(&self.x_label)).unwrap();
        writeln!(out, r#"<text x="15" y="{0}" text-anchor="middle" transform="rotate(-90 15 {0})">{1}</text>"#, n(HEIGHT / 2.0), escape(&self.y_label)).unwrap();

        for s in &self.series {
            match s {
                Series::Line { points, color } => {
                    let d: Vec<String> = points
                        .iter()
                        .enumerate()
                        .map(|(i, &(x, y))| format!("{}{} {}", if i == 0 { "M" } else { "L" }, n(sx(x)), n(sy(y))))
                        .collect();
                    writeln!(out, r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, d.join(" ")).unwrap();
                }
                Series::Scatter { points, color } => {
                    for &(x, y, e) in points {
                        writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="{color}"/><circle cx="{0}" cy="{3}" r="2.5" fill="{color}"/>"#,
                            n(sx(x)), n(sy(y - e)), n(sy(y + e)), n(sy(y))).unwrap();
                    }
                }
                Series::HLine { y, color } => {
                    writeln!(out, r#"<line x1="{}" y1="{2}" x2="{}" y2="{2}" stroke="{color}" stroke-dasharray="6 4"/>"#, n(left), n(right), n(sy(*y))).unwrap();
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_all_series() {
        let plot = Plot {
            title: "a < b".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![
                Series::Line { points: vec![(0.0, 0.0), (1.0, 1.0)], color: "red" },
                Series::Scatter { points: vec![(0.5, 0.5, 0.1)], color: "black" },
                Series::HLine { y: 0.2, color: "blue" },
            ],
        };
        let svg = plot.render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("a &lt; b"));
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("<circle"));
        assert_eq!(svg, plot.render());
    }

    #[test]
    fn degenerate_bounds() {
        let plot = Plot {
            title: String::new(),
            x_label: String::new(),
            y_label: String::new(),
            series: vec![Series::HLine { y: 1.0, color: "blue" }],
        };
        assert!(!plot.render().contains("NaN"));
    }
}
