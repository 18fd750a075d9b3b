//! Minimal static SVG line/marker plots on a fixed 800×500 canvas.

use std::fmt::Write as _;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 500.0;

pub const BLUE: &str = "#1f77b4";
pub const RED: &str = "#d62728";
pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Line,
    Markers,
    /// Hollow markers, for predictions drawn over measured values.
    OpenMarkers,
    LineMarkers,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: String,
    pub style: Style,
}

impl Series {
    pub fn new(
        label: impl Into<String>,
        points: Vec<(f64, f64)>,
        color: &str,
        style: Style,
    ) -> Self {
        Self {
            label: label.into(),
            points,
            color: color.to_string(),
            style,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    x: f64,
    y: f64,
    w: f64,
    h: f64,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn nice_step(span: f64, target_ticks: usize) -> f64 {
    let raw = span / target_ticks as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let frac = raw / mag;
    let nice = if frac <= 1.0 {
        1.0
    } else if frac <= 2.0 {
        2.0
    } else if frac <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn fmt_tick(v: f64, step: f64) -> String {
    if v.abs() < step * 1e-9 {
        return "0".into();
    }
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    if v.abs() >= 1e5 || (v.abs() < 1e-3) {
        format!("{v:.1e}")
    } else {
        format!("{v:.decimals$}")
    }
}

fn data_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= 1e-12 * lo.abs().max(1.0) {
        let pad = lo.abs().max(1.0) * 0.5;
        return (lo - pad, hi + pad);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

impl Plot {
    pub fn new(
        title: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
    ) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
        }
    }

    pub fn with_series(mut self, series: Series) -> Self {
        self.series.push(series);
        self
    }

    /// Full-canvas SVG document.
    pub fn render(&self) -> String {
        render_grid(std::slice::from_ref(self), 1)
    }

    fn draw(&self, out: &mut String, area: Rect, font: f64) {
        let left = 12.0 + 5.5 * font;
        let legend_w = if self.series.len() > 1 {
            16.0 * font
        } else {
            0.0
        };
        let plot = Rect {
            x: area.x + left,
            y: area.y + 2.2 * font,
            w: (area.w - left - legend_w - 10.0).max(10.0),
            h: (area.h - 2.2 * font - 3.2 * font).max(10.0),
        };
        let (x0, x1) = data_range(
            self.series
                .iter()
                .flat_map(|s| s.points.iter().map(|p| p.0)),
        );
        let (y0, y1) = data_range(
            self.series
                .iter()
                .flat_map(|s| s.points.iter().map(|p| p.1)),
        );
        let sx = |x: f64| plot.x + (x - x0) / (x1 - x0) * plot.w;
        let sy = |y: f64| plot.y + plot.h - (y - y0) / (y1 - y0) * plot.h;

        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="{:.1}" text-anchor="middle" font-weight="bold">{}</text>"#,
            plot.x + plot.w / 2.0,
            area.y + 1.4 * font,
            font * 1.1,
            escape(&self.title)
        );
        let _ = writeln!(
            out,
            r#"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
            plot.x, plot.y, plot.w, plot.h
        );

        let xs = nice_step(x1 - x0, 5);
        let mut t = (x0 / xs).ceil() * xs;
        while t <= x1 + xs * 1e-9 {
            let px = sx(t);
            let _ = writeln!(
                out,
                r#"<line x1="{px:.1}" y1="{:.1}" x2="{px:.1}" y2="{:.1}" stroke="black"/><text x="{px:.1}" y="{:.1}" font-size="{:.1}" text-anchor="middle">{}</text>"#,
                plot.y + plot.h,
                plot.y + plot.h + 4.0,
                plot.y + plot.h + 1.1 * font + 4.0,
                font * 0.85,
                fmt_tick(t, xs)
            );
            t += xs;
        }
        let ys = nice_step(y1 - y0, 5);
        let mut t = (y0 / ys).ceil() * ys;
        while t <= y1 + ys * 1e-9 {
            let py = sy(t);
            let _ = writeln!(
                out,
                r##"<line x1="{:.1}" y1="{py:.1}" x2="{:.1}" y2="{py:.1}" stroke="#dddddd"/><text x="{:.1}" y="{:.1}" font-size="{:.1}" text-anchor="end">{}</text>"##,
                plot.x,
                plot.x + plot.w,
                plot.x - 4.0,
                py + font * 0.3,
                font * 0.85,
                fmt_tick(t, ys)
            );
            t += ys;
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="{:.1}" text-anchor="middle">{}</text>"#,
            plot.x + plot.w / 2.0,
            area.y + area.h - 0.4 * font,
            font,
            escape(&self.x_label)
        );
        let (lx, ly) = (area.x + font, plot.y + plot.h / 2.0);
        let _ = writeln!(
            out,
            r#"<text x="{lx:.1}" y="{ly:.1}" font-size="{:.1}" text-anchor="middle" transform="rotate(-90 {lx:.1} {ly:.1})">{}</text>"#,
            font,
            escape(&self.y_label)
        );

        let r = (font * 0.3).max(2.0);
        for s in &self.series {
            let pts: Vec<(f64, f64)> = s
                .points
                .iter()
                .filter(|p| p.0.is_finite() && p.1.is_finite())
                .map(|&(x, y)| (sx(x), sy(y)))
                .collect();
            if matches!(s.style, Style::Line | Style::LineMarkers) && pts.len() > 1 {
                let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                    path.join(" "),
                    s.color
                );
            }
            if matches!(
                s.style,
                Style::Markers | Style::LineMarkers | Style::OpenMarkers
            ) {
                let fill = if s.style == Style::OpenMarkers {
                    "none"
                } else {
                    s.color.as_str()
                };
                for (x, y) in &pts {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{x:.2}" cy="{y:.2}" r="{:.1}" fill="{fill}" stroke="{}"/>"#,
                        if s.style == Style::OpenMarkers {
                            r * 1.6
                        } else {
                            r
                        },
                        s.color
                    );
                }
            }
        }

        if legend_w > 0.0 {
            let lx = plot.x + plot.w + 10.0;
            for (i, s) in self.series.iter().enumerate() {
                let y = plot.y + font + i as f64 * 1.3 * font;
                let _ = writeln!(
                    out,
                    r#"<line x1="{lx:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{}" stroke-width="3"/><text x="{:.1}" y="{:.1}" font-size="{:.1}">{}</text>"#,
                    y - font * 0.3,
                    lx + 1.5 * font,
                    y - font * 0.3,
                    s.color,
                    lx + 2.0 * font,
                    y,
                    font * 0.85,
                    escape(&s.label)
                );
            }
        }
    }
}

/// Lays `plots` out on a `cols`-wide grid inside one 800×500 document.
pub fn render_grid(plots: &[Plot], cols: usize) -> String {
    let cols = cols.max(1);
    let rows = plots.len().div_ceil(cols).max(1);
    let (cw, ch) = (WIDTH / cols as f64, HEIGHT / rows as f64);
    let font = (ch / 18.0).clamp(8.0, 14.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, p) in plots.iter().enumerate() {
        let area = Rect {
            x: (i % cols) as f64 * cw,
            y: (i / cols) as f64 * ch,
            w: cw,
            h: ch,
        };
        p.draw(&mut out, area, font);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_well_formed_document() {
        let svg = Plot::new("a < b & c", "x", "y")
            .with_series(Series::new(
                "s1",
                vec![(0.0, 1.0), (1.0, 2.0)],
                BLUE,
                Style::LineMarkers,
            ))
            .with_series(Series::new("s2", vec![(0.5, 1.5)], RED, Style::OpenMarkers))
            .render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(r#"width="800""#) && svg.contains(r#"height="500""#));
        assert!(svg.contains("a &lt; b &amp; c"));
        assert!(svg.contains("<polyline"));
        assert_eq!(svg.matches("<circle").count(), 3);
    }

    #[test]
    fn flat_and_empty_series_do_not_panic() {
        let svg = Plot::new("flat", "x", "y")
            .with_series(Series::new(
                "z",
                vec![(0.0, 0.0), (1.0, 0.0)],
                BLUE,
                Style::Line,
            ))
            .render();
        assert!(!svg.contains("NaN"));
        let svg = Plot::new("empty", "x", "y").render();
        assert!(svg.contains("</svg>"));
    }

    #[test]
    fn nice_steps() {
        assert_eq!(nice_step(10.0, 5), 2.0);
        assert_eq!(nice_step(0.2, 5), 0.05);
        assert_eq!(nice_step(7.0, 5), 2.0);
    }
}
