//! Minimal SVG plots: axes, polylines, markers, optional log-scale y.

use std::fmt::Write;

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 260.0;
const MARGIN_L: f64 = 56.0;
const MARGIN_R: f64 = 12.0;
const MARGIN_T: f64 = 28.0;
const MARGIN_B: f64 = 36.0;
const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

pub struct Series {
    pub label: String,
    /// `None` breaks the line (a failed grid point).
    pub points: Vec<Option<(f64, f64)>>,
}

pub struct Panel {
    pub title: String,
    pub series: Vec<Series>,
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Axis {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            if !v.is_finite() || (log && v <= 0.0) {
                continue;
            }
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if log {
            (lo, hi) = (lo.floor(), hi.ceil());
        }
        if hi - lo < 1e-12 {
            (lo, hi) = (lo - 0.5, hi + 0.5);
        }
        Axis { lo, hi, log }
    }

    fn frac(&self, v: f64) -> Option<f64> {
        if !v.is_finite() || (self.log && v <= 0.0) {
            return None;
        }
        let v = if self.log { v.log10() } else { v };
        Some((v - self.lo) / (self.hi - self.lo))
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let step = ((self.hi - self.lo) / 6.0).ceil().max(1.0);
            let mut t = Vec::new();
            let mut e = self.lo;
            while e <= self.hi + 1e-9 {
                t.push((10f64.powf(e), format!("1e{e}")));
                e += step;
            }
            t
        } else {
            (0..=4)
                .map(|i| {
                    let v = self.lo + (self.hi - self.lo) * i as f64 / 4.0;
                    (v, format!("{v:.3}"))
                })
                .collect()
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn draw_panel(out: &mut String, panel: &Panel, ox: f64, oy: f64, x_label: &str, log_y: bool, markers: bool) {
    let all = || panel.series.iter().flat_map(|s| s.points.iter().flatten());
    let xa = Axis::fit(all().map(|p| p.0), false);
    let ya = Axis::fit(all().map(|p| p.1), log_y);
    let (x0, y0) = (ox + MARGIN_L, oy + MARGIN_T);
    let (w, h) = (PANEL_W - MARGIN_L - MARGIN_R, PANEL_H - MARGIN_T - MARGIN_B);
    let px = |v: f64| xa.frac(v).map(|f| x0 + f * w);
    let py = |v: f64| ya.frac(v).map(|f| y0 + h - f * h);

    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{}</text>"#,
        x0 + w / 2.0,
        oy + 16.0,
        escape(&panel.title)
    );
    let _ = writeln!(
        out,
        r##"<rect x="{x0:.1}" y="{y0:.1}" width="{w:.1}" height="{h:.1}" fill="none" stroke="#000"/>"##
    );
    for (v, label) in ya.ticks() {
        if let Some(y) = py(v) {
            let _ = writeln!(
                out,
                r##"<line x1="{:.1}" y1="{y:.1}" x2="{x0:.1}" y2="{y:.1}" stroke="#000"/><text x="{:.1}" y="{:.1}" font-size="9" text-anchor="end">{label}</text>"##,
                x0 - 4.0,
                x0 - 6.0,
                y + 3.0
            );
        }
    }
    for (v, label) in xa.ticks() {
        if let Some(x) = px(v) {
            let _ = writeln!(
                out,
                r##"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="#000"/><text x="{x:.1}" y="{:.1}" font-size="9" text-anchor="middle">{label}</text>"##,
                y0 + h,
                y0 + h + 4.0,
                y0 + h + 14.0
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{}</text>"#,
        x0 + w / 2.0,
        y0 + h + 28.0,
        escape(x_label)
    );

    for (si, s) in panel.series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        let mut segment: Vec<(f64, f64)> = Vec::new();
        let flush = |seg: &mut Vec<(f64, f64)>, out: &mut String| {
            if seg.len() > 1 {
                let pts: Vec<String> = seg.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
                let _ = writeln!(
                    out,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
                    pts.join(" ")
                );
            }
            seg.clear();
        };
        for p in &s.points {
            match p.and_then(|(x, y)| Some((px(x)?, py(y)?))) {
                Some(pt) => {
                    if markers {
                        let _ = writeln!(
                            out,
                            r#"<circle cx="{:.1}" cy="{:.1}" r="1.8" fill="{color}"/>"#,
                            pt.0, pt.1
                        );
                    }
                    segment.push(pt);
                }
                None => flush(&mut segment, out),
            }
        }
        if !markers {
            flush(&mut segment, out);
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="9" fill="{color}">{}</text>"#,
            x0 + 4.0,
            y0 + 10.0 + 10.0 * si as f64,
            escape(&s.label)
        );
    }
}

fn document(cols: usize, rows: usize, body: &str) -> String {
    let (w, h) = (PANEL_W * cols as f64, PANEL_H * rows as f64);
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n{body}</svg>\n"
    )
}

/// Grid of line-plot panels, `cols` per row.
pub fn line_panels(panels: &[Panel], cols: usize, x_label: &str, log_y: bool) -> String {
    let cols = cols.max(1);
    let rows = panels.len().div_ceil(cols).max(1);
    let mut body = String::new();
    for (i, panel) in panels.iter().enumerate() {
        let (c, r) = (i % cols, i / cols);
        draw_panel(&mut body, panel, c as f64 * PANEL_W, r as f64 * PANEL_H, x_label, log_y, false);
    }
    document(cols, rows, &body)
}

/// Index plot: one marker per observation.
pub fn index_plot(title: &str, values: &[f64], y_label: &str) -> String {
    let panel = Panel {
        title: title.to_string(),
        series: vec![Series {
            label: y_label.to_string(),
            points: values.iter().enumerate().map(|(i, &v)| Some(((i + 1) as f64, v))).collect(),
        }],
    };
    let mut body = String::new();
    draw_panel(&mut body, &panel, 0.0, 0.0, "observation index", false, true);
    document(1, 1, &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaps_split_lines() {
        let p = Panel {
            title: "t".into(),
            series: vec![Series {
                label: "s".into(),
                points: vec![Some((0.0, 1.0)), Some((1.0, 2.0)), None, Some((3.0, 3.0)), Some((4.0, 4.0))],
            }],
        };
        let svg = line_panels(&[p], 1, "k", true);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn index_plot_has_one_marker_per_value() {
        let svg = index_plot("d", &[1.0, 2.0, 5.0], "ICSD²");
        assert_eq!(svg.matches("<circle").count(), 3);
    }
}
