//! Self-contained SVG line charts: side-by-side panels, one polyline per
//! series. No external plotting dependency.

use std::io::Write;
use std::path::Path;

use crate::HarnessError;

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Panel {
    pub title: String,
    pub series: Vec<Series>,
}

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 300.0;
const MARGIN: f64 = 48.0;
const COLORS: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

pub fn write_panels(path: &Path, panels: &[Panel]) -> Result<(), HarnessError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let total_w = PANEL_W * panels.len() as f64;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total_w}\" height=\"{PANEL_H}\" \
         viewBox=\"0 0 {total_w} {PANEL_H}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    ));
    for (i, panel) in panels.iter().enumerate() {
        render_panel(&mut svg, panel, i as f64 * PANEL_W);
    }
    svg.push_str("</svg>\n");

    let mut file = std::fs::File::create(path)?;
    file.write_all(svg.as_bytes())?;
    Ok(())
}

fn render_panel(svg: &mut String, panel: &Panel, x0: f64) {
    let plot_w = PANEL_W - 2.0 * MARGIN;
    let plot_h = PANEL_H - 2.0 * MARGIN;

    let mut x_max = f64::MIN;
    let mut x_min = f64::MAX;
    let mut y_max = f64::MIN;
    let mut y_min = f64::MAX;
    for s in &panel.series {
        for &(x, y) in &s.points {
            x_max = x_max.max(x);
            x_min = x_min.min(x);
            y_max = y_max.max(y);
            y_min = y_min.min(y);
        }
    }
    if !x_max.is_finite() || x_max <= x_min {
        x_min = 0.0;
        x_max = 1.0;
    }
    if !y_max.is_finite() || y_max <= y_min {
        y_min -= 0.5;
        y_max = y_min + 1.0;
    }
    let pad = 0.05 * (y_max - y_min);
    let (y_lo, y_hi) = (y_min - pad, y_max + pad);

    let to_px = |x: f64, y: f64| {
        let px = x0 + MARGIN + (x - x_min) / (x_max - x_min) * plot_w;
        let py = PANEL_H - MARGIN - (y - y_lo) / (y_hi - y_lo) * plot_h;
        (px, py)
    };

    // Frame and title.
    svg.push_str(&format!(
        "<rect x=\"{:.1}\" y=\"{MARGIN}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n",
        x0 + MARGIN
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\" \
         font-family=\"sans-serif\">{}</text>\n",
        x0 + PANEL_W / 2.0,
        MARGIN - 16.0,
        escape(&panel.title)
    ));

    // Axis extent labels.
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" font-family=\"sans-serif\">{}</text>\n",
        x0 + MARGIN,
        PANEL_H - MARGIN + 14.0,
        fmt_tick(x_min)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"end\" \
         font-family=\"sans-serif\">{}</text>\n",
        x0 + MARGIN + plot_w,
        PANEL_H - MARGIN + 14.0,
        fmt_tick(x_max)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"end\" \
         font-family=\"sans-serif\">{}</text>\n",
        x0 + MARGIN - 4.0,
        PANEL_H - MARGIN,
        fmt_tick(y_lo)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"end\" \
         font-family=\"sans-serif\">{}</text>\n",
        x0 + MARGIN - 4.0,
        MARGIN + 10.0,
        fmt_tick(y_hi)
    ));

    for (idx, s) in panel.series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let mut points = String::new();
        for &(x, y) in &s.points {
            let (px, py) = to_px(x, y);
            points.push_str(&format!("{px:.2},{py:.2} "));
        }
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{points}\"/>\n"
        ));
        // Legend entry.
        let ly = MARGIN + 14.0 + 13.0 * idx as f64;
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n",
            x0 + MARGIN + 6.0,
            x0 + MARGIN + 22.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" font-family=\"sans-serif\">{}</text>\n",
            x0 + MARGIN + 26.0,
            ly + 3.0,
            escape(&s.label)
        ));
    }
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 1000.0 || v.abs() < 0.01 {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
