//! Minimal hand-rolled SVG line chart for sweep output: two stacked panels
//! (lens diameter and sag height versus spin speed) with one labeled curve
//! per pattern diameter. The CSV is the canonical artifact; this is a
//! convenience rendering with no styling dependencies.

use reflow_lens_core::spincoat::SweepRow;

const WIDTH: f64 = 640.0;
const PANEL_HEIGHT: f64 = 240.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 28.0;
const PANEL_GAP: f64 = 52.0;
const MARGIN_BOTTOM: f64 = 48.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

struct Series {
    label: String,
    color: &'static str,
    points: Vec<(f64, f64)>,
}

/// Render the sweep as a standalone SVG document.
pub fn render_sweep_chart(rows: &[SweepRow]) -> String {
    let diameter_series = collect_series(rows, |row| row.lens_diameter_um);
    let sag_series = collect_series(rows, |row| row.sag_height_um);
    let (x_min, x_max) = padded_range(rows.iter().map(|r| r.spin_rpm));

    let height = MARGIN_TOP + 2.0 * PANEL_HEIGHT + PANEL_GAP + MARGIN_BOTTOM;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" \
         viewBox=\"0 0 {WIDTH} {height}\" font-family=\"sans-serif\" font-size=\"11\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    render_panel(
        &mut svg,
        &diameter_series,
        (x_min, x_max),
        MARGIN_TOP,
        "lens diameter (um)",
        true,
    );
    render_panel(
        &mut svg,
        &sag_series,
        (x_min, x_max),
        MARGIN_TOP + PANEL_HEIGHT + PANEL_GAP,
        "sag height (um)",
        false,
    );

    // Shared x-axis label under the lower panel.
    let label_y = height - 12.0;
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{label_y:.2}\" text-anchor=\"middle\">spin speed (rpm)</text>\n",
        MARGIN_LEFT + (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / 2.0
    ));
    svg.push_str("</svg>\n");
    svg
}

fn collect_series(rows: &[SweepRow], y: impl Fn(&SweepRow) -> f64) -> Vec<Series> {
    let mut series: Vec<Series> = Vec::new();
    for row in rows {
        let label = pattern_label(row.pattern_diameter_um);
        match series.iter_mut().find(|s| s.label == label) {
            Some(existing) => existing.points.push((row.spin_rpm, y(row))),
            None => {
                let color = PALETTE[series.len() % PALETTE.len()];
                series.push(Series {
                    label,
                    color,
                    points: vec![(row.spin_rpm, y(row))],
                });
            }
        }
    }
    series
}

fn pattern_label(pattern_um: f64) -> String {
    format!("pattern {pattern_um} um")
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values {
        min = min.min(v);
        max = max.max(v);
    }
    if !min.is_finite() || !max.is_finite() {
        return (0.0, 1.0);
    }
    if max - min < 1e-9 {
        // Degenerate span (single speed); open up a unit window around it.
        return (min - 1.0, max + 1.0);
    }
    let pad = 0.04 * (max - min);
    (min - pad, max + pad)
}

fn render_panel(
    svg: &mut String,
    series: &[Series],
    (x_min, x_max): (f64, f64),
    top: f64,
    y_label: &str,
    legend: bool,
) {
    let (y_min, y_max) = padded_range(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let plot_width = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let to_x = |v: f64| MARGIN_LEFT + (v - x_min) / (x_max - x_min) * plot_width;
    let to_y = |v: f64| top + PANEL_HEIGHT - (v - y_min) / (y_max - y_min) * PANEL_HEIGHT;

    // Frame and ticks.
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_LEFT:.2}\" y=\"{top:.2}\" width=\"{plot_width:.2}\" \
         height=\"{PANEL_HEIGHT:.2}\" fill=\"none\" stroke=\"#444\"/>\n"
    ));
    const TICKS: usize = 5;
    for i in 0..=TICKS {
        let frac = i as f64 / TICKS as f64;
        let x_value = x_min + frac * (x_max - x_min);
        let x = to_x(x_value);
        let base = top + PANEL_HEIGHT;
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{base:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#444\"/>\n",
            base + 4.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{x_value:.0}</text>\n",
            base + 16.0
        ));

        let y_value = y_min + frac * (y_max - y_min);
        let y = to_y(y_value);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{MARGIN_LEFT:.2}\" y2=\"{y:.2}\" stroke=\"#444\"/>\n",
            MARGIN_LEFT - 4.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{y_value:.1}</text>\n",
            MARGIN_LEFT - 7.0,
            y + 4.0
        ));
    }
    // Y-axis label, rotated along the left edge.
    svg.push_str(&format!(
        "<text x=\"14\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {:.2})\">{y_label}</text>\n",
        top + PANEL_HEIGHT / 2.0,
        top + PANEL_HEIGHT / 2.0
    ));

    for s in series {
        let path: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", to_x(x), to_y(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            s.color,
            path.join(" ")
        ));
    }

    if legend {
        for (i, s) in series.iter().enumerate() {
            let y = top + 16.0 + 14.0 * i as f64;
            let x = MARGIN_LEFT + 10.0;
            svg.push_str(&format!(
                "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
                y - 3.0,
                x + 18.0,
                y - 3.0,
                s.color
            ));
            svg.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{y:.2}\">{}</text>\n",
                x + 24.0,
                s.label
            ));
        }
    }
}
