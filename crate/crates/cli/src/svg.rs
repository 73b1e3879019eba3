//! Minimal SVG 1.1 renderings: barcodes as horizontal interval charts,
//! heatmaps as shaded grids. No external renderer is involved; output is
//! deterministic text.

use std::fmt::Write as _;

use sftd_core::cross::LocalizedBar;

/// One interval to draw; `death == None` renders as an essential (unbounded)
/// bar.
pub struct SvgBar {
    pub degree: usize,
    pub birth: f64,
    pub death: Option<f64>,
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

const WIDTH: f64 = 720.0;
const PLOT_LEFT: f64 = 60.0;
const PLOT_RIGHT: f64 = 690.0;
const ROW_H: f64 = 12.0;

fn color(degree: usize) -> &'static str {
    PALETTE[degree % PALETTE.len()]
}

fn open(height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{WIDTH}\" height=\"{height}\" font-family=\"monospace\" font-size=\"11\">\n"
    )
}

/// Renders intervals as horizontal segments over the filtration axis, one
/// row per bar, colored by degree, with a legend and a min/max axis.
/// `markers` adds birth/death event dots (the localization colors).
pub fn barcode_svg(bars: &[SvgBar], markers: bool) -> String {
    if bars.is_empty() {
        let mut out = open(60.0);
        out.push_str("<text x=\"20\" y=\"35\">no intervals</text>\n</svg>\n");
        return out;
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for bar in bars {
        lo = lo.min(bar.birth);
        hi = hi.max(bar.death.unwrap_or(bar.birth)).max(bar.birth);
    }
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 1.0 };
    let (lo, hi) = (lo - pad, hi + pad);
    let x = |v: f64| PLOT_LEFT + (v - lo) / (hi - lo) * (PLOT_RIGHT - PLOT_LEFT);

    let rows_top = 36.0;
    let axis_y = rows_top + bars.len() as f64 * ROW_H + 10.0;
    let mut out = open(axis_y + 30.0);

    // Legend: one entry per distinct degree.
    let mut degrees: Vec<usize> = bars.iter().map(|b| b.degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut legend_x = PLOT_LEFT;
    for &degree in &degrees {
        let _ = writeln!(
            out,
            "<rect x=\"{legend_x:.1}\" y=\"10\" width=\"10\" height=\"10\" fill=\"{}\"/>\
             <text x=\"{:.1}\" y=\"19\">H{degree}</text>",
            color(degree),
            legend_x + 14.0,
        );
        legend_x += 52.0;
    }

    for (row, bar) in bars.iter().enumerate() {
        let y = rows_top + row as f64 * ROW_H + ROW_H / 2.0;
        let x1 = x(bar.birth);
        let (x2, dash) = match bar.death {
            Some(death) => (x(death), ""),
            None => (PLOT_RIGHT, " stroke-dasharray=\"7,4\""),
        };
        let _ = writeln!(
            out,
            "<line x1=\"{x1:.1}\" y1=\"{y:.1}\" x2=\"{x2:.1}\" y2=\"{y:.1}\" \
             stroke=\"{}\" stroke-width=\"4\"{dash}/>",
            color(bar.degree),
        );
        if markers {
            let _ = writeln!(
                out,
                "<circle cx=\"{x1:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"{}\"/>",
                LocalizedBar::<f64>::BIRTH_COLOR
            );
            if bar.death.is_some() {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{x2:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"{}\"/>",
                    LocalizedBar::<f64>::DEATH_COLOR
                );
            }
        }
    }

    let _ = writeln!(
        out,
        "<line x1=\"{PLOT_LEFT}\" y1=\"{axis_y:.1}\" x2=\"{PLOT_RIGHT}\" y2=\"{axis_y:.1}\" \
         stroke=\"black\"/>"
    );
    for v in [lo + pad, hi - pad] {
        let at = x(v);
        let _ = writeln!(
            out,
            "<line x1=\"{at:.1}\" y1=\"{axis_y:.1}\" x2=\"{at:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\
             <text x=\"{at:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{v}</text>",
            axis_y + 5.0,
            axis_y + 18.0,
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Renders a square matrix as a white-to-blue shaded grid with the scale
/// maximum printed underneath.
pub fn heatmap_svg(matrix: &[Vec<f64>]) -> String {
    let n = matrix.len();
    let cell = 22.0;
    let margin = 8.0;
    let height = margin + n as f64 * cell + 24.0;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{:.1}\" height=\"{height:.1}\" font-family=\"monospace\" font-size=\"11\">\n",
        margin * 2.0 + n as f64 * cell,
    );
    let max = matrix.iter().flatten().fold(0.0f64, |acc, &v| acc.max(v));
    for (i, row) in matrix.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let t = if max > 0.0 { v / max } else { 0.0 };
            let mix =
                |base: u8| (f64::from(base) + (1.0 - t) * f64::from(255 - base)).round() as u8;
            let fill = format!("#{:02x}{:02x}{:02x}", mix(0x1f), mix(0x77), mix(0xb4));
            let _ = writeln!(
                out,
                "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{cell}\" height=\"{cell}\" \
                 fill=\"{fill}\"><title>{i},{j}: {v}</title></rect>",
                margin + j as f64 * cell,
                margin + i as f64 * cell,
            );
        }
    }
    let _ = writeln!(
        out,
        "<text x=\"{margin}\" y=\"{:.1}\">max {max}</text>",
        margin + n as f64 * cell + 16.0
    );
    out.push_str("</svg>\n");
    out
}
