//! Heatmap rendering: a standalone SVG plus a gnuplot script carrying its own data.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::channel::RegionSelector;
use crate::error::{Error, Result};
use crate::measures::Measure;

use super::csv::format_g12;
use super::run::SweepTable;

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub svg: String,
    pub gnuplot: String,
}

// viridis, sampled at five stops
const STOPS: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

fn colour(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let x = t * (STOPS.len() - 1) as f64;
    let i = (x.floor() as usize).min(STOPS.len() - 2);
    let f = x - i as f64;
    let lerp = |a: f64, b: f64| (a + (b - a) * f).round() as u8;
    let (a, b) = (STOPS[i], STOPS[i + 1]);
    format!("#{:02x}{:02x}{:02x}", lerp(a.0, b.0), lerp(a.1, b.1), lerp(a.2, b.2))
}

/// Values of one (region, measure) surface as `grid[outer][inner]`.
fn surface(table: &SweepTable, region: RegionSelector, measure: Measure) -> Result<Vec<Vec<f64>>> {
    if table.rows.is_empty() {
        return Err(Error::invalid("no rows to plot"));
    }
    if table.axes.len() != 2 {
        return Err(Error::invalid(format!("two axes required, got {}", table.axes.len())));
    }
    let k = table
        .regions
        .iter()
        .position(|r| *r == region)
        .ok_or_else(|| Error::invalid(format!("region {region} not in the sweep")))?;
    let m = table
        .measure_index(measure)
        .ok_or_else(|| Error::invalid(format!("measure {measure} not in the sweep")))?;
    let (n0, n1, nr) = (table.axes[0].points.len(), table.axes[1].points.len(), table.regions.len());
    if table.rows.len() != n0 * n1 * nr {
        return Err(Error::invalid("row count does not match the axes"));
    }
    (0..n0)
        .map(|i| {
            (0..n1)
                .map(|j| {
                    table.rows[(i * n1 + j) * nr + k].values[m]
                        .as_real()
                        .ok_or_else(|| Error::invalid(format!("{measure} is not numeric")))
                })
                .collect()
        })
        .collect()
}

/// Heatmap of one surface: inner axis horizontal, outer axis vertical.
pub fn render_figure(table: &SweepTable, region: RegionSelector, measure: Measure) -> Result<Figure> {
    let grid = surface(table, region, measure)?;
    let (ya, xa) = (&table.axes[0], &table.axes[1]);
    let title = format!("{measure}, region {region}");

    let (lo, hi) = grid
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let span = if hi > lo { hi - lo } else { 1.0 };

    let (left, top, w, h) = (70.0, 40.0, 480.0, 400.0);
    let (nx, ny) = (xa.points.len() as f64, ya.points.len() as f64);
    let (cw, ch) = (w / nx, h / ny);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="660" height="500" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(svg, r#"<text x="{}" y="24" text-anchor="middle">{title}</text>"#, left + w / 2.0);
    for (i, row) in grid.iter().enumerate() {
        // outer axis grows upwards
        let y = top + h - (i as f64 + 1.0) * ch;
        for (j, &v) in row.iter().enumerate() {
            let x = left + j as f64 * cw;
            let _ = writeln!(
                svg,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                cw + 0.3,
                ch + 0.3,
                colour((v - lo) / span)
            );
        }
    }
    let _ = writeln!(svg, r#"<rect x="{left}" y="{top}" width="{w}" height="{h}" fill="none" stroke="black"/>"#);
    for (frac, anchor) in [(0.0, "start"), (0.5, "middle"), (1.0, "end")] {
        let xv = xa.points[0] + frac * (xa.points[xa.points.len() - 1] - xa.points[0]);
        let yv = ya.points[0] + frac * (ya.points[ya.points.len() - 1] - ya.points[0]);
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{}" text-anchor="{anchor}">{}</text>"#,
            left + frac * w,
            top + h + 18.0,
            format!("{xv:.3}")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
            left - 6.0,
            top + h - frac * h + 4.0,
            format!("{yv:.3}")
        );
    }
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, left + w / 2.0, top + h + 38.0, xa.name);
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>"#,
        top + h / 2.0,
        ya.name
    );
    // colour bar
    let bx = left + w + 25.0;
    for s in 0..50 {
        let t = s as f64 / 49.0;
        let _ = writeln!(
            svg,
            r#"<rect x="{bx}" y="{:.2}" width="18" height="{:.2}" fill="{}"/>"#,
            top + h - (s as f64 + 1.0) * h / 50.0,
            h / 50.0 + 0.3,
            colour(t)
        );
    }
    let _ = writeln!(svg, r#"<text x="{}" y="{}">{}</text>"#, bx + 22.0, top + h, format_g12(lo));
    let _ = writeln!(svg, r#"<text x="{}" y="{}">{}</text>"#, bx + 22.0, top + 10.0, format_g12(hi));
    svg.push_str("</svg>\n");

    let mut gp = String::new();
    let _ = writeln!(gp, "set title \"{title}\"");
    let _ = writeln!(gp, "set xlabel \"{}\"\nset ylabel \"{}\"", xa.name, ya.name);
    gp.push_str("set view map\nset palette viridis\n$data << EOD\n");
    for (i, row) in grid.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let _ = writeln!(gp, "{} {} {}", format_g12(xa.points[j]), format_g12(ya.points[i]), format_g12(v));
        }
        gp.push('\n');
    }
    gp.push_str("EOD\nsplot $data using 1:2:3 with pm3d notitle\n");

    Ok(Figure { svg, gnuplot: gp })
}

/// Writes `<stem>_<region>_<measure>.svg` and `.gp` for every numeric surface.
pub fn write_figures(table: &SweepTable, stem: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for &region in &table.regions {
        for &measure in table.measures.iter().filter(|m| **m != Measure::Separability) {
            let fig = render_figure(table, region, measure)?;
            let base = format!("{}_{}_{}", stem.display(), region, measure);
            for (ext, body) in [("svg", &fig.svg), ("gp", &fig.gnuplot)] {
                let path = PathBuf::from(format!("{base}.{ext}"));
                std::fs::write(&path, body)?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
