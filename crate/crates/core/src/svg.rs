//! SVG rendering of region maps: cells colored by solution count and the
//! candidate curves drawn over them.
//!
//! Everything here is double-precision visualization. Cell membership of a
//! raster pixel is decided by matching candidate sign vectors against the
//! exact cell samples, and curves come from sign-grid contouring, so the
//! picture degrades gracefully where f64 cancels; counts and cells in the
//! JSON artifact always come from the exact path.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::discvar::ParametricSystem;
use crate::poly::Polynomial;
use crate::rat::to_f64;
use crate::regions::{CountMode, Iv, RegionReport};

/// Fixed palette keyed by solution count; counts past the table wrap with
/// darkened repeats so every count still maps to one color.
pub fn color_for_count(n: usize) -> String {
    const BASE: [&str; 10] = [
        "#f2f0e9", "#f79862", "#b3a2d4", "#7fc97f", "#fdc086", "#6baed6", "#e78ac3", "#a6d854",
        "#ffd92f", "#8da0cb",
    ];
    if n < BASE.len() {
        return BASE[n].to_string();
    }
    let (r, g, b) = hex_rgb(BASE[n % BASE.len()]);
    let shift = (n / BASE.len()) as u32;
    let dark = |c: u8| (c as u32 * 2 / (2 + shift)) as u8;
    format!("#{:02x}{:02x}{:02x}", dark(r), dark(g), dark(b))
}

fn hex_rgb(h: &str) -> (u8, u8, u8) {
    let v = u32::from_str_radix(&h[1..], 16).unwrap();
    ((v >> 16) as u8, (v >> 8) as u8, v as u8)
}

/// Dense double-precision evaluator for one candidate: terms flattened to
/// (coefficient, exponent per axis).
struct F64Poly {
    terms: Vec<(f64, u32, u32)>,
}

impl F64Poly {
    fn new(p: &Polynomial, k1: usize, k2: usize) -> F64Poly {
        let terms = p
            .terms()
            .map(|(m, c)| (to_f64(c), u32::from(m.exp(k1)), u32::from(m.exp(k2))))
            .collect();
        F64Poly { terms }
    }

    fn eval(&self, u: f64, v: f64) -> f64 {
        let mut s = 0.0;
        for &(c, e1, e2) in &self.terms {
            s += c * u.powi(e1 as i32) * v.powi(e2 as i32);
        }
        s
    }
}

pub struct PlotOptions {
    /// Sign-grid resolution for curves and fills.
    pub grid: usize,
    /// Pixel size of the drawing area, excluding margins.
    pub size: u32,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions { grid: 512, size: 640 }
    }
}

/// Render the report over the given windows. `manifest_json` is embedded as
/// a comment so the file carries its provenance like every other artifact.
pub fn region_svg(
    sys: &ParametricSystem,
    candidates: &[Polynomial],
    report: &RegionReport,
    windows: &[Iv],
    manifest_json: &str,
    opts: &PlotOptions,
) -> String {
    assert!(windows.len() <= 2, "plots are one- or two-dimensional");
    let ctx = sys.ctx();
    let k1 = sys.parameters[0];
    let k2 = if sys.parameters.len() > 1 { sys.parameters[1] } else { k1 };
    let (x0, x1) = (to_f64(&windows[0].lo), to_f64(&windows[0].hi));
    let (y0, y1) = if windows.len() > 1 {
        (to_f64(&windows[1].lo), to_f64(&windows[1].hi))
    } else {
        (0.0, 1.0)
    };

    let evals: Vec<F64Poly> = candidates.iter().map(|p| F64Poly::new(p, k1, k2)).collect();
    let cell_signs: Vec<Vec<i8>> = report
        .cells
        .iter()
        .map(|c| {
            let u = to_f64(&c.sample[0]);
            let v = if c.sample.len() > 1 { to_f64(&c.sample[1]) } else { (y0 + y1) / 2.0 };
            evals.iter().map(|p| sign_f64(p.eval(u, v))).collect()
        })
        .collect();

    let margin = 40.0;
    let size = opts.size as f64;
    let total = size + 2.0 * margin;
    let px = |u: f64| margin + (u - x0) / (x1 - x0) * size;
    let py = |v: f64| margin + (y1 - v) / (y1 - y0) * size;

    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">"
    );
    let _ = writeln!(out, "<!-- manifest: {} -->", manifest_json.replace("--", "- -"));
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{total}\" height=\"{total}\" fill=\"#ffffff\"/>"
    );

    // Region fill: run-length rectangles over the sign grid, each raster
    // pixel colored by the cell whose sample sign vector it shares.
    let n = opts.grid;
    let step = size / n as f64;
    let mut legend: BTreeMap<usize, String> = BTreeMap::new();
    for row in 0..n {
        let v = y1 - (row as f64 + 0.5) / n as f64 * (y1 - y0);
        let mut col = 0;
        while col < n {
            let u = x0 + (col as f64 + 0.5) / n as f64 * (x1 - x0);
            let signs: Vec<i8> = evals.iter().map(|p| sign_f64(p.eval(u, v))).collect();
            let pick = pick_cell(report, &cell_signs, &signs, u, v);
            let mut run = 1;
            while col + run < n {
                let u2 = x0 + ((col + run) as f64 + 0.5) / n as f64 * (x1 - x0);
                let s2: Vec<i8> = evals.iter().map(|p| sign_f64(p.eval(u2, v))).collect();
                if pick_cell(report, &cell_signs, &s2, u2, v) != pick {
                    break;
                }
                run += 1;
            }
            if let Some(cell) = pick {
                let count = report.counts[cell];
                let color = legend
                    .entry(count)
                    .or_insert_with(|| color_for_count(count))
                    .clone();
                let _ = writeln!(
                    out,
                    "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
                    margin + col as f64 * step,
                    margin + row as f64 * step,
                    run as f64 * step,
                    step + 0.5,
                    color
                );
            }
            col += run;
        }
    }

    // Candidate curves by marching squares on the same grid, one subdivision
    // pass inside mixed squares.
    for p in &evals {
        let mut path = String::new();
        let mut nodes = vec![0.0f64; (n + 1) * (n + 1)];
        for (i, node) in nodes.iter_mut().enumerate() {
            let gx = i % (n + 1);
            let gy = i / (n + 1);
            let u = x0 + gx as f64 / n as f64 * (x1 - x0);
            let v = y0 + gy as f64 / n as f64 * (y1 - y0);
            *node = p.eval(u, v);
        }
        for gy in 0..n {
            for gx in 0..n {
                let f = [
                    nodes[gy * (n + 1) + gx],
                    nodes[gy * (n + 1) + gx + 1],
                    nodes[(gy + 1) * (n + 1) + gx + 1],
                    nodes[(gy + 1) * (n + 1) + gx],
                ];
                if f.iter().all(|&x| x > 0.0) || f.iter().all(|&x| x < 0.0) {
                    continue;
                }
                let u = x0 + gx as f64 / n as f64 * (x1 - x0);
                let v = y0 + gy as f64 / n as f64 * (y1 - y0);
                let du = (x1 - x0) / n as f64;
                let dv = (y1 - y0) / n as f64;
                // Subdivide once: contour each quadrant of the mixed square.
                for q in 0..4 {
                    let qu = u + (q % 2) as f64 * du / 2.0;
                    let qv = v + (q / 2) as f64 * dv / 2.0;
                    marching_square(p, qu, qv, du / 2.0, dv / 2.0, &px, &py, &mut path);
                }
            }
        }
        if !path.is_empty() {
            let _ = writeln!(
                out,
                "<path d=\"{}\" stroke=\"#1a1a1a\" stroke-width=\"1\" fill=\"none\"/>",
                path.trim_end()
            );
        }
    }

    // Frame, axis labels, legend.
    let _ = writeln!(
        out,
        "<rect x=\"{margin}\" y=\"{margin}\" width=\"{size}\" height=\"{size}\" fill=\"none\" stroke=\"#000000\"/>"
    );
    let font = "font-family=\"monospace\" font-size=\"12\"";
    let _ = writeln!(
        out,
        "<text x=\"{margin}\" y=\"{:.2}\" {font}>{}</text>",
        total - 12.0,
        ctx.name(k1)
    );
    let _ = writeln!(out, "<text x=\"4\" y=\"{margin}\" {font}>{}</text>", ctx.name(k2));
    let _ = writeln!(
        out,
        "<text x=\"{margin}\" y=\"{:.2}\" {font} text-anchor=\"start\">{x0}</text>",
        margin + size + 14.0
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" {font} text-anchor=\"end\">{x1}</text>",
        margin + size,
        margin + size + 14.0
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" {font} text-anchor=\"end\">{y0}</text>",
        margin - 4.0,
        margin + size
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" {font} text-anchor=\"end\">{y1}</text>",
        margin - 4.0,
        margin + 12.0
    );
    for (i, (count, color)) in legend.iter().enumerate() {
        let y = margin + 8.0 + i as f64 * 18.0;
        let _ = writeln!(
            out,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"12\" height=\"12\" fill=\"{}\" stroke=\"#000000\"/>",
            margin + size + 6.0,
            y,
            color
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" {font}>{}</text>",
            margin + size + 22.0,
            y + 11.0,
            label_for(count, report.mode)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn label_for(count: &usize, mode: CountMode) -> String {
    format!("{count} {mode}")
}

fn sign_f64(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// The cell a raster point belongs to: sign vector must match the cell
/// sample's, ties broken by span containment. Points on a curve (a zero
/// sign) match nothing and stay background.
fn pick_cell(
    report: &RegionReport,
    cell_signs: &[Vec<i8>],
    signs: &[i8],
    u: f64,
    v: f64,
) -> Option<usize> {
    if signs.iter().any(|&s| s == 0) {
        return None;
    }
    let mut fallback = None;
    for (i, cs) in cell_signs.iter().enumerate() {
        if cs != signs {
            continue;
        }
        if fallback.is_none() {
            fallback = Some(i);
        }
        let c = &report.cells[i];
        let inside = c.spans.iter().zip([u, v]).all(|(span, w)| {
            to_f64(&span.lo) <= w && w <= to_f64(&span.hi)
        });
        if inside {
            return Some(i);
        }
    }
    fallback
}

/// Emit the contour segment(s) of one grid square as SVG move/line pairs,
/// interpolating the zero crossing linearly along each mixed edge.
#[allow(clippy::too_many_arguments)]
fn marching_square(
    p: &F64Poly,
    u: f64,
    v: f64,
    du: f64,
    dv: f64,
    px: &impl Fn(f64) -> f64,
    py: &impl Fn(f64) -> f64,
    path: &mut String,
) {
    let corners = [
        (u, v),
        (u + du, v),
        (u + du, v + dv),
        (u, v + dv),
    ];
    let vals = [
        p.eval(corners[0].0, corners[0].1),
        p.eval(corners[1].0, corners[1].1),
        p.eval(corners[2].0, corners[2].1),
        p.eval(corners[3].0, corners[3].1),
    ];
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for e in 0..4 {
        let (a, b) = (e, (e + 1) % 4);
        let (fa, fb) = (vals[a], vals[b]);
        if (fa > 0.0 && fb > 0.0) || (fa < 0.0 && fb < 0.0) {
            continue;
        }
        if fa == 0.0 && fb == 0.0 {
            continue;
        }
        let t = if fa == fb { 0.5 } else { fa / (fa - fb) };
        let x = corners[a].0 + t * (corners[b].0 - corners[a].0);
        let y = corners[a].1 + t * (corners[b].1 - corners[a].1);
        pts.push((x, y));
    }
    if pts.len() >= 2 {
        // Ambiguous saddles draw both chords; fine at raster scale.
        for pair in pts.chunks(2) {
            if pair.len() == 2 {
                let _ = write!(
                    path,
                    "M{:.2} {:.2} L{:.2} {:.2} ",
                    px(pair[0].0),
                    py(pair[0].1),
                    px(pair[1].0),
                    py(pair[1].1)
                );
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discvar::parse_system;
    use crate::regions::classify;

    #[test]
    fn quadratic_map_has_three_count_colors() {
        let src = "params: c, b\nvars: x\nsigns: x>0\nx^2 + b*x + c\n";
        let sys = parse_system(src).unwrap();
        let ctx = sys.ctx();
        let disc = crate::poly::parse_polynomial(ctx, "b^2 - 4*c", 1).unwrap();
        let zero = crate::poly::parse_polynomial(ctx, "c", 1).unwrap();
        let cands = vec![zero, disc];
        let windows = [
            Iv::new(crate::rat::rat_i64(-3), crate::rat::rat_i64(3)),
            Iv::new(crate::rat::rat_i64(-3), crate::rat::rat_i64(3)),
        ];
        let report = classify(&sys, &cands, &windows, CountMode::Positive).unwrap();
        let svg = region_svg(
            &sys,
            &cands,
            &report,
            &windows,
            "{\"command\":\"regions\"}",
            &PlotOptions { grid: 64, size: 320 },
        );
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("version=\"1.1\""));
        assert!(svg.contains("manifest:"));
        let colors: std::collections::BTreeSet<usize> =
            report.counts.iter().copied().collect();
        assert_eq!(colors, [0usize, 1, 2].into_iter().collect());
        for c in colors {
            assert!(svg.contains(&color_for_count(c)));
        }
    }

    #[test]
    fn rendering_is_deterministic() {
        let src = "params: c, b\nvars: x\nx^2 + b*x + c\n";
        let sys = parse_system(src).unwrap();
        let disc = crate::poly::parse_polynomial(sys.ctx(), "b^2 - 4*c", 1).unwrap();
        let cands = vec![disc];
        let windows = [
            Iv::new(crate::rat::rat_i64(-3), crate::rat::rat_i64(3)),
            Iv::new(crate::rat::rat_i64(-3), crate::rat::rat_i64(3)),
        ];
        let report = classify(&sys, &cands, &windows, CountMode::Real).unwrap();
        let opts = PlotOptions { grid: 32, size: 160 };
        let a = region_svg(&sys, &cands, &report, &windows, "{}", &opts);
        let b = region_svg(&sys, &cands, &report, &windows, "{}", &opts);
        assert_eq!(a, b);
    }

    #[test]
    fn counts_wrap_to_distinct_darker_colors() {
        assert_ne!(color_for_count(2), color_for_count(12));
        assert!(color_for_count(3).starts_with('#'));
    }
}
