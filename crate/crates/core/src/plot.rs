//! SVG rendering: marching-squares contours for implicit curves and pole-aware
//! parameter sweeps for rational maps. Output is a single self-contained SVG
//! document string.

use crate::poly::{BivarPoly, C64};

/// Rendered viewport edge in SVG user units.
const VIEW: f64 = 800.0;
/// Relative floor under |q(t)| below which the sweep treats t as a pole and
/// breaks the current subpath.
const POLE_TOL: f64 = 1e-9;
/// Grid cells per axis are capped so the total grid stays within budget.
const MAX_CELLS_PER_AXIS: usize = 1000;

fn world_to_view(p: (f64, f64), lo: f64, hi: f64) -> (f64, f64) {
    let s = VIEW / (hi - lo);
    ((p.0 - lo) * s, (hi - p.1) * s)
}

/// Marching-squares line segments of f = 0 on an n-by-n cell grid over the
/// square [lo, hi]^2, endpoints by linear interpolation along cell edges.
pub fn contour_segments(
    f: &BivarPoly,
    lo: f64,
    hi: f64,
    n: usize,
) -> Vec<((f64, f64), (f64, f64))> {
    let n = n.clamp(2, MAX_CELLS_PER_AXIS);
    let h = (hi - lo) / n as f64;
    let mut vals = vec![0.0f64; (n + 1) * (n + 1)];
    for i in 0..=n {
        for j in 0..=n {
            let x = lo + i as f64 * h;
            let y = lo + j as f64 * h;
            let v = f.eval(C64::new(x, 0.0), C64::new(y, 0.0)).re;
            // Exact zeros are nudged off the lattice so every crossing lies
            // strictly inside an edge.
            vals[i * (n + 1) + j] = if v == 0.0 { 1e-300 } else { v };
        }
    }
    let at = |i: usize, j: usize| vals[i * (n + 1) + j];
    let mut segs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (x0, y0) = (lo + i as f64 * h, lo + j as f64 * h);
            let (v00, v10, v01, v11) = (at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1));
            let mut cross = Vec::new();
            // Edge order: bottom, right, top, left.
            if v00 * v10 < 0.0 {
                cross.push((x0 + h * v00 / (v00 - v10), y0));
            }
            if v10 * v11 < 0.0 {
                cross.push((x0 + h, y0 + h * v10 / (v10 - v11)));
            }
            if v01 * v11 < 0.0 {
                cross.push((x0 + h * v01 / (v01 - v11), y0 + h));
            }
            if v00 * v01 < 0.0 {
                cross.push((x0, y0 + h * v00 / (v00 - v01)));
            }
            match cross.len() {
                2 => segs.push((cross[0], cross[1])),
                4 => {
                    // Saddle cell: the center sign picks the pairing.
                    let center = (v00 + v10 + v01 + v11) * 0.25;
                    if center * v00 >= 0.0 {
                        segs.push((cross[0], cross[1]));
                        segs.push((cross[2], cross[3]));
                    } else {
                        segs.push((cross[0], cross[3]));
                        segs.push((cross[1], cross[2]));
                    }
                }
                _ => {}
            }
        }
    }
    segs
}

/// Real-parameter sweep of t -> (p1/q, p2/q) covering the whole line through
/// a tangent substitution; subpaths break at poles of q and far outside the
/// window.
pub fn param_paths(
    p1: &[C64],
    p2: &[C64],
    q: &[C64],
    lo: f64,
    hi: f64,
    samples: usize,
) -> Vec<Vec<(f64, f64)>> {
    let samples = samples.max(16);
    let span = hi - lo;
    let mut paths = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    for k in 0..samples {
        let th = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5)
            / samples as f64;
        let t = C64::new(th.tan(), 0.0);
        let qv = crate::poly::eval_coeffs(q, t);
        let scale: f64 = q
            .iter()
            .enumerate()
            .map(|(p, c)| c.norm() * t.norm().powi(p as i32))
            .sum::<f64>()
            + 1e-300;
        if qv.norm() < POLE_TOL * scale {
            if cur.len() > 1 {
                paths.push(std::mem::take(&mut cur));
            } else {
                cur.clear();
            }
            continue;
        }
        let x = (crate::poly::eval_coeffs(p1, t) / qv).re;
        let y = (crate::poly::eval_coeffs(p2, t) / qv).re;
        if !x.is_finite() || !y.is_finite() || x.abs() + y.abs() > 20.0 * span + lo.abs() + hi.abs()
        {
            if cur.len() > 1 {
                paths.push(std::mem::take(&mut cur));
            } else {
                cur.clear();
            }
            continue;
        }
        cur.push((x, y));
    }
    if cur.len() > 1 {
        paths.push(cur);
    }
    paths
}

fn svg_open(lo: f64, hi: f64) -> String {
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {v} {v}\" width=\"{v}\" height=\"{v}\">\n\
         <rect width=\"{v}\" height=\"{v}\" fill=\"white\"/>\n",
        v = VIEW
    );
    // Axes, when the window contains them.
    if lo < 0.0 && hi > 0.0 {
        let (ox, oy) = world_to_view((0.0, 0.0), lo, hi);
        s.push_str(&format!(
            "<line x1=\"0\" y1=\"{oy:.1}\" x2=\"{v}\" y2=\"{oy:.1}\" stroke=\"#ccc\"/>\n\
             <line x1=\"{ox:.1}\" y1=\"0\" x2=\"{ox:.1}\" y2=\"{v}\" stroke=\"#ccc\"/>\n",
            v = VIEW
        ));
    }
    s
}

/// Implicit-curve plot over [lo, hi]^2.
pub fn curve_svg(f: &BivarPoly, lo: f64, hi: f64, cells: usize) -> String {
    let mut s = svg_open(lo, hi);
    let mut d = String::new();
    for (a, b) in contour_segments(f, lo, hi, cells) {
        let (x1, y1) = world_to_view(a, lo, hi);
        let (x2, y2) = world_to_view(b, lo, hi);
        d.push_str(&format!("M{:.2} {:.2}L{:.2} {:.2}", x1, y1, x2, y2));
    }
    s.push_str(&format!(
        "<path d=\"{}\" fill=\"none\" stroke=\"#1a6faa\" stroke-width=\"1.5\"/>\n</svg>\n",
        d
    ));
    s
}

/// Parametrized-curve plot over [lo, hi]^2.
pub fn param_curve_svg(
    p1: &[C64],
    p2: &[C64],
    q: &[C64],
    lo: f64,
    hi: f64,
    samples: usize,
) -> String {
    let mut s = svg_open(lo, hi);
    for path in param_paths(p1, p2, q, lo, hi, samples) {
        let mut d = String::new();
        for (k, &p) in path.iter().enumerate() {
            let (x, y) = world_to_view(p, lo, hi);
            d.push_str(&format!("{}{:.2} {:.2}", if k == 0 { "M" } else { "L" }, x, y));
        }
        s.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"#aa3a1a\" stroke-width=\"1.5\"/>\n",
            d
        ));
    }
    s.push_str("</svg>\n");
    s
}

// ---------------------------------------------------------------------------
