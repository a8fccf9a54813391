//! Pointwise tolerance geometry: the ε-point predicate, ε-multiplicity,
//! purity and ramification flags, weights, and the inner/outer radius
//! functions that drive clustering.

use crate::error::{CurveError, Result};
use crate::numeric::PrecisionContext;
use crate::poly::{BivarPoly, C64};

/// Purity comparisons use `threshold * (1 + PURITY_MARGIN)`: a top derivative
/// sitting exactly on the threshold is noise, not a direction.
pub const PURITY_MARGIN: f64 = 1e-6;

/// Outer exclusion radius. Pole at x = -1/3 is outside the domain; callers
/// always pass x >= 0.
pub fn r_out(x: f64) -> f64 {
    assert!(x > -1.0 / 3.0 + 1e-12, "r_out pole at x = -1/3");
    let s = 1.0 + 3.0 * x;
    0.5 - x * (1.0 - 9.0 * x) / (2.0 * s) - 32.0 * x * x / (s * s * s)
}

/// Inner covering radius, the companion bound to `r_out`.
pub fn r_in(x: f64) -> f64 {
    assert!(x > -1.0 / 3.0 + 1e-12, "r_in pole at x = -1/3");
    let s = 1.0 + 3.0 * x;
    2.0 * x * (1.0 / s + 16.0 * x / (s * s * s))
}

pub fn is_eps_point(f: &BivarPoly, p: (C64, C64), ctx: &PrecisionContext) -> bool {
    f.eval(p.0, p.1).norm() < ctx.threshold()
}

fn max_abs_derivative_at_order(f: &BivarPoly, p: (C64, C64), order: u32) -> f64 {
    (0..=order)
        .map(|a| f.partial((a, order - a)).eval(p.0, p.1).norm())
        .fold(0.0, f64::max)
}

/// Smallest order r whose derivatives are not all below the threshold, with
/// every order below r fully under it. Level 0 failing means P is not an
/// ε-point at all.
pub fn eps_multiplicity(f: &BivarPoly, p: (C64, C64), ctx: &PrecisionContext) -> Result<u32> {
    let th = ctx.threshold();
    let d = f
        .total_degree()
        .ok_or_else(|| CurveError::Numeric("multiplicity of zero polynomial".into()))?;
    if !is_eps_point(f, p, ctx) {
        return Err(CurveError::Numeric(format!(
            "({}, {}) is not an eps-point: |f| = {:.3e} >= {:.3e}",
            p.0,
            p.1,
            f.eval(p.0, p.1).norm(),
            th
        )));
    }
    for level in 1..=d {
        if max_abs_derivative_at_order(f, p, level) >= th {
            return Ok(level);
        }
    }
    Err(CurveError::Numeric(
        "no derivative of order <= degree exceeds the threshold".into(),
    ))
}

fn pure_dirs_at(f: &BivarPoly, p: (C64, C64), th: f64, r: u32) -> Vec<u8> {
    if r <= 1 {
        return Vec::new();
    }
    let mut dirs = Vec::new();
    for (k, v) in [(1u8, (r, 0)), (2u8, (0, r))] {
        if f.partial(v).eval(p.0, p.1).norm() >= th * (1.0 + PURITY_MARGIN) {
            dirs.push(k);
        }
    }
    dirs
}

/// Pure coordinate directions of an ε-singularity: direction k is pure when
/// the order-r derivative straight along it clears the threshold.
pub fn purity(f: &BivarPoly, p: (C64, C64), ctx: &PrecisionContext) -> Result<Vec<u8>> {
    let r = eps_multiplicity(f, p, ctx)?;
    Ok(pure_dirs_at(f, p, ctx.threshold(), r))
}

/// Ramification: a multiplicity-1 ε-point where at least one first partial is
/// still below the threshold.
pub fn is_ramification(f: &BivarPoly, p: (C64, C64), ctx: &PrecisionContext) -> Result<bool> {
    let r = eps_multiplicity(f, p, ctx)?;
    if r != 1 {
        return Ok(false);
    }
    let th = ctx.threshold();
    let fx = f.partial((1, 0)).eval(p.0, p.1).norm();
    let fy = f.partial((0, 1)).eval(p.0, p.1).norm();
    Ok(fx < th || fy < th)
}

fn weight_in_dir(f: &BivarPoly, p: (C64, C64), r: u32, dir: u8) -> f64 {
    let v = |i: u32| if dir == 1 { (i, 0) } else { (0, i) };
    let den = f.partial(v(r)).eval(p.0, p.1);
    let mut r_fact = 1.0;
    for i in 2..=r {
        r_fact *= i as f64;
    }
    let mut best = 0.0f64;
    let mut i_fact = 1.0;
    for i in 0..r {
        let num = f.partial(v(i)).eval(p.0, p.1);
        let ratio = (num * r_fact / (den * i_fact)).norm();
        best = best.max(ratio.powf(1.0 / (r - i) as f64));
        i_fact *= (i + 1) as f64;
    }
    best
}

/// Weight of a pure ε-singularity: the max over pure directions of the
/// normalized derivative ratios that bound how far true multiplicity can sit.
pub fn weight(f: &BivarPoly, p: (C64, C64), ctx: &PrecisionContext) -> Result<f64> {
    let r = eps_multiplicity(f, p, ctx)?;
    let dirs = pure_dirs_at(f, p, ctx.threshold(), r);
    if dirs.is_empty() {
        return Err(CurveError::Numeric(
            "weight undefined for a non-pure point".into(),
        ));
    }
    Ok(dirs
        .iter()
        .map(|&k| weight_in_dir(f, p, r, k))
        .fold(0.0, f64::max))
}

/// A classified ε-point with everything clustering needs.
#[derive(Clone, Debug)]
pub struct EpsilonPoint {
    pub coords: (C64, C64),
    pub eps_mult: u32,
    pub pure_dirs: Vec<u8>,
    pub weight: Option<f64>,
    pub radius: f64,
    pub residual: f64,
}

/// Full classification: multiplicity, purity, weight, exclusion radius (zero
/// for non-pure points), and the residual |f(P)|.
pub fn classify(f: &BivarPoly, p: (C64, C64), ctx: &PrecisionContext) -> Result<EpsilonPoint> {
    let r = eps_multiplicity(f, p, ctx)?;
    let dirs = pure_dirs_at(f, p, ctx.threshold(), r);
    let w = if dirs.is_empty() {
        None
    } else {
        Some(
            dirs.iter()
                .map(|&k| weight_in_dir(f, p, r, k))
                .fold(0.0, f64::max),
        )
    };
    Ok(EpsilonPoint {
        coords: p,
        eps_mult: r,
        pure_dirs: dirs,
        weight: w,
        radius: w.map(r_out).unwrap_or(0.0),
        residual: f.eval(p.0, p.1).norm(),
    })
}

// ---------------------------------------------------------------------------
