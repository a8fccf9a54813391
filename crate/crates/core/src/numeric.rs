//! Root finding and system solving at a fixed working tolerance: Aberth
//! simultaneous iteration for univariate roots, a resultant radius-ladder for
//! bivariate system candidates with Newton refinement, and an SVD nullspace.

use nalgebra::DMatrix;

use crate::error::{CurveError, Result};
use crate::poly::{coeff_inf_norm, dft, sylv_det, trim, BivarPoly, C64, Var};

/// Working tolerance of a pipeline run: everything is measured against
/// `eps * fnorm`.
#[derive(Clone, Copy, Debug)]
pub struct PrecisionContext {
    pub eps: f64,
    pub fnorm: f64,
}

impl PrecisionContext {
    // Negated comparisons so NaN inputs fail the gates.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(eps: f64, fnorm: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(CurveError::Numeric(format!(
                "tolerance must satisfy 0 < eps < 1, got {}",
                eps
            )));
        }
        if !(fnorm > 0.0) {
            return Err(CurveError::Numeric("curve norm must be positive".into()));
        }
        Ok(Self { eps, fnorm })
    }

    pub fn for_curve(f: &BivarPoly, eps: f64) -> Result<Self> {
        Self::new(eps, f.inf_norm())
    }

    pub fn threshold(&self) -> f64 {
        self.eps * self.fnorm
    }
}

/// Iteration cap for the simultaneous root refinement.
const ABERTH_MAX_ITERS: usize = 200;
/// Aberth stops when every correction is below this relative step size.
const ABERTH_STEP_TOL: f64 = 1e-14;
/// Acceptable relative residual for a delivered root.
const ROOT_RESIDUAL_TOL: f64 = 1e-8;

/// Sampling radii for the eliminant ladder; the widening rungs pick up root
/// scales that a single circle would alias away.
const ELIM_RADII: [f64; 4] = [1.0, 4.0, 16.0, 64.0];
/// Scaled-root window: a rung keeps roots with modulus in (lo, 2.6], where lo
/// is -1 on the first rung (keep everything small) and 0.3 afterwards so each
/// wider rung only contributes the scale band the previous one missed.
const ROOT_WINDOW_HI: f64 = 2.6;
const ROOT_WINDOW_LO: f64 = 0.3;
/// Seed coordinates past this magnitude are hopeless for the geometry in play.
const SEED_COORD_CAP: f64 = 1e3;
/// Newton refinement budget per seed.
const NEWTON_ITERS: usize = 40;
/// A refined point drifting further than this fraction of the seed scale is a
/// basin escape, not a refinement.
const DRIFT_FRACTION: f64 = 0.05;
/// Refined points must satisfy both generators to this relative residual.
const PAIR_RESIDUAL_TOL: f64 = 1e-8;
/// Points closer than this collapse to their arithmetic mean.
const DEDUP_DIST: f64 = 1e-9;
/// An eliminant with coefficient norm below this (relative to the generator
/// norms) is treated as identically zero. Shared factors interpolate at or
/// near machine noise (~1e-16 relative); deep multi-cluster curves produce
/// genuine eliminants as small as ~1e-11 relative, so the cut sits between.
const COPRIME_RES_TOL: f64 = 1e-14;
/// Default rank cut for the SVD nullspace.
pub const NULLSPACE_TOL: f64 = 1e-8;

fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

// ---------------------------------------------------------------------------
// Univariate roots
// ---------------------------------------------------------------------------

fn horner_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = czero();
    let mut dp = czero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Best-effort Aberth roots without the residual gate; used internally where
/// downstream filters reject junk anyway.
pub(crate) fn aberth_roots(coeffs: &[C64]) -> Vec<C64> {
    let co = trim(coeffs, 0.0);
    // Exact zeros at the low end are roots at the origin.
    let mut zeros_at_origin = 0;
    while zeros_at_origin < co.len() - 1 && co[zeros_at_origin] == czero() {
        zeros_at_origin += 1;
    }
    let co = &co[zeros_at_origin..];
    let n = co.len() - 1;
    let mut roots = vec![czero(); zeros_at_origin];
    if n == 0 {
        return roots;
    }
    if n == 1 {
        roots.push(-co[0] / co[1]);
        return roots;
    }
    let lead = co[n];
    let monic: Vec<C64> = co.iter().map(|&c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            C64::new(radius * ang.cos(), radius * ang.sin())
        })
        .collect();
    for _ in 0..ABERTH_MAX_ITERS {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(&monic, z[k]);
            if p == czero() {
                continue;
            }
            let ratio = if dp == czero() { p / C64::new(1e-12, 1e-12) } else { p / dp };
            let mut sum = czero();
            for j in 0..n {
                if j == k {
                    continue;
                }
                let mut diff = z[k] - z[j];
                if diff == czero() {
                    diff = C64::new(1e-12, 1e-12);
                }
                sum += C64::new(1.0, 0.0) / diff;
            }
            let denom = C64::new(1.0, 0.0) - ratio * sum;
            let corr = if denom.norm() < 1e-300 { ratio } else { ratio / denom };
            z[k] -= corr;
            max_step = max_step.max(corr.norm() / (1.0 + z[k].norm()));
        }
        if max_step < ABERTH_STEP_TOL {
            break;
        }
    }
    // A few plain Newton polish steps tighten simple roots to full precision.
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner_with_derivative(&monic, *zk);
            if dp == czero() {
                break;
            }
            *zk -= p / dp;
        }
    }
    roots.extend(z);
    roots
}

/// All `deg(p)` complex roots of an ascending coefficient vector, with the
/// residual gate `|p(root)| <= 1e-8 * norm(p) * (1+|root|)^deg` enforced.
pub fn univar_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let co = trim(coeffs, 0.0);
    if co.iter().all(|c| *c == czero()) {
        return Err(CurveError::Numeric("univar_roots of zero polynomial".into()));
    }
    let deg = co.len() - 1;
    if deg == 0 {
        return Err(CurveError::Numeric(
            "univar_roots of a nonzero constant".into(),
        ));
    }
    let roots = aberth_roots(&co);
    let norm = coeff_inf_norm(&co);
    for r in &roots {
        let (p, _) = horner_with_derivative(&co, *r);
        let bound = ROOT_RESIDUAL_TOL * norm * (1.0 + r.norm()).powi(deg as i32);
        if p.norm() > bound {
            return Err(CurveError::Numeric(format!(
                "root residual {:.3e} exceeds bound {:.3e}",
                p.norm(),
                bound
            )));
        }
    }
    Ok(roots)
}

// ---------------------------------------------------------------------------
// Nullspace
// ---------------------------------------------------------------------------

/// Orthonormal basis (columns) of the numerical kernel: right singular vectors
/// whose singular values are at most `tol * sigma_max`.
pub fn nullspace(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let ncols = m.ncols();
    if m.nrows() == 0 || ncols == 0 {
        return DMatrix::identity(ncols, ncols);
    }
    // Pad to at least square so the thin SVD still carries the full V factor.
    let padded = if m.nrows() < ncols {
        let mut p = DMatrix::zeros(ncols, ncols);
        p.view_mut((0, 0), (m.nrows(), ncols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(true, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    let smax = order
        .first()
        .map(|&i| svd.singular_values[i])
        .unwrap_or(0.0);
    let rank = order
        .iter()
        .filter(|&&i| svd.singular_values[i] > tol * smax)
        .count();
    let dim = ncols - rank;
    let mut basis = DMatrix::zeros(ncols, dim);
    for (col, &i) in order[rank..].iter().enumerate() {
        for r in 0..ncols {
            basis[(r, col)] = v_t[(i, r)];
        }
    }
    basis
}

// ---------------------------------------------------------------------------
// System solving
// ---------------------------------------------------------------------------

fn eval_guarded(g: &BivarPoly, x: C64, y: C64) -> f64 {
    if x.norm() > 1e8 || y.norm() > 1e8 {
        return f64::INFINITY;
    }
    g.eval(x, y).norm()
}

/// Candidate values of one coordinate: roots of the eliminating resultant,
/// gathered over the radius ladder with the per-rung scaled-root window.
fn elim_root_candidates(g1: &BivarPoly, g2: &BivarPoly, var: Var) -> Vec<C64> {
    let d_total = match var {
        Var::X => {
            g1.deg_x() as usize * g2.deg_y() as usize + g2.deg_x() as usize * g1.deg_y() as usize
        }
        Var::Y => {
            g1.deg_y() as usize * g2.deg_x() as usize + g2.deg_y() as usize * g1.deg_x() as usize
        }
    };
    if d_total == 0 {
        return Vec::new();
    }
    let n = d_total + 1;
    let mut cands = Vec::new();
    for (rung, &radius) in ELIM_RADII.iter().enumerate() {
        let mut vals = Vec::with_capacity(n);
        for k in 0..n {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let w = C64::new(radius * ang.cos(), radius * ang.sin());
            let (a, b) = match var {
                Var::X => (g1.coeffs_y_at(w), g2.coeffs_y_at(w)),
                Var::Y => (g1.coeffs_x_at(w), g2.coeffs_x_at(w)),
            };
            vals.push(sylv_det(&a, &b).unwrap_or_else(|_| czero()));
        }
        // Coefficients of the eliminant pre-composed with radius*u, so the
        // interesting roots of this rung sit near the unit circle in u.
        let mut d: Vec<C64> = dft(&vals).into_iter().map(|c| c / n as f64).collect();
        let mx = coeff_inf_norm(&d);
        if mx == 0.0 {
            continue;
        }
        for c in d.iter_mut() {
            if c.norm() < 1e-12 * mx {
                *c = czero();
            }
        }
        let d = trim(&d, 0.0);
        if d.len() < 2 {
            continue;
        }
        let lo = if rung == 0 { -1.0 } else { ROOT_WINDOW_LO };
        for u in aberth_roots(&d) {
            let m = u.norm();
            if m > lo && m <= ROOT_WINDOW_HI {
                cands.push(u * radius);
            }
        }
    }
    cands
}

fn newton_refine(
    g1: &BivarPoly,
    g2: &BivarPoly,
    parts: &(BivarPoly, BivarPoly, BivarPoly, BivarPoly),
    seed: (C64, C64),
) -> Option<(C64, C64)> {
    let (g1x, g1y, g2x, g2y) = parts;
    let (mut x, mut y) = seed;
    for _ in 0..NEWTON_ITERS {
        if x.norm() > 1e8 || y.norm() > 1e8 {
            return None;
        }
        let r1 = g1.eval(x, y);
        let r2 = g2.eval(x, y);
        let a = g1x.eval(x, y);
        let b = g1y.eval(x, y);
        let c = g2x.eval(x, y);
        let d = g2y.eval(x, y);
        let det = a * d - b * c;
        if det.norm() < 1e-300 {
            break;
        }
        let dx = (r1 * d - r2 * b) / det;
        let dy = (a * r2 - c * r1) / det;
        x -= dx;
        y -= dy;
        if dx.norm() + dy.norm() < 1e-15 * (1.0 + x.norm() + y.norm()) {
            break;
        }
    }
    Some((x, y))
}

/// Roots in the free variable of `g` after fixing `fixed_var = val`.
fn section_roots(g: &BivarPoly, val: C64, fixed_var: Var) -> Vec<C64> {
    let co = match fixed_var {
        Var::X => g.coeffs_y_at(val),
        Var::Y => g.coeffs_x_at(val),
    };
    let co = trim(&co, 0.0);
    if co.len() < 2 {
        return Vec::new();
    }
    aberth_roots(&co)
}

/// Is the eliminant of this pair (in `var`) distinguishable from zero?
fn elim_nontrivial(g1: &BivarPoly, g2: &BivarPoly, var: Var) -> bool {
    match crate::poly::resultant(g1, g2, var) {
        Ok(r) => r.inf_norm() > COPRIME_RES_TOL * g1.inf_norm() * g2.inf_norm(),
        Err(_) => false,
    }
}

/// All points satisfying `|g(P)| < ctx.threshold()` for every polynomial in
/// the list. The first pair with nonzero eliminating resultants generates the
/// candidate grid; the threshold test against all inputs does the accepting.
///
/// # Errors
/// `NonFiniteSolutionSet` when every pair's eliminants vanish identically
/// (the solution set contains a curve).
pub fn solve_system(polys: &[BivarPoly], ctx: &PrecisionContext) -> Result<Vec<(C64, C64)>> {
    if polys.len() < 2 {
        return Err(CurveError::Numeric(
            "solve_system needs at least two polynomials".into(),
        ));
    }
    let th = ctx.threshold();
    let mut pair: Option<(usize, usize)> = None;
    'outer: for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            if elim_nontrivial(&polys[i], &polys[j], Var::X)
                && elim_nontrivial(&polys[i], &polys[j], Var::Y)
            {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let (i, j) = pair.ok_or(CurveError::NonFiniteSolutionSet)?;
    let (g1, g2) = (&polys[i], &polys[j]);

    let xs = elim_root_candidates(g1, g2, Var::X);
    let ys = elim_root_candidates(g1, g2, Var::Y);

    let mut seeds: Vec<(C64, C64)> = Vec::new();
    for &x0 in &xs {
        if x0.norm() > SEED_COORD_CAP {
            continue;
        }
        for g in [g1, g2] {
            let rr = section_roots(g, x0, Var::X);
            if !rr.is_empty() {
                seeds.extend(
                    rr.into_iter()
                        .filter(|y0| y0.norm() <= SEED_COORD_CAP)
                        .map(|y0| (x0, y0)),
                );
                break;
            }
        }
    }
    for &y0 in &ys {
        if y0.norm() > SEED_COORD_CAP {
            continue;
        }
        for g in [g1, g2] {
            let rr = section_roots(g, y0, Var::Y);
            if !rr.is_empty() {
                seeds.extend(
                    rr.into_iter()
                        .filter(|x0| x0.norm() <= SEED_COORD_CAP)
                        .map(|x0| (x0, y0)),
                );
                break;
            }
        }
    }

    let parts = (
        g1.partial((1, 0)),
        g1.partial((0, 1)),
        g2.partial((1, 0)),
        g2.partial((0, 1)),
    );
    let mut accepted: Vec<(C64, C64)> = Vec::new();
    for seed in seeds {
        let Some((x1, y1)) = newton_refine(g1, g2, &parts, seed) else {
            continue;
        };
        let drift = (x1 - seed.0).norm() + (y1 - seed.1).norm();
        if drift > DRIFT_FRACTION * (1.0 + seed.0.norm() + seed.1.norm()) {
            continue;
        }
        if eval_guarded(g1, x1, y1) / g1.eval_scale(x1, y1) > PAIR_RESIDUAL_TOL {
            continue;
        }
        if eval_guarded(g2, x1, y1) / g2.eval_scale(x1, y1) > PAIR_RESIDUAL_TOL {
            continue;
        }
        if !polys.iter().all(|g| eval_guarded(g, x1, y1) < th) {
            continue;
        }
        accepted.push((x1, y1));
    }

    // Deduplicate: groups within DEDUP_DIST collapse to their arithmetic mean.
    let mut groups: Vec<(C64, C64, usize)> = Vec::new();
    for (x, y) in accepted {
        let mut merged = false;
        for g in groups.iter_mut() {
            let mx = g.0 / g.2 as f64;
            let my = g.1 / g.2 as f64;
            let dist = ((x - mx).norm_sqr() + (y - my).norm_sqr()).sqrt();
            if dist < DEDUP_DIST {
                g.0 += x;
                g.1 += y;
                g.2 += 1;
                merged = true;
                break;
            }
        }
        if !merged {
            groups.push((x, y, 1));
        }
    }
    Ok(groups
        .into_iter()
        .map(|(sx, sy, n)| (sx / n as f64, sy / n as f64))
        .collect())
}

// ---------------------------------------------------------------------------
