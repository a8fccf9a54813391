//! The adjoint pencil: linear conditions forcing degree-(d-2) curves through
//! the cluster representatives with prescribed orders, simple-point selection,
//! the cut down to a two-dimensional pencil, and its repair at infinity.

use nalgebra::DMatrix;
use rand::Rng;

use crate::epsgeom::r_out;
use crate::error::{CurveError, Result};
use crate::numeric::{aberth_roots, nullspace, solve_system, PrecisionContext, NULLSPACE_TOL};
use crate::poly::{monomials, trim, BivarPoly, C64, TriPoly};

/// A coordinate with imaginary part past this relative size is not a real
/// point for simple-point purposes.
const REALNESS_TOL: f64 = 1e-6;
/// Conjugate-pair detection for cluster representatives.
const CONJ_IMAG_TOL: f64 = 1e-10;
const CONJ_MATCH_TOL: f64 = 1e-6;
/// Scale-relative vanishing test for a form at an infinite point.
const INFINITY_VANISH_TOL: f64 = 1e-8;
/// Retry budget for the rho-perturbation at infinity.
const INFINITY_RETRIES: usize = 8;
/// Probe lines for the simple-point fallback when the ramification pool runs
/// short; values chosen to sweep both sides and several scales.
const PROBE_LINES: [f64; 20] = [
    3.0, -3.0, 4.0, -4.0, 5.0, 6.0, 7.0, 8.0, 0.5, -0.5, 1.5, 2.5, -1.5, -2.5, 9.0, 10.0, 11.0,
    12.0, -6.0, -7.0,
];

/// Two degree-(d-2) forms spanning the adjoint pencil.
#[derive(Clone, Debug)]
pub struct Pencil {
    pub h1: TriPoly,
    pub h2: TriPoly,
}

/// Exponent triples (i, j, k) of the homogeneous monomial basis a condition
/// matrix is written in.
pub type MonomialBasis = Vec<(u32, u32, u32)>;

/// Linear vanishing conditions for the cluster representatives: one row per
/// derivative order up to mult-2 per representative, realified so conjugate
/// pairs contribute their real and imaginary parts once.
///
/// Returns the condition matrix, the monomial basis it is written in, and the
/// kernel at the default rank tolerance.
///
/// # Errors
/// `OverConstrained` when no degree-(d-2) form satisfies the conditions.
pub fn adjoint_system(
    d: u32,
    reps: &[((C64, C64), u32)],
) -> Result<(DMatrix<f64>, MonomialBasis, DMatrix<f64>)> {
    let basis = monomials(d - 2);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut used = vec![false; reps.len()];
    for idx in 0..reps.len() {
        if used[idx] {
            continue;
        }
        used[idx] = true;
        let ((a, b), r) = reps[idx];
        let is_complex = a.im.abs() + b.im.abs() > CONJ_IMAG_TOL;
        if is_complex {
            for jdx in (idx + 1)..reps.len() {
                if used[jdx] {
                    continue;
                }
                let ((a2, b2), _) = reps[jdx];
                if (a2 - a.conj()).norm() + (b2 - b.conj()).norm() < CONJ_MATCH_TOL {
                    used[jdx] = true;
                    break;
                }
            }
        }
        if r < 2 {
            continue;
        }
        for ox in 0..(r - 1) {
            for oy in 0..(r - 1 - ox) {
                let mut row = Vec::with_capacity(basis.len());
                for &(i, j, _) in &basis {
                    if i < ox || j < oy {
                        row.push(C64::new(0.0, 0.0));
                        continue;
                    }
                    let mut c = 1.0;
                    for t in 0..ox {
                        c *= (i - t) as f64;
                    }
                    for t in 0..oy {
                        c *= (j - t) as f64;
                    }
                    row.push(a.powu(i - ox) * b.powu(j - oy) * c);
                }
                rows.push(row.iter().map(|z| z.re).collect());
                if is_complex {
                    rows.push(row.iter().map(|z| z.im).collect());
                }
            }
        }
    }
    let m = if rows.is_empty() {
        DMatrix::zeros(0, basis.len())
    } else {
        DMatrix::from_fn(rows.len(), basis.len(), |r, c| rows[r][c])
    };
    let kernel = nullspace(&m, NULLSPACE_TOL);
    if kernel.ncols() == 0 {
        return Err(CurveError::OverConstrained);
    }
    Ok((m, basis, kernel))
}

fn grad_below(f: &BivarPoly, p: (C64, C64), th: f64) -> bool {
    f.partial((1, 0)).eval(p.0, p.1).norm() < th && f.partial((0, 1)).eval(p.0, p.1).norm() < th
}

fn too_close(p: (f64, f64), q: (C64, C64), reach: f64) -> bool {
    let dx = (C64::new(p.0, 0.0) - q.0).norm();
    let dy = (C64::new(p.1, 0.0) - q.1).norm();
    (dx * dx + dy * dy).sqrt() < reach
}

/// Real simple points on the curve for the pencil divisor.
///
/// The pool is the real ramification-flavored locus (common near-zeros of
/// {f, f_x} and {f, f_y}) outside every forbidden cluster, with a solid
/// gradient. Points are taken by descending |x| (then |y|) with pairwise
/// separation at least the outer radius; probe lines fill any shortfall.
pub fn simple_points(
    f: &BivarPoly,
    ctx: &PrecisionContext,
    count: usize,
    forbidden: &[(C64, C64)],
) -> Result<Vec<(f64, f64)>> {
    let th = ctx.threshold();
    let reach = r_out(ctx.eps);
    let mut pool: Vec<(f64, f64)> = Vec::new();
    for v in [(1, 0), (0, 1)] {
        let sols = match solve_system(&[f.clone(), f.partial(v)], ctx) {
            Ok(s) => s,
            Err(CurveError::NonFiniteSolutionSet) => Vec::new(),
            Err(e) => return Err(e),
        };
        for (x, y) in sols {
            if x.im.abs() > REALNESS_TOL * (1.0 + x.norm())
                || y.im.abs() > REALNESS_TOL * (1.0 + y.norm())
            {
                continue;
            }
            let p = (x.re, y.re);
            let pc = (C64::new(p.0, 0.0), C64::new(p.1, 0.0));
            if forbidden.iter().any(|&q| too_close(p, q, reach)) {
                continue;
            }
            if grad_below(f, pc, th) {
                continue;
            }
            pool.push(p);
        }
    }
    pool.sort_by(|a, b| {
        b.0.abs()
            .partial_cmp(&a.0.abs())
            .unwrap()
            .then(b.1.abs().partial_cmp(&a.1.abs()).unwrap())
    });
    let mut out: Vec<(f64, f64)> = Vec::new();
    for p in pool {
        if out.len() >= count {
            break;
        }
        if out
            .iter()
            .any(|&q| too_close(p, (C64::new(q.0, 0.0), C64::new(q.1, 0.0)), reach))
        {
            continue;
        }
        out.push(p);
    }
    if out.len() < count {
        for &x0 in PROBE_LINES.iter() {
            if out.len() >= count {
                break;
            }
            let co = trim(&f.coeffs_y_at(C64::new(x0, 0.0)), 0.0);
            if co.len() < 2 {
                continue;
            }
            for y in aberth_roots(&co) {
                if out.len() >= count {
                    break;
                }
                if y.im.abs() >= 1e-9 {
                    continue;
                }
                let p = (x0, y.re);
                let pc = (C64::new(p.0, 0.0), C64::new(p.1, 0.0));
                if forbidden.iter().any(|&q| too_close(p, q, reach)) {
                    continue;
                }
                if out
                    .iter()
                    .any(|&q| too_close(p, (C64::new(q.0, 0.0), C64::new(q.1, 0.0)), reach))
                {
                    continue;
                }
                if grad_below(f, pc, th) {
                    continue;
                }
                out.push(p);
            }
        }
    }
    if out.len() < count {
        return Err(CurveError::SimplePoints(format!(
            "found {} admissible simple points, need {}",
            out.len(),
            count
        )));
    }
    Ok(out)
}

/// Cuts the adjoint kernel down by the simple-point divisor.
///
/// # Errors
/// `InconsistentDivisor` when the cut empties the system, and
/// `PencilDimension` when it misses dimension 2 (callers may perturb the
/// simple points and retry).
pub fn restrict_to_pencil(
    kernel: &DMatrix<f64>,
    basis: &[(u32, u32, u32)],
    simple: &[(f64, f64)],
) -> Result<Pencil> {
    let kappa = kernel.ncols();
    let b = if simple.is_empty() {
        kernel.clone()
    } else {
        let mut rows = DMatrix::zeros(simple.len(), kappa);
        for (ri, &(a, bb)) in simple.iter().enumerate() {
            let full: Vec<f64> = basis
                .iter()
                .map(|&(i, j, _)| a.powi(i as i32) * bb.powi(j as i32))
                .collect();
            for c in 0..kappa {
                let mut acc = 0.0;
                for (k, &v) in full.iter().enumerate() {
                    acc += v * kernel[(k, c)];
                }
                rows[(ri, c)] = acc;
            }
        }
        let k2 = nullspace(&rows, NULLSPACE_TOL);
        kernel * k2
    };
    match b.ncols() {
        0 => Err(CurveError::InconsistentDivisor),
        2 => {
            let mut h1 = TriPoly::zero();
            let mut h2 = TriPoly::zero();
            for (k, &(i, j, kk)) in basis.iter().enumerate() {
                h1.add_term(i, j, kk, b[(k, 0)]);
                h2.add_term(i, j, kk, b[(k, 1)]);
            }
            Ok(Pencil { h1, h2 })
        }
        dim => Err(CurveError::PencilDimension(dim)),
    }
}

/// Slopes m of the infinite points (1:m:0) of the degree-d curve.
///
/// # Errors
/// When the y^d coefficient vanishes, (0:1:0) lies on the curve and the
/// slope polynomial degenerates.
pub fn points_at_infinity(f: &BivarPoly, d: u32) -> Result<Vec<C64>> {
    let co: Vec<C64> = (0..=d).map(|j| f.coeff(d - j, j)).collect();
    let trimmed = trim(&co, 0.0);
    if trimmed.len() != d as usize + 1 {
        return Err(CurveError::Assumption(
            "the point (0:1:0) lies on the curve; apply an affine orthogonal change of coordinates"
                .into(),
        ));
    }
    Ok(aberth_roots(&trimmed))
}

/// Does the form vanish (to working precision) at any of the infinite points
/// (1:m:0)? Scale-aware in both the form size and the slope magnitude.
pub fn shares_infinity(h: &TriPoly, ms: &[C64]) -> bool {
    let scale = h.abs_sum() + 1e-300;
    let maxj = h.max_deg_y();
    for &m in ms {
        let mut v = C64::new(0.0, 0.0);
        for (&(_, j, k), &c) in h.terms() {
            if k == 0 {
                v += m.powu(j) * c;
            }
        }
        let bound = INFINITY_VANISH_TOL * scale * m.norm().max(1.0).powi(maxj as i32);
        if v.norm() < bound {
            return true;
        }
    }
    false
}

/// Ensures the denominator-generating form h2 misses every infinite point of
/// the curve: keep, swap, or nudge h2's pure x/y top monomials by a rho draw
/// below eps.
///
/// # Errors
/// `InfinitySeparation` after the retry budget.
pub fn fix_infinity<R: Rng>(
    f: &BivarPoly,
    d: u32,
    pencil: Pencil,
    eps: f64,
    rng: &mut R,
) -> Result<(Pencil, Option<(f64, f64)>)> {
    let ms = points_at_infinity(f, d)?;
    if !shares_infinity(&pencil.h2, &ms) {
        return Ok((pencil, None));
    }
    if !shares_infinity(&pencil.h1, &ms) {
        return Ok((
            Pencil {
                h1: pencil.h2,
                h2: pencil.h1,
            },
            None,
        ));
    }
    for _ in 0..INFINITY_RETRIES {
        let r1 = (rng.gen::<f64>() - 0.5) * eps;
        let r2 = (rng.gen::<f64>() - 0.5) * eps;
        let mut h2b = pencil.h2.clone();
        h2b.add_term(d - 2, 0, 0, r1);
        h2b.add_term(0, d - 2, 0, r2);
        if !shares_infinity(&h2b, &ms) {
            return Ok((
                Pencil {
                    h1: pencil.h1,
                    h2: h2b,
                },
                Some((r1, r2)),
            ));
        }
    }
    Err(CurveError::InfinitySeparation)
}

/// The standard perturbation form added to h1 only: six slots on the top
/// x/y monomials and their z-shifted neighbors (three slots when d = 3).
///
/// # Errors
/// Any |delta_i| at or past eps defeats the purpose of a sub-tolerance nudge.
pub fn delta_perturb(d: u32, delta: &[f64; 6], eps: f64) -> Result<TriPoly> {
    if delta.iter().any(|v| v.abs() >= eps) {
        return Err(CurveError::Numeric(format!(
            "perturbation magnitude {:.3e} is not below the tolerance {:.3e}",
            delta.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            eps
        )));
    }
    let mut g = TriPoly::zero();
    if d == 3 {
        g.add_term(0, 1, 0, delta[0]);
        g.add_term(0, 0, 1, delta[1]);
        g.add_term(1, 0, 0, delta[2]);
    } else {
        g.add_term(0, d - 2, 0, delta[0]);
        g.add_term(0, d - 3, 1, delta[1]);
        g.add_term(d - 2, 0, 0, delta[2]);
        g.add_term(d - 3, 0, 1, delta[3]);
        g.add_term(d - 3, 1, 0, delta[4]);
        g.add_term(1, d - 3, 0, delta[5]);
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
