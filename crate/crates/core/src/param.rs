//! Rational parametrization of an eps-rational curve: interpolated resultants
//! against the adjoint pencil, division by the base locus, denominator
//! alignment, and the closing checks (implicitization, infinity matching).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::epsgeom::r_out;
use crate::error::{CurveError, Result};
use crate::numeric::{aberth_roots, PrecisionContext};
use crate::pencil::{
    adjoint_system, delta_perturb, fix_infinity, points_at_infinity, restrict_to_pencil,
    simple_points, Pencil,
};
use crate::poly::{
    coeff_inf_norm, convolve, dft, eval_coeffs, homogenize, sylv_det, trim, BivarPoly, C64,
    TriPoly,
};
use crate::singular::{cluster_decomposition, eps_singular_locus, is_eps_rational};

/// Corner coefficients of the top form may not sit below this fraction of the
/// working threshold, or both eliminations lose their leading terms.
const CORNER_FLOOR: f64 = 1e-3;
/// Slopes closer than this are treated as a repeated infinite point.
const INFINITY_CLUSTER_TOL: f64 = 1e-6;
/// Retry budgets for the two perturbation loops.
const PENCIL_RETRIES: usize = 8;
const DELTA_RETRIES: usize = 8;
/// Scaled-coefficient floor for the top x-power of the interpolated resultant.
const DEGREE_DROP_TOL: f64 = 1e-11;
/// Interpolation noise floor, relative to the largest coefficient.
const RESULTANT_CLEAN_TOL: f64 = 1e-13;
/// Shared-root test for the q/p content check.
const CONTENT_TOL: f64 = 1e-6;
/// Noise floor for implicitized coefficients.
const IMPLICIT_CLEAN_TOL: f64 = 1e-10;

/// How the d-3 simple points of the divisor are chosen.
#[derive(Clone, Debug)]
pub enum SimplePointRule {
    /// Ramification-flavored automatic selection.
    Auto,
    /// Caller-supplied points, validated before use.
    Given(Vec<(f64, f64)>),
}

/// Output of `parametrize`: t-coefficient vectors (ascending) of the map
/// t -> (p1(t)/q(t), p2(t)/q(t)), plus everything needed to audit the run.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub p1: Vec<C64>,
    pub p2: Vec<C64>,
    pub q: Vec<C64>,
    /// Raw denominators of the two axes before alignment and normalization.
    pub q1_raw: Vec<C64>,
    pub q2_raw: Vec<C64>,
    /// Alignment ratio between the two raw denominators.
    pub lam: C64,
    /// Worst relative coefficient defect of q1 - lam*q2.
    pub spread: f64,
    /// Division residuals of the two quotient stages; diagnostics, not gates.
    pub rem: (f64, f64),
    pub delta: Option<[f64; 6]>,
    pub rho: Option<(f64, f64)>,
    /// The pencil forms actually used (h1 with any delta-perturbation folded in).
    pub h1g: TriPoly,
    pub h2: TriPoly,
    pub reps: Vec<((C64, C64), u32)>,
    pub simple: Vec<(f64, f64)>,
    pub degree: u32,
}

/// Gate shared by `parametrize` and the curve generator: the degree must
/// survive the tolerance, both corner coefficients of the top form must carry
/// real weight, and no singular point may sit on the line at infinity.
pub fn check_assumptions(f: &BivarPoly, eps: f64) -> Result<(u32, PrecisionContext)> {
    let ctx = PrecisionContext::for_curve(f, eps)?;
    let d = match f.proper_degree(eps)? {
        Some(d) => d,
        None => {
            return Err(CurveError::Assumption(
                "the top-degree form drops below the tolerance; the degree is not stable here"
                    .into(),
            ))
        }
    };
    if d < 3 {
        return Err(CurveError::Assumption(format!(
            "degree {} curve has no adjoint pencil; need degree 3 or higher",
            d
        )));
    }
    let floor = CORNER_FLOOR * ctx.threshold();
    if f.coeff(d, 0).norm() < floor || f.coeff(0, d).norm() < floor {
        return Err(CurveError::Assumption(
            "a corner coefficient of the top form is below scale; rotate the coordinate axes"
                .into(),
        ));
    }
    let ms = points_at_infinity(f, d)?;
    let hf = homogenize(f, d)?;
    let th = ctx.threshold();
    for (i, &m) in ms.iter().enumerate() {
        let repeated = ms
            .iter()
            .enumerate()
            .any(|(j, &m2)| i != j && (m - m2).norm() < INFINITY_CLUSTER_TOL);
        if !repeated {
            continue;
        }
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let grads = [
            hf.partial(1, 0, 0).eval(one, m, zero).norm(),
            hf.partial(0, 1, 0).eval(one, m, zero).norm(),
            hf.partial(0, 0, 1).eval(one, m, zero).norm(),
        ];
        if grads.iter().all(|&g| g < th) {
            return Err(CurveError::Assumption(
                "a singular point sits on the line at infinity; apply an affine orthogonal \
                 change of coordinates to move it into the affine plane"
                    .into(),
            ));
        }
    }
    Ok((d, ctx))
}

fn validate_given(
    f: &BivarPoly,
    ctx: &PrecisionContext,
    pts: &[(f64, f64)],
    want: usize,
    members: &[(C64, C64)],
) -> Result<Vec<(f64, f64)>> {
    if pts.len() != want {
        return Err(CurveError::SimplePoints(format!(
            "got {} points, the divisor needs exactly {}",
            pts.len(),
            want
        )));
    }
    let th = ctx.threshold();
    let reach = r_out(ctx.eps);
    for &(x, y) in pts {
        let p = (C64::new(x, 0.0), C64::new(y, 0.0));
        if f.eval(p.0, p.1).norm() >= th {
            return Err(CurveError::SimplePoints(format!(
                "({}, {}) is not on the curve at this tolerance",
                x, y
            )));
        }
        let gx = f.partial((1, 0)).eval(p.0, p.1).norm();
        let gy = f.partial((0, 1)).eval(p.0, p.1).norm();
        if gx < th && gy < th {
            return Err(CurveError::SimplePoints(format!(
                "({}, {}) has a vanishing gradient; not a simple point",
                x, y
            )));
        }
        for &(qx, qy) in members {
            let dx = (p.0 - qx).norm();
            let dy = (p.1 - qy).norm();
            if (dx * dx + dy * dy).sqrt() < reach {
                return Err(CurveError::SimplePoints(format!(
                    "({}, {}) lies inside a cluster disk",
                    x, y
                )));
            }
        }
    }
    Ok(pts.to_vec())
}

/// Monic base polynomial for one axis: each representative contributes its
/// coordinate with multiplicity r(r-1), each simple point with multiplicity 1.
pub fn base_polys(
    reps: &[((C64, C64), u32)],
    simple: &[(f64, f64)],
    axis: usize,
    d: u32,
) -> Result<Vec<C64>> {
    let mut a = vec![C64::new(1.0, 0.0)];
    let push = |root: C64, mult: u32, a: &mut Vec<C64>| {
        for _ in 0..mult {
            *a = convolve(a, &[-root, C64::new(1.0, 0.0)]);
        }
    };
    for &((x, y), r) in reps {
        push(if axis == 0 { x } else { y }, r * (r - 1), &mut a);
    }
    for &(x, y) in simple {
        push(C64::new(if axis == 0 { x } else { y }, 0.0), 1, &mut a);
    }
    let expected = (d * (d - 2)) as usize;
    if a.len() != expected {
        return Err(CurveError::BaseDegreeMismatch {
            got: a.len() - 1,
            expected: expected - 1,
        });
    }
    Ok(a)
}

fn pencil_coeffs(h1g: &TriPoly, h2: &TriPoly, w: C64, t: C64, deg: usize, in_y: bool) -> Vec<C64> {
    // Coefficient array of (h1g + t*h2)(x, y, 1) in the eliminated variable,
    // the other variable fixed at w.
    let mut co = vec![C64::new(0.0, 0.0); deg + 1];
    for (&(i, j, _), &c) in h1g.terms() {
        if in_y {
            co[j as usize] += w.powu(i) * c;
        } else {
            co[i as usize] += w.powu(j) * c;
        }
    }
    for (&(i, j, _), &c) in h2.terms() {
        if in_y {
            co[j as usize] += t * w.powu(i) * c;
        } else {
            co[i as usize] += t * w.powu(j) * c;
        }
    }
    co
}

/// Coefficient grid of one interpolated resultant, indexed [kept-variable
/// power][t power].
pub type ResultantGrid = Vec<Vec<C64>>;

/// Interpolated resultants S1(x,t) = Res_y(h1g + t*h2, f) and the x/y-swapped
/// S2(y,t), returned as ascending t-coefficient vectors per power of the kept
/// variable. Interpolation runs on a circle of radius `rx`; the scaled top
/// row must survive or the pencil still meets the curve at infinity.
pub fn resultant_stage(
    f: &BivarPoly,
    d: u32,
    h1g: &TriPoly,
    h2: &TriPoly,
    rx: f64,
) -> Result<(ResultantGrid, ResultantGrid)> {
    let dy = (d - 2) as usize;
    let dx_total = (d * (d - 2)) as usize;
    let nt = (d + 1) as usize;
    let nx = dx_total + 1;
    let mut out: Vec<Vec<Vec<C64>>> = Vec::with_capacity(2);
    for in_y in [true, false] {
        // vals[ix][jt]
        let mut vals = vec![vec![C64::new(0.0, 0.0); nt]; nx];
        for (jt, row) in (0..nt).map(|jt| {
            let ang = 2.0 * std::f64::consts::PI * jt as f64 / nt as f64;
            (jt, C64::new(ang.cos(), ang.sin()))
        }) {
            for (ix, vrow) in vals.iter_mut().enumerate() {
                let ang = 2.0 * std::f64::consts::PI * ix as f64 / nx as f64;
                let w = C64::new(ang.cos(), ang.sin()) * rx;
                let a = pencil_coeffs(h1g, h2, w, row, dy, in_y);
                let b = if in_y {
                    f.coeffs_y_at(w)
                } else {
                    f.coeffs_x_at(w)
                };
                vrow[jt] = sylv_det(&a, &b)?;
            }
        }
        // DFT along the kept-variable axis, then along t.
        let mut cs = vec![vec![C64::new(0.0, 0.0); nt]; nx];
        for jt in 0..nt {
            let col: Vec<C64> = (0..nx).map(|ix| vals[ix][jt]).collect();
            for (ix, v) in dft(&col).into_iter().enumerate() {
                cs[ix][jt] = v / nx as f64;
            }
        }
        for row in cs.iter_mut() {
            let tr: Vec<C64> = dft(row).into_iter().map(|v| v / nt as f64).collect();
            *row = tr;
        }
        let mx = cs
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let top = cs[dx_total].iter().map(|c| c.norm()).fold(0.0, f64::max);
        if top < DEGREE_DROP_TOL * mx {
            return Err(CurveError::DegreeDrop);
        }
        let mut scale = 1.0;
        for (ix, row) in cs.iter_mut().enumerate() {
            if ix > 0 {
                scale *= rx;
            }
            for c in row.iter_mut() {
                if c.norm() < RESULTANT_CLEAN_TOL * mx {
                    *c = C64::new(0.0, 0.0);
                }
                *c /= scale;
            }
        }
        out.push(cs);
    }
    let s2 = out.pop().unwrap();
    let s1 = out.pop().unwrap();
    Ok((s1, s2))
}

/// Divides S(x,t) by the monic base polynomial A(x). The quotient must be
/// linear in x; two classical long-division steps produce it, and the
/// reconstruction residual is reported for diagnostics.
pub fn quotient_stage(s: &[Vec<C64>], a: &[C64]) -> Result<(Vec<C64>, Vec<C64>, f64)> {
    let n = s.len();
    if a.len() != n - 1 {
        return Err(CurveError::NonlinearQuotient);
    }
    let nt = s[0].len();
    let b1 = s[n - 1].clone();
    let mut b0 = vec![C64::new(0.0, 0.0); nt];
    for j in 0..nt {
        b0[j] = s[n - 2][j] - a[n - 3] * b1[j];
    }
    let smax = s
        .iter()
        .flat_map(|r| r.iter())
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    let mut resid: f64 = 0.0;
    for i in 0..n {
        for j in 0..nt {
            let mut rec = C64::new(0.0, 0.0);
            if i < a.len() {
                rec += a[i] * b0[j];
            }
            if i >= 1 && i - 1 < a.len() {
                rec += a[i - 1] * b1[j];
            }
            resid = resid.max((rec - s[i][j]).norm());
        }
    }
    Ok((b0, b1, resid / (smax + 1e-300)))
}

/// True when q(t) and p(t) share a root to working precision, i.e. the
/// parametrization carries a common factor in t.
pub fn content_in_t(q: &[C64], p: &[C64]) -> bool {
    let qt = trim(q, 0.0);
    let pt = trim(p, 0.0);
    if qt.len() < 2 {
        return false;
    }
    for r in aberth_roots(&qt) {
        let sc: f64 = pt
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * r.norm().powi(k as i32))
            .sum::<f64>()
            + 1e-300;
        if eval_coeffs(&pt, r).norm() < CONTENT_TOL * sc {
            return true;
        }
    }
    false
}

fn auto_radius(reps: &[((C64, C64), u32)], simple: &[(f64, f64)]) -> f64 {
    // The interpolation circle should dominate the base-locus coordinates so
    // the top coefficients keep their weight in the scaled grid.
    let mut m: f64 = 0.0;
    for &((x, y), _) in reps {
        m = m.max(x.norm()).max(y.norm());
    }
    for &(x, y) in simple {
        m = m.max(x.abs()).max(y.abs());
    }
    let mut rx = 2.0;
    while rx < 1.5 * m {
        rx *= 2.0;
    }
    rx
}

/// Full pipeline from a curve to its approximate rational parametrization.
/// `rx` overrides the interpolation radius; `None` picks one from the base
/// locus scale.
pub fn parametrize(
    f: &BivarPoly,
    eps: f64,
    rule: &SimplePointRule,
    seed: u64,
    rx: Option<f64>,
) -> Result<Parametrization> {
    let (d, ctx) = check_assumptions(f, eps)?;
    let locus = eps_singular_locus(f, &ctx)?;
    let clusters = cluster_decomposition(&locus.points, &ctx);
    let (rational, defic) = is_eps_rational(&clusters, d)?;
    if !rational {
        return Err(CurveError::NotRational(defic));
    }
    let reps: Vec<((C64, C64), u32)> = clusters
        .iter()
        .map(|c| (c.representative.coords, c.multiplicity))
        .collect();
    let members: Vec<(C64, C64)> = clusters
        .iter()
        .flat_map(|c| c.members.iter().map(|m| m.coords))
        .collect();
    let want = (d - 3) as usize;
    let simple = match rule {
        SimplePointRule::Auto => simple_points(f, &ctx, want, &members)?,
        SimplePointRule::Given(pts) => validate_given(f, &ctx, pts, want, &members)?,
    };
    let (_, basis, kernel) = adjoint_system(d, &reps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut pts = simple.clone();
    let mut pencil: Option<Pencil> = None;
    let mut last_dim_err = None;
    for attempt in 0..=PENCIL_RETRIES {
        match restrict_to_pencil(&kernel, &basis, &pts) {
            Ok(p) => {
                pencil = Some(p);
                break;
            }
            Err(e @ CurveError::PencilDimension(_)) => {
                last_dim_err = Some(e);
                if attempt == PENCIL_RETRIES {
                    break;
                }
                // Nudge the divisor off the degenerate position, well inside
                // the tolerance.
                pts = simple
                    .iter()
                    .map(|&(x, y)| {
                        (
                            x + (rng.gen::<f64>() - 0.5) * eps / 5.0,
                            y + (rng.gen::<f64>() - 0.5) * eps / 5.0,
                        )
                    })
                    .collect();
            }
            Err(e) => return Err(e),
        }
    }
    let pencil = match pencil {
        Some(p) => p,
        None => return Err(last_dim_err.unwrap()),
    };
    let (pencil, rho) = fix_infinity(f, d, pencil, eps, &mut rng)?;
    let a1 = base_polys(&reps, &pts, 0, d)?;
    let a2 = base_polys(&reps, &pts, 1, d)?;
    let rx = rx.unwrap_or_else(|| auto_radius(&reps, &pts));

    let mut delta: Option<[f64; 6]> = None;
    for _ in 0..DELTA_RETRIES {
        let h1g = match &delta {
            Some(dl) => pencil.h1.add(&delta_perturb(d, dl, eps)?),
            None => pencil.h1.clone(),
        };
        let (s1, s2) = resultant_stage(f, d, &h1g, &pencil.h2, rx)?;
        let (b0_1, b1_1, r1) = quotient_stage(&s1, &a1)?;
        let (b0_2, b1_2, r2) = quotient_stage(&s2, &a2)?;
        let q1 = b1_1;
        let p1: Vec<C64> = b0_1.iter().map(|c| -c).collect();
        let q2 = b1_2;
        let p2: Vec<C64> = b0_2.iter().map(|c| -c).collect();
        if content_in_t(&q1, &p1) || content_in_t(&q2, &p2) {
            let mut dl = [0.0f64; 6];
            for v in dl.iter_mut() {
                *v = (rng.gen::<f64>() - 0.5) * eps;
            }
            delta = Some(dl);
            continue;
        }
        let num: C64 = q2.iter().zip(&q1).map(|(b, a)| b.conj() * a).sum();
        let den: f64 = q2.iter().map(|c| c.norm_sqr()).sum();
        let lam = num / den;
        let spread = q1
            .iter()
            .zip(&q2)
            .map(|(a, b)| (a - lam * b).norm())
            .fold(0.0, f64::max)
            / (coeff_inf_norm(&q1) + 1e-300);
        let nrm = coeff_inf_norm(&q2);
        let q: Vec<C64> = q2.iter().map(|c| c / nrm).collect();
        let p1n: Vec<C64> = p1.iter().map(|c| c / lam / nrm).collect();
        let p2n: Vec<C64> = p2.iter().map(|c| c / nrm).collect();
        return Ok(Parametrization {
            p1: p1n,
            p2: p2n,
            q,
            q1_raw: q1,
            q2_raw: q2,
            lam,
            spread,
            rem: (r1, r2),
            delta,
            rho,
            h1g,
            h2: pencil.h2.clone(),
            reps,
            simple: pts,
            degree: d,
        });
    }
    Err(CurveError::ContentPersists)
}

/// Implicit equation of the parametrized curve by eliminating t between
/// q(t)x - p1(t) and q(t)y - p2(t) on a unit grid. Normalized to unit
/// max-coefficient with the phase fixed so that entry is real positive.
pub fn implicitize(par: &Parametrization) -> Result<BivarPoly> {
    let n = (par.degree + 1) as usize;
    let mut vals = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (a, vrow) in vals.iter_mut().enumerate() {
        let ang = 2.0 * std::f64::consts::PI * a as f64 / n as f64;
        let x = C64::new(ang.cos(), ang.sin());
        let u: Vec<C64> = par
            .q
            .iter()
            .zip(&par.p1)
            .map(|(qc, pc)| qc * x - pc)
            .collect();
        for (b, slot) in vrow.iter_mut().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * b as f64 / n as f64;
            let y = C64::new(ang.cos(), ang.sin());
            let v: Vec<C64> = par
                .q
                .iter()
                .zip(&par.p2)
                .map(|(qc, pc)| qc * y - pc)
                .collect();
            *slot = sylv_det(&u, &v)?;
        }
    }
    // Two nested DFTs: rows in x, then columns in y.
    let mut c = vec![vec![C64::new(0.0, 0.0); n]; n];
    for b in 0..n {
        let col: Vec<C64> = (0..n).map(|a| vals[a][b]).collect();
        for (i, v) in dft(&col).into_iter().enumerate() {
            c[i][b] = v / n as f64;
        }
    }
    for row in c.iter_mut() {
        let tr: Vec<C64> = dft(row).into_iter().map(|v| v / n as f64).collect();
        *row = tr;
    }
    let mut mx = 0.0f64;
    let mut arg = C64::new(1.0, 0.0);
    for row in &c {
        for v in row {
            if v.norm() > mx {
                mx = v.norm();
                arg = v / v.norm();
            }
        }
    }
    if mx == 0.0 {
        return Err(CurveError::DegenerateParametrization);
    }
    let mut out = BivarPoly::zero();
    for (i, row) in c.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v.norm() < IMPLICIT_CLEAN_TOL * mx {
                continue;
            }
            out.add_term(i as u32, j as u32, v / mx / arg);
        }
    }
    Ok(out)
}

/// Worst projective chordal distance between the curve's infinite points and
/// the parametrization's images at the pencil-paired parameter values
/// t0(m) = -h1g(1,m,0)/h2(1,m,0).
pub fn verify_infinity(par: &Parametrization, f: &BivarPoly) -> Result<f64> {
    let ms = points_at_infinity(f, par.degree)?;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut worst = 0.0f64;
    for m in ms {
        let h2v = par.h2.eval(one, m, zero);
        if h2v.norm() == 0.0 {
            return Err(CurveError::InfinitySeparation);
        }
        let t0 = -par.h1g.eval(one, m, zero) / h2v;
        let bpt = [
            eval_coeffs(&par.p1, t0),
            eval_coeffs(&par.p2, t0),
            eval_coeffs(&par.q, t0),
        ];
        let apt = [one, m, zero];
        let na: f64 = apt.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let nb: f64 = bpt.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let dot: C64 = apt.iter().zip(&bpt).map(|(a, b)| a.conj() * b).sum();
        let cosang = dot.norm() / (na * nb + 1e-300);
        worst = worst.max((1.0 - cosang * cosang).max(0.0).sqrt());
    }
    Ok(worst)
}

fn coeff_pairs(v: &[C64]) -> serde_json::Value {
    json!(v.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>())
}

/// Result document: ascending [re, im] coefficient pairs for the three
/// t-polynomials plus the perturbation record.
pub fn param_json(par: &Parametrization) -> serde_json::Value {
    json!({
        "p1": coeff_pairs(&par.p1),
        "p2": coeff_pairs(&par.p2),
        "q": coeff_pairs(&par.q),
        "delta": par.delta.map(|d| d.to_vec()),
        "rho": par.rho.map(|(a, b)| vec![a, b]),
        "degree": par.degree,
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn folium() -> BivarPoly {
        BivarPoly::parse("x^3+y^3-3xy").unwrap()
    }

    #[test]
    fn assumptions_pass_and_fail() {
        assert!(check_assumptions(&folium(), 1e-3).is_ok());
        // Missing y^3 corner.
        let f = BivarPoly::parse("x^3+y^2-3xy").unwrap();
        assert!(check_assumptions(&f, 1e-3).is_err());
        // Degree too low for a pencil.
        let f = BivarPoly::parse("x^2+y^2-1").unwrap();
        assert!(check_assumptions(&f, 1e-3).is_err());
    }

    #[test]
    fn base_poly_shapes() {
        let c = |re: f64| C64::new(re, 0.0);
        // d=3, one double point: A = (x - a)^2, length d(d-2) = 3.
        let reps = [((c(1.5), c(-2.0)), 2u32)];
        let a = base_polys(&reps, &[], 0, 3).unwrap();
        assert_eq!(a.len(), 3);
        assert!((a[2] - c(1.0)).norm() < 1e-15);
        assert!((a[1] - c(-3.0)).norm() < 1e-12);
        assert!((a[0] - c(2.25)).norm() < 1e-12);
        // Wrong count trips the degree check.
        assert!(matches!(
            base_polys(&reps, &[(3.0, 4.0)], 0, 3),
            Err(CurveError::BaseDegreeMismatch { .. })
        ));
    }

    #[test]
    fn quotient_recovers_linear_factor() {
        let c = |re: f64| C64::new(re, 0.0);
        // A = (x-1)(x-2), B0(t) = 1 + t, B1(t) = 2 - t; S = A*(B0 + B1 x).
        let a = [c(2.0), c(-3.0), c(1.0)];
        let b0 = [c(1.0), c(1.0)];
        let b1 = [c(2.0), c(-1.0)];
        let n = 4;
        let mut s = vec![vec![c(0.0); 2]; n];
        for i in 0..n {
            for j in 0..2 {
                if i < a.len() {
                    s[i][j] += a[i] * b0[j];
                }
                if i >= 1 && i - 1 < a.len() {
                    s[i][j] += a[i - 1] * b1[j];
                }
            }
        }
        let (g0, g1, resid) = quotient_stage(&s, &a).unwrap();
        for j in 0..2 {
            assert!((g0[j] - b0[j]).norm() < 1e-12);
            assert!((g1[j] - b1[j]).norm() < 1e-12);
        }
        assert!(resid < 1e-12);
        assert!(matches!(
            quotient_stage(&s, &[c(1.0), c(1.0)]),
            Err(CurveError::NonlinearQuotient)
        ));
    }

    #[test]
    fn content_detects_shared_roots() {
        let c = |re: f64| C64::new(re, 0.0);
        // q = (t-1)(t-2), p = (t-1)(t+5): share t = 1.
        let q = vec![c(2.0), c(-3.0), c(1.0)];
        let p = vec![c(-5.0), c(4.0), c(1.0)];
        assert!(content_in_t(&q, &p));
        // p = (t+5)(t+7): disjoint.
        let p = vec![c(35.0), c(12.0), c(1.0)];
        assert!(!content_in_t(&q, &p));
    }

    #[test]
    fn folium_parametrization_end_to_end() {
        let f = folium();
        let par = parametrize(&f, 1e-3, &SimplePointRule::Auto, 1, None).unwrap();
        assert_eq!(par.degree, 3);
        assert_eq!(trim(&par.q, 0.0).len(), 4);
        assert!(par.spread < 1e-6, "spread {}", par.spread);
        // The map must land on the curve: sample t on the unit circle.
        for k in 0..24 {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / 24.0;
            let t = C64::new(ang.cos(), ang.sin());
            let qv = eval_coeffs(&par.q, t);
            if qv.norm() < 1e-6 {
                continue;
            }
            let x = eval_coeffs(&par.p1, t) / qv;
            let y = eval_coeffs(&par.p2, t) / qv;
            let scale = f.eval_scale(x, y);
            assert!(
                f.eval(x, y).norm() < 1e-7 * scale,
                "off-curve at t sample {}: {:e}",
                k,
                f.eval(x, y).norm() / scale
            );
        }
    }

    #[test]
    fn folium_implicitize_round_trip() {
        let f = folium();
        let par = parametrize(&f, 1e-3, &SimplePointRule::Auto, 1, None).unwrap();
        let imp = implicitize(&par).unwrap();
        // Compare against f normalized the same way: unit max-coefficient.
        let fbar = f.scale(C64::new(1.0 / f.inf_norm(), 0.0));
        let mut worst_minus = 0.0f64;
        let mut worst_plus = 0.0f64;
        for i in 0..=3u32 {
            for j in 0..=3u32 {
                let a = imp.coeff(i, j);
                let b = fbar.coeff(i, j);
                worst_minus = worst_minus.max((a - b).norm());
                worst_plus = worst_plus.max((a + b).norm());
            }
        }
        assert!(
            worst_minus.min(worst_plus) < 1e-6,
            "implicit defect {:e}",
            worst_minus.min(worst_plus)
        );
    }

    #[test]
    fn folium_infinity_matches() {
        let f = folium();
        let par = parametrize(&f, 1e-3, &SimplePointRule::Auto, 1, None).unwrap();
        let worst = verify_infinity(&par, &f).unwrap();
        assert!(worst < 1e-6, "worst chordal distance {:e}", worst);
    }

    #[test]
    fn non_rational_input_is_reported() {
        // Smooth cubic: genus 1, deficiency 2.
        let f = BivarPoly::parse("x^3+y^3-1").unwrap();
        match parametrize(&f, 1e-3, &SimplePointRule::Auto, 1, None) {
            Err(CurveError::NotRational(2)) => {}
            other => panic!("expected NotRational(2), got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn json_document_shape() {
        let f = folium();
        let par = parametrize(&f, 1e-3, &SimplePointRule::Auto, 1, None).unwrap();
        let doc = param_json(&par);
        assert_eq!(doc["degree"], 3);
        assert!(doc["delta"].is_null());
        assert_eq!(doc["q"].as_array().unwrap().len(), par.q.len());
        assert_eq!(doc["q"][0].as_array().unwrap().len(), 2);
    }
}
