//! Test-curve factory: a six-parameter quartic family with three exact double
//! points, plus graded small perturbations, used to exercise the full
//! detection/parametrization pipeline on curves with known ground truth.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CurveError, Result};
use crate::param::check_assumptions;
use crate::poly::BivarPoly;

/// Redraw budget per family slot when the admissibility gate rejects a draw.
const REDRAW_CAP: usize = 20;

/// One generated family member and the integer draws that produced it.
#[derive(Clone, Debug)]
pub struct GeneratedCurve {
    pub j: u32,
    pub i: u32,
    pub draws: (u32, u32, u32, u32),
    pub f: BivarPoly,
}

/// Six-parameter quartic with double points at (2,0), (0,0), and (1,1) for
/// every parameter choice: the free coefficients carry u1..u6 and the six
/// dependent ones are solved so the value and both gradients vanish at all
/// three points identically.
pub fn base_form(u: &[f64; 6]) -> BivarPoly {
    let (u1, u2, u3, u4, u5, u6) = (u[0], u[1], u[2], u[3], u[4], u[5]);
    BivarPoly::from_real_terms([
        ((0, 2), u2),
        ((0, 3), u3),
        ((0, 4), u4),
        ((1, 1), u5),
        ((1, 2), -2.0 * u2 - 3.0 * u3 - 4.0 * u4 - 0.5 * u5 - 2.0 * u6),
        ((1, 3), u6),
        ((2, 0), u1),
        ((2, 1), -1.5 * u5 + 2.0 * u3 + 4.0 * u4 + 2.0 * u6 - u1),
        ((2, 2), u2 + u3 + 0.5 * u5 + 0.25 * u1 + u4),
        ((3, 0), -u1),
        ((3, 1), 0.5 * u5 - u3 - 2.0 * u4 - u6 + 0.5 * u1),
        ((4, 0), 0.25 * u1),
    ])
}

/// Family member for grid slot (j, i) from the four integer draws in 1..=100:
/// parameter u_j is (r/100)^i, the others stay 1, and the curve is nudged by
/// graded terms of size eps, eps^2, eps^3 on the degree-1/2/3 blocks.
pub fn perturbed_curve(j: u32, i: u32, draws: (u32, u32, u32, u32), eps: f64) -> BivarPoly {
    let (r, r1, r2, r3) = draws;
    let mut u = [1.0f64; 6];
    u[(j - 1) as usize] = (r as f64 / 100.0).powi(i as i32);
    let mut f = base_form(&u);
    let c1 = eps * r1 as f64 / 100.0;
    let c2 = eps * eps * r2 as f64 / 100.0;
    let c3 = eps * eps * eps * r3 as f64 / 100.0;
    for (a, b) in [(1, 0), (0, 1)] {
        f.add_term(a, b, c1.into());
    }
    for (a, b) in [(2, 0), (1, 1), (0, 2)] {
        f.add_term(a, b, c2.into());
    }
    for (a, b) in [(3, 0), (2, 1), (1, 2), (0, 3)] {
        f.add_term(a, b, c3.into());
    }
    f
}

/// Draws the full 6x10 grid of family members at tolerance `eps`,
/// redrawing any slot whose curve fails the admissibility gate.
pub fn family(eps: f64, seed: u64) -> Result<Vec<GeneratedCurve>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(60);
    for j in 1..=6u32 {
        for i in 1..=10u32 {
            let mut accepted = None;
            for _ in 0..REDRAW_CAP {
                let draws = (
                    rng.gen_range(1..=100u32),
                    rng.gen_range(1..=100u32),
                    rng.gen_range(1..=100u32),
                    rng.gen_range(1..=100u32),
                );
                let f = perturbed_curve(j, i, draws, eps);
                if check_assumptions(&f, eps).is_ok() {
                    accepted = Some(GeneratedCurve { j, i, draws, f });
                    break;
                }
            }
            match accepted {
                Some(g) => out.push(g),
                None => {
                    return Err(CurveError::Generation(format!(
                        "no admissible draw for family slot ({}, {}) in {} tries",
                        j, i, REDRAW_CAP
                    )))
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
