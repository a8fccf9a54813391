//! The ε-singular locus: stratified detection of ε-singularities, their
//! decomposition into exclusion-radius clusters, and the rationality decision
//! from the genus budget.

use serde_json::json;

use crate::epsgeom::{classify, r_out, EpsilonPoint};
use crate::error::{CurveError, Result};
use crate::numeric::{solve_system, PrecisionContext};
use crate::poly::{BivarPoly, C64};

/// Points produced at different strata closer than this are one point.
const CROSS_LEVEL_DEDUP: f64 = 1e-8;
/// Residual difference below which representative selection falls through to
/// the realness tie-break.
const REP_RESIDUAL_TIE: f64 = 1e-12;

/// The detected locus: stratum k holds the points whose derivatives through
/// order k all sit below the threshold, plus the classification of the union.
#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub strata: Vec<Vec<(C64, C64)>>,
    pub points: Vec<EpsilonPoint>,
}

/// A cluster of mutually reachable ε-singularities with its representative.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub representative: EpsilonPoint,
    pub multiplicity: u32,
    pub members: Vec<EpsilonPoint>,
}

fn point_dist(a: (C64, C64), b: (C64, C64)) -> f64 {
    ((a.0 - b.0).norm_sqr() + (a.1 - b.1).norm_sqr()).sqrt()
}

/// Detects the full ε-singular locus of `f`.
///
/// Stratum 1 solves the gradient system and keeps curve points; stratum k
/// solves the pure order-k derivative pair and keeps points with every
/// derivative through order k under the threshold. Levels whose generator
/// pair degenerates contribute an empty stratum.
pub fn eps_singular_locus(f: &BivarPoly, ctx: &PrecisionContext) -> Result<SingularLocus> {
    let th = ctx.threshold();
    let d = f
        .total_degree()
        .ok_or_else(|| CurveError::Numeric("locus of zero polynomial".into()))?;
    let fx = f.partial((1, 0));
    let fy = f.partial((0, 1));
    let s1: Vec<(C64, C64)> = solve_system(&[fx, fy, f.clone()], ctx)?;

    let mut strata = vec![s1.clone()];
    let mut all: Vec<(C64, C64)> = s1;

    for k in 2..d {
        let ga = f.partial((k, 0));
        let gb = f.partial((0, k));
        let cands = match solve_system(&[ga, gb], ctx) {
            Ok(c) => c,
            Err(CurveError::NonFiniteSolutionSet) => {
                log::warn!("stratum {}: degenerate generator pair, skipping", k);
                Vec::new()
            }
            Err(e) => return Err(e),
        };
        let sk: Vec<(C64, C64)> = cands
            .into_iter()
            .filter(|&p| {
                (0..=k).all(|lev| {
                    (0..=lev).all(|a| f.partial((a, lev - a)).eval(p.0, p.1).norm() < th)
                })
            })
            .collect();
        for &p in &sk {
            if !all.iter().any(|&q| point_dist(p, q) < CROSS_LEVEL_DEDUP) {
                all.push(p);
            }
        }
        strata.push(sk);
    }

    let points = all
        .into_iter()
        .map(|p| classify(f, p, ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok(SingularLocus { strata, points })
}

/// Groups ε-singularities into clusters: two points connect when their
/// distance plus radius mismatch stays inside the outer radius at `eps`, and
/// each connected component elects the deepest, cleanest, most real member.
pub fn cluster_decomposition(points: &[EpsilonPoint], ctx: &PrecisionContext) -> Vec<Cluster> {
    let n = points.len();
    let reach = r_out(ctx.eps);
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = point_dist(points[i].coords, points[j].coords)
                + (points[i].radius - points[j].radius).abs();
            if d < reach {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![i];
        seen[i] = true;
        while let Some(u) = stack.pop() {
            comp.push(u);
            for v in 0..n {
                if adj[u][v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        let members: Vec<EpsilonPoint> = comp.iter().map(|&k| points[k].clone()).collect();
        let mx = members.iter().map(|m| m.eps_mult).max().unwrap();
        let mut cands: Vec<&EpsilonPoint> =
            members.iter().filter(|m| m.eps_mult == mx).collect();
        cands.sort_by(|a, b| {
            if (a.residual - b.residual).abs() > REP_RESIDUAL_TIE {
                a.residual.partial_cmp(&b.residual).unwrap()
            } else {
                let ia = a.coords.0.im.abs() + a.coords.1.im.abs();
                let ib = b.coords.0.im.abs() + b.coords.1.im.abs();
                ia.partial_cmp(&ib).unwrap()
            }
        });
        out.push(Cluster {
            representative: cands[0].clone(),
            multiplicity: mx,
            members,
        });
    }
    out
}

/// Rationality from the genus budget: deficiency
/// `(d-1)(d-2) - sum r(r-1)` must be exactly zero.
///
/// # Errors
/// `GenusBudget` when the deficiency goes negative, which signals clustering
/// over-merge rather than an honest non-rational verdict.
pub fn is_eps_rational(clusters: &[Cluster], d: u32) -> Result<(bool, i64)> {
    let budget = (d as i64 - 1) * (d as i64 - 2);
    let spent: i64 = clusters
        .iter()
        .map(|c| c.multiplicity as i64 * (c.multiplicity as i64 - 1))
        .sum();
    let deficiency = budget - spent;
    if deficiency < 0 {
        return Err(CurveError::GenusBudget(deficiency));
    }
    Ok((deficiency == 0, deficiency))
}

fn point_json(p: (C64, C64)) -> serde_json::Value {
    json!([p.0.re, p.0.im, p.1.re, p.1.im])
}

/// The analyze report: strata, clusters, deficiency, verdict.
pub fn locus_json(
    locus: &SingularLocus,
    clusters: &[Cluster],
    deficiency: i64,
    rational: bool,
) -> serde_json::Value {
    json!({
        "strata": locus
            .strata
            .iter()
            .map(|s| s.iter().map(|&p| point_json(p)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "clusters": clusters
            .iter()
            .map(|c| {
                json!({
                    "representative": point_json(c.representative.coords),
                    "multiplicity": c.multiplicity,
                    "members": c
                        .members
                        .iter()
                        .map(|m| point_json(m.coords))
                        .collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
        "genus_deficiency": deficiency,
        "eps_rational": rational,
    })
}

// ---------------------------------------------------------------------------
