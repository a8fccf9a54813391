//! Approximate geometry of real plane algebraic curves given with limited
//! coefficient accuracy: tolerance-aware singularity detection, clustering,
//! rationality, rational parametrization through an adjoint pencil, and an
//! empirical curve-distance estimator.

pub mod curvegen;
pub mod epsgeom;
pub mod error;
pub mod errordist;
pub mod numeric;
pub mod param;
pub mod pencil;
pub mod plot;
pub mod poly;
pub mod singular;

pub use error::{CurveError, Result};
pub use numeric::{nullspace, solve_system, univar_roots, PrecisionContext};
pub use poly::{eval_coeffs, homogenize, resultant, BivarPoly, TriPoly, Var, C64};

pub use epsgeom::{
    classify, eps_multiplicity, is_eps_point, is_ramification, purity, r_in, r_out, weight,
    EpsilonPoint,
};
pub use singular::{
    cluster_decomposition, eps_singular_locus, is_eps_rational, locus_json, Cluster, SingularLocus,
};

pub use param::{
    check_assumptions, implicitize, param_json, parametrize, verify_infinity, Parametrization,
    SimplePointRule,
};
pub use pencil::{
    adjoint_system, delta_perturb, fix_infinity, points_at_infinity, restrict_to_pencil,
    simple_points, Pencil,
};

pub use curvegen::{base_form, family, perturbed_curve, GeneratedCurve};
pub use errordist::{
    distance_csv, distance_json, distance_stats, min_line_distance, sample_curve_points,
    DistanceReport,
};
