//! Shared reference curves for the integration suites.
//!
//! The degree 4..7 curves below are near-rational inputs with known
//! singularity structure; the printed point lists and the degree-4 output
//! coefficients are the published reference values the acceptance suite
//! reproduces. Coordinates are (re, im) pairs per axis.

#![allow(dead_code)]

/// Degree-4 curve with one ε-triple point split across seven stratum-1
/// points plus one stratum-2 point. Run at ε = 0.001.
pub const QUARTIC_TRIPLE: &str = "x^3y+xy^3+x^3+0.0005x^2+0.001y+0.0005";

/// Degree-5 curve, four clusters {2,2,2,3}. Run at ε = 0.01.
pub const QUINTIC: &str = "0.006521014507x^4+0.006521014507x^3y^2-0.3174429862x^3+0.006521014507x^4y+0.03536521618y^4+0.008903520149x^2y^3-0.1541837293y^3-0.3561209555x^2-0.2351465855y^2+0.01517989182xy^4+0.006177658243y^5+0.006521014507x^5-0.6503293396xy+0.006521014507x^3y-0.6965951291xy^2+0.1751383118x^2y^2+0.1487535027xy^3-1.x^2y+0.0000658688334";

/// Degree-6 curve, four clusters {2,3,3,3}. Run at ε = 0.004.
pub const SEXTIC: &str = "-0.5499999998x+0.9999999999y+0.00002677376171+0.006666666664x^2y^3+0.006666666664x^4y+0.3799999999xy^2-0.4133333332xy^3+0.006666666664x^5y-0.01999999999xy^5-0.1066666667x^3y-0.07000000000x^2y^4+0.8066934397xy-0.03333333332x^2y+0.03999999998x^3y^3+0.5466666665x^2y^2+0.1133333333x^3y^2+0.04999999998xy^4-0.5333333332y^3+0.006666666664x^6+0.006666666664x^4y^2+0.006666666664y^6-0.6700000000x^2-0.1766666666x^4+0.3599999999y^4-0.4699999998x^3-0.006666666664x^5-0.6066666665y^2-0.03999999998y^5";

/// Degree-7 curve, seven clusters {2,2,2,3,3,3,3}. Run at ε = 0.001.
pub const SEPTIC: &str = "0.005242164122x+0.0000006109092905+0.4234041949y-0.05219720755xy^4-0.1626221914x^3y^2-0.006150324474x^5y^2-0.009115378696y^3+0.01468749412x^3-0.1726592957y^4-0.005178781717x^5+0.0006102983812y^6+0.7056394692y^2+0.007271579029x^4-0.009049345878x^3y^4+0.02810421594y^5+0.01517536020x^4y^3-0.03335531981xy^3+0.07030423460x^3y^3+0.9999999999xy^2+0.02396026447x^5y+0.06359239287x^2y^3+0.0006102983812xy^5+0.06037915453x^4y-0.05961614786x^4y^2+0.1735938027x^2y^2+0.009673386920xy-0.1183998159x^3y-0.3997312415x^2y-0.01504641433x^2y^4-0.0002034043985x^7+0.0007152781730x^6y+0.009647777670xy^6-0.01996027092x^2-0.001858780227x^6-0.008636725103x^2y^5-0.002554427076y^7";

/// Degree-4 curve used for the distance study and the coefficient
/// cross-check. Run at ε = 0.01.
pub const ERROR_QUARTIC: &str = "1.000065y^2+1.00000028y^3+y^4+1.000065xy-11.49999972xy^2+xy^3+0.760065x^2+5.74000028x^2y+3.69x^2y^2-0.75999972x^3-3.12x^3y+0.19x^4+0.01x+0.01y";

/// Published output coefficients for `ERROR_QUARTIC`'s parametrization,
/// already at ∞-norm 1 up to the reference's own ~1e-4 noise.
pub const ERROR_QUARTIC_OUT: &str = "0.01642553x^4+0.06494377x^2+0.08804654y^2-0.06552116x^3+0.08169391y^3+0.091025077xy+0.49976135x^2y-0.99999999xy^2+0.08645018y^4+0.31900118x^2y^2-0.26972458x^3y+0.08645019xy^3-0.00001398+0.00078781x+0.0007408y";

/// Published ramification points: the d−3 simple base points used by the
/// reference runs of the degree-5, 6, and 7 curves.
pub const QUINTIC_RAM: [(f64, f64); 2] = [(3.437938023, 4.260660564), (7.712891931, 1.573609575)];
pub const SEXTIC_RAM: [(f64, f64); 3] = [
    (-1.330235522, 0.9268173641),
    (-1.979908167, 0.02661222172),
    (-2.700785807, -0.07757312293),
];
pub const SEPTIC_RAM: [(f64, f64); 4] = [
    (-2.972405737, -7.933174980),
    (23.79950366, 17.84891277),
    (-10.06218879, 1.300686562),
    (24.47385001, 17.37936091),
];

/// Published stratum-1 points of `QUARTIC_TRIPLE` at ε = 0.001,
/// as (re x, im x, re y, im y).
pub const QUARTIC_TRIPLE_S1: [(f64, f64, f64, f64); 7] = [
    (0.02131893405, 0.009609927603, 0.02442855631, 0.1171004584),
    (0.004713033954, 0.02355323617, -0.07491796596, -0.09032199938),
    (-0.01424770212, 0.01818884517, 0.1084633939, 0.05315246871),
    (-0.02443272919, 0.0, -0.1159479025, 0.0),
    (-0.01424770212, -0.01818884517, 0.1084633939, -0.05315246871),
    (0.004713033954, -0.02355323617, -0.07491796596, 0.09032199938),
    (0.02131893405, -0.009609927603, 0.02442855631, -0.1171004584),
];

/// Published stratum-2 point of `QUARTIC_TRIPLE`.
pub const QUARTIC_TRIPLE_S2: (f64, f64, f64, f64) = (-0.0001666666667, 0.0, 0.0, 0.0);

/// Published stratum-1 points of `QUINTIC` at ε = 0.01.
pub const QUINTIC_S1: [(f64, f64, f64, f64); 7] = [
    (-3.999854219, 0.0, 2.000094837, 0.0),
    (0.0, 0.0, 0.0, 0.0),
    (0.9998153818, 0.0, -2.999388343, 0.0),
    (-2.001190360, 0.05414244305, 3.001898191, -0.08039416354),
    (-1.980207988, 0.0, 3.002780607, 0.0),
    (-2.019931003, 0.0, 2.997118979, 0.0),
    (-2.001190360, -0.05414244305, 3.001898191, 0.08039416354),
];

/// Published stratum-2 point of `QUINTIC`.
pub const QUINTIC_S2: (f64, f64, f64, f64) = (-2.000000001, 0.0, 3.000000001, 0.0);

pub use approxcurve::C64;

pub fn cpt(p: (f64, f64, f64, f64)) -> (C64, C64) {
    (C64::new(p.0, p.1), C64::new(p.2, p.3))
}

/// Componentwise sup distance between two complex plane points.
pub fn pt_dev(a: (C64, C64), b: (C64, C64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx.re.abs().max(dx.im.abs()).max(dy.re.abs()).max(dy.im.abs())
}
