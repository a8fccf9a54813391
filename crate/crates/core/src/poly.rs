//! Sparse bivariate polynomials over complex coefficients, the homogeneous
//! ternary forms built from them, the text format used by the CLI, and the
//! elimination toolkit (Sylvester resultants, long division) the pipeline
//! rests on.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{CurveError, Result};

pub type C64 = Complex64;

/// Division / resultant variable selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Bivariate polynomial as a sparse exponent map `(i, j) -> coefficient` for
/// the monomial `x^i y^j`. Zero coefficients are never stored, so the empty
/// map is the zero polynomial.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), C64>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), C64)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in iter {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn from_real_terms<I: IntoIterator<Item = ((u32, u32), f64)>>(iter: I) -> Self {
        Self::from_terms(iter.into_iter().map(|(k, c)| (k, C64::new(c, 0.0))))
    }

    /// Accumulates `c` onto the `(i, j)` coefficient, dropping the term if the
    /// sum is exactly zero.
    pub fn add_term(&mut self, i: u32, j: u32, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(|| C64::new(0.0, 0.0));
        *e += c;
        if *e == C64::new(0.0, 0.0) {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> C64 {
        self.terms.get(&(i, j)).copied().unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max coefficient magnitude; 0 for the zero polynomial.
    pub fn inf_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Total degree; `None` is the zero polynomial's -infinity sentinel.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Unnormalized mixed partial of order `v = (a, b)`: each term picks up
    /// the falling-factorial factor `i(i-1)...(i-a+1) * j(j-1)...(j-b+1)`.
    pub fn partial(&self, v: (u32, u32)) -> BivarPoly {
        let (a, b) = v;
        let mut q = BivarPoly::zero();
        for (&(i, j), &c) in &self.terms {
            if i >= a && j >= b {
                let mut f = 1.0;
                for k in (i - a + 1)..=i {
                    f *= k as f64;
                }
                for k in (j - b + 1)..=j {
                    f *= k as f64;
                }
                q.add_term(i - a, j - b, c * f);
            }
        }
        q
    }

    pub fn eval(&self, x: C64, y: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (&(i, j), &c) in &self.terms {
            acc += c * x.powu(i) * y.powu(j);
        }
        acc
    }

    /// Magnitude scale of the evaluation: the same sum with every factor
    /// replaced by its absolute value. Used to form relative residuals.
    pub fn eval_scale(&self, x: C64, y: C64) -> f64 {
        let (ax, ay) = (x.norm(), y.norm());
        let mut acc = 0.0;
        for (&(i, j), &c) in &self.terms {
            acc += c.norm() * ax.powi(i as i32) * ay.powi(j as i32);
        }
        acc + 1e-300
    }

    /// Coefficient vector in `y` (ascending) after substituting `x = x0`.
    pub fn coeffs_y_at(&self, x0: C64) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.deg_y() as usize + 1];
        for (&(i, j), &c) in &self.terms {
            out[j as usize] += c * x0.powu(i);
        }
        out
    }

    /// Coefficient vector in `x` (ascending) after substituting `y = y0`.
    pub fn coeffs_x_at(&self, y0: C64) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.deg_x() as usize + 1];
        for (&(i, j), &c) in &self.terms {
            out[i as usize] += c * y0.powu(j);
        }
        out
    }

    /// The polynomial as a univariate coefficient vector, requiring the other
    /// variable to be absent.
    pub fn univar_coeffs(&self, var: Var) -> Result<Vec<C64>> {
        for &(i, j) in self.terms.keys() {
            let other = match var {
                Var::X => j,
                Var::Y => i,
            };
            if other > 0 {
                return Err(CurveError::Numeric(format!(
                    "polynomial is not univariate in {:?}",
                    var
                )));
            }
        }
        Ok(match var {
            Var::X => self.coeffs_x_at(C64::new(0.0, 0.0)),
            Var::Y => self.coeffs_y_at(C64::new(0.0, 0.0)),
        })
    }

    pub fn from_univar(coeffs: &[C64], var: Var) -> BivarPoly {
        let mut p = BivarPoly::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            match var {
                Var::X => p.add_term(k as u32, 0, c),
                Var::Y => p.add_term(0, k as u32, c),
            }
        }
        p
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let mut p = self.clone();
        for (&(i, j), &c) in &other.terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        let mut p = self.clone();
        for (&(i, j), &c) in &other.terms {
            p.add_term(i, j, -c);
        }
        p
    }

    pub fn scale(&self, c: C64) -> BivarPoly {
        BivarPoly::from_terms(self.terms.iter().map(|(&k, &v)| (k, v * c)))
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        let mut p = BivarPoly::zero();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                p.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        p
    }

    /// Drops terms below `tol_rel` times the infinity norm. Suppresses
    /// interpolation noise without touching tolerance-scale information.
    pub fn cleanup(&self, tol_rel: f64) -> BivarPoly {
        let cut = tol_rel * self.inf_norm();
        BivarPoly::from_terms(
            self.terms
                .iter()
                .filter(|(_, c)| c.norm() >= cut)
                .map(|(&k, &v)| (k, v)),
        )
    }

    /// Largest imaginary part over all coefficients.
    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Proper total degree at tolerance `eps`: `Some(d)` when some order-d
    /// derivative (a constant `i! j! c_ij`) exceeds `eps` times the norm.
    pub fn proper_degree(&self, eps: f64) -> Result<Option<u32>> {
        let d = self
            .total_degree()
            .ok_or_else(|| CurveError::Numeric("proper_degree of zero polynomial".into()))?;
        let cut = eps * self.inf_norm();
        for (&(i, j), &c) in &self.terms {
            if i + j == d {
                let scale = factorial(i) * factorial(j);
                if scale * c.norm() > cut {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    }

    pub fn parse(text: &str) -> Result<BivarPoly> {
        parse_poly(text)
    }

    pub fn to_text(&self) -> String {
        print_poly(self)
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

// ---------------------------------------------------------------------------
// Homogeneous ternary forms
// ---------------------------------------------------------------------------

/// Real-coefficient ternary form `sum c x^i y^j z^k`; the pencil pipeline only
/// ever builds real forms, so coefficients stay `f64`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TriPoly {
    terms: BTreeMap<(u32, u32, u32), f64>,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32, u32), f64)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for ((i, j, k), c) in iter {
            p.add_term(i, j, k, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, k: u32, c: f64) {
        if c == 0.0 {
            return;
        }
        let e = self.terms.entry((i, j, k)).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.terms.remove(&(i, j, k));
        }
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> f64 {
        self.terms.get(&(i, j, k)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &f64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn inf_norm(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).fold(0.0, f64::max)
    }

    pub fn abs_sum(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn max_deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j, _)| j).max().unwrap_or(0)
    }

    pub fn eval(&self, x: C64, y: C64, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (&(i, j, k), &c) in &self.terms {
            acc += x.powu(i) * y.powu(j) * z.powu(k) * c;
        }
        acc
    }

    pub fn add(&self, other: &TriPoly) -> TriPoly {
        let mut p = self.clone();
        for (&(i, j, k), &c) in &other.terms {
            p.add_term(i, j, k, c);
        }
        p
    }

    /// Unnormalized mixed partial of order `(a, b, c)` with falling-factorial
    /// coefficients, mirroring `BivarPoly::partial`.
    pub fn partial(&self, a: u32, b: u32, c: u32) -> TriPoly {
        let mut q = TriPoly::zero();
        for (&(i, j, k), &v) in &self.terms {
            if i >= a && j >= b && k >= c {
                let mut f = 1.0;
                for t in (i - a + 1)..=i {
                    f *= t as f64;
                }
                for t in (j - b + 1)..=j {
                    f *= t as f64;
                }
                for t in (k - c + 1)..=k {
                    f *= t as f64;
                }
                q.add_term(i - a, j - b, k - c, v * f);
            }
        }
        q
    }

    /// The `z = 1` slice.
    pub fn dehomogenize(&self) -> BivarPoly {
        let mut p = BivarPoly::zero();
        for (&(i, j, _), &c) in &self.terms {
            p.add_term(i, j, C64::new(c, 0.0));
        }
        p
    }
}

/// Degree-`d` homogenization of a real bivariate polynomial. Errors when `d`
/// is below the total degree or when coefficients carry imaginary parts.
pub fn homogenize(p: &BivarPoly, d: u32) -> Result<TriPoly> {
    let deg = p.total_degree().unwrap_or(0);
    if d < deg {
        return Err(CurveError::Numeric(format!(
            "homogenize: degree {} below total degree {}",
            d, deg
        )));
    }
    if p.max_imag() > 1e-12 * (1.0 + p.inf_norm()) {
        return Err(CurveError::Numeric(
            "homogenize: coefficients are not real".into(),
        ));
    }
    Ok(TriPoly::from_terms(
        p.terms().map(|(&(i, j), c)| ((i, j, d - i - j), c.re)),
    ))
}

/// Monomial exponents `(i, j, k)` of total degree `deg`, in the fixed basis
/// order the adjoint rows and kernel vectors share.
pub fn monomials(deg: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for i in 0..=deg {
        for j in 0..=(deg - i) {
            out.push((i, j, deg - i - j));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Coefficient-vector utilities
// ---------------------------------------------------------------------------

/// Trims trailing coefficients with magnitude at most `tol`; always keeps at
/// least the constant slot.
pub fn trim(v: &[C64], tol: f64) -> Vec<C64> {
    let mut k = v.len().saturating_sub(1);
    while k > 0 && v[k].norm() <= tol {
        k -= 1;
    }
    v[..=k].to_vec()
}

pub fn coeff_inf_norm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Horner evaluation of an ascending coefficient vector.
pub fn eval_coeffs(v: &[C64], t: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &c in v.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

pub fn convolve(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Sylvester resultants
// ---------------------------------------------------------------------------

/// Determinant of the Sylvester matrix of two ascending coefficient vectors.
/// Degenerate shapes collapse to the classical constant cases.
pub fn sylv_det(a: &[C64], b: &[C64]) -> Result<C64> {
    let a = trim(a, 0.0);
    let b = trim(b, 0.0);
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 && n == 0 {
        return Err(CurveError::Numeric(
            "resultant of two constants is undefined".into(),
        ));
    }
    if n == 0 {
        return Ok(b[0].powu(m as u32));
    }
    if m == 0 {
        return Ok(a[0].powu(n as u32));
    }
    let size = m + n;
    let mut mat = DMatrix::<C64>::zeros(size, size);
    for r in 0..n {
        for (s, &c) in a.iter().rev().enumerate() {
            mat[(r, r + s)] = c;
        }
    }
    for r in 0..m {
        for (s, &c) in b.iter().rev().enumerate() {
            mat[(n + r, r + s)] = c;
        }
    }
    Ok(mat.lu().determinant())
}

/// Forward discrete Fourier transform, direct O(N^2) evaluation. The sizes in
/// play stay below ~100 so no FFT machinery is warranted.
pub fn dft(samples: &[C64]) -> Vec<C64> {
    let n = samples.len();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (idx, &s) in samples.iter().enumerate() {
            let ang = -2.0 * std::f64::consts::PI * (k * idx) as f64 / n as f64;
            acc += s * C64::new(ang.cos(), ang.sin());
        }
        *o = acc;
    }
    out
}

/// Interpolated coefficients from unit-circle samples, with relative noise
/// cleanup at 1e-12 and trailing-zero trim.
fn interp_clean(vals: &[C64]) -> Vec<C64> {
    let n = vals.len() as f64;
    let mut co: Vec<C64> = dft(vals).into_iter().map(|c| c / n).collect();
    let mx = coeff_inf_norm(&co);
    if mx == 0.0 {
        return vec![C64::new(0.0, 0.0)];
    }
    for c in co.iter_mut() {
        if c.norm() < 1e-12 * mx {
            *c = C64::new(0.0, 0.0);
        }
    }
    trim(&co, 0.0)
}

fn res_coeffs(p: &BivarPoly, q: &BivarPoly, var: Var) -> Result<Vec<C64>> {
    // Eliminating `var` leaves a polynomial in the other variable whose degree
    // is bounded by the mixed Bezout count D.
    let (dp, dq, d_other) = match var {
        Var::Y => (
            p.deg_y() as usize,
            q.deg_y() as usize,
            p.deg_x() as usize * q.deg_y() as usize + q.deg_x() as usize * p.deg_y() as usize,
        ),
        Var::X => (
            p.deg_x() as usize,
            q.deg_x() as usize,
            p.deg_y() as usize * q.deg_x() as usize + q.deg_y() as usize * p.deg_x() as usize,
        ),
    };
    if dp == 0 && dq == 0 {
        return Err(CurveError::Numeric(
            "resultant: both inputs are degree 0 in the eliminated variable".into(),
        ));
    }
    let coeffs_at = |w: C64| -> Result<C64> {
        let (a, b) = match var {
            Var::Y => (p.coeffs_y_at(w), q.coeffs_y_at(w)),
            Var::X => (p.coeffs_x_at(w), q.coeffs_x_at(w)),
        };
        sylv_det(&a, &b)
    };
    if d_other == 0 {
        // Constant resultant: one sample determines it.
        return Ok(vec![coeffs_at(C64::new(0.37, 0.0))?]);
    }
    let n = d_other + 1;
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        vals.push(coeffs_at(C64::new(ang.cos(), ang.sin()))?);
    }
    Ok(interp_clean(&vals))
}

/// Resultant of `p` and `q` with respect to `var`, as a polynomial in the
/// remaining variable, via unit-circle evaluation-interpolation.
pub fn resultant(p: &BivarPoly, q: &BivarPoly, var: Var) -> Result<BivarPoly> {
    let co = res_coeffs(p, q, var)?;
    let remaining = match var {
        Var::Y => Var::X,
        Var::X => Var::Y,
    };
    Ok(BivarPoly::from_univar(&co, remaining))
}

// ---------------------------------------------------------------------------
// Division
// ---------------------------------------------------------------------------

/// Classical long division in `var`. The divisor's leading coefficient in
/// `var` must be a nonzero constant so each elimination step stays polynomial.
pub fn divide_in(
    dividend: &BivarPoly,
    divisor: &BivarPoly,
    var: Var,
) -> Result<(BivarPoly, BivarPoly)> {
    if divisor.is_zero() {
        return Err(CurveError::Numeric("division by zero polynomial".into()));
    }
    let dv = match var {
        Var::X => divisor.deg_x(),
        Var::Y => divisor.deg_y(),
    };
    // Leading coefficient as a polynomial in the other variable.
    let mut lead = BivarPoly::zero();
    for (&(i, j), &c) in divisor.terms.iter() {
        let (e, other) = match var {
            Var::X => (i, j),
            Var::Y => (j, i),
        };
        if e == dv {
            lead.add_term(if var == Var::X { 0 } else { other }, if var == Var::X { other } else { 0 }, c);
        }
    }
    if lead.len() != 1 || lead.coeff(0, 0) == C64::new(0.0, 0.0) {
        return Err(CurveError::Numeric(
            "divisor leading coefficient must be a nonzero constant in the division variable"
                .into(),
        ));
    }
    let lc = lead.coeff(0, 0);
    let mut rem = dividend.clone();
    let mut quot = BivarPoly::zero();
    loop {
        let dr = match var {
            Var::X => rem.deg_x(),
            Var::Y => rem.deg_y(),
        };
        if rem.is_zero() || dr < dv {
            break;
        }
        // All terms of rem at top var-degree dr move to the quotient.
        let mut step = BivarPoly::zero();
        for (&(i, j), &c) in rem.terms.iter() {
            let e = match var {
                Var::X => i,
                Var::Y => j,
            };
            if e == dr {
                let (qi, qj) = match var {
                    Var::X => (i - dv, j),
                    Var::Y => (i, j - dv),
                };
                step.add_term(qi, qj, c / lc);
            }
        }
        quot = quot.add(&step);
        rem = rem.sub(&step.mul(divisor));
        // Exact cancellation of the top block can leave round-off dust there;
        // clear it so the degree strictly drops.
        let mut cleaned = BivarPoly::zero();
        for (&(i, j), &c) in rem.terms.iter() {
            let e = match var {
                Var::X => i,
                Var::Y => j,
            };
            if e < dr {
                cleaned.add_term(i, j, c);
            }
        }
        rem = cleaned;
    }
    Ok((quot, rem))
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

fn parse_poly(text: &str) -> Result<BivarPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if compact.is_empty() {
        return Err(CurveError::Parse("empty polynomial text".into()));
    }
    // Split into signed terms; +/- binds a new term unless it follows an
    // exponent marker (scientific notation or '^').
    let bytes: Vec<char> = compact.chars().collect();
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (k, &ch) in bytes.iter().enumerate() {
        if (ch == '+' || ch == '-') && k > 0 {
            let prev = bytes[k - 1];
            if prev != 'e' && prev != 'E' && prev != '^' {
                terms.push(std::mem::take(&mut cur));
            }
        }
        cur.push(ch);
    }
    terms.push(cur);

    let mut p = BivarPoly::zero();
    for t in terms.iter().filter(|t| !t.is_empty()) {
        let (i, j, c) = parse_term(t)?;
        p.add_term(i, j, C64::new(c, 0.0));
    }
    Ok(p)
}

fn parse_term(term: &str) -> Result<(u32, u32, f64)> {
    let chars: Vec<char> = term.chars().collect();
    let mut pos = 0;
    let mut sign = 1.0;
    if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
        if chars[pos] == '-' {
            sign = -1.0;
        }
        pos += 1;
    }
    // Optional numeric coefficient: digits [. digits] | . digits, then an
    // optional exponent part with mandatory digits.
    let mut mantissa = String::new();
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        mantissa.push(chars[pos]);
        pos += 1;
    }
    if pos < chars.len() && chars[pos] == '.' {
        // A dot must belong to a number, not follow a variable.
        if pos == start && mantissa.is_empty() {
            mantissa.push('0');
        }
        mantissa.push('.');
        pos += 1;
        let mut frac = false;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            mantissa.push(chars[pos]);
            pos += 1;
            frac = true;
        }
        if !frac {
            // Trailing-dot literal like "1."; normalize for the float parser.
            mantissa.push('0');
        }
        if mantissa == "0.0" && pos == start + 1 {
            return Err(CurveError::Parse(format!("bare '.' in term '{}'", term)));
        }
    }
    let mut exponent = String::new();
    if !mantissa.is_empty() && pos < chars.len() && (chars[pos] == 'e' || chars[pos] == 'E') {
        let save = pos;
        pos += 1;
        let mut exp = String::from("e");
        if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            exp.push(chars[pos]);
            pos += 1;
        }
        let mut got = false;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            exp.push(chars[pos]);
            pos += 1;
            got = true;
        }
        if got {
            exponent = exp;
        } else {
            pos = save;
        }
    }
    let coeff = if mantissa.is_empty() {
        1.0
    } else {
        format!("{}{}", mantissa, exponent)
            .parse::<f64>()
            .map_err(|_| CurveError::Parse(format!("bad coefficient in term '{}'", term)))?
    };
    // Variable factors.
    let mut i = 0u32;
    let mut j = 0u32;
    let mut saw_var = false;
    while pos < chars.len() {
        let v = chars[pos];
        if v != 'x' && v != 'y' {
            return Err(CurveError::Parse(format!(
                "unexpected character '{}' in term '{}'",
                v, term
            )));
        }
        pos += 1;
        let mut e = 1u32;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let mut digits = String::new();
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                digits.push(chars[pos]);
                pos += 1;
            }
            e = digits
                .parse::<u32>()
                .map_err(|_| CurveError::Parse(format!("bad exponent in term '{}'", term)))?;
        }
        if v == 'x' {
            i += e;
        } else {
            j += e;
        }
        saw_var = true;
    }
    if mantissa.is_empty() && !saw_var {
        return Err(CurveError::Parse(format!("empty term '{}'", term)));
    }
    Ok((i, j, sign * coeff))
}

fn format_coeff(c: f64) -> String {
    let s = format!("{}", c);
    if s.contains('.') || s.contains('e') || s.contains('E') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{}.0", s)
    }
}

fn print_poly(p: &BivarPoly) -> String {
    if p.is_zero() {
        return "0.0".to_string();
    }
    let mut out = String::new();
    // Reverse map order prints higher x-powers first.
    for (idx, (&(i, j), &c)) in p.terms.iter().rev().enumerate() {
        let re = c.re;
        if idx == 0 {
            if re < 0.0 {
                out.push('-');
            }
        } else if re < 0.0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = format_coeff(re.abs());
        let _ = write!(out, "{}", mag);
        if i > 0 {
            if i == 1 {
                out.push_str("*x");
            } else {
                let _ = write!(out, "*x^{}", i);
            }
        }
        if j > 0 {
            if j == 1 {
                out.push_str("*y");
            } else {
                let _ = write!(out, "*y^{}", j);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
