//! Logarithmic Mahler measure of integer Laurent polynomials in one or two
//! variables.
//!
//! Both entry points first split `f` into square-free layers along the main
//! variable: `g_0 = f`, `g_{k+1} = gcd(g_k, ∂g_k)`, `s_k = g_k / g_{k+1}`.
//! Each `s_k` is square-free and `m(f) = Σ m(s_k) + m(g_K)` with `g_K` free of
//! the main variable, so the root finder never meets a repeated root.

mod roots;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, CoeffField, LaurentPoly};
use roots::{find_roots, RootFailure};

/// Roots this close to the unit circle contribute nothing.
pub const UNIT_CIRCLE_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MahlerError {
    #[error("Mahler measure of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("expected a polynomial in {expected} variable(s), got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("coefficients must be integers, got field {0}")]
    NotIntegral(String),
    #[error("root refinement failed: relative residual {0:e}")]
    Residual(f64),
    #[error("roots disagree with coefficient identities: relative gap {0:e}")]
    Vieta(f64),
    #[error("fiber at theta = {0} is singular")]
    SingularFiber(f64),
    #[error("fiber count must be an even number >= 2, got {0}")]
    BadFiberCount(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<RootFailure> for MahlerError {
    fn from(r: RootFailure) -> Self {
        match r {
            RootFailure::Residual(v) => MahlerError::Residual(v),
            RootFailure::Vieta(v) => MahlerError::Vieta(v),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MahlerMethod {
    JensenRoots,
    Fiberwise,
}

impl MahlerMethod {
    pub fn name(self) -> &'static str {
        match self {
            MahlerMethod::JensenRoots => "jensen-roots",
            MahlerMethod::Fiberwise => "fiberwise",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MahlerResult {
    /// Natural logarithm.
    pub value: f64,
    pub method: MahlerMethod,
    pub error_estimate: f64,
    /// Fibers on the finest grid; 0 for one variable.
    pub samples: usize,
}

fn integral(f: &LaurentPoly) -> Result<LaurentPoly, MahlerError> {
    if f.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    match f.field() {
        CoeffField::Prime(_) => Err(MahlerError::NotIntegral(f.field().to_string())),
        _ => Ok(f.with_field(CoeffField::Integers)),
    }
}

fn is_y_free(f: &LaurentPoly) -> bool {
    f.terms().all(|(&(_, b), _)| b == 0)
}

fn ln_abs(c: &BigInt) -> f64 {
    crate::spanning::ln_big(&c.abs())
}

/// `∂f/∂x` (`var = 0`) or `∂f/∂y` (`var = 1`) of `f` shifted to nonnegative exponents.
fn derivative(f: &LaurentPoly, var: usize) -> Result<LaurentPoly, MahlerError> {
    let (a0, b0) = f.min_exponents()?;
    let terms = f.terms().filter_map(|(&(a, b), c)| {
        let (a, b) = (a - a0, b - b0);
        let k = if var == 0 { a } else { b };
        if k == 0 {
            return None;
        }
        let e = if var == 0 { (a - 1, b) } else { (a, b - 1) };
        Some((e, c * BigInt::from(k)))
    });
    Ok(LaurentPoly::from_terms(f.nvars(), f.field(), terms))
}

/// Square-free layers `s_k` of `f` in variable `var`, and the remaining
/// factor free of `var`.
fn square_free_layers(f: &LaurentPoly, var: usize) -> Result<(Vec<LaurentPoly>, LaurentPoly), MahlerError> {
    let free = |g: &LaurentPoly| {
        if var == 0 {
            g.terms().all(|(&(a, _), _)| a == g.min_exponents().map(|m| m.0).unwrap_or(0))
        } else {
            g.terms().all(|(&(_, b), _)| b == g.min_exponents().map(|m| m.1).unwrap_or(0))
        }
    };
    let mut layers = Vec::new();
    let mut g = f.normalize()?;
    while !free(&g) {
        let d = derivative(&g, var)?;
        let h = g.gcd(&d)?;
        layers.push(g.div_exact(&h)?);
        g = h;
    }
    Ok((layers, g))
}

fn to_c64(c: &BigInt) -> Complex64 {
    Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
}

/// `Σ log⁺|λ|` over the roots of `Σ c[k] z^k`, and the last Newton correction.
fn sum_log_plus(c: &[Complex64]) -> Result<(f64, f64), MahlerError> {
    let r = find_roots(c)?;
    let s = r
        .roots
        .iter()
        .map(|z| z.norm())
        .filter(|&m| m > 1.0 + UNIT_CIRCLE_TOL)
        .map(f64::ln)
        .sum();
    Ok((s, r.last_correction))
}

/// Jensen's formula `m(f) = log|c_s| + Σ log max(1, |λ_i|)`.
pub fn mahler_1var(f: &LaurentPoly) -> Result<MahlerResult, MahlerError> {
    let f = integral(f)?;
    if f.nvars() == 2 && !is_y_free(&f) {
        return Err(MahlerError::VariableCount { expected: 1, got: 2 });
    }
    let f = if f.nvars() == 2 { f.substitute_y_power(0) } else { f };
    let (layers, rest) = square_free_layers(&f, 0)?;
    let mut value = ln_abs(&rest.coeff(rest.min_exponents()?.0, 0));
    let mut err = 0.0f64;
    for s in &layers {
        let (_, dense) = s.dense_coeffs()?;
        let c: Vec<Complex64> = dense.iter().map(to_c64).collect();
        let lead = dense.last().expect("nonempty");
        let (sum, corr) = sum_log_plus(&c)?;
        value += ln_abs(lead) + sum;
        err += corr * (dense.len() - 1) as f64;
    }
    Ok(MahlerResult { value, method: MahlerMethod::JensenRoots, error_estimate: err + 1e-15, samples: 0 })
}

/// Fixed-shape pairwise summation, independent of thread count.
fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// Coefficients `c_b(x)` of a two-variable polynomial in `y`, ascending in `b`.
fn y_coefficients(s: &LaurentPoly) -> Result<Vec<LaurentPoly>, MahlerError> {
    let (_, b0) = s.min_exponents()?;
    let (_, b1) = s.max_exponents()?;
    let mut out = vec![LaurentPoly::zero(1, CoeffField::Integers); (b1 - b0 + 1) as usize];
    for (&(a, b), c) in s.terms() {
        let m = LaurentPoly::monomial(c.clone(), (a, 0), 1, CoeffField::Integers);
        let k = (b - b0) as usize;
        out[k] = &out[k] + &m;
    }
    Ok(out)
}

/// `Σ log⁺|y|` over the roots of the fiber at `x = e^{2πiθ}`, or `None` when
/// the leading coefficient nearly vanishes there.
fn fiber_value(coeffs: &[LaurentPoly], theta: f64) -> Result<Option<f64>, MahlerError> {
    let x = Complex64::from_polar(1.0, 2.0 * PI * theta);
    let one = Complex64::new(1.0, 0.0);
    let c: Vec<Complex64> = coeffs.iter().map(|p| p.eval_c64(x, one)).collect();
    let scale: f64 = coeffs.iter().map(|p| p.terms().map(|(_, v)| v.to_f64().unwrap_or(f64::NAN).abs()).sum::<f64>()).sum();
    let n = c.len() - 1;
    if c[n].norm() < 1e-12 * scale || c[0].norm() < 1e-12 * scale {
        return Ok(None);
    }
    Ok(Some(sum_log_plus(&c)?.0))
}

fn fiber_average(coeffs: &[LaurentPoly], n: usize) -> Result<f64, MahlerError> {
    let h = 1.0 / n as f64;
    let vals: Result<Vec<f64>, MahlerError> = (0..n)
        .into_par_iter()
        .map(|j| {
            let theta = (j as f64 + 0.5) * h;
            if let Some(v) = fiber_value(coeffs, theta)? {
                return Ok(v);
            }
            let shifted = theta + 0.5 * h;
            fiber_value(coeffs, shifted)?.ok_or(MahlerError::SingularFiber(theta))
        })
        .collect();
    Ok(pairwise_sum(&vals?) * h)
}

/// Fiberwise Jensen quadrature on a midpoint grid of `fibers` points in `θ₁`.
///
/// For a square-free layer `s`, `m(s) = m(lc_y s) + ∫ Σ log⁺|y_j(θ)| dθ`; the
/// first term is exact. The estimate compares the `fibers` and `fibers / 2`
/// grids.
pub fn mahler_2var(f: &LaurentPoly, fibers: usize) -> Result<MahlerResult, MahlerError> {
    let f = integral(f)?;
    if fibers < 2 || !fibers.is_multiple_of(2) {
        return Err(MahlerError::BadFiberCount(fibers));
    }
    if f.nvars() != 2 {
        return Err(MahlerError::VariableCount { expected: 2, got: f.nvars() });
    }
    let (layers, rest) = square_free_layers(&f, 1)?;
    let rest1 = rest.substitute_y_power(0);
    let base = mahler_1var(&rest1)?;
    let mut fine = base.value;
    let mut coarse = base.value;
    let mut err = base.error_estimate;
    for s in &layers {
        let coeffs = y_coefficients(s)?;
        let lead = mahler_1var(coeffs.last().expect("nonempty"))?;
        fine += lead.value + fiber_average(&coeffs, fibers)?;
        coarse += lead.value + fiber_average(&coeffs, fibers / 2)?;
        err += lead.error_estimate;
    }
    err += (fine - coarse).abs() / 3.0;
    Ok(MahlerResult { value: fine, method: MahlerMethod::Fiberwise, error_estimate: err, samples: fibers })
}

/// Dispatches on the variables actually present.
pub fn mahler(f: &LaurentPoly, fibers: usize) -> Result<MahlerResult, MahlerError> {
    if f.nvars() == 1 || is_y_free(f) {
        mahler_1var(f)
    } else {
        mahler_2var(f, fibers)
    }
}

/// `(m(f(x, x^s)), m(f(x, y)))`; the first tends to the second as `s` grows.
pub fn mahler_limit_check(
    f: &LaurentPoly,
    s: i64,
    fibers: usize,
) -> Result<(MahlerResult, MahlerResult), MahlerError> {
    if f.nvars() != 2 {
        return Err(MahlerError::VariableCount { expected: 2, got: f.nvars() });
    }
    let sub = f.substitute_y_power(s);
    if sub.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    Ok((mahler_1var(&sub)?, mahler(f, fibers)?))
}
