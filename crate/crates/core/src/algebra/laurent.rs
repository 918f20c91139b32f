use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly::{GcdDomain as Domain, ModP, UPoly};
use super::{AlgebraError, CoeffField};

/// Largest exponent magnitude accepted by the parser.
const MAX_PARSED_EXPONENT: i64 = 1 << 31;

/// Sparse Laurent polynomial in `x` (and optionally `y`).
///
/// Coefficients are integers; over `GF(p)` they lie in `0..p`. Exponent keys
/// are `(a, b)` for `x^a y^b`, with `b = 0` when `nvars == 1`. No zero
/// coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    field: CoeffField,
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize, field: CoeffField) -> Self {
        assert!(nvars == 1 || nvars == 2, "nvars must be 1 or 2");
        LaurentPoly { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(c: i64, nvars: usize, field: CoeffField) -> Self {
        Self::monomial(BigInt::from(c), (0, 0), nvars, field)
    }

    pub fn monomial(c: BigInt, exp: (i64, i64), nvars: usize, field: CoeffField) -> Self {
        let mut p = Self::zero(nvars, field);
        assert!(nvars == 2 || exp.1 == 0, "y exponent in a one-variable polynomial");
        p.add_term(exp, c);
        p
    }

    /// `x^a`, or `x^a y^b` when `nvars == 2`.
    pub fn x_pow(a: i64, nvars: usize, field: CoeffField) -> Self {
        Self::monomial(BigInt::one(), (a, 0), nvars, field)
    }

    pub fn y_pow(b: i64, field: CoeffField) -> Self {
        Self::monomial(BigInt::one(), (0, b), 2, field)
    }

    pub fn from_terms<I>(nvars: usize, field: CoeffField, terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), BigInt)>,
    {
        let mut p = Self::zero(nvars, field);
        for (e, c) in terms {
            assert!(nvars == 2 || e.1 == 0, "y exponent in a one-variable polynomial");
            p.add_term(e, c);
        }
        p
    }

    /// One-variable polynomial `c[0] + c[1] x + ...`.
    pub fn from_coeffs(c: &[i64], field: CoeffField) -> Self {
        Self::from_terms(
            1,
            field,
            c.iter().enumerate().map(|(i, &v)| ((i as i64, 0), BigInt::from(v))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i64, b: i64) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    fn reduce_coeff(&self, c: BigInt) -> BigInt {
        match self.field {
            CoeffField::Prime(p) => c.mod_floor(&BigInt::from(p)),
            _ => c,
        }
    }

    fn add_term(&mut self, e: (i64, i64), c: BigInt) {
        let c = self.reduce_coeff(c);
        if Zero::is_zero(&c) {
            return;
        }
        let sum = match self.terms.get(&e) {
            Some(v) => self.reduce_coeff(v + c),
            None => c,
        };
        if Zero::is_zero(&sum) {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    fn check_same_ring(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.nvars != o.nvars || self.field != o.field {
            return Err(AlgebraError::DomainMismatch(self.ring_name(), o.ring_name()));
        }
        Ok(())
    }

    fn ring_name(&self) -> String {
        let vars = if self.nvars == 1 { "x" } else { "x,y" };
        format!("{}[{vars}]", self.field)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check_same_ring(o)?;
        let mut out = self.clone();
        for (&e, c) in &o.terms {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&o.neg_ref())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check_same_ring(o)?;
        let mut out = Self::zero(self.nvars, self.field);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &o.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.field);
        for (&e, c) in &self.terms {
            out.add_term(e, -c);
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars, self.field);
        for (&e, c) in &self.terms {
            out.add_term(e, c * k);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(1, self.nvars, self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(&(x, y), c)| ((x + a, y + b), c.clone())).collect(),
        }
    }

    /// Reinterprets integer coefficients in another coefficient domain.
    pub fn with_field(&self, field: CoeffField) -> Self {
        Self::from_terms(self.nvars, field, self.terms.iter().map(|(&e, c)| (e, c.clone())))
    }

    /// Minimal exponent per variable.
    pub fn min_exponents(&self) -> Result<(i64, i64), AlgebraError> {
        let a = self.terms.keys().map(|k| k.0).min().ok_or(AlgebraError::ZeroPolynomial)?;
        let b = self.terms.keys().map(|k| k.1).min().ok_or(AlgebraError::ZeroPolynomial)?;
        Ok((a, b))
    }

    pub fn max_exponents(&self) -> Result<(i64, i64), AlgebraError> {
        let a = self.terms.keys().map(|k| k.0).max().ok_or(AlgebraError::ZeroPolynomial)?;
        let b = self.terms.keys().map(|k| k.1).max().ok_or(AlgebraError::ZeroPolynomial)?;
        Ok((a, b))
    }

    /// Difference between largest and smallest exponent, per variable.
    pub fn degree_span(&self) -> Result<(i64, i64), AlgebraError> {
        let lo = self.min_exponents()?;
        let hi = self.max_exponents()?;
        Ok((hi.0 - lo.0, hi.1 - lo.1))
    }

    /// Gcd of the coefficients, nonnegative. Zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| Integer::gcd(&g, c))
    }

    /// Canonical representative of the unit class.
    ///
    /// Minimal exponents become 0. The coefficient at the lexicographically
    /// least exponent becomes positive over `Z`, and 1 over `GF(p)`. Over `Q`
    /// the content is divided out as well.
    pub fn normalize(&self) -> Result<Self, AlgebraError> {
        let (a, b) = self.min_exponents()?;
        let mut p = self.shift(-a, -b);
        let lead = p.terms.values().next().cloned().expect("nonzero");
        match self.field {
            CoeffField::Integers => {
                if lead.is_negative() {
                    p = p.neg_ref();
                }
            }
            CoeffField::Rationals => {
                let mut c = p.content();
                if lead.is_negative() {
                    c = -c;
                }
                for v in p.terms.values_mut() {
                    *v = &*v / &c;
                }
            }
            CoeffField::Prime(q) => {
                let pb = BigInt::from(q);
                let inv = super::field::mod_inverse(&lead, &pb).expect("nonzero residue");
                p = p.scale(&inv);
            }
        }
        Ok(p)
    }

    /// `f(x^-1, y^-1)`.
    pub fn substitute_inverse(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(&(a, b), c)| ((-a, -b), c.clone())).collect(),
        }
    }

    /// Palindromic up to a monomial: `normalize(f) == normalize(f(x^-1))`.
    pub fn is_reciprocal(&self) -> bool {
        match (self.normalize(), self.substitute_inverse().normalize()) {
            (Ok(a), Ok(b)) => a == b,
            _ => true,
        }
    }

    /// `f(x, x^s)` as a one-variable polynomial.
    pub fn substitute_y_power(&self, s: i64) -> Self {
        Self::from_terms(
            1,
            self.field,
            self.terms.iter().map(|(&(a, b), c)| ((a + s * b, 0), c.clone())),
        )
    }

    /// Evaluation at complex points; `y` is ignored for one variable.
    pub fn eval_c64(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms.iter().fold(Complex64::zero(), |acc, (&(a, b), c)| {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc + complex_pow(x, a) * complex_pow(y, b) * cf
        })
    }

    /// Integer value at `x = y = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.reduce_coeff(self.terms.values().sum())
    }

    /// Coefficients of `x^-a f` in ascending order, `a` the minimal exponent.
    /// One-variable only.
    pub fn dense_coeffs(&self) -> Result<(i64, Vec<BigInt>), AlgebraError> {
        assert_eq!(self.nvars, 1, "dense_coeffs needs one variable");
        let (lo, _) = self.min_exponents()?;
        let (hi, _) = self.max_exponents()?;
        let mut v = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (&(a, _), c) in &self.terms {
            v[(a - lo) as usize] = c.clone();
        }
        Ok((lo, v))
    }

    /// Normalized gcd. `gcd(0, 0) = 0`; `gcd(f, 0) = normalize(f)`.
    pub fn gcd(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check_same_ring(o)?;
        if self.is_zero() && o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return o.normalize();
        }
        if o.is_zero() {
            return self.normalize();
        }
        let g = match self.field {
            CoeffField::Prime(p) => {
                let conv = |c: &BigInt| ModP::new(c, p);
                let (a, _) = self.to_nested(conv);
                let (b, _) = o.to_nested(conv);
                Self::from_nested(&Domain::gcd(&a, &b), (0, 0), self.nvars, self.field, |m| BigInt::from(m.v))
            }
            _ => {
                let (a, _) = self.to_nested(BigInt::clone);
                let (b, _) = o.to_nested(BigInt::clone);
                Self::from_nested(&Domain::gcd(&a, &b), (0, 0), self.nvars, self.field, BigInt::clone)
            }
        };
        g.normalize()
    }

    /// Exact quotient `self / d` in the Laurent ring.
    pub fn div_exact(&self, d: &Self) -> Result<Self, AlgebraError> {
        self.check_same_ring(d)?;
        if d.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (ma, mb) = (self.min_exponents()?, d.min_exponents()?);
        let shift = (ma.0 - mb.0, ma.1 - mb.1);
        let q = match self.field {
            CoeffField::Prime(p) => {
                let conv = |c: &BigInt| ModP::new(c, p);
                let (a, _) = self.to_nested(conv);
                let (b, _) = d.to_nested(conv);
                let q = Domain::div_exact(&a, &b).ok_or(AlgebraError::InexactDivision)?;
                Self::from_nested(&q, shift, self.nvars, self.field, |m| BigInt::from(m.v))
            }
            _ => {
                let (a, _) = self.to_nested(BigInt::clone);
                let (b, _) = d.to_nested(BigInt::clone);
                let q = Domain::div_exact(&a, &b).ok_or(AlgebraError::InexactDivision)?;
                Self::from_nested(&q, shift, self.nvars, self.field, BigInt::clone)
            }
        };
        Ok(q)
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.div_exact(self).is_ok()
    }

    /// Dense `R[y][x]` image of `x^-a y^-b f`, with `(a, b)` the minimal exponents.
    fn to_nested<R: Domain>(&self, conv: impl Fn(&BigInt) -> R) -> (UPoly<UPoly<R>>, (i64, i64)) {
        let (a0, b0) = self.min_exponents().expect("nonzero");
        let (a1, b1) = self.max_exponents().expect("nonzero");
        let zero = conv(&BigInt::zero());
        let mut rows: Vec<Vec<R>> =
            vec![vec![zero; (b1 - b0) as usize + 1]; (a1 - a0) as usize + 1];
        for (&(a, b), c) in &self.terms {
            rows[(a - a0) as usize][(b - b0) as usize] = conv(c);
        }
        (UPoly::new(rows.into_iter().map(UPoly::new).collect()), (a0, b0))
    }

    fn from_nested<R: Domain>(
        p: &UPoly<UPoly<R>>,
        shift: (i64, i64),
        nvars: usize,
        field: CoeffField,
        back: impl Fn(&R) -> BigInt,
    ) -> Self {
        let mut out = Self::zero(nvars, field);
        for (i, row) in p.c.iter().enumerate() {
            for (j, c) in row.c.iter().enumerate() {
                if !Domain::is_zero(c) {
                    out.add_term((i as i64 + shift.0, j as i64 + shift.1), back(c));
                }
            }
        }
        out
    }

    /// Parses with coefficients in `field`; the variable count is 2 iff `y` occurs.
    pub fn parse_in(s: &str, field: CoeffField) -> Result<Self, AlgebraError> {
        let terms = parse_terms(s)?;
        let nvars = if terms.iter().any(|(e, _)| e.1 != 0) || s.contains('y') { 2 } else { 1 };
        Ok(Self::from_terms(nvars, field, terms))
    }

    /// Promotes a one-variable polynomial to two variables.
    pub fn to_two_vars(&self) -> Self {
        LaurentPoly { nvars: 2, field: self.field, terms: self.terms.clone() }
    }
}

fn complex_pow(z: Complex64, k: i64) -> Complex64 {
    match k {
        0 => Complex64::one(),
        _ => z.powi(k.clamp(i32::MIN as i64, i32::MAX as i64) as i32),
    }
}

/// `((x exponent, y exponent), coefficient)` per parsed term.
type Terms = Vec<((i64, i64), BigInt)>;

fn parse_terms(s: &str) -> Result<Terms, AlgebraError> {
    let err = |pos: usize, msg: &str| AlgebraError::PolySyntax { pos, msg: msg.to_string() };
    let bytes = s.as_bytes();
    // Split at top-level signs; a sign right after '^' belongs to an exponent.
    let mut pieces: Vec<(usize, bool, &str)> = Vec::new();
    let mut start = 0usize;
    let mut negative = false;
    let mut i = 0usize;
    let mut prev_sig: Option<u8> = None;
    while i < bytes.len() {
        let ch = bytes[i];
        if (ch == b'+' || ch == b'-') && prev_sig != Some(b'^') {
            let body = &s[start..i];
            if body.trim().is_empty() {
                if prev_sig.is_some() {
                    return Err(err(i, "dangling operator"));
                }
            } else {
                pieces.push((start, negative, body));
            }
            negative = ch == b'-';
            start = i + 1;
        }
        if !ch.is_ascii_whitespace() {
            prev_sig = Some(ch);
        }
        i += 1;
    }
    let tail = &s[start..];
    if tail.trim().is_empty() {
        return Err(err(s.len(), "expected a term"));
    }
    pieces.push((start, negative, tail));

    let mut out = Vec::with_capacity(pieces.len());
    for (off, neg, body) in pieces {
        let mut coeff = BigInt::one();
        let mut exp = (0i64, 0i64);
        let mut pos = off;
        for factor in body.split('*') {
            let f = factor.trim();
            let fpos = pos + (factor.len() - factor.trim_start().len());
            pos += factor.len() + 1;
            if f.is_empty() {
                return Err(err(fpos, "empty factor"));
            }
            let first = f.as_bytes()[0];
            if first.is_ascii_digit() {
                if !f.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(err(fpos, "malformed integer"));
                }
                coeff *= f.parse::<BigInt>().map_err(|_| err(fpos, "malformed integer"))?;
            } else if first == b'x' || first == b'y' {
                let rest = f[1..].trim_start();
                let e: i64 = if rest.is_empty() {
                    1
                } else {
                    let digits = rest
                        .strip_prefix('^')
                        .ok_or_else(|| err(fpos + 1, "expected '^'"))?
                        .trim();
                    let v: i64 = digits.parse().map_err(|_| err(fpos + 1, "malformed exponent"))?;
                    if v.unsigned_abs() > MAX_PARSED_EXPONENT.unsigned_abs() {
                        return Err(err(fpos + 1, "exponent out of range"));
                    }
                    v
                };
                let slot = if first == b'x' { &mut exp.0 } else { &mut exp.1 };
                *slot += e;
                if slot.abs() > MAX_PARSED_EXPONENT {
                    return Err(err(fpos, "exponent out of range"));
                }
            } else {
                return Err(err(fpos, "unexpected character"));
            }
        }
        out.push((exp, if neg { -coeff } else { coeff }));
    }
    Ok(out)
}

impl FromStr for LaurentPoly {
    type Err = AlgebraError;

    /// Integer coefficients.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LaurentPoly::parse_in(s, CoeffField::Integers)
    }
}

fn fmt_monomial(a: i64, b: i64) -> String {
    let part = |v: &str, e: i64| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    [part("x", a), part("y", b)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

/// Terms by ascending total degree, ties in lexicographic order.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(&(a, b), _)| (a + b, a, b));
        for (idx, (&(a, b), c)) in keys.into_iter().enumerate() {
            let mono = fmt_monomial(a, b);
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (idx, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) | (_, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, "+{body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.checked_add(o).expect("ring mismatch in +")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(o).expect("ring mismatch in -")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(o).expect("ring mismatch in *")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoeffField = CoeffField::Integers;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn product_of_conjugate_factors() {
        let f = &p("x-1") * &p("x^-1-1");
        assert_eq!(f, p("2-x-x^-1"));
    }

    #[test]
    fn display_order_and_roundtrip() {
        let f = p("x^2 - 2*x + 1");
        assert_eq!(f.to_string(), "1-2*x+x^2");
        let g = p("4-x-x^-1-y-y^-1");
        assert_eq!(g.to_string(), "-x^-1-y^-1+4-y-x");
        assert_eq!(p(&g.to_string()), g);
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("3*x*y^-2").to_string(), "3*x*y^-2");
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!("x^".parse::<LaurentPoly>(), Err(AlgebraError::PolySyntax { .. })));
        assert!("1+".parse::<LaurentPoly>().is_err());
        assert!("2*z".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("x^99999999999".parse::<LaurentPoly>().is_err());
        assert!("x^-9223372036854775808".parse::<LaurentPoly>().is_err());
        assert!(matches!(
            "1++x".parse::<LaurentPoly>(),
            Err(AlgebraError::PolySyntax { pos: 2, .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p("2-x-x^-1").normalize().unwrap(), p("1-2*x+x^2"));
        assert_eq!(p("x^-3").normalize().unwrap(), p("1"));
        let shifted = &p("x^-1-4+x") * &p("x^-3");
        assert_eq!(shifted.normalize().unwrap(), p("1-4*x+x^2"));
        assert!(LaurentPoly::zero(1, Z).normalize().is_err());
        // over GF(3) the least coefficient becomes 1
        let g = p("2-x").with_field(CoeffField::Prime(3));
        assert_eq!(g.normalize().unwrap().to_string(), "1+x");
        // over Q content is a unit
        let q = p("6-2*x").with_field(CoeffField::Rationals);
        assert_eq!(q.normalize().unwrap().to_string(), "3-x");
    }

    #[test]
    fn degree_span_per_variable() {
        assert_eq!(p("4-x-x^-1-y-y^-1").degree_span().unwrap(), (2, 2));
        assert_eq!(p("7").degree_span().unwrap(), (0, 0));
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = &p("x^2-2*x+1") * &p("1-4*x+x^2");
        let b = &p("x-1") * &p("x+3");
        assert_eq!(a.gcd(&b).unwrap(), p("x-1").normalize().unwrap());
        let q = a.div_exact(&p("x^-1-1")).unwrap();
        assert_eq!(&q * &p("x^-1-1"), a);
        assert!(a.div_exact(&p("x+1")).is_err());
    }

    #[test]
    fn two_variable_gcd() {
        let f = p("x+y");
        let a = &f * &p("x-y^2");
        let b = &f * &p("3+x*y");
        assert_eq!(a.gcd(&b).unwrap(), f);
    }

    #[test]
    fn gf2_reduction() {
        let f = p("1-2*x+x^2").with_field(CoeffField::Prime(2));
        assert_eq!(f.to_string(), "1+x^2");
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = p("x");
        let b = p("y");
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&a.with_field(CoeffField::Prime(2))).is_err());
    }

    #[test]
    fn substitution_and_evaluation() {
        let f = p("4-x-x^-1-y-y^-1");
        assert_eq!(f.substitute_y_power(1), p("4-2*x-2*x^-1"));
        let v = f.eval_c64(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0));
        assert!((v.re - 4.0).abs() < 1e-12);
        assert_eq!(f.eval_at_one(), BigInt::zero());
        assert!(f.is_reciprocal());
        assert!(!p("1+2*x").is_reciprocal());
    }
}
