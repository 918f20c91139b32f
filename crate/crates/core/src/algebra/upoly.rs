//! Dense univariate polynomials over a gcd domain.
//!
//! `UPoly<UPoly<BigInt>>` is `Z[y][x]` and `UPoly<UPoly<ModP>>` is
//! `GF(p)[y][x]`; gcds recurse through the coefficient ring via contents and
//! primitive pseudo-remainder sequences.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub(crate) trait GcdDomain: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `Some(q)` with `q * d == self`, or `None` if `d` does not divide.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    /// Any greatest common divisor (unique up to units). `gcd(0, 0) = 0`.
    fn gcd(&self, o: &Self) -> Self;
}

impl GcdDomain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
}

/// Element of `GF(p)` carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModP {
    pub v: u64,
    pub p: u64,
}

impl ModP {
    pub fn new(v: &BigInt, p: u64) -> Self {
        let r = v.mod_floor(&BigInt::from(p));
        ModP {
            v: u64::try_from(r).expect("residue fits in u64"),
            p,
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        // Fermat; p is prime.
        let mut base = self.v as u128;
        let mut e = self.p - 2;
        let m = self.p as u128;
        let mut acc: u128 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Some(ModP { v: acc as u64, p: self.p })
    }
}

impl GcdDomain for ModP {
    fn zero_like(&self) -> Self {
        ModP { v: 0, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        ModP { v: ((self.v as u128 + o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        ModP {
            v: ((self.v as u128 + self.p as u128 - o.v as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        ModP { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        ModP { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.mul(&i))
    }
    fn gcd(&self, o: &Self) -> Self {
        if self.v == 0 && o.v == 0 {
            self.zero_like()
        } else {
            ModP { v: 1, p: self.p }
        }
    }
}

/// Little-endian coefficient vector without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct UPoly<R> {
    pub c: Vec<R>,
}

impl<R: GcdDomain> UPoly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> &R {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    pub fn scale(&self, r: &R) -> Self {
        UPoly::new(self.c.iter().map(|a| a.mul(r)).collect())
    }

    /// `self * r * x^k`.
    fn shifted_scale(&self, r: &R, k: usize) -> Self {
        if self.c.is_empty() {
            return UPoly::zero();
        }
        let z = self.c[0].zero_like();
        let mut out = vec![z; k];
        out.extend(self.c.iter().map(|a| a.mul(r)));
        UPoly::new(out)
    }

    pub fn content(&self) -> R {
        let mut it = self.c.iter();
        let first = it.next().expect("content of zero polynomial").clone();
        it.fold(first, |g, a| g.gcd(a))
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        UPoly::new(
            self.c
                .iter()
                .map(|a| a.div_exact(&c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    #[cfg(test)]
    pub fn derivative_with(&self, from_usize: impl Fn(usize) -> R) -> Self {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&from_usize(i)))
                .collect(),
        )
    }

    /// Pseudo-remainder: some `lc(b)^e * self mod b`.
    fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let lb = b.lc().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc().clone();
            r = r.scale(&lb).sub(&b.shifted_scale(&lr, dr - db));
        }
        r
    }
}

impl<R: GcdDomain> GcdDomain for UPoly<R> {
    fn zero_like(&self) -> Self {
        UPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut out = long.c.clone();
        for (i, b) in short.c.iter().enumerate() {
            out[i] = out[i].add(b);
        }
        UPoly::new(out)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return UPoly::zero();
        }
        let z = self.c[0].zero_like();
        let mut out = vec![z; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(out)
    }

    fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|a| a.neg()).collect() }
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.c.is_empty() {
            return Some(UPoly::zero());
        }
        let z = self.c[0].zero_like();
        let mut q = vec![z; self.c.len().saturating_sub(dd).max(1)];
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let t = r.lc().div_exact(d.lc())?;
            r = r.sub(&d.shifted_scale(&t, dr - dd));
            q[dr - dd] = t;
        }
        Some(UPoly::new(q))
    }

    fn gcd(&self, o: &Self) -> Self {
        if self.c.is_empty() {
            return o.clone();
        }
        if o.c.is_empty() {
            return self.clone();
        }
        let cont = self.content().gcd(&o.content());
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.c.len() < b.c.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.c.is_empty() {
            let r = a.prem(&b);
            a = b;
            b = if r.c.is_empty() { r } else { r.primitive_part() };
        }
        a.scale(&cont)
    }
}

/// Square-free decomposition over `Z` (Yun): returns `(content, [(factor, multiplicity)])`
/// with primitive factors whose product, with multiplicities, is the primitive part of `f`.
#[cfg(test)]
pub(crate) fn square_free_decomposition(f: &UPoly<BigInt>) -> (BigInt, Vec<(UPoly<BigInt>, usize)>) {
    let content = num_traits::Signed::abs(&f.content());
    let f = f.primitive_part();
    let deriv = |p: &UPoly<BigInt>| p.derivative_with(BigInt::from);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return (content, out);
    }
    let fp = deriv(&f);
    let a0 = f.gcd(&fp);
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let c = fp.div_exact(&a0).expect("gcd divides f'");
    let mut d = c.sub(&deriv(&b));
    let mut mult = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let nb = b.div_exact(&a).expect("gcd divides b");
        let nc = d.div_exact(&a).expect("gcd divides d");
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.primitive_part(), mult));
        }
        d = nc.sub(&deriv(&nb));
        b = nb;
        mult += 1;
    }
    (content, out)
}

#[cfg(test)]
pub(crate) fn int_poly(c: &[i64]) -> UPoly<BigInt> {
    UPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
}
