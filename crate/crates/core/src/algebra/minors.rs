use std::fmt;

use num_traits::{One, Signed};
use rayon::prelude::*;

use super::{AlgebraError, CoeffField, LaurentPoly};

/// Square or rectangular matrix of Laurent polynomials sharing one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    field: CoeffField,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize, field: CoeffField) -> Self {
        LaurentMatrix {
            rows,
            cols,
            nvars,
            field,
            data: vec![LaurentPoly::zero(nvars, field); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let first = rows.iter().flatten().next();
        let (nvars, field) = first.map_or((1, CoeffField::Integers), |p| (p.nvars(), p.field()));
        for p in rows.iter().flatten() {
            if p.nvars() != nvars || p.field() != field {
                return Err(AlgebraError::DomainMismatch(
                    format!("{field}/{nvars}"),
                    format!("{}/{}", p.field(), p.nvars()),
                ));
            }
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::NotSquare { rows: r, cols: c });
        }
        Ok(LaurentMatrix { rows: r, cols: c, nvars, field, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert!(v.nvars() == self.nvars && v.field() == self.field, "ring mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let data: Vec<_> = self.data.iter().map(f).collect();
        let (nvars, field) = data.first().map_or((self.nvars, self.field), |p| (p.nvars(), p.field()));
        LaurentMatrix { rows: self.rows, cols: self.cols, nvars, field, data }
    }

    pub fn transpose(&self) -> Self {
        let mut t = LaurentMatrix::zeros(self.cols, self.rows, self.nvars, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entrywise `x -> x^-1` (and `y -> y^-1`).
    pub fn substitute_inverse(&self) -> Self {
        self.map(LaurentPoly::substitute_inverse)
    }

    pub fn with_field(&self, field: CoeffField) -> Self {
        self.map(|p| p.with_field(field))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = LaurentMatrix::zeros(rows.len(), cols.len(), self.nvars, self.field);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Exact determinant: cofactor expansion up to 4x4, fraction-free
/// elimination with exact division beyond.
pub fn det_laurent(m: &LaurentMatrix) -> Result<LaurentPoly, AlgebraError> {
    if m.rows != m.cols {
        return Err(AlgebraError::NotSquare { rows: m.rows, cols: m.cols });
    }
    if m.rows <= 4 {
        Ok(cofactor(m, &(0..m.rows).collect::<Vec<_>>(), 0))
    } else {
        bareiss(m)
    }
}

fn cofactor(m: &LaurentMatrix, cols: &[usize], row: usize) -> LaurentPoly {
    if cols.is_empty() {
        return LaurentPoly::constant(1, m.nvars, m.field);
    }
    let mut acc = LaurentPoly::zero(m.nvars, m.field);
    for (idx, &c) in cols.iter().enumerate() {
        let e = m.get(row, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * &cofactor(m, &rest, row + 1);
        acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn bareiss(m: &LaurentMatrix) -> Result<LaurentPoly, AlgebraError> {
    let n = m.rows;
    let mut a: Vec<Vec<LaurentPoly>> =
        (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut negate = false;
    let mut prev = LaurentPoly::constant(1, m.nvars, m.field);
    for k in 0..n - 1 {
        // Sparsest nonzero pivot keeps intermediate polynomials small.
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].num_terms());
        let Some(p) = pivot else {
            return Ok(LaurentPoly::zero(m.nvars, m.field));
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = &(&row[j] * &pivot_row[k]) - &(&lead * &pivot_row[j]);
                row[j] = num.div_exact(&prev)?;
            }
            row[k] = LaurentPoly::zero(m.nvars, m.field);
        }
        prev = pivot_row[k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `Δ_k`: normalized gcd of all `(n-k)`-minors, computed over `field`.
///
/// Zero when every minor vanishes. Minors are evaluated in parallel and folded
/// in enumeration order, so the result does not depend on the thread count.
pub fn elementary_divisor(
    m: &LaurentMatrix,
    k: usize,
    field: CoeffField,
) -> Result<LaurentPoly, AlgebraError> {
    if m.rows != m.cols {
        return Err(AlgebraError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if k >= n {
        return Err(AlgebraError::IndexOutOfRange { k, n });
    }
    let m = m.with_field(field);
    let size = n - k;
    let sets = subsets(n, size);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> =
        sets.iter().flat_map(|r| sets.iter().map(move |c| (r, c))).collect();
    let dets: Vec<LaurentPoly> = pairs
        .par_iter()
        .map(|(r, c)| det_laurent(&m.submatrix(r, c)))
        .collect::<Result<_, _>>()?;
    let mut g = LaurentPoly::zero(m.nvars, m.field);
    for d in &dets {
        if d.is_zero() {
            continue;
        }
        g = g.gcd(d)?;
        if is_unit(&g) {
            break;
        }
    }
    Ok(g)
}

fn is_unit(g: &LaurentPoly) -> bool {
    g.num_terms() == 1 && g.is_constant() && {
        let c = g.coeff(0, 0);
        match g.field() {
            CoeffField::Integers => c.abs().is_one(),
            _ => true,
        }
    }
}

/// First `k` with `Δ_k != 0`, paired with `Δ_k`. When all vanish (only for
/// the empty matrix) returns `(n, 1)`.
pub fn first_nonzero_divisor(
    m: &LaurentMatrix,
    field: CoeffField,
) -> Result<(usize, LaurentPoly), AlgebraError> {
    for k in 0..m.rows {
        let d = elementary_divisor(m, k, field)?;
        if !d.is_zero() {
            return Ok((k, d));
        }
    }
    Ok((m.rows, LaurentPoly::constant(1, m.nvars, field)))
}
