use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, CoeffField, Scalar};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] += a * &o[(k, j)];
                }
            }
        }
        out
    }

    /// Drops row `r` and column `c`.
    pub fn minor_matrix(&self, r: usize, c: usize) -> IntMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn to_field(&self, field: CoeffField) -> FieldMatrix {
        FieldMatrix {
            field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| field.from_int(v)).collect(),
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> =
                self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn int_det(m: &IntMatrix) -> Result<BigInt, AlgebraError> {
    if m.rows != m.cols {
        return Err(AlgebraError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = !sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Dense matrix over a [`CoeffField`]; entries are kept canonical.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldMatrix {
    field: CoeffField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl FieldMatrix {
    pub fn zeros(field: CoeffField, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    /// Rows given as vectors of equal length `cols`.
    pub fn from_row_vectors(field: CoeffField, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Scalar::zero(), |acc, j| {
                    self.field.add(&acc, &self.field.mul(self.get(i, j), &v[j]))
                })
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns; pivots are chosen
    /// leftmost, topmost.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let f = self.field;
        let mut a: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i)).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = f.inv(&a[r][c]).expect("nonzero pivot");
            for v in a[r].iter_mut() {
                *v = f.mul(v, &inv);
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
            pivots.push(c);
            r += 1;
        }
        (FieldMatrix::from_row_vectors(f, self.cols, &a), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[free] = Scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i)).collect()
    }
}

/// Whether two families of vectors in `F^n` span the same subspace.
pub fn span_eq(field: CoeffField, n: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let ca = FieldMatrix::from_row_vectors(field, n, a).row_space_basis();
    let cb = FieldMatrix::from_row_vectors(field, n, b).row_space_basis();
    ca == cb
}

/// Cofactor expansion along the first row; reference for small matrices.
#[cfg(test)]
pub(crate) fn cofactor_det(m: &IntMatrix) -> BigInt {
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[(0, 0)].clone();
    }
    (0..n).fold(BigInt::zero(), |acc, j| {
        let term = &m[(0, j)] * cofactor_det(&m.minor_matrix(0, j));
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}
