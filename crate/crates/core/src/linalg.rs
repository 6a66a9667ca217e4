//! Dense exact linear algebra over ℚ.
//!
//! Every degree-wise computation in the crate (kernels of differentials,
//! quotients, pairing inverses) goes through [`Matrix::reduce`]. Pivoting
//! always takes the first nonzero entry of a column, so bases derived from
//! a reduction are reproducible bit for bit.

use std::fmt;
use std::ops::Mul;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always kept in lowest terms.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` as a scalar.
pub fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub rref: Matrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| scalar(x)).collect())
                .collect(),
        )
    }

    /// Builds a `len × columns.len()` matrix from column vectors.
    pub fn from_columns(len: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    pub fn reduce(&self) -> Reduction {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                let x = &m[(row, j)] * &inv;
                m[(row, j)] = x;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in col..m.cols {
                    if m[(row, j)].is_zero() {
                        continue;
                    }
                    let x = &m[(r, j)] - &factor * &m[(row, j)];
                    m[(r, j)] = x;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Reduction {
            rref: m,
            rank: pivots.len(),
            pivot_columns: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.reduce().rank
    }

    /// Kernel basis (one vector per free column) and image basis (the
    /// pivot columns of `self`).
    pub fn kernel_and_image(&self) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) {
        let red = self.reduce();
        let image = red.pivot_columns.iter().map(|&j| self.column(j)).collect();
        (kernel_from_reduction(&red, self.cols), image)
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        kernel_from_reduction(&self.reduce(), self.cols)
    }

    /// One solution `x` of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let red = aug.reduce();
        if red.pivot_columns.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in red.pivot_columns.iter().enumerate() {
            x[c] = red.rref[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let red = aug.reduce();
        if red.rank < n || red.pivot_columns[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red.rref[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &pivot;
                for j in col..n {
                    let x = &m[(r, j)] - &factor * &m[(col, j)];
                    m[(r, j)] = x;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn kernel_from_reduction(red: &Reduction, cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in &red.pivot_columns {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in red.pivot_columns.iter().enumerate() {
                v[p] = -red.rref[(r, f)].clone();
            }
            // Sign-normalize: the first nonzero entry is positive.
            if v.iter().find(|x| !x.is_zero()).is_some_and(is_negative) {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            v
        })
        .collect()
}

/// Extends linearly independent `subspace` columns to a basis of ℚ^ambient
/// by appending standard basis vectors, smallest index first.
pub fn complement_in(subspace: &[Vec<Scalar>], ambient: usize) -> Result<Vec<Vec<Scalar>>> {
    Ok(complement_indices(subspace, ambient)?
        .into_iter()
        .map(|i| unit_vector(ambient, i))
        .collect())
}

/// Like [`complement_in`] but returns the indices of the chosen standard
/// basis vectors.
pub fn complement_indices(subspace: &[Vec<Scalar>], ambient: usize) -> Result<Vec<usize>> {
    let k = subspace.len();
    if k > ambient {
        return Err(Error::DependentBasis);
    }
    let mut cols: Vec<Vec<Scalar>> = subspace.to_vec();
    cols.extend((0..ambient).map(|i| unit_vector(ambient, i)));
    let red = Matrix::from_columns(ambient, &cols).reduce();
    if red.pivot_columns.iter().take_while(|&&p| p < k).count() < k {
        return Err(Error::DependentBasis);
    }
    Ok(red
        .pivot_columns
        .iter()
        .filter(|&&p| p >= k)
        .map(|&p| p - k)
        .collect())
}

pub fn unit_vector(len: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    v[i] = Scalar::one();
    v
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Formats a scalar compactly: integers without a denominator, `p/q` otherwise.
pub fn fmt_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}
