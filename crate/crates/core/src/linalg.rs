//! Dense exact matrices and Gauss-Jordan elimination.
//!
//! Elimination always pivots on the leftmost remaining column and the
//! topmost candidate row, so solutions (free variables set to zero), kernels
//! and ranks are deterministic functions of the input.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows.max(1), columns.len().max(1));
        if columns.is_empty() || rows == 0 {
            return Err(Error::DimensionMismatch("empty column set".into()));
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch("column length".into()));
            }
            for (i, v) in col.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::FieldMismatch(field, v.field()));
                }
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(field: Field, perm: &[usize]) -> Matrix {
        let n = perm.len();
        let mut m = Matrix::zeros(field, n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = field.one();
        }
        m
    }

    /// The flip `M ⊗ N -> N ⊗ M` on flat bases `i*n+j`.
    pub fn flip(field: Field, m: usize, n: usize) -> Matrix {
        let perm: Vec<usize> = (0..m * n).map(|k| (k % n) * m + k / n).collect();
        Matrix::permutation(field, &perm)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field of inserted entry");
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.cols + c] += v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul(rhs))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        let mut out = vec![self.field.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Kronecker product, with `(i, j)` flattened as `i * other + j`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        reduce(&mut rows, self.cols).len()
    }

    /// Basis of the right kernel, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut rows = self.to_rows();
        let pivots = reduce(&mut rows, self.cols);
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek().is_some_and(|&&(_, c)| c == free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for &(r, c) in &pivots {
                if c < free {
                    v[c] = -&rows[r][free];
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = b`; `Ok(None)` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        if let Some(bad) = b.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, bad.field()));
        }
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = reduce(&mut rows, self.cols);
        if rows[pivots.len()..].iter().any(|row| !row[self.cols].is_zero()) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for &(r, c) in &pivots {
            x[c] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { self.field.one() } else { self.field.zero() }));
                row
            })
            .collect();
        let pivots = reduce(&mut rows, n);
        if pivots.len() < n {
            return Ok(None);
        }
        let data = rows.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Ok(Some(Matrix {
            rows: n,
            cols: n,
            field: self.field,
            data,
        }))
    }

    fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// In-place reduced row echelon form over the first `ncols` columns (later
/// columns ride along). Returns `(row, column)` of each pivot in order.
fn reduce(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].inv().expect("pivot is nonzero");
        let support: Vec<usize> = (col..rows[next].len()).filter(|&c| !rows[next][c].is_zero()).collect();
        for &c in &support {
            rows[next][c] = &rows[next][c] * &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for &c in &support {
                row[c] -= &(&factor * &pivot_row[c]);
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    pivots
}

/// `A x = b` with free variables set to zero; `None` when inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    a.solve(b)
}

pub fn invert_matrix(a: &Matrix) -> Result<Option<Matrix>> {
    a.inverse()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
#[allow(clippy::identity_op, clippy::erasing_op)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        let f = Field::Rational;
        Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&v| f.from_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Field::Rational.from_int(x)).collect()
    }

    #[test]
    fn identity_solve() {
        let i3 = Matrix::identity(Field::Rational, 3);
        assert_eq!(i3.solve(&v(&[1, 2, 3])).unwrap(), Some(v(&[1, 2, 3])));
    }

    #[test]
    fn inconsistent_system() {
        assert_eq!(q(&[&[1, 1], &[2, 2]]).solve(&v(&[1, 3])).unwrap(), None);
    }

    #[test]
    fn free_variables_are_zero() {
        // x + y = 2 has solution (2, 0) under leftmost pivoting
        assert_eq!(q(&[&[1, 1]]).solve(&v(&[2])).unwrap(), Some(v(&[2, 0])));
    }

    #[test]
    fn inverse_of_involution() {
        let swap = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.inverse().unwrap(), Some(swap.clone()));
        assert_eq!(
            Matrix::identity(Field::Rational, 4).inverse().unwrap(),
            Some(Matrix::identity(Field::Rational, 4))
        );
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse().unwrap(), None);
    }

    #[test]
    fn kernel_and_rank() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(m.apply(k).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn flip_matrix_swaps_factors() {
        let f = Field::Rational;
        let flip = Matrix::flip(f, 2, 3);
        // e_1 ⊗ e_2 (index 1*3+2 = 5) goes to e_2 ⊗ e_1 (index 2*2+1 = 5)
        let mut e = vec![f.zero(); 6];
        e[1 * 3 + 0] = f.one();
        let out = flip.apply(&e);
        assert!(out[0 * 2 + 1].is_one());
        assert_eq!(flip.mul(&Matrix::flip(f, 3, 2)), Matrix::identity(f, 6));
    }

    #[test]
    fn mismatched_fields_are_reported() {
        let a = Matrix::identity(Field::Rational, 2);
        let b = vec![Field::prime(7).unwrap().one(); 2];
        assert!(matches!(a.solve(&b), Err(Error::FieldMismatch(..))));
    }
}
