//! Dense and sparse matrices over a [`Field`], with exact rank, kernel and
//! solve.
//!
//! Elimination skips zero entries, so the combinatorial matrices that come out
//! of tensor constructions (mostly `0`/`±1`, very sparse) reduce quickly even
//! though storage is dense.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>, // row-major, len = rows * cols
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Build from rows of integers; handy for tests and fixtures.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| field.int(rows[i][j]))
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let n = rows.len();
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if data.iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch("matrix entry from another field".into()));
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
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

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Scalar) {
        let k = i * self.cols + j;
        self.data[k] = &self.data[k] + x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|x| x * s).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { data: self.data.iter().map(|x| -x).collect(), ..self.clone() }
    }

    /// Kronecker product; the left factor's index varies slowest.
    pub fn tensor(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.rows, other.cols);
        Matrix::from_fn(self.field, self.rows * r2, self.cols * c2, |i, j| {
            let a = self.get(i / r2, j / c2);
            if a.is_zero() {
                self.field.zero()
            } else {
                a * other.get(i % r2, j % c2)
            }
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, 0, other);
        m
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let x = block.get(i, j);
                if !x.is_zero() {
                    self.set(r0 + i, c0 + j, x.clone());
                }
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = if self.cols == 0 { vec![Vec::new(); self.rows] } else { self.rows_vec() };
        let pivots = eliminate(&mut rows, self.cols, true);
        let data = rows.into_iter().flatten().collect();
        (Matrix { field: self.field, rows: self.rows, cols: self.cols, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut rows = self.rows_vec();
        eliminate(&mut rows, self.cols, false).len()
    }

    /// Columns form a basis of the null space; their count is `cols - rank`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, self.field.one());
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, f);
                if !x.is_zero() {
                    k.set(p, j, -x);
                }
            }
        }
        k
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        Ok(self.solve_columns(&rhs).pop().unwrap())
    }

    /// Solve `self * x = b_j` for every column `b_j` of `rhs` with one
    /// elimination.
    pub fn solve_columns(&self, rhs: &Matrix) -> Vec<Option<Vec<Scalar>>> {
        assert_eq!(rhs.rows, self.rows, "solve: row mismatch");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        let n = self.cols;
        let zero = self.field.zero();
        (0..rhs.cols)
            .map(|j| {
                // Rows whose pivot lies in the rhs block are zero on the left.
                let inconsistent = pivots
                    .iter()
                    .enumerate()
                    .any(|(row, &p)| p >= n && !r.get(row, n + j).is_zero());
                if inconsistent {
                    return None;
                }
                let mut x = vec![zero.clone(); n];
                for (row, &p) in pivots.iter().enumerate() {
                    if p < n {
                        x[p] = r.get(row, n + j).clone();
                    }
                }
                Some(x)
            })
            .collect()
    }
}

/// Gaussian elimination in place. Returns pivot columns. With `full`, rows are
/// normalized and eliminated above the pivot as well (RREF).
fn eliminate(rows: &mut [Vec<Scalar>], cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].inv();
        if full {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let nz: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        let start = if full { 0 } else { r + 1 };
        for i in start..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = if full { rows[i][c].clone() } else { &rows[i][c] * &inv };
            for &j in &nz {
                let t = &f * &pivot_row[j];
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Column-sparse matrix, used for operators on large tensor powers where a
/// dense representation would be wasteful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    columns: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, columns: vec![BTreeMap::new(); cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for (i, col) in m.columns.iter_mut().enumerate() {
            col.insert(i, field.one());
        }
        m
    }

    pub fn from_columns(field: Field, rows: usize, columns: Vec<BTreeMap<usize, Scalar>>) -> Self {
        let mut m = SparseMatrix { field, rows, columns };
        for col in &mut m.columns {
            col.retain(|i, x| {
                assert!(*i < rows, "sparse entry out of range");
                !x.is_zero()
            });
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.columns.len()
    }
    pub fn column(&self, j: usize) -> &BTreeMap<usize, Scalar> {
        &self.columns[j]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "sparse product shape mismatch");
        let mut acc: Vec<Option<Scalar>> = vec![None; self.rows];
        let mut touched: Vec<usize> = Vec::new();
        let columns = other
            .columns
            .iter()
            .map(|col| {
                for (k, b) in col {
                    for (i, a) in &self.columns[*k] {
                        let t = a * b;
                        match &mut acc[*i] {
                            Some(e) => *e = &*e + &t,
                            slot => {
                                *slot = Some(t);
                                touched.push(*i);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                touched.drain(..).filter_map(|i| acc[i].take().filter(|x| !x.is_zero()).map(|x| (i, x))).collect()
            })
            .collect();
        SparseMatrix { field: self.field, rows: self.rows, columns }
    }

    fn combine(&self, other: &SparseMatrix, sign: &Scalar) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()), "sparse shape mismatch");
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut acc = a.clone();
                for (i, x) in b {
                    let e = acc.entry(*i).or_insert_with(|| self.field.zero());
                    *e = &*e + &(x * sign);
                }
                acc.retain(|_, x| !x.is_zero());
                acc
            })
            .collect();
        SparseMatrix { field: self.field, rows: self.rows, columns }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, &self.field.one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, &self.field.int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, x)| (*i, x * s)).filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        SparseMatrix { field: self.field, rows: self.rows, columns }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m.set(*i, j, x.clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(q(), 2).rank(), 2);
        assert_eq!(Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(q(), 0, 3).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        let z = Matrix::zeros(q(), 3, 3);
        assert_eq!(z.kernel_basis().cols(), 3);
        let inv = Matrix::from_ints(q(), &[&[1, 2], &[3, 4]]);
        assert_eq!(inv.kernel_basis().cols(), 0);
        let row = Matrix::from_ints(q(), &[&[1, 1]]);
        let k = row.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(row.mul(&k).is_zero());
        assert_eq!(k.get(0, 0), &(-k.get(1, 0)));
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let b = vec![f.int(3), f.int(-1)];
        assert_eq!(Matrix::identity(f, 2).solve(&b).unwrap(), Some(b.clone()));
        let row = Matrix::from_ints(f, &[&[1, 1]]);
        let x = row.solve(&[f.zero()]).unwrap().unwrap();
        assert!(row.mul_vec(&x)[0].is_zero());
        let col = Matrix::from_ints(f, &[&[1], &[1]]);
        assert_eq!(col.solve(&[f.zero(), f.one()]).unwrap(), None);
        assert!(col.solve(&[f.zero()]).is_err());
    }

    #[test]
    fn solve_columns_mixed_consistency() {
        let f = q();
        let a = Matrix::from_ints(f, &[&[1, 0], &[0, 0]]);
        let rhs = Matrix::from_ints(f, &[&[2, 1], &[0, 1]]);
        let sols = a.solve_columns(&rhs);
        assert_eq!(sols[0], Some(vec![f.int(2), f.zero()]));
        assert_eq!(sols[1], None);
    }

    #[test]
    fn tensor_and_direct_sum() {
        let f = q();
        let a = Matrix::from_ints(f, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.tensor(&Matrix::identity(f, 1)), a);
        assert_eq!(Matrix::identity(f, 2).direct_sum(&Matrix::identity(f, 3)), Matrix::identity(f, 5));
    }

    #[test]
    fn rank_over_f5() {
        let f = Field::prime(5).unwrap();
        // rows 2 and 1 are proportional mod 5 (3 * [1,2] = [3,1])
        let m = Matrix::from_ints(f, &[&[1, 2], &[3, 6]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn sparse_matches_dense() {
        let f = q();
        let a = Matrix::from_ints(f, &[&[1, 0, 2], &[0, -1, 0]]);
        let b = Matrix::from_ints(f, &[&[1, 1], &[0, 2], &[3, 0]]);
        let to_sparse = |m: &Matrix| {
            let cols = (0..m.cols())
                .map(|j| (0..m.rows()).map(|i| (i, m.get(i, j).clone())).collect())
                .collect();
            SparseMatrix::from_columns(f, m.rows(), cols)
        };
        assert_eq!(to_sparse(&a).mul(&to_sparse(&b)).to_dense(), a.mul(&b));
    }
}
