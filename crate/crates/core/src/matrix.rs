//! Dense exact matrices.
//!
//! Tensor indices are flattened row-major with the left factor major: the
//! basis vector `e_i ⊗ f_j` of `V ⊗ W` has index `i * dim(W) + j`. Every
//! module uses this convention, including [`Mat::kron`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{ensure_dim, Error, Result};
use crate::field::{Field, Scalar};
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// One solution of `a·x = b` together with the homogeneous solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Mat,
    pub kernel: Subspace,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Builds a matrix from row-major data; every entry must lie in `field`.
    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        ensure_dim("matrix data length", rows * cols, data.len())?;
        if let Some(bad) = data.iter().find(|s| !field.check(s)) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Mat {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length");
            data.extend(row.iter().cloned());
        }
        Mat {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = vec![self.field.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    o.add_mul(a, x);
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Mat) -> Result<Mat> {
        ensure_dim("matrix product", self.cols, other.rows)?;
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.get_mut(i, j).add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, other: &Mat) -> Result<()> {
        ensure_dim("matrix rows", self.rows, other.rows)?;
        ensure_dim("matrix cols", self.cols, other.cols)
    }

    /// Tensor product of linear maps: entry `(i1*r2 + i2, j1*c2 + j2) = a[i1][j1]·b[i2][j2]`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let (r2, c2) = other.shape();
        let mut out = Mat::zeros(self.field, self.rows * r2, self.cols * c2);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * r2 + i2, j1 * c2 + j2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        ensure_dim("vstack cols", self.cols, other.cols)?;
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        ensure_dim("hstack rows", self.rows, other.rows)?;
        Ok(Mat::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Reduced row echelon form and pivot columns. Zero rows are kept at the bottom.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let x = self.get(r, j) * &inv;
                self.set(r, j, x);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let t = self.get(r, j);
                    if t.is_zero() {
                        continue;
                    }
                    let d = &factor * t;
                    *self.get_mut(i, j) -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right kernel `{x : self·x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); self.cols];
                v[fc] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc);
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.field, self.cols, vectors)
    }

    /// Row space as a canonical subspace of `field^cols`.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.cols, (0..self.rows).map(|i| self.row(i).to_vec()))
    }

    /// Column space as a canonical subspace of `field^rows`.
    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }

    /// Square matrix inverse, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(self.field, n, n, |i, j| r.get(i, n + j).clone()))
    }
}

/// Solves `a·x = b` column by column. Free variables of the particular solution are zero.
pub fn solve(a: &Mat, b: &Mat) -> Result<Solution> {
    ensure_dim("solve: rows of a and b", a.rows, b.rows)?;
    let aug = a.hstack(b)?;
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= a.cols) {
        return Err(Error::Inconsistent);
    }
    let mut particular = Mat::zeros(a.field, a.cols, b.cols);
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            particular.set(pc, j, r.get(row, a.cols + j).clone());
        }
    }
    Ok(Solution {
        particular,
        kernel: a.kernel(),
    })
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    #[track_caller]
    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs).expect("matrix product shape")
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    #[track_caller]
    fn add(self, rhs: &Mat) -> Mat {
        self.checked_add(rhs).expect("matrix sum shape")
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    #[track_caller]
    fn sub(self, rhs: &Mat) -> Mat {
        self.checked_sub(rhs).expect("matrix difference shape")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {} [", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }
    fn f2() -> Field {
        Field::Prime(2)
    }

    #[test]
    fn rref_identity() {
        let id = Mat::identity(q(), 2);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Mat::from_i64_rows(q(), &[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Mat::from_i64_rows(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_over_f2() {
        let m = Mat::from_i64_rows(f2(), &[&[1, 1], &[1, 0]]);
        let (r, p) = m.rref();
        assert_eq!(r, Mat::identity(f2(), 2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn solve_identity() {
        let a = Mat::identity(q(), 3);
        let b = Mat::from_i64_rows(q(), &[&[1], &[-2], &[5]]);
        let s = solve(&a, &b).unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.kernel.dim(), 0);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Mat::zeros(q(), 1, 1);
        let b = Mat::from_i64_rows(q(), &[&[1]]);
        assert_eq!(solve(&a, &b), Err(Error::Inconsistent));
    }

    #[test]
    fn solve_underdetermined_f2() {
        // x + y = 1 over F2: solutions {(1,0), (0,1)}
        let a = Mat::from_i64_rows(f2(), &[&[1, 1]]);
        let b = Mat::from_i64_rows(f2(), &[&[1]]);
        let s = solve(&a, &b).unwrap();
        assert_eq!(s.particular, Mat::from_i64_rows(f2(), &[&[1], &[0]]));
        let k = Subspace::from_vectors(f2(), 2, vec![vec![f2().one(), f2().one()]]);
        assert_eq!(s.kernel, k);
    }

    #[test]
    fn solve_shape_mismatch() {
        let a = Mat::zeros(q(), 2, 2);
        let b = Mat::zeros(q(), 3, 1);
        assert!(matches!(solve(&a, &b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn kron_index_order() {
        let a = Mat::from_i64_rows(q(), &[&[1, 2]]);
        let b = Mat::from_i64_rows(q(), &[&[3], &[4]]);
        let k = a.kron(&b);
        assert_eq!(k, Mat::from_i64_rows(q(), &[&[3, 6], &[4, 8]]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_i64_rows(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(q(), 2));
        assert!(Mat::from_i64_rows(q(), &[&[1, 1], &[1, 1]]).inverse().is_none());
    }
}
