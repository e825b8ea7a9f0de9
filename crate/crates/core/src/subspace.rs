//! Subspaces in canonical reduced row echelon form.
//!
//! Two subspaces are equal iff their RREF bases are entrywise equal, so
//! derived `PartialEq` is subspace equality.

use crate::error::{ensure_dim, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Mat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            s.insert(unit_vector(field, ambient, i));
        }
        s
    }

    pub fn from_vectors<I>(field: Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: Field, ambient: usize, indices: &[usize]) -> Subspace {
        Subspace::from_vectors(field, ambient, indices.iter().map(|&i| unit_vector(field, ambient, i)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Basis as the rows of a matrix in reduced row echelon form.
    pub fn basis(&self) -> Mat {
        Mat::from_rows(self.field, self.ambient, &self.rows)
    }

    /// Subtracts the pivot components, leaving the canonical residue of `v` modulo this subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        v
    }

    /// Adds `v` to the span, keeping the basis in RREF. Returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &(&c * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coefficients of `v` in the RREF basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Vector with the given coefficients in the RREF basis.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count");
        let mut out = vec![self.field.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    o.add_mul(c, r);
                }
            }
        }
        out
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        ensure_dim("subspace ambient", self.ambient, other.ambient)?;
        Ok(other.rows.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        ensure_dim("subspace ambient", self.ambient, other.ambient)?;
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        Ok(s)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        ensure_dim("subspace ambient", self.ambient, other.ambient)?;
        if self.dim() == 0 || other.is_full() {
            return Ok(self.clone());
        }
        // x = a·B_self lies in other iff every annihilating functional of other kills it
        let ann = other.annihilator();
        let cond = &ann * &self.basis().transpose();
        let ker = cond.kernel();
        Ok(Subspace::from_vectors(
            self.field,
            self.ambient,
            ker.rows.iter().map(|a| self.combine(a)),
        ))
    }

    /// Rows spanning the functionals that vanish on this subspace.
    pub fn annihilator(&self) -> Mat {
        let ker = self.basis().kernel();
        if self.rows.is_empty() {
            return Mat::identity(self.field, self.ambient);
        }
        ker.basis()
    }

    /// Indices of the standard basis vectors forming the canonical complement.
    pub fn quotient_basis(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Coordinates of the class of `v` in the quotient, w.r.t. [`Self::quotient_basis`].
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.quotient_basis().into_iter().map(|i| r[i].clone()).collect()
    }

    /// Matrix of the projection onto the quotient, `(ambient - dim) × ambient`.
    pub fn quotient_map(&self) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.ambient)
            .map(|j| self.quotient_coordinates(&unit_vector(self.field, self.ambient, j)))
            .collect();
        Mat::from_columns(self.field, self.ambient - self.dim(), &cols)
    }

    /// Image of this subspace under a linear map.
    pub fn image(&self, map: &Mat) -> Result<Subspace> {
        ensure_dim("image: map columns", self.ambient, map.cols())?;
        Ok(Subspace::from_vectors(
            self.field,
            map.rows(),
            self.rows.iter().map(|v| map.apply(v)),
        ))
    }

    /// Preimage of this subspace under `map: K^n → K^ambient`.
    pub fn preimage(&self, map: &Mat) -> Result<Subspace> {
        ensure_dim("preimage: map rows", self.ambient, map.rows())?;
        if self.is_full() {
            return Ok(Subspace::full(self.field, map.cols()));
        }
        Ok((&self.annihilator() * map).kernel())
    }

    /// `self ⊗ other` inside the tensor of the ambient spaces.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.field, self.ambient * other.ambient);
        for a in &self.rows {
            for b in &other.rows {
                out.insert(tensor_vectors(a, b));
            }
        }
        debug_assert_eq!(out.dim(), self.dim() * other.dim());
        out
    }

    /// Whether `t ∈ self ⊗ other`, for `t` flattened left-factor major.
    pub fn tensor_contains(&self, other: &Subspace, t: &[Scalar]) -> bool {
        let n = other.ambient;
        assert_eq!(t.len(), self.ambient * n, "tensor length");
        // rows of the n-column matrix view must lie in `other`, columns in `self`
        (0..self.ambient).all(|i| other.contains_vector(&t[i * n..(i + 1) * n]))
            && (0..n).all(|j| {
                let col: Vec<Scalar> = (0..self.ambient).map(|i| t[i * n + j].clone()).collect();
                self.contains_vector(&col)
            })
    }
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn tensor_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::Prime(2)
    }

    fn v(field: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn intersect_idempotent_and_sum_with_zero() {
        let q = Field::Rationals;
        let w = Subspace::from_vectors(q, 3, vec![v(q, &[1, 2, 0]), v(q, &[0, 1, 1])]);
        assert_eq!(w.intersect(&w).unwrap(), w);
        assert_eq!(w.sum(&Subspace::zero(q, 3)).unwrap(), w);
    }

    #[test]
    fn intersect_two_lines_over_f2() {
        let a = Subspace::from_vectors(f2(), 2, vec![v(f2(), &[1, 1])]);
        let b = Subspace::from_vectors(f2(), 2, vec![v(f2(), &[1, 0])]);
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn canonical_form_is_unique() {
        let q = Field::Rationals;
        let a = Subspace::from_vectors(q, 3, vec![v(q, &[1, 1, 0]), v(q, &[1, -1, 2])]);
        let b = Subspace::from_vectors(q, 3, vec![v(q, &[2, 0, 2]), v(q, &[0, 2, -2])]);
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn mismatched_ambient() {
        let a = Subspace::zero(f2(), 2);
        let b = Subspace::zero(f2(), 3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn quotient_coordinates_kill_subspace() {
        let q = Field::Rationals;
        let w = Subspace::from_vectors(q, 3, vec![v(q, &[1, 1, 0])]);
        assert_eq!(w.quotient_basis(), vec![1, 2]);
        assert_eq!(w.quotient_coordinates(&v(q, &[1, 1, 0])), v(q, &[0, 0]));
        assert_eq!(w.quotient_coordinates(&v(q, &[1, 0, 0])), v(q, &[-1, 0]));
        let m = w.quotient_map();
        assert_eq!(m.shape(), (2, 3));
    }

    #[test]
    fn tensor_membership() {
        let w = Subspace::from_vectors(f2(), 2, vec![v(f2(), &[1, 1])]);
        let ww = w.tensor(&w);
        assert_eq!(ww.dim(), 1);
        assert!(w.tensor_contains(&w, &v(f2(), &[1, 1, 1, 1])));
        assert!(!w.tensor_contains(&w, &v(f2(), &[1, 0, 0, 1])));
    }

    #[test]
    fn preimage_of_kernel() {
        let q = Field::Rationals;
        let m = Mat::from_i64_rows(q, &[&[1, 1, 0], &[0, 0, 1]]);
        let z = Subspace::zero(q, 2);
        assert_eq!(z.preimage(&m).unwrap(), m.kernel());
    }
}
