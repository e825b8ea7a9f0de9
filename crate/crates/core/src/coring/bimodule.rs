//! Bimodules over a finite-dimensional algebra and their balanced tensor products.

use crate::algebra::Algebra;
use crate::error::{ensure_dim, Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Mat;
use crate::subspace::{unit_vector, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    a.field() == b.field() && a.dim() == b.dim() && a.mult() == b.mult() && a.unit() == b.unit()
}

/// `left[i]` is the matrix of `m ↦ a_i·m`, `right[i]` the matrix of `m ↦ m·a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    base: Algebra,
    dim: usize,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl Bimodule {
    /// Validates shapes, unitality, associativity of both actions and that they commute.
    pub fn new(base: Algebra, dim: usize, left: Vec<Mat>, right: Vec<Mat>) -> Result<Bimodule> {
        let na = base.dim();
        ensure_dim("left action count", na, left.len())?;
        ensure_dim("right action count", na, right.len())?;
        for m in left.iter().chain(&right) {
            ensure_dim("action rows", dim, m.rows())?;
            ensure_dim("action cols", dim, m.cols())?;
            if m.field() != base.field() {
                return Err(Error::FieldMismatch(base.field().to_string(), m.field().to_string()));
            }
        }
        let b = Bimodule {
            base,
            dim,
            left,
            right,
        };
        if let Some(problem) = b.first_violation() {
            return Err(Error::InvalidStructure(problem));
        }
        Ok(b)
    }

    fn first_violation(&self) -> Option<String> {
        let f = self.field();
        let na = self.base.dim();
        let id = Mat::identity(f, self.dim);
        if self.left_action(self.base.unit()) != id {
            return Some("left action is not unital".into());
        }
        if self.right_action(self.base.unit()) != id {
            return Some("right action is not unital".into());
        }
        for i in 0..na {
            for j in 0..na {
                let p = self.base.basis_product(i, j);
                if self.left_action(&p) != &self.left[i] * &self.left[j] {
                    return Some(format!("left action is not associative at ({i},{j})"));
                }
                if self.right_action(&p) != &self.right[j] * &self.right[i] {
                    return Some(format!("right action is not associative at ({i},{j})"));
                }
                if &self.left[i] * &self.right[j] != &self.right[j] * &self.left[i] {
                    return Some(format!("actions do not commute at ({i},{j})"));
                }
            }
        }
        None
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(base: &Algebra) -> Bimodule {
        let f = base.field();
        let n = base.dim();
        let left = (0..n).map(|i| base.left_mult(&unit_vector(f, n, i))).collect();
        let right = (0..n).map(|i| base.right_mult(&unit_vector(f, n, i))).collect();
        Bimodule::new(base.clone(), n, left, right).expect("regular bimodule")
    }

    /// `A ⊗ A` with `a·(x⊗y)·b = ax ⊗ yb`, basis index `i*dim A + j`.
    pub fn enveloping(base: &Algebra) -> Bimodule {
        let f = base.field();
        let n = base.dim();
        let id = Mat::identity(f, n);
        let left = (0..n).map(|i| base.left_mult(&unit_vector(f, n, i)).kron(&id)).collect();
        let right = (0..n).map(|i| id.kron(&base.right_mult(&unit_vector(f, n, i)))).collect();
        Bimodule::new(base.clone(), n * n, left, right).expect("enveloping bimodule")
    }

    /// A vector space over the ground field seen as a bimodule over `K`.
    pub fn over_ground(base: &Algebra, dim: usize) -> Result<Bimodule> {
        if base.dim() != 1 {
            return Err(Error::InvalidStructure("base is not one-dimensional".into()));
        }
        let f = base.field();
        let u = base.unit()[0].inv().ok_or_else(|| Error::InvalidStructure("zero unit".into()))?;
        let act = Mat::identity(f, dim).scale(&u);
        Bimodule::new(base.clone(), dim, vec![act.clone()], vec![act])
    }

    pub fn direct_sum(parts: &[Bimodule]) -> Result<Bimodule> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidStructure("empty direct sum".into()));
        };
        for p in parts {
            if !same_algebra(&p.base, &first.base) {
                return Err(Error::BaseMismatch);
            }
        }
        let f = first.field();
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let block = |pick: &dyn Fn(&Bimodule) -> &Mat| {
            let mut m = Mat::zeros(f, dim, dim);
            let mut off = 0;
            for p in parts {
                let a = pick(p);
                for r in 0..p.dim {
                    for c in 0..p.dim {
                        m.set(off + r, off + c, a.get(r, c).clone());
                    }
                }
                off += p.dim;
            }
            m
        };
        let na = first.base.dim();
        let left = (0..na).map(|i| block(&|p: &Bimodule| &p.left[i])).collect();
        let right = (0..na).map(|i| block(&|p: &Bimodule| &p.right[i])).collect();
        Bimodule::new(first.base.clone(), dim, left, right)
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self) -> &[Mat] {
        &self.left
    }

    pub fn right(&self) -> &[Mat] {
        &self.right
    }

    pub fn actions(&self, side: Side) -> &[Mat] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    fn combine(&self, mats: &[Mat], a: &[Scalar]) -> Mat {
        let mut out = Mat::zeros(self.field(), self.dim, self.dim);
        for (c, m) in a.iter().zip(mats) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    pub fn left_action(&self, a: &[Scalar]) -> Mat {
        self.combine(&self.left, a)
    }

    pub fn right_action(&self, a: &[Scalar]) -> Mat {
        self.combine(&self.right, a)
    }

    /// Closes under the actions on the given sides.
    pub fn close(&self, s: &Subspace, sides: &[Side]) -> Subspace {
        let mut w = s.clone();
        let mut frontier: Vec<Vec<Scalar>> = w.basis_vectors().to_vec();
        while let Some(v) = frontier.pop() {
            for &side in sides {
                for m in self.actions(side) {
                    let img = m.apply(&v);
                    if w.insert(img.clone()) {
                        frontier.push(img);
                    }
                }
            }
        }
        w
    }

    /// Smallest sub-bimodule containing `s`.
    pub fn sub_bimodule_generated(&self, s: &Subspace) -> Subspace {
        self.close(s, &[Side::Left, Side::Right])
    }

    pub fn is_closed(&self, s: &Subspace, side: Side) -> bool {
        s.basis_vectors()
            .iter()
            .all(|v| self.actions(side).iter().all(|m| s.contains_vector(&m.apply(v))))
    }

    pub fn is_sub_bimodule(&self, s: &Subspace) -> bool {
        self.is_closed(s, Side::Left) && self.is_closed(s, Side::Right)
    }

    /// Action matrices on a submodule in the coordinates of its RREF basis.
    pub fn restricted_actions(&self, s: &Subspace, side: Side) -> Result<Vec<Mat>> {
        if !self.is_closed(s, side) {
            return Err(Error::NotASubmodule(side.name()));
        }
        Ok(self
            .actions(side)
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Scalar>> = s
                    .basis_vectors()
                    .iter()
                    .map(|b| s.coordinates(&m.apply(b)).expect("closed"))
                    .collect();
                Mat::from_columns(self.field(), s.dim(), &cols)
            })
            .collect())
    }

    /// The sub-bimodule on `s` in the coordinates of its RREF basis.
    pub fn restrict(&self, s: &Subspace) -> Result<Bimodule> {
        let left = self.restricted_actions(s, Side::Left)?;
        let right = self.restricted_actions(s, Side::Right)?;
        Bimodule::new(self.base.clone(), s.dim(), left, right)
    }

    /// The quotient bimodule on the canonical complement of a sub-bimodule.
    pub fn quotient(&self, s: &Subspace) -> Result<(Bimodule, Mat)> {
        if !self.is_sub_bimodule(s) {
            return Err(Error::NotASubmodule("bimodule"));
        }
        let proj = s.quotient_map();
        let lift = lift_matrix(self.field(), self.dim, &s.quotient_basis());
        let push = |m: &Mat| &(&proj * m) * &lift;
        let left = self.left.iter().map(push).collect();
        let right = self.right.iter().map(push).collect();
        Ok((Bimodule::new(self.base.clone(), proj.rows(), left, right)?, proj))
    }
}

/// Columns are the standard basis vectors with the given indices.
pub(crate) fn lift_matrix(field: Field, n: usize, idx: &[usize]) -> Mat {
    Mat::from_fn(field, n, idx.len(), |r, c| if idx[c] == r { field.one() } else { field.zero() })
}

/// `M ⊗_A N` as the quotient of `M ⊗ N` by the balancing relations, on the
/// canonical complement of the relation subspace.
#[derive(Clone, Debug)]
pub struct TensorOverA {
    left: Bimodule,
    right: Bimodule,
    relations: Subspace,
    representatives: Vec<usize>,
    proj: Mat,
    outer: Bimodule,
}

impl TensorOverA {
    pub fn new(m: &Bimodule, n: &Bimodule) -> Result<TensorOverA> {
        if !same_algebra(&m.base, &n.base) {
            return Err(Error::BaseMismatch);
        }
        let f = m.field();
        let (dm, dn) = (m.dim, n.dim);
        let mut relations = Subspace::zero(f, dm * dn);
        for i in 0..m.base.dim() {
            for j in 0..dm {
                let ma = m.right[i].column(j);
                for k in 0..dn {
                    let an = n.left[i].column(k);
                    let mut v = vec![f.zero(); dm * dn];
                    for (x, mx) in ma.iter().enumerate() {
                        if !mx.is_zero() {
                            v[x * dn + k] += mx;
                        }
                    }
                    for (y, ny) in an.iter().enumerate() {
                        if !ny.is_zero() {
                            v[j * dn + y] -= ny;
                        }
                    }
                    relations.insert(v);
                }
            }
        }
        let representatives = relations.quotient_basis();
        let proj = relations.quotient_map();
        let lift = lift_matrix(f, dm * dn, &representatives);
        let id_m = Mat::identity(f, dm);
        let id_n = Mat::identity(f, dn);
        let left = m.left.iter().map(|a| &(&proj * &a.kron(&id_n)) * &lift).collect();
        let right = n.right.iter().map(|a| &(&proj * &id_m.kron(a)) * &lift).collect();
        let outer = Bimodule::new(m.base.clone(), representatives.len(), left, right)?;
        Ok(TensorOverA {
            left: m.clone(),
            right: n.clone(),
            relations,
            representatives,
            proj,
            outer,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn left(&self) -> &Bimodule {
        &self.left
    }

    pub fn right(&self) -> &Bimodule {
        &self.right
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Indices `j*dim N + k` of the plain basis tensors representing the quotient basis.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// Projection `M ⊗ N → M ⊗_A N`.
    pub fn projection(&self) -> &Mat {
        &self.proj
    }

    /// The quotient with its induced outer bimodule structure.
    pub fn outer(&self) -> &Bimodule {
        &self.outer
    }

    pub fn class_of(&self, t: &[Scalar]) -> Vec<Scalar> {
        self.proj.apply(t)
    }

    /// Canonical representative in `M ⊗ N`, supported on the representative indices.
    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        let f = self.left.field();
        let mut t = vec![f.zero(); self.left.dim * self.right.dim];
        for (c, &r) in q.iter().zip(&self.representatives) {
            t[r] = c.clone();
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground_algebra, truncated_polynomial};

    #[test]
    fn tensor_dimensions() {
        let f = Field::Prime(2);
        let a = truncated_polynomial(2, f);
        let reg = Bimodule::regular(&a);
        assert_eq!(TensorOverA::new(&reg, &reg).unwrap().dim(), 2);
        let k = ground_algebra(f);
        let v = Bimodule::over_ground(&k, 3).unwrap();
        let w = Bimodule::over_ground(&k, 2).unwrap();
        assert_eq!(TensorOverA::new(&v, &w).unwrap().dim(), 6);
        assert!(matches!(TensorOverA::new(&reg, &v), Err(Error::BaseMismatch)));
    }

    #[test]
    fn sub_bimodules() {
        let f = Field::Prime(2);
        let a = truncated_polynomial(2, f);
        let reg = Bimodule::regular(&a);
        let x = Subspace::coordinate(f, 2, &[1]);
        assert!(reg.is_sub_bimodule(&x));
        let one = Subspace::coordinate(f, 2, &[0]);
        assert!(reg.sub_bimodule_generated(&one).is_full());
        let env = Bimodule::enveloping(&a);
        assert_eq!(env.dim(), 4);
        let (q, proj) = reg.quotient(&x).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(proj.shape(), (1, 2));
    }

    #[test]
    fn invalid_actions_rejected() {
        let f = Field::Prime(2);
        let a = truncated_polynomial(2, f);
        let z = Mat::zeros(f, 1, 1);
        assert!(Bimodule::new(a, 1, vec![z.clone(), z.clone()], vec![z.clone(), z]).is_err());
    }
}
