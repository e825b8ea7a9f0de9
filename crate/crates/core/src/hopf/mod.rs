//! Bialgebras and Hopf algebras, their module and comodule coalgebras,
//! comodules with duals, and the regular embedding of comodule algebras.

mod acted;
mod comodule;

pub use acted::{
    check_comodule_coalgebra, check_module_coalgebra, comodule_subcoalgebra_closure, local_representativity,
    module_subcoalgebra_closure, smash_coproduct, verify_local_representativity, ComoduleClosure,
    ComoduleCoalgebra, ComoduleCoalgebraViolation, ModuleClosure, ModuleCoalgebra, ModuleCoalgebraViolation,
    SweedlerCheck,
};
pub use comodule::{
    check_comodule, coefficient_coalgebra, dual_comodule, endomorphism_algebra, ev_co_maps, is_colinear,
    matrix_coalgebra, regular_embedding, tensor_comodule, trivial_comodule, zig_zag_holds, Comodule,
    ComoduleAlgebra, ComoduleViolation, EvCo, InternalAlgebra, InternalCoalgebra, RegularEmbedding,
};

use crate::algebra::{check_algebra, cyclic_group_algebra, ground_algebra, monoid_algebra, truncated_polynomial, Algebra};
use crate::coalgebra::{check_coalgebra, grouplike_coalgebra, Coalgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{solve, Mat};
use crate::subspace::tensor_vectors;

/// An algebra and a coalgebra on the same basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebra {
    pub name: String,
    algebra: Algebra,
    coalgebra: Coalgebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BialgebraViolation {
    Algebra(crate::algebra::AlgebraViolation),
    Coalgebra(crate::coalgebra::CoalgebraViolation),
    /// `Δ(e_i e_j) ≠ Δ(e_i)Δ(e_j)`.
    DeltaMultiplicative(usize, usize),
    DeltaUnit,
    /// `ε(e_i e_j) ≠ ε(e_i)ε(e_j)`.
    CounitMultiplicative(usize, usize),
    CounitUnit,
}

/// Product in `H ⊗ H`: `(a⊗b)(c⊗d) = ac ⊗ bd`.
pub(crate) fn tensor_square_product(a: &Algebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = a.dim();
    let f = a.field();
    let mut out = vec![f.zero(); n * n];
    for (p, xp) in x.iter().enumerate() {
        if xp.is_zero() {
            continue;
        }
        for (q, yq) in y.iter().enumerate() {
            if yq.is_zero() {
                continue;
            }
            let c = xp * yq;
            let left = a.basis_product(p / n, q / n);
            let right = a.basis_product(p % n, q % n);
            for (l, lv) in left.iter().enumerate() {
                if lv.is_zero() {
                    continue;
                }
                let cl = &c * lv;
                for (r, rv) in right.iter().enumerate() {
                    if !rv.is_zero() {
                        out[l * n + r].add_mul(&cl, rv);
                    }
                }
            }
        }
    }
    out
}

pub fn check_bialgebra(algebra: &Algebra, coalgebra: &Coalgebra) -> Vec<BialgebraViolation> {
    let mut out: Vec<BialgebraViolation> = check_algebra(algebra).into_iter().map(BialgebraViolation::Algebra).collect();
    out.extend(check_coalgebra(coalgebra).into_iter().map(BialgebraViolation::Coalgebra));
    let n = algebra.dim();
    let f = algebra.field();
    for i in 0..n {
        for j in 0..n {
            let p = algebra.basis_product(i, j);
            let lhs = coalgebra.coproduct(&p);
            let rhs = tensor_square_product(algebra, &coalgebra.coproduct_of_basis(i), &coalgebra.coproduct_of_basis(j));
            if lhs != rhs {
                out.push(BialgebraViolation::DeltaMultiplicative(i, j));
            }
            if coalgebra.counit_of(&p) != &coalgebra.counit()[i] * &coalgebra.counit()[j] {
                out.push(BialgebraViolation::CounitMultiplicative(i, j));
            }
        }
    }
    let u = algebra.unit();
    if coalgebra.coproduct(u) != tensor_vectors(u, u) {
        out.push(BialgebraViolation::DeltaUnit);
    }
    if coalgebra.counit_of(u) != f.one() {
        out.push(BialgebraViolation::CounitUnit);
    }
    out
}

impl Bialgebra {
    pub fn new(algebra: Algebra, coalgebra: Coalgebra, name: impl Into<String>) -> Result<Bialgebra> {
        if algebra.field() != coalgebra.field() || algebra.dim() != coalgebra.dim() {
            return Err(Error::InvalidStructure("algebra and coalgebra carriers differ".into()));
        }
        let v = check_bialgebra(&algebra, &coalgebra);
        if let Some(first) = v.first() {
            return Err(Error::InvalidStructure(format!("not a bialgebra: {first:?}")));
        }
        Ok(Bialgebra {
            name: name.into(),
            algebra,
            coalgebra,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn ground(field: Field) -> Bialgebra {
        Bialgebra::new(ground_algebra(field), grouplike_coalgebra(field, 1), "K").expect("ground bialgebra")
    }

    /// Monoid algebra with grouplike basis; `table[i][j]` is the index of `m_i m_j`, `m_0` the identity.
    pub fn monoid(field: Field, table: &[Vec<usize>], name: &str) -> Result<Bialgebra> {
        let a = monoid_algebra(field, table, name)?;
        let c = grouplike_coalgebra(field, table.len());
        Bialgebra::new(a, c, name)
    }

    pub fn cyclic_group(n: usize, field: Field) -> Bialgebra {
        let a = cyclic_group_algebra(n, field);
        let c = grouplike_coalgebra(field, n);
        Bialgebra::new(a, c, format!("KC{n}")).expect("group algebra")
    }

    /// `K[x]/x²` with `x` primitive; a bialgebra only in characteristic 2.
    pub fn primitive_dual_numbers(field: Field) -> Result<Bialgebra> {
        let a = truncated_polynomial(2, field);
        let c = Coalgebra::from_fn(field, 2, vec![field.one(), field.zero()], "K[x]/x²", |i| {
            let mut v = vec![field.zero(); 4];
            if i == 0 {
                v[0] = field.one();
            } else {
                v[1] = field.one();
                v[2] = field.one();
            }
            v
        })?;
        Bialgebra::new(a, c, "K[x]/x²")
    }
}

/// A bialgebra with its antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    bialgebra: Bialgebra,
    antipode: Mat,
}

impl HopfAlgebra {
    pub fn new(bialgebra: Bialgebra) -> Result<HopfAlgebra> {
        let antipode = antipode_solve(&bialgebra)?;
        Ok(HopfAlgebra { bialgebra, antipode })
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.bialgebra
    }

    pub fn antipode(&self) -> &Mat {
        &self.antipode
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    pub fn field(&self) -> Field {
        self.bialgebra.field()
    }
}

/// Solves `Σ S(h₁)h₂ = ε(h)1 = Σ h₁S(h₂)` for the entries of `S`.
pub fn antipode_solve(b: &Bialgebra) -> Result<Mat> {
    let n = b.dim();
    let f = b.field();
    let a = &b.algebra;
    let c = &b.coalgebra;
    // unknown S[p][j] at index p*n + j; S(e_j) = Σ_p S[p][j] e_p
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        let mut left = vec![vec![f.zero(); n * n]; n];
        let mut right = vec![vec![f.zero(); n * n]; n];
        for j in 0..n {
            for k in 0..n {
                let d = c.structure_constant(i, j, k);
                if d.is_zero() {
                    continue;
                }
                for p in 0..n {
                    // S(e_j) e_k and e_j S(e_k)
                    let pk = a.basis_product(p, k);
                    let jp = a.basis_product(j, p);
                    for r in 0..n {
                        if !pk[r].is_zero() {
                            left[r][p * n + j].add_mul(d, &pk[r]);
                        }
                        if !jp[r].is_zero() {
                            right[r][p * n + k].add_mul(d, &jp[r]);
                        }
                    }
                }
            }
        }
        for r in 0..n {
            let target = &c.counit()[i] * &a.unit()[r];
            rows.push(std::mem::take(&mut left[r]));
            rhs.push(target.clone());
            rows.push(std::mem::take(&mut right[r]));
            rhs.push(target);
        }
    }
    let sys = Mat::from_rows(f, n * n, &rows);
    let b = Mat::from_columns(f, rows.len(), &[rhs]);
    match solve(&sys, &b) {
        Ok(s) => Ok(Mat::from_data(f, n, n, s.particular.column(0)).expect("shape")),
        Err(Error::Inconsistent) => Err(Error::NotHopf),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antipodes() {
        let f = Field::Prime(2);
        let c2 = Bialgebra::cyclic_group(2, f);
        assert_eq!(antipode_solve(&c2).unwrap(), Mat::identity(f, 2));
        assert_eq!(antipode_solve(&Bialgebra::ground(f)).unwrap(), Mat::identity(f, 1));
        let idem = Bialgebra::monoid(f, &[vec![0, 1], vec![1, 1]], "{1,e}").unwrap();
        assert_eq!(antipode_solve(&idem), Err(Error::NotHopf));
        let q = Field::Rationals;
        let c3 = Bialgebra::cyclic_group(3, q);
        let s = antipode_solve(&c3).unwrap();
        assert_eq!(s, Mat::from_i64_rows(q, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
        assert_eq!(&s * &s, Mat::identity(q, 3));
    }

    #[test]
    fn primitive_needs_char_two() {
        assert!(Bialgebra::primitive_dual_numbers(Field::Prime(2)).is_ok());
        assert!(Bialgebra::primitive_dual_numbers(Field::Rationals).is_err());
        let h = Bialgebra::primitive_dual_numbers(Field::Prime(2)).unwrap();
        let s = antipode_solve(&h).unwrap();
        // S(x) = −x = x over F_2
        assert_eq!(s, Mat::identity(Field::Prime(2), 2));
    }
}
