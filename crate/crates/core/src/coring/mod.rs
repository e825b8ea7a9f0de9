//! Corings over a finite-dimensional algebra: axioms, invariant closure and
//! the subcoring closure alternating invariance with purity.

mod bimodule;
mod purity;

pub use bimodule::{Bimodule, Side, TensorOverA};
pub use purity::{
    cohn_saturate, cohn_witness, find_projection, is_pure_submodule, CohnBound, CohnSaturation, CohnWitness,
};

use crate::algebra::{ground_algebra, Algebra};
use crate::coalgebra::{component_spaces, Coalgebra};
use crate::error::{ensure_dim, Error, Result};
use crate::field::Scalar;
use crate::matrix::{solve, Mat};
use crate::subspace::{tensor_vectors, Subspace};

/// A comonoid in `A`-bimodules: `delta` maps into the canonical basis of
/// `C ⊗_A C`, `counit` (`dim A × dim C`) maps into `A`.
#[derive(Clone, Debug)]
pub struct Coring {
    carrier: Bimodule,
    square: TensorOverA,
    delta: Mat,
    counit: Mat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoringViolation {
    DeltaNotLeftLinear(usize),
    DeltaNotRightLinear(usize),
    CounitNotLeftLinear(usize),
    CounitNotRightLinear(usize),
    Coassociativity(usize),
    LeftCounit(usize),
    RightCounit(usize),
}

impl Coring {
    pub fn new(carrier: Bimodule, delta: Mat, counit: Mat) -> Result<Coring> {
        let square = TensorOverA::new(&carrier, &carrier)?;
        ensure_dim("coring delta rows", square.dim(), delta.rows())?;
        ensure_dim("coring delta cols", carrier.dim(), delta.cols())?;
        ensure_dim("coring counit rows", carrier.base().dim(), counit.rows())?;
        ensure_dim("coring counit cols", carrier.dim(), counit.cols())?;
        Ok(Coring {
            carrier,
            square,
            delta,
            counit,
        })
    }

    /// Builds from plain tensors `Δ(c_i) ∈ C ⊗ C`, projected to `C ⊗_A C`.
    pub fn from_plain(carrier: Bimodule, plain: &[Vec<Scalar>], counit: Mat) -> Result<Coring> {
        let square = TensorOverA::new(&carrier, &carrier)?;
        let cols: Vec<Vec<Scalar>> = plain.iter().map(|t| square.class_of(t)).collect();
        let delta = Mat::from_columns(carrier.field(), square.dim(), &cols);
        Coring::new(carrier, delta, counit)
    }

    /// `A` with `Δ(a) = a ⊗_A 1` and `ε = id`.
    pub fn trivial(base: &Algebra) -> Coring {
        let f = base.field();
        let n = base.dim();
        let carrier = Bimodule::regular(base);
        let plain: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut e = vec![f.zero(); n];
                e[i] = f.one();
                tensor_vectors(&e, base.unit())
            })
            .collect();
        Coring::from_plain(carrier, &plain, Mat::identity(f, n)).expect("trivial coring")
    }

    /// Sweedler coring of `K ⊆ A` on `A ⊗ A`: `Δ(a⊗b) = (a⊗1) ⊗_A (1⊗b)`, `ε(a⊗b) = ab`.
    pub fn sweedler(base: &Algebra) -> Coring {
        let f = base.field();
        let n = base.dim();
        let carrier = Bimodule::enveloping(base);
        let unit = base.unit();
        let plain: Vec<Vec<Scalar>> = (0..n * n)
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                let mut left = vec![f.zero(); n * n];
                let mut right = vec![f.zero(); n * n];
                for u in 0..n {
                    left[i * n + u] = unit[u].clone();
                    right[u * n + j] = unit[u].clone();
                }
                tensor_vectors(&left, &right)
            })
            .collect();
        let counit_cols: Vec<Vec<Scalar>> = (0..n * n).map(|ij| base.basis_product(ij / n, ij % n)).collect();
        let counit = Mat::from_columns(f, n, &counit_cols);
        Coring::from_plain(carrier, &plain, counit).expect("Sweedler coring")
    }

    /// A coalgebra as a coring over the ground field.
    pub fn from_coalgebra(c: &Coalgebra) -> Coring {
        let f = c.field();
        let k = ground_algebra(f);
        let carrier = Bimodule::over_ground(&k, c.dim()).expect("ground bimodule");
        let plain: Vec<Vec<Scalar>> = (0..c.dim()).map(|i| c.coproduct_of_basis(i)).collect();
        let counit = Mat::from_rows(f, c.dim(), &[c.counit().to_vec()]);
        Coring::from_plain(carrier, &plain, counit).expect("coalgebra as coring")
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn square(&self) -> &TensorOverA {
        &self.square
    }

    pub fn delta(&self) -> &Mat {
        &self.delta
    }

    pub fn counit(&self) -> &Mat {
        &self.counit
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn with_counit(&self, counit: Mat) -> Result<Coring> {
        Coring::new(self.carrier.clone(), self.delta.clone(), counit)
    }

    /// Canonical plain representative of `Δ(x)`.
    pub fn delta_representative(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.square.lift(&self.delta.apply(x))
    }
}

/// Every failed identity; empty iff the coring axioms hold.
pub fn check_coring(c: &Coring) -> Vec<CoringViolation> {
    let mut out = Vec::new();
    let m = &c.carrier;
    let f = m.field();
    let n = m.dim();
    let a = m.base();
    let outer = c.square.outer();
    for i in 0..a.dim() {
        if &c.delta * &m.left()[i] != &outer.left()[i] * &c.delta {
            out.push(CoringViolation::DeltaNotLeftLinear(i));
        }
        if &c.delta * &m.right()[i] != &outer.right()[i] * &c.delta {
            out.push(CoringViolation::DeltaNotRightLinear(i));
        }
        let e = crate::subspace::unit_vector(f, a.dim(), i);
        if &c.counit * &m.left()[i] != &a.left_mult(&e) * &c.counit {
            out.push(CoringViolation::CounitNotLeftLinear(i));
        }
        if &c.counit * &m.right()[i] != &a.right_mult(&e) * &c.counit {
            out.push(CoringViolation::CounitNotRightLinear(i));
        }
    }
    // C ⊗_A C ⊗_A C as C⊗C⊗C modulo R⊗C + C⊗R
    let rel = c.square.relations();
    let mut triple = Subspace::zero(f, n * n * n);
    for r in rel.basis_vectors() {
        for k in 0..n {
            let e = crate::subspace::unit_vector(f, n, k);
            triple.insert(tensor_vectors(r, &e));
            triple.insert(tensor_vectors(&e, r));
        }
    }
    let reps: Vec<Vec<Scalar>> = (0..n)
        .map(|j| c.delta_representative(&crate::subspace::unit_vector(f, n, j)))
        .collect();
    let eps_left: Vec<Mat> = (0..n).map(|j| m.left_action(&c.counit.column(j))).collect();
    let eps_right: Vec<Mat> = (0..n).map(|k| m.right_action(&c.counit.column(k))).collect();
    for i in 0..n {
        let t = &reps[i];
        let mut lhs = vec![f.zero(); n * n * n];
        let mut rhs = vec![f.zero(); n * n * n];
        let mut left = vec![f.zero(); n];
        let mut right = vec![f.zero(); n];
        for j in 0..n {
            for k in 0..n {
                let coef = &t[j * n + k];
                if coef.is_zero() {
                    continue;
                }
                for (ab, x) in reps[j].iter().enumerate() {
                    if !x.is_zero() {
                        lhs[ab * n + k].add_mul(coef, x);
                    }
                }
                for (ab, x) in reps[k].iter().enumerate() {
                    if !x.is_zero() {
                        rhs[j * n * n + ab].add_mul(coef, x);
                    }
                }
                // ε(c_j)·c_k and c_j·ε(c_k)
                for r in 0..n {
                    left[r].add_mul(coef, eps_left[j].get(r, k));
                    right[r].add_mul(coef, eps_right[k].get(r, j));
                }
            }
        }
        let diff: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
        if !triple.contains_vector(&diff) {
            out.push(CoringViolation::Coassociativity(i));
        }
        let e = crate::subspace::unit_vector(f, n, i);
        if left != e {
            out.push(CoringViolation::LeftCounit(i));
        }
        if right != e {
            out.push(CoringViolation::RightCounit(i));
        }
    }
    out
}

/// `D·D`, the image of `D ⊗ D` in `C ⊗_A C`.
pub fn square_image(c: &Coring, d: &Subspace) -> Subspace {
    let mut out = Subspace::zero(c.carrier.field(), c.square.dim());
    for x in d.basis_vectors() {
        for y in d.basis_vectors() {
            out.insert(c.square.class_of(&tensor_vectors(x, y)));
        }
    }
    out
}

/// Whether `Δ(D) ⊆ D·D`.
pub fn is_invariant(c: &Coring, d: &Subspace) -> bool {
    let img = square_image(c, d);
    d.basis_vectors().iter().all(|x| img.contains_vector(&c.delta.apply(x)))
}

/// Smallest sub-bimodule containing `m` that also contains the left and
/// right components of the canonical representative of `Δ(x)` for each of its elements.
pub fn invariant_closure(c: &Coring, m: &Subspace) -> Result<Subspace> {
    ensure_dim("invariant_closure ambient", c.dim(), m.ambient_dim())?;
    let f = c.carrier.field();
    let n = c.dim();
    let mut w = c.carrier.sub_bimodule_generated(m);
    loop {
        let before = w.dim();
        for x in w.basis_vectors().to_vec() {
            let t = c.delta_representative(&x);
            let (l, r) = component_spaces(f, &t, n, n);
            for v in l.basis_vectors().iter().chain(r.basis_vectors()) {
                w.insert(v.clone());
            }
        }
        w = c.carrier.sub_bimodule_generated(&w);
        if w.dim() == before {
            return Ok(w);
        }
    }
}

/// Whether `D ⊗_A D → C ⊗_A C` is injective, for a sub-bimodule `D`.
pub fn tensor_square_injective(c: &Coring, d: &Subspace) -> Result<bool> {
    let sub = c.carrier.restrict(d)?;
    let dd = TensorOverA::new(&sub, &sub)?;
    Ok(dd.dim() == square_image(c, d).dim())
}

/// The coring on an invariant sub-bimodule whose tensor square embeds.
pub fn restrict_coring(c: &Coring, d: &Subspace) -> Result<Coring> {
    let sub = c.carrier.restrict(d)?;
    let dd = TensorOverA::new(&sub, &sub)?;
    let f = sub.field();
    let k = d.dim();
    let basis = d.basis_vectors();
    let phi_cols: Vec<Vec<Scalar>> = dd
        .representatives()
        .iter()
        .map(|&rs| c.square.class_of(&tensor_vectors(&basis[rs / k], &basis[rs % k])))
        .collect();
    let phi = Mat::from_columns(f, c.square.dim(), &phi_cols);
    if phi.rank() != dd.dim() {
        return Err(Error::InvalidStructure("tensor square does not embed".into()));
    }
    let rhs_cols: Vec<Vec<Scalar>> = basis.iter().map(|b| c.delta.apply(b)).collect();
    let rhs = Mat::from_columns(f, c.square.dim(), &rhs_cols);
    let delta = match solve(&phi, &rhs) {
        Ok(s) => s.particular,
        Err(Error::Inconsistent) => return Err(Error::InvalidStructure("sub-bimodule is not invariant".into())),
        Err(e) => return Err(e),
    };
    let counit = &c.counit * &d.basis().transpose();
    Coring::new(sub, delta, counit)
}

#[derive(Clone, Debug)]
pub struct SubcoringReport {
    pub closure: Subspace,
    pub rounds: usize,
    pub contains_seed: bool,
    pub invariant: bool,
    pub pure_left: bool,
    pub pure_right: bool,
    pub tensor_square_injective: bool,
    /// Axiom check of the restricted coring; `None` when the tensor square does not embed.
    pub coring_violations: Option<Vec<CoringViolation>>,
}

impl SubcoringReport {
    pub fn all_passed(&self) -> bool {
        self.contains_seed
            && self.invariant
            && self.pure_left
            && self.pure_right
            && self.tensor_square_injective
            && self.coring_violations.as_ref().is_some_and(Vec::is_empty)
    }
}

/// Alternates invariant closure and Cohn saturation from the sub-bimodule generated by `s`.
pub fn subcoring_closure(c: &Coring, s: &Subspace, bound: &CohnBound) -> Result<SubcoringReport> {
    ensure_dim("subcoring_closure ambient", c.dim(), s.ambient_dim())?;
    let mut cur = c.carrier.sub_bimodule_generated(s);
    let mut rounds = 0;
    let d = loop {
        rounds += 1;
        let inv = invariant_closure(c, &cur)?;
        let sat = cohn_saturate(&c.carrier, &inv, bound)?;
        if sat.result == inv {
            break inv;
        }
        cur = sat.result;
    };
    let contains_seed = d.contains(s)?;
    let invariant = is_invariant(c, &d);
    let pure_left = is_pure_submodule(&c.carrier, &d, Side::Left)?;
    let pure_right = is_pure_submodule(&c.carrier, &d, Side::Right)?;
    let injective = tensor_square_injective(c, &d)?;
    let coring_violations = if injective && invariant {
        Some(check_coring(&restrict_coring(c, &d)?))
    } else {
        None
    };
    Ok(SubcoringReport {
        closure: d,
        rounds,
        contains_seed,
        invariant,
        pure_left,
        pure_right,
        tensor_square_injective: injective,
        coring_violations,
    })
}
