//! Right comodules: coefficients, tensor products, duals, evaluation and
//! coevaluation, and the internal matrix algebra and coalgebra.

use super::{Bialgebra, HopfAlgebra};
use crate::algebra::{check_algebra, is_algebra_morphism, Algebra};
use crate::coalgebra::{check_coalgebra, push_tensor, subcoalgebra_generated, Coalgebra};
use crate::error::{ensure_dim, Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Mat;
use crate::subspace::{unit_vector, Subspace};

/// `rho` is `(dim·dim H) × dim`: column `j` is `ρ(v_j)` flattened as `a*dim H + t` for `v_a ⊗ h_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    coalgebra: Coalgebra,
    dim: usize,
    rho: Mat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComoduleViolation {
    Coassociativity(usize),
    Counit(usize),
}

/// Every failed comodule identity of `rho` over `h`.
pub fn check_comodule(h: &Coalgebra, dim: usize, rho: &Mat) -> Vec<ComoduleViolation> {
    let hd = h.dim();
    let f = h.field();
    let mut out = Vec::new();
    for j in 0..dim {
        let r = rho.column(j);
        let mut lhs = vec![f.zero(); dim * hd * hd];
        let mut rhs = vec![f.zero(); dim * hd * hd];
        let mut counit = vec![f.zero(); dim];
        for a in 0..dim {
            for t in 0..hd {
                let c = &r[a * hd + t];
                if c.is_zero() {
                    continue;
                }
                for bs in 0..dim * hd {
                    let x = rho.get(bs, a);
                    if !x.is_zero() {
                        lhs[bs * hd + t].add_mul(c, x);
                    }
                }
                for su in 0..hd * hd {
                    let x = h.delta().get(su, t);
                    if !x.is_zero() {
                        rhs[a * hd * hd + su].add_mul(c, x);
                    }
                }
                counit[a].add_mul(c, &h.counit()[t]);
            }
        }
        if lhs != rhs {
            out.push(ComoduleViolation::Coassociativity(j));
        }
        if counit != unit_vector(f, dim, j) {
            out.push(ComoduleViolation::Counit(j));
        }
    }
    out
}

impl Comodule {
    pub fn new(coalgebra: Coalgebra, dim: usize, rho: Mat) -> Result<Comodule> {
        ensure_dim("coaction rows", dim * coalgebra.dim(), rho.rows())?;
        ensure_dim("coaction cols", dim, rho.cols())?;
        if let Some(v) = check_comodule(&coalgebra, dim, &rho).first() {
            return Err(Error::InvalidStructure(format!("not a comodule: {v:?}")));
        }
        Ok(Comodule { coalgebra, dim, rho })
    }

    /// `C` over itself with `ρ = Δ`.
    pub fn regular(c: &Coalgebra) -> Comodule {
        Comodule::new(c.clone(), c.dim(), c.delta().clone()).expect("regular comodule")
    }

    /// `ρ(v) = v ⊗ g` for a grouplike `g`.
    pub fn with_grouplike(c: &Coalgebra, dim: usize, g: &[Scalar]) -> Result<Comodule> {
        let hd = c.dim();
        let rho = Mat::from_fn(c.field(), dim * hd, dim, |at, j| {
            if at / hd == j {
                g[at % hd].clone()
            } else {
                c.field().zero()
            }
        });
        Comodule::new(c.clone(), dim, rho)
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &Mat {
        &self.rho
    }

    pub fn field(&self) -> Field {
        self.coalgebra.field()
    }

    pub fn coaction(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rho.apply(v)
    }
}

/// `ρ(v) = v ⊗ 1`.
pub fn trivial_comodule(h: &Bialgebra, dim: usize) -> Comodule {
    Comodule::with_grouplike(h.coalgebra(), dim, h.algebra().unit()).expect("unit is grouplike")
}

/// Whether `ρ_N ∘ f = (f ⊗ id) ∘ ρ_M`.
pub fn is_colinear(f: &Mat, m: &Comodule, n: &Comodule) -> Result<bool> {
    ensure_dim("colinear rows", n.dim, f.rows())?;
    ensure_dim("colinear cols", m.dim, f.cols())?;
    if m.coalgebra != n.coalgebra {
        return Err(Error::InvalidStructure("comodules over different coalgebras".into()));
    }
    let id = Mat::identity(m.field(), m.coalgebra.dim());
    Ok((0..m.dim).all(|j| n.coaction(&f.column(j)) == push_tensor(f, &id, &m.rho.column(j))))
}

/// Smallest subcoalgebra `D` of the coefficient coalgebra with `ρ(M) ⊆ M ⊗ D`.
pub fn coefficient_coalgebra(m: &Comodule) -> Result<Subspace> {
    let hd = m.coalgebra.dim();
    let f = m.field();
    let mut span = Subspace::zero(f, hd);
    for j in 0..m.dim {
        let r = m.rho.column(j);
        for a in 0..m.dim {
            span.insert(r[a * hd..(a + 1) * hd].to_vec());
        }
    }
    subcoalgebra_generated(&m.coalgebra, &span)
}

/// `V ⊗ W` with `ρ(v⊗w) = v₀⊗w₀ ⊗ v₁w₁`.
pub fn tensor_comodule(h: &Bialgebra, v: &Comodule, w: &Comodule) -> Result<Comodule> {
    if &v.coalgebra != h.coalgebra() || &w.coalgebra != h.coalgebra() {
        return Err(Error::InvalidStructure("comodules are not over this bialgebra".into()));
    }
    let hd = h.dim();
    let (n, m) = (v.dim, w.dim);
    let f = h.field();
    let a = h.algebra();
    let cols: Vec<Vec<Scalar>> = (0..n * m)
        .map(|ij| {
            let (i, j) = (ij / m, ij % m);
            let rv = v.rho.column(i);
            let rw = w.rho.column(j);
            let mut out = vec![f.zero(); n * m * hd];
            for x in 0..n {
                for s in 0..hd {
                    let c1 = &rv[x * hd + s];
                    if c1.is_zero() {
                        continue;
                    }
                    for y in 0..m {
                        for t in 0..hd {
                            let c2 = &rw[y * hd + t];
                            if c2.is_zero() {
                                continue;
                            }
                            let c = c1 * c2;
                            for (u, pu) in a.basis_product(s, t).iter().enumerate() {
                                if !pu.is_zero() {
                                    out[(x * m + y) * hd + u].add_mul(&c, pu);
                                }
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    let rho = Mat::from_columns(f, n * m * hd, &cols);
    Comodule::new(h.coalgebra().clone(), n * m, rho)
}

/// `V*` on the dual basis with `ρ(v*_i) = Σ_j v*_j ⊗ Σ_t r[j][i,t] S(h_t)`.
pub fn dual_comodule(h: &HopfAlgebra, v: &Comodule) -> Result<Comodule> {
    if &v.coalgebra != h.bialgebra().coalgebra() {
        return Err(Error::InvalidStructure("comodule is not over this Hopf algebra".into()));
    }
    let hd = h.dim();
    let n = v.dim;
    let f = h.field();
    let s = h.antipode();
    let rho = Mat::from_fn(f, n * hd, n, |jt, i| {
        let (j, u) = (jt / hd, jt % hd);
        let mut acc = f.zero();
        for t in 0..hd {
            let r = v.rho.get(i * hd + t, j);
            if !r.is_zero() {
                acc.add_mul(r, s.get(u, t));
            }
        }
        acc
    });
    Comodule::new(h.bialgebra().coalgebra().clone(), n, rho)
}

/// Evaluation `V* ⊗ V → K` (index `i*n + j`) and coevaluation `K → V ⊗ V*`
/// (index `k*n + i`) with their certificates.
#[derive(Clone, Debug)]
pub struct EvCo {
    pub dual: Comodule,
    pub ev: Mat,
    pub co: Mat,
    pub ev_colinear: bool,
    pub co_colinear: bool,
    pub zig_zag: bool,
}

impl EvCo {
    pub fn passed(&self) -> bool {
        self.ev_colinear && self.co_colinear && self.zig_zag
    }
}

fn pairing(field: Field, n: usize) -> (Mat, Mat) {
    let ev = Mat::from_fn(field, 1, n * n, |_, ij| if ij / n == ij % n { field.one() } else { field.zero() });
    (ev.clone(), ev.transpose())
}

/// `(ev ⊗ id)(id ⊗ co) = id` on `V*` and `(id ⊗ ev)(co ⊗ id) = id` on `V`.
pub fn zig_zag_holds(field: Field, n: usize, ev: &Mat, co: &Mat) -> bool {
    let id = Mat::identity(field, n);
    let on_dual = &ev.kron(&id) * &id.kron(co);
    let on_v = &id.kron(ev) * &co.kron(&id);
    on_dual == id && on_v == id
}

pub fn ev_co_maps(h: &HopfAlgebra, v: &Comodule) -> Result<EvCo> {
    let f = h.field();
    let n = v.dim;
    let dual = dual_comodule(h, v)?;
    let b = h.bialgebra();
    let unit = trivial_comodule(b, 1);
    let (ev, co) = pairing(f, n);
    let dv = tensor_comodule(b, &dual, v)?;
    let vd = tensor_comodule(b, v, &dual)?;
    Ok(EvCo {
        ev_colinear: is_colinear(&ev, &dv, &unit)?,
        co_colinear: is_colinear(&co, &unit, &vd)?,
        zig_zag: zig_zag_holds(f, n, &ev, &co),
        dual,
        ev,
        co,
    })
}

/// An algebra in comodules with its colinearity certificates.
#[derive(Clone, Debug)]
pub struct InternalAlgebra {
    pub algebra: Algebra,
    pub comodule: Comodule,
    pub axioms_hold: bool,
    pub mult_colinear: bool,
    pub unit_colinear: bool,
}

impl InternalAlgebra {
    pub fn passed(&self) -> bool {
        self.axioms_hold && self.mult_colinear && self.unit_colinear
    }
}

/// A coalgebra in comodules with its colinearity certificates.
#[derive(Clone, Debug)]
pub struct InternalCoalgebra {
    pub coalgebra: Coalgebra,
    pub comodule: Comodule,
    pub axioms_hold: bool,
    pub delta_colinear: bool,
    pub counit_colinear: bool,
}

impl InternalCoalgebra {
    pub fn passed(&self) -> bool {
        self.axioms_hold && self.delta_colinear && self.counit_colinear
    }
}

/// `V ⊗ V*` with multiplication `id ⊗ ev ⊗ id` and unit `co`.
pub fn endomorphism_algebra(h: &HopfAlgebra, v: &Comodule) -> Result<InternalAlgebra> {
    let f = h.field();
    let n = v.dim;
    let b = h.bialgebra();
    let dual = dual_comodule(h, v)?;
    let (ev, co) = pairing(f, n);
    let id = Mat::identity(f, n);
    let mult = id.kron(&ev).kron(&id);
    let algebra = Algebra::new(f, n * n, mult.clone(), co.column(0), format!("End({})", n))?;
    let comodule = tensor_comodule(b, v, &dual)?;
    let square = tensor_comodule(b, &comodule, &comodule)?;
    Ok(InternalAlgebra {
        axioms_hold: check_algebra(&algebra).is_empty(),
        mult_colinear: is_colinear(&mult, &square, &comodule)?,
        unit_colinear: is_colinear(&co, &trivial_comodule(b, 1), &comodule)?,
        algebra,
        comodule,
    })
}

/// `V* ⊗ V` with comultiplication `id ⊗ co ⊗ id` and counit `ev`.
pub fn matrix_coalgebra(h: &HopfAlgebra, v: &Comodule) -> Result<InternalCoalgebra> {
    let f = h.field();
    let n = v.dim;
    let b = h.bialgebra();
    let dual = dual_comodule(h, v)?;
    let (ev, co) = pairing(f, n);
    let id = Mat::identity(f, n);
    let delta = id.kron(&co).kron(&id);
    let coalgebra = Coalgebra::new(f, n * n, delta.clone(), ev.row(0).to_vec(), format!("Mat({})", n))?;
    let comodule = tensor_comodule(b, &dual, v)?;
    let square = tensor_comodule(b, &comodule, &comodule)?;
    Ok(InternalCoalgebra {
        axioms_hold: check_coalgebra(&coalgebra).is_empty(),
        delta_colinear: is_colinear(&delta, &comodule, &square)?,
        counit_colinear: is_colinear(&ev, &comodule, &trivial_comodule(b, 1))?,
        coalgebra,
        comodule,
    })
}

/// An algebra whose multiplication and unit are colinear for a coaction.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    algebra: Algebra,
    comodule: Comodule,
}

impl ComoduleAlgebra {
    pub fn new(h: &Bialgebra, algebra: Algebra, rho: Mat) -> Result<ComoduleAlgebra> {
        if !check_algebra(&algebra).is_empty() {
            return Err(Error::InvalidStructure("not an algebra".into()));
        }
        let comodule = Comodule::new(h.coalgebra().clone(), algebra.dim(), rho)?;
        let square = tensor_comodule(h, &comodule, &comodule)?;
        if !is_colinear(algebra.mult(), &square, &comodule)? {
            return Err(Error::InvalidStructure("multiplication is not colinear".into()));
        }
        let unit = Mat::from_columns(algebra.field(), algebra.dim(), &[algebra.unit().to_vec()]);
        if !is_colinear(&unit, &trivial_comodule(h, 1), &comodule)? {
            return Err(Error::InvalidStructure("unit is not colinear".into()));
        }
        Ok(ComoduleAlgebra { algebra, comodule })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn comodule(&self) -> &Comodule {
        &self.comodule
    }
}

#[derive(Clone, Debug)]
pub struct RegularEmbedding {
    /// `A → A ⊗ A*`, target index `k*n + i` for `v_k ⊗ v*_i`.
    pub phi: Mat,
    pub target: InternalAlgebra,
    pub algebra_morphism: bool,
    pub colinear: bool,
    pub rank: usize,
}

impl RegularEmbedding {
    pub fn passed(&self) -> bool {
        self.algebra_morphism && self.colinear && self.rank == self.phi.cols() && self.target.passed()
    }
}

/// `φ(a) = Σ_i a v_i ⊗ v*_i`, the left regular representation.
pub fn regular_embedding(h: &HopfAlgebra, a: &ComoduleAlgebra) -> Result<RegularEmbedding> {
    let alg = &a.algebra;
    let n = alg.dim();
    let target = endomorphism_algebra(h, &a.comodule)?;
    let phi = Mat::from_fn(alg.field(), n * n, n, |ki, p| alg.structure_constant(p, ki % n, ki / n).clone());
    Ok(RegularEmbedding {
        algebra_morphism: is_algebra_morphism(&phi, alg, &target.algebra),
        colinear: is_colinear(&phi, &a.comodule, &target.comodule)?,
        rank: phi.rank(),
        phi,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_algebra;
    use crate::coalgebra::{comatrix_coalgebra, grouplike_coalgebra};

    fn kc2() -> HopfAlgebra {
        HopfAlgebra::new(Bialgebra::cyclic_group(2, Field::Prime(2))).unwrap()
    }

    #[test]
    fn coefficients() {
        let f = Field::Prime(2);
        let g = grouplike_coalgebra(f, 2);
        let m = Comodule::with_grouplike(&g, 3, &unit_vector(f, 2, 0)).unwrap();
        assert_eq!(coefficient_coalgebra(&m).unwrap(), Subspace::coordinate(f, 2, &[0]));
        let c = comatrix_coalgebra(2, f);
        assert!(coefficient_coalgebra(&Comodule::regular(&c)).unwrap().is_full());
        let z = Comodule::new(g.clone(), 0, Mat::zeros(f, 0, 0)).unwrap();
        assert!(coefficient_coalgebra(&z).unwrap().is_zero());
    }

    #[test]
    fn regular_dual_of_kc2() {
        let h = kc2();
        let v = Comodule::regular(h.bialgebra().coalgebra());
        let d = dual_comodule(&h, &v).unwrap();
        // ρ(δ_g) = δ_g ⊗ g
        assert_eq!(d.coaction(&unit_vector(Field::Prime(2), 2, 1)), unit_vector(Field::Prime(2), 4, 3));
        let e = ev_co_maps(&h, &v).unwrap();
        assert!(e.passed());
    }

    #[test]
    fn double_dual_recovers_coaction() {
        // every catalogue Hopf algebra has S² = id, so V** = V on the nose
        let f = Field::Prime(2);
        let hs = [
            kc2(),
            HopfAlgebra::new(Bialgebra::cyclic_group(3, f)).unwrap(),
            HopfAlgebra::new(Bialgebra::primitive_dual_numbers(f).unwrap()).unwrap(),
        ];
        let mut seen = 0;
        for h in &hs {
            let c = h.bialgebra().coalgebra();
            let mut vs = vec![Comodule::regular(c)];
            for dim in 1..=2 {
                let cells = dim * c.dim() * dim;
                for mask in 0u32..1 << cells {
                    let data = (0..cells).map(|b| f.from_i64(i64::from(mask >> b & 1))).collect();
                    let rho = Mat::from_data(f, dim * c.dim(), dim, data).unwrap();
                    if let Ok(v) = Comodule::new(c.clone(), dim, rho) {
                        vs.push(v);
                    }
                }
            }
            for v in vs {
                let dd = dual_comodule(h, &dual_comodule(h, &v).unwrap()).unwrap();
                assert_eq!(dd.rho(), v.rho());
                seen += 1;
            }
        }
        assert!(seen > 3);
    }

    #[test]
    fn internal_structures_with_trivial_coaction() {
        let h = kc2();
        let f = h.field();
        let v = trivial_comodule(h.bialgebra(), 2);
        let end = endomorphism_algebra(&h, &v).unwrap();
        assert!(end.passed());
        assert_eq!(end.algebra.mult(), matrix_algebra(2, f).mult());
        let mc = matrix_coalgebra(&h, &v).unwrap();
        assert!(mc.passed());
        assert_eq!(mc.coalgebra.delta(), comatrix_coalgebra(2, f).delta());
        assert_eq!(crate::coalgebra::dual_coalgebra(&end.algebra).delta(), mc.coalgebra.delta());
    }

    #[test]
    fn regular_embedding_of_kc2() {
        let h = kc2();
        let b = h.bialgebra();
        let a = ComoduleAlgebra::new(b, b.algebra().clone(), b.coalgebra().delta().clone()).unwrap();
        let r = regular_embedding(&h, &a).unwrap();
        assert!(r.passed());
        assert_eq!(r.rank, 2);
    }
}
