//! Coalgebras with a compatible action or coaction of a bialgebra.

use super::comodule::{check_comodule, ComoduleViolation};
use super::Bialgebra;
use crate::algebra::Algebra;
use crate::coalgebra::{check_coalgebra, push_tensor, subcoalgebra_generated, Coalgebra};
use crate::error::{ensure_dim, Error, Result};
use crate::field::Scalar;
use crate::matrix::Mat;
use crate::subspace::{tensor_vectors, unit_vector, Subspace};

/// `action[i]` is the matrix of `c ↦ h_i·c`.
#[derive(Clone, Debug)]
pub struct ModuleCoalgebra {
    h: Bialgebra,
    c: Coalgebra,
    action: Vec<Mat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleCoalgebraViolation {
    Unit,
    Associativity(usize, usize),
    /// `Δ(h_i·c_j) ≠ Σ h₁·c₍₁₎ ⊗ h₂·c₍₂₎`.
    Comultiplication(usize, usize),
    Counit(usize, usize),
}

pub fn check_module_coalgebra(h: &Bialgebra, c: &Coalgebra, action: &[Mat]) -> Vec<ModuleCoalgebraViolation> {
    let mut out = Vec::new();
    let a = h.algebra();
    let hc = h.coalgebra();
    let f = c.field();
    let n = c.dim();
    let act = |v: &[Scalar]| {
        let mut m = Mat::zeros(f, n, n);
        for (x, ai) in v.iter().zip(action) {
            if !x.is_zero() {
                m = &m + &ai.scale(x);
            }
        }
        m
    };
    if act(a.unit()) != Mat::identity(f, n) {
        out.push(ModuleCoalgebraViolation::Unit);
    }
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            if act(&a.basis_product(i, j)) != &action[i] * &action[j] {
                out.push(ModuleCoalgebraViolation::Associativity(i, j));
            }
        }
    }
    for i in 0..h.dim() {
        for j in 0..n {
            let hc_j = action[i].column(j);
            let lhs = c.coproduct(&hc_j);
            let dc = c.coproduct_of_basis(j);
            let mut rhs = vec![f.zero(); n * n];
            for s in 0..h.dim() {
                for t in 0..h.dim() {
                    let d = hc.structure_constant(i, s, t);
                    if d.is_zero() {
                        continue;
                    }
                    for (x, y) in rhs.iter_mut().zip(push_tensor(&action[s], &action[t], &dc)) {
                        x.add_mul(d, &y);
                    }
                }
            }
            if lhs != rhs {
                out.push(ModuleCoalgebraViolation::Comultiplication(i, j));
            }
            if c.counit_of(&hc_j) != &hc.counit()[i] * &c.counit()[j] {
                out.push(ModuleCoalgebraViolation::Counit(i, j));
            }
        }
    }
    out
}

impl ModuleCoalgebra {
    pub fn new(h: Bialgebra, c: Coalgebra, action: Vec<Mat>) -> Result<ModuleCoalgebra> {
        ensure_dim("action count", h.dim(), action.len())?;
        for m in &action {
            ensure_dim("action rows", c.dim(), m.rows())?;
            ensure_dim("action cols", c.dim(), m.cols())?;
        }
        if let Some(first) = check_coalgebra(&c).first() {
            return Err(Error::InvalidStructure(format!("not a coalgebra: {first:?}")));
        }
        if let Some(v) = check_module_coalgebra(&h, &c, &action).first() {
            return Err(Error::InvalidStructure(format!("not a module coalgebra: {v:?}")));
        }
        Ok(ModuleCoalgebra { h, c, action })
    }

    /// `h·c = ε(h)c`.
    pub fn trivial(h: Bialgebra, c: Coalgebra) -> Result<ModuleCoalgebra> {
        let action = h
            .coalgebra()
            .counit()
            .iter()
            .map(|e| Mat::identity(c.field(), c.dim()).scale(e))
            .collect();
        ModuleCoalgebra::new(h, c, action)
    }

    /// `H` acting on its own coalgebra by left multiplication.
    pub fn left_regular(h: Bialgebra) -> Result<ModuleCoalgebra> {
        let f = h.field();
        let n = h.dim();
        let action = (0..n).map(|i| h.algebra().left_mult(&unit_vector(f, n, i))).collect();
        let c = h.coalgebra().clone();
        ModuleCoalgebra::new(h, c, action)
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.h
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.c
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }
}

#[derive(Clone, Debug)]
pub struct ModuleClosure {
    /// The subcoalgebra generated by the seed.
    pub generated: Subspace,
    pub closure: Subspace,
    pub submodule: bool,
    pub delta_stable: bool,
    pub contains_seed: bool,
}

impl ModuleClosure {
    pub fn passed(&self) -> bool {
        self.submodule && self.delta_stable && self.contains_seed
    }
}

/// `D = H·E` for `E` the subcoalgebra generated by `seed`.
pub fn module_subcoalgebra_closure(mc: &ModuleCoalgebra, seed: &Subspace) -> Result<ModuleClosure> {
    let c = &mc.c;
    let e = subcoalgebra_generated(c, seed)?;
    let mut d = Subspace::zero(c.field(), c.dim());
    for m in &mc.action {
        for x in e.basis_vectors() {
            d.insert(m.apply(x));
        }
    }
    let submodule = d
        .basis_vectors()
        .iter()
        .all(|x| mc.action.iter().all(|m| d.contains_vector(&m.apply(x))));
    let delta_stable = d.basis_vectors().iter().all(|x| d.tensor_contains(&d, &c.coproduct(x)));
    Ok(ModuleClosure {
        contains_seed: d.contains(seed)?,
        generated: e,
        closure: d,
        submodule,
        delta_stable,
    })
}

/// `rho` is `(dim C · dim H) × dim C`, index `j*dim H + t` for `c_j ⊗ h_t`.
#[derive(Clone, Debug)]
pub struct ComoduleCoalgebra {
    h: Bialgebra,
    c: Coalgebra,
    rho: Mat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComoduleCoalgebraViolation {
    Comodule(ComoduleViolation),
    /// `Σ c₍₁₎₀ ⊗ c₍₂₎₀ ⊗ c₍₁₎₁c₍₂₎₁ ≠ Σ c₀₍₁₎ ⊗ c₀₍₂₎ ⊗ c₁`.
    Comultiplication(usize),
    /// `Σ ε(c₀)c₁ ≠ ε(c)1`.
    Counit(usize),
}

/// `Σ c₍₁₎₀ ⊗ c₍₂₎₀ ⊗ c₍₁₎₁c₍₂₎₁` for a plain tensor `t = Σ c₍₁₎ ⊗ c₍₂₎`, in `C ⊗ C ⊗ H`.
fn coact_tensor(a: &Algebra, rho: &Mat, n: usize, t: &[Scalar]) -> Vec<Scalar> {
    let hd = a.dim();
    let f = a.field();
    let mut out = vec![f.zero(); n * n * hd];
    for j in 0..n {
        for k in 0..n {
            let c = &t[j * n + k];
            if c.is_zero() {
                continue;
            }
            for x in 0..n {
                for s in 0..hd {
                    let r1 = rho.get(x * hd + s, j);
                    if r1.is_zero() {
                        continue;
                    }
                    let c1 = c * r1;
                    for y in 0..n {
                        for u in 0..hd {
                            let r2 = rho.get(y * hd + u, k);
                            if r2.is_zero() {
                                continue;
                            }
                            let c2 = &c1 * r2;
                            for (w, p) in a.basis_product(s, u).iter().enumerate() {
                                if !p.is_zero() {
                                    out[(x * n + y) * hd + w].add_mul(&c2, p);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// `(Δ ⊗ id)ρ(v)` in `C ⊗ C ⊗ H`.
fn delta_of_coaction(c: &Coalgebra, hd: usize, rho_v: &[Scalar]) -> Vec<Scalar> {
    let n = c.dim();
    let f = c.field();
    let mut out = vec![f.zero(); n * n * hd];
    for a in 0..n {
        for t in 0..hd {
            let r = &rho_v[a * hd + t];
            if r.is_zero() {
                continue;
            }
            for xy in 0..n * n {
                let d = c.delta().get(xy, a);
                if !d.is_zero() {
                    out[xy * hd + t].add_mul(r, d);
                }
            }
        }
    }
    out
}

pub fn check_comodule_coalgebra(h: &Bialgebra, c: &Coalgebra, rho: &Mat) -> Vec<ComoduleCoalgebraViolation> {
    let mut out: Vec<ComoduleCoalgebraViolation> = check_comodule(h.coalgebra(), c.dim(), rho)
        .into_iter()
        .map(ComoduleCoalgebraViolation::Comodule)
        .collect();
    let n = c.dim();
    let hd = h.dim();
    let f = c.field();
    for i in 0..n {
        let lhs = coact_tensor(h.algebra(), rho, n, &c.coproduct_of_basis(i));
        let rhs = delta_of_coaction(c, hd, &rho.column(i));
        if lhs != rhs {
            out.push(ComoduleCoalgebraViolation::Comultiplication(i));
        }
        let mut e = vec![f.zero(); hd];
        for a in 0..n {
            for t in 0..hd {
                let r = rho.get(a * hd + t, i);
                if !r.is_zero() {
                    e[t].add_mul(&c.counit()[a], r);
                }
            }
        }
        let expect: Vec<Scalar> = h.algebra().unit().iter().map(|u| u * &c.counit()[i]).collect();
        if e != expect {
            out.push(ComoduleCoalgebraViolation::Counit(i));
        }
    }
    out
}

impl ComoduleCoalgebra {
    pub fn new(h: Bialgebra, c: Coalgebra, rho: Mat) -> Result<ComoduleCoalgebra> {
        ensure_dim("coaction rows", c.dim() * h.dim(), rho.rows())?;
        ensure_dim("coaction cols", c.dim(), rho.cols())?;
        if let Some(first) = check_coalgebra(&c).first() {
            return Err(Error::InvalidStructure(format!("not a coalgebra: {first:?}")));
        }
        if let Some(v) = check_comodule_coalgebra(&h, &c, &rho).first() {
            return Err(Error::InvalidStructure(format!("not a comodule coalgebra: {v:?}")));
        }
        Ok(ComoduleCoalgebra { h, c, rho })
    }

    /// `ρ(c) = c ⊗ 1`.
    pub fn trivial(h: Bialgebra, c: Coalgebra) -> Result<ComoduleCoalgebra> {
        let hd = h.dim();
        let unit = h.algebra().unit().to_vec();
        let f = c.field();
        let rho = Mat::from_fn(f, c.dim() * hd, c.dim(), |jt, i| if jt / hd == i { unit[jt % hd].clone() } else { f.zero() });
        ComoduleCoalgebra::new(h, c, rho)
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.h
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.c
    }

    pub fn rho(&self) -> &Mat {
        &self.rho
    }

    /// `(id ⊗ α_t)ρ(v)` for the dual basis functional `α_t`.
    pub fn contract(&self, v: &[Scalar], t: usize) -> Vec<Scalar> {
        let hd = self.h.dim();
        let r = self.rho.apply(v);
        (0..self.c.dim()).map(|a| r[a * hd + t].clone()).collect()
    }

    /// `(id ⊗ β)ρ(v)` for an arbitrary functional `β` on `H`.
    pub fn contract_with(&self, v: &[Scalar], beta: &[Scalar]) -> Vec<Scalar> {
        let hd = self.h.dim();
        let f = self.c.field();
        let r = self.rho.apply(v);
        (0..self.c.dim())
            .map(|a| {
                let mut acc = f.zero();
                for t in 0..hd {
                    if !r[a * hd + t].is_zero() && !beta[t].is_zero() {
                        acc.add_mul(&r[a * hd + t], &beta[t]);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Rank factorization of `(a, b) ↦ f(ab)` on `V × V`: pairs `(g_i, h_i)` of
/// functionals on `A` with `f(ab) = Σ g_i(a)h_i(b)` for `a, b ∈ V`.
pub fn local_representativity(a: &Algebra, f: &[Scalar], v: &Subspace) -> Result<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
    ensure_dim("functional length", a.dim(), f.len())?;
    ensure_dim("subspace ambient", a.dim(), v.ambient_dim())?;
    let field = a.field();
    let basis = v.basis_vectors();
    let k = basis.len();
    let form = Mat::from_fn(field, k, k, |r, s| {
        let p = a.product(&basis[r], &basis[s]);
        crate::coalgebra::dot(f, &p, field)
    });
    let (rref, pivots) = form.rref();
    let piv_v = v.pivots();
    // form = C·R with C the pivot columns of the form and R the nonzero rows of its RREF
    let mut pairs = Vec::with_capacity(pivots.len());
    for (i, &pc) in pivots.iter().enumerate() {
        let mut g = vec![field.zero(); a.dim()];
        let mut h = vec![field.zero(); a.dim()];
        for r in 0..k {
            g[piv_v[r]] = form.get(r, pc).clone();
            h[piv_v[r]] = rref.get(i, r).clone();
        }
        pairs.push((g, h));
    }
    Ok(pairs)
}

/// Checks `f(v_r v_s) = Σ g_i(v_r)h_i(v_s)` on all basis pairs of `V`.
pub fn verify_local_representativity(
    a: &Algebra,
    f: &[Scalar],
    v: &Subspace,
    pairs: &[(Vec<Scalar>, Vec<Scalar>)],
) -> bool {
    let field = a.field();
    let dot = |x: &[Scalar], y: &[Scalar]| crate::coalgebra::dot(x, y, field);
    v.basis_vectors().iter().all(|x| {
        v.basis_vectors().iter().all(|y| {
            let mut acc = field.zero();
            for (g, h) in pairs {
                acc += &(&dot(g, x) * &dot(h, y));
            }
            acc == dot(f, &a.product(x, y))
        })
    })
}

/// Per (basis element of `E`, dual basis functional) outcome of the three-stage expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweedlerCheck {
    pub element: usize,
    pub functional: usize,
    /// `Δ((id⊗α)ρ(d)) ∈ D ⊗ D`.
    pub direct: bool,
    /// Equals `(id⊗id⊗α)` of the compatibility-expanded form.
    pub compatibility: bool,
    /// Equals `Σ_i (id⊗β_i)ρ(d₍₁₎) ⊗ (id⊗γ_i)ρ(d₍₂₎)` with every factor in `D`.
    pub factored: bool,
}

impl SweedlerCheck {
    pub fn passed(&self) -> bool {
        self.direct && self.compatibility && self.factored
    }
}

#[derive(Clone, Debug)]
pub struct ComoduleClosure {
    pub generated: Subspace,
    pub closure: Subspace,
    /// `cf_H(D)`, the coefficient subcoalgebra of `H` used by the factored stage.
    pub coefficients: Subspace,
    pub rho_stable: bool,
    pub delta_stable: bool,
    pub contains_seed: bool,
    pub sweedler: Vec<SweedlerCheck>,
}

impl ComoduleClosure {
    pub fn passed(&self) -> bool {
        self.rho_stable && self.delta_stable && self.contains_seed && self.sweedler.iter().all(SweedlerCheck::passed)
    }
}

/// `D = H*·E`: the span of `(id ⊗ α)ρ(e)` over a basis of the subcoalgebra
/// `E` generated by `seed` and the dual basis of `H`.
pub fn comodule_subcoalgebra_closure(cc: &ComoduleCoalgebra, seed: &Subspace) -> Result<ComoduleClosure> {
    let c = &cc.c;
    let n = c.dim();
    let hd = cc.h.dim();
    let field = c.field();
    let e = subcoalgebra_generated(c, seed)?;
    let mut d = Subspace::zero(field, n);
    for x in e.basis_vectors() {
        for t in 0..hd {
            d.insert(cc.contract(x, t));
        }
    }
    let rho_stable = d.basis_vectors().iter().all(|x| (0..hd).all(|t| d.contains_vector(&cc.contract(x, t))));
    let delta_stable = d.basis_vectors().iter().all(|x| d.tensor_contains(&d, &c.coproduct(x)));

    let mut coeff = Subspace::zero(field, hd);
    for x in d.basis_vectors() {
        let r = cc.rho.apply(x);
        for a in 0..n {
            coeff.insert(r[a * hd..(a + 1) * hd].to_vec());
        }
    }
    let coefficients = subcoalgebra_generated(cc.h.coalgebra(), &coeff)?;

    let mut sweedler = Vec::new();
    for (ei, x) in e.basis_vectors().iter().enumerate() {
        let dx = c.coproduct(x);
        let compat = coact_tensor(cc.h.algebra(), &cc.rho, n, &dx);
        for t in 0..hd {
            let alpha = unit_vector(field, hd, t);
            let lhs = c.coproduct(&cc.contract(x, t));
            let direct = d.tensor_contains(&d, &lhs);
            let contracted: Vec<Scalar> = (0..n * n).map(|xy| compat[xy * hd + t].clone()).collect();
            let compatibility = contracted == lhs;
            let pairs = local_representativity(cc.h.algebra(), &alpha, &coefficients)?;
            let mut factored_sum = vec![field.zero(); n * n];
            let mut factors_in_d = true;
            for j in 0..n {
                for k in 0..n {
                    let coef = &dx[j * n + k];
                    if coef.is_zero() {
                        continue;
                    }
                    let cj = unit_vector(field, n, j);
                    let ck = unit_vector(field, n, k);
                    for (beta, gamma) in &pairs {
                        let l = cc.contract_with(&cj, beta);
                        let r = cc.contract_with(&ck, gamma);
                        for (acc, v) in factored_sum.iter_mut().zip(tensor_vectors(&l, &r)) {
                            acc.add_mul(coef, &v);
                        }
                    }
                }
            }
            // the components d₍₁₎, d₍₂₎ range over E, so each factor lies in D
            let (left, right) = crate::coalgebra::component_spaces(field, &dx, n, n);
            for (beta, gamma) in &pairs {
                for l in left.basis_vectors() {
                    factors_in_d &= d.contains_vector(&cc.contract_with(l, beta));
                }
                for r in right.basis_vectors() {
                    factors_in_d &= d.contains_vector(&cc.contract_with(r, gamma));
                }
            }
            sweedler.push(SweedlerCheck {
                element: ei,
                functional: t,
                direct,
                compatibility,
                factored: factors_in_d && factored_sum == lhs,
            });
        }
    }
    Ok(ComoduleClosure {
        contains_seed: d.contains(seed)?,
        generated: e,
        closure: d,
        coefficients,
        rho_stable,
        delta_stable,
        sweedler,
    })
}

/// Coalgebra on `H ⊗ C` (index `h*dim C + c`):
/// `Δ(h⊗c) = Σ (h₁ ⊗ c₍₁₎₀) ⊗ (h₂c₍₁₎₁ ⊗ c₍₂₎)`, `ε(h⊗c) = ε(h)ε(c)`.
pub fn smash_coproduct(h: &Bialgebra, cc: &ComoduleCoalgebra) -> Result<Coalgebra> {
    if &cc.h != h {
        return Err(Error::InvalidStructure("coaction is over a different bialgebra".into()));
    }
    let c = &cc.c;
    let (hd, n) = (h.dim(), c.dim());
    let dim = hd * n;
    let field = c.field();
    let a = h.algebra();
    let hc = h.coalgebra();
    let counit = (0..dim).map(|x| &hc.counit()[x / n] * &c.counit()[x % n]).collect();
    let out = Coalgebra::from_fn(field, dim, counit, format!("{}⋉{}", h.name, c.name), |x| {
        let (hi, ci) = (x / n, x % n);
        let mut v = vec![field.zero(); dim * dim];
        for h1 in 0..hd {
            for h2 in 0..hd {
                let dh = hc.structure_constant(hi, h1, h2);
                if dh.is_zero() {
                    continue;
                }
                for c1 in 0..n {
                    for c2 in 0..n {
                        let dc = c.structure_constant(ci, c1, c2);
                        if dc.is_zero() {
                            continue;
                        }
                        let coef = dh * dc;
                        for a0 in 0..n {
                            for s in 0..hd {
                                let r = cc.rho.get(a0 * hd + s, c1);
                                if r.is_zero() {
                                    continue;
                                }
                                let cr = &coef * r;
                                for (u, p) in a.basis_product(h2, s).iter().enumerate() {
                                    if !p.is_zero() {
                                        v[(h1 * n + a0) * dim + u * n + c2].add_mul(&cr, p);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        v
    })?;
    if let Some(v) = check_coalgebra(&out).first() {
        return Err(Error::ConventionFailure(format!("smash coproduct fails {v:?}")));
    }
    Ok(out)
}
