//! Finite-dimensional coalgebras by structure constants: axioms, duality,
//! comatrix coalgebras, morphisms and the subcoalgebra closures.

use crate::algebra::Algebra;
use crate::error::{ensure_dim, Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Mat;
use crate::subspace::{unit_vector, Subspace};

/// `delta` is `dim² × dim`: column `i` holds `Δ(e_i)` flattened as `j*dim + k` for `e_j ⊗ e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    pub name: String,
    field: Field,
    dim: usize,
    delta: Mat,
    counit: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoalgebraAxiom {
    Coassociativity,
    LeftCounit,
    RightCounit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraViolation {
    pub axiom: CoalgebraAxiom,
    pub index: usize,
}

impl Coalgebra {
    pub fn new(
        field: Field,
        dim: usize,
        delta: Mat,
        counit: Vec<Scalar>,
        name: impl Into<String>,
    ) -> Result<Coalgebra> {
        ensure_dim("coalgebra delta rows", dim * dim, delta.rows())?;
        ensure_dim("coalgebra delta cols", dim, delta.cols())?;
        ensure_dim("coalgebra counit", dim, counit.len())?;
        if delta.field() != field || counit.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), delta.field().to_string()));
        }
        Ok(Coalgebra {
            name: name.into(),
            field,
            dim,
            delta,
            counit,
        })
    }

    /// Builds from `Δ(e_i) = coproduct(i)` (flattened, length `dim²`).
    pub fn from_fn(
        field: Field,
        dim: usize,
        counit: Vec<Scalar>,
        name: impl Into<String>,
        coproduct: impl FnMut(usize) -> Vec<Scalar>,
    ) -> Result<Coalgebra> {
        let cols: Vec<Vec<Scalar>> = (0..dim).map(coproduct).collect();
        let delta = Mat::from_columns(field, dim * dim, &cols);
        Coalgebra::new(field, dim, delta, counit, name)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> &Mat {
        &self.delta
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    /// `d[i][j][k]`, the `e_j ⊗ e_k` coefficient of `Δ(e_i)`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.delta.get(j * self.dim + k, i)
    }

    pub fn coproduct_of_basis(&self, i: usize) -> Vec<Scalar> {
        self.delta.column(i)
    }

    pub fn coproduct(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.delta.apply(v)
    }

    pub fn counit_of(&self, v: &[Scalar]) -> Scalar {
        dot(&self.counit, v, self.field)
    }

    /// `(Δ ⊗ id)Δ(v)`, flattened over three factors.
    pub fn double_coproduct_left(&self, v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let t = self.coproduct(v);
        let mut out = vec![self.field.zero(); n * n * n];
        for j in 0..n {
            for k in 0..n {
                let c = &t[j * n + k];
                if c.is_zero() {
                    continue;
                }
                for ab in 0..n * n {
                    let d = self.delta.get(ab, j);
                    if !d.is_zero() {
                        out[ab * n + k].add_mul(c, d);
                    }
                }
            }
        }
        out
    }

    /// `(id ⊗ Δ)Δ(v)`, flattened over three factors.
    pub fn double_coproduct_right(&self, v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let t = self.coproduct(v);
        let mut out = vec![self.field.zero(); n * n * n];
        for j in 0..n {
            for k in 0..n {
                let c = &t[j * n + k];
                if c.is_zero() {
                    continue;
                }
                for ab in 0..n * n {
                    let d = self.delta.get(ab, k);
                    if !d.is_zero() {
                        out[j * n * n + ab].add_mul(c, d);
                    }
                }
            }
        }
        out
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.structure_constant(i, j, k) == self.structure_constant(i, k, j))))
    }

    /// Transports the structure to the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Mat) -> Result<Coalgebra> {
        ensure_dim("basis change", self.dim, p.rows())?;
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidStructure("basis change is not invertible".into()))?;
        let inv2 = inv.kron(&inv);
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|a| inv2.apply(&self.coproduct(&p.column(a))))
            .collect();
        let counit = (0..self.dim).map(|a| self.counit_of(&p.column(a))).collect();
        Coalgebra::from_fn(self.field, self.dim, counit, self.name.clone(), |a| cols[a].clone())
    }

    /// The subcoalgebra on a Δ-stable subspace, in its RREF basis, with the inclusion map.
    pub fn restrict(&self, w: &Subspace) -> Result<(Coalgebra, Mat)> {
        ensure_dim("restrict ambient", self.dim, w.ambient_dim())?;
        let r = w.dim();
        let piv = w.pivots();
        let mut cols = Vec::with_capacity(r);
        for b in w.basis_vectors() {
            let t = self.coproduct(b);
            if !w.tensor_contains(w, &t) {
                return Err(Error::InvalidStructure("subspace is not a subcoalgebra".into()));
            }
            let mut c = Vec::with_capacity(r * r);
            for &p in piv {
                for &q in piv {
                    c.push(t[p * self.dim + q].clone());
                }
            }
            cols.push(c);
        }
        let counit = w.basis_vectors().iter().map(|b| self.counit_of(b)).collect();
        let sub = Coalgebra::from_fn(self.field, r, counit, format!("{}|sub", self.name), |i| cols[i].clone())?;
        let inclusion = w.basis().transpose();
        Ok((sub, inclusion))
    }

    /// The quotient by a coideal on the canonical complement basis, with the projection.
    pub fn quotient(&self, coideal: &Subspace) -> Result<(Coalgebra, Mat)> {
        ensure_dim("quotient ambient", self.dim, coideal.ambient_dim())?;
        let proj = coideal.quotient_map();
        for r in coideal.basis_vectors() {
            if !self.counit_of(r).is_zero() {
                return Err(Error::NotACoideal("counit does not vanish".into()));
            }
            if !push_tensor(&proj, &proj, &self.coproduct(r)).iter().all(Scalar::is_zero) {
                return Err(Error::NotACoideal("coproduct leaves the coideal".into()));
            }
        }
        let keep = coideal.quotient_basis();
        let cols: Vec<Vec<Scalar>> = keep
            .iter()
            .map(|&j| push_tensor(&proj, &proj, &self.coproduct_of_basis(j)))
            .collect();
        let counit = keep.iter().map(|&j| self.counit[j].clone()).collect();
        let q = Coalgebra::from_fn(self.field, keep.len(), counit, format!("{}/R", self.name), |i| cols[i].clone())?;
        Ok((q, proj))
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_mul(x, y);
        }
    }
    acc
}

/// `(f ⊗ g)(t)` for `t ∈ V ⊗ W` flattened, without materializing the Kronecker product.
pub fn push_tensor(f: &Mat, g: &Mat, t: &[Scalar]) -> Vec<Scalar> {
    let (n, m) = (f.cols(), g.cols());
    assert_eq!(t.len(), n * m, "tensor length");
    let (r, s) = (f.rows(), g.rows());
    let field = f.field();
    let mut out = vec![field.zero(); r * s];
    for a in 0..n {
        for b in 0..m {
            let c = &t[a * m + b];
            if c.is_zero() {
                continue;
            }
            for x in 0..r {
                let fa = f.get(x, a);
                if fa.is_zero() {
                    continue;
                }
                let cf = c * fa;
                for y in 0..s {
                    let gb = g.get(y, b);
                    if !gb.is_zero() {
                        out[x * s + y].add_mul(&cf, gb);
                    }
                }
            }
        }
    }
    out
}

/// Every failed basis identity; empty iff `c` is coassociative and counital.
pub fn check_coalgebra(c: &Coalgebra) -> Vec<CoalgebraViolation> {
    let n = c.dim();
    let f = c.field();
    let mut out = Vec::new();
    for i in 0..n {
        let e = unit_vector(f, n, i);
        if c.double_coproduct_left(&e) != c.double_coproduct_right(&e) {
            out.push(CoalgebraViolation {
                axiom: CoalgebraAxiom::Coassociativity,
                index: i,
            });
        }
        let t = c.coproduct_of_basis(i);
        let mut left = vec![f.zero(); n];
        let mut right = vec![f.zero(); n];
        for j in 0..n {
            for k in 0..n {
                let d = &t[j * n + k];
                if d.is_zero() {
                    continue;
                }
                left[k].add_mul(d, &c.counit[j]);
                right[j].add_mul(d, &c.counit[k]);
            }
        }
        if left != e {
            out.push(CoalgebraViolation {
                axiom: CoalgebraAxiom::LeftCounit,
                index: i,
            });
        }
        if right != e {
            out.push(CoalgebraViolation {
                axiom: CoalgebraAxiom::RightCounit,
                index: i,
            });
        }
    }
    out
}

pub fn is_valid_coalgebra(c: &Coalgebra) -> bool {
    check_coalgebra(c).is_empty()
}

/// The ground field as a coalgebra: `Δ(e) = e ⊗ e`, `ε(e) = 1`.
pub fn ground_coalgebra(field: Field) -> Coalgebra {
    grouplike_coalgebra(field, 1)
}

/// `n` linearly independent grouplikes.
pub fn grouplike_coalgebra(field: Field, n: usize) -> Coalgebra {
    Coalgebra::from_fn(field, n, vec![field.one(); n], format!("G{n}"), |i| {
        unit_vector(field, n * n, i * n + i)
    })
    .expect("well-formed")
}

/// Comatrix coalgebra `M_n^c`: `Δ(e_ij) = Σ_k e_ik ⊗ e_kj`, `ε(e_ij) = δ_ij`, index `i*n + j`.
pub fn comatrix_coalgebra(n: usize, field: Field) -> Coalgebra {
    let d = n * n;
    let counit = (0..d)
        .map(|a| if a / n == a % n { field.one() } else { field.zero() })
        .collect();
    Coalgebra::from_fn(field, d, counit, format!("M{n}c"), |a| {
        let (i, j) = (a / n, a % n);
        let mut v = vec![field.zero(); d * d];
        for k in 0..n {
            v[(i * n + k) * d + (k * n + j)] = field.one();
        }
        v
    })
    .expect("well-formed")
}

/// Tensor product coalgebra `C ⊗ D` on `c_i ⊗ d_j` (index `i*dim D + j`).
pub fn tensor_coalgebra(c: &Coalgebra, d: &Coalgebra) -> Result<Coalgebra> {
    if c.field() != d.field() {
        return Err(Error::FieldMismatch(c.field().to_string(), d.field().to_string()));
    }
    let (n, m) = (c.dim(), d.dim());
    let dim = n * m;
    let field = c.field();
    let counit = (0..dim)
        .map(|a| &c.counit[a / m] * &d.counit[a % m])
        .collect();
    Coalgebra::from_fn(field, dim, counit, format!("{}⊗{}", c.name, d.name), |a| {
        let (i, j) = (a / m, a % m);
        let tc = c.coproduct_of_basis(i);
        let td = d.coproduct_of_basis(j);
        let mut v = vec![field.zero(); dim * dim];
        for i1 in 0..n {
            for i2 in 0..n {
                let x = &tc[i1 * n + i2];
                if x.is_zero() {
                    continue;
                }
                for j1 in 0..m {
                    for j2 in 0..m {
                        let y = &td[j1 * m + j2];
                        if !y.is_zero() {
                            v[(i1 * m + j1) * dim + (i2 * m + j2)].add_mul(x, y);
                        }
                    }
                }
            }
        }
        v
    })
}

/// Linear dual of a finite-dimensional algebra: `d[k][i][j] = m[i][j][k]`, `ε = unit`.
pub fn dual_coalgebra(a: &Algebra) -> Coalgebra {
    Coalgebra::new(
        a.field(),
        a.dim(),
        a.mult().transpose(),
        a.unit().to_vec(),
        format!("{}*", a.name),
    )
    .expect("transposed shapes agree")
}

/// Linear dual of a coalgebra: `m[i][j][k] = d[k][i][j]`, `unit = ε`.
pub fn dual_algebra(c: &Coalgebra) -> Algebra {
    Algebra::new(
        c.field(),
        c.dim(),
        c.delta().transpose(),
        c.counit().to_vec(),
        format!("{}*", c.name),
    )
    .expect("transposed shapes agree")
}

/// Minimal subcoalgebra containing `s`: the span of the middle tensor
/// components of `Δ²(x)` over a basis of `s`.
pub fn subcoalgebra_generated(c: &Coalgebra, s: &Subspace) -> Result<Subspace> {
    ensure_dim("subcoalgebra_generated ambient", c.dim(), s.ambient_dim())?;
    let n = c.dim();
    let mut out = Subspace::zero(c.field(), n);
    for x in s.basis_vectors() {
        let t = c.double_coproduct_left(x);
        for a in 0..n {
            for z in 0..n {
                let v: Vec<Scalar> = (0..n).map(|b| t[(a * n + b) * n + z].clone()).collect();
                out.insert(v);
            }
        }
    }
    Ok(out)
}

/// Same result as [`subcoalgebra_generated`], reached by adding the left and
/// right tensor components of `Δ(w)` until nothing new appears.
pub fn subcoalgebra_generated_iterative(c: &Coalgebra, s: &Subspace) -> Result<Subspace> {
    ensure_dim("subcoalgebra_generated ambient", c.dim(), s.ambient_dim())?;
    let n = c.dim();
    let mut w = s.clone();
    loop {
        let before = w.dim();
        for x in w.basis_vectors().to_vec() {
            let t = c.coproduct(&x);
            for (left, right) in tensor_components(&t, n, n) {
                w.insert(left);
                w.insert(right);
            }
        }
        if w.dim() == before {
            return Ok(w);
        }
    }
}

/// Row and column vectors of `t` viewed as an `n × m` matrix, paired by index.
fn tensor_components(t: &[Scalar], n: usize, m: usize) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
    let cols: Vec<Vec<Scalar>> = (0..m).map(|k| (0..n).map(|j| t[j * m + k].clone()).collect()).collect();
    let rows: Vec<Vec<Scalar>> = (0..n).map(|j| t[j * m..(j + 1) * m].to_vec()).collect();
    let len = n.max(m);
    (0..len)
        .map(|i| {
            let c = cols.get(i).cloned().unwrap_or_else(|| vec![t[0].field().zero(); n]);
            let r = rows.get(i).cloned().unwrap_or_else(|| vec![t[0].field().zero(); m]);
            (c, r)
        })
        .collect()
}

/// Left components (column space) and right components (row space) of `t ∈ K^n ⊗ K^m`.
pub fn component_spaces(field: Field, t: &[Scalar], n: usize, m: usize) -> (Subspace, Subspace) {
    let left = Subspace::from_vectors(field, n, (0..m).map(|k| (0..n).map(|j| t[j * m + k].clone()).collect()));
    let right = Subspace::from_vectors(field, m, (0..n).map(|j| t[j * m..(j + 1) * m].to_vec()));
    (left, right)
}

/// Largest subcoalgebra contained in `w`, by the decreasing iteration
/// `W ← {x ∈ W : Δ(x) ∈ W ⊗ W}`.
pub fn largest_subcoalgebra_in(c: &Coalgebra, w: &Subspace) -> Result<Subspace> {
    ensure_dim("largest_subcoalgebra_in ambient", c.dim(), w.ambient_dim())?;
    let n = c.dim();
    let field = c.field();
    let mut cur = w.clone();
    loop {
        if cur.is_zero() || cur.is_full() {
            return Ok(cur);
        }
        let ann = cur.annihilator();
        let a = ann.rows();
        // columns: for each basis vector b, the obstructions ann·M(b) and M(b)·annᵀ
        let cols: Vec<Vec<Scalar>> = cur
            .basis_vectors()
            .iter()
            .map(|b| {
                let t = c.coproduct(b);
                let m = Mat::from_data(field, n, n, t).expect("square");
                let left = &ann * &m;
                let right = &m * &ann.transpose();
                left.entries().iter().chain(right.entries()).cloned().collect()
            })
            .collect();
        let cond = Mat::from_columns(field, 2 * a * n, &cols);
        let ker = cond.kernel();
        let next = Subspace::from_vectors(field, n, ker.basis_vectors().iter().map(|k| cur.combine(k)));
        if next.dim() == cur.dim() {
            return Ok(cur);
        }
        cur = next;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismDefect {
    /// `Δ_T f(e_i) ≠ (f⊗f) Δ_S(e_i)`.
    Comultiplication(usize),
    /// `ε_T f(e_i) ≠ ε_S(e_i)`.
    Counit(usize),
}

impl MorphismDefect {
    pub fn index(self) -> usize {
        match self {
            MorphismDefect::Comultiplication(i) | MorphismDefect::Counit(i) => i,
        }
    }
}

/// First basis vector where `f` fails to be a coalgebra morphism, or `None`.
pub fn morphism_defect(f: &Mat, source: &Coalgebra, target: &Coalgebra) -> Result<Option<MorphismDefect>> {
    ensure_dim("morphism rows", target.dim(), f.rows())?;
    ensure_dim("morphism cols", source.dim(), f.cols())?;
    for i in 0..source.dim() {
        let img = f.column(i);
        if target.counit_of(&img) != source.counit[i] {
            return Ok(Some(MorphismDefect::Counit(i)));
        }
        let lhs = target.coproduct(&img);
        let rhs = push_tensor(f, f, &source.coproduct_of_basis(i));
        if lhs != rhs {
            return Ok(Some(MorphismDefect::Comultiplication(i)));
        }
    }
    Ok(None)
}

pub fn is_coalgebra_morphism(f: &Mat, source: &Coalgebra, target: &Coalgebra) -> Result<bool> {
    Ok(morphism_defect(f, source, target)?.is_none())
}

/// A linear map verified at construction to be a coalgebra morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    source: Coalgebra,
    target: Coalgebra,
    matrix: Mat,
}

impl CoalgebraMorphism {
    pub fn new(source: Coalgebra, target: Coalgebra, matrix: Mat) -> Result<CoalgebraMorphism> {
        if let Some(d) = morphism_defect(&matrix, &source, &target)? {
            return Err(Error::InvalidStructure(format!(
                "not a coalgebra morphism: {d:?}"
            )));
        }
        Ok(CoalgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(c: &Coalgebra) -> CoalgebraMorphism {
        CoalgebraMorphism {
            source: c.clone(),
            target: c.clone(),
            matrix: Mat::identity(c.field(), c.dim()),
        }
    }

    pub fn source(&self) -> &Coalgebra {
        &self.source
    }

    pub fn target(&self) -> &Coalgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn compose(&self, after: &CoalgebraMorphism) -> Result<CoalgebraMorphism> {
        ensure_dim("compose", after.source.dim(), self.target.dim())?;
        Ok(CoalgebraMorphism {
            source: self.source.clone(),
            target: after.target.clone(),
            matrix: &after.matrix * &self.matrix,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ComatrixPresentation {
    pub n: usize,
    pub map: CoalgebraMorphism,
}

/// Presents `c` as a quotient of `M_n^c`, `n = dim c`: the left regular
/// representation embeds the dual algebra in `M_n`, and its transpose is a
/// surjective coalgebra morphism `M_n^c → c`.
pub fn comatrix_presentation(c: &Coalgebra) -> Result<ComatrixPresentation> {
    let n = c.dim();
    let field = c.field();
    let a = dual_algebra(c);
    let regular: Vec<Mat> = (0..n).map(|i| a.left_mult(&unit_vector(field, n, i))).collect();
    // π(e_kj) = Σ_i (L_{e_i})[k][j] c_i
    let pi = Mat::from_fn(field, n, n * n, |i, kj| regular[i].get(kj / n, kj % n).clone());
    if pi.rank() != n {
        return Err(Error::InvalidStructure("regular representation is not faithful".into()));
    }
    let map = CoalgebraMorphism::new(comatrix_coalgebra(n, field), c.clone(), pi)?;
    Ok(ComatrixPresentation { n, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_algebra, matrix_algebra, truncated_polynomial};

    fn f2() -> Field {
        Field::Prime(2)
    }

    #[test]
    fn ground_is_valid_and_zero_counit_is_not() {
        let q = Field::Rationals;
        assert!(check_coalgebra(&ground_coalgebra(q)).is_empty());
        let bad = Coalgebra::from_fn(q, 1, vec![q.zero()], "bad", |_| vec![q.one()]).unwrap();
        let v = check_coalgebra(&bad);
        assert!(v.contains(&CoalgebraViolation {
            axiom: CoalgebraAxiom::LeftCounit,
            index: 0
        }));
    }

    #[test]
    fn one_dimensional_over_f2() {
        let f = f2();
        let mut valid = 0;
        for lam in f.elements() {
            for mu in f.elements() {
                let c = Coalgebra::from_fn(f, 1, vec![mu.clone()], "c", |_| vec![lam.clone()]).unwrap();
                if check_coalgebra(&c).is_empty() {
                    valid += 1;
                    assert!(lam.is_one() && mu.is_one());
                }
            }
        }
        assert_eq!(valid, 1);
    }

    #[test]
    fn dual_of_dual_numbers() {
        let q = Field::Rationals;
        let c = dual_coalgebra(&truncated_polynomial(2, q));
        assert!(check_coalgebra(&c).is_empty());
        // Δ(1*) = 1*⊗1*, Δ(x*) = 1*⊗x* + x*⊗1*
        assert_eq!(c.coproduct_of_basis(0), unit_vector(q, 4, 0));
        let mut dx = unit_vector(q, 4, 1);
        dx[2] = q.one();
        assert_eq!(c.coproduct_of_basis(1), dx);
        assert_eq!(c.counit(), &[q.one(), q.zero()]);
    }

    #[test]
    fn comatrix_two() {
        let q = Field::Rationals;
        let c = comatrix_coalgebra(2, q);
        assert!(check_coalgebra(&c).is_empty());
        assert_eq!(c, {
            let g = comatrix_coalgebra(1, q);
            assert_eq!(g.coproduct_of_basis(0), ground_coalgebra(q).coproduct_of_basis(0));
            c.clone()
        });
        // Δ(e11) = e11⊗e11 + e12⊗e21 (indices 0 and 1,2)
        let mut expect = vec![q.zero(); 16];
        expect[0] = q.one();
        expect[4 + 2] = q.one();
        assert_eq!(c.coproduct_of_basis(0), expect);
        assert_eq!(dual_algebra(&c).mult(), matrix_algebra(2, q).mult());
        assert!(check_algebra(&dual_algebra(&c)).is_empty());
    }

    #[test]
    fn closures_on_comatrix() {
        let f = f2();
        let c = comatrix_coalgebra(2, f);
        let s = Subspace::coordinate(f, 4, &[0]);
        let d = subcoalgebra_generated(&c, &s).unwrap();
        assert!(d.is_full());
        assert_eq!(subcoalgebra_generated_iterative(&c, &s).unwrap(), d);
        let w = Subspace::coordinate(f, 4, &[0, 1, 2]);
        assert!(largest_subcoalgebra_in(&c, &w).unwrap().is_zero());
        let z = Subspace::zero(f, 4);
        assert!(subcoalgebra_generated(&c, &z).unwrap().is_zero());
        assert!(largest_subcoalgebra_in(&c, &Subspace::full(f, 4)).unwrap().is_full());
    }

    #[test]
    fn closures_on_grouplikes() {
        let q = Field::Rationals;
        let c = grouplike_coalgebra(q, 2);
        let g = Subspace::coordinate(q, 2, &[0]);
        assert_eq!(subcoalgebra_generated(&c, &g).unwrap(), g);
        assert_eq!(largest_subcoalgebra_in(&c, &g).unwrap(), g);
        // g + h generates everything; the line through it contains no subcoalgebra
        let gh = Subspace::from_vectors(q, 2, vec![vec![q.one(), q.one()]]);
        assert!(subcoalgebra_generated(&c, &gh).unwrap().is_full());
        assert!(largest_subcoalgebra_in(&c, &gh).unwrap().is_zero());
    }

    #[test]
    fn morphism_checks() {
        let q = Field::Rationals;
        let c = grouplike_coalgebra(q, 2);
        assert!(is_coalgebra_morphism(&Mat::identity(q, 2), &c, &c).unwrap());
        assert_eq!(
            morphism_defect(&Mat::zeros(q, 2, 2), &c, &c).unwrap(),
            Some(MorphismDefect::Counit(0))
        );
        let swap = Mat::from_i64_rows(q, &[&[0, 1], &[1, 0]]);
        assert!(is_coalgebra_morphism(&swap, &c, &c).unwrap());
        assert!(is_coalgebra_morphism(&Mat::zeros(q, 3, 2), &c, &c).is_err());
    }

    #[test]
    fn presentation_of_grouplikes() {
        let q = Field::Rationals;
        let c = grouplike_coalgebra(q, 2);
        let p = comatrix_presentation(&c).unwrap();
        assert_eq!(p.n, 2);
        let expect = Mat::from_i64_rows(q, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(p.map.matrix(), &expect);
        let g = comatrix_presentation(&ground_coalgebra(q)).unwrap();
        assert_eq!(g.n, 1);
        assert_eq!(g.map.matrix(), &Mat::identity(q, 1));
    }

    #[test]
    fn presentation_of_comatrix() {
        let q = Field::Rationals;
        let c = comatrix_coalgebra(2, q);
        let p = comatrix_presentation(&c).unwrap();
        assert_eq!(p.n, 4);
        assert_eq!(p.map.matrix().rank(), 4);
    }

    #[test]
    fn restrict_and_quotient() {
        let q = Field::Rationals;
        let c = grouplike_coalgebra(q, 3);
        let w = Subspace::coordinate(q, 3, &[0, 2]);
        let (sub, inc) = c.restrict(&w).unwrap();
        assert_eq!(sub.dim(), 2);
        assert!(check_coalgebra(&sub).is_empty());
        assert!(is_coalgebra_morphism(&inc, &sub, &c).unwrap());

        let r = Subspace::from_vectors(q, 3, vec![vec![q.one(), -q.one(), q.zero()]]);
        let (quo, proj) = c.quotient(&r).unwrap();
        assert_eq!(quo.dim(), 2);
        assert!(check_coalgebra(&quo).is_empty());
        assert!(is_coalgebra_morphism(&proj, &c, &quo).unwrap());

        let not_coideal = Subspace::coordinate(q, 3, &[0]);
        assert!(matches!(c.quotient(&not_coideal), Err(Error::NotACoideal(_))));
    }
}
