//! Finite-dimensional unital algebras by structure constants.

use crate::error::{ensure_dim, Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Mat;
use crate::subspace::unit_vector;

/// `mult` is `dim × dim²`: column `i*dim + j` holds the coordinates of `e_i·e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    field: Field,
    dim: usize,
    mult: Mat,
    unit: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraAxiom {
    Associativity,
    LeftUnit,
    RightUnit,
}

/// A failed basis identity: the axiom and the basis indices where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraViolation {
    pub axiom: AlgebraAxiom,
    pub indices: Vec<usize>,
}

impl Algebra {
    pub fn new(
        field: Field,
        dim: usize,
        mult: Mat,
        unit: Vec<Scalar>,
        name: impl Into<String>,
    ) -> Result<Algebra> {
        ensure_dim("algebra mult rows", dim, mult.rows())?;
        ensure_dim("algebra mult cols", dim * dim, mult.cols())?;
        ensure_dim("algebra unit", dim, unit.len())?;
        if mult.field() != field || unit.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), mult.field().to_string()));
        }
        Ok(Algebra {
            name: name.into(),
            field,
            dim,
            mult,
            unit,
        })
    }

    /// Builds from a product table `e_i·e_j = table(i, j)`.
    pub fn from_table(
        field: Field,
        dim: usize,
        unit: Vec<Scalar>,
        name: impl Into<String>,
        mut table: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Result<Algebra> {
        let mut cols = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                cols.push(table(i, j));
            }
        }
        let mult = Mat::from_columns(field, dim, &cols);
        Algebra::new(field, dim, mult, unit, name)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &Mat {
        &self.mult
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// `m[i][j][k]`, the `e_k` coefficient of `e_i·e_j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.mult.get(k, i * self.dim + j)
    }

    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![self.field.zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let m = self.mult.get(k, i * n + j);
                    if !m.is_zero() {
                        o.add_mul(&c, m);
                    }
                }
            }
        }
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mult.column(i * self.dim + j)
    }

    /// Matrix of left multiplication by `a`.
    pub fn left_mult(&self, a: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.product(a, &unit_vector(self.field, self.dim, j)))
            .collect();
        Mat::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of right multiplication by `a`.
    pub fn right_mult(&self, a: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.product(&unit_vector(self.field, self.dim, j), a))
            .collect();
        Mat::from_columns(self.field, self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Transports the structure along the basis change whose columns are the new basis.
    pub fn change_basis(&self, p: &Mat) -> Result<Algebra> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidStructure("basis change is not invertible".into()))?;
        ensure_dim("basis change", self.dim, p.rows())?;
        let n = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..n * n)
            .map(|ab| {
                let (a, b) = (ab / n, ab % n);
                inv.apply(&self.product(&p.column(a), &p.column(b)))
            })
            .collect();
        let mult = Mat::from_columns(self.field, n, &cols);
        Algebra::new(self.field, n, mult, inv.apply(&self.unit), self.name.clone())
    }
}

pub fn check_algebra(a: &Algebra) -> Vec<AlgebraViolation> {
    let n = a.dim();
    let f = a.field();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ij = a.basis_product(i, j);
            for k in 0..n {
                let lhs = a.product(&ij, &unit_vector(f, n, k));
                let rhs = a.product(&unit_vector(f, n, i), &a.basis_product(j, k));
                if lhs != rhs {
                    out.push(AlgebraViolation {
                        axiom: AlgebraAxiom::Associativity,
                        indices: vec![i, j, k],
                    });
                }
            }
        }
    }
    for i in 0..n {
        let e = unit_vector(f, n, i);
        if a.product(a.unit(), &e) != e {
            out.push(AlgebraViolation {
                axiom: AlgebraAxiom::LeftUnit,
                indices: vec![i],
            });
        }
        if a.product(&e, a.unit()) != e {
            out.push(AlgebraViolation {
                axiom: AlgebraAxiom::RightUnit,
                indices: vec![i],
            });
        }
    }
    out
}

/// The ground field as a one-dimensional algebra.
pub fn ground_algebra(field: Field) -> Algebra {
    Algebra::from_table(field, 1, vec![field.one()], "K", |_, _| vec![field.one()])
        .expect("well-formed")
}

/// Full matrix algebra `M_n` on the matrix units `E_ij` (index `i*n + j`).
pub fn matrix_algebra(n: usize, field: Field) -> Algebra {
    let d = n * n;
    let mut unit = vec![field.zero(); d];
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    Algebra::from_table(field, d, unit, format!("M{n}"), |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        let mut v = vec![field.zero(); d];
        if j == k {
            v[i * n + l] = field.one();
        }
        v
    })
    .expect("well-formed")
}

/// Truncated polynomial algebra `K[x]/(x^n)` on `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(n: usize, field: Field) -> Algebra {
    let mut unit = vec![field.zero(); n];
    if n > 0 {
        unit[0] = field.one();
    }
    Algebra::from_table(field, n, unit, format!("K[x]/x^{n}"), |i, j| {
        let mut v = vec![field.zero(); n];
        if i + j < n {
            v[i + j] = field.one();
        }
        v
    })
    .expect("well-formed")
}

/// Monoid algebra from a multiplication table on `0..n`; element 0 must be the identity.
pub fn monoid_algebra(field: Field, table: &[Vec<usize>], name: &str) -> Result<Algebra> {
    let n = table.len();
    Algebra::from_table(field, n, unit_vector(field, n, 0), name, |i, j| {
        unit_vector(field, n, table[i][j])
    })
}

/// Group algebra of the cyclic group `C_n` on `1, g, …, g^{n-1}`.
pub fn cyclic_group_algebra(n: usize, field: Field) -> Algebra {
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    monoid_algebra(field, &table, &format!("KC{n}")).expect("well-formed")
}

/// Product algebra `K^n` of orthogonal idempotents.
pub fn diagonal_algebra(n: usize, field: Field) -> Algebra {
    let unit = vec![field.one(); n];
    Algebra::from_table(field, n, unit, format!("K^{n}"), |i, j| {
        let mut v = vec![field.zero(); n];
        if i == j {
            v[i] = field.one();
        }
        v
    })
    .expect("well-formed")
}

/// Words of length `≤ degree` in `v_dim` letters, ordered by length then lexicographically.
pub fn truncated_words(v_dim: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut words = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::with_capacity(layer.len() * v_dim);
        for w in &layer {
            for x in 0..v_dim {
                let mut w2 = w.clone();
                w2.push(x);
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    words
}

/// Tensor algebra on a `v_dim`-dimensional space truncated above `degree`:
/// words multiply by concatenation and products of total length `> degree` vanish.
pub fn tensor_algebra_truncated(
    v_dim: usize,
    degree: usize,
    field: Field,
    dim_cap: usize,
) -> Result<Algebra> {
    let required: u128 = (0..=degree as u32).map(|k| (v_dim as u128).pow(k)).sum();
    if required > dim_cap as u128 {
        return Err(Error::BudgetExceeded {
            what: "truncated tensor algebra dimension",
            required,
            limit: dim_cap as u128,
        });
    }
    let words = truncated_words(v_dim, degree);
    let index: std::collections::HashMap<&[usize], usize> =
        words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let d = words.len();
    Algebra::from_table(field, d, unit_vector(field, d, 0), format!("T{degree}(K^{v_dim})"), |i, j| {
        let mut v = vec![field.zero(); d];
        if words[i].len() + words[j].len() <= degree {
            let w: Vec<usize> = words[i].iter().chain(&words[j]).copied().collect();
            v[index[w.as_slice()]] = field.one();
        }
        v
    })
}

/// The unique algebra morphism from the truncated tensor algebra extending
/// `generators` (columns = images of the letters in `target`).
///
/// Fails with `InvalidStructure` when the extension is not multiplicative,
/// which happens when some product of more than `degree` images is nonzero.
pub fn extend_from_generators(
    v_dim: usize,
    degree: usize,
    target: &Algebra,
    generators: &Mat,
) -> Result<Mat> {
    ensure_dim("generator images rows", target.dim(), generators.rows())?;
    ensure_dim("generator count", v_dim, generators.cols())?;
    let words = truncated_words(v_dim, degree);
    let cols: Vec<Vec<Scalar>> = words
        .iter()
        .map(|w| {
            w.iter().fold(target.unit().to_vec(), |acc, &x| {
                target.product(&acc, &generators.column(x))
            })
        })
        .collect();
    let phi = Mat::from_columns(target.field(), target.dim(), &cols);
    let source = tensor_algebra_truncated(v_dim, degree, target.field(), usize::MAX)?;
    if !is_algebra_morphism(&phi, &source, target) {
        return Err(Error::InvalidStructure(
            "generator images are not nilpotent of the required order".into(),
        ));
    }
    Ok(phi)
}

pub fn is_algebra_morphism(f: &Mat, source: &Algebra, target: &Algebra) -> bool {
    if f.shape() != (target.dim(), source.dim()) {
        return false;
    }
    if f.apply(source.unit()) != target.unit() {
        return false;
    }
    let n = source.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            f.apply(&source.basis_product(i, j)) == target.product(&f.column(i), &f.column(j))
        })
    })
}
