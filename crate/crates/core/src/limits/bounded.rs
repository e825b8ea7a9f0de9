//! Final objects of the comma category `𝓗₀` over a finite generator class:
//! cofree approximations and bounded limits, certified by exhaustive search.

use rayon::prelude::*;

use super::{direct_sum, Cocone, Diagram};
use crate::coalgebra::{is_coalgebra_morphism, Coalgebra};
use crate::enumerate::{all_vectors, enumerate_up_to, DEFAULT_BUDGET};
use crate::error::{ensure_dim, Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{solve, Mat};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineBudget {
    /// Cap on `|𝓗₀|`.
    pub max_objects: usize,
    /// Cap on the dimension of the direct sum feeding the colimit.
    pub max_colimit_dim: usize,
    /// Cap on any single brute-force enumeration of linear maps.
    pub max_maps: u128,
}

impl Default for EngineBudget {
    fn default() -> Self {
        EngineBudget {
            max_objects: 20_000,
            max_colimit_dim: 4096,
            max_maps: 1 << 24,
        }
    }
}

/// Every coalgebra structure over a finite field up to a dimension bound.
#[derive(Clone, Debug)]
pub struct BoundedClass {
    pub field: Field,
    pub max_dim: usize,
    pub generators: Vec<Coalgebra>,
}

impl BoundedClass {
    pub fn new(field: Field, max_dim: usize) -> Result<BoundedClass> {
        BoundedClass::with_budget(field, max_dim, DEFAULT_BUDGET)
    }

    pub fn with_budget(field: Field, max_dim: usize, budget: u128) -> Result<BoundedClass> {
        Ok(BoundedClass {
            field,
            max_dim,
            generators: enumerate_up_to(field, max_dim, budget)?,
        })
    }
}

/// A family of linear maps `f_i: N → C_i`; the final object is sought among
/// coalgebras over `N` whose composites with every `f_i` are coalgebra maps.
#[derive(Clone, Debug)]
pub struct ConstraintProblem {
    pub field: Field,
    pub n_dim: usize,
    pub constraints: Vec<(Coalgebra, Mat)>,
}

impl ConstraintProblem {
    pub fn new(field: Field, n_dim: usize, constraints: Vec<(Coalgebra, Mat)>) -> Result<ConstraintProblem> {
        for (c, f) in &constraints {
            if c.field() != field || f.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            ensure_dim("constraint map rows", c.dim(), f.rows())?;
            ensure_dim("constraint map cols", n_dim, f.cols())?;
        }
        Ok(ConstraintProblem {
            field,
            n_dim,
            constraints,
        })
    }

    pub fn unconstrained(field: Field, n_dim: usize) -> ConstraintProblem {
        ConstraintProblem {
            field,
            n_dim,
            constraints: Vec::new(),
        }
    }
}

/// An object `(G, q)` of `𝓗₀`: `generator` indexes the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HObject {
    pub generator: usize,
    pub q: Mat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MediatorStatus {
    pub object: usize,
    pub generator: usize,
    /// Number of coalgebra morphisms `m: G → E0` with `p0·m = q`.
    pub mediators: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinalityCertificate {
    pub statuses: Vec<MediatorStatus>,
}

impl FinalityCertificate {
    pub fn passed(&self) -> bool {
        self.statuses.iter().all(|s| s.mediators == 1)
    }

    pub fn failures(&self) -> impl Iterator<Item = &MediatorStatus> {
        self.statuses.iter().filter(|s| s.mediators != 1)
    }
}

#[derive(Clone, Debug)]
pub struct FinalObject {
    pub e0: Coalgebra,
    pub p0: Mat,
    pub objects: Vec<HObject>,
    /// Colimit leg `G → E0` for each object; the mediating morphism of that object.
    pub legs: Vec<Mat>,
    pub arrow_count: usize,
    pub certificate: FinalityCertificate,
}

fn check_maps(field: Field, count: usize, budget: &EngineBudget) -> Result<()> {
    let p = field.characteristic() as u128;
    let required = p.checked_pow(count as u32).unwrap_or(u128::MAX);
    if required > budget.max_maps {
        return Err(Error::BudgetExceeded {
            what: "linear map enumeration",
            required,
            limit: budget.max_maps,
        });
    }
    Ok(())
}

/// All `rows × cols` matrices in lexicographic row-major order.
fn all_matrices(field: Field, rows: usize, cols: usize, budget: &EngineBudget) -> Result<Vec<Mat>> {
    check_maps(field, rows * cols, budget)?;
    Ok(all_vectors(field, rows * cols)
        .into_iter()
        .map(|v| Mat::from_data(field, rows, cols, v).expect("shape"))
        .collect())
}

/// All coalgebra morphisms `s → t`, by brute force over linear maps.
pub fn coalgebra_morphisms(s: &Coalgebra, t: &Coalgebra, budget: &EngineBudget) -> Result<Vec<Mat>> {
    let maps = all_matrices(s.field(), t.dim(), s.dim(), budget)?;
    let flags: Vec<bool> = maps
        .par_iter()
        .map(|m| is_coalgebra_morphism(m, s, t))
        .collect::<Result<_>>()?;
    Ok(maps.into_iter().zip(flags).filter(|(_, ok)| *ok).map(|(m, _)| m).collect())
}

/// Number of coalgebra morphisms `m: g → e` with `p·m = q`, by enumerating the affine solution space.
fn count_mediators(g: &Coalgebra, e: &Coalgebra, p: &Mat, q: &Mat, budget: &EngineBudget) -> Result<usize> {
    let field = g.field();
    let sol = match solve(p, q) {
        Ok(s) => s,
        Err(Error::Inconsistent) => return Ok(0),
        Err(err) => return Err(err),
    };
    let ker = sol.kernel.basis_vectors().to_vec();
    let gd = g.dim();
    check_maps(field, gd * ker.len(), budget)?;
    let count = all_vectors(field, gd * ker.len())
        .par_iter()
        .map(|coeffs| {
            let mut m = sol.particular.clone();
            for (col, chunk) in coeffs.chunks(ker.len().max(1)).enumerate().take(gd) {
                for (c, k) in chunk.iter().zip(&ker) {
                    if c.is_zero() {
                        continue;
                    }
                    for (r, kr) in k.iter().enumerate() {
                        let mut v = m.get(r, col).clone();
                        v.add_mul(c, kr);
                        m.set(r, col, v);
                    }
                }
            }
            is_coalgebra_morphism(&m, g, e)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&b| b)
        .count();
    Ok(count)
}

/// Colimit of `𝓗₀` restricted to `cls`, with the induced map to `N` and an
/// exhaustive finality certificate.
pub fn bounded_final_object(p: &ConstraintProblem, cls: &BoundedClass, budget: &EngineBudget) -> Result<FinalObject> {
    let field = p.field;
    if !field.is_finite() || cls.field != field {
        return Err(Error::FieldMismatch(cls.field.to_string(), field.to_string()));
    }
    // objects: generator order, then q in lexicographic order
    let per_gen: Vec<Vec<Mat>> = cls
        .generators
        .par_iter()
        .map(|g| -> Result<Vec<Mat>> {
            let qs = all_matrices(field, p.n_dim, g.dim(), budget)?;
            let mut keep = Vec::new();
            for q in qs {
                let mut ok = true;
                for (c, f) in &p.constraints {
                    if !is_coalgebra_morphism(&(f * &q), g, c)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    keep.push(q);
                }
            }
            Ok(keep)
        })
        .collect::<Result<_>>()?;
    let objects: Vec<HObject> = per_gen
        .into_iter()
        .enumerate()
        .flat_map(|(generator, qs)| qs.into_iter().map(move |q| HObject { generator, q }))
        .collect();
    if objects.len() > budget.max_objects {
        return Err(Error::BudgetExceeded {
            what: "objects of the comma category",
            required: objects.len() as u128,
            limit: budget.max_objects as u128,
        });
    }
    let total: usize = objects.iter().map(|o| cls.generators[o.generator].dim()).sum();
    if total > budget.max_colimit_dim {
        return Err(Error::BudgetExceeded {
            what: "colimit dimension",
            required: total as u128,
            limit: budget.max_colimit_dim as u128,
        });
    }

    let ng = cls.generators.len();
    let morphisms: Vec<Vec<Mat>> = (0..ng * ng)
        .into_par_iter()
        .map(|st| coalgebra_morphisms(&cls.generators[st / ng], &cls.generators[st % ng], budget))
        .collect::<Result<_>>()?;

    let parts: Vec<Coalgebra> = objects.iter().map(|o| cls.generators[o.generator].clone()).collect();
    let sum = direct_sum(&parts, field)?;
    // arrows k: (G,q) → (G',q') with q'·k = q; each contributes ι' k − ι
    let relation_sets: Vec<(usize, Vec<Vec<Scalar>>)> = (0..objects.len())
        .into_par_iter()
        .map(|s| {
            let os = &objects[s];
            let mut arrows = 0;
            let mut rels = Vec::new();
            for (t, ot) in objects.iter().enumerate() {
                for k in &morphisms[os.generator * ng + ot.generator] {
                    if &ot.q * k != os.q {
                        continue;
                    }
                    arrows += 1;
                    if s == t {
                        continue;
                    }
                    let diff = &(&sum.legs[t] * k) - &sum.legs[s];
                    rels.extend((0..diff.cols()).map(|j| diff.column(j)));
                }
            }
            (arrows, rels)
        })
        .collect();
    let mut rel = Subspace::zero(field, total);
    let mut arrow_count = 0;
    for (a, rels) in relation_sets {
        arrow_count += a;
        for v in rels {
            rel.insert(v);
        }
    }
    let (mut e0, proj) = sum.object.quotient(&rel)?;
    e0.name = "E0".into();
    let legs: Vec<Mat> = sum.legs.iter().map(|l| &proj * l).collect();
    // p0 on the complement basis: a basis vector of the sum belongs to one object
    let big_q = concat_columns(field, p.n_dim, objects.iter().map(|o| &o.q))?;
    let p0 = big_q.select_columns(&rel.quotient_basis());
    if &p0 * &proj != big_q {
        return Err(Error::ConventionFailure("induced map to N is not well defined".into()));
    }

    let statuses = objects
        .par_iter()
        .enumerate()
        .map(|(i, o)| {
            let g = &cls.generators[o.generator];
            let mediators = count_mediators(g, &e0, &p0, &o.q, budget)?;
            Ok(MediatorStatus {
                object: i,
                generator: o.generator,
                mediators,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FinalObject {
        e0,
        p0,
        objects,
        legs,
        arrow_count,
        certificate: FinalityCertificate { statuses },
    })
}

fn concat_columns<'a>(field: Field, rows: usize, mats: impl Iterator<Item = &'a Mat>) -> Result<Mat> {
    let mut out = Mat::zeros(field, rows, 0);
    for m in mats {
        out = out.hstack(m)?;
    }
    Ok(out)
}

/// Cofree coalgebra on `field^v_dim` relative to the class.
pub fn cofree_approx(v_dim: usize, cls: &BoundedClass, budget: &EngineBudget) -> Result<FinalObject> {
    bounded_final_object(&ConstraintProblem::unconstrained(cls.field, v_dim), cls, budget)
}

/// Underlying vector-space limit: the subspace of `⊕ C_a` cut out by
/// `f(x_s) = x_t`, as a basis matrix, with one projection per object.
pub fn vector_space_limit(d: &Diagram) -> Result<(usize, Vec<Mat>)> {
    let field = d.field();
    let dims: Vec<usize> = d.objects().iter().map(|(_, c)| c.dim()).collect();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            *acc += n;
            Some(o)
        })
        .collect();
    let total: usize = dims.iter().sum();
    let project = |a: usize| Mat::from_fn(field, dims[a], total, |r, s| if s == offsets[a] + r { field.one() } else { field.zero() });
    let mut cond = Mat::zeros(field, 0, total);
    for arrow in d.arrows() {
        let s = d.index_of(&arrow.source)?;
        let t = d.index_of(&arrow.target)?;
        let row = &(&arrow.matrix * &project(s)) - &project(t);
        cond = cond.vstack(&row)?;
    }
    let space = cond.kernel();
    let basis = space.basis().transpose();
    let projections = (0..dims.len()).map(|a| &project(a) * &basis).collect();
    Ok((space.dim(), projections))
}

#[derive(Clone, Debug)]
pub struct BoundedLimit {
    pub cone: Cocone,
    pub final_object: FinalObject,
}

impl BoundedLimit {
    pub fn certificate(&self) -> &FinalityCertificate {
        &self.final_object.certificate
    }
}

/// Limit of a diagram relative to the class: the final object over the
/// vector-space limit `P`, constrained by the projections `q_a`.
pub fn bounded_limit(d: &Diagram, cls: &BoundedClass, budget: &EngineBudget) -> Result<BoundedLimit> {
    if d.field() != cls.field {
        return Err(Error::FieldMismatch(cls.field.to_string(), d.field().to_string()));
    }
    let (p_dim, projections) = vector_space_limit(d)?;
    let constraints = d
        .objects()
        .iter()
        .zip(&projections)
        .map(|((_, c), q)| (c.clone(), q.clone()))
        .collect();
    let problem = ConstraintProblem::new(d.field(), p_dim, constraints)?;
    let fo = bounded_final_object(&problem, cls, budget)?;
    let legs = projections.iter().map(|q| q * &fo.p0).collect();
    Ok(BoundedLimit {
        cone: Cocone {
            object: fo.e0.clone(),
            legs,
        },
        final_object: fo,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{check_coalgebra, ground_coalgebra, grouplike_coalgebra};

    fn f2() -> Field {
        Field::Prime(2)
    }

    #[test]
    fn cofree_on_a_point_and_a_line() {
        let cls = BoundedClass::new(f2(), 1).unwrap();
        let b = EngineBudget::default();
        let zero = cofree_approx(0, &cls, &b).unwrap();
        assert_eq!(zero.e0.delta(), ground_coalgebra(f2()).delta());
        assert_eq!(zero.objects.len(), 2);
        assert!(zero.certificate.passed());

        let line = cofree_approx(1, &cls, &b).unwrap();
        assert_eq!(line.objects.len(), 3);
        assert_eq!(line.e0.delta(), grouplike_coalgebra(f2(), 2).delta());
        assert_eq!(line.p0, Mat::from_i64_rows(f2(), &[&[0, 1]]));
        assert!(line.certificate.passed());
        assert!(check_coalgebra(&line.e0).is_empty());
    }

    #[test]
    fn counit_constraint_shrinks_objects() {
        // f: N → K with N = F_2: f∘q must be a coalgebra map, so q(e) = 1 on grouplikes
        let cls = BoundedClass::new(f2(), 1).unwrap();
        let k = ground_coalgebra(f2());
        let p = ConstraintProblem::new(f2(), 1, vec![(k, Mat::identity(f2(), 1))]).unwrap();
        let fo = bounded_final_object(&p, &cls, &EngineBudget::default()).unwrap();
        assert_eq!(fo.objects.len(), 2);
        assert_eq!(fo.e0.dim(), 1);
        assert!(fo.certificate.passed());
    }

    #[test]
    fn empty_diagram_is_terminal() {
        let cls = BoundedClass::new(f2(), 1).unwrap();
        let d = Diagram::new(f2(), vec![], vec![]).unwrap();
        let lim = bounded_limit(&d, &cls, &EngineBudget::default()).unwrap();
        assert_eq!(lim.cone.object.delta(), ground_coalgebra(f2()).delta());
        assert!(lim.certificate().passed());
    }

    #[test]
    fn budget_is_enforced() {
        let cls = BoundedClass::new(f2(), 1).unwrap();
        let tight = EngineBudget {
            max_objects: 2,
            ..EngineBudget::default()
        };
        assert!(matches!(
            cofree_approx(1, &cls, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
