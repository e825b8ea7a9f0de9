//! Finite colimits, coequalizers and equalizers of coalgebras, plus the
//! bounded final-object construction in [`bounded`].

mod bounded;

pub use bounded::{
    bounded_final_object, bounded_limit, cofree_approx, vector_space_limit, BoundedClass, BoundedLimit,
    ConstraintProblem, EngineBudget, FinalObject, FinalityCertificate, HObject, MediatorStatus,
};

use crate::coalgebra::{is_coalgebra_morphism, largest_subcoalgebra_in, Coalgebra, CoalgebraMorphism};
use crate::error::{ensure_dim, Error, Result};
use crate::field::Field;
use crate::matrix::{solve, Mat};
use crate::subspace::Subspace;

/// An object together with its structure maps: injections for colimits,
/// projections or inclusions for limits.
#[derive(Clone, Debug)]
pub struct Cocone {
    pub object: Coalgebra,
    pub legs: Vec<Mat>,
}

/// Block direct sum of coalgebras with the injections.
pub fn direct_sum(parts: &[Coalgebra], field: Field) -> Result<Cocone> {
    for c in parts {
        if c.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
        }
    }
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.dim();
            Some(o)
        })
        .collect();
    let total: usize = parts.iter().map(Coalgebra::dim).sum();
    let mut cols = Vec::with_capacity(total);
    let mut counit = Vec::with_capacity(total);
    for (c, &off) in parts.iter().zip(&offsets) {
        let n = c.dim();
        for i in 0..n {
            let mut v = vec![field.zero(); total * total];
            for j in 0..n {
                for k in 0..n {
                    let d = c.structure_constant(i, j, k);
                    if !d.is_zero() {
                        v[(off + j) * total + off + k] = d.clone();
                    }
                }
            }
            cols.push(v);
            counit.push(c.counit()[i].clone());
        }
    }
    let name = parts.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join("⊕");
    let object = Coalgebra::from_fn(field, total, counit, name, |i| cols[i].clone())?;
    let legs = parts
        .iter()
        .zip(&offsets)
        .map(|(c, &off)| Mat::from_fn(field, total, c.dim(), |r, s| if r == off + s { field.one() } else { field.zero() }))
        .collect();
    Ok(Cocone { object, legs })
}

/// Coproduct of two coalgebras with its two injections.
pub fn coproduct(c1: &Coalgebra, c2: &Coalgebra) -> Result<Cocone> {
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch(c1.field().to_string(), c2.field().to_string()));
    }
    direct_sum(&[c1.clone(), c2.clone()], c1.field())
}

/// Quotient of `c` by a coideal, with the projection as the single leg.
pub fn quotient_coalgebra(c: &Coalgebra, coideal: &Subspace) -> Result<Cocone> {
    let (object, proj) = c.quotient(coideal)?;
    Ok(Cocone {
        object,
        legs: vec![proj],
    })
}

fn same_endpoints(f: &CoalgebraMorphism, g: &CoalgebraMorphism) -> Result<()> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::IllFormedDiagram("parallel morphisms must share source and target".into()));
    }
    Ok(())
}

/// Quotient of the common target by `im(f − g)`.
pub fn coequalizer(f: &CoalgebraMorphism, g: &CoalgebraMorphism) -> Result<Cocone> {
    same_endpoints(f, g)?;
    let diff = f.matrix() - g.matrix();
    quotient_coalgebra(f.target(), &diff.column_space())
}

/// Largest subcoalgebra of the common source inside `ker(f − g)`, with its inclusion.
pub fn equalizer(f: &CoalgebraMorphism, g: &CoalgebraMorphism) -> Result<Cocone> {
    same_endpoints(f, g)?;
    let diff = f.matrix() - g.matrix();
    let e = largest_subcoalgebra_in(f.source(), &diff.kernel())?;
    let (object, inclusion) = f.source().restrict(&e)?;
    Ok(Cocone {
        object,
        legs: vec![inclusion],
    })
}

/// The unique `u` with `mono·u = h`, if any. `mono` must be injective.
pub fn factor_through_mono(mono: &Mat, h: &Mat) -> Result<Option<Mat>> {
    ensure_dim("factor_through_mono rows", mono.rows(), h.rows())?;
    if mono.rank() != mono.cols() {
        return Err(Error::InvalidStructure("map is not injective".into()));
    }
    match solve(mono, h) {
        Ok(s) => Ok(Some(s.particular)),
        Err(Error::Inconsistent) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The unique `u` with `u·legs[a] = tests[a]` for all `a`, if any. The legs
/// must be jointly surjective.
pub fn factor_through_legs(legs: &[Mat], tests: &[Mat]) -> Result<Option<Mat>> {
    ensure_dim("factor_through_legs count", legs.len(), tests.len())?;
    let Some(first) = legs.first() else {
        return Err(Error::IllFormedDiagram("no legs".into()));
    };
    let field = first.field();
    let out_dim = tests[0].rows();
    let mut l = Mat::zeros(field, first.rows(), 0);
    let mut t = Mat::zeros(field, out_dim, 0);
    for (a, b) in legs.iter().zip(tests) {
        ensure_dim("leg source", a.cols(), b.cols())?;
        l = l.hstack(a)?;
        t = t.hstack(b)?;
    }
    if l.rank() != l.rows() {
        return Err(Error::InvalidStructure("legs are not jointly surjective".into()));
    }
    // u·L = T  ⇔  Lᵀ·uᵀ = Tᵀ
    match solve(&l.transpose(), &t.transpose()) {
        Ok(s) => Ok(Some(s.particular.transpose())),
        Err(Error::Inconsistent) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramArrow {
    pub label: String,
    pub source: String,
    pub target: String,
    pub matrix: Mat,
}

/// A finite diagram of coalgebras with arrows between named objects.
#[derive(Clone, Debug)]
pub struct Diagram {
    field: Field,
    objects: Vec<(String, Coalgebra)>,
    arrows: Vec<DiagramArrow>,
}

impl Diagram {
    pub fn new(field: Field, objects: Vec<(String, Coalgebra)>, arrows: Vec<DiagramArrow>) -> Result<Diagram> {
        for (i, (label, c)) in objects.iter().enumerate() {
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            if objects[..i].iter().any(|(l, _)| l == label) {
                return Err(Error::IllFormedDiagram(format!("duplicate object label {label}")));
            }
        }
        let d = Diagram {
            field,
            objects,
            arrows: Vec::new(),
        };
        let mut d = d;
        for a in arrows {
            let s = d.index_of(&a.source)?;
            let t = d.index_of(&a.target)?;
            let (src, tgt) = (&d.objects[s].1, &d.objects[t].1);
            if a.matrix.rows() != tgt.dim() || a.matrix.cols() != src.dim() {
                return Err(Error::IllFormedDiagram(format!("arrow {} has the wrong shape", a.label)));
            }
            if !is_coalgebra_morphism(&a.matrix, src, tgt)? {
                return Err(Error::IllFormedDiagram(format!("arrow {} is not a coalgebra morphism", a.label)));
            }
            d.arrows.push(a);
        }
        Ok(d)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn objects(&self) -> &[(String, Coalgebra)] {
        &self.objects
    }

    pub fn arrows(&self) -> &[DiagramArrow] {
        &self.arrows
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|(l, _)| l == label)
            .ok_or_else(|| Error::IllFormedDiagram(format!("unknown object {label}")))
    }

    /// Two objects and two parallel arrows.
    pub fn parallel_pair(f: &CoalgebraMorphism, g: &CoalgebraMorphism) -> Result<Diagram> {
        same_endpoints(f, g)?;
        let field = f.source().field();
        Diagram::new(
            field,
            vec![("S".into(), f.source().clone()), ("T".into(), f.target().clone())],
            vec![
                DiagramArrow {
                    label: "f".into(),
                    source: "S".into(),
                    target: "T".into(),
                    matrix: f.matrix().clone(),
                },
                DiagramArrow {
                    label: "g".into(),
                    source: "S".into(),
                    target: "T".into(),
                    matrix: g.matrix().clone(),
                },
            ],
        )
    }
}

/// Direct sum of the objects modulo `ι_t(f x) − ι_s(x)` for every arrow.
pub fn finite_colimit(d: &Diagram) -> Result<Cocone> {
    let parts: Vec<Coalgebra> = d.objects.iter().map(|(_, c)| c.clone()).collect();
    let sum = direct_sum(&parts, d.field)?;
    let total = sum.object.dim();
    let mut rel = Subspace::zero(d.field, total);
    for a in &d.arrows {
        let s = d.index_of(&a.source)?;
        let t = d.index_of(&a.target)?;
        let diff = &(&sum.legs[t] * &a.matrix) - &sum.legs[s];
        for j in 0..diff.cols() {
            rel.insert(diff.column(j));
        }
    }
    let (object, proj) = sum.object.quotient(&rel)?;
    let legs = sum.legs.iter().map(|l| &proj * l).collect();
    Ok(Cocone { object, legs })
}

/// Checks that every leg of a cocone is a coalgebra morphism and commutes with the arrows.
pub fn verify_cocone(d: &Diagram, c: &Cocone) -> Result<bool> {
    ensure_dim("cocone legs", d.objects.len(), c.legs.len())?;
    for ((_, obj), leg) in d.objects.iter().zip(&c.legs) {
        if !is_coalgebra_morphism(leg, obj, &c.object)? {
            return Ok(false);
        }
    }
    for a in &d.arrows {
        let s = d.index_of(&a.source)?;
        let t = d.index_of(&a.target)?;
        if &c.legs[t] * &a.matrix != c.legs[s] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The mediating morphism from the computed colimit to a test cocone, checked
/// to be a coalgebra morphism; `None` if the test cocone does not factor.
pub fn colimit_mediator(d: &Diagram, colimit: &Cocone, test: &Cocone) -> Result<Option<Mat>> {
    if !verify_cocone(d, test)? {
        return Err(Error::IllFormedDiagram("test cocone is not a cocone".into()));
    }
    if d.objects.is_empty() {
        // the colimit is the zero coalgebra and the empty map is the only candidate
        return Ok(Some(Mat::zeros(d.field, test.object.dim(), 0)));
    }
    let Some(u) = factor_through_legs(&colimit.legs, &test.legs)? else {
        return Ok(None);
    };
    Ok(is_coalgebra_morphism(&u, &colimit.object, &test.object)?.then_some(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{check_coalgebra, ground_coalgebra, grouplike_coalgebra};

    #[test]
    fn coproduct_of_grounds_is_grouplikes() {
        let q = Field::Rationals;
        let k = ground_coalgebra(q);
        let c = coproduct(&k, &k).unwrap();
        assert_eq!(c.object.delta(), grouplike_coalgebra(q, 2).delta());
        let zero = Coalgebra::new(q, 0, Mat::zeros(q, 0, 0), vec![], "0").unwrap();
        let c2 = coproduct(&k, &zero).unwrap();
        assert_eq!(c2.object.delta(), k.delta());
        assert!(coproduct(&k, &ground_coalgebra(Field::Prime(2))).is_err());
    }

    #[test]
    fn swap_pair() {
        let q = Field::Rationals;
        let c = grouplike_coalgebra(q, 2);
        let id = CoalgebraMorphism::identity(&c);
        let swap = CoalgebraMorphism::new(c.clone(), c.clone(), Mat::from_i64_rows(q, &[&[0, 1], &[1, 0]])).unwrap();
        let co = coequalizer(&id, &swap).unwrap();
        assert_eq!(co.object.dim(), 1);
        assert!(check_coalgebra(&co.object).is_empty());
        assert_eq!(co.object.delta(), ground_coalgebra(q).delta());
        let eq = equalizer(&id, &swap).unwrap();
        assert_eq!(eq.object.dim(), 0);
        let same = equalizer(&id, &id).unwrap();
        assert_eq!(same.object.dim(), 2);
        let coid = coequalizer(&swap, &swap).unwrap();
        assert_eq!(coid.legs[0], Mat::identity(q, 2));
    }

    #[test]
    fn span_gluing_grouplikes() {
        let q = Field::Rationals;
        let k = ground_coalgebra(q);
        let g2 = grouplike_coalgebra(q, 2);
        let pick = |i: i64| Mat::from_i64_rows(q, &[&[1 - i], &[i]]);
        let d = Diagram::new(
            q,
            vec![("K".into(), k), ("A".into(), g2.clone()), ("B".into(), g2)],
            vec![
                DiagramArrow {
                    label: "a".into(),
                    source: "K".into(),
                    target: "A".into(),
                    matrix: pick(1),
                },
                DiagramArrow {
                    label: "b".into(),
                    source: "K".into(),
                    target: "B".into(),
                    matrix: pick(0),
                },
            ],
        )
        .unwrap();
        let col = finite_colimit(&d).unwrap();
        assert_eq!(col.object.dim(), 3);
        assert!(check_coalgebra(&col.object).is_empty());
        assert!(verify_cocone(&d, &col).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let expect = i64::from(i == j && j == k);
                    assert_eq!(col.object.structure_constant(i, j, k), &q.from_i64(expect));
                }
            }
        }
        let med = colimit_mediator(&d, &col, &col).unwrap().unwrap();
        assert_eq!(med, Mat::identity(q, 3));
    }

    #[test]
    fn bad_diagram_rejected() {
        let q = Field::Rationals;
        let k = ground_coalgebra(q);
        let r = Diagram::new(
            q,
            vec![("K".into(), k)],
            vec![DiagramArrow {
                label: "z".into(),
                source: "K".into(),
                target: "K".into(),
                matrix: Mat::zeros(q, 1, 1),
            }],
        );
        assert!(matches!(r, Err(Error::IllFormedDiagram(_))));
    }
}
