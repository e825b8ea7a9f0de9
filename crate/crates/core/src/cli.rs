//! Batch command line: one command per invocation, a JSON report on stdout.
//!
//! Exit status is 0 when every certificate passes, 2 when a computation
//! finished but a certificate failed, and 1 for malformed input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{check_algebra, cyclic_group_algebra, truncated_polynomial, Algebra};
use crate::coalgebra::{
    check_coalgebra, comatrix_coalgebra, comatrix_presentation, dual_algebra, dual_coalgebra, grouplike_coalgebra,
    is_coalgebra_morphism, largest_subcoalgebra_in, subcoalgebra_generated, subcoalgebra_generated_iterative,
    Coalgebra, CoalgebraMorphism,
};
use crate::coring::{
    check_coring, cohn_saturate, cohn_witness, invariant_closure, is_invariant, is_pure_submodule, subcoring_closure,
    Bimodule, CohnBound, Coring, Side,
};
use crate::enumerate::{enumerate_coalgebras, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::hopf::{
    antipode_solve, check_bialgebra, check_comodule, check_comodule_coalgebra, check_module_coalgebra,
    coefficient_coalgebra, comodule_subcoalgebra_closure, endomorphism_algebra, ev_co_maps, local_representativity,
    matrix_coalgebra, module_subcoalgebra_closure, regular_embedding, smash_coproduct, verify_local_representativity,
    Bialgebra, Comodule, ComoduleAlgebra, ComoduleCoalgebra, HopfAlgebra, ModuleCoalgebra,
};
use crate::io::{digest, BialgebraParts, CertificateSummary, DocRef, Document, Object, RunReport, Store, STORE_ENV};
use crate::limits::{
    bounded_limit, cofree_approx, coequalizer, direct_sum, equalizer, finite_colimit, verify_cocone, BoundedClass,
    Diagram, EngineBudget, FinalityCertificate,
};
use crate::matrix::Mat;
use crate::subspace::Subspace;

#[derive(Parser, Debug)]
#[command(name = "coalg", version, about = "Exact computations with coalgebras, corings and Hopf actions")]
pub struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Input documents: file paths, or names or digests in the store.
    #[arg(long = "in", value_name = "FILE", num_args = 1.., global = true)]
    inputs: Vec<String>,
    /// Write the output document here.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
    /// Field for generated objects: Q, F<p> or Fp:<p>.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Dimension bound of the generator class or enumeration.
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Unknowns and equations per Cohn system.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Also write the report here.
    #[arg(long, value_name = "FILE", global = true)]
    report: Option<PathBuf>,
    /// Object store; outputs are saved into it. Defaults to $COALG_STORE for lookups.
    #[arg(long, value_name = "DIR", global = true)]
    store: Option<PathBuf>,
    /// Cap on candidate structures in enumerations.
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Name of the output document.
    #[arg(long, global = true)]
    name: Option<String>,
    /// Seed vectors, e.g. "1 0 1; 0 1 0", instead of a subspace document.
    #[arg(long, global = true)]
    vectors: Option<String>,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Check the axioms of any document.
    Check,
    /// Linear dual of an algebra or coalgebra.
    Dual,
    /// The comatrix coalgebra (--n) or the comatrix presentation of --in.
    Comatrix {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Subcoalgebra generated by a subspace.
    GenerateClosure,
    /// Largest subcoalgebra inside a subspace.
    LargestSub,
    /// Equalizer of two parallel morphisms.
    Equalizer,
    /// Coequalizer of two parallel morphisms.
    Coequalizer,
    /// Direct sum of coalgebras with its injections.
    Coproduct,
    /// Colimit of a finite diagram.
    Colimit,
    /// Cofree coalgebra relative to the class of dimension ≤ --max-dim.
    CofreeApprox {
        #[arg(long)]
        vdim: usize,
    },
    /// Limit of a diagram relative to the class of dimension ≤ --max-dim.
    BoundedLimit,
    /// All coalgebra structures over a finite field up to --max-dim.
    Enumerate {
        /// Only this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Coring axioms over the base algebra.
    CoringCheck,
    /// Smallest invariant sub-bimodule containing a seed.
    InvariantClosure,
    /// Enlarge a sub-bimodule until no bounded Cohn system separates it.
    CohnSaturate,
    /// Subcoring generated by a seed, with invariance and purity certificates.
    SubcoringClosure,
    /// Summand test and Cohn witness search on both sides.
    Purity,
    /// Solve for the antipode of a bialgebra.
    Antipode,
    /// Smash coproduct of a comodule coalgebra.
    Smash,
    /// H-stable subcoalgebra generated by a seed in a module coalgebra.
    ModuleClosure,
    /// Subcoalgebra and subcomodule generated by a seed in a comodule coalgebra.
    ComoduleClosure,
    /// Coefficient coalgebra of a comodule.
    Coefficients,
    /// Finite factorization of a functional against products from a subspace.
    LocalRep {
        /// Functional on the algebra, e.g. "0 1".
        #[arg(long)]
        functional: String,
    },
    /// Dual comodule over a Hopf algebra, with evaluation and coevaluation.
    DualizeComodule,
    /// V ⊗ V* as an algebra and V* ⊗ V as a coalgebra in comodules.
    EndoAlgebra,
    /// Left regular representation of a comodule algebra.
    RegularEmbedding,
    /// Emit a named standard object; --list shows the names.
    Builtin {
        which: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Content-addressed document store.
    Store {
        #[command(subcommand)]
        op: StoreOp,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum StoreOp {
    /// Store the --in documents under their names.
    Put {
        #[arg(long)]
        force: bool,
    },
    /// Print a stored document by name or digest.
    Get { key: String },
    /// Names and digests in lexicographic order.
    List,
}

const BUILTINS: &[(&str, &str)] = &[
    ("dual-numbers", "algebra K[x]/x²"),
    ("regular-dual-numbers", "regular bimodule of K[x]/x²"),
    ("span-x", "subspace span{x} of K[x]/x²"),
    ("sweedler-dual-numbers", "Sweedler coring of K[x]/x² over K"),
    ("kc2", "bialgebra KC₂"),
    ("kc3", "bialgebra KC₃"),
    ("idempotent-monoid", "bialgebra of the monoid {1, e}"),
    ("grouplikes-2", "coalgebra with two grouplikes"),
    ("graded-dual-numbers", "C₂-graded dual numbers, a KC₂-comodule coalgebra"),
    ("left-regular-kc2", "KC₂ acting on itself, a module coalgebra"),
    ("regular-comodule-kc2", "KC₂ as a comodule over itself"),
    ("regular-comodule-algebra-kc2", "KC₂ as a comodule algebra over itself"),
    ("grouplike-parallel-pair", "diagram of the two morphisms K → grouplikes-2"),
    ("pick-g0", "morphism K → grouplikes-2 onto the first grouplike"),
    ("pick-g1", "morphism K → grouplikes-2 onto the second grouplike"),
];

fn wrong(expected: &str, o: &Object) -> Error {
    Error::DocumentField {
        path: "kind".into(),
        message: format!("expected {expected}, found {}", o.kind()),
    }
}

fn as_coalgebra(o: Object) -> Result<Coalgebra> {
    match o {
        Object::Coalgebra(c) => Ok(c),
        o => Err(wrong("coalgebra", &o)),
    }
}

fn as_algebra(o: Object) -> Result<Algebra> {
    match o {
        Object::Algebra(a) => Ok(a),
        o => Err(wrong("algebra", &o)),
    }
}

/// Bimodules; an algebra stands for its regular bimodule.
fn as_bimodule(o: Object) -> Result<Bimodule> {
    match o {
        Object::Bimodule(b) => Ok(b),
        Object::Algebra(a) => Ok(Bimodule::regular(&a)),
        o => Err(wrong("bimodule", &o)),
    }
}

/// Corings; a coalgebra stands for itself as a coring over the ground field.
fn as_coring(o: Object) -> Result<Coring> {
    match o {
        Object::Coring(c) => Ok(c),
        Object::Coalgebra(c) => Ok(Coring::from_coalgebra(&c)),
        o => Err(wrong("coring", &o)),
    }
}

fn as_bialgebra(o: Object) -> Result<BialgebraParts> {
    match o {
        Object::Bialgebra(h) | Object::Hopf { h, .. } => Ok(h),
        o => Err(wrong("bialgebra", &o)),
    }
}

fn as_morphism(o: Object) -> Result<CoalgebraMorphism> {
    match o {
        Object::Morphism(m) => Ok(m),
        o => Err(wrong("morphism", &o)),
    }
}

fn as_diagram(o: Object) -> Result<Diagram> {
    match o {
        Object::Diagram(d) => Ok(d),
        o => Err(wrong("diagram", &o)),
    }
}

fn as_comodule(o: Object) -> Result<(Comodule, Option<Algebra>)> {
    match o {
        Object::Comodule {
            coalgebra,
            algebra,
            dim,
            rho,
        } => Ok((Comodule::new(coalgebra, dim, rho)?, algebra)),
        o => Err(wrong("comodule", &o)),
    }
}

fn hopf_of(c: &Comodule, algebra: Option<Algebra>) -> Result<HopfAlgebra> {
    let a = algebra.ok_or_else(|| Error::DocumentField {
        path: "payload.algebra".into(),
        message: "required: the comodule must be over a Hopf algebra".into(),
    })?;
    HopfAlgebra::new(Bialgebra::new(a, c.coalgebra().clone(), c.coalgebra().name.clone())?)
}

fn vec_str(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn mat_rows(m: &Mat) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::String(vec_str(m.row(r)))).collect())
}

fn parse_vector(field: Field, text: &str, len: usize, what: &str) -> Result<Vec<Scalar>> {
    let toks: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
    if toks.len() != len {
        return Err(Error::DocumentField {
            path: what.into(),
            message: format!("expected {len} entries, found {}", toks.len()),
        });
    }
    toks.iter()
        .map(|t| {
            field.parse_scalar(t).map_err(|e| Error::DocumentField {
                path: what.into(),
                message: e.to_string(),
            })
        })
        .collect()
}

fn finality_summary(c: &FinalityCertificate) -> CertificateSummary {
    let failed = c.failures().count();
    CertificateSummary {
        name: "finality".into(),
        passed: c.statuses.len() - failed,
        failed,
        first_counterexample: c.failures().next().map(|s| {
            format!("object {} (generator {}) has {} mediators", s.object, s.generator, s.mediators)
        }),
    }
}

fn delta_stable(c: &Coalgebra, d: &Subspace) -> bool {
    d.basis_vectors().iter().all(|x| d.tensor_contains(d, &c.coproduct(x)))
}

struct Run {
    c: Common,
    report: RunReport,
    lookup: Option<Store>,
    save: Option<Store>,
    next: usize,
    outputs: Vec<Document>,
}

impl Run {
    fn new(c: Common, command: &str) -> Result<Run> {
        let save = c.store.as_ref().map(Store::open).transpose()?;
        let lookup = match &save {
            Some(s) => Some(s.clone()),
            None => Store::from_env()?,
        };
        Ok(Run {
            c,
            report: RunReport::new(command),
            lookup,
            save,
            next: 0,
            outputs: Vec::new(),
        })
    }

    fn field_flag(&self) -> Result<Option<Field>> {
        self.c.field.as_deref().map(str::parse).transpose()
    }

    fn require_field(&self) -> Result<Field> {
        self.field_flag()?.ok_or_else(|| Error::DocumentField {
            path: "--field".into(),
            message: "required for this command".into(),
        })
    }

    fn read_text(&self, key: &str) -> Result<String> {
        let path = PathBuf::from(key);
        if path.is_file() {
            return Ok(fs::read_to_string(path)?);
        }
        match &self.lookup {
            Some(s) => s.get_text(key),
            None => Err(Error::NotFound(key.into())),
        }
    }

    fn raw_input(&mut self) -> Result<Document> {
        let key = self.c.inputs.get(self.next).cloned().ok_or_else(|| Error::DocumentField {
            path: "--in".into(),
            message: format!("missing input #{}", self.next + 1),
        })?;
        self.next += 1;
        let doc = Document::parse(&self.read_text(&key)?)?;
        if let Some(f) = self.field_flag()? {
            if doc.field()? != f {
                return Err(Error::FieldMismatch(f.to_string(), doc.field.clone()));
            }
        }
        self.report.inputs.push(DocRef {
            name: doc.name.clone(),
            kind: doc.kind.clone(),
            digest: digest(&doc.to_text()),
        });
        Ok(doc)
    }

    fn input(&mut self) -> Result<(String, Object)> {
        let doc = self.raw_input()?;
        Ok((doc.name.clone(), doc.to_object()?))
    }

    fn has_more(&self) -> bool {
        self.next < self.c.inputs.len()
    }

    fn rest(&mut self) -> Result<Vec<(String, Object)>> {
        let mut out = Vec::new();
        while self.has_more() {
            out.push(self.input()?);
        }
        Ok(out)
    }

    /// `--vectors`, else the next input, which must be a subspace.
    fn seed(&mut self, field: Field, ambient: usize) -> Result<Subspace> {
        if let Some(text) = self.c.vectors.clone() {
            let mut s = Subspace::zero(field, ambient);
            for row in text.split(';').filter(|r| !r.trim().is_empty()) {
                s.insert(parse_vector(field, row, ambient, "--vectors")?);
            }
            return Ok(s);
        }
        match self.input()?.1 {
            Object::Subspace(s) if s.ambient_dim() == ambient && s.field() == field => Ok(s),
            Object::Subspace(s) => Err(Error::DocumentField {
                path: "payload.ambient".into(),
                message: format!("seed lives in dimension {}, expected {ambient}", s.ambient_dim()),
            }),
            o => Err(wrong("subspace", &o)),
        }
    }

    fn bound(&self) -> CohnBound {
        match self.c.bound {
            Some(k) => CohnBound {
                unknowns: k,
                equations: k,
                ..CohnBound::default()
            },
            None => CohnBound::default(),
        }
    }

    fn emit(&mut self, default_name: String, obj: &Object) {
        let name = self.c.name.clone().unwrap_or(default_name);
        let doc = Document::from_object(name, obj);
        self.report.outputs.push(DocRef {
            name: doc.name.clone(),
            kind: doc.kind.clone(),
            digest: digest(&doc.to_text()),
        });
        self.outputs.push(doc);
    }

    fn certify(&mut self, c: CertificateSummary) {
        self.report.certify(c);
    }

    fn single(&mut self, name: &str, holds: bool, counterexample: impl FnOnce() -> String) {
        self.report.certify(CertificateSummary::single(name, holds, counterexample));
    }

    fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.report.result(key, v);
    }

    fn finish(mut self, started: Instant) -> Result<ExitCode> {
        if self.c.out.is_some() && self.outputs.len() > 1 {
            return Err(Error::InvalidStructure("--out takes a single output".into()));
        }
        if let (Some(path), Some(doc)) = (&self.c.out, self.outputs.first()) {
            fs::write(path, doc.to_text())?;
        }
        if let Some(store) = &self.save {
            for doc in &self.outputs {
                store.put(doc, false)?;
            }
        }
        if self.c.timing {
            self.report.wall_time_ms = Some(started.elapsed().as_millis() as u64);
        }
        let text = self.report.to_text();
        if let Some(path) = &self.c.report {
            fs::write(path, &text)?;
        }
        print!("{text}");
        Ok(if self.report.all_passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(2)
        })
    }
}

fn coalgebra_axioms(r: &mut RunReport, c: &Coalgebra) {
    r.certify(CertificateSummary::from_violations("coalgebra-axioms", 3 * c.dim(), &check_coalgebra(c)));
}

fn algebra_axioms(r: &mut RunReport, a: &Algebra) {
    let n = a.dim();
    r.certify(CertificateSummary::from_violations("algebra-axioms", n * n * n + 2 * n, &check_algebra(a)));
}

fn single(r: &mut RunReport, name: &str, holds: bool, counterexample: impl FnOnce() -> String) {
    r.certify(CertificateSummary::single(name, holds, counterexample));
}

/// Axiom certificates for a document of any kind. Structures rejected by
/// their constructors yield a failed `well-formed` certificate rather than an error.
pub fn check_document(doc: &Document) -> Result<Vec<CertificateSummary>> {
    let mut r = RunReport::new("check");
    check_into(&mut r, doc)?;
    Ok(r.certificates)
}

fn check_into(r: &mut RunReport, doc: &Document) -> Result<()> {
    let obj = match doc.to_object() {
        Ok(o) => o,
        Err(e @ (Error::InvalidStructure(_) | Error::IllFormedDiagram(_) | Error::NotASubmodule(_))) => {
            single(r, "well-formed", false, || e.to_string());
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    match &obj {
        Object::Algebra(a) => algebra_axioms(r, a),
        Object::Coalgebra(c) => coalgebra_axioms(r, c),
        Object::Bimodule(_) | Object::Morphism(_) | Object::Diagram(_) | Object::Subspace(_) => {
            single(r, "well-formed", true, String::new)
        }
        Object::Coring(c) => {
            let v = check_coring(c);
            r.certify(CertificateSummary::from_violations("coring-axioms", 7 * c.dim(), &v));
        }
        Object::Bialgebra(h) | Object::Hopf { h, .. } => {
            let n = h.algebra.dim();
            let v = check_bialgebra(&h.algebra, &h.coalgebra);
            r.certify(CertificateSummary::from_violations("bialgebra-axioms", n * n * n + 5 * n + 2 * n * n + 2, &v));
            if let Object::Hopf { antipode, .. } = &obj {
                if v.is_empty() {
                    let solved = antipode_solve(&h.bialgebra()?);
                    single(r, "antipode", solved.as_ref() == Ok(antipode), || match solved {
                        Ok(s) => format!("antipode differs from the solved one {:?}", mat_rows(&s)),
                        Err(e) => e.to_string(),
                    });
                }
            }
        }
        Object::ModuleCoalgebra { h, coalgebra, action } => {
            let b = h.bialgebra()?;
            coalgebra_axioms(r, coalgebra);
            let (hd, n) = (b.dim(), coalgebra.dim());
            let v = check_module_coalgebra(&b, coalgebra, action);
            r.certify(CertificateSummary::from_violations("module-coalgebra", 1 + hd * hd + 2 * hd * n, &v));
        }
        Object::ComoduleCoalgebra { h, coalgebra, rho } => {
            let b = h.bialgebra()?;
            coalgebra_axioms(r, coalgebra);
            let v = check_comodule_coalgebra(&b, coalgebra, rho);
            r.certify(CertificateSummary::from_violations("comodule-coalgebra", 4 * coalgebra.dim(), &v));
        }
        Object::Comodule {
            coalgebra, dim, rho, ..
        } => {
            coalgebra_axioms(r, coalgebra);
            let v = check_comodule(coalgebra, *dim, rho);
            r.certify(CertificateSummary::from_violations("comodule-axioms", 2 * dim, &v));
        }
        Object::ComoduleAlgebra { h, algebra, rho } => {
            let b = h.bialgebra()?;
            let res = ComoduleAlgebra::new(&b, algebra.clone(), rho.clone());
            single(r, "comodule-algebra", res.is_ok(), || res.err().map(|e| e.to_string()).unwrap_or_default());
        }
        Object::ConstraintProblem(p) => {
            for (c, _) in &p.constraints {
                coalgebra_axioms(r, c);
            }
            if p.constraints.is_empty() {
                single(r, "well-formed", true, String::new);
            }
        }
    }
    Ok(())
}

fn cmd_check(r: &mut Run) -> Result<()> {
    let doc = r.raw_input()?;
    r.result("kind", doc.kind.clone());
    check_into(&mut r.report, &doc)
}

fn cmd_dual(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    match obj {
        Object::Algebra(a) => {
            let c = dual_coalgebra(&a);
            coalgebra_axioms(&mut r.report, &c);
            let back = dual_algebra(&c);
            r.single("round-trip", back.mult() == a.mult() && back.unit() == a.unit(), || {
                "double dual differs".into()
            });
            r.result("dim", c.dim());
            r.emit(format!("{name}-dual"), &Object::Coalgebra(c));
        }
        Object::Coalgebra(c) => {
            let a = dual_algebra(&c);
            algebra_axioms(&mut r.report, &a);
            let back = dual_coalgebra(&a);
            r.single("round-trip", back.delta() == c.delta() && back.counit() == c.counit(), || {
                "double dual differs".into()
            });
            r.result("dim", a.dim());
            r.emit(format!("{name}-dual"), &Object::Algebra(a));
        }
        o => return Err(wrong("algebra or coalgebra", &o)),
    }
    Ok(())
}

fn cmd_comatrix(r: &mut Run, n: Option<usize>) -> Result<()> {
    if r.has_more() {
        let (name, obj) = r.input()?;
        let c = as_coalgebra(obj)?;
        let p = comatrix_presentation(&c)?;
        let m = p.map.matrix();
        let morph = is_coalgebra_morphism(m, p.map.source(), &c)?;
        r.single("morphism", morph, || "presentation is not a coalgebra morphism".into());
        r.single("surjective", m.rank() == c.dim(), || format!("rank {} < {}", m.rank(), c.dim()));
        r.result("n", p.n);
        r.emit(format!("{name}-comatrix"), &Object::Morphism(p.map));
    } else {
        let n = n.ok_or_else(|| Error::DocumentField {
            path: "--n".into(),
            message: "required without --in".into(),
        })?;
        let c = comatrix_coalgebra(n, r.require_field()?);
        coalgebra_axioms(&mut r.report, &c);
        r.result("dim", c.dim());
        r.emit(format!("M{n}c"), &Object::Coalgebra(c));
    }
    Ok(())
}

fn cmd_generate_closure(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let c = as_coalgebra(obj)?;
    let s = r.seed(c.field(), c.dim())?;
    let d = subcoalgebra_generated(&c, &s)?;
    r.single("delta-stable", delta_stable(&c, &d), || "closure is not Δ-stable".into());
    r.single("contains-seed", d.contains(&s)?, || "seed not contained".into());
    let it = subcoalgebra_generated_iterative(&c, &s)?;
    r.single("iterative-agrees", it == d, || format!("iterative closure has dim {}", it.dim()));
    r.result("dim", d.dim());
    r.emit(format!("{name}-closure"), &Object::Subspace(d));
    Ok(())
}

fn cmd_largest_sub(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let c = as_coalgebra(obj)?;
    let w = r.seed(c.field(), c.dim())?;
    let d = largest_subcoalgebra_in(&c, &w)?;
    r.single("delta-stable", delta_stable(&c, &d), || "result is not Δ-stable".into());
    r.single("inside", w.contains(&d)?, || "result leaves the subspace".into());
    r.result("dim", d.dim());
    r.emit(format!("{name}-largest"), &Object::Subspace(d));
    Ok(())
}

fn parallel_pair(r: &mut Run) -> Result<(String, CoalgebraMorphism, CoalgebraMorphism)> {
    let (name, f) = r.input()?;
    let f = as_morphism(f)?;
    let g = as_morphism(r.input()?.1)?;
    Ok((name, f, g))
}

fn cmd_equalizer(r: &mut Run) -> Result<()> {
    let (name, f, g) = parallel_pair(r)?;
    let e = equalizer(&f, &g)?;
    let inc = &e.legs[0];
    r.single("equalizes", f.matrix() * inc == g.matrix() * inc, || "f·e ≠ g·e".into());
    r.single("morphism", is_coalgebra_morphism(inc, &e.object, f.source())?, || "inclusion is not a morphism".into());
    r.single("mono", inc.rank() == inc.cols(), || "inclusion is not injective".into());
    r.result("dim", e.object.dim());
    let m = CoalgebraMorphism::new(e.object, f.source().clone(), inc.clone())?;
    r.emit(format!("{name}-equalizer"), &Object::Morphism(m));
    Ok(())
}

fn cmd_coequalizer(r: &mut Run) -> Result<()> {
    let (name, f, g) = parallel_pair(r)?;
    let q = coequalizer(&f, &g)?;
    let p = &q.legs[0];
    r.single("coequalizes", p * f.matrix() == p * g.matrix(), || "q·f ≠ q·g".into());
    r.single("morphism", is_coalgebra_morphism(p, f.target(), &q.object)?, || "projection is not a morphism".into());
    let expected = f.target().dim() - (f.matrix() - g.matrix()).rank();
    r.single("dimension", q.object.dim() == expected, || {
        format!("dim {} ≠ {expected}", q.object.dim())
    });
    r.result("dim", q.object.dim());
    let m = CoalgebraMorphism::new(f.target().clone(), q.object, p.clone())?;
    r.emit(format!("{name}-coequalizer"), &Object::Morphism(m));
    Ok(())
}

fn cmd_coproduct(r: &mut Run) -> Result<()> {
    let parts: Vec<Coalgebra> = r.rest()?.into_iter().map(|(_, o)| as_coalgebra(o)).collect::<Result<_>>()?;
    let field = match parts.first() {
        Some(c) => c.field(),
        None => r.require_field()?,
    };
    let s = direct_sum(&parts, field)?;
    for (i, (c, leg)) in parts.iter().zip(&s.legs).enumerate() {
        let ok = is_coalgebra_morphism(leg, c, &s.object)?;
        r.single(&format!("injection-{i}"), ok, || "injection is not a morphism".into());
    }
    coalgebra_axioms(&mut r.report, &s.object);
    r.result("dim", s.object.dim());
    let names: Vec<String> = parts.iter().map(|c| c.name.clone()).collect();
    let mut out = s.object;
    out.name = names.join("⊕");
    r.emit("coproduct".into(), &Object::Coalgebra(out));
    Ok(())
}

fn cmd_colimit(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let d = as_diagram(obj)?;
    let c = finite_colimit(&d)?;
    r.single("cocone", verify_cocone(&d, &c)?, || "a leg fails".into());
    coalgebra_axioms(&mut r.report, &c.object);
    r.result("dim", c.object.dim());
    r.emit(format!("{name}-colimit"), &Object::Coalgebra(c.object));
    Ok(())
}

fn class(r: &Run, field: Field) -> Result<BoundedClass> {
    BoundedClass::with_budget(field, r.c.max_dim.unwrap_or(1), r.c.budget.unwrap_or(DEFAULT_BUDGET))
}

fn cmd_cofree(r: &mut Run, vdim: usize) -> Result<()> {
    let field = r.require_field()?;
    let cls = class(r, field)?;
    let fo = cofree_approx(vdim, &cls, &EngineBudget::default())?;
    r.certify(finality_summary(&fo.certificate));
    coalgebra_axioms(&mut r.report, &fo.e0);
    r.result("dim", fo.e0.dim());
    r.result("generators", cls.generators.len());
    r.result("objects", fo.objects.len());
    r.result("arrows", fo.arrow_count);
    r.result("p0", mat_rows(&fo.p0));
    let mut e0 = fo.e0;
    e0.name = format!("cofree({vdim})");
    r.emit(format!("cofree-{vdim}"), &Object::Coalgebra(e0));
    Ok(())
}

fn cmd_bounded_limit(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let d = as_diagram(obj)?;
    let cls = class(r, d.field())?;
    let lim = bounded_limit(&d, &cls, &EngineBudget::default())?;
    r.certify(finality_summary(lim.certificate()));
    for (i, ((_, c), leg)) in d.objects().iter().zip(&lim.cone.legs).enumerate() {
        let ok = is_coalgebra_morphism(leg, &lim.cone.object, c)?;
        r.single(&format!("projection-{i}"), ok, || "projection is not a morphism".into());
    }
    r.result("dim", lim.cone.object.dim());
    r.result("objects", lim.final_object.objects.len());
    r.emit(format!("{name}-limit"), &Object::Coalgebra(lim.cone.object));
    Ok(())
}

fn cmd_enumerate(r: &mut Run, dim: Option<usize>) -> Result<()> {
    let field = r.require_field()?;
    let budget = r.c.budget.unwrap_or(DEFAULT_BUDGET);
    let dims: Vec<usize> = match dim {
        Some(d) => vec![d],
        None => (0..=r.c.max_dim.unwrap_or(2)).collect(),
    };
    let mut all = Vec::new();
    let mut counts = serde_json::Map::new();
    for d in dims {
        let found = enumerate_coalgebras(field, d, budget)?;
        counts.insert(d.to_string(), json!(found.len()));
        all.extend(found);
    }
    let bad: Vec<String> = all.iter().filter(|c| !check_coalgebra(c).is_empty()).map(|c| c.name.clone()).collect();
    r.certify(CertificateSummary::from_violations("coalgebra-axioms", all.len(), &bad));
    r.result("counts", Value::Object(counts));
    r.result("total", all.len());
    let objects = all.into_iter().map(|c| (c.name.clone(), c)).collect();
    let diagram = Diagram::new(field, objects, Vec::new())?;
    r.emit(format!("coalgebras-{}", field), &Object::Diagram(diagram));
    Ok(())
}

fn cmd_coring_check(r: &mut Run) -> Result<()> {
    let c = as_coring(r.input()?.1)?;
    let v = check_coring(&c);
    r.certify(CertificateSummary::from_violations("coring-axioms", 7 * c.dim(), &v));
    r.result("dim", c.dim());
    Ok(())
}

fn cmd_invariant_closure(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let c = as_coring(obj)?;
    let s = r.seed(c.carrier().field(), c.dim())?;
    let m = c.carrier().sub_bimodule_generated(&s);
    let d = invariant_closure(&c, &m)?;
    r.single("invariant", is_invariant(&c, &d), || "closure is not invariant".into());
    r.single("sub-bimodule", c.carrier().is_sub_bimodule(&d), || "closure is not a sub-bimodule".into());
    r.single("contains-seed", d.contains(&s)?, || "seed not contained".into());
    r.result("dim", d.dim());
    r.emit(format!("{name}-invariant"), &Object::Subspace(d));
    Ok(())
}

fn cmd_cohn_saturate(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let m = as_bimodule(obj)?;
    let s = r.seed(m.field(), m.dim())?;
    let n = m.sub_bimodule_generated(&s);
    let sat = cohn_saturate(&m, &n, &r.bound())?;
    r.single("summand-left", sat.pure_left, || "fixed point is not a left summand; raise --bound".into());
    r.single("summand-right", sat.pure_right, || "fixed point is not a right summand; raise --bound".into());
    r.result("dim", sat.result.dim());
    r.result("sweeps", sat.sweeps);
    r.result("witness_systems", sat.witnesses);
    r.emit(format!("{name}-saturated"), &Object::Subspace(sat.result));
    Ok(())
}

fn cmd_subcoring_closure(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let c = as_coring(obj)?;
    let s = r.seed(c.carrier().field(), c.dim())?;
    let rep = subcoring_closure(&c, &s, &r.bound())?;
    r.single("contains-seed", rep.contains_seed, || "seed not contained".into());
    r.single("invariant", rep.invariant, || "closure is not invariant".into());
    r.single("pure-left", rep.pure_left, || "closure is not a left summand".into());
    r.single("pure-right", rep.pure_right, || "closure is not a right summand".into());
    r.single("tensor-square-injective", rep.tensor_square_injective, || {
        "D ⊗_A D → C ⊗_A C is not injective".into()
    });
    match &rep.coring_violations {
        Some(v) => r.certify(CertificateSummary::from_violations("subcoring-axioms", 7 * rep.closure.dim(), v)),
        None => r.single("subcoring-axioms", false, || "not checked: tensor square does not embed".into()),
    }
    r.result("dim", rep.closure.dim());
    r.result("rounds", rep.rounds);
    r.emit(format!("{name}-subcoring"), &Object::Subspace(rep.closure));
    Ok(())
}

fn cmd_purity(r: &mut Run) -> Result<()> {
    let m = as_bimodule(r.input()?.1)?;
    let n = r.seed(m.field(), m.dim())?;
    let bound = r.bound();
    let mut pure_all = true;
    for side in [Side::Left, Side::Right] {
        let key = side.name();
        if !m.is_closed(&n, side) {
            return Err(Error::NotASubmodule(key));
        }
        let pure = is_pure_submodule(&m, &n, side)?;
        let witness = cohn_witness(&m, &n, side, &bound)?;
        pure_all &= pure;
        r.result(&format!("pure_{key}"), pure);
        if let Some(w) = &witness {
            r.result(&format!("witness_{key}"), w.to_string());
        }
        // summands admit no witness; non-summands must show one within the bound
        r.single(&format!("consistent-{key}"), pure == witness.is_none(), || {
            if pure {
                "witness found for a summand".into()
            } else {
                "no witness within the bound; raise --bound".into()
            }
        });
    }
    r.result("pure", pure_all);
    Ok(())
}

/// `Σ S(h₁)h₂` and `Σ h₁S(h₂)` against `ε(h)1` on every basis element.
fn convolution_defects(b: &Bialgebra, s: &Mat) -> Vec<usize> {
    let a = b.algebra();
    let c = b.coalgebra();
    let n = b.dim();
    let f = b.field();
    (0..n)
        .filter(|&i| {
            let mut left = vec![f.zero(); n];
            let mut right = vec![f.zero(); n];
            for j in 0..n {
                for k in 0..n {
                    let d = c.structure_constant(i, j, k);
                    if d.is_zero() {
                        continue;
                    }
                    let ej = crate::subspace::unit_vector(f, n, j);
                    let ek = crate::subspace::unit_vector(f, n, k);
                    for (x, y) in left.iter_mut().zip(a.product(&s.column(j), &ek)) {
                        x.add_mul(d, &y);
                    }
                    for (x, y) in right.iter_mut().zip(a.product(&ej, &s.column(k))) {
                        x.add_mul(d, &y);
                    }
                }
            }
            let target: Vec<Scalar> = a.unit().iter().map(|u| u * &c.counit()[i]).collect();
            left != target || right != target
        })
        .collect()
}

fn cmd_antipode(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let h = as_bialgebra(obj)?;
    let b = h.bialgebra()?;
    match antipode_solve(&b) {
        Ok(s) => {
            let defects = convolution_defects(&b, &s);
            r.certify(CertificateSummary::from_violations("convolution-inverse", b.dim(), &defects));
            r.result("hopf", true);
            r.result("antipode", mat_rows(&s));
            r.result("involutive", &s * &s == Mat::identity(b.field(), b.dim()));
            r.emit(format!("{name}-hopf"), &Object::Hopf { h, antipode: s });
        }
        Err(Error::NotHopf) => r.result("hopf", false),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn comodule_coalgebra(obj: Object) -> Result<ComoduleCoalgebra> {
    match obj {
        Object::ComoduleCoalgebra { h, coalgebra, rho } => ComoduleCoalgebra::new(h.bialgebra()?, coalgebra, rho),
        o => Err(wrong("comodule-coalgebra", &o)),
    }
}

fn cmd_smash(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let cc = comodule_coalgebra(obj)?;
    match smash_coproduct(cc.bialgebra(), &cc) {
        Ok(s) => {
            coalgebra_axioms(&mut r.report, &s);
            r.result("dim", s.dim());
            r.emit(format!("{name}-smash"), &Object::Coalgebra(s));
        }
        Err(e @ Error::ConventionFailure(_)) => r.single("coalgebra-axioms", false, || e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn cmd_module_closure(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let mc = match obj {
        Object::ModuleCoalgebra { h, coalgebra, action } => ModuleCoalgebra::new(h.bialgebra()?, coalgebra, action)?,
        o => return Err(wrong("module-coalgebra", &o)),
    };
    let s = r.seed(mc.coalgebra().field(), mc.coalgebra().dim())?;
    let cl = module_subcoalgebra_closure(&mc, &s)?;
    r.single("submodule", cl.submodule, || "closure is not a submodule".into());
    r.single("delta-stable", cl.delta_stable, || "closure is not Δ-stable".into());
    r.single("contains-seed", cl.contains_seed, || "seed not contained".into());
    r.result("generated_dim", cl.generated.dim());
    r.result("dim", cl.closure.dim());
    r.emit(format!("{name}-closure"), &Object::Subspace(cl.closure));
    Ok(())
}

fn cmd_comodule_closure(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let cc = comodule_coalgebra(obj)?;
    let s = r.seed(cc.coalgebra().field(), cc.coalgebra().dim())?;
    let cl = comodule_subcoalgebra_closure(&cc, &s)?;
    r.single("rho-stable", cl.rho_stable, || "closure is not a subcomodule".into());
    r.single("delta-stable", cl.delta_stable, || "closure is not Δ-stable".into());
    r.single("contains-seed", cl.contains_seed, || "seed not contained".into());
    let failed: Vec<String> = cl
        .sweedler
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("element {} functional {}: {c:?}", c.element, c.functional))
        .collect();
    r.certify(CertificateSummary::from_violations("sweedler-expansion", cl.sweedler.len(), &failed));
    r.result("generated_dim", cl.generated.dim());
    r.result("coefficients_dim", cl.coefficients.dim());
    r.result("dim", cl.closure.dim());
    r.emit(format!("{name}-closure"), &Object::Subspace(cl.closure));
    Ok(())
}

fn cmd_coefficients(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let (m, _) = as_comodule(obj)?;
    let d = coefficient_coalgebra(&m)?;
    let h = m.coalgebra();
    r.single("delta-stable", delta_stable(h, &d), || "not a subcoalgebra".into());
    let full = Subspace::full(m.field(), m.dim());
    let inside = (0..m.dim()).all(|j| full.tensor_contains(&d, &m.rho().column(j)));
    r.single("coaction-inside", inside, || "ρ(M) ⊄ M ⊗ D".into());
    r.result("dim", d.dim());
    r.emit(format!("{name}-coefficients"), &Object::Subspace(d));
    Ok(())
}

fn cmd_local_rep(r: &mut Run, functional: &str) -> Result<()> {
    let a = as_algebra(r.input()?.1)?;
    let f = parse_vector(a.field(), functional, a.dim(), "--functional")?;
    let v = if r.has_more() || r.c.vectors.is_some() {
        r.seed(a.field(), a.dim())?
    } else {
        Subspace::full(a.field(), a.dim())
    };
    let pairs = local_representativity(&a, &f, &v)?;
    r.single("factorization", verify_local_representativity(&a, &f, &v, &pairs), || {
        "f(ab) ≠ Σ g_i(a)h_i(b) on V".into()
    });
    r.result("rank", pairs.len());
    r.result(
        "pairs",
        Value::Array(pairs.iter().map(|(g, h)| json!([vec_str(g), vec_str(h)])).collect()),
    );
    Ok(())
}

fn cmd_dualize(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let (m, algebra) = as_comodule(obj)?;
    let h = hopf_of(&m, algebra)?;
    let evco = ev_co_maps(&h, &m)?;
    let d = &evco.dual;
    let v = check_comodule(d.coalgebra(), d.dim(), d.rho());
    r.certify(CertificateSummary::from_violations("comodule-axioms", 2 * d.dim(), &v));
    r.single("ev-colinear", evco.ev_colinear, || "ev is not colinear".into());
    r.single("co-colinear", evco.co_colinear, || "coev is not colinear".into());
    r.single("zig-zag", evco.zig_zag, || "zig-zag identities fail".into());
    r.result("dim", d.dim());
    let out = Object::Comodule {
        coalgebra: d.coalgebra().clone(),
        algebra: Some(h.bialgebra().algebra().clone()),
        dim: d.dim(),
        rho: d.rho().clone(),
    };
    r.emit(format!("{name}-dual"), &out);
    Ok(())
}

fn cmd_endo(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let (m, algebra) = as_comodule(obj)?;
    let h = hopf_of(&m, algebra)?;
    let e = endomorphism_algebra(&h, &m)?;
    r.single("end-axioms", e.axioms_hold, || "End(V) fails the algebra axioms".into());
    r.single("end-mult-colinear", e.mult_colinear, || "multiplication is not colinear".into());
    r.single("end-unit-colinear", e.unit_colinear, || "unit is not colinear".into());
    let c = matrix_coalgebra(&h, &m)?;
    r.single("matrix-axioms", c.axioms_hold, || "V ⊗ V* fails the coalgebra axioms".into());
    r.single("matrix-delta-colinear", c.delta_colinear, || "Δ is not colinear".into());
    r.single("matrix-counit-colinear", c.counit_colinear, || "ε is not colinear".into());
    r.result("dim", e.algebra.dim());
    if e.passed() {
        let out = Object::ComoduleAlgebra {
            h: BialgebraParts::from_bialgebra(h.bialgebra()),
            algebra: e.algebra.clone(),
            rho: e.comodule.rho().clone(),
        };
        r.emit(format!("{name}-end"), &out);
    }
    Ok(())
}

fn cmd_regular_embedding(r: &mut Run) -> Result<()> {
    let (name, obj) = r.input()?;
    let (h, a) = match obj {
        Object::ComoduleAlgebra { h, algebra, rho } => {
            let b = h.bialgebra()?;
            let a = ComoduleAlgebra::new(&b, algebra, rho)?;
            (HopfAlgebra::new(b)?, a)
        }
        o => return Err(wrong("comodule-algebra", &o)),
    };
    let e = regular_embedding(&h, &a)?;
    r.single("algebra-morphism", e.algebra_morphism, || "φ is not multiplicative".into());
    r.single("colinear", e.colinear, || "φ is not colinear".into());
    r.single("injective", e.rank == a.algebra().dim(), || format!("rank {} < {}", e.rank, a.algebra().dim()));
    r.single("target", e.target.passed(), || "End(A) fails its checks".into());
    r.result("rank", e.rank);
    r.result("phi", mat_rows(&e.phi));
    let out = Object::ComoduleAlgebra {
        h: BialgebraParts::from_bialgebra(h.bialgebra()),
        algebra: e.target.algebra.clone(),
        rho: e.target.comodule.rho().clone(),
    };
    r.emit(format!("{name}-end"), &out);
    Ok(())
}

fn builtin(which: &str, field: Field) -> Result<Object> {
    let f2 = || -> Result<Field> {
        if field.characteristic() == 2 {
            Ok(field)
        } else {
            Err(Error::InvalidStructure(format!("{which} needs characteristic 2")))
        }
    };
    let parts = |b: Bialgebra| BialgebraParts::from_bialgebra(&b);
    Ok(match which {
        "dual-numbers" => Object::Algebra(truncated_polynomial(2, field)),
        "regular-dual-numbers" => Object::Bimodule(Bimodule::regular(&truncated_polynomial(2, field))),
        "span-x" => Object::Subspace(Subspace::coordinate(field, 2, &[1])),
        "sweedler-dual-numbers" => Object::Coring(Coring::sweedler(&truncated_polynomial(2, field))),
        "kc2" => Object::Bialgebra(parts(Bialgebra::cyclic_group(2, field))),
        "kc3" => Object::Bialgebra(parts(Bialgebra::cyclic_group(3, field))),
        "idempotent-monoid" => Object::Bialgebra(parts(Bialgebra::monoid(field, &[vec![0, 1], vec![1, 1]], "{1,e}")?)),
        "grouplikes-2" => Object::Coalgebra(grouplike_coalgebra(field, 2)),
        "graded-dual-numbers" => {
            let f = f2()?;
            let h = Bialgebra::cyclic_group(2, f);
            let mut c = dual_coalgebra(&truncated_polynomial(2, f));
            c.name = "graded dual numbers".into();
            let rho = Mat::from_i64_rows(f, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]);
            let cc = ComoduleCoalgebra::new(h.clone(), c, rho)?;
            Object::ComoduleCoalgebra {
                h: parts(h),
                coalgebra: cc.coalgebra().clone(),
                rho: cc.rho().clone(),
            }
        }
        "left-regular-kc2" => {
            let mc = ModuleCoalgebra::left_regular(Bialgebra::cyclic_group(2, field))?;
            Object::ModuleCoalgebra {
                h: parts(mc.bialgebra().clone()),
                coalgebra: mc.coalgebra().clone(),
                action: mc.action().to_vec(),
            }
        }
        "regular-comodule-kc2" => {
            let h = Bialgebra::cyclic_group(2, field);
            Object::Comodule {
                coalgebra: h.coalgebra().clone(),
                algebra: Some(h.algebra().clone()),
                dim: 2,
                rho: h.coalgebra().delta().clone(),
            }
        }
        "regular-comodule-algebra-kc2" => {
            let h = Bialgebra::cyclic_group(2, field);
            Object::ComoduleAlgebra {
                algebra: cyclic_group_algebra(2, field),
                rho: h.coalgebra().delta().clone(),
                h: parts(h),
            }
        }
        "pick-g0" | "pick-g1" => {
            let col: &[i64] = if which == "pick-g0" { &[1, 0] } else { &[0, 1] };
            let m = Mat::from_i64_rows(field, &[&col[..1], &col[1..]]);
            Object::Morphism(CoalgebraMorphism::new(grouplike_coalgebra(field, 1), grouplike_coalgebra(field, 2), m)?)
        }
        "grouplike-parallel-pair" => {
            // two distinct grouplikes give two morphisms from the ground coalgebra
            let g = grouplike_coalgebra(field, 2);
            let k = grouplike_coalgebra(field, 1);
            let d = Diagram::new(
                field,
                vec![("K".into(), k.clone()), ("G".into(), g)],
                vec![
                    crate::limits::DiagramArrow {
                        label: "f".into(),
                        source: "K".into(),
                        target: "G".into(),
                        matrix: Mat::from_i64_rows(field, &[&[1], &[0]]),
                    },
                    crate::limits::DiagramArrow {
                        label: "g".into(),
                        source: "K".into(),
                        target: "G".into(),
                        matrix: Mat::from_i64_rows(field, &[&[0], &[1]]),
                    },
                ],
            )?;
            Object::Diagram(d)
        }
        other => {
            let names: Vec<&str> = BUILTINS.iter().map(|(n, _)| *n).collect();
            return Err(Error::DocumentField {
                path: "builtin".into(),
                message: format!("unknown builtin {other:?}; one of {}", names.join(", ")),
            });
        }
    })
}

fn cmd_builtin(r: &mut Run, which: Option<&str>, list: bool) -> Result<()> {
    if list || which.is_none() {
        for (n, d) in BUILTINS {
            r.result(n, *d);
        }
        return Ok(());
    }
    let which = which.expect("checked");
    let field = r.field_flag()?.unwrap_or(Field::Prime(2));
    let obj = builtin(which, field)?;
    r.result("kind", obj.kind());
    r.emit(which.to_string(), &obj);
    Ok(())
}

fn store_op(common: Common, op: &StoreOp) -> Result<ExitCode> {
    let store = match &common.store {
        Some(p) => Store::open(p)?,
        None => Store::from_env()?.ok_or_else(|| Error::DocumentField {
            path: "--store".into(),
            message: format!("no store given and {STORE_ENV} is unset"),
        })?,
    };
    match op {
        StoreOp::Put { force } => {
            let mut report = RunReport::new("store put");
            for key in &common.inputs {
                let doc = Document::parse(&fs::read_to_string(key)?)?;
                // validate before storing; the store holds canonical text
                let canonical = Document::from_object(doc.name.clone(), &doc.to_object()?);
                let e = store.put(&canonical, *force)?;
                report.outputs.push(DocRef {
                    name: e.name,
                    kind: canonical.kind.clone(),
                    digest: e.digest,
                });
            }
            print!("{}", report.to_text());
        }
        StoreOp::Get { key } => {
            let text = store.get_text(key)?;
            match &common.out {
                Some(p) => fs::write(p, text)?,
                None => print!("{text}"),
            }
        }
        StoreOp::List => {
            for e in store.list()? {
                println!("{} {}", e.name, e.digest);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check => "check",
        Command::Dual => "dual",
        Command::Comatrix { .. } => "comatrix",
        Command::GenerateClosure => "generate-closure",
        Command::LargestSub => "largest-sub",
        Command::Equalizer => "equalizer",
        Command::Coequalizer => "coequalizer",
        Command::Coproduct => "coproduct",
        Command::Colimit => "colimit",
        Command::CofreeApprox { .. } => "cofree-approx",
        Command::BoundedLimit => "bounded-limit",
        Command::Enumerate { .. } => "enumerate",
        Command::CoringCheck => "coring-check",
        Command::InvariantClosure => "invariant-closure",
        Command::CohnSaturate => "cohn-saturate",
        Command::SubcoringClosure => "subcoring-closure",
        Command::Purity => "purity",
        Command::Antipode => "antipode",
        Command::Smash => "smash",
        Command::ModuleClosure => "module-closure",
        Command::ComoduleClosure => "comodule-closure",
        Command::Coefficients => "coefficients",
        Command::LocalRep { .. } => "local-rep",
        Command::DualizeComodule => "dualize-comodule",
        Command::EndoAlgebra => "endo-algebra",
        Command::RegularEmbedding => "regular-embedding",
        Command::Builtin { .. } => "builtin",
        Command::Store { .. } => "store",
    }
}

fn execute(cli: Cli) -> Result<ExitCode> {
    let started = Instant::now();
    if let Command::Store { op } = &cli.command {
        return store_op(cli.common, op);
    }
    let mut r = Run::new(cli.common, command_name(&cli.command))?;
    match &cli.command {
        Command::Check => cmd_check(&mut r)?,
        Command::Dual => cmd_dual(&mut r)?,
        Command::Comatrix { n } => cmd_comatrix(&mut r, *n)?,
        Command::GenerateClosure => cmd_generate_closure(&mut r)?,
        Command::LargestSub => cmd_largest_sub(&mut r)?,
        Command::Equalizer => cmd_equalizer(&mut r)?,
        Command::Coequalizer => cmd_coequalizer(&mut r)?,
        Command::Coproduct => cmd_coproduct(&mut r)?,
        Command::Colimit => cmd_colimit(&mut r)?,
        Command::CofreeApprox { vdim } => cmd_cofree(&mut r, *vdim)?,
        Command::BoundedLimit => cmd_bounded_limit(&mut r)?,
        Command::Enumerate { dim } => cmd_enumerate(&mut r, *dim)?,
        Command::CoringCheck => cmd_coring_check(&mut r)?,
        Command::InvariantClosure => cmd_invariant_closure(&mut r)?,
        Command::CohnSaturate => cmd_cohn_saturate(&mut r)?,
        Command::SubcoringClosure => cmd_subcoring_closure(&mut r)?,
        Command::Purity => cmd_purity(&mut r)?,
        Command::Antipode => cmd_antipode(&mut r)?,
        Command::Smash => cmd_smash(&mut r)?,
        Command::ModuleClosure => cmd_module_closure(&mut r)?,
        Command::ComoduleClosure => cmd_comodule_closure(&mut r)?,
        Command::Coefficients => cmd_coefficients(&mut r)?,
        Command::LocalRep { functional } => cmd_local_rep(&mut r, functional)?,
        Command::DualizeComodule => cmd_dualize(&mut r)?,
        Command::EndoAlgebra => cmd_endo(&mut r)?,
        Command::RegularEmbedding => cmd_regular_embedding(&mut r)?,
        Command::Builtin { which, list } => cmd_builtin(&mut r, which.as_deref(), *list)?,
        Command::Store { .. } => unreachable!("handled above"),
    }
    r.finish(started)
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
