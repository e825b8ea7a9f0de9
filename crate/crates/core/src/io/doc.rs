//! Object documents: JSON text with sorted sparse entries and lowest-terms scalars.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::Algebra;
use crate::coalgebra::{Coalgebra, CoalgebraMorphism};
use crate::coring::{Bimodule, Coring};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::hopf::{Bialgebra, HopfAlgebra};
use crate::limits::{ConstraintProblem, Diagram, DiagramArrow};
use crate::matrix::Mat;
use crate::subspace::Subspace;

pub const SCHEMA_VERSION: u32 = 1;

pub const KINDS: &[&str] = &[
    "algebra",
    "coalgebra",
    "bimodule",
    "coring",
    "bialgebra",
    "hopf",
    "module-coalgebra",
    "comodule-coalgebra",
    "comodule",
    "comodule-algebra",
    "morphism",
    "diagram",
    "constraint-problem",
    "subspace",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: u32,
    pub kind: String,
    pub name: String,
    pub field: String,
    pub payload: Value,
}

/// Algebra and coalgebra of a bialgebra, not yet checked for compatibility.
#[derive(Clone, Debug, PartialEq)]
pub struct BialgebraParts {
    pub name: String,
    pub algebra: Algebra,
    pub coalgebra: Coalgebra,
}

impl BialgebraParts {
    pub fn from_bialgebra(b: &Bialgebra) -> BialgebraParts {
        BialgebraParts {
            name: b.name.clone(),
            algebra: b.algebra().clone(),
            coalgebra: b.coalgebra().clone(),
        }
    }

    pub fn bialgebra(&self) -> Result<Bialgebra> {
        Bialgebra::new(self.algebra.clone(), self.coalgebra.clone(), self.name.clone())
    }

    pub fn hopf(&self) -> Result<HopfAlgebra> {
        HopfAlgebra::new(self.bialgebra()?)
    }
}

#[derive(Clone, Debug)]
pub enum Object {
    Algebra(Algebra),
    Coalgebra(Coalgebra),
    Bimodule(Bimodule),
    Coring(Coring),
    Bialgebra(BialgebraParts),
    Hopf { h: BialgebraParts, antipode: Mat },
    ModuleCoalgebra { h: BialgebraParts, coalgebra: Coalgebra, action: Vec<Mat> },
    ComoduleCoalgebra { h: BialgebraParts, coalgebra: Coalgebra, rho: Mat },
    /// A right comodule; `algebra` completes the coalgebra to a bialgebra when present.
    Comodule { coalgebra: Coalgebra, algebra: Option<Algebra>, dim: usize, rho: Mat },
    ComoduleAlgebra { h: BialgebraParts, algebra: Algebra, rho: Mat },
    Morphism(CoalgebraMorphism),
    Diagram(Diagram),
    ConstraintProblem(ConstraintProblem),
    Subspace(Subspace),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "algebra",
            Object::Coalgebra(_) => "coalgebra",
            Object::Bimodule(_) => "bimodule",
            Object::Coring(_) => "coring",
            Object::Bialgebra(_) => "bialgebra",
            Object::Hopf { .. } => "hopf",
            Object::ModuleCoalgebra { .. } => "module-coalgebra",
            Object::ComoduleCoalgebra { .. } => "comodule-coalgebra",
            Object::Comodule { .. } => "comodule",
            Object::ComoduleAlgebra { .. } => "comodule-algebra",
            Object::Morphism(_) => "morphism",
            Object::Diagram(_) => "diagram",
            Object::ConstraintProblem(_) => "constraint-problem",
            Object::Subspace(_) => "subspace",
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Object::Algebra(a) => a.field(),
            Object::Coalgebra(c) => c.field(),
            Object::Bimodule(b) => b.field(),
            Object::Coring(c) => c.carrier().field(),
            Object::Bialgebra(h) | Object::Hopf { h, .. } => h.algebra.field(),
            Object::ModuleCoalgebra { coalgebra, .. }
            | Object::ComoduleCoalgebra { coalgebra, .. }
            | Object::Comodule { coalgebra, .. } => coalgebra.field(),
            Object::ComoduleAlgebra { algebra, .. } => algebra.field(),
            Object::Morphism(m) => m.source().field(),
            Object::Diagram(d) => d.field(),
            Object::ConstraintProblem(p) => p.field,
            Object::Subspace(s) => s.field(),
        }
    }
}

fn field_err(path: &str, message: impl Into<String>) -> Error {
    Error::DocumentField {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Attaches the document path to structural errors raised by constructors.
fn at<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::DimensionMismatch { .. } | Error::FieldMismatch(..) | Error::InvalidScalar { .. } => {
            field_err(path, e.to_string())
        }
        other => other,
    })
}

struct Reader<'a> {
    v: &'a Value,
    path: String,
    field: Field,
}

impl<'a> Reader<'a> {
    fn key(&self, k: &str) -> Result<Reader<'a>> {
        let obj = self
            .v
            .as_object()
            .ok_or_else(|| field_err(&self.path, "expected an object"))?;
        let v = obj
            .get(k)
            .ok_or_else(|| field_err(&format!("{}.{k}", self.path), "missing"))?;
        Ok(Reader {
            v,
            path: format!("{}.{k}", self.path),
            field: self.field,
        })
    }

    fn opt_key(&self, k: &str) -> Result<Option<Reader<'a>>> {
        match self.v.as_object().and_then(|o| o.get(k)) {
            None | Some(Value::Null) => Ok(None),
            Some(_) => self.key(k).map(Some),
        }
    }

    fn only_keys(&self, keys: &[&str]) -> Result<()> {
        let obj = self
            .v
            .as_object()
            .ok_or_else(|| field_err(&self.path, "expected an object"))?;
        for k in obj.keys() {
            if !keys.contains(&k.as_str()) {
                return Err(field_err(&format!("{}.{k}", self.path), "unknown field"));
            }
        }
        Ok(())
    }

    fn usize(&self) -> Result<usize> {
        self.v
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| field_err(&self.path, "expected a non-negative integer"))
    }

    fn str(&self) -> Result<&'a str> {
        self.v.as_str().ok_or_else(|| field_err(&self.path, "expected a string"))
    }

    fn array(&self) -> Result<Vec<Reader<'a>>> {
        let arr = self.v.as_array().ok_or_else(|| field_err(&self.path, "expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, v)| Reader {
                v,
                path: format!("{}[{i}]", self.path),
                field: self.field,
            })
            .collect())
    }

    fn scalar(&self) -> Result<Scalar> {
        let s = match self.v {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            _ => return Err(field_err(&self.path, "expected a scalar string")),
        };
        self.field
            .parse_scalar(&s)
            .map_err(|e| field_err(&self.path, e.to_string()))
    }

    /// Sparse entries `[[i, …, "s"], …]` with `arity` indices each bounded by `bounds`.
    fn sparse(&self, bounds: &[usize]) -> Result<Vec<(Vec<usize>, Scalar)>> {
        let mut out: Vec<(Vec<usize>, Scalar)> = Vec::new();
        for e in self.array()? {
            let parts = e.array()?;
            if parts.len() != bounds.len() + 1 {
                return Err(field_err(&e.path, format!("expected {} indices and a scalar", bounds.len())));
            }
            let mut idx = Vec::with_capacity(bounds.len());
            for (p, &b) in parts.iter().zip(bounds) {
                let i = p.usize()?;
                if i >= b {
                    return Err(field_err(&p.path, format!("index {i} out of range 0..{b}")));
                }
                idx.push(i);
            }
            let s = parts[bounds.len()].scalar()?;
            if out.iter().any(|(j, _)| *j == idx) {
                return Err(field_err(&e.path, "duplicate entry"));
            }
            out.push((idx, s));
        }
        Ok(out)
    }

    fn matrix(&self) -> Result<Mat> {
        self.only_keys(&["rows", "cols", "entries"])?;
        let rows = self.key("rows")?.usize()?;
        let cols = self.key("cols")?.usize()?;
        let mut m = Mat::zeros(self.field, rows, cols);
        for (idx, s) in self.key("entries")?.sparse(&[rows, cols])? {
            m.set(idx[0], idx[1], s);
        }
        Ok(m)
    }

    fn matrix_shaped(&self, rows: usize, cols: usize) -> Result<Mat> {
        let m = self.matrix()?;
        if m.shape() != (rows, cols) {
            return Err(field_err(
                &self.path,
                format!("expected a {rows}×{cols} matrix, found {}×{}", m.rows(), m.cols()),
            ));
        }
        Ok(m)
    }

    fn matrices(&self, count: usize, rows: usize, cols: usize) -> Result<Vec<Mat>> {
        let items = self.array()?;
        if items.len() != count {
            return Err(field_err(&self.path, format!("expected {count} matrices, found {}", items.len())));
        }
        items.iter().map(|r| r.matrix_shaped(rows, cols)).collect()
    }

    fn vector(&self, len: usize) -> Result<Vec<Scalar>> {
        let mut v = vec![self.field.zero(); len];
        for (idx, s) in self.sparse(&[len])? {
            v[idx[0]] = s;
        }
        Ok(v)
    }

    fn name_or(&self, default: &str) -> Result<String> {
        Ok(match self.opt_key("name")? {
            Some(r) => r.str()?.to_string(),
            None => default.to_string(),
        })
    }

    fn algebra(&self, default_name: &str) -> Result<Algebra> {
        self.only_keys(&["name", "dim", "mult", "unit"])?;
        let dim = self.key("dim")?.usize()?;
        let mult = self.key("mult")?.matrix_shaped(dim, dim * dim)?;
        let unit = self.key("unit")?.vector(dim)?;
        at(&self.path, Algebra::new(self.field, dim, mult, unit, self.name_or(default_name)?))
    }

    fn coalgebra(&self, default_name: &str) -> Result<Coalgebra> {
        self.only_keys(&["name", "dim", "delta", "counit"])?;
        let dim = self.key("dim")?.usize()?;
        let delta = self.key("delta")?.matrix_shaped(dim * dim, dim)?;
        let counit = self.key("counit")?.vector(dim)?;
        at(&self.path, Coalgebra::new(self.field, dim, delta, counit, self.name_or(default_name)?))
    }

    fn bialgebra(&self, default_name: &str) -> Result<BialgebraParts> {
        self.only_keys(&["name", "algebra", "coalgebra"])?;
        let name = self.name_or(default_name)?;
        let algebra = self.key("algebra")?.algebra(&name)?;
        let coalgebra = self.key("coalgebra")?.coalgebra(&name)?;
        if algebra.dim() != coalgebra.dim() {
            return Err(field_err(&self.path, "algebra and coalgebra dimensions differ"));
        }
        Ok(BialgebraParts {
            name,
            algebra,
            coalgebra,
        })
    }

    fn bimodule(&self) -> Result<Bimodule> {
        self.only_keys(&["base", "dim", "left", "right"])?;
        let base = self.key("base")?.algebra("A")?;
        let dim = self.key("dim")?.usize()?;
        let left = self.key("left")?.matrices(base.dim(), dim, dim)?;
        let right = self.key("right")?.matrices(base.dim(), dim, dim)?;
        Bimodule::new(base, dim, left, right)
    }

    fn subspace(&self) -> Result<Subspace> {
        self.only_keys(&["ambient", "basis"])?;
        let ambient = self.key("ambient")?.usize()?;
        let basis = self.key("basis")?.matrix()?;
        if basis.cols() != ambient {
            return Err(field_err(&format!("{}.basis", self.path), "basis columns differ from ambient"));
        }
        Ok(Subspace::from_vectors(
            self.field,
            ambient,
            (0..basis.rows()).map(|r| basis.row(r).to_vec()),
        ))
    }
}

fn sparse_vec(v: &[Scalar]) -> Value {
    Value::Array(
        v.iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, s)| json!([i, s.to_string()]))
            .collect(),
    )
}

fn mat_value(m: &Mat) -> Value {
    let mut entries = Vec::new();
    for r in 0..m.rows() {
        for (c, s) in m.row(r).iter().enumerate() {
            if !s.is_zero() {
                entries.push(json!([r, c, s.to_string()]));
            }
        }
    }
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

fn algebra_value(a: &Algebra) -> Value {
    json!({"name": a.name, "dim": a.dim(), "mult": mat_value(a.mult()), "unit": sparse_vec(a.unit())})
}

fn coalgebra_value(c: &Coalgebra) -> Value {
    json!({"name": c.name, "dim": c.dim(), "delta": mat_value(c.delta()), "counit": sparse_vec(c.counit())})
}

fn bialgebra_value(h: &BialgebraParts) -> Value {
    json!({"name": h.name, "algebra": algebra_value(&h.algebra), "coalgebra": coalgebra_value(&h.coalgebra)})
}

fn bimodule_value(b: &Bimodule) -> Value {
    json!({
        "base": algebra_value(b.base()),
        "dim": b.dim(),
        "left": b.left().iter().map(mat_value).collect::<Vec<_>>(),
        "right": b.right().iter().map(mat_value).collect::<Vec<_>>(),
    })
}

fn subspace_value(s: &Subspace) -> Value {
    json!({"ambient": s.ambient_dim(), "basis": mat_value(&s.basis())})
}

fn payload(obj: &Object) -> Value {
    match obj {
        Object::Algebra(a) => algebra_value(a),
        Object::Coalgebra(c) => coalgebra_value(c),
        Object::Bimodule(b) => bimodule_value(b),
        Object::Coring(c) => {
            // plain representatives, so the document does not depend on the quotient basis
            let sq = c.square();
            let plain: Vec<Vec<Scalar>> = (0..c.dim()).map(|i| sq.lift(&c.delta().column(i))).collect();
            let n = c.dim();
            let delta = Mat::from_columns(c.carrier().field(), n * n, &plain);
            json!({"carrier": bimodule_value(c.carrier()), "delta": mat_value(&delta), "counit": mat_value(c.counit())})
        }
        Object::Bialgebra(h) => bialgebra_value(h),
        Object::Hopf { h, antipode } => json!({"bialgebra": bialgebra_value(h), "antipode": mat_value(antipode)}),
        Object::ModuleCoalgebra { h, coalgebra, action } => json!({
            "bialgebra": bialgebra_value(h),
            "coalgebra": coalgebra_value(coalgebra),
            "action": action.iter().map(mat_value).collect::<Vec<_>>(),
        }),
        Object::ComoduleCoalgebra { h, coalgebra, rho } => json!({
            "bialgebra": bialgebra_value(h),
            "coalgebra": coalgebra_value(coalgebra),
            "rho": mat_value(rho),
        }),
        Object::Comodule {
            coalgebra,
            algebra,
            dim,
            rho,
        } => {
            let mut m = Map::new();
            m.insert("coalgebra".into(), coalgebra_value(coalgebra));
            if let Some(a) = algebra {
                m.insert("algebra".into(), algebra_value(a));
            }
            m.insert("dim".into(), json!(dim));
            m.insert("rho".into(), mat_value(rho));
            Value::Object(m)
        }
        Object::ComoduleAlgebra { h, algebra, rho } => json!({
            "bialgebra": bialgebra_value(h),
            "algebra": algebra_value(algebra),
            "rho": mat_value(rho),
        }),
        Object::Morphism(m) => json!({
            "source": coalgebra_value(m.source()),
            "target": coalgebra_value(m.target()),
            "matrix": mat_value(m.matrix()),
        }),
        Object::Diagram(d) => json!({
            "objects": d.objects().iter().map(|(l, c)| json!({"label": l, "coalgebra": coalgebra_value(c)})).collect::<Vec<_>>(),
            "arrows": d.arrows().iter().map(|a| json!({
                "label": a.label, "source": a.source, "target": a.target, "matrix": mat_value(&a.matrix),
            })).collect::<Vec<_>>(),
        }),
        Object::ConstraintProblem(p) => json!({
            "n_dim": p.n_dim,
            "constraints": p.constraints.iter().map(|(c, f)| json!({"coalgebra": coalgebra_value(c), "map": mat_value(f)})).collect::<Vec<_>>(),
        }),
        Object::Subspace(s) => subspace_value(s),
    }
}

fn read_payload(kind: &str, name: &str, r: &Reader) -> Result<Object> {
    let field = r.field;
    Ok(match kind {
        "algebra" => Object::Algebra(r.algebra(name)?),
        "coalgebra" => Object::Coalgebra(r.coalgebra(name)?),
        "bimodule" => Object::Bimodule(r.bimodule()?),
        "coring" => {
            r.only_keys(&["carrier", "delta", "counit"])?;
            let carrier = r.key("carrier")?.bimodule()?;
            let n = carrier.dim();
            let delta = r.key("delta")?.matrix_shaped(n * n, n)?;
            let counit = r.key("counit")?.matrix_shaped(carrier.base().dim(), n)?;
            let plain: Vec<Vec<Scalar>> = (0..n).map(|i| delta.column(i)).collect();
            Object::Coring(Coring::from_plain(carrier, &plain, counit)?)
        }
        "bialgebra" => Object::Bialgebra(r.bialgebra(name)?),
        "hopf" => {
            r.only_keys(&["bialgebra", "antipode"])?;
            let h = r.key("bialgebra")?.bialgebra(name)?;
            let n = h.algebra.dim();
            Object::Hopf {
                antipode: r.key("antipode")?.matrix_shaped(n, n)?,
                h,
            }
        }
        "module-coalgebra" => {
            r.only_keys(&["bialgebra", "coalgebra", "action"])?;
            let h = r.key("bialgebra")?.bialgebra("H")?;
            let coalgebra = r.key("coalgebra")?.coalgebra(name)?;
            let n = coalgebra.dim();
            let action = r.key("action")?.matrices(h.algebra.dim(), n, n)?;
            Object::ModuleCoalgebra { h, coalgebra, action }
        }
        "comodule-coalgebra" => {
            r.only_keys(&["bialgebra", "coalgebra", "rho"])?;
            let h = r.key("bialgebra")?.bialgebra("H")?;
            let coalgebra = r.key("coalgebra")?.coalgebra(name)?;
            let n = coalgebra.dim();
            let rho = r.key("rho")?.matrix_shaped(n * h.algebra.dim(), n)?;
            Object::ComoduleCoalgebra { h, coalgebra, rho }
        }
        "comodule" => {
            r.only_keys(&["coalgebra", "algebra", "dim", "rho"])?;
            let coalgebra = r.key("coalgebra")?.coalgebra("H")?;
            let algebra = match r.opt_key("algebra")? {
                Some(a) => Some(a.algebra(&coalgebra.name)?),
                None => None,
            };
            if algebra.as_ref().is_some_and(|a| a.dim() != coalgebra.dim()) {
                return Err(field_err(&format!("{}.algebra", r.path), "dimension differs from the coalgebra"));
            }
            let dim = r.key("dim")?.usize()?;
            let rho = r.key("rho")?.matrix_shaped(dim * coalgebra.dim(), dim)?;
            Object::Comodule {
                coalgebra,
                algebra,
                dim,
                rho,
            }
        }
        "comodule-algebra" => {
            r.only_keys(&["bialgebra", "algebra", "rho"])?;
            let h = r.key("bialgebra")?.bialgebra("H")?;
            let algebra = r.key("algebra")?.algebra(name)?;
            let n = algebra.dim();
            let rho = r.key("rho")?.matrix_shaped(n * h.algebra.dim(), n)?;
            Object::ComoduleAlgebra { h, algebra, rho }
        }
        "morphism" => {
            r.only_keys(&["source", "target", "matrix"])?;
            let source = r.key("source")?.coalgebra("source")?;
            let target = r.key("target")?.coalgebra("target")?;
            let matrix = r.key("matrix")?.matrix_shaped(target.dim(), source.dim())?;
            Object::Morphism(CoalgebraMorphism::new(source, target, matrix)?)
        }
        "diagram" => {
            r.only_keys(&["objects", "arrows"])?;
            let mut objects = Vec::new();
            for o in r.key("objects")?.array()? {
                o.only_keys(&["label", "coalgebra"])?;
                let label = o.key("label")?.str()?.to_string();
                objects.push((label.clone(), o.key("coalgebra")?.coalgebra(&label)?));
            }
            let mut arrows = Vec::new();
            for a in r.key("arrows")?.array()? {
                a.only_keys(&["label", "source", "target", "matrix"])?;
                arrows.push(DiagramArrow {
                    label: a.key("label")?.str()?.to_string(),
                    source: a.key("source")?.str()?.to_string(),
                    target: a.key("target")?.str()?.to_string(),
                    matrix: a.key("matrix")?.matrix()?,
                });
            }
            Object::Diagram(Diagram::new(field, objects, arrows)?)
        }
        "constraint-problem" => {
            r.only_keys(&["n_dim", "constraints"])?;
            let n_dim = r.key("n_dim")?.usize()?;
            let mut constraints = Vec::new();
            for c in r.key("constraints")?.array()? {
                c.only_keys(&["coalgebra", "map"])?;
                let coalg = c.key("coalgebra")?.coalgebra("C")?;
                let map = c.key("map")?.matrix_shaped(coalg.dim(), n_dim)?;
                constraints.push((coalg, map));
            }
            Object::ConstraintProblem(ConstraintProblem::new(field, n_dim, constraints)?)
        }
        "subspace" => Object::Subspace(r.subspace()?),
        other => {
            return Err(field_err("kind", format!("unknown kind {other:?}; expected one of {}", KINDS.join(", "))))
        }
    })
}

impl Document {
    pub fn from_object(name: impl Into<String>, obj: &Object) -> Document {
        Document {
            schema_version: SCHEMA_VERSION,
            kind: obj.kind().to_string(),
            name: name.into(),
            field: obj.field().to_string(),
            payload: payload(obj),
        }
    }

    /// Parses document text; syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(field_err(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", doc.schema_version),
            ));
        }
        if !KINDS.contains(&doc.kind.as_str()) {
            return Err(field_err(
                "kind",
                format!("unknown kind {:?}; expected one of {}", doc.kind, KINDS.join(", ")),
            ));
        }
        Ok(doc)
    }

    pub fn field(&self) -> Result<Field> {
        self.field.parse().map_err(|e: Error| field_err("field", e.to_string()))
    }

    pub fn to_object(&self) -> Result<Object> {
        let field = self.field()?;
        let r = Reader {
            v: &self.payload,
            path: "payload".into(),
            field,
        };
        read_payload(&self.kind, &self.name, &r)
    }

    /// Canonical text: two-space indentation, keys sorted, arrays of scalars on one line.
    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("document serializes");
        let mut out = String::new();
        write_value(&v, 0, &mut out);
        out.push('\n');
        out
    }

    /// Parses and re-prints, normalizing entry order and scalar form.
    pub fn canonicalize(text: &str) -> Result<String> {
        let doc = Document::parse(text)?;
        let obj = doc.to_object()?;
        Ok(Document::from_object(doc.name, &obj).to_text())
    }
}

pub(crate) fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            for (i, k) in keys.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_value(&m[*k], indent + 1, out);
                if i + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(a) if a.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                if i + 1 < a.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use crate::coalgebra::comatrix_coalgebra;

    #[test]
    fn round_trip_is_identity_on_canonical_text() {
        let c = comatrix_coalgebra(2, Field::Prime(2));
        let text = Document::from_object("m2c", &Object::Coalgebra(c.clone())).to_text();
        assert_eq!(Document::canonicalize(&text).unwrap(), text);
        match Document::parse(&text).unwrap().to_object().unwrap() {
            Object::Coalgebra(d) => assert_eq!(d, c),
            _ => panic!("wrong kind"),
        }
        let a = truncated_polynomial(3, Field::Rationals);
        let text = Document::from_object("a", &Object::Algebra(a)).to_text();
        assert_eq!(Document::canonicalize(&text).unwrap(), text);
    }

    #[test]
    fn unsorted_entries_are_canonicalized() {
        let text = r#"{"schema_version":1,"kind":"subspace","name":"s","field":"Q",
            "payload":{"ambient":2,"basis":{"rows":1,"cols":2,"entries":[[0,1,"4/2"],[0,0,"2"]]}}}"#;
        let c = Document::canonicalize(text).unwrap();
        assert!(c.contains(r#"[0, 0, "1"]"#), "{c}");
        assert!(c.contains(r#"[0, 1, "1"]"#), "{c}");
    }

    #[test]
    fn errors_cite_position_and_path() {
        match Document::parse("{\n  \"kind\": oops\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let bad_kind = r#"{"schema_version":1,"kind":"monad","name":"x","field":"F2","payload":{}}"#;
        assert!(matches!(Document::parse(bad_kind), Err(Error::DocumentField { path, .. }) if path == "kind"));
        let bad_entry = r#"{"schema_version":1,"kind":"subspace","name":"s","field":"F2",
            "payload":{"ambient":2,"basis":{"rows":1,"cols":2,"entries":[[0,5,"1"]]}}}"#;
        let err = Document::parse(bad_entry).unwrap().to_object().unwrap_err();
        assert!(matches!(err, Error::DocumentField { ref path, .. } if path == "payload.basis.entries[0][1]"), "{err}");
    }
}
