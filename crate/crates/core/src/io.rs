//! Bundle files.
//!
//! A bundle is a JSON object with a `kind` field, dimension fields and
//! nested arrays of scalar strings (`"3"`, `"-1/2"`). Numbers are rejected
//! so that nothing passes through floating point. The canonical form has
//! sorted keys, reduced fractions, two-space indentation, one object key
//! per line and arrays of scalars on a single line.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebras::PreNovikovTables;
use crate::bialgebra::PreNovikovCoalgebra;
use crate::error::{Error, Position, Result};
use crate::report::Report;
use crate::representations::{NovikovRep, PreNovikovRep, RepMaps};
use crate::scalar::Scalar;
use crate::structure::StructureConstants;
use crate::tensor::{LinMap, Tensor2, Tensor3};
use crate::yang_baxter::{Flavor, OOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Novikov,
    /// A bare product table with no claimed identities.
    Product,
    PreNovikov,
    Coalgebra,
    Bialgebra,
    Rep,
    Form,
    Tensor2,
    Linmap,
    OOperator,
    Double,
    SolutionList,
}

impl Kind {
    pub const ALL: [Kind; 12] = [
        Kind::Novikov,
        Kind::Product,
        Kind::PreNovikov,
        Kind::Coalgebra,
        Kind::Bialgebra,
        Kind::Rep,
        Kind::Form,
        Kind::Tensor2,
        Kind::Linmap,
        Kind::OOperator,
        Kind::Double,
        Kind::SolutionList,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Novikov => "novikov",
            Kind::Product => "product",
            Kind::PreNovikov => "pre_novikov",
            Kind::Coalgebra => "coalgebra",
            Kind::Bialgebra => "bialgebra",
            Kind::Rep => "rep",
            Kind::Form => "form",
            Kind::Tensor2 => "tensor2",
            Kind::Linmap => "linmap",
            Kind::OOperator => "o_operator",
            Kind::Double => "double",
            Kind::SolutionList => "solution_list",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A double construction as stored on disk: the Novikov product on
/// `A ⊕ A*`, its form and the compatible pre-Novikov structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleTables {
    pub product: StructureConstants,
    pub form: LinMap,
    /// Absent when only the product and form are known.
    pub compatible: Option<PreNovikovTables>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Novikov(StructureConstants),
    Product(StructureConstants),
    PreNovikov(PreNovikovTables),
    Coalgebra(PreNovikovCoalgebra),
    Bialgebra(PreNovikovTables, PreNovikovCoalgebra),
    NovikovRep(NovikovRep),
    PreNovikovRep(PreNovikovRep),
    Form(LinMap),
    Tensor2(Tensor2),
    LinMap(LinMap),
    OOperator(OOperator),
    Double(DoubleTables),
    /// Symmetric tensors of a common dimension.
    SolutionList { dim: usize, solutions: Vec<Tensor2> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub body: Body,
    /// Optional names for the basis vectors of the primary space.
    pub labels: Option<Vec<String>>,
}

impl From<Body> for Bundle {
    fn from(body: Body) -> Self {
        Bundle { body, labels: None }
    }
}

impl Bundle {
    pub fn kind(&self) -> Kind {
        match self.body {
            Body::Novikov(_) => Kind::Novikov,
            Body::Product(_) => Kind::Product,
            Body::PreNovikov(_) => Kind::PreNovikov,
            Body::Coalgebra(_) => Kind::Coalgebra,
            Body::Bialgebra(..) => Kind::Bialgebra,
            Body::NovikovRep(_) | Body::PreNovikovRep(_) => Kind::Rep,
            Body::Form(_) => Kind::Form,
            Body::Tensor2(_) => Kind::Tensor2,
            Body::LinMap(_) => Kind::Linmap,
            Body::OOperator(_) => Kind::OOperator,
            Body::Double(_) => Kind::Double,
            Body::SolutionList { .. } => Kind::SolutionList,
        }
    }

    /// Size of the space the labels name.
    fn label_dim(&self) -> usize {
        match &self.body {
            Body::Novikov(t) | Body::Product(t) => t.dim(),
            Body::PreNovikov(t) | Body::Bialgebra(t, _) => t.dim(),
            Body::Coalgebra(c) => c.dim(),
            Body::NovikovRep(r) => r.algebra_dim(),
            Body::PreNovikovRep(r) => r.algebra_dim(),
            Body::Form(m) => m.rows(),
            Body::Tensor2(t) => t.rows(),
            Body::LinMap(m) => m.cols(),
            Body::OOperator(o) => o.map.cols(),
            Body::Double(d) => d.product.dim(),
            Body::SolutionList { dim, .. } => *dim,
        }
    }
}

impl FromStr for Bundle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bundle(s)
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_bundle(self))
    }
}

// ---------------------------------------------------------------- parsing

type Matrix = Vec<Vec<Scalar>>;
type Cube = Vec<Vec<Vec<Scalar>>>;

#[derive(Deserialize)]
struct KindOnly {
    kind: Kind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    op: Cube,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PreNovikovFile {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    lhd: Cube,
    rhd: Cube,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoalgebraFile {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    alpha: Cube,
    beta: Cube,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BialgebraFile {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    lhd: Cube,
    rhd: Cube,
    alpha: Cube,
    beta: Cube,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    #[allow(dead_code)]
    kind: String,
    flavor: Flavor,
    algebra_dim: usize,
    module_dim: usize,
    l: Option<Vec<Matrix>>,
    r: Option<Vec<Matrix>>,
    l_rhd: Option<Vec<Matrix>>,
    r_rhd: Option<Vec<Matrix>>,
    l_lhd: Option<Vec<Matrix>>,
    r_lhd: Option<Vec<Matrix>>,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    matrix: Matrix,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Tensor2File {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    entries: Matrix,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinMapFile {
    #[allow(dead_code)]
    kind: String,
    rows: usize,
    cols: usize,
    entries: Matrix,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OOperatorFile {
    #[allow(dead_code)]
    kind: String,
    flavor: Flavor,
    rows: usize,
    cols: usize,
    entries: Matrix,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DoubleFile {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    product: Cube,
    form: Matrix,
    lhd: Option<Cube>,
    rhd: Option<Cube>,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionListFile {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    solutions: Vec<Matrix>,
    labels: Option<Vec<String>>,
}

/// Converts a byte offset into a 1-based line and column.
fn position_of(text: &str, offset: usize) -> Position {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Position { line, column }
}

/// Where `"key"` appears as an object key, or the start of the file.
fn key_position(text: &str, key: &str) -> Position {
    let needle = format!("\"{key}\"");
    let mut from = 0;
    while let Some(found) = text[from..].find(&needle) {
        let at = from + found;
        let rest = text[at + needle.len()..].trim_start();
        if rest.starts_with(':') {
            return position_of(text, at);
        }
        from = at + needle.len();
    }
    Position { line: 1, column: 1 }
}

fn json_error(e: serde_json::Error) -> Error {
    let msg = e.to_string();
    // serde_json appends " at line L column C"; the position is carried separately.
    let msg = match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg,
    };
    Error::Parse { pos: Position { line: e.line().max(1), column: e.column().max(1) }, msg }
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, key: &str, msg: impl fmt::Display) -> Error {
        Error::Parse { pos: key_position(self.text, key), msg: format!("{key}: {msg}") }
    }

    fn cube(&self, key: &str, data: Cube, n: usize) -> Result<StructureConstants> {
        if data.len() != n || data.iter().any(|m| m.len() != n || m.iter().any(|row| row.len() != n)) {
            return Err(self.err(key, format!("expected a {n}x{n}x{n} array")));
        }
        StructureConstants::from_nested(data).map_err(|e| self.err(key, e))
    }

    fn tensor3(&self, key: &str, data: Cube, n: usize) -> Result<Tensor3> {
        Ok(self.cube(key, data, n)?.to_tensor())
    }

    fn matrix(&self, key: &str, data: Matrix, rows: usize, cols: usize) -> Result<LinMap> {
        if data.len() != rows || data.iter().any(|row| row.len() != cols) {
            return Err(self.err(key, format!("expected a {rows}x{cols} array")));
        }
        if rows == 0 {
            return Ok(LinMap::zeros(0, cols));
        }
        LinMap::from_rows(data).map_err(|e| self.err(key, e))
    }

    fn rep_maps(&self, key: &str, data: Option<Vec<Matrix>>, n: usize, m: usize) -> Result<RepMaps> {
        let data = data.ok_or_else(|| Error::Parse { pos: Position { line: 1, column: 1 }, msg: format!("missing field `{key}`") })?;
        if data.len() != n {
            return Err(self.err(key, format!("expected {n} matrices")));
        }
        let maps = data.into_iter().map(|d| self.matrix(key, d, m, m)).collect::<Result<Vec<_>>>()?;
        if maps.is_empty() {
            return Ok(RepMaps::zeros(0, m));
        }
        RepMaps::new(maps).map_err(|e| self.err(key, e))
    }

    fn forbid(&self, key: &str, present: bool, flavor: Flavor) -> Result<()> {
        if present {
            return Err(self.err(key, format!("not a field of a {} representation", flavor_name(flavor))));
        }
        Ok(())
    }
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Novikov => "novikov",
        Flavor::PreNovikov => "pre_novikov",
    }
}

fn load<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(json_error)
}

/// Strict parse: unknown kinds and fields, malformed scalars and shape
/// mismatches are errors carrying a line and column.
pub fn parse_bundle(text: &str) -> Result<Bundle> {
    // Syntax first, so that a broken file is not reported as a bad kind.
    load::<Value>(text)?;
    let kind = load::<KindOnly>(text)?.kind;
    let cx = Ctx { text };
    let (body, labels) = match kind {
        Kind::Novikov | Kind::Product => {
            let f: TableFile = load(text)?;
            let t = cx.cube("op", f.op, f.dim)?;
            (if kind == Kind::Novikov { Body::Novikov(t) } else { Body::Product(t) }, f.labels)
        }
        Kind::PreNovikov => {
            let f: PreNovikovFile = load(text)?;
            let t = PreNovikovTables { lhd: cx.cube("lhd", f.lhd, f.dim)?, rhd: cx.cube("rhd", f.rhd, f.dim)? };
            (Body::PreNovikov(t), f.labels)
        }
        Kind::Coalgebra => {
            let f: CoalgebraFile = load(text)?;
            let co = PreNovikovCoalgebra { alpha: cx.tensor3("alpha", f.alpha, f.dim)?, beta: cx.tensor3("beta", f.beta, f.dim)? };
            (Body::Coalgebra(co), f.labels)
        }
        Kind::Bialgebra => {
            let f: BialgebraFile = load(text)?;
            let t = PreNovikovTables { lhd: cx.cube("lhd", f.lhd, f.dim)?, rhd: cx.cube("rhd", f.rhd, f.dim)? };
            let co = PreNovikovCoalgebra { alpha: cx.tensor3("alpha", f.alpha, f.dim)?, beta: cx.tensor3("beta", f.beta, f.dim)? };
            (Body::Bialgebra(t, co), f.labels)
        }
        Kind::Rep => {
            let f: RepFile = load(text)?;
            let (n, m) = (f.algebra_dim, f.module_dim);
            let body = match f.flavor {
                Flavor::Novikov => {
                    for (key, v) in [("l_rhd", &f.l_rhd), ("r_rhd", &f.r_rhd), ("l_lhd", &f.l_lhd), ("r_lhd", &f.r_lhd)] {
                        cx.forbid(key, v.is_some(), f.flavor)?;
                    }
                    Body::NovikovRep(NovikovRep { l: cx.rep_maps("l", f.l, n, m)?, r: cx.rep_maps("r", f.r, n, m)? })
                }
                Flavor::PreNovikov => {
                    cx.forbid("l", f.l.is_some(), f.flavor)?;
                    cx.forbid("r", f.r.is_some(), f.flavor)?;
                    Body::PreNovikovRep(PreNovikovRep {
                        l_rhd: cx.rep_maps("l_rhd", f.l_rhd, n, m)?,
                        r_rhd: cx.rep_maps("r_rhd", f.r_rhd, n, m)?,
                        l_lhd: cx.rep_maps("l_lhd", f.l_lhd, n, m)?,
                        r_lhd: cx.rep_maps("r_lhd", f.r_lhd, n, m)?,
                    })
                }
            };
            (body, f.labels)
        }
        Kind::Form => {
            let f: FormFile = load(text)?;
            (Body::Form(cx.matrix("matrix", f.matrix, f.dim, f.dim)?), f.labels)
        }
        Kind::Tensor2 => {
            let f: Tensor2File = load(text)?;
            (Body::Tensor2(Tensor2::from_linmap(&cx.matrix("entries", f.entries, f.dim, f.dim)?)), f.labels)
        }
        Kind::Linmap => {
            let f: LinMapFile = load(text)?;
            (Body::LinMap(cx.matrix("entries", f.entries, f.rows, f.cols)?), f.labels)
        }
        Kind::OOperator => {
            let f: OOperatorFile = load(text)?;
            let map = cx.matrix("entries", f.entries, f.rows, f.cols)?;
            (Body::OOperator(OOperator { map, flavor: f.flavor }), f.labels)
        }
        Kind::Double => {
            let f: DoubleFile = load(text)?;
            let compatible = match (f.lhd, f.rhd) {
                (Some(l), Some(r)) => Some(PreNovikovTables { lhd: cx.cube("lhd", l, f.dim)?, rhd: cx.cube("rhd", r, f.dim)? }),
                (None, None) => None,
                (Some(_), None) => return Err(cx.err("lhd", "given without rhd")),
                (None, Some(_)) => return Err(cx.err("rhd", "given without lhd")),
            };
            let d = DoubleTables {
                product: cx.cube("product", f.product, f.dim)?,
                form: cx.matrix("form", f.form, f.dim, f.dim)?,
                compatible,
            };
            (Body::Double(d), f.labels)
        }
        Kind::SolutionList => {
            let f: SolutionListFile = load(text)?;
            let solutions = f
                .solutions
                .into_iter()
                .map(|s| cx.matrix("solutions", s, f.dim, f.dim).map(|m| Tensor2::from_linmap(&m)))
                .collect::<Result<Vec<_>>>()?;
            (Body::SolutionList { dim: f.dim, solutions }, f.labels)
        }
    };
    let bundle = Bundle { body, labels };
    if let Some(labels) = &bundle.labels {
        if labels.len() != bundle.label_dim() {
            return Err(cx.err("labels", format!("expected {} names, got {}", bundle.label_dim(), labels.len())));
        }
    }
    Ok(bundle)
}

// ---------------------------------------------------------- serialization

fn s(v: &Scalar) -> Value {
    Value::String(v.to_string())
}

fn cube_value(t: &StructureConstants) -> Value {
    Value::Array(
        t.to_nested()
            .iter()
            .map(|m| Value::Array(m.iter().map(|row| Value::Array(row.iter().map(s).collect())).collect()))
            .collect(),
    )
}

fn tensor3_value(t: &Tensor3) -> Value {
    cube_value(&StructureConstants::from_tensor(t))
}

fn rows_value(rows: Vec<Vec<Scalar>>) -> Value {
    Value::Array(rows.iter().map(|row| Value::Array(row.iter().map(s).collect())).collect())
}

fn matrix_value(m: &LinMap) -> Value {
    rows_value(m.to_rows())
}

fn rep_value(r: &RepMaps) -> Value {
    Value::Array(r.maps().iter().map(matrix_value).collect())
}

/// The bundle as a JSON value; keys come out sorted.
pub fn bundle_value(b: &Bundle) -> Value {
    let mut v = match &b.body {
        Body::Novikov(t) | Body::Product(t) => json!({ "dim": t.dim(), "op": cube_value(t) }),
        Body::PreNovikov(t) => json!({ "dim": t.dim(), "lhd": cube_value(&t.lhd), "rhd": cube_value(&t.rhd) }),
        Body::Coalgebra(c) => {
            json!({ "dim": c.dim(), "alpha": tensor3_value(&c.alpha), "beta": tensor3_value(&c.beta) })
        }
        Body::Bialgebra(t, c) => json!({
            "dim": t.dim(),
            "lhd": cube_value(&t.lhd),
            "rhd": cube_value(&t.rhd),
            "alpha": tensor3_value(&c.alpha),
            "beta": tensor3_value(&c.beta),
        }),
        Body::NovikovRep(r) => json!({
            "flavor": "novikov",
            "algebra_dim": r.algebra_dim(),
            "module_dim": r.module_dim(),
            "l": rep_value(&r.l),
            "r": rep_value(&r.r),
        }),
        Body::PreNovikovRep(r) => json!({
            "flavor": "pre_novikov",
            "algebra_dim": r.algebra_dim(),
            "module_dim": r.module_dim(),
            "l_rhd": rep_value(&r.l_rhd),
            "r_rhd": rep_value(&r.r_rhd),
            "l_lhd": rep_value(&r.l_lhd),
            "r_lhd": rep_value(&r.r_lhd),
        }),
        Body::Form(m) => json!({ "dim": m.rows(), "matrix": matrix_value(m) }),
        Body::Tensor2(t) => json!({ "dim": t.rows(), "entries": rows_value(t.to_rows()) }),
        Body::LinMap(m) => json!({ "rows": m.rows(), "cols": m.cols(), "entries": matrix_value(m) }),
        Body::OOperator(o) => json!({
            "flavor": flavor_name(o.flavor),
            "rows": o.map.rows(),
            "cols": o.map.cols(),
            "entries": matrix_value(&o.map),
        }),
        Body::Double(d) => {
            let mut v = json!({
                "dim": d.product.dim(),
                "product": cube_value(&d.product),
                "form": matrix_value(&d.form),
            });
            if let Some(c) = &d.compatible {
                v["lhd"] = cube_value(&c.lhd);
                v["rhd"] = cube_value(&c.rhd);
            }
            v
        }
        Body::SolutionList { dim, solutions } => json!({
            "dim": dim,
            "solutions": solutions.iter().map(|t| rows_value(t.to_rows())).collect::<Vec<_>>(),
        }),
    };
    let obj = v.as_object_mut().expect("bundles are objects");
    obj.insert("kind".into(), Value::String(b.kind().name().into()));
    if let Some(labels) = &b.labels {
        obj.insert("labels".into(), json!(labels));
    }
    v
}

pub fn serialize_bundle(b: &Bundle) -> String {
    to_canonical(&bundle_value(b))
}

/// `parse` then `serialize`; idempotent.
pub fn canonicalize(text: &str) -> Result<String> {
    Ok(serialize_bundle(&parse_bundle(text)?))
}

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            // serde_json's map is ordered by key unless preserve_order is on.
            let sorted: BTreeMap<&String, &Value> = map.iter().collect();
            out.push_str("{\n");
            for (i, (k, v)) in sorted.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_value(v, indent + 1, out);
                if i + 1 < sorted.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_leaf) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        leaf => out.push_str(&leaf.to_string()),
    }
}

/// Canonical text of any JSON value, with a trailing newline.
pub fn to_canonical(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

pub fn read_bundle(path: &std::path::Path) -> Result<Bundle> {
    let text = std::fs::read_to_string(path)?;
    parse_bundle(&text)
}

// ---------------------------------------------------------------- reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A report with its verdict and any extra named results a command
/// produced alongside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub kind: String,
    pub verdict: Verdict,
    pub report: Report,
    pub facts: BTreeMap<String, String>,
}

impl ReportDocument {
    pub fn new(report: Report) -> Self {
        let verdict = if report.passed() { Verdict::Pass } else { Verdict::Fail };
        ReportDocument { kind: "report".into(), verdict, report, facts: BTreeMap::new() }
    }

    pub fn with_fact(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.facts.insert(key.into(), value.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub fn serialize_report(doc: &ReportDocument) -> String {
    to_canonical(&serde_json::to_value(doc).expect("reports serialize"))
}

/// Parses a machine-format report and checks that its verdict agrees with
/// its violations.
pub fn parse_report(text: &str) -> Result<ReportDocument> {
    let doc: ReportDocument = load(text)?;
    if doc.kind != "report" {
        return Err(Error::Parse { pos: key_position(text, "kind"), msg: format!("kind: expected \"report\", got {:?}", doc.kind) });
    }
    if doc.passed() != doc.report.passed() {
        return Err(Error::Parse { pos: key_position(text, "verdict"), msg: "verdict disagrees with the listed violations".into() });
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PRE: &str = r#"{
  "kind": "pre_novikov",
  "dim": 1,
  "lhd": [[["2/4"]]],
  "rhd": [[["0"]]]
}"#;

    #[test]
    fn fractions_are_reduced_and_keys_sorted() {
        let text = canonicalize(PRE).unwrap();
        assert_eq!(text, "{\n  \"dim\": 1,\n  \"kind\": \"pre_novikov\",\n  \"lhd\": [\n    [\n      [\"1/2\"]\n    ]\n  ],\n  \"rhd\": [\n    [\n      [\"0\"]\n    ]\n  ]\n}\n");
        assert_eq!(canonicalize(&text).unwrap(), text);
    }

    fn parse_err(text: &str) -> (Position, String) {
        match parse_bundle(text) {
            Err(Error::Parse { pos, msg }) => (pos, msg),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_are_positioned() {
        let (pos, msg) = parse_err(&PRE.replace("2/4", "1/0"));
        assert_eq!(pos.line, 4, "{msg}");
        assert!(msg.contains("zero"), "{msg}");

        let (pos, msg) = parse_err(&PRE.replace("pre_novikov", "octonion"));
        assert_eq!(pos.line, 2, "{msg}");

        let (pos, msg) = parse_err(&PRE.replace("\"dim\": 1", "\"dim\": 1, \"extra\": 3"));
        assert_eq!(pos.line, 3);
        assert!(msg.contains("extra"), "{msg}");

        let (pos, msg) = parse_err(&PRE.replace("[[[\"0\"]]]", "[[[\"0\", \"1\"]]]"));
        assert_eq!((pos.line, pos.column), (5, 3), "{msg}");

        let (_, msg) = parse_err(&PRE.replace("\"2/4\"", "0.5"));
        assert!(msg.contains("invalid type"), "{msg}");

        let (pos, _) = parse_err("{\n  \"kind\": \"form\",\n");
        assert_eq!(pos.line, 3);
    }

    #[test]
    fn rep_fields_follow_the_flavor() {
        let text = r#"{"kind":"rep","flavor":"novikov","algebra_dim":1,"module_dim":1,
            "l":[[["1"]]],"r":[[["0"]]],"l_rhd":[[["0"]]]}"#;
        let (_, msg) = parse_err(text);
        assert!(msg.starts_with("l_rhd"), "{msg}");
        let ok = text.replace(r#","l_rhd":[[["0"]]]"#, "");
        let b = parse_bundle(&ok).unwrap();
        assert_eq!(b.kind(), Kind::Rep);
        assert_eq!(parse_bundle(&serialize_bundle(&b)).unwrap(), b);
    }

    #[test]
    fn labels_must_match_dimension() {
        let with = PRE.replace("\"dim\": 1", "\"dim\": 1, \"labels\": [\"x\"]");
        assert_eq!(parse_bundle(&with).unwrap().labels, Some(vec!["x".to_string()]));
        let (_, msg) = parse_err(&PRE.replace("\"dim\": 1", "\"dim\": 1, \"labels\": [\"x\", \"y\"]"));
        assert!(msg.starts_with("labels"), "{msg}");
    }

    #[test]
    fn report_documents_round_trip() {
        use crate::algebras::check_novikov;
        let bad = StructureConstants::from_products(2, &[((0, 0), &[1, 0]), ((0, 1), &[0, 1])]);
        let doc = ReportDocument::new(check_novikov(&bad)).with_fact("note", "x");
        assert!(!doc.passed());
        let text = serialize_report(&doc);
        assert_eq!(parse_report(&text).unwrap(), doc);
        let lying = text.replace("\"fail\"", "\"pass\"");
        assert!(parse_report(&lying).is_err());
    }
}
