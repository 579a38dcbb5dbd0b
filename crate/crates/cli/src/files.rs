//! The JSON file formats. Every file carries `"schema_version": 1`; rationals
//! are strings such as `"-3/7"` or `"2"`.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use deforma_core::deformations::{GaugeElement, TruncatedDeformation};
use deforma_core::graded::{Basis, Element, GradedMultilinearMap, GradedSpace};
use deforma_core::hochschild::{AlgebraStructure, Cochain};
use deforma_core::homotopy::{AInfinityStructure, LInfinityStructure, MCElementSeries};
use deforma_core::Rational;
use serde_json::{json, Map, Value};

use crate::error::{schema, CliError, Result};
use crate::json::to_canonical;

pub const SCHEMA_VERSION: u64 = 1;

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    fs::write(path, to_canonical(v)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema(format!("{what} must be an object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{what} is missing \"{key}\"")))
}

fn only_fields(obj: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(format!("{what} has unknown field \"{k}\""))),
        None => Ok(()),
    }
}

fn check_version(obj: &Map<String, Value>, what: &str) -> Result<()> {
    match field(obj, "schema_version", what)?.as_u64() {
        Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(schema(format!("{what}: unsupported schema_version {v}"))),
        None => Err(schema(format!("{what}: schema_version must be an integer"))),
    }
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| schema(format!("{what} must be a non-negative integer")))
}

fn i32_of(v: &Value, what: &str) -> Result<i32> {
    v.as_i64()
        .and_then(|n| i32::try_from(n).ok())
        .ok_or_else(|| schema(format!("{what} must be an integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| schema(format!("{what} must be an array")))
}

pub fn rational_of(v: &Value, what: &str) -> Result<Rational> {
    let s = v
        .as_str()
        .ok_or_else(|| schema(format!("{what} must be a rational string")))?;
    s.parse()
        .map_err(|e| schema(format!("{what}: cannot parse {s:?}: {e}")))
}

fn rational_json(c: &Rational) -> Value {
    Value::String(c.to_string())
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| schema(format!("{what} must contain strings")))
        })
        .collect()
}

/// Nested arrays of depth `depth`, each of length `dim`, read in row-major order.
fn flatten(v: &Value, depth: usize, dim: usize, what: &str, out: &mut Vec<Rational>) -> Result<()> {
    let items = array(v, what)?;
    if items.len() != dim {
        return Err(schema(format!(
            "{what}: expected {dim} entries, found {}",
            items.len()
        )));
    }
    for (i, item) in items.iter().enumerate() {
        let at = format!("{what}[{i}]");
        if depth == 1 {
            out.push(rational_of(item, &at)?);
        } else {
            flatten(item, depth - 1, dim, &at, out)?;
        }
    }
    Ok(())
}

fn nest(coeffs: &[Rational], depth: usize, dim: usize) -> Value {
    if depth == 1 {
        return Value::Array(coeffs.iter().map(rational_json).collect());
    }
    let block = coeffs.len() / dim;
    Value::Array(
        coeffs
            .chunks(block)
            .map(|c| nest(c, depth - 1, dim))
            .collect(),
    )
}

/// `{"arity": n, "values": …}` with `values` nested `n + 1` deep.
pub fn cochain_from_json(v: &Value, dim: usize, arity: usize, what: &str) -> Result<Cochain> {
    let obj = object(v, what)?;
    only_fields(obj, &["arity", "values"], what)?;
    let found = usize_of(field(obj, "arity", what)?, &format!("{what}.arity"))?;
    if found != arity {
        return Err(schema(format!(
            "{what}: expected arity {arity}, found {found}"
        )));
    }
    let mut coeffs = Vec::new();
    flatten(
        field(obj, "values", what)?,
        arity + 1,
        dim,
        &format!("{what}.values"),
        &mut coeffs,
    )?;
    Ok(Cochain::from_coefficients(arity, dim, coeffs)?)
}

pub fn cochain_to_json(c: &Cochain) -> Value {
    json!({
        "arity": c.arity(),
        "values": nest(c.coefficients(), c.arity() + 1, c.dim()),
    })
}

pub fn algebra_from_json(v: &Value) -> Result<AlgebraStructure> {
    let what = "algebra file";
    let obj = object(v, what)?;
    check_version(obj, what)?;
    only_fields(
        obj,
        &["schema_version", "dimension", "labels", "table"],
        what,
    )?;
    let dim = usize_of(field(obj, "dimension", what)?, "dimension")?;
    if dim == 0 {
        return Err(schema("dimension must be positive"));
    }
    let mut gamma = Vec::with_capacity(dim.pow(3));
    flatten(field(obj, "table", what)?, 3, dim, "table", &mut gamma)?;
    let a = AlgebraStructure::new(dim, gamma)?;
    match obj.get("labels") {
        None => Ok(a),
        Some(l) => a
            .with_labels(strings(l, "labels")?)
            .map_err(|_| schema(format!("labels: expected {dim} labels"))),
    }
}

pub fn algebra_to_json(a: &AlgebraStructure) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "dimension": a.dim(),
        "labels": a.labels(),
        "table": nest(a.structure_constants(), 3, a.dim()),
    })
}

pub fn read_algebra(path: &Path) -> Result<AlgebraStructure> {
    algebra_from_json(&read_json(path)?)
}

fn relative_to(base: Option<&Path>, p: &str) -> PathBuf {
    match base.and_then(Path::parent) {
        Some(dir) => dir.join(p),
        None => PathBuf::from(p),
    }
}

/// `algebra` is an inline algebra object or a path, relative to the file
/// at `origin` when given.
pub fn deformation_from_json(v: &Value, origin: Option<&Path>) -> Result<TruncatedDeformation> {
    let what = "deformation file";
    let obj = object(v, what)?;
    check_version(obj, what)?;
    only_fields(obj, &["schema_version", "algebra", "order", "terms"], what)?;
    let a = match field(obj, "algebra", what)? {
        Value::String(p) => read_algebra(&relative_to(origin, p))?,
        inline => algebra_from_json(inline)?,
    };
    let order = usize_of(field(obj, "order", what)?, "order")?;
    let raw = array(field(obj, "terms", what)?, "terms")?;
    if raw.len() != order {
        return Err(schema(format!(
            "order is {order} but {} terms are listed",
            raw.len()
        )));
    }
    let terms = raw
        .iter()
        .enumerate()
        .map(|(k, t)| cochain_from_json(t, a.dim(), 2, &format!("terms[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedDeformation::new(a, terms)?)
}

pub fn deformation_to_json(d: &TruncatedDeformation) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "algebra": algebra_to_json(d.base()),
        "order": d.order(),
        "terms": d.terms().iter().map(cochain_to_json).collect::<Vec<_>>(),
    })
}

pub fn read_deformation(path: &Path) -> Result<TruncatedDeformation> {
    deformation_from_json(&read_json(path)?, Some(path))
}

/// `x = x₁t + … + xₙtⁿ` with arity-1 terms.
pub fn gauge_from_json(v: &Value) -> Result<GaugeElement> {
    let what = "gauge file";
    let obj = object(v, what)?;
    check_version(obj, what)?;
    only_fields(
        obj,
        &["schema_version", "dimension", "order", "terms"],
        what,
    )?;
    let dim = usize_of(field(obj, "dimension", what)?, "dimension")?;
    let order = usize_of(field(obj, "order", what)?, "order")?;
    let raw = array(field(obj, "terms", what)?, "terms")?;
    if raw.len() != order {
        return Err(schema(format!(
            "order is {order} but {} terms are listed",
            raw.len()
        )));
    }
    let terms = raw
        .iter()
        .enumerate()
        .map(|(k, t)| cochain_from_json(t, dim, 1, &format!("terms[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(GaugeElement::new(dim, terms)?)
}

pub fn gauge_to_json(x: &GaugeElement) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "dimension": x.dim(),
        "order": x.order(),
        "terms": x.terms().iter().map(cochain_to_json).collect::<Vec<_>>(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Linf,
    Ainf,
}

impl StructureKind {
    fn name(self) -> &'static str {
        match self {
            StructureKind::Linf => "linf",
            StructureKind::Ainf => "ainf",
        }
    }

    /// Degree of the `k`-ary operation.
    pub fn op_degree(self, k: usize) -> i32 {
        match self {
            StructureKind::Linf => 2 - k as i32,
            StructureKind::Ainf => k as i32 - 2,
        }
    }
}

/// The operations as listed in a structure file, before any axiom or
/// symmetry checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFile {
    pub kind: StructureKind,
    pub space: GradedSpace,
    pub ops: Vec<GradedMultilinearMap>,
}

impl StructureFile {
    /// The L∞ structure after χ-antisymmetric projection, and whether the
    /// projection changed anything.
    pub fn linf(&self) -> Result<(LInfinityStructure, bool)> {
        self.expect_kind(StructureKind::Linf)?;
        Ok(LInfinityStructure::projected(
            self.space.clone(),
            self.ops.clone(),
        )?)
    }

    pub fn ainf(&self) -> Result<AInfinityStructure> {
        self.expect_kind(StructureKind::Ainf)?;
        Ok(AInfinityStructure::new(
            self.space.clone(),
            self.ops.clone(),
        )?)
    }

    fn expect_kind(&self, kind: StructureKind) -> Result<()> {
        if self.kind != kind {
            return Err(schema(format!(
                "expected a \"{}\" structure, found \"{}\"",
                kind.name(),
                self.kind.name()
            )));
        }
        Ok(())
    }

    pub fn from_linf(l: &LInfinityStructure) -> Self {
        StructureFile {
            kind: StructureKind::Linf,
            space: l.space().clone(),
            ops: l.ops().map(|(_, m)| m.clone()).collect(),
        }
    }

    pub fn from_ainf(a: &AInfinityStructure) -> Self {
        StructureFile {
            kind: StructureKind::Ainf,
            space: a.space().clone(),
            ops: a.ops().map(|(_, m)| m.clone()).collect(),
        }
    }
}

fn space_from_json(obj: &Map<String, Value>, what: &str) -> Result<GradedSpace> {
    let degrees = object(field(obj, "degrees", what)?, "degrees")?;
    let mut dims = Vec::new();
    for (k, v) in degrees {
        let d: i32 = k
            .parse()
            .map_err(|_| schema(format!("degrees: key {k:?} is not an integer")))?;
        dims.push((d, usize_of(v, &format!("degrees[{k}]"))?));
    }
    let mut space = GradedSpace::new(dims);
    if let Some(labels) = obj.get("labels") {
        for (k, v) in object(labels, "labels")? {
            let d: i32 = k
                .parse()
                .map_err(|_| schema(format!("labels: key {k:?} is not an integer")))?;
            let names = strings(v, &format!("labels[{k}]"))?;
            space = space
                .with_labels(d, names)
                .map_err(|_| schema(format!("labels[{k}]: wrong number of labels")))?;
        }
    }
    Ok(space)
}

fn space_to_json(space: &GradedSpace) -> (Value, Value) {
    let mut degrees = Map::new();
    let mut labels = Map::new();
    for (d, n) in space.components() {
        if n == 0 {
            continue;
        }
        degrees.insert(d.to_string(), json!(n));
        let names: Vec<&str> = (0..n).map(|i| space.label((d, i)).unwrap_or("")).collect();
        labels.insert(d.to_string(), json!(names));
    }
    (Value::Object(degrees), Value::Object(labels))
}

fn basis_of(v: &Value, space: &GradedSpace, what: &str) -> Result<Basis> {
    let pair = array(v, what)?;
    if pair.len() != 2 {
        return Err(schema(format!("{what} must be [degree, index]")));
    }
    let b = (i32_of(&pair[0], what)?, usize_of(&pair[1], what)?);
    if !space.contains(b) {
        return Err(schema(format!(
            "{what}: ({}, {}) is not a basis element",
            b.0, b.1
        )));
    }
    Ok(b)
}

/// `[[degree, index, "c"], …]`.
pub fn element_from_json(v: &Value, space: &GradedSpace, what: &str) -> Result<Element> {
    let mut e = Element::zero();
    for (i, t) in array(v, what)?.iter().enumerate() {
        let at = format!("{what}[{i}]");
        let t = array(t, &at)?;
        if t.len() != 3 {
            return Err(schema(format!("{at} must be [degree, index, coefficient]")));
        }
        let b = basis_of(&json!([t[0], t[1]]), space, &at)?;
        e.add_term(b, &rational_of(&t[2], &at)?);
    }
    Ok(e)
}

pub fn element_to_json(e: &Element) -> Value {
    Value::Array(
        e.terms()
            .map(|(b, c)| json!([b.0, b.1, c.to_string()]))
            .collect(),
    )
}

/// A sparse list `[{"inputs": [[d, i], …], "output": [[d, i, "c"], …]}, …]`.
/// Every output must sit in the degree forced by the inputs.
fn sparse_map_from_json(
    v: &Value,
    arity: usize,
    degree: i32,
    domain: &GradedSpace,
    codomain: &GradedSpace,
    what: &str,
) -> Result<GradedMultilinearMap> {
    let mut m = GradedMultilinearMap::zero(arity, degree, domain.clone(), codomain.clone());
    let mut seen = BTreeSet::new();
    for (i, entry) in array(v, what)?.iter().enumerate() {
        let at = format!("{what}[{i}]");
        let obj = object(entry, &at)?;
        only_fields(obj, &["inputs", "output"], &at)?;
        let inputs = array(field(obj, "inputs", &at)?, &format!("{at}.inputs"))?
            .iter()
            .enumerate()
            .map(|(p, b)| basis_of(b, domain, &format!("{at}.inputs[{p}]")))
            .collect::<Result<Vec<_>>>()?;
        if inputs.len() != arity {
            return Err(schema(format!(
                "{at}: {} inputs for an operation of arity {arity}",
                inputs.len()
            )));
        }
        if !seen.insert(inputs.clone()) {
            return Err(schema(format!("{at}: inputs listed twice")));
        }
        let output = element_from_json(
            field(obj, "output", &at)?,
            codomain,
            &format!("{at}.output"),
        )?;
        let forced = inputs.iter().map(|b| b.0).sum::<i32>() + degree;
        if let Some((b, _)) = output.terms().find(|(b, _)| b.0 != forced) {
            return Err(schema(format!(
                "{at}: output ({}, {}) has degree {}, expected {forced}",
                b.0, b.1, b.0
            )));
        }
        m.set(&inputs, output)?;
    }
    Ok(m)
}

fn sparse_map_to_json(m: &GradedMultilinearMap) -> Value {
    Value::Array(
        m.entries()
            .map(|(inputs, out)| {
                json!({
                    "inputs": inputs.iter().map(|b| json!([b.0, b.1])).collect::<Vec<_>>(),
                    "output": element_to_json(out),
                })
            })
            .collect(),
    )
}

fn arity_key(k: &str, what: &str) -> Result<usize> {
    match k.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(schema(format!("{what}: key {k:?} is not a positive arity"))),
    }
}

pub fn structure_from_json(v: &Value) -> Result<StructureFile> {
    let what = "structure file";
    let obj = object(v, what)?;
    check_version(obj, what)?;
    only_fields(
        obj,
        &["schema_version", "kind", "degrees", "labels", "ops"],
        what,
    )?;
    let kind = match field(obj, "kind", what)?.as_str() {
        Some("linf") => StructureKind::Linf,
        Some("ainf") => StructureKind::Ainf,
        _ => return Err(schema("kind must be \"linf\" or \"ainf\"")),
    };
    let space = space_from_json(obj, what)?;
    let mut ops = Vec::new();
    for (k, list) in object(field(obj, "ops", what)?, "ops")? {
        let arity = arity_key(k, "ops")?;
        let at = format!("ops[{k}]");
        ops.push(sparse_map_from_json(
            list,
            arity,
            kind.op_degree(arity),
            &space,
            &space,
            &at,
        )?);
    }
    Ok(StructureFile { kind, space, ops })
}

pub fn structure_to_json(s: &StructureFile) -> Value {
    let (degrees, labels) = space_to_json(&s.space);
    let ops: Map<String, Value> = s
        .ops
        .iter()
        .map(|m| (m.arity().to_string(), sparse_map_to_json(m)))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": s.kind.name(),
        "degrees": degrees,
        "labels": labels,
        "ops": ops,
    })
}

pub fn read_structure(path: &Path) -> Result<StructureFile> {
    structure_from_json(&read_json(path)?)
}

/// `{"schema_version": 1, "terms": [element, …]}` with `terms[k-1] = s_k`.
pub fn series_from_json(v: &Value, space: &GradedSpace) -> Result<MCElementSeries> {
    let what = "series file";
    let obj = object(v, what)?;
    check_version(obj, what)?;
    only_fields(obj, &["schema_version", "terms"], what)?;
    let terms = array(field(obj, "terms", what)?, "terms")?
        .iter()
        .enumerate()
        .map(|(k, t)| element_from_json(t, space, &format!("terms[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(MCElementSeries::new(space, terms)?)
}

pub fn series_to_json(s: &MCElementSeries) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "terms": s.terms().iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

/// `{"schema_version": 1, "components": {"1": sparse list, …}}`; `f_k` has
/// degree `1 − k`.
pub fn morphism_components_from_json(
    v: &Value,
    source: &GradedSpace,
    target: &GradedSpace,
) -> Result<Vec<GradedMultilinearMap>> {
    let what = "morphism file";
    let obj = object(v, what)?;
    check_version(obj, what)?;
    only_fields(obj, &["schema_version", "components"], what)?;
    object(field(obj, "components", what)?, "components")?
        .iter()
        .map(|(k, list)| {
            let arity = arity_key(k, "components")?;
            let at = format!("components[{k}]");
            sparse_map_from_json(list, arity, 1 - arity as i32, source, target, &at)
        })
        .collect()
}

pub fn morphism_components_to_json(components: &[GradedMultilinearMap]) -> Value {
    let map: Map<String, Value> = components
        .iter()
        .map(|m| (m.arity().to_string(), sparse_map_to_json(m)))
        .collect();
    json!({"schema_version": SCHEMA_VERSION, "components": map})
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers_json() -> Value {
        json!({
            "schema_version": 1,
            "dimension": 2,
            "labels": ["1", "x"],
            "table": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]],
        })
    }

    #[test]
    fn algebra_round_trip() {
        let a = algebra_from_json(&dual_numbers_json()).unwrap();
        assert!(a.is_associative());
        assert_eq!(a.labels(), ["1", "x"]);
        assert_eq!(algebra_to_json(&a), dual_numbers_json());
    }

    #[test]
    fn rejects_bad_files() {
        let mut v = dual_numbers_json();
        v["schema_version"] = json!(2);
        assert!(matches!(algebra_from_json(&v), Err(CliError::Schema(_))));
        let mut v = dual_numbers_json();
        v["table"][0][0][0] = json!("1/0");
        assert!(matches!(algebra_from_json(&v), Err(CliError::Schema(_))));
        let mut v = dual_numbers_json();
        v["table"][1] = json!([["0", "1"]]);
        assert!(matches!(algebra_from_json(&v), Err(CliError::Schema(_))));
        let mut v = dual_numbers_json();
        v["extra"] = json!(0);
        assert!(matches!(algebra_from_json(&v), Err(CliError::Schema(_))));
        let mut v = dual_numbers_json();
        v["table"][0][0][0] = json!(1);
        assert!(matches!(algebra_from_json(&v), Err(CliError::Schema(_))));
    }

    #[test]
    fn structure_outputs_must_have_the_forced_degree() {
        let v = json!({
            "schema_version": 1,
            "kind": "linf",
            "degrees": {"0": 1, "1": 1},
            "ops": {"1": [{"inputs": [[0, 0]], "output": [[0, 0, "1"]]}]},
        });
        assert!(matches!(structure_from_json(&v), Err(CliError::Schema(_))));
        let mut ok = v.clone();
        ok["ops"]["1"][0]["output"] = json!([[1, 0, "-2/4"]]);
        let s = structure_from_json(&ok).unwrap();
        assert_eq!(structure_from_json(&structure_to_json(&s)).unwrap(), s);
        assert_eq!(
            structure_to_json(&s)["ops"]["1"][0]["output"],
            json!([[1, 0, "-1/2"]])
        );
    }
}
