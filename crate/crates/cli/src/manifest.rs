//! JSON manifests: generators, structure constants and representations,
//! with every scalar an exact rational.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use mgce_core::lie::{DgLieAlgebra, Representation};
use mgce_core::linalg::SparseVec;
use mgce_core::Rat;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifestError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown name {name:?} in {context}")]
    UnknownName { name: String, context: String },

    #[error("duplicate {name:?} in {context}")]
    DuplicateName { name: String, context: String },

    #[error("bad rational {value} in {context}; use an integer or a string such as \"-2\" or \"1/3\"")]
    BadRational { value: String, context: String },
}

/// An exact scalar. Serialized as a rational string, read from a string or
/// a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rat);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        parse_scalar(&v).map(Exact).ok_or_else(|| de::Error::custom(format!("bad rational {v}")))
    }
}

fn parse_scalar(v: &Value) -> Option<Rat> {
    match v {
        Value::Number(n) => n.as_i64().map(mgce_core::rat),
        Value::String(s) => {
            let s = s.trim();
            if s.is_empty() || s.contains(char::is_whitespace) {
                return None;
            }
            s.parse::<Rat>().ok()
        }
        _ => None,
    }
}

type Coeffs<S> = BTreeMap<String, S>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffEntry<S> {
    pub src: String,
    pub image: Coeffs<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry<S> {
    pub left: String,
    pub right: String,
    pub value: Coeffs<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry<S> {
    pub generator: String,
    pub vector: String,
    pub value: Coeffs<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec<S> {
    pub basis: Vec<Generator>,
    #[serde(default = "Vec::new", skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DiffEntry<S>>,
    #[serde(default = "Vec::new", skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<ActionEntry<S>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Requests {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pbw_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest<S = Exact> {
    pub name: String,
    pub generators: Vec<Generator>,
    #[serde(default = "Vec::new", skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DiffEntry<S>>,
    #[serde(default = "Vec::new", skip_serializing_if = "Vec::is_empty")]
    pub bracket: Vec<BracketEntry<S>>,
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    pub representations: BTreeMap<String, RepresentationSpec<S>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub requests: Option<Requests>,
}

struct Names<'a> {
    index: BTreeMap<&'a str, usize>,
}

impl<'a> Names<'a> {
    fn new(gens: &'a [Generator], context: &str) -> Result<Self, ManifestError> {
        let mut index = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.name.as_str(), i).is_some() {
                return Err(ManifestError::DuplicateName { name: g.name.clone(), context: context.to_string() });
            }
        }
        Ok(Names { index })
    }

    fn get(&self, name: &str, context: &dyn fmt::Display) -> Result<usize, ManifestError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ManifestError::UnknownName { name: name.to_string(), context: context.to_string() })
    }

    fn coeffs(&self, c: &Coeffs<Value>, context: &dyn fmt::Display) -> Result<Coeffs<Exact>, ManifestError> {
        let mut out = Coeffs::new();
        for (k, v) in c {
            self.get(k, context)?;
            let r = parse_scalar(v)
                .ok_or_else(|| ManifestError::BadRational { value: v.to_string(), context: context.to_string() })?;
            out.insert(k.clone(), Exact(r));
        }
        Ok(out)
    }
}

fn check_differential(
    names: &Names,
    entries: &[DiffEntry<Value>],
    owner: &str,
) -> Result<Vec<DiffEntry<Exact>>, ManifestError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        let context = format!("{owner}differential entry {k} (d {})", e.src);
        names.get(&e.src, &context)?;
        if !seen.insert(e.src.as_str()) {
            return Err(ManifestError::DuplicateName { name: e.src.clone(), context });
        }
        out.push(DiffEntry { src: e.src.clone(), image: names.coeffs(&e.image, &context)? });
    }
    Ok(out)
}

/// Parses and checks a manifest. Syntax errors carry line and column; name
/// and scalar errors name the offending entry.
pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    let raw: Manifest<Value> = serde_json::from_str(text).map_err(|e| ManifestError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let names = Names::new(&raw.generators, "generators")?;
    let differential = check_differential(&names, &raw.differential, "")?;
    let mut pairs = BTreeSet::new();
    let mut bracket = Vec::new();
    for (k, e) in raw.bracket.iter().enumerate() {
        let context = format!("bracket entry {k} ([{}, {}])", e.left, e.right);
        let (l, r) = (names.get(&e.left, &context)?, names.get(&e.right, &context)?);
        if !pairs.insert((l.min(r), l.max(r))) {
            return Err(ManifestError::DuplicateName { name: format!("[{}, {}]", e.left, e.right), context });
        }
        bracket.push(BracketEntry {
            left: e.left.clone(),
            right: e.right.clone(),
            value: names.coeffs(&e.value, &context)?,
        });
    }
    let mut representations = BTreeMap::new();
    for (rep, spec) in &raw.representations {
        let owner = format!("representation {rep}: ");
        let basis = Names::new(&spec.basis, &format!("basis of representation {rep}"))?;
        let differential = check_differential(&basis, &spec.differential, &owner)?;
        let mut seen = BTreeSet::new();
        let mut action = Vec::new();
        for (k, e) in spec.action.iter().enumerate() {
            let context = format!("{owner}action entry {k} ({} . {})", e.generator, e.vector);
            names.get(&e.generator, &context)?;
            basis.get(&e.vector, &context)?;
            if !seen.insert((e.generator.as_str(), e.vector.as_str())) {
                return Err(ManifestError::DuplicateName { name: format!("{} . {}", e.generator, e.vector), context });
            }
            action.push(ActionEntry {
                generator: e.generator.clone(),
                vector: e.vector.clone(),
                value: basis.coeffs(&e.value, &context)?,
            });
        }
        representations.insert(rep.clone(), RepresentationSpec { basis: spec.basis.clone(), differential, action });
    }
    Ok(Manifest {
        name: raw.name,
        generators: raw.generators,
        differential,
        bracket,
        representations,
        requests: raw.requests,
    })
}

fn vector(names: &[Generator], c: &Coeffs<Exact>) -> SparseVec {
    c.iter()
        .map(|(k, v)| (names.iter().position(|g| &g.name == k).expect("checked at parse time"), v.0.clone()))
        .collect()
}

fn position(names: &[Generator], name: &str) -> usize {
    names.iter().position(|g| g.name == name).expect("checked at parse time")
}

impl Manifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    /// The dg Lie algebra, in manifest generator order. Not validated.
    pub fn lie(&self) -> DgLieAlgebra {
        let gens = &self.generators;
        let mut g = DgLieAlgebra::new(gens.iter().map(|x| (x.name.clone(), x.degree)).collect());
        for e in &self.differential {
            g.set_differential(position(gens, &e.src), vector(gens, &e.image));
        }
        for e in &self.bracket {
            g.set_bracket(position(gens, &e.left), position(gens, &e.right), vector(gens, &e.value));
        }
        g
    }

    pub fn representation(&self, name: &str) -> Result<Representation, ManifestError> {
        let spec = self.representations.get(name).ok_or_else(|| ManifestError::UnknownName {
            name: name.to_string(),
            context: "representations".to_string(),
        })?;
        let basis = &spec.basis;
        let mut m = Representation::new(basis.iter().map(|x| (x.name.clone(), x.degree)).collect());
        for e in &spec.differential {
            m.set_differential(position(basis, &e.src), vector(basis, &e.image));
        }
        for e in &spec.action {
            m.set_action(position(&self.generators, &e.generator), position(basis, &e.vector), vector(basis, &e.value));
        }
        Ok(m)
    }
}
