//! The versioned JSON descriptor format.
//!
//! ```json
//! {
//!   "version": 1,
//!   "blocks": [
//!     { "label": "B0", "p": 3, "ell": 2, "chi_values": [2, -1],
//!       "is_principal": false, "inertial_index": 2 }
//!   ],
//!   "trees": [
//!     { "label": "path", "p": 3, "ell": 2,
//!       "vertices": ["a", "b", "c"],
//!       "edges": [["a", "b"], ["b", "c"]],
//!       "orders": { "a": ["b"], "b": ["a", "c"], "c": ["b"] },
//!       "exceptional": "b", "multiplicity": 4 }
//!   ]
//! }
//! ```
//!
//! Integers are decimal with no fraction or exponent and may be arbitrarily
//! large. A `chi_values` entry is either one integer or an array of
//! integers sampled from the same layer. Unknown fields are rejected.
//! Tree records are accepted even when they violate the tree invariants;
//! those are reported by [`BrauerTree::validate`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer};
use serde_json::{Map, Number, Value};

use crate::block_analysis::BlockDescriptor;
use crate::brauer_tree::BrauerTree;
use crate::{is_prime, GroupSpec};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DescriptorFile {
    pub blocks: Vec<BlockDescriptor>,
    pub trees: Vec<BrauerTree>,
}

/// A parse failure, located by JSON path and, for syntax-level problems,
/// by line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, "line {l}, column {c}: ")?;
        }
        if !self.path.is_empty() && self.path != "." {
            write!(f, "{}: ", self.path)?;
        }
        f.write_str(&self.message)
    }
}

struct Integer(BigInt);

fn integer_of(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| format!("integer required (got {n})"))
        }
        other => Err(format!("integer required (got {other})")),
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        integer_of(&Value::deserialize(d)?)
            .map(Integer)
            .map_err(D::Error::custom)
    }
}

struct Layer(Vec<BigInt>);

impl<'de> Deserialize<'de> for Layer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Array(items) => items
                .iter()
                .map(integer_of)
                .collect::<Result<_, _>>()
                .map(Layer)
                .map_err(D::Error::custom),
            other => integer_of(&other)
                .map(|v| Layer(vec![v]))
                .map_err(D::Error::custom),
        }
    }
}

struct Prime(u64);

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let Integer(n) = Integer::deserialize(d)?;
        match u64::try_from(&n) {
            Ok(p) if is_prime(p) => Ok(Prime(p)),
            _ => Err(D::Error::custom(format!("p must be prime (got {n})"))),
        }
    }
}

struct Natural(BigUint);

impl<'de> Deserialize<'de> for Natural {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let Integer(n) = Integer::deserialize(d)?;
        n.to_biguint()
            .map(Natural)
            .ok_or_else(|| D::Error::custom(format!("non-negative integer required (got {n})")))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    version: u64,
    #[serde(default)]
    blocks: Vec<RawBlock>,
    #[serde(default)]
    trees: Vec<RawTree>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlock {
    label: Option<String>,
    p: Prime,
    ell: u32,
    #[serde(default)]
    chi_values: Vec<Layer>,
    is_principal: Option<bool>,
    centralizer_equal: Option<bool>,
    normalizer_equal: Option<bool>,
    inertial_index: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTree {
    label: Option<String>,
    p: Prime,
    ell: u32,
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    orders: BTreeMap<String, Vec<String>>,
    exceptional: Option<String>,
    multiplicity: Option<Natural>,
}

fn group_at(p: u64, ell: u32, path: String, errors: &mut Vec<ParseError>) -> Option<GroupSpec> {
    match GroupSpec::new(p, ell) {
        Ok(g) => Some(g),
        Err(e) => {
            errors.push(semantic(path, e.to_string()));
            None
        }
    }
}

fn semantic(path: String, message: String) -> ParseError {
    ParseError {
        path,
        line: None,
        column: None,
        message,
    }
}

/// Parses and validates a descriptor file. All semantic problems are
/// reported together; a syntax or type error stops at the first one.
pub fn parse_descriptor(text: &str) -> Result<DescriptorFile, Vec<ParseError>> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let mut message = inner.to_string();
        // serde_json appends its own position; keep it in the fields instead.
        if let Some(at) = message.rfind(" at line ") {
            message.truncate(at);
        }
        vec![ParseError {
            path,
            line: Some(inner.line()),
            column: Some(inner.column()),
            message,
        }]
    })?;

    let mut errors = Vec::new();
    if raw.version != FORMAT_VERSION {
        errors.push(semantic(
            "version".into(),
            format!(
                "unsupported version {} (expected {FORMAT_VERSION})",
                raw.version
            ),
        ));
    }
    let mut file = DescriptorFile::default();
    for (k, b) in raw.blocks.into_iter().enumerate() {
        let Some(group) = group_at(b.p.0, b.ell, format!("blocks[{k}].ell"), &mut errors) else {
            continue;
        };
        let d = BlockDescriptor {
            label: b.label,
            group,
            chi: b.chi_values.into_iter().map(|l| l.0).collect(),
            is_principal: b.is_principal,
            centralizer_equal: b.centralizer_equal,
            normalizer_equal: b.normalizer_equal,
            inertial_index: b.inertial_index,
        };
        errors.extend(
            d.schema_problems()
                .into_iter()
                .map(|m| semantic(format!("blocks[{k}]"), m)),
        );
        file.blocks.push(d);
    }
    for (k, t) in raw.trees.into_iter().enumerate() {
        let Some(group) = group_at(t.p.0, t.ell, format!("trees[{k}].ell"), &mut errors) else {
            continue;
        };
        file.trees.push(BrauerTree {
            label: t.label,
            group,
            vertices: t.vertices,
            edges: t.edges,
            orders: t.orders,
            exceptional: t.exceptional,
            multiplicity: t.multiplicity.map_or_else(BigUint::one, |m| m.0),
        });
    }
    if errors.is_empty() {
        Ok(file)
    } else {
        Err(errors)
    }
}

fn number(n: impl ToString) -> Value {
    Value::Number(
        Number::from_str(&n.to_string()).expect("decimal integers are valid JSON numbers"),
    )
}

fn strings<'a>(items: impl IntoIterator<Item = &'a String>) -> Value {
    Value::Array(items.into_iter().cloned().map(Value::String).collect())
}

fn group_fields(map: &mut Map<String, Value>, label: &Option<String>, group: &GroupSpec) {
    if let Some(l) = label {
        map.insert("label".into(), Value::String(l.clone()));
    }
    map.insert("p".into(), number(group.p()));
    map.insert("ell".into(), number(group.ell()));
}

pub fn block_record(b: &BlockDescriptor) -> Value {
    let mut m = Map::new();
    group_fields(&mut m, &b.label, &b.group);
    let chi = b
        .chi
        .iter()
        .map(|layer| match layer.as_slice() {
            [single] => number(single),
            many => Value::Array(many.iter().map(number).collect()),
        })
        .collect();
    m.insert("chi_values".into(), Value::Array(chi));
    for (key, flag) in [
        ("is_principal", b.is_principal),
        ("centralizer_equal", b.centralizer_equal),
        ("normalizer_equal", b.normalizer_equal),
    ] {
        if let Some(f) = flag {
            m.insert(key.into(), Value::Bool(f));
        }
    }
    if let Some(e) = b.inertial_index {
        m.insert("inertial_index".into(), number(e));
    }
    Value::Object(m)
}

pub fn tree_record(t: &BrauerTree) -> Value {
    let mut m = Map::new();
    group_fields(&mut m, &t.label, &t.group);
    m.insert("vertices".into(), strings(&t.vertices));
    m.insert(
        "edges".into(),
        Value::Array(t.edges.iter().map(|(a, b)| strings([a, b])).collect()),
    );
    m.insert(
        "orders".into(),
        Value::Object(
            t.orders
                .iter()
                .map(|(v, o)| (v.clone(), strings(o)))
                .collect(),
        ),
    );
    if let Some(x) = &t.exceptional {
        m.insert("exceptional".into(), Value::String(x.clone()));
    }
    m.insert("multiplicity".into(), number(&t.multiplicity));
    Value::Object(m)
}

/// Pretty-printed JSON with sorted keys, ending in a newline.
pub fn emit_descriptor(file: &DescriptorFile) -> String {
    let mut m = Map::new();
    m.insert("version".into(), number(FORMAT_VERSION));
    m.insert(
        "blocks".into(),
        Value::Array(file.blocks.iter().map(block_record).collect()),
    );
    if !file.trees.is_empty() {
        m.insert(
            "trees".into(),
            Value::Array(file.trees.iter().map(tree_record).collect()),
        );
    }
    let mut out = serde_json::to_string_pretty(&Value::Object(m)).expect("values serialize");
    out.push('\n');
    out
}
