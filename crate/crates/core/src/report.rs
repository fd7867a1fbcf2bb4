//! Human and JSON-lines renderings of command results.
//!
//! JSON-lines output has one object per line with sorted keys, so equal
//! inputs give byte-identical reports.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use crate::block_analysis::{analyze, Analysis, WResult};
use crate::brauer_tree::{planar_isomorphic, similar, BrauerTree, Violation};
use crate::descriptor::{DescriptorFile, ParseError};
use crate::verify::VerifyReport;
use crate::{par, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    JsonLines,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "human" => Ok(Format::Human),
            "json-lines" => Ok(Format::JsonLines),
            other => Err(format!(
                "unknown format {other:?} (expected human or json-lines)"
            )),
        }
    }
}

fn integer(n: impl ToString) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer"))
}

fn line(out: &mut String, v: Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

fn label_or_index(label: &Option<String>, kind: &str, index: usize) -> String {
    label.clone().unwrap_or_else(|| format!("{kind}[{index}]"))
}

pub fn w_result_json(w: &WResult) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("alpha".into(), Value::String(w.dade.bits()));
    m.insert("jordan".into(), integer(&w.jordan));
    m.insert(
        "signs".into(),
        Value::Array(w.signs.signs().iter().map(|s| json!(s.as_i8())).collect()),
    );
    m.insert("trivial".into(), Value::Bool(w.trivial));
    m.insert("provenance".into(), Value::String(w.provenance.to_string()));
    m
}

/// The outcome of analysing one block record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferRecord {
    pub index: usize,
    pub label: Option<String>,
    pub outcome: Result<Analysis>,
}

/// Analyses every block independently.
pub fn infer_records(file: &DescriptorFile) -> Vec<InferRecord> {
    let items: Vec<_> = file.blocks.iter().enumerate().collect();
    par::map(items, |(index, b)| InferRecord {
        index,
        label: b.label.clone(),
        outcome: analyze(b),
    })
}

pub fn render_infer(records: &[InferRecord], format: Format) -> String {
    let mut out = String::new();
    for r in records {
        let name = label_or_index(&r.label, "blocks", r.index);
        match format {
            Format::Human => match &r.outcome {
                Ok(a) => {
                    let w = &a.result;
                    let _ = writeln!(
                        out,
                        "{name}: W(B) = J_{} alpha {} signs {} trivial {} ({})",
                        w.jordan, w.dade, w.signs, w.trivial, w.provenance
                    );
                    for warning in &a.warnings {
                        let _ = writeln!(out, "  warning: {warning}");
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "{name}: error: {e}");
                }
            },
            Format::JsonLines => {
                let mut m = Map::new();
                m.insert("index".into(), json!(r.index));
                m.insert(
                    "label".into(),
                    r.label.clone().map_or(Value::Null, Value::String),
                );
                match &r.outcome {
                    Ok(a) => {
                        m.insert("status".into(), json!("ok"));
                        m.extend(w_result_json(&a.result));
                        m.insert("warnings".into(), json!(a.warnings));
                    }
                    Err(e) => {
                        m.insert("status".into(), json!("error"));
                        m.insert("error".into(), json!(e.to_string()));
                    }
                }
                line(&mut out, Value::Object(m));
            }
        }
    }
    out
}

pub fn render_parse_errors(errors: &[ParseError], format: Format) -> String {
    let mut out = String::new();
    for e in errors {
        match format {
            Format::Human => {
                let _ = writeln!(out, "parse error: {e}");
            }
            Format::JsonLines => line(
                &mut out,
                json!({
                    "status": "parse-error",
                    "path": e.path,
                    "line": e.line,
                    "column": e.column,
                    "message": e.message,
                }),
            ),
        }
    }
    out
}

pub fn render_verify(report: &VerifyReport, format: Format) -> String {
    let mut out = String::new();
    for s in &report.suites {
        match format {
            Format::Human => {
                match &s.skipped {
                    Some(why) => {
                        let _ = writeln!(out, "{}: skipped ({why})", s.suite);
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "{}: {} cases, {} mismatches",
                            s.suite,
                            s.cases,
                            s.mismatches.len()
                        );
                    }
                }
                for m in &s.mismatches {
                    let _ = writeln!(
                        out,
                        "  MISMATCH {}: {}\n    expected {}\n    oracle   {}",
                        m.case, m.inputs, m.expected, m.oracle
                    );
                }
            }
            Format::JsonLines => line(
                &mut out,
                json!({
                    "suite": s.suite.name(),
                    "cases": s.cases,
                    "skipped": s.skipped,
                    "mismatches": s.mismatches.iter().map(|m| json!({
                        "case": m.case,
                        "inputs": m.inputs,
                        "expected": m.expected,
                        "oracle": m.oracle,
                    })).collect::<Vec<_>>(),
                }),
            ),
        }
    }
    match format {
        Format::Human => {
            let _ = writeln!(
                out,
                "{}: {} cases, {} mismatches: {}",
                report.group,
                report.cases(),
                report.mismatches(),
                if report.passed() { "PASS" } else { "FAIL" }
            );
        }
        Format::JsonLines => line(
            &mut out,
            json!({
                "summary": true,
                "p": report.group.p(),
                "ell": report.group.ell(),
                "cases": report.cases(),
                "mismatches": report.mismatches(),
            }),
        ),
    }
    out
}

/// Renders the violations of every tree; the flag is true when all trees
/// are valid.
pub fn render_tree_check(trees: &[BrauerTree], format: Format) -> (String, bool) {
    let mut out = String::new();
    let mut all_valid = true;
    for (index, t) in trees.iter().enumerate() {
        let violations: Vec<Violation> = t.validate();
        all_valid &= violations.is_empty();
        let name = label_or_index(&t.label, "trees", index);
        match format {
            Format::Human => {
                if violations.is_empty() {
                    let _ = writeln!(out, "{name}: valid");
                } else {
                    let _ = writeln!(out, "{name}: {} violation(s)", violations.len());
                    for v in &violations {
                        let _ = writeln!(out, "  {v}");
                    }
                }
            }
            Format::JsonLines => line(
                &mut out,
                json!({
                    "index": index,
                    "label": t.label,
                    "valid": violations.is_empty(),
                    "violations": violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
            ),
        }
    }
    (out, all_valid)
}

/// Compares two trees; invalid trees are reported with their violations.
pub fn render_tree_compare(
    a: (&str, &BrauerTree),
    b: (&str, &BrauerTree),
    format: Format,
) -> (String, bool) {
    let va = a.1.clone().into_valid();
    let vb = b.1.clone().into_valid();
    match (va, vb) {
        (Ok(ta), Ok(tb)) => {
            let s = similar(&ta, &tb);
            let pl = planar_isomorphic(&ta, &tb);
            let out = match format {
                Format::Human => format!(
                    "{} vs {}\nsimilar: {s}\nplanar_isomorphic: {pl}\n",
                    a.0, b.0
                ),
                Format::JsonLines => {
                    let mut o = String::new();
                    line(
                        &mut o,
                        json!({"a": a.0, "b": b.0, "similar": s, "planar_isomorphic": pl}),
                    );
                    o
                }
            };
            (out, true)
        }
        (ra, rb) => {
            let mut out = String::new();
            for (name, r) in [(a.0, ra), (b.0, rb)] {
                if let Err(vs) = r {
                    let messages: Vec<String> = vs.iter().map(ToString::to_string).collect();
                    match format {
                        Format::Human => {
                            let _ = writeln!(out, "{name}: invalid tree: {}", messages.join("; "));
                        }
                        Format::JsonLines => line(
                            &mut out,
                            json!({"tree": name, "valid": false, "violations": messages}),
                        ),
                    }
                }
            }
            (out, false)
        }
    }
}
