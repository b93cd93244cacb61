use std::path::Path;

use serde_json::Value;
use specdec_core::classification::corpus;
use specdec_core::comma::GGroup;
use specdec_core::group::named::parse_named;
use specdec_core::io::{parse_ggroup, parse_matrix, parse_ring, BaseChoice};
use specdec_core::ring::FiniteRing;
use specdec_core::snf::IntegerMatrix;
use specdec_core::{Error, Limits, Result};

pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InputParse(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::InputParse(format!("{path}: {e}")))
}

fn stem(path: &str) -> String {
    Path::new(path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string())
}

fn corpus_bound(spec: &str) -> Result<usize> {
    spec.parse()
        .map_err(|_| Error::InputParse(format!("corpus:{spec} needs an integer bound")))
}

/// Expands `corpus:<n>`, `named:<spec>` and JSON paths into groups over a base.
pub fn groups(inputs: &[String], base: BaseChoice, limits: &Limits) -> Result<Vec<Named<GGroup>>> {
    let mut out = Vec::new();
    for input in inputs {
        if let Some(n) = input.strip_prefix("corpus:") {
            for e in corpus(corpus_bound(n)?) {
                out.push(Named {
                    name: e.name,
                    value: base.apply(e.group),
                });
            }
        } else if let Some(spec) = input.strip_prefix("named:") {
            let g = parse_named(spec)?;
            out.push(Named {
                name: g.label(),
                value: base.apply(g),
            });
        } else {
            let v = read_json(input)?;
            let x = parse_ggroup(&v, base, limits)?;
            out.push(Named {
                name: x.carrier().name().map(String::from).unwrap_or_else(|| stem(input)),
                value: x,
            });
        }
    }
    Ok(out)
}

/// Inline JSON (starting with `[` or `{`) or a file path.
fn json_arg(input: &str) -> Result<(String, Value)> {
    let t = input.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        let v = serde_json::from_str(t).map_err(|e| Error::InputParse(format!("inline JSON: {e}")))?;
        Ok((t.to_string(), v))
    } else {
        Ok((stem(input), read_json(input)?))
    }
}

pub fn matrices(inputs: &[String]) -> Result<Vec<Named<IntegerMatrix>>> {
    inputs
        .iter()
        .map(|i| {
            let (name, v) = json_arg(i)?;
            Ok(Named {
                name,
                value: parse_matrix(&v)?,
            })
        })
        .collect()
}

/// `modular:<m>`, inline JSON or a file path.
pub fn rings(inputs: &[String]) -> Result<Vec<Named<FiniteRing>>> {
    inputs
        .iter()
        .map(|i| {
            let ring = if let Some(m) = i.strip_prefix("modular:") {
                let m = m
                    .parse()
                    .map_err(|_| Error::InputParse(format!("modular:{m} needs an integer modulus")))?;
                FiniteRing::modular(m)?
            } else {
                let (name, v) = json_arg(i)?;
                let r = parse_ring(&v)?;
                if v.get("name").is_some() || v.get("format").and_then(Value::as_str) == Some("modular") {
                    r
                } else {
                    r.with_name(name)
                }
            };
            Ok(Named {
                name: ring.label(),
                value: ring,
            })
        })
        .collect()
}
