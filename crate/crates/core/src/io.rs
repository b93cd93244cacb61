//! JSON ingestion for groups, groups over a base, rings and integer matrices.
//!
//! Groups: `{"format":"cayley","name":..,"order":n,"table":[[..]]}`,
//! `{"format":"perm","name":..,"degree":d,"generators":[[..]]}`,
//! `{"format":"named","spec":"quaternion:3"}`, or a bare named spec string.
//!
//! Groups over a base: `{"base":<group>|"trivial","carrier":<group>,
//! "morphism":[..]|"identity"|"trivial"}`. A bare group gets the default base.
//!
//! Rings: `{"format":"modular","modulus":m}` or
//! `{"format":"tables","order":n,"add":[[..]],"mul":[[..]]}`.
//!
//! Matrices: an array of integer rows, or `{"cols":r,"rows":[[..]]}` (needed
//! when there are no rows). Entries may be numbers or decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::comma::GGroup;
use crate::group::named::{parse_named, trivial};
use crate::group::FiniteGroup;
use crate::ring::FiniteRing;
use crate::snf::IntegerMatrix;
use crate::{Error, Limits, Result};

/// How a bare group is turned into a group over a base.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BaseChoice {
    /// Trivial base group, no action.
    #[default]
    Trivial,
    /// The group over itself by the identity; the action is conjugation.
    Identity,
}

impl FromStr for BaseChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(BaseChoice::Trivial),
            "identity" => Ok(BaseChoice::Identity),
            _ => Err(Error::InputParse(format!("unknown base {s:?}, expected trivial or identity"))),
        }
    }
}

impl BaseChoice {
    pub fn apply(self, g: FiniteGroup) -> GGroup {
        match self {
            BaseChoice::Trivial => GGroup::plain(g),
            BaseChoice::Identity => GGroup::over_itself(g),
        }
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::InputParse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn as_index(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("expected a nonnegative integer, got {v}")))
}

fn index_list(v: &Value) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("expected an array, got {v}")))?
        .iter()
        .map(as_index)
        .collect()
}

fn index_grid(v: &Value) -> Result<Vec<Vec<usize>>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("expected an array of rows, got {v}")))?
        .iter()
        .map(index_list)
        .collect()
}

pub fn parse_group(v: &Value, limits: &Limits) -> Result<FiniteGroup> {
    if let Some(spec) = v.as_str() {
        return parse_named(spec);
    }
    let format = field(v, "format")?
        .as_str()
        .ok_or_else(|| parse_err("format must be a string"))?;
    let name = v.get("name").and_then(Value::as_str);
    let g = match format {
        "cayley" => {
            let table = index_grid(field(v, "table")?)?;
            if let Some(order) = v.get("order") {
                if as_index(order)? != table.len() {
                    return Err(parse_err(format!("order {order} disagrees with a table of {} rows", table.len())));
                }
            }
            FiniteGroup::from_cayley_table_capped(table, limits.group_order)?
        }
        "perm" | "permutation" => {
            let degree = as_index(field(v, "degree")?)?;
            let gens = index_grid(field(v, "generators")?)?;
            FiniteGroup::from_permutation_generators_capped(degree, &gens, limits.group_order)?
        }
        "named" => parse_named(field(v, "spec")?.as_str().ok_or_else(|| parse_err("spec must be a string"))?)?,
        other => return Err(parse_err(format!("unknown group format {other:?}"))),
    };
    Ok(match name {
        Some(n) => g.with_name(n),
        None => g,
    })
}

pub fn parse_ggroup(v: &Value, default_base: BaseChoice, limits: &Limits) -> Result<GGroup> {
    let Some(carrier) = v.get("carrier") else {
        return Ok(default_base.apply(parse_group(v, limits)?));
    };
    let carrier = parse_group(carrier, limits)?;
    let base = match v.get("base") {
        None => trivial(),
        Some(Value::String(s)) if s == "trivial" => trivial(),
        Some(b) => parse_group(b, limits)?,
    };
    match v.get("morphism") {
        None => Ok(GGroup::with_trivial_morphism(base, carrier)),
        Some(Value::String(s)) if s == "trivial" => Ok(GGroup::with_trivial_morphism(base, carrier)),
        Some(Value::String(s)) if s == "identity" => {
            if base.table_rows() != carrier.table_rows() {
                return Err(Error::NotHomomorphism("identity morphism needs base = carrier".into()));
            }
            Ok(GGroup::over_itself(carrier))
        }
        Some(m) => GGroup::new(base, carrier, index_list(m)?),
    }
}

pub fn parse_ring(v: &Value) -> Result<FiniteRing> {
    let format = field(v, "format")?
        .as_str()
        .ok_or_else(|| parse_err("format must be a string"))?;
    let r = match format {
        "modular" => FiniteRing::modular(as_index(field(v, "modulus")?)?)?,
        "tables" => {
            let add = index_grid(field(v, "add")?)?;
            let mul = index_grid(field(v, "mul")?)?;
            if let Some(order) = v.get("order") {
                if as_index(order)? != add.len() {
                    return Err(parse_err("order disagrees with the table size"));
                }
            }
            FiniteRing::from_tables(add, mul)?
        }
        other => return Err(parse_err(format!("unknown ring format {other:?}"))),
    };
    Ok(match v.get("name").and_then(Value::as_str) {
        Some(n) => r.with_name(n),
        None => r,
    })
}

fn big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| parse_err(format!("matrix entry {n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| parse_err(format!("matrix entry {s:?} is not an integer"))),
        _ => Err(parse_err(format!("matrix entry {v} is not an integer"))),
    }
}

/// Parses a matrix and its column count.
pub fn parse_matrix(v: &Value) -> Result<IntegerMatrix> {
    let (cols, rows) = match v {
        Value::Array(rows) => {
            let cols = rows
                .first()
                .map(|r| r.as_array().map_or(0, Vec::len))
                .ok_or_else(|| parse_err("an empty matrix needs the {\"cols\":..,\"rows\":[]} form"))?;
            (cols, rows)
        }
        Value::Object(_) => (
            as_index(field(v, "cols")?)?,
            field(v, "rows")?
                .as_array()
                .ok_or_else(|| parse_err("rows must be an array"))?,
        ),
        _ => return Err(parse_err("a matrix is an array of rows")),
    };
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("matrix rows must be arrays"))?
                .iter()
                .map(big)
                .collect()
        })
        .collect::<Result<_>>()?;
    IntegerMatrix::from_rows(cols, &rows)
}

/// The Cayley-table form of a group, loadable by [`parse_group`].
pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({
        "format": "cayley",
        "name": g.label(),
        "order": g.order(),
        "table": g.table_rows(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::cyclic;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn group_formats() {
        let g = parse_group(&json!({"format":"cayley","name":"C2","order":2,"table":[[0,1],[1,0]]}), &lim()).unwrap();
        assert_eq!((g.order(), g.label().as_str()), (2, "C2"));
        let s3 = parse_group(&json!({"format":"perm","degree":3,"generators":[[1,2,0],[1,0,2]]}), &lim()).unwrap();
        assert_eq!(s3.order(), 6);
        let q = parse_group(&json!({"format":"named","spec":"quaternion:3"}), &lim()).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(parse_group(&json!("cyclic:5"), &lim()).unwrap().order(), 5);
    }

    #[test]
    fn identity_must_be_zero() {
        let r = parse_group(&json!({"format":"cayley","table":[[1,0],[0,1]]}), &lim());
        assert!(matches!(r, Err(Error::NoIdentityAtZero)));
    }

    #[test]
    fn roundtrip() {
        let g = cyclic(6);
        let back = parse_group(&group_to_json(&g), &lim()).unwrap();
        assert_eq!(back.table_rows(), g.table_rows());
    }

    #[test]
    fn ggroups() {
        let x = parse_ggroup(&json!({"base":"trivial","carrier":"dihedral:4"}), BaseChoice::Trivial, &lim()).unwrap();
        assert_eq!(x.base().order(), 1);
        let x = parse_ggroup(
            &json!({"base":"cyclic:2","carrier":"symmetric:3","morphism":[0,3]}),
            BaseChoice::Trivial,
            &lim(),
        )
        .unwrap();
        assert_eq!(x.acting_elements(), [0, 3]);
        let bad = parse_ggroup(
            &json!({"base":"cyclic:3","carrier":"cyclic:2","morphism":[0,1,1]}),
            BaseChoice::Trivial,
            &lim(),
        );
        assert!(bad.is_err());
        let own = parse_ggroup(&json!("symmetric:3"), BaseChoice::Identity, &lim()).unwrap();
        assert_eq!(own.base().order(), 6);
    }

    #[test]
    fn rings_and_matrices() {
        assert_eq!(parse_ring(&json!({"format":"modular","modulus":12})).unwrap().order(), 12);
        let m = parse_matrix(&json!([[2, "-3"], [0, 4]])).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        let e = parse_matrix(&json!({"cols":2,"rows":[]})).unwrap();
        assert_eq!((e.rows(), e.cols()), (0, 2));
        assert!(parse_matrix(&json!([[1, 2], [3]])).is_err());
    }
}
