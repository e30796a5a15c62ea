//! Unit-tagged report values and their text/JSON rendering.
//!
//! JSON integers above 2^53 are written as decimal strings so that
//! consumers parsing numbers as doubles do not lose digits. Text output uses
//! scientific notation with six significant digits for reals and exact
//! decimal for integers.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// Largest integer a double represents exactly.
pub const JSON_SAFE_INTEGER: u64 = 1 << 53;

pub fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(small) if small <= JSON_SAFE_INTEGER => s.serialize_u64(small),
        _ => s.serialize_str(&v.to_string()),
    }
}

/// Six significant digits in scientific notation, e.g. `6.19823e6`.
pub fn sci(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.5e}")
    } else {
        format!("{v}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Real(f64),
    Integer(BigUint),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Real(v) => Some(*v),
            Value::Integer(v) => v.to_f64(),
            Value::Text(_) => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Real(v) => sci(*v),
            Value::Integer(v) => v.to_string(),
            Value::Text(t) => t.clone(),
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<BigUint> for Value {
    fn from(v: BigUint) -> Self {
        Value::Integer(v)
    }
}

impl From<u128> for Value {
    fn from(v: u128) -> Self {
        Value::Integer(BigUint::from(v))
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Integer(BigUint::from(v))
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Integer(BigUint::from(v))
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Real(v) => s.serialize_f64(*v),
            Value::Integer(v) => serialize_big(v, s),
            Value::Text(t) => s.serialize_str(t),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ValueVisitor;

        impl Visitor<'_> for ValueVisitor {
            type Value = Value;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a number or a string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Value, E> {
                Ok(Value::Integer(BigUint::from(v)))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Value, E> {
                u64::try_from(v)
                    .map(|u| Value::Integer(BigUint::from(u)))
                    .map_err(|_| E::custom("negative integer"))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Value, E> {
                Ok(Value::Real(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Value, E> {
                if !v.is_empty() && v.bytes().all(|b| b.is_ascii_digit()) {
                    Ok(Value::Integer(v.parse().map_err(E::custom)?))
                } else {
                    Ok(Value::Text(v.to_owned()))
                }
            }
        }

        d.deserialize_any(ValueVisitor)
    }
}

/// A named value with its unit (`"dimensionless"` when it has none).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: Value,
    pub unit: String,
}

impl Quantity {
    pub fn new(name: impl Into<String>, value: impl Into<Value>, unit: impl Into<String>) -> Self {
        Quantity {
            name: name.into(),
            value: value.into(),
            unit: unit.into(),
        }
    }

    fn render(&self) -> String {
        if self.unit == "dimensionless" || self.unit.is_empty() {
            format!("{} = {}", self.name, self.value.render())
        } else {
            format!("{} = {} {}", self.name, self.value.render(), self.unit)
        }
    }
}

/// Output of every CLI command and every case study: inputs and outputs as
/// unit-tagged quantities, the governing relation, and free-form notes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub relation: String,
    pub inputs: Vec<Quantity>,
    pub outputs: Vec<Quantity>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<Quantity>,
}

impl Report {
    pub fn new(name: impl Into<String>, relation: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            relation: relation.into(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            notes: Vec::new(),
            constants: Vec::new(),
        }
    }

    pub fn input(mut self, name: &str, value: impl Into<Value>, unit: &str) -> Self {
        self.inputs.push(Quantity::new(name, value, unit));
        self
    }

    pub fn output(mut self, name: &str, value: impl Into<Value>, unit: &str) -> Self {
        self.outputs.push(Quantity::new(name, value, unit));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn find_output(&self, name: &str) -> Option<&Value> {
        self.outputs.iter().find(|q| q.name == name).map(|q| &q.value)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.name);
        let _ = writeln!(out, "relation: {}", self.relation);
        let sections = [("inputs", &self.inputs), ("outputs", &self.outputs), ("constants", &self.constants)];
        for (title, items) in sections {
            if items.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{title}:");
            for q in items {
                let _ = writeln!(out, "  {}", q.render());
            }
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "notes:");
            for n in &self.notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
