//! Reports and their two renderings: aligned text for people, JSON with
//! exact integers and coefficient maps for machines.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use novikov_core::{LaurentPoly, RationalFunction};

use crate::document::Kind;

#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    Bool(bool),
    Int(BigInt),
    Text(String),
    Poly(LaurentPoly),
    Rational(RationalFunction),
    List(Vec<Val>),
    Record(Vec<(String, Val)>),
}

impl From<bool> for Val {
    fn from(b: bool) -> Self {
        Val::Bool(b)
    }
}

impl From<usize> for Val {
    fn from(n: usize) -> Self {
        Val::Int(BigInt::from(n))
    }
}

impl From<i64> for Val {
    fn from(n: i64) -> Self {
        Val::Int(BigInt::from(n))
    }
}

impl From<BigInt> for Val {
    fn from(n: BigInt) -> Self {
        Val::Int(n)
    }
}

impl From<&str> for Val {
    fn from(s: &str) -> Self {
        Val::Text(s.to_string())
    }
}

impl From<String> for Val {
    fn from(s: String) -> Self {
        Val::Text(s)
    }
}

impl From<LaurentPoly> for Val {
    fn from(p: LaurentPoly) -> Self {
        Val::Poly(p)
    }
}

impl From<RationalFunction> for Val {
    fn from(r: RationalFunction) -> Self {
        Val::Rational(r)
    }
}

impl<T: Into<Val>> From<Vec<T>> for Val {
    fn from(v: Vec<T>) -> Self {
        Val::List(v.into_iter().map(Into::into).collect())
    }
}

/// Builds a [`Val::Record`] from `(key, value)` pairs.
pub fn record<K: Into<String>>(fields: impl IntoIterator<Item = (K, Val)>) -> Val {
    Val::Record(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
}

fn int_json(n: &BigInt) -> Value {
    // Arbitrary precision keeps the decimal text as is.
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

/// `{"exp": coeff}`, the interchange form of a polynomial.
pub fn poly_json(p: &LaurentPoly) -> Value {
    Value::Object(p.terms().map(|(e, c)| (e.to_string(), int_json(c))).collect())
}

impl Val {
    pub fn to_json(&self) -> Value {
        match self {
            Val::Bool(b) => Value::Bool(*b),
            Val::Int(n) => int_json(n),
            Val::Text(s) => Value::String(s.clone()),
            Val::Poly(p) => poly_json(p),
            Val::Rational(r) => {
                let mut m = Map::new();
                m.insert("num".into(), poly_json(r.numerator()));
                m.insert("den".into(), poly_json(r.denominator()));
                Value::Object(m)
            }
            Val::List(v) => Value::Array(v.iter().map(Val::to_json).collect()),
            Val::Record(fields) => Value::Object(fields.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()),
        }
    }

    fn text(&self) -> String {
        match self {
            Val::Bool(b) => b.to_string(),
            Val::Int(n) => n.to_string(),
            Val::Text(s) => s.clone(),
            Val::Poly(p) => p.to_string(),
            Val::Rational(r) => r.to_string(),
            Val::List(v) => format!("[{}]", v.iter().map(Val::text).collect::<Vec<_>>().join(", ")),
            Val::Record(fields) => fields
                .iter()
                .map(|(k, v)| format!("{k} = {}", v.text()))
                .collect::<Vec<_>>()
                .join(", "),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, Val)>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Val>) -> &mut Self {
        self.entries.push((key.into(), value.into()));
        self
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Val>) -> Self {
        self.push(key, value);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub kind: Kind,
    pub title: String,
    /// False when some diagonalization stopped at the operation cap.
    pub conclusive: bool,
    pub sections: Vec<Section>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

impl Report {
    pub fn new(kind: Kind, title: impl Into<String>) -> Self {
        Report {
            kind,
            title: title.into(),
            conclusive: true,
            sections: Vec::new(),
        }
    }

    pub fn section(&mut self, s: Section) -> &mut Self {
        self.sections.push(s);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        root.insert("kind".into(), Value::String(self.kind.name().into()));
        root.insert("title".into(), Value::String(self.title.clone()));
        root.insert("conclusive".into(), Value::Bool(self.conclusive));
        for s in &self.sections {
            let body = s.entries.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
            root.insert(s.name.clone(), Value::Object(body));
        }
        Value::Object(root)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.title, self.kind);
        if !self.conclusive {
            let _ = writeln!(out, "  (inconclusive: torsion counts are lower bounds)");
        }
        for s in &self.sections {
            let _ = writeln!(out, "{}:", s.name);
            let width = s.entries.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in &s.entries {
                let _ = writeln!(out, "  {k:<width$}  {}", v.text());
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}
