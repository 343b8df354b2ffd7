//! Job documents: JSON syntax, parsed by hand so every error carries the
//! path of the offending value.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::Value;

use novikov_core::complexes::{AnyComplex, ChainComplex, Grade};
use novikov_core::fundomain::AlgebraicFundamentalDomain;
use novikov_core::linalg::Matrix;
use novikov_core::models::SeifertData;
use novikov_core::{Direction, LaurentPoly, RationalFunction, DEFAULT_PRECISION};

use crate::CliError;

/// Largest accepted exponent magnitude; keeps exponent sums far from
/// `i64` overflow.
pub const MAX_EXPONENT: i64 = 1 << 24;
/// Largest accepted rank in any degree.
pub const MAX_RANK: usize = 512;
/// Largest accepted number of degrees in a complex.
pub const MAX_DEGREES: usize = 512;
/// Largest accepted series precision.
pub const MAX_PRECISION: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    ComplexHomology,
    Novikov,
    Domination,
    Fundomain,
    MappingTorus,
    Knot,
    Inequalities,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::ComplexHomology,
        Kind::Novikov,
        Kind::Domination,
        Kind::Fundomain,
        Kind::MappingTorus,
        Kind::Knot,
        Kind::Inequalities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::ComplexHomology => "complex-homology",
            Kind::Novikov => "novikov",
            Kind::Domination => "domination",
            Kind::Fundomain => "fundomain",
            Kind::MappingTorus => "mapping-torus",
            Kind::Knot => "knot",
            Kind::Inequalities => "inequalities",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
            format!("unknown kind `{s}`; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub precision: usize,
    pub direction: Direction,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            precision: DEFAULT_PRECISION,
            direction: Direction::Plus,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Payload {
    Complex(AnyComplex),
    Fundomain(AlgebraicFundamentalDomain),
    MappingTorus {
        complex: ChainComplex<BigInt>,
        h: BTreeMap<i64, Matrix<BigInt>>,
        orientation: Direction,
    },
    Knot(SeifertData),
    Inequalities {
        complex: AnyComplex,
        counts: Option<BTreeMap<i64, usize>>,
    },
}

#[derive(Clone, Debug)]
pub struct JobDocument {
    pub kind: Kind,
    pub options: Options,
    pub payload: Payload,
}

/// A JSON value together with its path from the document root.
#[derive(Clone)]
struct Node<'a> {
    value: &'a Value,
    path: String,
}

fn parse_err(path: &str, reason: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.to_string(),
        reason: reason.into(),
    }
}

fn validation(path: &str, source: novikov_core::Error) -> CliError {
    CliError::Validation {
        path: path.to_string(),
        source,
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

impl<'a> Node<'a> {
    fn root(value: &'a Value) -> Self {
        Node {
            value,
            path: "$".to_string(),
        }
    }

    fn fail(&self, reason: impl Into<String>) -> CliError {
        parse_err(&self.path, reason)
    }

    fn expected(&self, what: &str) -> CliError {
        self.fail(format!("expected {what}, found {}", type_name(self.value)))
    }

    fn object(&self) -> Result<&'a serde_json::Map<String, Value>, CliError> {
        self.value.as_object().ok_or_else(|| self.expected("an object"))
    }

    fn array(&self) -> Result<&'a Vec<Value>, CliError> {
        self.value.as_array().ok_or_else(|| self.expected("an array"))
    }

    fn string(&self) -> Result<&'a str, CliError> {
        self.value.as_str().ok_or_else(|| self.expected("a string"))
    }

    fn integer(&self) -> Result<BigInt, CliError> {
        match self.value {
            // With arbitrary precision enabled the literal text is kept.
            Value::Number(n) => {
                BigInt::from_str(&n.to_string()).map_err(|_| self.fail(format!("expected an integer, found {n}")))
            }
            _ => Err(self.expected("an integer")),
        }
    }

    fn small<T: TryFrom<BigInt>>(&self, what: &str) -> Result<T, CliError> {
        let n = self.integer()?;
        T::try_from(n.clone()).map_err(|_| self.fail(format!("{n} is out of range for {what}")))
    }

    fn get(&self, key: &str) -> Result<Option<Node<'a>>, CliError> {
        Ok(self.object()?.get(key).map(|value| Node {
            value,
            path: format!("{}.{key}", self.path),
        }))
    }

    fn required(&self, key: &str) -> Result<Node<'a>, CliError> {
        self.get(key)?
            .ok_or_else(|| self.fail(format!("missing field `{key}`")))
    }

    fn entries(&self) -> Result<Vec<(&'a str, Node<'a>)>, CliError> {
        Ok(self
            .object()?
            .iter()
            .map(|(k, value)| {
                (
                    k.as_str(),
                    Node {
                        value,
                        path: format!("{}.{k}", self.path),
                    },
                )
            })
            .collect())
    }

    fn items(&self) -> Result<Vec<Node<'a>>, CliError> {
        Ok(self
            .array()?
            .iter()
            .enumerate()
            .map(|(i, value)| Node {
                value,
                path: format!("{}[{i}]", self.path),
            })
            .collect())
    }

    fn only(&self, allowed: &[&str]) -> Result<(), CliError> {
        for key in self.object()?.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(self.fail(format!("unknown field `{key}`; expected one of {}", allowed.join(", "))));
            }
        }
        Ok(())
    }
}

fn parse_key(node: &Node, key: &str) -> Result<i64, CliError> {
    let k = key
        .parse::<i64>()
        .map_err(|_| node.fail(format!("key `{key}` is not a decimal integer")))?;
    if k.abs() > MAX_EXPONENT {
        return Err(node.fail(format!("key {k} exceeds the limit of {MAX_EXPONENT} in magnitude")));
    }
    Ok(k)
}

/// An entry of a matrix, at the narrowest grade that holds it.
#[derive(Clone, Debug)]
enum Entry {
    Int(BigInt),
    Poly(LaurentPoly),
    Rational(RationalFunction),
}

impl Entry {
    fn grade(&self) -> Grade {
        match self {
            Entry::Int(_) => Grade::Integer,
            Entry::Poly(_) => Grade::Laurent,
            Entry::Rational(_) => Grade::Rational,
        }
    }

    fn to_poly(&self) -> Option<LaurentPoly> {
        match self {
            Entry::Int(n) => Some(LaurentPoly::constant(n.clone())),
            Entry::Poly(p) => Some(p.clone()),
            Entry::Rational(_) => None,
        }
    }

    fn to_rational(&self) -> RationalFunction {
        match self {
            Entry::Rational(r) => r.clone(),
            other => RationalFunction::from_poly(other.to_poly().expect("not rational")),
        }
    }
}

/// `{"exp": coeff, ...}`; a bare integer is a constant.
fn parse_poly(node: &Node) -> Result<LaurentPoly, CliError> {
    if let Value::Number(_) = node.value {
        return Ok(LaurentPoly::constant(node.integer()?));
    }
    let mut terms = BTreeMap::new();
    for (key, child) in node.entries()? {
        terms.insert(parse_key(node, key)?, child.integer()?);
    }
    Ok(LaurentPoly::from_map(terms))
}

fn parse_entry(node: &Node) -> Result<Entry, CliError> {
    match node.value {
        Value::Number(_) => Ok(Entry::Int(node.integer()?)),
        Value::Object(map) if map.contains_key("num") || map.contains_key("den") => {
            node.only(&["num", "den"])?;
            let num = parse_poly(&node.required("num")?)?;
            let den = parse_poly(&node.required("den")?)?;
            RationalFunction::new(num, den)
                .map(Entry::Rational)
                .map_err(|e| node.fail(e.to_string()))
        }
        Value::Object(_) => Ok(Entry::Poly(parse_poly(node)?)),
        _ => Err(node.expected("an integer, a coefficient map or a num/den pair")),
    }
}

/// Grid of entries with a checked shape.
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Entry>,
    path: String,
}

impl RawMatrix {
    fn grade(&self) -> Grade {
        self.entries.iter().map(Entry::grade).max().unwrap_or(Grade::Integer)
    }

    fn integer(&self) -> Result<Matrix<BigInt>, CliError> {
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                Entry::Int(n) => Ok(n.clone()),
                _ => Err(parse_err(&self.path, "expected integer entries")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_vec(self.rows, self.cols, entries).expect("shape checked"))
    }

    fn laurent(&self) -> Result<Matrix<LaurentPoly>, CliError> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                e.to_poly()
                    .ok_or_else(|| parse_err(&self.path, "expected Laurent polynomial entries"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_vec(self.rows, self.cols, entries).expect("shape checked"))
    }

    fn rational(&self) -> Matrix<RationalFunction> {
        Matrix::from_vec(
            self.rows,
            self.cols,
            self.entries.iter().map(Entry::to_rational).collect(),
        )
        .expect("shape checked")
    }
}

fn parse_matrix(node: &Node, rows: usize, cols: usize) -> Result<RawMatrix, CliError> {
    let row_nodes = node.items()?;
    if row_nodes.len() != rows {
        return Err(node.fail(format!("expected {rows} rows, found {}", row_nodes.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in &row_nodes {
        let cells = row.items()?;
        if cells.len() != cols {
            return Err(row.fail(format!("expected {cols} entries, found {}", cells.len())));
        }
        for cell in &cells {
            entries.push(parse_entry(cell)?);
        }
    }
    Ok(RawMatrix {
        rows,
        cols,
        entries,
        path: node.path.clone(),
    })
}

/// `{"degree": matrix, ...}` with shapes given by `shape(degree)`.
fn parse_blocks(
    node: &Node,
    shape: impl Fn(i64) -> Option<(usize, usize)>,
) -> Result<BTreeMap<i64, RawMatrix>, CliError> {
    let mut out = BTreeMap::new();
    for (key, child) in node.entries()? {
        let degree = parse_key(node, key)?;
        let (rows, cols) =
            shape(degree).ok_or_else(|| child.fail(format!("degree {degree} lies outside the complex")))?;
        out.insert(degree, parse_matrix(&child, rows, cols)?);
    }
    Ok(out)
}

fn parse_grade(node: &Node) -> Result<Grade, CliError> {
    match node.string()? {
        "integer" => Ok(Grade::Integer),
        "laurent" => Ok(Grade::Laurent),
        "rational" => Ok(Grade::Rational),
        other => Err(node.fail(format!(
            "unknown grade `{other}`; expected integer, laurent or rational"
        ))),
    }
}

/// `{"lo"?, "hi"?, "ranks", "differentials"?, "grade"?}`.
fn parse_complex(node: &Node) -> Result<AnyComplex, CliError> {
    node.only(&["grade", "lo", "hi", "ranks", "differentials"])?;
    let lo: i64 = match node.get("lo")? {
        Some(n) => n.small("a degree")?,
        None => 0,
    };
    let ranks = node
        .required("ranks")?
        .items()?
        .iter()
        .map(|n| {
            let r = n.small::<usize>("a rank")?;
            if r > MAX_RANK {
                return Err(n.fail(format!("rank {r} exceeds the limit of {MAX_RANK}")));
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if ranks.len() > MAX_DEGREES {
        return Err(node.fail(format!("{} degrees exceed the limit of {MAX_DEGREES}", ranks.len())));
    }
    if lo.abs() > MAX_EXPONENT {
        return Err(node.fail(format!("lo = {lo} exceeds the limit of {MAX_EXPONENT} in magnitude")));
    }
    let hi = lo + ranks.len() as i64 - 1;
    if let Some(h) = node.get("hi")? {
        let declared: i64 = h.small("a degree")?;
        if declared != hi {
            return Err(h.fail(format!(
                "hi = {declared} disagrees with lo = {lo} and {} ranks",
                ranks.len()
            )));
        }
    }
    let rank = |i: i64| {
        if (lo..=hi).contains(&i) {
            ranks[(i - lo) as usize]
        } else {
            0
        }
    };
    let diffs = match node.get("differentials")? {
        Some(d) => parse_blocks(&d, |i| (i > lo && i <= hi).then(|| (rank(i - 1), rank(i))))?,
        None => BTreeMap::new(),
    };
    let inferred = diffs.values().map(RawMatrix::grade).max().unwrap_or(Grade::Integer);
    let grade = match node.get("grade")? {
        Some(g) => {
            let declared = parse_grade(&g)?;
            if declared < inferred {
                return Err(g.fail(format!(
                    "declared grade {} but entries need {}",
                    declared.name(),
                    inferred.name()
                )));
            }
            declared
        }
        None => inferred,
    };
    let wrap = |e| validation(&node.path, e);
    Ok(match grade {
        Grade::Integer => {
            let m = diffs
                .iter()
                .map(|(i, d)| Ok((*i, d.integer()?)))
                .collect::<Result<_, CliError>>()?;
            AnyComplex::Integer(ChainComplex::new(lo, ranks, m).map_err(wrap)?)
        }
        Grade::Laurent => {
            let m = diffs
                .iter()
                .map(|(i, d)| Ok((*i, d.laurent()?)))
                .collect::<Result<_, CliError>>()?;
            AnyComplex::Laurent(ChainComplex::new(lo, ranks, m).map_err(wrap)?)
        }
        Grade::Rational => {
            let m = diffs.iter().map(|(i, d)| (*i, d.rational())).collect();
            AnyComplex::Rational(ChainComplex::new(lo, ranks, m).map_err(wrap)?)
        }
    })
}

fn integer_complex(node: &Node) -> Result<ChainComplex<BigInt>, CliError> {
    match parse_complex(node)? {
        AnyComplex::Integer(c) => Ok(c),
        other => Err(node.fail(format!(
            "expected an integer complex, found grade {}",
            other.grade().name()
        ))),
    }
}

fn integer_blocks(
    node: Option<Node>,
    shape: impl Fn(i64) -> Option<(usize, usize)>,
) -> Result<BTreeMap<i64, Matrix<BigInt>>, CliError> {
    let Some(node) = node else {
        return Ok(BTreeMap::new());
    };
    parse_blocks(&node, shape)?
        .into_iter()
        .map(|(i, m)| Ok((i, m.integer()?)))
        .collect()
}

/// Shape of a degree-preserving self-map of `c`.
fn square_in(c: &ChainComplex<BigInt>) -> impl Fn(i64) -> Option<(usize, usize)> + '_ {
    move |i| {
        c.range()
            .filter(|(lo, hi)| (*lo..=*hi).contains(&i))
            .map(|_| (c.rank(i), c.rank(i)))
    }
}

fn parse_direction(node: &Node) -> Result<Direction, CliError> {
    match node.string()? {
        "plus" => Ok(Direction::Plus),
        "minus" => Ok(Direction::Minus),
        other => Err(node.fail(format!("unknown direction `{other}`; expected plus or minus"))),
    }
}

fn parse_options(node: Option<Node>) -> Result<Options, CliError> {
    let mut options = Options::default();
    let Some(node) = node else {
        return Ok(options);
    };
    node.only(&["precision", "direction"])?;
    if let Some(k) = node.get("precision")? {
        options.precision = k.small("a precision")?;
        if options.precision > MAX_PRECISION {
            return Err(k.fail(format!("precision exceeds the limit of {MAX_PRECISION}")));
        }
    }
    if let Some(d) = node.get("direction")? {
        options.direction = parse_direction(&d)?;
    }
    Ok(options)
}

fn parse_payload(kind: Kind, node: &Node) -> Result<Payload, CliError> {
    match kind {
        Kind::ComplexHomology | Kind::Novikov | Kind::Domination => {
            node.only(&["complex"])?;
            Ok(Payload::Complex(parse_complex(&node.required("complex")?)?))
        }
        Kind::Inequalities => {
            node.only(&["complex", "counts"])?;
            let complex = parse_complex(&node.required("complex")?)?;
            let counts = match node.get("counts")? {
                Some(c) => Some(
                    c.entries()?
                        .into_iter()
                        .map(|(key, child)| Ok((parse_key(&c, key)?, child.small::<usize>("a count")?)))
                        .collect::<Result<BTreeMap<_, _>, CliError>>()?,
                ),
                None => None,
            };
            Ok(Payload::Inequalities { complex, counts })
        }
        Kind::MappingTorus => {
            node.only(&["complex", "h", "orientation"])?;
            let complex = integer_complex(&node.required("complex")?)?;
            let h = integer_blocks(Some(node.required("h")?), square_in(&complex))?;
            let orientation = match node.get("orientation")? {
                Some(o) => parse_direction(&o)?,
                None => Direction::Plus,
            };
            Ok(Payload::MappingTorus {
                complex,
                h,
                orientation,
            })
        }
        Kind::Knot => {
            node.only(&["base", "e"])?;
            let base = integer_complex(&node.required("base")?)?;
            let e = integer_blocks(node.get("e")?, square_in(&base))?;
            SeifertData::new(base, e)
                .map(Payload::Knot)
                .map_err(|err| validation(&node.path, err))
        }
        Kind::Fundomain => {
            node.only(&["D", "F", "c", "hD", "hF"])?;
            let d = integer_complex(&node.required("D")?)?;
            let f = integer_complex(&node.required("F")?)?;
            let c = integer_blocks(node.get("c")?, |i| Some((d.rank(i - 1), f.rank(i))))?;
            let h_d = integer_blocks(node.get("hD")?, |i| Some((d.rank(i), d.rank(i))))?;
            let h_f = integer_blocks(node.get("hF")?, |i| Some((f.rank(i), d.rank(i))))?;
            AlgebraicFundamentalDomain::new(d, f, c, h_d, h_f)
                .map(Payload::Fundomain)
                .map_err(|err| validation(&node.path, err))
        }
    }
}

fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: format!("line {}, column {}", e.line(), e.column()),
        reason: e.to_string(),
    })
}

/// Parses and validates a job document.
pub fn parse_document(text: &str) -> Result<JobDocument, CliError> {
    let value = parse_json(text)?;
    let root = Node::root(&value);
    root.only(&["kind", "options", "payload"])?;
    let kind_node = root.required("kind")?;
    let kind = Kind::from_str(kind_node.string()?).map_err(|e| kind_node.fail(e))?;
    let options = parse_options(root.get("options")?)?;
    let payload = parse_payload(kind, &root.required("payload")?)?;
    Ok(JobDocument { kind, options, payload })
}

/// Parses a polynomial coefficient map such as `{"0": 1, "1": -2}`.
pub fn parse_polynomial(text: &str) -> Result<LaurentPoly, CliError> {
    parse_poly(&Node::root(&parse_json(text)?))
}

/// Parses a matrix of polynomial entries; the shape is read from the
/// first row.
pub fn parse_matrix_text(text: &str) -> Result<Matrix<LaurentPoly>, CliError> {
    let value = parse_json(text)?;
    let node = Node::root(&value);
    let rows = node.array()?.len();
    let cols = node.array()?.first().and_then(Value::as_array).map_or(0, Vec::len);
    parse_matrix(&node, rows, cols)?.laurent()
}

/// Parses a standalone complex object.
pub fn parse_complex_text(text: &str) -> Result<AnyComplex, CliError> {
    parse_complex(&Node::root(&parse_json(text)?))
}
