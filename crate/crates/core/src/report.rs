//! Verification reports: named checks comparing computed values with
//! expected ones, rendered as text or bit-stable JSON.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde_json::{json, Map, Value as Json};

use crate::algebra::{ParameterSpace, Poly};
use crate::error::{Error, Result};
use crate::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Match,
    Mismatch,
    ErratumMatch,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::ErratumMatch => "erratum-match",
        }
    }

    pub fn passed(self) -> bool {
        self != Status::Mismatch
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "match" => Ok(Status::Match),
            "mismatch" => Ok(Status::Mismatch),
            "erratum-match" => Ok(Status::ErratumMatch),
            other => Err(Error::Json(format!("unknown status {other:?}"))),
        }
    }
}

/// Subject area of a check or quantity; the CLI subcommands select by topic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Topic {
    Tables,
    ClosedForms,
    Validity,
    Classification,
    Connection,
    Curvature,
    Norms,
    Invariants,
}

impl Topic {
    pub const ALL: [Topic; 8] = [
        Topic::Tables,
        Topic::ClosedForms,
        Topic::Validity,
        Topic::Classification,
        Topic::Connection,
        Topic::Curvature,
        Topic::Norms,
        Topic::Invariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Topic::Tables => "tables",
            Topic::ClosedForms => "closed-forms",
            Topic::Validity => "validity",
            Topic::Classification => "classification",
            Topic::Connection => "connection",
            Topic::Curvature => "curvature",
            Topic::Norms => "norms",
            Topic::Invariants => "invariants",
        }
    }
}

impl FromStr for Topic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Topic::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Json(format!("unknown topic {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Poly(Poly),
    Tensor(Tensor),
    Flag(bool),
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::Poly(p) => Json::String(p.to_string()),
            Value::Tensor(t) => t.to_json(),
            Value::Flag(b) => Json::Bool(*b),
        }
    }

    fn from_json(space: &ParameterSpace, v: &Json) -> Result<Self> {
        match v {
            Json::String(s) => Ok(Value::Poly(Poly::parse(space, s)?)),
            Json::Bool(b) => Ok(Value::Flag(*b)),
            Json::Object(_) => Ok(Value::Tensor(Tensor::from_json(space, v)?)),
            other => Err(Error::Json(format!("unexpected value {other}"))),
        }
    }

    fn brief(&self) -> String {
        match self {
            Value::Poly(p) => p.to_string(),
            Value::Flag(b) => b.to_string(),
            Value::Tensor(t) => {
                let n = t.nonzero().count();
                if n == 0 {
                    format!("zero {} tensor", t.valence())
                } else {
                    format!("{} tensor, {n} nonzero", t.valence())
                }
            }
        }
    }
}

impl From<Poly> for Value {
    fn from(p: Poly) -> Self {
        Value::Poly(p)
    }
}

impl From<Tensor> for Value {
    fn from(t: Tensor) -> Self {
        Value::Tensor(t)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Flag(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Erratum {
    pub id: String,
    pub printed: Value,
    pub corrected: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub topic: Topic,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    pub erratum: Option<Erratum>,
}

impl Check {
    /// Plain comparison: match iff `computed == expected`.
    pub fn compare(
        name: impl Into<String>,
        topic: Topic,
        computed: impl Into<Value>,
        expected: impl Into<Value>,
    ) -> Self {
        let (computed, expected) = (computed.into(), expected.into());
        let status = if computed == expected {
            Status::Match
        } else {
            Status::Mismatch
        };
        Check {
            name: name.into(),
            topic,
            status,
            computed,
            expected,
            erratum: None,
        }
    }

    /// Comparison against a printed value known to be wrong: erratum-match
    /// iff the computed value equals the correction.
    pub fn with_erratum(
        name: impl Into<String>,
        topic: Topic,
        computed: impl Into<Value>,
        id: &str,
        printed: impl Into<Value>,
        corrected: impl Into<Value>,
    ) -> Self {
        let (computed, printed, corrected) = (computed.into(), printed.into(), corrected.into());
        let status = if computed == printed {
            Status::Match
        } else if computed == corrected {
            Status::ErratumMatch
        } else {
            Status::Mismatch
        };
        Check {
            name: name.into(),
            topic,
            status,
            computed,
            expected: printed.clone(),
            erratum: Some(Erratum {
                id: id.into(),
                printed,
                corrected,
            }),
        }
    }

    /// A tensor that must vanish identically.
    pub fn zero(name: impl Into<String>, topic: Topic, residual: Tensor) -> Self {
        let expected = Tensor::zeros(residual.space(), residual.dim(), residual.valence());
        Check::compare(name, topic, residual, expected)
    }

    fn to_json(&self) -> Json {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("topic".into(), json!(self.topic.name()));
        m.insert("status".into(), json!(self.status.name()));
        m.insert("computed".into(), self.computed.to_json());
        m.insert("expected".into(), self.expected.to_json());
        if let Some(e) = &self.erratum {
            m.insert(
                "erratum".into(),
                json!({ "id": e.id, "printed": e.printed.to_json(), "corrected": e.corrected.to_json() }),
            );
        }
        Json::Object(m)
    }

    fn from_json(space: &ParameterSpace, v: &Json) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Json(format!("check: missing {k}")));
        let string = |k: &str| -> Result<String> {
            field(k)?
                .as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::Json(format!("check: {k} must be a string")))
        };
        let erratum = match v.get("erratum") {
            None => None,
            Some(e) => Some(Erratum {
                id: e
                    .get("id")
                    .and_then(Json::as_str)
                    .ok_or_else(|| Error::Json("erratum: missing id".into()))?
                    .into(),
                printed: Value::from_json(space, e.get("printed").unwrap_or(&Json::Null))?,
                corrected: Value::from_json(space, e.get("corrected").unwrap_or(&Json::Null))?,
            }),
        };
        Ok(Check {
            name: string("name")?,
            topic: string("topic")?.parse()?,
            status: string("status")?.parse()?,
            computed: Value::from_json(space, field("computed")?)?,
            expected: Value::from_json(space, field("expected")?)?,
            erratum,
        })
    }
}

/// A computed quantity reported without an expected value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantity {
    pub name: String,
    pub topic: Topic,
    pub value: Value,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub erratum_matched: usize,
    pub mismatched: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub context: String,
    pub space: ParameterSpace,
    pub convention: Option<String>,
    pub params: Option<String>,
    pub checks: Vec<Check>,
    pub quantities: Vec<Quantity>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(context: impl Into<String>, space: &ParameterSpace) -> Self {
        Self {
            context: context.into(),
            space: space.clone(),
            convention: None,
            params: None,
            checks: Vec::new(),
            quantities: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn quantity(&mut self, name: impl Into<String>, topic: Topic, value: impl Into<Value>) {
        self.quantities.push(Quantity {
            name: name.into(),
            topic,
            value: value.into(),
        });
    }

    pub fn summary(&self) -> Summary {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        Summary {
            total: self.checks.len(),
            matched: count(Status::Match),
            erratum_matched: count(Status::ErratumMatch),
            mismatched: count(Status::Mismatch),
        }
    }

    /// True when no check is an unexplained mismatch.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.passed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Keep only checks and quantities whose topic is in `topics`.
    pub fn restrict(&self, topics: &[Topic]) -> Self {
        let mut out = self.clone();
        out.checks.retain(|c| topics.contains(&c.topic));
        out.quantities.retain(|q| topics.contains(&q.topic));
        out
    }

    pub fn to_json(&self) -> Json {
        let s = self.summary();
        let mut m = Map::new();
        m.insert("context".into(), json!(self.context));
        m.insert("space".into(), json!(self.space.names()));
        if let Some(c) = &self.convention {
            m.insert("convention".into(), json!(c));
        }
        if let Some(p) = &self.params {
            m.insert("params".into(), json!(p));
        }
        m.insert(
            "checks".into(),
            Json::Array(self.checks.iter().map(Check::to_json).collect()),
        );
        let quantities: Vec<Json> = self
            .quantities
            .iter()
            .map(|q| json!({ "name": q.name, "topic": q.topic.name(), "value": q.value.to_json() }))
            .collect();
        m.insert("quantities".into(), Json::Array(quantities));
        m.insert("notes".into(), json!(self.notes));
        m.insert(
            "summary".into(),
            json!({
                "total": s.total,
                "match": s.matched,
                "erratum-match": s.erratum_matched,
                "mismatch": s.mismatched,
            }),
        );
        Json::Object(m)
    }

    /// Pretty-printed JSON with sorted keys and a trailing newline.
    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let names: Vec<String> = v
            .get("space")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Json("report: missing space".into()))?
            .iter()
            .map(|n| {
                n.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::Json("report: bad space".into()))
            })
            .collect::<Result<_>>()?;
        let space = ParameterSpace::new(&names)?;
        let array = |k: &str| v.get(k).and_then(Json::as_array).cloned().unwrap_or_default();
        let checks = array("checks")
            .iter()
            .map(|c| Check::from_json(&space, c))
            .collect::<Result<_>>()?;
        let quantities = array("quantities")
            .iter()
            .map(|q| {
                let bad = || Error::Json("quantity: malformed".into());
                Ok(Quantity {
                    name: q.get("name").and_then(Json::as_str).ok_or_else(bad)?.into(),
                    topic: q.get("topic").and_then(Json::as_str).ok_or_else(bad)?.parse()?,
                    value: Value::from_json(&space, q.get("value").ok_or_else(bad)?)?,
                })
            })
            .collect::<Result<_>>()?;
        let notes = array("notes")
            .iter()
            .map(|n| {
                n.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::Json("notes must be strings".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            context: v.get("context").and_then(Json::as_str).unwrap_or_default().into(),
            space,
            convention: v.get("convention").and_then(Json::as_str).map(str::to_owned),
            params: v.get("params").and_then(Json::as_str).map(str::to_owned),
            checks,
            quantities,
            notes,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if !self.context.is_empty() {
            writeln!(out, "{}", self.context).unwrap();
        }
        if let Some(p) = &self.params {
            writeln!(out, "parameters: {p}").unwrap();
        }
        if let Some(c) = &self.convention {
            writeln!(out, "weyl convention: {c}").unwrap();
        }
        for c in &self.checks {
            render_check(&mut out, c);
        }
        for q in &self.quantities {
            render_quantity(&mut out, q);
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        let s = self.summary();
        if s.total == 0 {
            writeln!(out, "0 checks").unwrap();
        } else {
            writeln!(
                out,
                "{} checks: {} match, {} erratum-match, {} mismatch",
                s.total, s.matched, s.erratum_matched, s.mismatched
            )
            .unwrap();
        }
        out
    }
}

fn render_check(out: &mut String, c: &Check) {
    match (&c.status, &c.erratum) {
        (Status::Match, _) => writeln!(out, "[match] {} = {}", c.name, c.computed.brief()).unwrap(),
        (Status::ErratumMatch, Some(e)) => writeln!(
            out,
            "[erratum-match {}] {} = {} (printed {}, corrected {})",
            e.id,
            c.name,
            c.computed.brief(),
            e.printed.brief(),
            e.corrected.brief()
        )
        .unwrap(),
        _ => {
            writeln!(
                out,
                "[{}] {}: computed {}, expected {}",
                c.status,
                c.name,
                c.computed.brief(),
                c.expected.brief()
            )
            .unwrap();
            if let (Value::Tensor(a), Value::Tensor(b)) = (&c.computed, &c.expected) {
                if let Ok(diff) = a.diff(b) {
                    for (idx, x, y) in diff {
                        let digits: String = idx.iter().map(|i| (i + 1).to_string()).collect();
                        writeln!(out, "    [{digits}] computed {x}, expected {y}").unwrap();
                    }
                }
            }
        }
    }
}

fn render_quantity(out: &mut String, q: &Quantity) {
    match &q.value {
        Value::Tensor(t) if !t.is_zero() => {
            writeln!(out, "{} =", q.name).unwrap();
            for (idx, p) in t.nonzero() {
                let digits: String = idx.iter().map(|i| (i + 1).to_string()).collect();
                writeln!(out, "    {}_{digits} = {p}", q.name).unwrap();
            }
        }
        v => writeln!(out, "{} = {}", q.name, v.brief()).unwrap(),
    }
}
