//! Text and JSON formats.
//!
//! Matrix text: the dimension on the first line, then one row per line;
//! entries are integers, decimals or `p/q` literals separated by whitespace
//! or commas. Blank lines and `#` comments are ignored. Matrix JSON:
//! `{"n": 3, "rows": [["1", "2", "1/3"], ...]}`. Vectors are one line of
//! literals or a JSON array. All JSON output writes rationals as strings and
//! vertices one-based.

use serde::{Deserialize, Serialize};

use crate::cones::{CycleInequality, EfficiencyCone};
use crate::cycle::HamiltonianCycle;
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::graph::EfficiencyCertificate;
use crate::matrix::{MonomialTransform, ReciprocalMatrix, WeightVector};
use crate::rational::{format_rational, parse_rational_at, Rational};

/// A rational literal as it may appear in JSON input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Text(String),
    Number(serde_json::Number),
}

impl Literal {
    fn parse(&self, line: usize) -> Result<Rational> {
        match self {
            Literal::Text(s) => parse_rational_at(s, line),
            Literal::Number(x) => parse_rational_at(&x.to_string(), line),
        }
    }
}

impl From<&Rational> for Literal {
    fn from(r: &Rational) -> Self {
        Literal::Text(format_rational(r))
    }
}

fn literals(v: &[Rational]) -> Vec<Literal> {
    v.iter().map(Literal::from).collect()
}

fn parse_literals(v: &[Literal]) -> Result<Vec<Rational>> {
    v.iter().map(|l| l.parse(1)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Vec<Vec<Literal>>,
}

impl From<&ReciprocalMatrix> for MatrixJson {
    fn from(a: &ReciprocalMatrix) -> Self {
        MatrixJson {
            n: a.dim(),
            rows: a.rows().map(literals).collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<ReciprocalMatrix> {
        if self.rows.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: self.rows.len(),
            });
        }
        let rows = self.rows.iter().map(|r| parse_literals(r)).collect::<Result<Vec<_>>>()?;
        ReciprocalMatrix::from_rows(rows)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.to_string())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty())
}

fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{' | '['))
}

pub fn parse_matrix_text(text: &str) -> Result<ReciprocalMatrix> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::parse(first, format!("expected the dimension, found `{header}`")))?;
    if n < 2 {
        return Err(Error::parse(first, format!("dimension must be at least 2, got {n}")));
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = first;
    for (line_no, line) in lines.by_ref().take(n) {
        last = line_no;
        let row = tokens(line)
            .map(|t| parse_rational_at(t, line_no))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::parse(line_no, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() < n {
        return Err(Error::parse(last + 1, format!("expected {n} rows, found {}", rows.len())));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(line_no, "unexpected content after the last row"));
    }
    ReciprocalMatrix::from_rows(rows)
}

pub fn parse_matrix_json(text: &str) -> Result<ReciprocalMatrix> {
    serde_json::from_str::<MatrixJson>(text).map_err(json_error)?.to_matrix()
}

/// Text or JSON, chosen by the first non-blank character.
pub fn parse_matrix(text: &str) -> Result<ReciprocalMatrix> {
    if is_json(text) {
        parse_matrix_json(text)
    } else {
        parse_matrix_text(text)
    }
}

pub fn matrix_to_text(a: &ReciprocalMatrix) -> String {
    a.to_string()
}

pub fn matrix_to_json(a: &ReciprocalMatrix) -> String {
    serde_json::to_string(&MatrixJson::from(a)).expect("serializable")
}

pub fn parse_vector(text: &str) -> Result<WeightVector> {
    let comps = if is_json(text) {
        let v: Vec<Literal> = serde_json::from_str(text).map_err(json_error)?;
        parse_literals(&v)?
    } else {
        let mut out = Vec::new();
        for (line_no, line) in content_lines(text) {
            for t in tokens(line) {
                out.push(parse_rational_at(t, line_no)?);
            }
        }
        out
    };
    if comps.is_empty() {
        return Err(Error::parse(1, "empty vector"));
    }
    WeightVector::new(comps)
}

pub fn vector_to_text(w: &WeightVector) -> String {
    w.components().iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

pub fn vector_to_json(w: &WeightVector) -> Vec<Literal> {
    literals(w.components())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<Vec<usize>>,
}

impl From<&EfficiencyCertificate> for CertificateJson {
    fn from(c: &EfficiencyCertificate) -> Self {
        match c {
            EfficiencyCertificate::Efficient { cycle } => CertificateJson {
                status: "efficient".into(),
                cycle: Some(cycle.one_based()),
                cut: None,
            },
            EfficiencyCertificate::Inefficient { cut } => CertificateJson {
                status: "inefficient".into(),
                cycle: None,
                cut: Some(cut.iter().map(|v| v + 1).collect()),
            },
        }
    }
}

impl CertificateJson {
    pub fn to_certificate(&self) -> Result<EfficiencyCertificate> {
        match (self.status.as_str(), &self.cycle, &self.cut) {
            ("efficient", Some(cycle), None) => Ok(EfficiencyCertificate::Efficient {
                cycle: HamiltonianCycle::from_one_based(cycle)?,
            }),
            ("inefficient", None, Some(cut)) if !cut.contains(&0) => Ok(EfficiencyCertificate::Inefficient {
                cut: cut.iter().map(|v| v - 1).collect(),
            }),
            _ => Err(Error::parse(1, "malformed certificate")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeJson {
    pub cycle: Vec<usize>,
    pub product: Literal,
    pub singleton: bool,
    pub extremes: Vec<Vec<Literal>>,
}

impl From<&EfficiencyCone> for ConeJson {
    fn from(c: &EfficiencyCone) -> Self {
        ConeJson {
            cycle: c.cycle.one_based(),
            product: Literal::from(&c.product),
            singleton: c.is_singleton,
            extremes: c.extremes.iter().map(|e| literals(e.components())).collect(),
        }
    }
}

impl ConeJson {
    /// Rebuilds the cone against `a`; the stored product must match.
    pub fn to_cone(&self, a: &ReciprocalMatrix) -> Result<EfficiencyCone> {
        let cycle = HamiltonianCycle::from_one_based(&self.cycle)?;
        let product = self.product.parse(1)?;
        let extremes = self
            .extremes
            .iter()
            .map(|e| WeightVector::new(parse_literals(e)?))
            .collect::<Result<Vec<_>>>()?;
        let inequalities = cycle
            .edges()
            .map(|(from, to)| CycleInequality {
                from,
                to,
                coefficient: a.get(from, to).clone(),
            })
            .collect();
        let cone = EfficiencyCone {
            cycle,
            product,
            inequalities,
            extremes,
            is_singleton: self.singleton,
        };
        let expected = EfficiencyCone::new(a, &cone.cycle)?;
        if cone.product != expected.product || cone.is_singleton != expected.is_singleton {
            return Err(Error::parse(1, format!("cone {} does not match the matrix", cone.cycle)));
        }
        Ok(cone)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub matrix: MatrixJson,
    pub cones: Vec<ConeJson>,
    pub unit_cycles: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray: Option<Vec<Literal>>,
}

impl From<&Decomposition> for DecompositionJson {
    fn from(d: &Decomposition) -> Self {
        DecompositionJson {
            matrix: MatrixJson::from(&d.matrix),
            cones: d.cones.iter().map(ConeJson::from).collect(),
            unit_cycles: d.unit_cycles.iter().map(|c| c.one_based()).collect(),
            ray: d.ray.as_ref().map(vector_to_json),
        }
    }
}

impl DecompositionJson {
    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let matrix = self.matrix.to_matrix()?;
        let cones = self.cones.iter().map(|c| c.to_cone(&matrix)).collect::<Result<Vec<_>>>()?;
        let unit_cycles = self
            .unit_cycles
            .iter()
            .map(|c| HamiltonianCycle::from_one_based(c))
            .collect::<Result<Vec<_>>>()?;
        let ray = self
            .ray
            .as_ref()
            .map(|r| WeightVector::new(parse_literals(r)?))
            .transpose()?;
        Ok(Decomposition {
            matrix,
            cones,
            unit_cycles,
            ray,
        })
    }
}

pub fn decomposition_to_json(d: &Decomposition) -> String {
    serde_json::to_string_pretty(&DecompositionJson::from(d)).expect("serializable")
}

pub fn parse_decomposition_json(text: &str) -> Result<Decomposition> {
    serde_json::from_str::<DecompositionJson>(text)
        .map_err(json_error)?
        .to_decomposition()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformJson {
    pub scale: Vec<Literal>,
    /// `perm[i]` is the one-based position that index `i + 1` moves to.
    pub perm: Vec<usize>,
}

impl From<&MonomialTransform> for TransformJson {
    fn from(t: &MonomialTransform) -> Self {
        TransformJson {
            scale: literals(t.scale()),
            perm: t.perm().iter().map(|p| p + 1).collect(),
        }
    }
}

impl TransformJson {
    pub fn to_transform(&self) -> Result<MonomialTransform> {
        if self.perm.contains(&0) {
            return Err(Error::Domain("positions are numbered from 1".into()));
        }
        MonomialTransform::new(
            parse_literals(&self.scale)?,
            self.perm.iter().map(|p| p - 1).collect(),
        )
    }
}
