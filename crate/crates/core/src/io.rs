//! JSON file formats for spaces, objectives, sequences and reports.
//!
//! Space: `{"points": [...], "matrix": [[...], ...]}` with `matrix[i][j] = d(p_i, p_j)`,
//! or `{"formula": "upper", "params": {"origin": 0, "step": 1}}`.
//! Objective: `{"a": 3, "b": "inf"}`, or `{"formula": "quad_exp_decay"}` on implicit spaces.
//! Sequence: `{"indices": [0, 2, 1]}`, or `{"formula": "reciprocal", "len": 64}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::objective::{Objective, ObjectiveFormula};
use crate::space::{FiniteSpace, Formula, ImplicitSpace, QpmSpace};
use crate::topology::PointSeq;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImplicitParams {
    #[serde(default)]
    pub origin: f64,
    #[serde(default = "one")]
    pub step: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceFile {
    Explicit { points: Vec<String>, matrix: Vec<Vec<f64>> },
    Implicit { formula: Formula, params: ImplicitParams },
}

impl SpaceFile {
    pub fn build(self) -> Result<QpmSpace> {
        match self {
            SpaceFile::Explicit { points, matrix } => Ok(QpmSpace::Finite(FiniteSpace::new(points, matrix)?)),
            SpaceFile::Implicit { formula, params } => {
                Ok(QpmSpace::Implicit(ImplicitSpace::new(formula, params.origin, params.step)?))
            }
        }
    }
}

impl From<&FiniteSpace> for SpaceFile {
    fn from(s: &FiniteSpace) -> Self {
        SpaceFile::Explicit { points: s.ids().to_vec(), matrix: s.rows() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectiveFile {
    Formula { formula: ObjectiveFormula },
    Values(BTreeMap<String, ExtReal>),
}

/// An objective resolved against its space.
#[derive(Clone, Debug, PartialEq)]
pub enum ObjectiveSpec {
    Finite(Objective),
    Formula(ObjectiveFormula),
}

impl ObjectiveFile {
    pub fn build(self, space: &QpmSpace) -> Result<ObjectiveSpec> {
        match (self, space) {
            (ObjectiveFile::Values(map), QpmSpace::Finite(s)) => Ok(ObjectiveSpec::Finite(Objective::from_map(s, &map)?)),
            (ObjectiveFile::Formula { formula }, QpmSpace::Implicit(_)) => Ok(ObjectiveSpec::Formula(formula)),
            (ObjectiveFile::Formula { formula }, QpmSpace::Finite(s)) => {
                let xs = s
                    .ids()
                    .iter()
                    .map(|id| id.parse::<f64>().map_err(|_| Error::Parameter(format!("point `{id}` is not a number"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ObjectiveSpec::Finite(formula.sample(xs)?))
            }
            (ObjectiveFile::Values(_), QpmSpace::Implicit(_)) => {
                Err(Error::Parameter("an implicit space needs a formula objective".into()))
            }
        }
    }
}

impl ObjectiveFile {
    pub fn from_objective(space: &FiniteSpace, f: &Objective) -> Self {
        ObjectiveFile::Values(f.to_map(space))
    }
}

/// Closed-form sequences on the reals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceFormula {
    /// `1/(n+1)`.
    Reciprocal,
    /// `origin + n·step`.
    Linear,
    /// `2^{-n}`.
    Geometric,
    /// `(−1)^n`, alternating between 1 and −1.
    Alternating,
}

impl SequenceFormula {
    pub fn eval(self, n: usize, space: &ImplicitSpace) -> f64 {
        match self {
            SequenceFormula::Reciprocal => 1.0 / (n as f64 + 1.0),
            SequenceFormula::Linear => space.sample(n),
            SequenceFormula::Geometric => 0.5f64.powi(n.min(1100) as i32),
            SequenceFormula::Alternating => {
                if n.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceFile {
    Indices { indices: Vec<usize> },
    Formula { formula: SequenceFormula, len: usize },
}

#[derive(Clone, Debug)]
pub enum SequenceSpec {
    Finite(PointSeq<usize>),
    Implicit(PointSeq<f64>),
}

impl SequenceFile {
    pub fn build(self, space: &QpmSpace) -> Result<SequenceSpec> {
        match (self, space) {
            (SequenceFile::Indices { indices }, QpmSpace::Finite(s)) => {
                for &i in &indices {
                    s.check_index(i)?;
                }
                Ok(SequenceSpec::Finite(PointSeq::new(indices)?))
            }
            (SequenceFile::Formula { formula, len }, QpmSpace::Implicit(s)) => {
                let s = *s;
                Ok(SequenceSpec::Implicit(PointSeq::from_rule(len, move |n| formula.eval(n, &s))?))
            }
            (SequenceFile::Indices { .. }, QpmSpace::Implicit(_)) => Err(Error::ImplicitSpace),
            (SequenceFile::Formula { .. }, QpmSpace::Finite(_)) => {
                Err(Error::Parameter("a finite space needs an index sequence".into()))
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn parse_space(text: &str) -> Result<QpmSpace> {
    serde_json::from_str::<SpaceFile>(text)?.build()
}

pub fn load_space(path: &Path) -> Result<QpmSpace> {
    parse_space(&read(path)?)
}

pub fn parse_objective(text: &str, space: &QpmSpace) -> Result<ObjectiveSpec> {
    serde_json::from_str::<ObjectiveFile>(text)?.build(space)
}

pub fn load_objective(path: &Path, space: &QpmSpace) -> Result<ObjectiveSpec> {
    parse_objective(&read(path)?, space)
}

pub fn parse_sequence(text: &str, space: &QpmSpace) -> Result<SequenceSpec> {
    serde_json::from_str::<SequenceFile>(text)?.build(space)
}

pub fn load_sequence(path: &Path, space: &QpmSpace) -> Result<SequenceSpec> {
    parse_sequence(&read(path)?, space)
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    schema_version: u32,
    kind: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON with `schema_version` and `kind` fields ahead of the body's own.
pub fn report_json<T: Serialize>(kind: &str, body: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Report { schema_version: SCHEMA_VERSION, kind, body })?;
    s.push('\n');
    Ok(s)
}
