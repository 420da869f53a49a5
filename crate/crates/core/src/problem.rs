//! JSON problem files: a grading group, a bicharacter, a graded space and
//! generators given as blocks of rational matrices.
//!
//! ```json
//! {
//!   "group": { "free_rank": 0, "torsion_moduli": [3] },
//!   "bicharacter": [["1"]],
//!   "space": [ { "degree": [0], "dim": 1 }, { "degree": [1], "dim": 1 } ],
//!   "generators": [
//!     { "degree": [1], "blocks": [ { "source": [0], "matrix": [["1"]] } ] }
//!   ]
//! }
//! ```
//!
//! Rationals are strings `"p/q"` (integers may also be bare JSON integers);
//! floating-point numbers are rejected. Degrees are integer arrays listing
//! the free coordinates and then the torsion coordinates. A missing
//! bicharacter means the trivial one; missing blocks are zero.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, ColorAlgebra};
use crate::graded::{GradedError, GradedSpace, HomogeneousMap};
use crate::grading::{Bicharacter, GradingError, GroupElement, GroupSpec};
use crate::linalg::{fmt_rational, parse_rational, LinalgError, Matrix};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{context}: {source}")]
    Grading {
        context: String,
        source: GradingError,
    },
    #[error("{context}: {source}")]
    Graded {
        context: String,
        source: GradedError,
    },
    #[error("{context}: {source}")]
    Linalg {
        context: String,
        source: LinalgError,
    },
}

impl From<serde_json::Error> for ProblemError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the message.
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        ProblemError::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

trait Context<T> {
    fn context(self, what: impl Into<String>) -> Result<T, ProblemError>;
}

macro_rules! context_impl {
    ($err:ty, $variant:ident) => {
        impl<T> Context<T> for Result<T, $err> {
            fn context(self, what: impl Into<String>) -> Result<T, ProblemError> {
                self.map_err(|source| ProblemError::$variant {
                    context: what.into(),
                    source,
                })
            }
        }
    };
}

context_impl!(GradingError, Grading);
context_impl!(GradedError, Graded);
context_impl!(LinalgError, Linalg);

/// A rational written as a JSON string `"p/q"` or a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(&self.0))
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a rational as a string \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        parse_rational(v)
            .map(Rational)
            .ok_or_else(|| E::custom(format!("invalid rational \"{v}\"")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
        Err(E::custom(format!(
            "floating-point value {v} is not allowed; write rationals as \"p/q\" strings"
        )))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDesc {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion_moduli: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDesc {
    pub degree: Vec<i64>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDesc {
    pub source: Vec<i64>,
    pub matrix: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDesc {
    pub degree: Vec<i64>,
    #[serde(default)]
    pub blocks: Vec<BlockDesc>,
}

/// The document as written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub group: GroupDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bicharacter: Option<Vec<Vec<Rational>>>,
    pub space: Vec<ComponentDesc>,
    #[serde(default)]
    pub generators: Vec<GeneratorDesc>,
}

/// A validated problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub group: GroupSpec,
    pub r: Bicharacter,
    pub space: Arc<GradedSpace>,
    pub generators: Vec<HomogeneousMap>,
}

fn element(group: &GroupSpec, coords: &[i64], what: &str) -> Result<GroupElement, ProblemError> {
    group.element(coords).context(what)
}

fn rational_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|row| row.iter().map(|x| x.0.clone()).collect())
        .collect()
}

fn rational_desc(rows: Vec<Vec<BigRational>>) -> Vec<Vec<Rational>> {
    rows.into_iter()
        .map(|row| row.into_iter().map(Rational).collect())
        .collect()
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, ProblemError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn validate(&self) -> Result<Problem, ProblemError> {
        let group = GroupSpec::new(self.group.free_rank, self.group.torsion_moduli.clone())
            .context("group")?;
        let r = match &self.bicharacter {
            None => Bicharacter::trivial(group.clone()),
            Some(rows) => {
                Bicharacter::new(group.clone(), rational_rows(rows)).context("bicharacter")?
            }
        };
        let mut dims = Vec::new();
        for (i, c) in self.space.iter().enumerate() {
            dims.push((element(&group, &c.degree, &format!("space[{i}].degree"))?, c.dim));
        }
        let space = GradedSpace::new(group.clone(), dims).context("space")?;
        let mut generators = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let degree = element(&group, &g.degree, &format!("generators[{i}].degree"))?;
            let mut blocks = Vec::new();
            for (j, b) in g.blocks.iter().enumerate() {
                let at = format!("generators[{i}].blocks[{j}]");
                let source = element(&group, &b.source, &format!("{at}.source"))?;
                let m = if b.matrix.is_empty() {
                    Matrix::zeros(0, 0)
                } else {
                    Matrix::from_rows(rational_rows(&b.matrix)).context(format!("{at}.matrix"))?
                };
                blocks.push((source, m));
            }
            let map = HomogeneousMap::new(&space, degree, blocks)
                .context(format!("generators[{i}]"))?;
            generators.push(map);
        }
        Ok(Problem {
            group,
            r,
            space,
            generators,
        })
    }
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Self, ProblemError> {
        ProblemFile::from_json(text)?.validate()
    }

    /// Canonical description: reduced degrees, components in canonical
    /// order, every block written out.
    pub fn to_file(&self) -> ProblemFile {
        ProblemFile {
            group: GroupDesc {
                free_rank: self.group.free_rank(),
                torsion_moduli: self.group.torsion_moduli().to_vec(),
            },
            bicharacter: Some(rational_desc(self.r.values().to_vec())),
            space: self
                .space
                .components()
                .map(|(g, n)| ComponentDesc {
                    degree: g.coords(),
                    dim: n,
                })
                .collect(),
            generators: self
                .generators
                .iter()
                .map(|x| GeneratorDesc {
                    degree: x.degree().coords(),
                    blocks: x
                        .blocks()
                        .map(|(h, b)| BlockDesc {
                            source: h.coords(),
                            matrix: rational_desc(b.to_rows()),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }

    /// Bracket closure of the generators.
    pub fn algebra(&self) -> Result<ColorAlgebra, AlgebraError> {
        ColorAlgebra::bracket_closure(&self.space, &self.r, self.generators.iter().cloned())
    }
}
