use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::convex_sets::{ConvexSet, Shape};
use crate::dsap::{Problem, ProblemMetadata};
use crate::error::{Error, Result};
use crate::point::Point;

pub const PROBLEM_FILE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    pub dimension: usize,
    pub sets: Vec<SetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasible_point: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SetSpec {
    Hyperplane { normal: Vec<f64>, offset: f64 },
    /// `⟨normal, x⟩ ≤ offset`
    Halfspace { normal: Vec<f64>, offset: f64 },
    Ball { center: Vec<f64>, radius: f64 },
    Box { lower: Vec<f64>, upper: Vec<f64> },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ProblemFile {
    pub fn from_problem(problem: &Problem) -> Self {
        let sets = problem
            .sets()
            .iter()
            .map(|s| match s.shape() {
                Shape::Hyperplane { normal, offset } => {
                    SetSpec::Hyperplane { normal: normal.coords().to_vec(), offset: *offset }
                }
                Shape::Halfspace { normal, offset } => {
                    SetSpec::Halfspace { normal: normal.coords().to_vec(), offset: *offset }
                }
                Shape::Ball { center, radius } => SetSpec::Ball { center: center.coords().to_vec(), radius: *radius },
                Shape::Box { lower, upper } => {
                    SetSpec::Box { lower: lower.coords().to_vec(), upper: upper.coords().to_vec() }
                }
            })
            .collect();
        let md = problem.metadata();
        let metadata = (md.name.is_some() || md.seed.is_some())
            .then(|| Metadata { name: md.name.clone(), seed: md.seed });
        ProblemFile {
            version: PROBLEM_FILE_VERSION,
            dimension: problem.dim(),
            sets,
            feasible_point: problem.known_feasible_point().map(|p| p.coords().to_vec()),
            metadata,
        }
    }

    /// Validates every set and the feasible point, reporting the offending set index.
    pub fn into_problem(self) -> Result<Problem> {
        if self.version != PROBLEM_FILE_VERSION {
            return Err(Error::InvalidProblem(format!(
                "unsupported version {} (expected {PROBLEM_FILE_VERSION})",
                self.version
            )));
        }
        let n = self.dimension;
        if n == 0 {
            return Err(Error::InvalidProblem("dimension must be ≥ 1".into()));
        }
        if self.sets.is_empty() {
            return Err(Error::InvalidProblem("a problem needs at least one set".into()));
        }
        let vector = |v: Vec<f64>, i: usize, field: &str| -> Result<Point> {
            if v.len() != n {
                return Err(Error::InvalidProblem(format!(
                    "{field} has dimension {} at set index {i}, expected {n}",
                    v.len()
                )));
            }
            Point::new(v).map_err(|e| Error::InvalidProblem(format!("{field} at set index {i}: {e}")))
        };
        let mut sets = Vec::with_capacity(self.sets.len());
        for (i, spec) in self.sets.into_iter().enumerate() {
            let set = match spec {
                SetSpec::Hyperplane { normal, offset } => ConvexSet::hyperplane(vector(normal, i, "normal")?, offset),
                SetSpec::Halfspace { normal, offset } => ConvexSet::halfspace(vector(normal, i, "normal")?, offset),
                SetSpec::Ball { center, radius } => ConvexSet::ball(vector(center, i, "center")?, radius),
                SetSpec::Box { lower, upper } => {
                    let lower = vector(lower, i, "lower")?;
                    let upper = vector(upper, i, "upper")?;
                    if lower.coords().iter().zip(upper.coords()).any(|(l, u)| l > u) {
                        return Err(Error::InvalidProblem(format!("box bounds inverted at set index {i}")));
                    }
                    ConvexSet::bounding_box(lower, upper)
                }
            }
            .map_err(|e| Error::InvalidProblem(format!("set index {i}: {e}")))?;
            sets.push(set);
        }
        let feasible = match self.feasible_point {
            Some(v) => {
                if v.len() != n {
                    return Err(Error::InvalidProblem(format!(
                        "feasible_point has dimension {}, expected {n}",
                        v.len()
                    )));
                }
                Some(Point::new(v).map_err(|e| Error::InvalidProblem(format!("feasible_point: {e}")))?)
            }
            None => None,
        };
        let metadata = self.metadata.unwrap_or_default();
        Ok(Problem::new(sets, feasible)?.with_metadata(ProblemMetadata { name: metadata.name, seed: metadata.seed }))
    }
}

pub fn parse_problem(text: &str, path: &Path) -> Result<Problem> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_problem()
}

pub fn load_problem(path: impl AsRef<Path>) -> Result<Problem> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_problem(&text, path)
}

/// Canonical text form: pretty JSON plus a trailing newline.
pub fn problem_to_string(problem: &Problem) -> String {
    let mut s = serde_json::to_string_pretty(&ProblemFile::from_problem(problem)).expect("problem files serialize");
    s.push('\n');
    s
}

pub fn save_problem(problem: &Problem, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, problem_to_string(problem)).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}
