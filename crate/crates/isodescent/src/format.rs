//! JSON problem and solution files. Every field element is a string in the
//! element grammar, never a JSON number.

use isodescent_core::descent::{DescentTrace, TraceStep};
use isodescent_core::{DescentProblem, Field, FieldKind, Matrix, Permutation};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::AppError;

pub type Rows = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub kind: String,
    /// Valuation prime, or the coefficient characteristic for `ratfunc-tadic`.
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub n: usize,
    pub a: Rows,
    pub b: Rows,
    pub u: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub v: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<StepRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "SCREAMING_SNAKE_CASE", deny_unknown_fields)]
pub enum StepRecord {
    LeftRightFactor {
        left: Rows,
        right: Rows,
    },
    Permute {
        perm: Vec<usize>,
    },
    LevelReduce {
        gamma_top: i64,
        gamma_next: i64,
        r: usize,
        s: usize,
        pi: String,
        uprime: Rows,
    },
    BlockEliminate {
        v: Rows,
        w: Rows,
    },
    NormalizeY {
        nhat: Rows,
    },
    CoreIdentity {
        core: Rows,
        s1: Rows,
    },
    Base {
        unit: Rows,
    },
}

impl FieldSpec {
    pub fn of(field: &Field) -> Self {
        FieldSpec {
            kind: field.kind().name().to_string(),
            p: field.param(),
        }
    }

    pub fn to_field(&self) -> Result<Field, AppError> {
        let kind = FieldKind::from_name(&self.kind).ok_or_else(|| {
            AppError::Core(isodescent_core::Error::InvalidDescriptor(format!(
                "unknown field kind {:?}",
                self.kind
            )))
        })?;
        Ok(Field::from_parts(kind, self.p)?)
    }
}

/// Parses `kind:p` as used by `--field`.
pub fn parse_field_flag(text: &str) -> Result<Field, AppError> {
    let (kind, p) = text
        .split_once(':')
        .ok_or_else(|| AppError::Invalid(format!("--field {text:?}: expected kind:p")))?;
    let p = p
        .parse()
        .map_err(|_| AppError::Invalid(format!("--field {text:?}: p is not an integer")))?;
    FieldSpec {
        kind: kind.to_string(),
        p,
    }
    .to_field()
}

pub fn rows_of(field: &Field, m: &Matrix) -> Rows {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| field.format(x)).collect())
        .collect()
}

/// Reads an `n × n` matrix named `what`.
pub fn matrix_of(field: &Field, n: usize, rows: &Rows, what: &str) -> Result<Matrix, AppError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(AppError::Core(isodescent_core::Error::DimensionMismatch(
            format!("{what} is not {n}x{n}"),
        )));
    }
    let mut parsed = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, text) in row.iter().enumerate() {
            let x = field.parse(text).map_err(|source| AppError::Element {
                what: format!("{what}[{i}][{j}] = {text:?}"),
                source,
            })?;
            out.push(x);
        }
        parsed.push(out);
    }
    if n == 0 {
        return Ok(Matrix::zeros(*field, 0, 0));
    }
    Ok(Matrix::from_rows(*field, parsed)?)
}

impl ProblemFile {
    pub fn of(problem: &DescentProblem) -> Self {
        let f = &problem.field;
        ProblemFile {
            field: FieldSpec::of(f),
            n: problem.n(),
            a: rows_of(f, &problem.a),
            b: rows_of(f, &problem.b),
            u: rows_of(f, &problem.u),
        }
    }

    /// Builds the problem; shapes and elements are checked, the problem
    /// invariants are not.
    pub fn to_problem(&self) -> Result<DescentProblem, AppError> {
        let f = self.field.to_field()?;
        let a = matrix_of(&f, self.n, &self.a, "a")?;
        let b = matrix_of(&f, self.n, &self.b, "b")?;
        let u = matrix_of(&f, self.n, &self.u, "u")?;
        Ok(DescentProblem::new(a, b, u)?)
    }
}

pub fn parse_problem(text: &str) -> Result<DescentProblem, AppError> {
    serde_json::from_str::<ProblemFile>(text)?.to_problem()
}

/// Indented JSON with arrays of scalars (matrix rows, permutations) kept on
/// one line.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("file types always serialize");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("scalars serialize"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("keys serialize"));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("scalars serialize")),
    }
}

pub fn emit_problem(problem: &DescentProblem) -> String {
    to_json(&ProblemFile::of(problem))
}

fn record_of(field: &Field, step: &TraceStep) -> StepRecord {
    let m = |x: &Matrix| rows_of(field, x);
    match step {
        TraceStep::LeftRightFactor { left, right } => StepRecord::LeftRightFactor {
            left: m(left),
            right: m(right),
        },
        TraceStep::Permute { perm } => StepRecord::Permute {
            perm: perm.images().to_vec(),
        },
        TraceStep::LevelReduce {
            gamma_top,
            gamma_next,
            r,
            s,
            pi,
            uprime,
        } => StepRecord::LevelReduce {
            gamma_top: *gamma_top,
            gamma_next: *gamma_next,
            r: *r,
            s: *s,
            pi: field.format(pi),
            uprime: m(uprime),
        },
        TraceStep::BlockEliminate { v, w } => StepRecord::BlockEliminate { v: m(v), w: m(w) },
        TraceStep::NormalizeY { nhat } => StepRecord::NormalizeY { nhat: m(nhat) },
        TraceStep::CoreIdentity { core, s1 } => StepRecord::CoreIdentity {
            core: m(core),
            s1: m(s1),
        },
        TraceStep::Base { unit } => StepRecord::Base { unit: m(unit) },
    }
}

fn step_of(field: &Field, n: usize, record: &StepRecord) -> Result<TraceStep, AppError> {
    let m = |rows: &Rows, what: &str| matrix_of(field, n, rows, what);
    Ok(match record {
        StepRecord::LeftRightFactor { left, right } => TraceStep::LeftRightFactor {
            left: m(left, "left")?,
            right: m(right, "right")?,
        },
        StepRecord::Permute { perm } => TraceStep::Permute {
            perm: Permutation::new(perm.clone())?,
        },
        StepRecord::LevelReduce {
            gamma_top,
            gamma_next,
            r,
            s,
            pi,
            uprime,
        } => TraceStep::LevelReduce {
            gamma_top: *gamma_top,
            gamma_next: *gamma_next,
            r: *r,
            s: *s,
            pi: field.parse(pi).map_err(|source| AppError::Element {
                what: format!("pi = {pi:?}"),
                source,
            })?,
            uprime: m(uprime, "uprime")?,
        },
        StepRecord::BlockEliminate { v, w } => TraceStep::BlockEliminate {
            v: m(v, "v")?,
            w: m(w, "w")?,
        },
        StepRecord::NormalizeY { nhat } => TraceStep::NormalizeY {
            nhat: m(nhat, "nhat")?,
        },
        StepRecord::CoreIdentity { core, s1 } => TraceStep::CoreIdentity {
            core: m(core, "core")?,
            s1: m(s1, "s1")?,
        },
        StepRecord::Base { unit } => TraceStep::Base {
            unit: m(unit, "unit")?,
        },
    })
}

/// A solution read back with the field of its problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub v: Matrix,
    pub trace: Option<DescentTrace>,
}

impl SolutionFile {
    pub fn of(field: &Field, v: &Matrix, trace: Option<&DescentTrace>) -> Self {
        SolutionFile {
            v: rows_of(field, v),
            trace: trace.map(|t| t.steps.iter().map(|s| record_of(field, s)).collect()),
        }
    }

    pub fn to_solution(&self, field: &Field) -> Result<Solution, AppError> {
        let n = self.v.len();
        let v = matrix_of(field, n, &self.v, "v")?;
        let trace = match &self.trace {
            None => None,
            Some(records) => Some(DescentTrace {
                n,
                steps: records
                    .iter()
                    .map(|r| step_of(field, n, r))
                    .collect::<Result<_, _>>()?,
            }),
        };
        Ok(Solution { v, trace })
    }
}

pub fn parse_solution(text: &str, field: &Field) -> Result<Solution, AppError> {
    serde_json::from_str::<SolutionFile>(text)?.to_solution(field)
}

pub fn emit_solution(field: &Field, v: &Matrix, trace: Option<&DescentTrace>) -> String {
    to_json(&SolutionFile::of(field, v, trace))
}
