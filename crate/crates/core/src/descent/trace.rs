//! Step-by-step record of a descent run.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{Matrix, Permutation, PermuteSide};
use crate::meter::Meter;

use super::block::compose_level;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    LeftRightFactor,
    Permute,
    LevelReduce,
    BlockEliminate,
    NormalizeY,
    CoreIdentity,
    Base,
}

impl StepKind {
    pub fn tag(self) -> &'static str {
        match self {
            StepKind::LeftRightFactor => "LEFT_RIGHT_FACTOR",
            StepKind::Permute => "PERMUTE",
            StepKind::LevelReduce => "LEVEL_REDUCE",
            StepKind::BlockEliminate => "BLOCK_ELIMINATE",
            StepKind::NormalizeY => "NORMALIZE_Y",
            StepKind::CoreIdentity => "CORE_IDENTITY",
            StepKind::Base => "BASE",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "LEFT_RIGHT_FACTOR" => StepKind::LeftRightFactor,
            "PERMUTE" => StepKind::Permute,
            "LEVEL_REDUCE" => StepKind::LevelReduce,
            "BLOCK_ELIMINATE" => StepKind::BlockEliminate,
            "NORMALIZE_Y" => StepKind::NormalizeY,
            "CORE_IDENTITY" => StepKind::CoreIdentity,
            "BASE" => StepKind::Base,
            _ => return None,
        })
    }
}

/// One recorded transformation. All matrices are `n × n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    /// `u = left · diag · right`; the solution is wrapped as `left · v · right`.
    LeftRightFactor {
        left: Matrix,
        right: Matrix,
    },
    /// Congruent relabelling by `perm`.
    Permute {
        perm: Permutation,
    },
    LevelReduce {
        gamma_top: i64,
        gamma_next: i64,
        r: usize,
        s: usize,
        pi: FieldElement,
        uprime: Matrix,
    },
    BlockEliminate {
        v: Matrix,
        w: Matrix,
    },
    /// `y⁻¹ ⊕ I_r ⊕ I_{n-2r}`
    NormalizeY {
        nhat: Matrix,
    },
    /// `U ⊕ I_{n-2r}` and the composed level isometry.
    CoreIdentity {
        core: Matrix,
        s1: Matrix,
    },
    /// The residual diagonal isometry once every level is gone; integral.
    Base {
        unit: Matrix,
    },
}

impl TraceStep {
    pub fn kind(&self) -> StepKind {
        match self {
            TraceStep::LeftRightFactor { .. } => StepKind::LeftRightFactor,
            TraceStep::Permute { .. } => StepKind::Permute,
            TraceStep::LevelReduce { .. } => StepKind::LevelReduce,
            TraceStep::BlockEliminate { .. } => StepKind::BlockEliminate,
            TraceStep::NormalizeY { .. } => StepKind::NormalizeY,
            TraceStep::CoreIdentity { .. } => StepKind::CoreIdentity,
            TraceStep::Base { .. } => StepKind::Base,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentTrace {
    pub n: usize,
    pub steps: Vec<TraceStep>,
}

/// Running `left · (·) · right` wrapper shared by the pipeline and replay,
/// so both produce the same bits.
#[derive(Debug, Clone)]
pub(crate) struct Wrapper {
    pub left: Matrix,
    pub right: Matrix,
}

impl Wrapper {
    pub fn new(field: Field, n: usize) -> Self {
        Wrapper {
            left: Matrix::identity(field, n),
            right: Matrix::identity(field, n),
        }
    }

    pub fn factor(&mut self, left: &Matrix, right: &Matrix, meter: &Meter) -> Result<()> {
        self.left = super::mul(&self.left, left, meter)?;
        self.right = super::mul(right, &self.right, meter)?;
        Ok(())
    }

    /// The state is conjugated by `P`; a solution `v'` of the new state
    /// maps back as `P* v' P`.
    pub fn permute(&mut self, perm: &Permutation) -> Result<()> {
        self.left = perm.apply(&self.left, PermuteSide::Cols)?;
        self.right = perm.apply(&self.right, PermuteSide::Rows)?;
        Ok(())
    }

    pub fn push_right(&mut self, s: &Matrix, meter: &Meter) -> Result<()> {
        self.right = super::mul(s, &self.right, meter)?;
        Ok(())
    }

    pub fn finish(&self, unit: &Matrix, meter: &Meter) -> Result<Matrix> {
        super::mul(&super::mul(&self.left, unit, meter)?, &self.right, meter)
    }
}

impl DescentTrace {
    /// Re-executes the recorded transformations and returns the isometry.
    /// Level isometries are recomposed from their recorded parts and must
    /// match the recorded `s1`.
    pub fn replay(&self, field: Field) -> Result<Matrix> {
        let meter = Meter::new();
        let mut wrap = Wrapper::new(field, self.n);
        let mut pending: (Option<&Matrix>, Option<&Matrix>, Option<&Matrix>) = (None, None, None);
        for step in &self.steps {
            match step {
                TraceStep::LeftRightFactor { left, right } => wrap.factor(left, right, &meter)?,
                TraceStep::Permute { perm } => wrap.permute(perm)?,
                TraceStep::LevelReduce { .. } => pending = (None, None, None),
                TraceStep::BlockEliminate { v, w } => {
                    pending.0 = Some(v);
                    pending.1 = Some(w);
                }
                TraceStep::NormalizeY { nhat } => pending.2 = Some(nhat),
                TraceStep::CoreIdentity { core, s1 } => {
                    let (Some(v), Some(w), Some(nhat)) = pending else {
                        return Err(Error::InvalidInput(
                            "trace: CORE_IDENTITY without its preceding steps".into(),
                        ));
                    };
                    let recomposed = compose_level(v, w, nhat, core, &meter)?;
                    if recomposed != *s1 {
                        return Err(Error::InvalidInput(
                            "trace: recorded level isometry does not match its parts".into(),
                        ));
                    }
                    wrap.push_right(&recomposed, &meter)?;
                }
                TraceStep::Base { unit } => return wrap.finish(unit, &meter),
            }
        }
        Err(Error::InvalidInput("trace has no BASE step".into()))
    }
}
