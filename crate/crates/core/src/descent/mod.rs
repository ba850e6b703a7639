//! Descent of a rational isometry between unimodular hermitian forms to an
//! integral one.
//!
//! Given Gram matrices `a`, `b ∈ GL_n(S)` and `u ∈ GL_n(K)` with
//! `u·a·u* = b`, [`descend`] produces `v ∈ GL_n(S)` with `v·a·v* = b`:
//!
//! 1. factor `u = x̂·d·ŷ` with `x̂`, `ŷ` unimodular and `d` diagonal, and
//!    move the problem to `(ŷ a ŷ*, x̂⁻¹ b x̂⁻*, d)`;
//! 2. while the diagonal isometry has a nonzero top level `γ_t`, sort it,
//!    reduce the level with `π` of valuation `γ_t - γ_{t-1}`, and build an
//!    integral isometry for the reduced step;
//! 3. the remaining diagonal isometry is integral and closes the chain.

mod block;
mod decompose;
mod level;
mod trace;

pub use block::{
    block_eliminate, core_isometry, level_isometry, normalize_y, BlockElimination, LevelIsometry,
    YNormalization,
};
pub use decompose::{diagonal_decompose, Decomposition};
pub use level::{level_reduce, sort_balance, LevelProfile, LevelReduction};
pub use trace::{DescentTrace, StepKind, TraceStep};

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, PermuteSide};
use crate::meter::Meter;

use trace::Wrapper;

pub(crate) fn mul(a: &Matrix, b: &Matrix, meter: &Meter) -> Result<Matrix> {
    meter.matrix_op();
    a.mul(b)
}

pub(crate) fn inverse(a: &Matrix, meter: &Meter) -> Result<Matrix> {
    meter.matrix_op();
    a.inverse()
}

pub(crate) fn congruence(a: &Matrix, u: &Matrix, meter: &Meter) -> Result<Matrix> {
    meter.matrix_op();
    meter.matrix_op();
    a.congruence(u)
}

pub(crate) fn unimodular(a: &Matrix, meter: &Meter) -> bool {
    meter.valuations((a.rows() * a.cols()) as u64 + 1);
    meter.group_ops((a.rows() * a.cols()) as u64 + 1);
    meter.matrix_op();
    a.is_unimodular()
}

/// Source form `a`, target form `b` and rational isometry `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentProblem {
    pub field: Field,
    pub a: Matrix,
    pub b: Matrix,
    pub u: Matrix,
}

impl DescentProblem {
    /// Checks shapes and fields only; see [`DescentProblem::validate`].
    pub fn new(a: Matrix, b: Matrix, u: Matrix) -> Result<Self> {
        let field = a.field();
        if b.field() != field || u.field() != field {
            return Err(Error::FieldMismatch);
        }
        let n = a.rows();
        for (name, m) in [("a", &a), ("b", &b), ("u", &u)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::dim(format!(
                    "{name} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(DescentProblem { field, a, b, u })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Checks that `a`, `b` are `*`-symmetric and unimodular and that
    /// `u·a·u* = b`; the first failure is reported as `InvalidInput`.
    pub fn validate(&self, meter: &Meter) -> Result<()> {
        let fail = |what: &str| Err(Error::InvalidInput(format!("{what} failed")));
        if !self.a.is_star_symmetric() {
            return fail("a is *-symmetric");
        }
        if !self.b.is_star_symmetric() {
            return fail("b is *-symmetric");
        }
        if !unimodular(&self.a, meter) {
            return fail("a is unimodular");
        }
        if !unimodular(&self.b, meter) {
            return fail("b is unimodular");
        }
        if congruence(&self.a, &self.u, meter)? != self.b {
            return fail("u·a·u* = b");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentResult {
    /// Integral isometry: `v·a·v* = b`, `v ∈ GL_n(S)`.
    pub v: Matrix,
    pub trace: DescentTrace,
    /// Level profile observed at the start of every iteration.
    pub profiles: Vec<LevelProfile>,
}

/// Runs the descent with a throwaway meter.
pub fn descend(problem: &DescentProblem) -> Result<DescentResult> {
    descend_metered(problem, &Meter::new())
}

/// Runs the descent, recording costs in `meter`.
pub fn descend_metered(problem: &DescentProblem, meter: &Meter) -> Result<DescentResult> {
    let field = problem.field;
    let n = problem.n();
    problem.validate(meter)?;
    let mut steps = Vec::new();
    let mut profiles = Vec::new();
    let mut wrap = Wrapper::new(field, n);

    let dec = diagonal_decompose(&problem.u, meter)?;
    let right_adj = dec.right.star_adjoint();
    let mut a = mul(&mul(&dec.right, &problem.a, meter)?, &right_adj, meter)?;
    let left_inv = inverse(&dec.left, meter)?;
    let mut b = congruence(&problem.b, &left_inv, meter)?;
    let mut u = dec.diagonal;
    wrap.factor(&dec.left, &dec.right, meter)?;
    steps.push(TraceStep::LeftRightFactor {
        left: dec.left,
        right: dec.right,
    });

    let mut last_top: Option<i64> = None;
    loop {
        let (perm, profile) = sort_balance(&u, meter)?;
        if !perm.is_identity() {
            a = perm.apply(&a, PermuteSide::Congruent)?;
            b = perm.apply(&b, PermuteSide::Congruent)?;
            u = perm.apply(&u, PermuteSide::Congruent)?;
            wrap.permute(&perm)?;
            steps.push(TraceStep::Permute { perm });
        }
        let t = profile.t();
        profiles.push(profile.clone());
        if t == 0 {
            break;
        }
        let top = profile.top_gamma();
        meter.group_ops(1);
        if last_top.is_some_and(|prev| top >= prev) {
            return Err(Error::invariant("top level did not decrease"));
        }
        last_top = Some(top);

        let red = level_reduce(&a, &profile, meter)?;
        let (r, s) = profile.top_counts();
        let lvl = level_isometry(&a, &red.bprime, &red.pi, red.r, meter)?;
        wrap.push_right(&lvl.s1, meter)?;

        // Residual diagonal isometry u·u'^{-1}, entrywise.
        let residual: Vec<_> = u
            .diagonal_entries()
            .iter()
            .zip(red.uprime.diagonal_entries())
            .map(|(d, e)| d.checked_div(&e))
            .collect::<Result<_>>()?;
        u = Matrix::diagonal(field, &residual)?;
        a = red.bprime.clone();

        steps.push(TraceStep::LevelReduce {
            gamma_top: top,
            gamma_next: profile.next_gamma(),
            r,
            s,
            pi: red.pi,
            uprime: red.uprime,
        });
        steps.push(TraceStep::BlockEliminate {
            v: lvl.elimination.v,
            w: lvl.elimination.w,
        });
        steps.push(TraceStep::NormalizeY { nhat: lvl.nhat });
        steps.push(TraceStep::CoreIdentity {
            core: lvl.core,
            s1: lvl.s1,
        });
    }

    if !unimodular(&u, meter) {
        return Err(Error::invariant("residual isometry is not integral"));
    }
    if congruence(&a, &u, meter)? != b {
        return Err(Error::invariant("residual isometry does not carry a to b"));
    }
    let v = wrap.finish(&u, meter)?;
    steps.push(TraceStep::Base { unit: u });

    if !unimodular(&v, meter) {
        return Err(Error::invariant("result is not unimodular"));
    }
    if congruence(&problem.a, &v, meter)? != problem.b {
        return Err(Error::invariant("result is not an isometry"));
    }
    Ok(DescentResult {
        v,
        trace: DescentTrace { n, steps },
        profiles,
    })
}
