//! Exact algebra for turning a rational isometry between two unimodular
//! hermitian forms over a valuation ring into an integral one.
//!
//! The crate is `no_std` (it needs `alloc`). It provides
//!
//! * [`Field`] / [`FieldElement`]: ℚ with a p-adic valuation, ℚ(i) with an
//!   inert prime, and `k(t)` with the t-adic valuation, all exact;
//! * [`Matrix`]: dense exact matrices with the `*`-adjoint, congruence and
//!   integrality / unimodularity tests;
//! * [`descent`]: the construction of the integral isometry itself;
//! * [`forge`]: generation of random valid problems and an independent
//!   verifier;
//! * [`Meter`]: per-run operation counters.
#![no_std]

extern crate alloc;

pub mod descent;
pub mod error;
pub mod field;
pub mod forge;
pub mod matrix;
pub mod meter;
mod parse;
pub mod poly;
mod rational;
pub mod value;

pub use descent::{descend, descend_metered, DescentProblem, DescentResult, DescentTrace};
pub use error::{Error, Result};
pub use field::{ArithOp, Field, FieldElement, FieldKind};
pub use matrix::{Matrix, Permutation, PermuteSide};
pub use meter::{Counts, Meter};
pub use value::ValExt;
