use std::time::Instant;

use isodescent_core::{descend_metered, DescentProblem, DescentResult, Meter};
use serde::Serialize;

/// Costs of one descent run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostReport {
    pub n: usize,
    pub matrix_ops: u64,
    pub valuations: u64,
    pub group_ops: u64,
    pub uniformizers: u64,
    /// Number of nonzero levels of the initial diagonal isometry.
    pub levels: usize,
    /// Largest numerator or denominator bit-length in `v`.
    pub max_bits: u64,
    pub wall_ms: f64,
}

impl CostReport {
    pub fn to_json(&self) -> String {
        crate::format::to_json(self)
    }
}

/// Runs the descent with a fresh meter and a wall clock.
pub fn run_descent(
    problem: &DescentProblem,
) -> (Result<DescentResult, isodescent_core::Error>, Meter, f64) {
    let meter = Meter::new();
    let start = Instant::now();
    let result = descend_metered(problem, &meter);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    (result, meter, wall_ms)
}

pub fn report(
    problem: &DescentProblem,
    result: &DescentResult,
    meter: &Meter,
    wall_ms: f64,
) -> CostReport {
    let c = meter.counts();
    CostReport {
        n: problem.n(),
        matrix_ops: c.matrix_ops,
        valuations: c.valuations,
        group_ops: c.group_ops,
        uniformizers: c.uniformizers,
        levels: result.profiles.first().map_or(0, |p| p.t()),
        max_bits: result.v.max_bit_length(),
        wall_ms,
    }
}
