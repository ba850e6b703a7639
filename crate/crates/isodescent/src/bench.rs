//! Cost and bit-growth table over generated instances.

use std::io::Write;

use isodescent_core::forge::{generate_instance, GenProfile};
use isodescent_core::Field;
use serde::Serialize;

use crate::error::{core_tag, AppError};
use crate::run::{report, run_descent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelShape {
    /// `±1, …, ±⌊n/2⌋`
    Staircase,
    /// Random balanced pairs up to the given level.
    Sampled(i64),
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub field: Field,
    /// Inclusive.
    pub n_range: (usize, usize),
    pub seeds: Vec<u64>,
    pub repetitions: usize,
    pub rounds: usize,
    pub shape: LevelShape,
}

impl BenchConfig {
    pub fn profile(&self, n: usize, seed: u64) -> GenProfile {
        match self.shape {
            LevelShape::Staircase => GenProfile::staircase(n, self.rounds, seed),
            LevelShape::Sampled(max) => GenProfile::sampled(n, max, self.rounds, seed),
        }
    }
}

/// One CSV row. Cost columns are empty when the cell failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub seed: u64,
    pub rep: usize,
    pub status: String,
    pub mat_ops: Option<u64>,
    pub valuations: Option<u64>,
    pub group_ops: Option<u64>,
    pub uniformizers: Option<u64>,
    pub levels: Option<usize>,
    pub max_bits: Option<u64>,
    pub wall_ms: Option<String>,
}

impl BenchRow {
    fn failed(n: usize, seed: u64, rep: usize, status: &str) -> Self {
        BenchRow {
            n,
            seed,
            rep,
            status: status.to_string(),
            mat_ops: None,
            valuations: None,
            group_ops: None,
            uniformizers: None,
            levels: None,
            max_bits: None,
            wall_ms: None,
        }
    }
}

/// Runs every `(n, seed, rep)` cell in order, handing each row to `emit`
/// as soon as it is done. A failing cell yields a row with its error tag.
pub fn run(config: &BenchConfig, mut emit: impl FnMut(&BenchRow)) {
    let (lo, hi) = config.n_range;
    for n in lo..=hi {
        for &seed in &config.seeds {
            let instance = generate_instance(&config.field, &config.profile(n, seed));
            for rep in 0..config.repetitions {
                let row = match &instance {
                    Err(e) => BenchRow::failed(n, seed, rep, core_tag(e)),
                    Ok(problem) => match run_descent(problem) {
                        (Err(e), _, _) => BenchRow::failed(n, seed, rep, core_tag(&e)),
                        (Ok(result), meter, wall_ms) => {
                            let r = report(problem, &result, &meter, wall_ms);
                            BenchRow {
                                n,
                                seed,
                                rep,
                                status: "ok".to_string(),
                                mat_ops: Some(r.matrix_ops),
                                valuations: Some(r.valuations),
                                group_ops: Some(r.group_ops),
                                uniformizers: Some(r.uniformizers),
                                levels: Some(r.levels),
                                max_bits: Some(r.max_bits),
                                wall_ms: Some(format!("{:.3}", r.wall_ms)),
                            }
                        }
                    },
                };
                emit(&row);
            }
        }
    }
}

/// Runs the bench and writes CSV with a header row.
pub fn write_csv(config: &BenchConfig, out: impl Write) -> Result<(), AppError> {
    let mut w = csv::Writer::from_writer(out);
    let mut failure = None;
    run(config, |row| {
        if failure.is_none() {
            if let Err(e) = w.serialize(row).and_then(|_| Ok(w.flush()?)) {
                failure = Some(e);
            }
        }
    });
    match failure {
        Some(e) => Err(AppError::Invalid(format!("writing CSV: {e}"))),
        None => Ok(()),
    }
}
