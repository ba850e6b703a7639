//! The `isodescent` command line.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use isodescent_core::forge::{
    generate_instance, verify_instance, verify_solution, GenProfile, VerifyReport,
};

use crate::bench::{write_csv, BenchConfig, LevelShape};
use crate::error::{exit, AppError};
use crate::format::{emit_problem, emit_solution, parse_field_flag, parse_problem, parse_solution};
use crate::run::{report, run_descent};

#[derive(Debug, Parser)]
#[command(
    name = "isodescent",
    version,
    about = "Integral isometries of unimodular hermitian forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Turn the rational isometry of a problem file into an integral one.
    Descend {
        input: PathBuf,
        /// Write the solution here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the step trace in the solution.
        #[arg(long)]
        trace: bool,
        /// Write a JSON cost report to this path (`-` for standard error).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print a random valid problem file.
    Generate {
        /// `kind:p`, e.g. `q-padic:5`, `gaussian-inert:3`, `ratfunc-tadic:0`.
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        /// Diagonal valuations of u, e.g. `+1,-1`; padded with zeros to n.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        levels: Vec<i64>,
        #[arg(long, default_value_t = 0)]
        rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a problem file, and optionally a solution for it.
    Verify {
        input: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// CSV of costs and output bit-lengths over generated instances.
    Bench {
        #[arg(long, default_value = "q-padic:5")]
        field: String,
        /// Inclusive size range, `lo..hi` or a single size.
        #[arg(long, default_value = "2..10")]
        range: String,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        rounds: usize,
        #[arg(long, value_enum, default_value_t = Shape::Staircase)]
        profile: Shape,
        /// Largest level for `--profile sampled`.
        #[arg(long, default_value_t = 3)]
        max_level: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Staircase,
    Sampled,
}

/// Runs a parsed command line; returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Descend {
            input,
            out,
            trace,
            report,
        } => descend(&input, out.as_deref(), trace, report.as_deref()),
        Command::Generate {
            field,
            n,
            levels,
            rounds,
            seed,
        } => generate(&field, n, levels, rounds, seed),
        Command::Verify { input, solution } => verify(&input, solution.as_deref()),
        Command::Bench {
            field,
            range,
            seeds,
            reps,
            rounds,
            profile,
            max_level,
        } => bench(&field, &range, seeds, reps, rounds, profile, max_level),
    };
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), AppError> {
    fs::write(path, text).map_err(|source| AppError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn stdout(text: &str) -> Result<(), AppError> {
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(|source| AppError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn descend(
    input: &Path,
    out: Option<&Path>,
    with_trace: bool,
    report_to: Option<&Path>,
) -> Result<(), AppError> {
    let problem = parse_problem(&read(input)?)?;
    let failures = verify_instance(&problem).failures();
    if !failures.is_empty() {
        return Err(AppError::Invalid(format!(
            "failed check: {}",
            failures.join(", ")
        )));
    }
    let (result, meter, wall_ms) = run_descent(&problem);
    let result = result?;
    let check = verify_solution(&problem.a, &problem.b, &result.v);
    if !check.passed() {
        return Err(AppError::Core(isodescent_core::Error::InternalInvariant(
            format!("descent output fails: {}", check.failures().join(", ")),
        )));
    }
    let text = emit_solution(
        &problem.field,
        &result.v,
        with_trace.then_some(&result.trace),
    );
    match out {
        Some(path) => write(path, &text)?,
        None => stdout(&text)?,
    }
    if let Some(path) = report_to {
        let json = report(&problem, &result, &meter, wall_ms).to_json();
        if path == Path::new("-") {
            eprint!("{json}");
        } else {
            write(path, &json)?;
        }
    }
    Ok(())
}

fn generate(
    field: &str,
    n: usize,
    levels: Vec<i64>,
    rounds: usize,
    seed: u64,
) -> Result<(), AppError> {
    let field = parse_field_flag(field)?;
    let levels = levels.into_iter().filter(|&g| g != 0).collect();
    let profile = GenProfile {
        n,
        levels,
        obfuscate_rounds: rounds,
        seed,
    };
    let problem = generate_instance(&field, &profile)?;
    stdout(&emit_problem(&problem))
}

fn print_report(report: &VerifyReport) {
    for (name, ok) in &report.checks {
        println!("{} {name}", if *ok { "ok  " } else { "FAIL" });
    }
}

fn verify(input: &Path, solution: Option<&Path>) -> Result<(), AppError> {
    let problem = parse_problem(&read(input)?)?;
    let mut report = verify_instance(&problem);
    if let Some(path) = solution {
        let sol = parse_solution(&read(path)?, &problem.field)?;
        if sol.v.rows() != problem.n() {
            return Err(AppError::Core(isodescent_core::Error::DimensionMismatch(
                format!(
                    "solution is {0}x{0}, problem has n = {1}",
                    sol.v.rows(),
                    problem.n()
                ),
            )));
        }
        report
            .checks
            .extend(verify_solution(&problem.a, &problem.b, &sol.v).checks);
        if let Some(trace) = &sol.trace {
            let replayed = trace.replay(problem.field).map(|v| v == sol.v);
            report
                .checks
                .push(("trace replays to v".into(), replayed == Ok(true)));
        }
    }
    print_report(&report);
    match report.failures() {
        f if f.is_empty() => Ok(()),
        f => Err(AppError::VerifyFailed(f)),
    }
}

/// `lo..hi`, `lo..=hi` or `n`, all inclusive.
pub fn parse_range(text: &str) -> Result<(usize, usize), AppError> {
    let bad = || AppError::Invalid(format!("--range {text:?}: expected lo..hi"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => (num(text)?, num(text)?),
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn bench(
    field: &str,
    range: &str,
    seeds: Vec<u64>,
    reps: usize,
    rounds: usize,
    profile: Shape,
    max_level: i64,
) -> Result<(), AppError> {
    let config = BenchConfig {
        field: parse_field_flag(field)?,
        n_range: parse_range(range)?,
        seeds,
        repetitions: reps,
        rounds,
        shape: match profile {
            Shape::Staircase => LevelShape::Staircase,
            Shape::Sampled => LevelShape::Sampled(max_level),
        },
    };
    write_csv(&config, io::stdout().lock())
}
