//! Random valid descent problems and an independent checker.
//!
//! Instances are built backwards: a diagonal `u` with balanced valuations,
//! a unimodular `*`-symmetric `a` whose entries respect
//! `ν(a_ij) ≥ max(0, -τ_i - τ_j)` so that `u·a·u*` stays integral, and then
//! random unimodular congruences on both sides.
//!
//! Randomness comes from `ChaCha8Rng` seeded with the profile's 64-bit
//! seed, so instances are reproducible across platforms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::descent::DescentProblem;
use crate::error::{Error, Result};
use crate::field::{ratio, Field, FieldElement, FieldKind};
use crate::matrix::{Matrix, Permutation, PermuteSide};

/// Attempts before [`generate_instance`] gives up.
pub const RETRY_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenProfile {
    pub n: usize,
    /// Diagonal valuations of `u`; padded with zeros up to `n`.
    pub levels: Vec<i64>,
    pub obfuscate_rounds: usize,
    pub seed: u64,
}

impl GenProfile {
    /// Levels `±1, ±2, …, ±⌊n/2⌋` (plus a 0 for odd `n`): one pair per
    /// level, the deepest profile a size-`n` problem admits.
    pub fn staircase(n: usize, obfuscate_rounds: usize, seed: u64) -> Self {
        let mut levels = Vec::with_capacity(n);
        for k in 1..=(n / 2) as i64 {
            levels.push(k);
            levels.push(-k);
        }
        GenProfile {
            n,
            levels,
            obfuscate_rounds,
            seed,
        }
    }

    /// Random balanced levels: up to `⌊n/2⌋` pairs `±g` with
    /// `g ∈ 1..=max_level`, drawn from `seed`.
    pub fn sampled(n: usize, max_level: i64, obfuscate_rounds: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1e7e1_u64);
        let pairs = if max_level < 1 {
            0
        } else {
            rng.random_range(0..=n / 2)
        };
        let mut levels = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let g = rng.random_range(1..=max_level);
            levels.push(g);
            levels.push(-g);
        }
        GenProfile {
            n,
            levels,
            obfuscate_rounds,
            seed,
        }
    }

    /// The full valuation vector, sorted descending.
    pub fn valuations(&self) -> Result<Vec<i64>> {
        if self.levels.len() > self.n {
            return Err(Error::InvalidInput(format!(
                "{} levels given for n = {}",
                self.levels.len(),
                self.n
            )));
        }
        let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
        for &g in &self.levels {
            *counts.entry(g.abs()).or_default() += g.signum();
        }
        if let Some((g, _)) = counts.iter().find(|(&g, &c)| g != 0 && c != 0) {
            return Err(Error::InvalidInput(format!(
                "levels are unbalanced at valuation {g}"
            )));
        }
        let mut vals = self.levels.clone();
        vals.resize(self.n, 0);
        vals.sort_unstable_by(|x, y| y.cmp(x));
        Ok(vals)
    }
}

fn small_nonzero(rng: &mut ChaCha8Rng, p: u64, bound: i64) -> i64 {
    loop {
        let v = rng.random_range(-bound..=bound);
        if v != 0 && (p == 0 || v.unsigned_abs() % p != 0) {
            return v;
        }
    }
}

/// Random element of the valuation ring (possibly zero).
fn random_integral(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    match field.kind() {
        FieldKind::RationalPadic => {
            let d = small_nonzero(rng, field.p().unwrap(), 6).abs();
            field.from_rational(ratio(rng.random_range(-9..=9), d))
        }
        FieldKind::GaussianInert => {
            let p = field.p().unwrap();
            let d = small_nonzero(rng, p, 4).abs();
            let re = field.from_rational(ratio(rng.random_range(-6..=6), d));
            let im = field.from_rational(ratio(rng.random_range(-6..=6), d));
            &re + &(&im * &field.imaginary_unit().unwrap())
        }
        FieldKind::RatFuncTadic => {
            let t = field.variable().unwrap();
            let q = field.coefficient_prime();
            let mut acc = field.zero();
            for _ in 0..rng.random_range(1..=2) {
                acc = &(&acc * &t) + &field.from_int(rng.random_range(-3..=3));
            }
            if rng.random_bool(0.1) {
                // divide by a unit 1 + c·t
                let c = field.from_int(small_nonzero(rng, q, 3));
                let den = &field.one() + &(&c * &t);
                acc = acc.checked_div(&den).unwrap();
            }
            acc
        }
    }
}

/// Random unit of the valuation ring.
fn random_unit(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    loop {
        let x = match field.kind() {
            FieldKind::RationalPadic => {
                let p = field.p().unwrap();
                field.from_rational(ratio(
                    small_nonzero(rng, p, 6),
                    small_nonzero(rng, p, 4).abs(),
                ))
            }
            FieldKind::GaussianInert => {
                let re = field.from_int(rng.random_range(-4..=4));
                let im = field.from_int(rng.random_range(-4..=4));
                &re + &(&im * &field.imaginary_unit().unwrap())
            }
            FieldKind::RatFuncTadic => {
                let c = field.from_int(small_nonzero(rng, field.coefficient_prime(), 4));
                &c + &(&random_integral(field, rng) * &field.variable().unwrap())
            }
        };
        if field.is_unit(&x) {
            return x;
        }
    }
}

/// Product of a random permutation, a random unit diagonal and `n + 1`
/// random integral elementary matrices. Unimodular by construction.
pub fn random_unimodular(field: &Field, n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unimodular_with(field, n, &mut rng)
}

fn random_unimodular_with(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.random_range(0..=i));
    }
    let diag: Vec<FieldElement> = (0..n).map(|_| random_unit(field, rng)).collect();
    let d = Matrix::diagonal(*field, &diag).unwrap();
    let mut m = Permutation::new(images)
        .unwrap()
        .apply(&d, PermuteSide::Rows)
        .unwrap();
    if n >= 2 {
        for _ in 0..n + 1 {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = random_integral(field, rng);
            if c.is_zero() {
                continue;
            }
            // m <- (1 - c e_i e_j^T) m
            m.row_axpy(i, j, &c, 0);
        }
    }
    assert!(
        m.is_unimodular(),
        "random_unimodular produced a non-unimodular matrix"
    );
    m
}

/// Applies `rounds` random congruences `a ← x a x*`, `b ← y b y*`,
/// `u ← y u x⁻¹`.
pub fn obfuscate(problem: &DescentProblem, rounds: usize, seed: u64) -> Result<DescentProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = problem.field;
    let n = problem.n();
    let mut p = problem.clone();
    for _ in 0..rounds {
        let x = random_unimodular_with(&field, n, &mut rng);
        let y = random_unimodular_with(&field, n, &mut rng);
        p.a = p.a.congruence(&x)?;
        p.b = p.b.congruence(&y)?;
        p.u = y.mul(&p.u)?.mul(&x.inverse()?)?;
    }
    if p.a.congruence(&p.u)? != p.b {
        return Err(Error::invariant("obfuscation broke u·a·u* = b"));
    }
    Ok(p)
}

/// Builds a valid problem realising `profile` over `field`.
pub fn generate_instance(field: &Field, profile: &GenProfile) -> Result<DescentProblem> {
    let taus = profile.valuations()?;
    let n = profile.n;
    let mut rng = ChaCha8Rng::seed_from_u64(profile.seed);
    let diag: Vec<FieldElement> = taus.iter().map(|&t| field.uniformizer_power(t)).collect();
    let u = Matrix::diagonal(*field, &diag)?;
    let half = field.from_rational(ratio(1, 2));

    for _ in 0..RETRY_BUDGET {
        let mut raw = Matrix::zeros(*field, n, n);
        for i in 0..n {
            for j in 0..n {
                let bound = (-taus[i] - taus[j]).max(0);
                let scaffold = if taus[i] == 0 { i == j } else { i + j == n - 1 };
                let mut x = if scaffold {
                    random_unit(field, &mut rng)
                } else {
                    field.zero()
                };
                if rng.random_bool(0.7) {
                    let noise = &random_integral(field, &mut rng) * &field.uniformizer_power(bound);
                    x = &x + &noise;
                }
                raw.set(i, j, x);
            }
        }
        let a = raw.add(&raw.star_adjoint())?.scalar_mul(&half);
        if !a.is_unimodular() {
            continue;
        }
        let b = a.congruence(&u)?;
        if !b.is_unimodular() {
            continue;
        }
        let base = DescentProblem::new(a, b, u.clone())?;
        let problem = obfuscate(&base, profile.obfuscate_rounds, rng.random())?;
        let report = verify_instance(&problem);
        if !report.passed() {
            return Err(Error::invariant(format!(
                "generated instance fails verification: {}",
                report.failures().join(", ")
            )));
        }
        return Ok(problem);
    }
    Err(Error::GenerationFailed(format!(
        "no unimodular form found in {RETRY_BUDGET} attempts"
    )))
}

/// Per-check outcome of [`verify_instance`] / [`verify_solution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<(String, bool)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.clone())
            .collect()
    }
}

/// Checks every problem invariant with plain matrix primitives; shares no
/// code with the descent pipeline.
pub fn verify_instance(problem: &DescentProblem) -> VerifyReport {
    let DescentProblem { a, b, u, .. } = problem;
    let mut checks = Vec::new();
    let mut check = |name: &str, ok: bool| checks.push((String::from(name), ok));
    check("a is *-symmetric", a.is_star_symmetric());
    check("b is *-symmetric", b.is_star_symmetric());
    check("a is unimodular", a.is_unimodular());
    check("b is unimodular", b.is_unimodular());
    let invertible = u.determinant().is_ok_and(|d| !d.is_zero());
    check("u is invertible", invertible);
    check("u·a·u* = b", a.congruence(u).is_ok_and(|c| c == *b));
    VerifyReport { checks }
}

/// Checks a claimed integral isometry `v` from `a` to `b`.
pub fn verify_solution(a: &Matrix, b: &Matrix, v: &Matrix) -> VerifyReport {
    let checks = alloc::vec![
        (String::from("v is unimodular"), v.is_unimodular()),
        (
            String::from("v·a·v* = b"),
            a.congruence(v).is_ok_and(|c| c == *b),
        ),
    ];
    VerifyReport { checks }
}
