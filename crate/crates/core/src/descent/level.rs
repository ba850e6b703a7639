//! Level bookkeeping for a diagonal rational isometry and the reduction of
//! its top level.

use alloc::format;
use alloc::vec::Vec;
use core::cell::Cell;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::{Matrix, Permutation};
use crate::meter::Meter;
use crate::value::ValExt;

/// The distinct absolute valuations `γ_t > … > γ_1 > γ_0 = 0` of the
/// diagonal entries, with per-level counts of entries of valuation `+γ`
/// (`plus`) and `-γ` (`minus`). For `γ_0 = 0` the zero-valued entries are
/// counted in `plus` and `minus` is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile {
    pub gammas: Vec<i64>,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl LevelProfile {
    /// Number of nonzero levels `t`.
    pub fn t(&self) -> usize {
        self.gammas.len() - 1
    }

    pub fn top_gamma(&self) -> i64 {
        self.gammas[0]
    }

    /// `γ_{t-1}`, the level below the top (0 when `t ≤ 1`).
    pub fn next_gamma(&self) -> i64 {
        self.gammas.get(1).copied().unwrap_or(0)
    }

    /// `(r, s)` at the top level.
    pub fn top_counts(&self) -> (usize, usize) {
        (self.plus[0], self.minus[0])
    }
}

fn diagonal_valuations(u: &Matrix, meter: &Meter) -> Result<Vec<i64>> {
    if !u.is_diagonal() {
        return Err(Error::InvalidInput("expected a diagonal isometry".into()));
    }
    let field = u.field();
    meter.valuations(u.rows() as u64);
    u.diagonal_entries()
        .iter()
        .map(|d| match field.valuation(d) {
            ValExt::Finite(v) => Ok(v),
            ValExt::Infinity => Err(Error::SingularMatrix),
        })
        .collect()
}

/// Sorts the diagonal of `u` by the key `(-|ν|, +γ before -γ, index)` and
/// reports the level profile. The returned permutation lists, for each new
/// position, the old index that lands there.
///
/// The top level must be balanced (`r = s`); this holds whenever `u` is an
/// isometry between unimodular forms.
pub fn sort_balance(u: &Matrix, meter: &Meter) -> Result<(Permutation, LevelProfile)> {
    let taus = diagonal_valuations(u, meter)?;
    let n = taus.len();
    meter.group_ops(n as u64);
    let key = |i: usize| (-taus[i].abs(), taus[i] < 0, i);
    let comparisons = Cell::new(0u64);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        comparisons.set(comparisons.get() + 1);
        key(i).cmp(&key(j))
    });
    meter.group_ops(comparisons.get());

    let mut gammas: Vec<i64> = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for &i in &order {
        let g = taus[i].abs();
        if gammas.last() != Some(&g) {
            gammas.push(g);
            plus.push(0);
            minus.push(0);
        }
        let l = gammas.len() - 1;
        if taus[i] < 0 {
            minus[l] += 1;
        } else {
            plus[l] += 1;
        }
    }
    if gammas.last() != Some(&0) {
        gammas.push(0);
        plus.push(0);
        minus.push(0);
    }
    let profile = LevelProfile {
        gammas,
        plus,
        minus,
    };
    if profile.t() > 0 {
        let (r, s) = profile.top_counts();
        if r != s {
            return Err(Error::BalanceViolation {
                gamma: profile.top_gamma(),
                r,
                s,
            });
        }
    }
    Ok((Permutation::new(order)?, profile))
}

/// Output of [`level_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReduction {
    /// `π·I_r ⊕ π^{-1}·I_r ⊕ I_{n-2r}`
    pub uprime: Matrix,
    /// `uprime · a · uprime*`, unimodular.
    pub bprime: Matrix,
    pub pi: FieldElement,
    pub r: usize,
}

/// Lowers the top level of a sorted diagonal isometry by one step.
///
/// `π` is the canonical uniformizer power of valuation `γ_t - γ_{t-1}`.
/// `a` is the current source form; the new target `uprime·a·uprime*` is
/// checked to be unimodular.
pub fn level_reduce(a: &Matrix, profile: &LevelProfile, meter: &Meter) -> Result<LevelReduction> {
    let field = a.field();
    let n = a.rows();
    let (r, s) = profile.top_counts();
    if profile.t() == 0 || r == 0 || r != s || 2 * r > n {
        return Err(Error::invariant(format!(
            "level_reduce needs a balanced nonzero top level, got r = {r}, s = {s}"
        )));
    }
    meter.group_ops(1);
    let step = profile.top_gamma() - profile.next_gamma();
    meter.uniformizer();
    let pi = field.uniformizer_power(step);
    let pi_inv = pi.recip()?;
    let diag: Vec<FieldElement> = (0..n)
        .map(|i| {
            if i < r {
                pi.clone()
            } else if i < 2 * r {
                pi_inv.clone()
            } else {
                field.one()
            }
        })
        .collect();
    let uprime = Matrix::diagonal(field, &diag)?;
    let bprime = super::congruence(a, &uprime, meter)?;
    if !super::unimodular(&bprime, meter) {
        return Err(Error::invariant("reduced form is not unimodular"));
    }
    Ok(LevelReduction {
        uprime,
        bprime,
        pi,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, Field};

    fn q5() -> Field {
        Field::rational_padic(5).unwrap()
    }

    fn diag(f: Field, ds: &[(i64, i64)]) -> Matrix {
        let ds: Vec<_> = ds
            .iter()
            .map(|&(n, d)| f.from_rational(ratio(n, d)))
            .collect();
        Matrix::diagonal(f, &ds).unwrap()
    }

    #[test]
    fn single_level() {
        let f = q5();
        let (p, prof) = sort_balance(&diag(f, &[(5, 1), (1, 5)]), &Meter::new()).unwrap();
        assert!(p.is_identity());
        assert_eq!(prof.gammas, [1, 0]);
        assert_eq!(prof.top_counts(), (1, 1));
    }

    #[test]
    fn integral_isometry_has_no_levels() {
        let f = q5();
        let (_, prof) = sort_balance(&diag(f, &[(2, 1), (1, 3), (7, 1)]), &Meter::new()).unwrap();
        assert_eq!(prof.t(), 0);
        assert_eq!(prof.gammas, [0]);
    }

    #[test]
    fn two_levels_sorted() {
        let f = q5();
        let u = diag(f, &[(25, 1), (5, 1), (1, 5), (1, 25)]);
        let (p, prof) = sort_balance(&u, &Meter::new()).unwrap();
        assert_eq!(p.images(), &[0, 3, 1, 2]);
        assert_eq!(prof.gammas, [2, 1, 0]);
        assert_eq!(prof.top_counts(), (1, 1));
        let sorted = p.apply(&u, crate::matrix::PermuteSide::Congruent).unwrap();
        assert_eq!(sorted, diag(f, &[(25, 1), (1, 25), (5, 1), (1, 5)]));
    }

    #[test]
    fn unbalanced_top_level() {
        let f = q5();
        let err = sort_balance(&diag(f, &[(5, 1), (5, 1), (1, 5)]), &Meter::new()).unwrap_err();
        assert_eq!(
            err,
            Error::BalanceViolation {
                gamma: 1,
                r: 2,
                s: 1
            }
        );
    }

    #[test]
    fn reduce_worked_example() {
        let f = q5();
        let a = Matrix::from_ints(f, &[&[1, 1], &[1, 25]]);
        let (_, prof) = sort_balance(&diag(f, &[(5, 1), (1, 5)]), &Meter::new()).unwrap();
        let red = level_reduce(&a, &prof, &Meter::new()).unwrap();
        assert_eq!(red.pi, f.from_int(5));
        assert_eq!(red.uprime, diag(f, &[(5, 1), (1, 5)]));
        assert_eq!(red.bprime, Matrix::from_ints(f, &[&[25, 1], &[1, 1]]));
    }

    #[test]
    fn single_level_collapse() {
        let f = q5();
        let u = diag(f, &[(25, 1), (1, 25)]);
        let a = Matrix::from_ints(f, &[&[1, 1], &[1, 625]]);
        let (_, prof) = sort_balance(&u, &Meter::new()).unwrap();
        assert_eq!(prof.gammas, [2, 0]);
        let red = level_reduce(&a, &prof, &Meter::new()).unwrap();
        assert_eq!(red.pi, f.from_int(25));
        let residual = u.mul(&red.uprime.inverse().unwrap()).unwrap();
        assert_eq!(residual, Matrix::identity(f, 2));
    }
}
