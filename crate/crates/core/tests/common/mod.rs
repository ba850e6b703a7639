#![allow(dead_code)]

use isodescent_core::{Field, FieldElement, FieldKind, Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One field of every kind and parameter the tests care about.
pub fn fields() -> Vec<Field> {
    vec![
        Field::rational_padic(3).unwrap(),
        Field::rational_padic(5).unwrap(),
        Field::rational_padic(7).unwrap(),
        Field::gaussian_inert(3).unwrap(),
        Field::gaussian_inert(7).unwrap(),
        Field::ratfunc_tadic(0).unwrap(),
        Field::ratfunc_tadic(7).unwrap(),
    ]
}

/// ℚ p=5, ℚ(i) p=3, ℚ(t) and 𝔽_7(t).
pub fn one_per_kind() -> Vec<Field> {
    vec![
        Field::rational_padic(5).unwrap(),
        Field::gaussian_inert(3).unwrap(),
        Field::ratfunc_tadic(0).unwrap(),
        Field::ratfunc_tadic(7).unwrap(),
    ]
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A denominator in `1..=9` that is a unit of the valuation ring.
fn unit_den(field: &Field, rng: &mut ChaCha8Rng) -> i64 {
    let p = field.p().unwrap_or(0) as i64;
    loop {
        let d = rng.random_range(1..=9);
        if p == 0 || d % p != 0 {
            return d;
        }
    }
}

/// A unit of the valuation ring times a small element; valuation is 0 unless
/// the numerator happens to be divisible by the uniformizer.
fn small(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    match field.kind() {
        FieldKind::RationalPadic => {
            let d = unit_den(field, rng);
            field.from_rational(q(rng.random_range(-9..=9), d))
        }
        FieldKind::GaussianInert => {
            let d = unit_den(field, rng);
            let re = field.from_rational(q(rng.random_range(-9..=9), d));
            let im = field.from_rational(q(rng.random_range(-9..=9), d));
            &re + &(&im * &field.imaginary_unit().unwrap())
        }
        FieldKind::RatFuncTadic => {
            let t = field.variable().unwrap();
            let mut num = field.zero();
            let mut power = field.one();
            for _ in 0..rng.random_range(1..=3) {
                num = &num + &(&power * &field.from_int(rng.random_range(-9..=9)));
                power = &power * &t;
            }
            if rng.random_bool(0.3) {
                // 1 + c·t is a unit of k[t]_(t)
                let den = &field.one() + &(&t * &field.from_int(rng.random_range(-5..=5)));
                num.checked_div(&den).unwrap()
            } else {
                num
            }
        }
    }
}

/// Random element with valuation at least `lo` (or zero), up to about `hi`.
pub fn element_between(field: &Field, rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> FieldElement {
    if rng.random_bool(0.15) {
        return field.zero();
    }
    let e = rng.random_range(lo..=hi);
    &small(field, rng) * &field.uniformizer_power(e)
}

pub fn element(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    element_between(field, rng, -2, 2)
}

pub fn nonzero(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    loop {
        let x = element(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn integral(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    element_between(field, rng, 0, 2)
}

pub fn matrix_with(
    field: &Field,
    n: usize,
    rng: &mut ChaCha8Rng,
    mut gen: impl FnMut(&Field, &mut ChaCha8Rng) -> FieldElement,
) -> Matrix {
    let entries = (0..n * n).map(|_| gen(field, rng)).collect();
    Matrix::new(*field, n, n, entries).unwrap()
}

pub fn random_matrix(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    matrix_with(field, n, rng, element)
}

/// Random matrix with nonzero determinant.
pub fn invertible(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(field, n, rng);
        if !elimination_det(&m).is_zero() {
            return m;
        }
    }
}

/// Random `*`-symmetric integral matrix.
pub fn symmetric_integral(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(*field, n, n);
    for i in 0..n {
        for j in i..n {
            let mut x = integral(field, rng);
            if i == j {
                x = &x + &x.involute();
            }
            m.set(j, i, x.involute());
            m.set(i, j, x);
        }
    }
    m
}

pub fn naive_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    assert_eq!(a.cols(), b.rows());
    let mut out = Vec::with_capacity(a.rows() * b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = f.zero();
            for k in 0..a.cols() {
                acc = &acc + &(a.get(i, k) * b.get(k, j));
            }
            out.push(acc);
        }
    }
    Matrix::new(f, a.rows(), b.cols(), out).unwrap()
}

pub fn naive_adjoint(a: &Matrix) -> Matrix {
    let mut out = Vec::with_capacity(a.rows() * a.cols());
    for i in 0..a.cols() {
        for j in 0..a.rows() {
            out.push(a.get(j, i).involute());
        }
    }
    Matrix::new(a.field(), a.cols(), a.rows(), out).unwrap()
}

/// `u · a · u*` using only entrywise field arithmetic.
pub fn naive_congruence(a: &Matrix, u: &Matrix) -> Matrix {
    naive_mul(&naive_mul(u, a), &naive_adjoint(u))
}

/// Laplace expansion along the first row.
pub fn cofactor_det(a: &Matrix) -> FieldElement {
    let f = a.field();
    let n = a.rows();
    let rows: Vec<usize> = (0..n).collect();
    fn go(a: &Matrix, f: &Field, rows: &[usize], cols: &[usize]) -> FieldElement {
        if rows.is_empty() {
            return f.one();
        }
        let r = rows[0];
        let mut acc = f.zero();
        for (k, &c) in cols.iter().enumerate() {
            let x = a.get(r, c);
            if x.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
            let term = x * &go(a, f, &rows[1..], &rest);
            acc = if k % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }
    go(a, &f, &rows, &rows)
}

pub fn naive_integral(field: &Field, a: &Matrix) -> bool {
    a.entries()
        .iter()
        .all(|x| field.valuation(x) >= isodescent_core::ValExt::Finite(0))
}

/// Textbook elimination over K taking the first nonzero pivot.
#[allow(clippy::needless_range_loop)]
pub fn elimination_det(a: &Matrix) -> FieldElement {
    let f = a.field();
    let n = a.rows();
    let mut m = a.to_rows();
    let mut det = f.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return f.zero();
        };
        if p != k {
            m.swap(p, k);
            det = -&det;
        }
        det = &det * &m[k][k];
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let c = m[i][k].checked_div(&m[k][k]).unwrap();
            for j in k..n {
                let t = &c * &m[k][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    det
}

/// Integral with a unit determinant.
pub fn naive_unimodular(field: &Field, a: &Matrix) -> bool {
    naive_integral(field, a) && field.is_unit(&elimination_det(a))
}
