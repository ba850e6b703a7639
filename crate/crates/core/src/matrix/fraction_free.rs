//! Fraction-free kernels for products, determinants and inverses.
//!
//! Each row (or column) is rescaled by a common denominator into an
//! integral domain `D` (ℤ, ℤ[i] or `k[t]`), the work happens there with
//! exact divisions only, and every output entry is reduced once at the end.
//! Pivoting follows the same minimal-valuation rule as elimination over the
//! field. An active entry differs from its field-level counterpart by the
//! row's clearing factor times a factor common to the whole block, so
//! offsetting each row by the valuation of its factor reproduces the
//! field-level pivot choice.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Field, FieldElement, FieldKind, Gaussian};
use crate::poly::{Coeffs, Poly, RatFunc};
use crate::rational::int_valuation;

pub(super) trait Domain {
    type E: Clone;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    /// `x / y`, known to be exact.
    fn div_exact(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn neg(&self, x: &Self::E) -> Self::E {
        self.sub(&self.zero(), x)
    }
    /// Valuation of a nonzero element.
    fn valuation(&self, x: &Self::E) -> i64;
    /// A common denominator `d` and numerators `v` with `xs[i] = v[i] / d`.
    fn clear<'a>(&self, xs: impl Iterator<Item = &'a FieldElement>) -> (Self::E, Vec<Self::E>);
    /// The field element `num / den`, in canonical form.
    fn lift(&self, num: &Self::E, den: &Self::E) -> FieldElement;
}

pub(super) struct Integers {
    p: u64,
}

impl Domain for Integers {
    type E = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }
    fn sub(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x - y
    }
    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }
    fn div_exact(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let (q, r) = x.div_rem(y);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }
    fn valuation(&self, x: &BigInt) -> i64 {
        int_valuation(x, self.p)
    }
    fn clear<'a>(&self, xs: impl Iterator<Item = &'a FieldElement>) -> (BigInt, Vec<BigInt>) {
        let xs: Vec<&BigRational> = xs.map(rational_part).collect();
        let d = xs.iter().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let v = xs.iter().map(|x| x.numer() * (&d / x.denom())).collect();
        (d, v)
    }
    fn lift(&self, num: &BigInt, den: &BigInt) -> FieldElement {
        FieldElement::Rational(BigRational::new(num.clone(), den.clone()))
    }
}

fn rational_part(x: &FieldElement) -> &BigRational {
    match x {
        FieldElement::Rational(r) => r,
        _ => unreachable!("matrix entry outside its field"),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub(super) struct GaussInt {
    re: BigInt,
    im: BigInt,
}

pub(super) struct GaussianIntegers {
    p: u64,
}

impl Domain for GaussianIntegers {
    type E = GaussInt;

    fn zero(&self) -> GaussInt {
        GaussInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }
    fn one(&self) -> GaussInt {
        GaussInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }
    fn is_zero(&self, x: &GaussInt) -> bool {
        x.re.is_zero() && x.im.is_zero()
    }
    fn add(&self, x: &GaussInt, y: &GaussInt) -> GaussInt {
        GaussInt {
            re: &x.re + &y.re,
            im: &x.im + &y.im,
        }
    }
    fn sub(&self, x: &GaussInt, y: &GaussInt) -> GaussInt {
        GaussInt {
            re: &x.re - &y.re,
            im: &x.im - &y.im,
        }
    }
    fn mul(&self, x: &GaussInt, y: &GaussInt) -> GaussInt {
        if x.im.is_zero() {
            return GaussInt {
                re: &x.re * &y.re,
                im: &x.re * &y.im,
            };
        }
        if y.im.is_zero() {
            return GaussInt {
                re: &x.re * &y.re,
                im: &x.im * &y.re,
            };
        }
        GaussInt {
            re: &x.re * &y.re - &x.im * &y.im,
            im: &x.re * &y.im + &x.im * &y.re,
        }
    }
    fn div_exact(&self, x: &GaussInt, y: &GaussInt) -> GaussInt {
        let z = GaussInt {
            re: y.re.clone(),
            im: -&y.im,
        };
        let t = self.mul(x, &z);
        let norm = &y.re * &y.re + &y.im * &y.im;
        let ints = Integers { p: self.p };
        GaussInt {
            re: ints.div_exact(&t.re, &norm),
            im: ints.div_exact(&t.im, &norm),
        }
    }
    fn valuation(&self, x: &GaussInt) -> i64 {
        // p is inert, so p | re + im·i iff p divides both parts.
        match (x.re.is_zero(), x.im.is_zero()) {
            (true, _) => int_valuation(&x.im, self.p),
            (_, true) => int_valuation(&x.re, self.p),
            _ => int_valuation(&x.re, self.p).min(int_valuation(&x.im, self.p)),
        }
    }
    fn clear<'a>(&self, xs: impl Iterator<Item = &'a FieldElement>) -> (GaussInt, Vec<GaussInt>) {
        let xs: Vec<&Gaussian> = xs
            .map(|x| match x {
                FieldElement::Gaussian(g) => g,
                _ => unreachable!("matrix entry outside its field"),
            })
            .collect();
        let d = xs
            .iter()
            .fold(BigInt::one(), |d, g| d.lcm(g.re.denom()).lcm(g.im.denom()));
        let v = xs
            .iter()
            .map(|g| GaussInt {
                re: g.re.numer() * (&d / g.re.denom()),
                im: g.im.numer() * (&d / g.im.denom()),
            })
            .collect();
        (
            GaussInt {
                re: d,
                im: BigInt::zero(),
            },
            v,
        )
    }
    fn lift(&self, num: &GaussInt, den: &GaussInt) -> FieldElement {
        let (num, den) = if den.im.is_zero() {
            (num.clone(), den.re.clone())
        } else {
            let conj = GaussInt {
                re: den.re.clone(),
                im: -&den.im,
            };
            (self.mul(num, &conj), &den.re * &den.re + &den.im * &den.im)
        };
        FieldElement::Gaussian(Gaussian {
            re: BigRational::new(num.re, den.clone()),
            im: BigRational::new(num.im, den),
        })
    }
}

pub(super) struct Polynomials {
    k: Coeffs,
}

impl Domain for Polynomials {
    type E = Poly;

    fn zero(&self) -> Poly {
        Poly::zero(self.k)
    }
    fn one(&self) -> Poly {
        Poly::one(self.k)
    }
    fn is_zero(&self, x: &Poly) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Poly, y: &Poly) -> Poly {
        x.add(y, self.k)
    }
    fn sub(&self, x: &Poly, y: &Poly) -> Poly {
        x.sub(y, self.k)
    }
    fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        x.mul(y, self.k)
    }
    fn div_exact(&self, x: &Poly, y: &Poly) -> Poly {
        x.div_exact(y, self.k)
    }
    fn valuation(&self, x: &Poly) -> i64 {
        x.low_order().expect("valuation of zero") as i64
    }
    fn clear<'a>(&self, xs: impl Iterator<Item = &'a FieldElement>) -> (Poly, Vec<Poly>) {
        let xs: Vec<&RatFunc> = xs
            .map(|x| match x {
                FieldElement::RatFunc(f) => f,
                _ => unreachable!("matrix entry outside its field"),
            })
            .collect();
        let mut d = self.one();
        for f in &xs {
            if f.is_zero() || f.denom().is_one() || *f.denom() == d {
                continue;
            }
            d = d.lcm(f.denom(), self.k);
        }
        let v = xs
            .iter()
            .map(|f| {
                if f.denom().is_one() {
                    self.mul(f.numer(), &d)
                } else {
                    self.mul(f.numer(), &self.div_exact(&d, f.denom()))
                }
            })
            .collect();
        (d, v)
    }
    fn lift(&self, num: &Poly, den: &Poly) -> FieldElement {
        FieldElement::RatFunc(RatFunc::new(self.k.q, num.clone(), den.clone()))
    }
}

/// Runs `f` with the integral domain matching `field`.
macro_rules! with_domain {
    ($field:expr, |$d:ident| $body:expr) => {
        match $field.kind() {
            FieldKind::RationalPadic => {
                let $d = Integers {
                    p: $field.p().unwrap(),
                };
                $body
            }
            FieldKind::GaussianInert => {
                let $d = GaussianIntegers {
                    p: $field.p().unwrap(),
                };
                $body
            }
            FieldKind::RatFuncTadic => {
                let $d = Polynomials {
                    k: Coeffs {
                        q: $field.coefficient_prime(),
                    },
                };
                $body
            }
        }
    };
}

/// Row-major `m × k` by `k × n` product.
pub(super) fn mul(
    field: Field,
    a: &[FieldElement],
    b: &[FieldElement],
    m: usize,
    k: usize,
    n: usize,
) -> Vec<FieldElement> {
    with_domain!(field, |d| mul_in(&d, a, b, m, k, n))
}

fn mul_in<D: Domain>(
    d: &D,
    a: &[FieldElement],
    b: &[FieldElement],
    m: usize,
    k: usize,
    n: usize,
) -> Vec<FieldElement> {
    let rows: Vec<_> = (0..m)
        .map(|i| d.clear(a[i * k..(i + 1) * k].iter()))
        .collect();
    let cols: Vec<_> = (0..n)
        .map(|j| d.clear((0..k).map(|l| &b[l * n + j])))
        .collect();
    let mut out = Vec::with_capacity(m * n);
    for (rd, rv) in &rows {
        for (cd, cv) in &cols {
            let mut acc = d.zero();
            for (x, y) in rv.iter().zip(cv) {
                if d.is_zero(x) || d.is_zero(y) {
                    continue;
                }
                acc = d.add(&acc, &d.mul(x, y));
            }
            if d.is_zero(&acc) {
                out.push(d.lift(&acc, &d.one()));
            } else {
                out.push(d.lift(&acc, &d.mul(rd, cd)));
            }
        }
    }
    out
}

/// Integral form of a square matrix: row denominators and the numerator
/// matrix, so that `a = diag(dens)⁻¹ · num`.
fn clear_rows<D: Domain>(d: &D, a: &[FieldElement], n: usize) -> (Vec<D::E>, Vec<D::E>) {
    let mut dens = Vec::with_capacity(n);
    let mut num = Vec::with_capacity(n * n);
    for i in 0..n {
        let (den, row) = d.clear(a[i * n..(i + 1) * n].iter());
        dens.push(den);
        num.extend(row);
    }
    (dens, num)
}

/// Minimal-valuation nonzero entry of the block `rows k.., cols k..n` of a
/// row-major matrix with `stride` columns; ties by `(row, col)`. Row `i`
/// carries the valuation `offs[i]` of its clearing factor, which is
/// subtracted so the choice matches elimination over the field.
fn pivot<D: Domain>(
    d: &D,
    m: &[D::E],
    offs: &[i64],
    stride: usize,
    n: usize,
    k: usize,
) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in k..n {
        for j in k..n {
            let x = &m[i * stride + j];
            if d.is_zero(x) {
                continue;
            }
            let v = d.valuation(x) - offs[i];
            if best.is_none_or(|(bv, _, _)| v < bv) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn swap_rows<T>(m: &mut [T], stride: usize, a: usize, b: usize) {
    if a != b {
        for j in 0..stride {
            m.swap(a * stride + j, b * stride + j);
        }
    }
}

fn swap_cols<T>(m: &mut [T], stride: usize, rows: usize, a: usize, b: usize) {
    if a != b {
        for i in 0..rows {
            m.swap(i * stride + a, i * stride + b);
        }
    }
}

/// Determinant of a square row-major matrix (Bareiss elimination).
pub(super) fn determinant(field: Field, a: &[FieldElement], n: usize) -> FieldElement {
    with_domain!(field, |d| determinant_in(&d, a, n))
}

fn determinant_in<D: Domain>(d: &D, a: &[FieldElement], n: usize) -> FieldElement {
    if n == 0 {
        return d.lift(&d.one(), &d.one());
    }
    let (dens, mut m) = clear_rows(d, a, n);
    let mut offs: Vec<i64> = dens.iter().map(|x| d.valuation(x)).collect();
    let mut prev = d.one();
    let mut negate = false;
    for k in 0..n {
        let Some((pi, pj)) = pivot(d, &m, &offs, n, n, k) else {
            return d.lift(&d.zero(), &d.one());
        };
        if pi != k {
            swap_rows(&mut m, n, k, pi);
            offs.swap(k, pi);
            negate = !negate;
        }
        if pj != k {
            swap_cols(&mut m, n, n, k, pj);
            negate = !negate;
        }
        let p = m[k * n + k].clone();
        for i in k + 1..n {
            let c = m[i * n + k].clone();
            for j in k + 1..n {
                let x = d.sub(&d.mul(&p, &m[i * n + j]), &d.mul(&c, &m[k * n + j]));
                m[i * n + j] = d.div_exact(&x, &prev);
            }
            m[i * n + k] = d.zero();
        }
        prev = p;
    }
    let det = if negate { d.neg(&prev) } else { prev };
    let den = dens.iter().fold(d.one(), |acc, x| d.mul(&acc, x));
    d.lift(&det, &den)
}

/// Inverse of a square row-major matrix (fraction-free Gauss-Jordan);
/// `None` if singular.
pub(super) fn inverse(field: Field, a: &[FieldElement], n: usize) -> Option<Vec<FieldElement>> {
    with_domain!(field, |d| inverse_in(&d, a, n))
}

fn inverse_in<D: Domain>(d: &D, a: &[FieldElement], n: usize) -> Option<Vec<FieldElement>> {
    let (dens, num) = clear_rows(d, a, n);
    let w = 2 * n;
    // Augmented [num | I].
    let mut m = Vec::with_capacity(n * w);
    for i in 0..n {
        m.extend_from_slice(&num[i * n..(i + 1) * n]);
        m.extend((0..n).map(|j| if i == j { d.one() } else { d.zero() }));
    }
    let mut offs: Vec<i64> = dens.iter().map(|x| d.valuation(x)).collect();
    let mut prev = d.one();
    let mut col_swaps = Vec::with_capacity(n);
    for k in 0..n {
        let (pi, pj) = pivot(d, &m, &offs, w, n, k)?;
        swap_rows(&mut m, w, k, pi);
        offs.swap(k, pi);
        swap_cols(&mut m, w, n, k, pj);
        col_swaps.push(pj);
        let p = m[k * w + k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let c = m[i * w + k].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let x = &m[i * w + j];
                let x = if d.is_zero(&c) {
                    d.mul(&p, x)
                } else {
                    d.sub(&d.mul(&p, x), &d.mul(&c, &m[k * w + j]))
                };
                m[i * w + j] = d.div_exact(&x, &prev);
            }
            m[i * w + k] = d.zero();
        }
        prev = p;
    }
    // Right block is det·(num·Q)⁻¹; undo the column swaps on its rows.
    let mut right: Vec<D::E> = (0..n)
        .flat_map(|i| m[i * w + n..(i + 1) * w].iter().cloned())
        .collect();
    for (k, &pj) in col_swaps.iter().enumerate().rev() {
        swap_rows(&mut right, n, k, pj);
    }
    // a⁻¹ = num⁻¹ · diag(dens).
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for (j, den) in dens.iter().enumerate() {
            let x = &right[i * n + j];
            if d.is_zero(x) {
                out.push(d.lift(x, &d.one()));
            } else {
                out.push(d.lift(&d.mul(x, den), &prev));
            }
        }
    }
    Some(out)
}
