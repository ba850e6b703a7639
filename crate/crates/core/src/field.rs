//! Involutive valued fields.
//!
//! A [`Field`] describes one of three concrete fields `K` with an involution
//! `σ` and a discrete valuation `ν` satisfying `ν∘σ = ν`, `ν(2) = 0`, and
//! with every value realised by a `σ`-fixed element:
//!
//! * `ℚ` with the p-adic valuation and trivial involution,
//! * `ℚ(i)` with complex conjugation and the valuation of an inert prime
//!   `p ≡ 3 (mod 4)`,
//! * `k(t)` with the t-adic valuation and trivial involution, `k = ℚ` or `𝔽_q`.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeffs, RatFunc};
use crate::rational::{bit_length, prime_power, rational_valuation, write_rational};
use crate::value::ValExt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    RationalPadic,
    GaussianInert,
    RatFuncTadic,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::RationalPadic => "q-padic",
            FieldKind::GaussianInert => "gaussian-inert",
            FieldKind::RatFuncTadic => "ratfunc-tadic",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "q-padic" => Some(FieldKind::RationalPadic),
            "gaussian-inert" => Some(FieldKind::GaussianInert),
            "ratfunc-tadic" => Some(FieldKind::RatFuncTadic),
            _ => None,
        }
    }
}

/// Field descriptor. Cheap to copy; all element operations that need the
/// prime go through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    kind: FieldKind,
    /// The valuation prime; 0 for rational functions.
    p: u64,
    /// Characteristic of the coefficient field of `k(t)`; 0 means ℚ.
    coefficient_prime: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    crate::poly::modular::is_prime(n)
}

/// Primes are limited to 32 bits so residues multiply in `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

fn check_odd_prime(p: u64, what: &str) -> Result<()> {
    if p > MAX_PRIME {
        return Err(Error::InvalidDescriptor(format!(
            "{what} {p} exceeds the supported bound {MAX_PRIME}"
        )));
    }
    if p == 2 {
        return Err(Error::InvalidDescriptor(format!(
            "{what} must be odd: 2 is not a unit of the valuation ring"
        )));
    }
    if !is_prime(p) {
        return Err(Error::InvalidDescriptor(format!("{what} {p} is not prime")));
    }
    Ok(())
}

impl Field {
    pub fn rational_padic(p: u64) -> Result<Self> {
        check_odd_prime(p, "p")?;
        Ok(Field {
            kind: FieldKind::RationalPadic,
            p,
            coefficient_prime: 0,
        })
    }

    pub fn gaussian_inert(p: u64) -> Result<Self> {
        check_odd_prime(p, "p")?;
        if p % 4 != 3 {
            return Err(Error::InvalidDescriptor(format!(
                "p = {p} is not inert in Q(i); need p = 3 mod 4"
            )));
        }
        Ok(Field {
            kind: FieldKind::GaussianInert,
            p,
            coefficient_prime: 0,
        })
    }

    /// `k(t)` with the t-adic valuation; `coefficient_prime = 0` gives `k = ℚ`.
    pub fn ratfunc_tadic(coefficient_prime: u64) -> Result<Self> {
        if coefficient_prime != 0 {
            check_odd_prime(coefficient_prime, "coefficient characteristic")?;
        }
        Ok(Field {
            kind: FieldKind::RatFuncTadic,
            p: 0,
            coefficient_prime,
        })
    }

    /// Builds a descriptor from its kind and the single integer parameter
    /// used by the file format (`p`, or the coefficient characteristic).
    pub fn from_parts(kind: FieldKind, param: u64) -> Result<Self> {
        match kind {
            FieldKind::RationalPadic => Field::rational_padic(param),
            FieldKind::GaussianInert => Field::gaussian_inert(param),
            FieldKind::RatFuncTadic => Field::ratfunc_tadic(param),
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn p(&self) -> Option<u64> {
        (self.kind != FieldKind::RatFuncTadic).then_some(self.p)
    }

    pub fn coefficient_prime(&self) -> u64 {
        self.coefficient_prime
    }

    /// The integer parameter written to files: `p`, or the coefficient
    /// characteristic for rational functions.
    pub fn param(&self) -> u64 {
        match self.kind {
            FieldKind::RatFuncTadic => self.coefficient_prime,
            _ => self.p,
        }
    }

    pub fn has_trivial_involution(&self) -> bool {
        self.kind != FieldKind::GaussianInert
    }

    pub fn from_rational(&self, x: BigRational) -> FieldElement {
        match self.kind {
            FieldKind::RationalPadic => FieldElement::Rational(x),
            FieldKind::GaussianInert => FieldElement::Gaussian(Gaussian {
                re: x,
                im: BigRational::zero(),
            }),
            FieldKind::RatFuncTadic => {
                FieldElement::RatFunc(RatFunc::constant(self.coefficient_prime, x))
            }
        }
    }

    /// Like [`Field::from_rational`] but rejects rationals whose denominator
    /// vanishes in the coefficient field.
    pub fn try_from_rational(&self, x: &BigRational) -> Result<FieldElement> {
        if self.kind == FieldKind::RatFuncTadic {
            let k = Coeffs {
                q: self.coefficient_prime,
            };
            if !k.embeds(x) {
                return Err(Error::DivisionByZero);
            }
        }
        Ok(self.from_rational(x.clone()))
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// `i`, for Gaussian fields only.
    pub fn imaginary_unit(&self) -> Option<FieldElement> {
        (self.kind == FieldKind::GaussianInert).then(|| {
            FieldElement::Gaussian(Gaussian {
                re: BigRational::zero(),
                im: BigRational::one(),
            })
        })
    }

    /// The variable `t`, for rational function fields only.
    pub fn variable(&self) -> Option<FieldElement> {
        (self.kind == FieldKind::RatFuncTadic)
            .then(|| FieldElement::RatFunc(RatFunc::t_power(self.coefficient_prime, 1)))
    }

    /// Whether `x` is an element of this field.
    pub fn contains(&self, x: &FieldElement) -> bool {
        match (self.kind, x) {
            (FieldKind::RationalPadic, FieldElement::Rational(_)) => true,
            (FieldKind::GaussianInert, FieldElement::Gaussian(_)) => true,
            (FieldKind::RatFuncTadic, FieldElement::RatFunc(f)) => {
                f.characteristic() == self.coefficient_prime
            }
            _ => false,
        }
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Checked binary arithmetic.
    pub fn arith(&self, op: ArithOp, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        match op {
            ArithOp::Add => Ok(x + y),
            ArithOp::Sub => Ok(x - y),
            ArithOp::Mul => Ok(x * y),
            ArithOp::Div => x.checked_div(y),
            ArithOp::Neg => Ok(-x),
        }
    }

    /// `x^σ`.
    pub fn involute(&self, x: &FieldElement) -> FieldElement {
        x.involute()
    }

    /// `ν(x)`, with `ν(0) = ∞`.
    pub fn valuation(&self, x: &FieldElement) -> ValExt {
        if x.is_zero() {
            return ValExt::Infinity;
        }
        let v = match x {
            FieldElement::Rational(r) => rational_valuation(r, self.p),
            // Valuation of the norm, halved. For an inert prime the norm
            // valuation is always even.
            FieldElement::Gaussian(g) => rational_valuation(&g.norm(), self.p) / 2,
            FieldElement::RatFunc(f) => f.t_adic_valuation().unwrap(),
        };
        ValExt::Finite(v)
    }

    /// A `σ`-fixed element of valuation exactly `gamma`: `p^gamma` or `t^gamma`.
    pub fn uniformizer_power(&self, gamma: i64) -> FieldElement {
        match self.kind {
            FieldKind::RatFuncTadic => {
                FieldElement::RatFunc(RatFunc::t_power(self.coefficient_prime, gamma))
            }
            _ => self.from_rational(prime_power(self.p, gamma)),
        }
    }

    pub fn is_integral(&self, x: &FieldElement) -> bool {
        self.valuation(x).is_integral()
    }

    pub fn is_unit(&self, x: &FieldElement) -> bool {
        self.valuation(x) == ValExt::ZERO
    }

    pub fn parse(&self, text: &str) -> Result<FieldElement> {
        crate::parse::parse_element(text, self)
    }

    pub fn format(&self, x: &FieldElement) -> String {
        x.to_element_string()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.name(), self.param())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Unary; the second operand is ignored apart from the field check.
    Neg,
}

/// `re + im·i` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn conj(&self) -> Gaussian {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

/// An exact element of one of the concrete fields. Canonical: two elements
/// are equal iff their representations are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Gaussian(Gaussian),
    RatFunc(RatFunc),
}

fn mismatch() -> ! {
    panic!("arithmetic on elements of different fields")
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Gaussian(g) => g.re.is_zero() && g.im.is_zero(),
            FieldElement::RatFunc(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Gaussian(g) => g.re.is_one() && g.im.is_zero(),
            FieldElement::RatFunc(f) => f.is_one(),
        }
    }

    pub fn involute(&self) -> FieldElement {
        match self {
            FieldElement::Gaussian(g) => FieldElement::Gaussian(g.conj()),
            other => other.clone(),
        }
    }

    pub fn recip(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Gaussian(g) => {
                let n = g.norm();
                FieldElement::Gaussian(Gaussian {
                    re: &g.re / &n,
                    im: -&g.im / &n,
                })
            }
            FieldElement::RatFunc(f) => FieldElement::RatFunc(f.recip().unwrap()),
        })
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let mut base = if e < 0 { self.recip()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = match self {
            FieldElement::Rational(_) => FieldElement::Rational(BigRational::one()),
            FieldElement::Gaussian(_) => FieldElement::Gaussian(Gaussian {
                re: BigRational::one(),
                im: BigRational::zero(),
            }),
            FieldElement::RatFunc(f) => {
                FieldElement::RatFunc(RatFunc::constant(f.characteristic(), BigRational::one()))
            }
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Largest bit length of any integer in the representation.
    pub fn bit_length(&self) -> u64 {
        match self {
            FieldElement::Rational(r) => bit_length(r),
            FieldElement::Gaussian(g) => bit_length(&g.re).max(bit_length(&g.im)),
            FieldElement::RatFunc(f) => f.max_bit_length(),
        }
    }

    /// The element in the textual element grammar.
    pub fn to_element_string(&self) -> String {
        let mut out = String::new();
        match self {
            FieldElement::Rational(r) => write_rational(&mut out, r),
            FieldElement::Gaussian(g) => {
                if g.im.is_zero() {
                    write_rational(&mut out, &g.re);
                } else {
                    if !g.re.is_zero() {
                        write_rational(&mut out, &g.re);
                        if g.im > BigRational::zero() {
                            out.push('+');
                        }
                    }
                    if g.im.is_one() {
                    } else if (-&g.im).is_one() {
                        out.push('-');
                    } else {
                        write_rational(&mut out, &g.im);
                        out.push('*');
                    }
                    out.push('i');
                }
            }
            FieldElement::RatFunc(f) => f.write_to(&mut out),
        }
        out
    }

    /// The rational value, for elements of ℚ or real Gaussians.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Gaussian(g) if g.im.is_zero() => Some(&g.re),
            _ => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_element_string())
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Gaussian(a), FieldElement::Gaussian(b)) => {
                FieldElement::Gaussian(Gaussian {
                    re: &a.re + &b.re,
                    im: &a.im + &b.im,
                })
            }
            (FieldElement::RatFunc(a), FieldElement::RatFunc(b))
                if a.characteristic() == b.characteristic() =>
            {
                FieldElement::RatFunc(a.add(b))
            }
            _ => mismatch(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Gaussian(a), FieldElement::Gaussian(b)) => {
                FieldElement::Gaussian(Gaussian {
                    re: &a.re - &b.re,
                    im: &a.im - &b.im,
                })
            }
            (FieldElement::RatFunc(a), FieldElement::RatFunc(b))
                if a.characteristic() == b.characteristic() =>
            {
                FieldElement::RatFunc(a.sub(b))
            }
            _ => mismatch(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Gaussian(a), FieldElement::Gaussian(b)) => {
                FieldElement::Gaussian(Gaussian {
                    re: &a.re * &b.re - &a.im * &b.im,
                    im: &a.re * &b.im + &a.im * &b.re,
                })
            }
            (FieldElement::RatFunc(a), FieldElement::RatFunc(b))
                if a.characteristic() == b.characteristic() =>
            {
                FieldElement::RatFunc(a.mul(b))
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Gaussian(a) => FieldElement::Gaussian(Gaussian {
                re: -&a.re,
                im: -&a.im,
            }),
            FieldElement::RatFunc(a) => FieldElement::RatFunc(a.neg()),
        }
    }
}

/// Rational `n/d` as a plain `BigRational`; test and generator convenience.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> Field {
        Field::rational_padic(5).unwrap()
    }

    #[test]
    fn fraction_arithmetic() {
        let f = q5();
        let x = f.from_rational(ratio(1, 2));
        let y = f.from_rational(ratio(2, 3));
        assert_eq!(
            f.arith(ArithOp::Mul, &x, &y).unwrap(),
            f.from_rational(ratio(1, 3))
        );
        assert_eq!(
            f.arith(ArithOp::Div, &f.one(), &f.zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn i_squared_is_minus_one() {
        let g = Field::gaussian_inert(3).unwrap();
        let i = g.imaginary_unit().unwrap();
        assert_eq!(g.arith(ArithOp::Mul, &i, &i).unwrap(), g.from_int(-1));
    }

    #[test]
    fn mixing_fields_is_rejected() {
        let g = Field::gaussian_inert(3).unwrap();
        let r = Field::ratfunc_tadic(0).unwrap();
        assert_eq!(
            g.arith(ArithOp::Add, &g.one(), &r.one()),
            Err(Error::FieldMismatch)
        );
        let r7 = Field::ratfunc_tadic(7).unwrap();
        assert_eq!(
            r.arith(ArithOp::Add, &r.one(), &r7.one()),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn involution() {
        let g = Field::gaussian_inert(7).unwrap();
        let x = g.parse("2+3*i").unwrap();
        assert_eq!(g.involute(&x), g.parse("2-3*i").unwrap());
        let f = q5();
        let y = f.from_rational(ratio(3, 5));
        assert_eq!(f.involute(&y), y);
    }

    #[test]
    fn valuation_examples() {
        let f = q5();
        assert_eq!(f.valuation(&f.from_rational(ratio(50, 3))), ValExt::from(2));
        assert_eq!(f.valuation(&f.zero()), ValExt::Infinity);
        let g = Field::gaussian_inert(3).unwrap();
        assert_eq!(g.valuation(&g.parse("1+i").unwrap()), ValExt::ZERO);
        assert_eq!(g.valuation(&g.parse("3+6*i").unwrap()), ValExt::from(1));
        assert_eq!(g.valuation(&g.parse("1/9*i").unwrap()), ValExt::from(-2));
    }

    #[test]
    fn uniformizers() {
        let f = q5();
        assert_eq!(f.uniformizer_power(2), f.from_int(25));
        assert_eq!(f.uniformizer_power(0), f.one());
        let r = Field::ratfunc_tadic(0).unwrap();
        let inv_t = r.uniformizer_power(-1);
        assert_eq!(inv_t, r.parse("1/t").unwrap());
        assert_eq!(r.valuation(&inv_t), ValExt::from(-1));
    }

    #[test]
    fn descriptor_validation() {
        assert!(Field::rational_padic(2).is_err());
        assert!(Field::rational_padic(9).is_err());
        assert!(Field::gaussian_inert(5).is_err());
        assert!(Field::gaussian_inert(2).is_err());
        assert!(Field::ratfunc_tadic(2).is_err());
        assert!(Field::ratfunc_tadic(0).is_ok());
        assert!(Field::ratfunc_tadic(5).is_ok());
        for f in [
            q5(),
            Field::gaussian_inert(3).unwrap(),
            Field::ratfunc_tadic(0).unwrap(),
        ] {
            assert_eq!(f.valuation(&f.from_int(2)), ValExt::ZERO);
        }
    }

    #[test]
    fn powers() {
        let f = q5();
        let x = f.from_rational(ratio(2, 3));
        assert_eq!(x.pow(3).unwrap(), f.from_rational(ratio(8, 27)));
        assert_eq!(x.pow(-2).unwrap(), f.from_rational(ratio(9, 4)));
        assert_eq!(f.zero().pow(-1), Err(Error::DivisionByZero));
    }
}
