//! Small helpers on `BigRational` / `BigInt`.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// p-adic order of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn rational_valuation(x: &BigRational, p: u64) -> i64 {
    int_valuation(x.numer(), p) - int_valuation(x.denom(), p)
}

pub fn pow_int(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// `p^e` as a rational, for any integer `e`.
pub fn prime_power(p: u64, e: i64) -> BigRational {
    let m = pow_int(p, e.unsigned_abs());
    if e >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

/// Larger of the numerator and denominator bit lengths.
pub fn bit_length(x: &BigRational) -> u64 {
    x.numer().bits().max(x.denom().bits())
}

pub fn write_rational(out: &mut String, x: &BigRational) {
    if x.denom().is_one() {
        let _ = write!(out, "{}", x.numer());
    } else {
        let _ = write!(out, "{}/{}", x.numer(), x.denom());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let x = BigRational::new(50.into(), 3.into());
        assert_eq!(rational_valuation(&x, 5), 2);
        assert_eq!(rational_valuation(&x, 3), -1);
        assert_eq!(
            rational_valuation(&BigRational::new(7.into(), 125.into()), 5),
            -3
        );
    }

    #[test]
    fn powers() {
        assert_eq!(prime_power(5, 2), BigRational::from_integer(25.into()));
        assert_eq!(prime_power(5, -1), BigRational::new(1.into(), 5.into()));
        assert_eq!(prime_power(3, 0), BigRational::one());
    }
}
