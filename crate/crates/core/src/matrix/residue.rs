//! Reduction of integral matrices to the residue field `S/𝔪`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::field::{Field, FieldElement, FieldKind};
use crate::poly::modular::{inv, mulmod};

/// Whether the reduction of the integral `n × n` matrix `a` is invertible.
pub(super) fn reduction_is_invertible(field: Field, a: &[FieldElement], n: usize) -> bool {
    match field.kind() {
        FieldKind::RationalPadic => {
            let p = field.p().unwrap();
            let m = a
                .iter()
                .map(|x| [reduce(x.as_rational().unwrap(), p), 0])
                .collect();
            finite_rank_full(m, n, p)
        }
        FieldKind::GaussianInert => {
            let p = field.p().unwrap();
            let m = a
                .iter()
                .map(|x| match x {
                    FieldElement::Gaussian(g) => [reduce(&g.re, p), reduce(&g.im, p)],
                    _ => unreachable!("matrix entry outside its field"),
                })
                .collect();
            finite_rank_full(m, n, p)
        }
        FieldKind::RatFuncTadic => {
            let at_zero = a.iter().map(|x| match x {
                FieldElement::RatFunc(f) => f.value_at_zero().expect("entry is integral"),
                _ => unreachable!("matrix entry outside its field"),
            });
            match field.coefficient_prime() {
                0 => rational_rank_full(at_zero.collect(), n),
                q => finite_rank_full(at_zero.map(|c| [reduce(&c, q), 0]).collect(), n, q),
            }
        }
    }
}

fn reduce(x: &BigRational, p: u64) -> u64 {
    let q = BigInt::from(p);
    let num = x.numer().mod_floor(&q).to_u64().unwrap();
    let den = x.denom().mod_floor(&q).to_u64().unwrap();
    mulmod(num, inv(den, p), p)
}

/// Elements `a + b·i` of 𝔽_p or 𝔽_p(i) = 𝔽_{p²} (`p ≡ 3 mod 4`); over 𝔽_p
/// the `i` part stays zero throughout.
type Fp2 = [u64; 2];

fn fp2_mul(x: Fp2, y: Fp2, p: u64) -> Fp2 {
    let re = (mulmod(x[0], y[0], p) + p - mulmod(x[1], y[1], p)) % p;
    let im = (mulmod(x[0], y[1], p) + mulmod(x[1], y[0], p)) % p;
    [re, im]
}

fn fp2_inv(x: Fp2, p: u64) -> Fp2 {
    let norm = (mulmod(x[0], x[0], p) + mulmod(x[1], x[1], p)) % p;
    let ni = inv(norm, p);
    [mulmod(x[0], ni, p), mulmod((p - x[1]) % p, ni, p)]
}

fn finite_rank_full(mut m: Vec<Fp2>, n: usize, p: u64) -> bool {
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r * n + c] != [0, 0]) else {
            return false;
        };
        for j in 0..n {
            m.swap(r * n + j, c * n + j);
        }
        let pinv = fp2_inv(m[c * n + c], p);
        for r in c + 1..n {
            if m[r * n + c] == [0, 0] {
                continue;
            }
            let f = fp2_mul(m[r * n + c], pinv, p);
            for j in c..n {
                let t = fp2_mul(f, m[c * n + j], p);
                let x = &mut m[r * n + j];
                *x = [(x[0] + p - t[0]) % p, (x[1] + p - t[1]) % p];
            }
        }
    }
    true
}

fn rational_rank_full(mut m: Vec<BigRational>, n: usize) -> bool {
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
            return false;
        };
        for j in 0..n {
            m.swap(r * n + j, c * n + j);
        }
        for r in c + 1..n {
            if m[r * n + c].is_zero() {
                continue;
            }
            let f = &m[r * n + c] / &m[c * n + c];
            for j in c..n {
                let t = &f * &m[c * n + j];
                m[r * n + j] -= t;
            }
        }
    }
    true
}
