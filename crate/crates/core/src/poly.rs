//! Univariate polynomials in `t` and reduced rational functions, with
//! coefficients in ℚ (`q = 0`) or in the prime field 𝔽_q.
//!
//! Over ℚ a rational function is stored as `num / den` with `num, den ∈ ℤ[t]`
//! coprime in ℤ[t] and `den` of positive leading coefficient. Over 𝔽_q the
//! coefficients are residues in `[0, q)` and `den` is monic. Both forms are
//! canonical, so structural equality is equality of functions.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::write_rational;

/// Coefficient field of characteristic `q` (0 meaning ℚ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Coeffs {
    pub q: u64,
}

impl Coeffs {
    /// Residue of `c` mod `q`; `None` when its denominator vanishes mod `q`.
    fn residue(&self, c: &BigRational) -> Option<u64> {
        let q = BigInt::from(self.q);
        let num = c.numer().mod_floor(&q).to_u64().unwrap();
        let den = c.denom().mod_floor(&q).to_u64().unwrap();
        (den != 0).then(|| modular::mulmod(num, modular::inv(den, self.q), self.q))
    }

    /// Whether `c` has an image in the coefficient field.
    pub fn embeds(&self, c: &BigRational) -> bool {
        self.q == 0 || self.residue(c).is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// ℤ[t]
    Int(Vec<BigInt>),
    /// 𝔽_q[t] as residues
    Mod(Vec<u64>),
}

/// Dense polynomial, ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly(Repr);

fn trim_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

impl Poly {
    pub(crate) fn zero(k: Coeffs) -> Self {
        if k.q == 0 {
            Poly(Repr::Int(Vec::new()))
        } else {
            Poly(Repr::Mod(Vec::new()))
        }
    }

    pub(crate) fn one(k: Coeffs) -> Self {
        Poly::monomial(k, 1, 0)
    }

    /// `c·t^degree`.
    pub(crate) fn monomial(k: Coeffs, c: i64, degree: usize) -> Self {
        if k.q == 0 {
            let mut v = vec![BigInt::zero(); degree + 1];
            v[degree] = c.into();
            Poly::int(v)
        } else {
            let mut v = vec![0u64; degree + 1];
            v[degree] = c.rem_euclid(k.q as i64) as u64;
            Poly::residues(v)
        }
    }

    fn int(v: Vec<BigInt>) -> Self {
        Poly(Repr::Int(trim_int(v)))
    }

    fn residues(v: Vec<u64>) -> Self {
        Poly(Repr::Mod(modular::trim(v)))
    }

    fn len(&self) -> usize {
        match &self.0 {
            Repr::Int(v) => v.len(),
            Repr::Mod(v) => v.len(),
        }
    }

    fn coeff_is_zero(&self, i: usize) -> bool {
        match &self.0 {
            Repr::Int(v) => v[i].is_zero(),
            Repr::Mod(v) => v[i] == 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Int(v) => v.len() == 1 && v[0].is_one(),
            Repr::Mod(v) => v.len() == 1 && v[0] == 1,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn low_order(&self) -> Option<usize> {
        (0..self.len()).find(|&i| !self.coeff_is_zero(i))
    }

    /// Divides out `t^s`; caller guarantees `t^s` divides.
    fn shift_down(&self, s: usize) -> Poly {
        match &self.0 {
            Repr::Int(v) => Poly(Repr::Int(v[s..].to_vec())),
            Repr::Mod(v) => Poly(Repr::Mod(v[s..].to_vec())),
        }
    }

    pub(crate) fn add(&self, other: &Poly, k: Coeffs) -> Poly {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => {
                let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                let mut v = long.clone();
                for (x, y) in v.iter_mut().zip(short) {
                    *x += y;
                }
                Poly::int(v)
            }
            (Repr::Mod(a), Repr::Mod(b)) => {
                let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                let mut v = long.clone();
                for (x, y) in v.iter_mut().zip(short) {
                    *x = (*x + y) % k.q;
                }
                Poly::residues(v)
            }
            _ => unreachable!("polynomials over different coefficient fields"),
        }
    }

    pub(crate) fn neg(&self, k: Coeffs) -> Poly {
        match &self.0 {
            Repr::Int(v) => Poly(Repr::Int(v.iter().map(|c| -c).collect())),
            Repr::Mod(v) => Poly(Repr::Mod(
                v.iter()
                    .map(|&c| if c == 0 { 0 } else { k.q - c })
                    .collect(),
            )),
        }
    }

    pub(crate) fn sub(&self, other: &Poly, k: Coeffs) -> Poly {
        self.add(&other.neg(k), k)
    }

    pub(crate) fn mul(&self, other: &Poly, k: Coeffs) -> Poly {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => Poly::int(int_mul(a, b)),
            (Repr::Mod(a), Repr::Mod(b)) => Poly::residues(modular::mul(a, b, k.q)),
            _ => unreachable!("polynomials over different coefficient fields"),
        }
    }

    /// `self / divisor` for a division known to be exact in ℤ[t] or 𝔽_q[t].
    pub(crate) fn div_exact(&self, divisor: &Poly, k: Coeffs) -> Poly {
        match (&self.0, &divisor.0) {
            (Repr::Int(a), Repr::Int(b)) => Poly::int(int_div_exact(a, b)),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let (quot, rem) = modular::div_rem(a, b, k.q);
                debug_assert!(rem.is_empty(), "inexact division");
                Poly::residues(quot)
            }
            _ => unreachable!("polynomials over different coefficient fields"),
        }
    }

    /// Gcd with positive leading coefficient over ℤ (content included),
    /// monic over 𝔽_q. Zero only if both inputs are zero.
    pub(crate) fn gcd(&self, other: &Poly, k: Coeffs) -> Poly {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => Poly::int(int_gcd(a, b)),
            (Repr::Mod(a), Repr::Mod(b)) => Poly::residues(modular::gcd(a.clone(), b.clone(), k.q)),
            _ => unreachable!("polynomials over different coefficient fields"),
        }
    }

    /// Least common multiple, up to a unit.
    pub(crate) fn lcm(&self, other: &Poly, k: Coeffs) -> Poly {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() || self == other {
            return self.clone();
        }
        let g = self.gcd(other, k);
        self.mul(&other.div_exact(&g, k), k)
    }

    fn leading_is_negative(&self) -> bool {
        match &self.0 {
            Repr::Int(v) => v.last().is_some_and(Signed::is_negative),
            Repr::Mod(_) => false,
        }
    }

    fn leading_residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Mod(v) => v.last().copied(),
            Repr::Int(_) => None,
        }
    }

    fn scale_residue(&self, c: u64, k: Coeffs) -> Poly {
        match &self.0 {
            Repr::Mod(v) => Poly::residues(v.iter().map(|&x| modular::mulmod(x, c, k.q)).collect()),
            Repr::Int(_) => unreachable!("residue scaling over ℚ"),
        }
    }

    fn as_int_constant(&self) -> Option<&BigInt> {
        match &self.0 {
            Repr::Int(v) if v.len() == 1 => Some(&v[0]),
            _ => None,
        }
    }

    pub fn max_bit_length(&self) -> u64 {
        match &self.0 {
            Repr::Int(v) => v.iter().map(|c| c.bits()).max().unwrap_or(0),
            Repr::Mod(v) => v
                .iter()
                .map(|&c| 64 - c.leading_zeros() as u64)
                .max()
                .unwrap_or(0),
        }
    }

    /// Writes `self / den` in descending degree, e.g. `-1/2*t^3+t-3`.
    fn write_over(&self, den: &BigInt, out: &mut String) {
        if self.is_zero() {
            out.push('0');
            return;
        }
        let coeff = |i: usize| -> BigRational {
            match &self.0 {
                Repr::Int(v) => BigRational::new(v[i].clone(), den.clone()),
                Repr::Mod(v) => BigRational::from_integer(v[i].into()),
            }
        };
        let mut first = true;
        for deg in (0..self.len()).rev() {
            if self.coeff_is_zero(deg) {
                continue;
            }
            let c = coeff(deg);
            let mut term = String::new();
            if deg == 0 {
                write_rational(&mut term, &c);
            } else {
                if c.is_one() {
                } else if (-&c).is_one() {
                    term.push('-');
                } else {
                    write_rational(&mut term, &c);
                    term.push('*');
                }
                term.push('t');
                if deg > 1 {
                    let _ = write!(term, "^{deg}");
                }
            }
            if !first && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
            first = false;
        }
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Exact quotient in ℤ[t]; `b` nonzero and dividing `a`.
fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    if a.len() <= db {
        debug_assert!(a.iter().all(Zero::is_zero), "inexact division");
        return Vec::new();
    }
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lb);
        debug_assert!(rem.is_zero(), "inexact division");
        for (j, y) in b.iter().enumerate() {
            r[i - db + j] -= &c * y;
        }
        quot[i - db] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero), "inexact division");
    quot
}

fn content<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Content-free with positive leading coefficient.
fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = trim_int(v);
    let Some(lc) = v.last() else {
        return v;
    };
    let mut g = content(&v);
    if lc.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

fn positive_leading(v: Vec<BigInt>) -> Vec<BigInt> {
    if v.last().is_some_and(Signed::is_negative) {
        v.into_iter().map(|c| -c).collect()
    } else {
        v
    }
}

/// Quotient `a / b` in ℤ[t] if `b` divides `a` there.
fn int_div_checked(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return a.iter().all(Zero::is_zero).then(Vec::new);
    }
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[i - db + j] -= &c * y;
        }
        quot[i - db] = c;
    }
    r.iter().all(Zero::is_zero).then_some(quot)
}

/// Gcd in ℤ[t] with positive leading coefficient.
fn int_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let a = trim_int(a.to_vec());
    let b = trim_int(b.to_vec());
    if a.is_empty() {
        return positive_leading(b);
    }
    if b.is_empty() {
        return positive_leading(a);
    }
    let c = content(a.iter().chain(&b));
    let g = if a.len() == 1 || b.len() == 1 {
        vec![BigInt::one()]
    } else {
        primitive_gcd(&primitive(a), &primitive(b))
    };
    g.into_iter().map(|coef| coef * &c).collect()
}

/// Gcd of primitive polynomials of positive degree by Brown's modular
/// algorithm: images mod word-sized primes, CRT, then trial division.
fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    // The gcd's leading coefficient divides this; scale images to it.
    let lc = la.gcd(lb);
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut q = 1u64 << 32;
    loop {
        q = modular::prev_prime(q);
        let qi = BigInt::from(q);
        let image = |v: &[BigInt]| -> Vec<u64> {
            v.iter()
                .map(|c| c.mod_floor(&qi).to_u64().unwrap())
                .collect()
        };
        let (x, y) = (image(a), image(b));
        if x.last() == Some(&0) || y.last() == Some(&0) {
            continue;
        }
        let g = modular::gcd(x, y, q);
        if g.len() == 1 {
            return vec![BigInt::one()];
        }
        let scale = lc.mod_floor(&qi).to_u64().unwrap();
        let g: Vec<u64> = g.iter().map(|&c| modular::mulmod(c, scale, q)).collect();
        let (h, m) = match acc.take() {
            Some((h, m)) if h.len() == g.len() => {
                let (next, mq) = crt(&h, &m, &g, q);
                if next == h {
                    let cand = primitive(next.clone());
                    if int_div_checked(a, &cand).is_some() && int_div_checked(b, &cand).is_some() {
                        return cand;
                    }
                }
                (next, mq)
            }
            // A larger degree means `q` is unlucky.
            Some((h, m)) if h.len() < g.len() => (h, m),
            _ => (g.iter().map(|&c| balanced(c, q)).collect(), qi),
        };
        acc = Some((h, m));
    }
}

fn balanced(c: u64, q: u64) -> BigInt {
    if c > q / 2 {
        BigInt::from(c) - BigInt::from(q)
    } else {
        BigInt::from(c)
    }
}

/// Combines `h mod m` with `g mod q` into the balanced residue mod `m·q`.
fn crt(h: &[BigInt], m: &BigInt, g: &[u64], q: u64) -> (Vec<BigInt>, BigInt) {
    let qi = BigInt::from(q);
    let m_inv = modular::inv(m.mod_floor(&qi).to_u64().unwrap(), q);
    let mq = m * &qi;
    let half = &mq >> 1u32;
    let out = h
        .iter()
        .zip(g)
        .map(|(hc, &gc)| {
            let hq = hc.mod_floor(&qi).to_u64().unwrap();
            let k = modular::mulmod((gc + q - hq) % q, m_inv, q);
            let mut x = hc + m * BigInt::from(k);
            if x > half {
                x -= &mq;
            } else if x < -&half {
                x += &mq;
            }
            x
        })
        .collect();
    (out, mq)
}

/// A rational function in canonical form (see the module docs). Zero is
/// `0 / 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    q: u64,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    fn k(&self) -> Coeffs {
        Coeffs { q: self.q }
    }

    pub fn characteristic(&self) -> u64 {
        self.q
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn zero(q: u64) -> Self {
        let k = Coeffs { q };
        RatFunc {
            q,
            num: Poly::zero(k),
            den: Poly::one(k),
        }
    }

    /// The constant `c`.
    ///
    /// # Panics
    /// If the denominator of `c` vanishes in characteristic `q`.
    pub fn constant(q: u64, c: BigRational) -> Self {
        let k = Coeffs { q };
        if q == 0 {
            let (num, den) = c.into_raw();
            return RatFunc {
                q,
                num: Poly::int(vec![num]),
                den: Poly::int(vec![den]),
            };
        }
        let r = k
            .residue(&c)
            .expect("denominator divisible by the characteristic");
        RatFunc {
            q,
            num: Poly::residues(vec![r]),
            den: Poly::one(k),
        }
    }

    /// `t^e` for any integer `e`.
    pub fn t_power(q: u64, e: i64) -> Self {
        let k = Coeffs { q };
        let mono = Poly::monomial(k, 1, e.unsigned_abs() as usize);
        if e >= 0 {
            RatFunc {
                q,
                num: mono,
                den: Poly::one(k),
            }
        } else {
            RatFunc {
                q,
                num: Poly::one(k),
                den: mono,
            }
        }
    }

    /// Builds the canonical form of `num / den`; `den` must be nonzero.
    pub(crate) fn new(q: u64, num: Poly, den: Poly) -> Self {
        let k = Coeffs { q };
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero(q);
        }
        // Strip common powers of t first; cheap and very common here.
        let s = num.low_order().unwrap().min(den.low_order().unwrap());
        let (mut num, mut den) = if s > 0 {
            (num.shift_down(s), den.shift_down(s))
        } else {
            (num, den)
        };
        if !den.is_one() {
            let g = num.gcd(&den, k);
            if !g.is_one() {
                num = num.div_exact(&g, k);
                den = den.div_exact(&g, k);
            }
        }
        if den.leading_is_negative() {
            num = num.neg(k);
            den = den.neg(k);
        }
        if let Some(lc) = den.leading_residue().filter(|&lc| lc != 1) {
            let li = modular::inv(lc, q);
            num = num.scale_residue(li, k);
            den = den.scale_residue(li, k);
        }
        RatFunc { q, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub(crate) fn add(&self, o: &RatFunc) -> RatFunc {
        let k = self.k();
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(self.q, self.num.add(&o.num, k), self.den.clone());
        }
        let num = self.num.mul(&o.den, k).add(&o.num.mul(&self.den, k), k);
        RatFunc::new(self.q, num, self.den.mul(&o.den, k))
    }

    pub(crate) fn neg(&self) -> RatFunc {
        RatFunc {
            q: self.q,
            num: self.num.neg(self.k()),
            den: self.den.clone(),
        }
    }

    pub(crate) fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub(crate) fn mul(&self, o: &RatFunc) -> RatFunc {
        let k = self.k();
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.q);
        }
        RatFunc::new(self.q, self.num.mul(&o.num, k), self.den.mul(&o.den, k))
    }

    pub(crate) fn recip(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.q, self.den.clone(), self.num.clone()))
    }

    /// Value at `t = 0`, or `None` at a pole. Over 𝔽_q the result is a
    /// ratio of residues still to be reduced mod `q`.
    pub fn value_at_zero(&self) -> Option<BigRational> {
        let at_zero = |p: &Poly| match &p.0 {
            Repr::Int(v) => v.first().cloned().unwrap_or_default(),
            Repr::Mod(v) => v.first().copied().unwrap_or(0).into(),
        };
        let d = at_zero(&self.den);
        (!d.is_zero()).then(|| BigRational::new(at_zero(&self.num), d))
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn t_adic_valuation(&self) -> Option<i64> {
        let n = self.num.low_order()? as i64;
        let d = self.den.low_order().expect("nonzero denominator") as i64;
        Some(n - d)
    }

    pub fn max_bit_length(&self) -> u64 {
        self.num.max_bit_length().max(self.den.max_bit_length())
    }

    /// Polynomials, including those with rational coefficients, print as
    /// `-1/2*t^3+t-3`; anything else as `(num)/(den)`.
    pub fn write_to(&self, out: &mut String) {
        let one = BigInt::one();
        if self.den.is_one() {
            self.num.write_over(&one, out);
        } else if let Some(d) = self.den.as_int_constant() {
            self.num.write_over(d, out);
        } else {
            out.push('(');
            self.num.write_over(&one, out);
            out.push_str(")/(");
            self.den.write_over(&one, out);
            out.push(')');
        }
    }
}

/// Dense polynomial kernels over 𝔽_q on residues in `[0, q)`, `q < 2^32`.
pub(crate) mod modular {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn mulmod(a: u64, b: u64, q: u64) -> u64 {
        a * b % q
    }

    fn powmod(mut base: u64, mut e: u64, q: u64) -> u64 {
        let mut acc = 1u64;
        base %= q;
        while e > 0 {
            if e & 1 == 1 {
                acc = ((acc as u128 * base as u128) % q as u128) as u64;
            }
            base = ((base as u128 * base as u128) % q as u128) as u64;
            e >>= 1;
        }
        acc
    }

    /// Deterministic Miller-Rabin; these bases cover every `u64`.
    pub fn is_prime(n: u64) -> bool {
        const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        if n < 2 {
            return false;
        }
        for p in BASES {
            if n.is_multiple_of(p) {
                return n == p;
            }
        }
        let s = (n - 1).trailing_zeros();
        let d = (n - 1) >> s;
        BASES.iter().all(|&a| {
            let mut x = powmod(a, d, n);
            if x == 1 || x == n - 1 {
                return true;
            }
            (1..s).any(|_| {
                x = ((x as u128 * x as u128) % n as u128) as u64;
                x == n - 1
            })
        })
    }

    /// Largest prime below `n`.
    pub fn prev_prime(n: u64) -> u64 {
        (2..n)
            .rev()
            .find(|&c| is_prime(c))
            .expect("no prime below 2")
    }

    /// Inverse of a nonzero residue; `q` is prime.
    pub fn inv(a: u64, q: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a % q, q - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base, q);
            }
            base = mulmod(base, base, q);
            e >>= 1;
        }
        acc
    }

    pub fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // Each product is below 2^64, so the u128 sums cannot overflow.
        let mut out = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += (x * y) as u128;
            }
        }
        trim(out.into_iter().map(|c| (c % q as u128) as u64).collect())
    }

    pub fn div_rem(a: &[u64], b: &[u64], q: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let li = inv(b[db], q);
        let mut quot = vec![0u64; r.len() - db];
        for i in (db..r.len()).rev() {
            if r[i] == 0 {
                continue;
            }
            let c = mulmod(r[i], li, q);
            for (j, &y) in b.iter().enumerate() {
                let idx = i - db + j;
                // q² < 2^64 and c·y < q², so one reduction suffices.
                r[idx] = (r[idx] + q * q - c * y) % q;
            }
            quot[i - db] = c;
        }
        r.truncate(db);
        (trim(quot), trim(r))
    }

    /// Monic gcd.
    pub fn gcd(a: Vec<u64>, b: Vec<u64>, q: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a), trim(b));
        while !b.is_empty() {
            let r = div_rem(&a, &b, q).1;
            a = b;
            b = r;
        }
        if let Some(&lc) = a.last() {
            let li = inv(lc, q);
            for c in &mut a {
                *c = mulmod(*c, li, q);
            }
        }
        a
    }
}
