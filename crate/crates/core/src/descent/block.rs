//! Construction of an integral isometry between `a` and
//! `b' = (π I_r ⊕ π⁻¹ I_r ⊕ I) · a · (π I_r ⊕ π⁻¹ I_r ⊕ I)*`.
//!
//! First the trailing `n - 2r` block is split off by unit triangular
//! congruences, then the `r × r` off-diagonal block is normalised to the
//! identity, and finally the closed-form core isometry
//!
//! ```text
//! w = (2 - πx - πz)^{-1}
//! U = [ π - 2π(1-πx)w      2(1-πx)w            ]
//!     [ 2(1-πz)w           π⁻¹ - 2π⁻¹(1-πz)w   ]
//! ```
//!
//! carries `[x, 1; 1, π²z]` to `[π²x, 1; 1, z]`. Every claimed identity is
//! checked exactly.

use alloc::vec;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::Matrix;
use crate::meter::Meter;

use super::{congruence, inverse, mul, unimodular};

/// Output of [`block_eliminate`]. `v` and `w` are `n × n`; `x`, `y`, `z`
/// are `r × r`; `a33` is `(n-2r) × (n-2r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockElimination {
    pub v: Matrix,
    pub w: Matrix,
    pub x: Matrix,
    pub y: Matrix,
    pub z: Matrix,
    pub a33: Matrix,
}

fn check_pi(pi: &FieldElement, field: crate::field::Field) -> Result<()> {
    if !field.contains(pi) || pi.involute() != *pi || field.valuation(pi) <= 0.into() {
        return Err(Error::InvalidInput(
            "π must be a σ-fixed element of positive valuation".into(),
        ));
    }
    Ok(())
}

/// `[[x, y, 0], [y*, c·z, 0], [0, 0, a33]]` (with `x` scaled by `cx`).
fn reduced_shape(
    x: &Matrix,
    y: &Matrix,
    z: &Matrix,
    a33: &Matrix,
    cx: &FieldElement,
    cz: &FieldElement,
) -> Result<Matrix> {
    let f = x.field();
    let r = x.rows();
    let m = a33.rows();
    Matrix::assemble(
        f,
        &[
            vec![x.scalar_mul(cx), y.clone(), Matrix::zeros(f, r, m)],
            vec![y.star_adjoint(), z.scalar_mul(cz), Matrix::zeros(f, r, m)],
            vec![Matrix::zeros(f, m, r), Matrix::zeros(f, m, r), a33.clone()],
        ],
    )
}

/// Splits off the trailing `(n-2r)`-block of `a` and of `bprime`.
///
/// The divisibility of `a`'s middle blocks by `π²` and `π` (forced by the
/// integrality of `bprime`) and the unimodularity of `a33` are checked,
/// as are both resulting block forms.
pub fn block_eliminate(
    a: &Matrix,
    bprime: &Matrix,
    pi: &FieldElement,
    r: usize,
    meter: &Meter,
) -> Result<BlockElimination> {
    let f = a.field();
    let n = a.rows();
    check_pi(pi, f)?;
    if !a.is_square() || bprime.rows() != n || !bprime.is_square() || 2 * r > n || r == 0 {
        return Err(Error::dim("block_eliminate: incompatible sizes"));
    }
    let pi2 = pi * pi;
    let (p1, p2) = (0..r, r..2 * r);
    let p3 = 2 * r..n;

    let a11 = a.block(p1.clone(), p1.clone())?;
    let a12 = a.block(p1.clone(), p2.clone())?;
    let a13 = a.block(p1.clone(), p3.clone())?;
    let a22 = a.block(p2.clone(), p2.clone())?;
    let a23 = a.block(p2.clone(), p3.clone())?;
    let a33 = a.block(p3.clone(), p3.clone())?;
    // b' carries a22/π² and a23/π in the same positions.
    let a22r = bprime.block(p2.clone(), p2.clone())?;
    let a23r = bprime.block(p2.clone(), p3.clone())?;

    let consistent = bprime.block(p1.clone(), p1.clone())? == a11.scalar_mul(&pi2)
        && bprime.block(p1.clone(), p2.clone())? == a12
        && bprime.block(p1.clone(), p3.clone())? == a13.scalar_mul(pi)
        && a22 == a22r.scalar_mul(&pi2)
        && a23 == a23r.scalar_mul(pi)
        && bprime.block(p3.clone(), p3.clone())? == a33;
    if !consistent || !a22r.is_integral() || !a23r.is_integral() {
        return Err(Error::invariant(
            "middle blocks of a are not divisible by π² and π as required",
        ));
    }

    if n == 2 * r {
        return Ok(BlockElimination {
            v: Matrix::identity(f, n),
            w: Matrix::identity(f, n),
            x: a11,
            y: a12,
            z: a22r,
            a33,
        });
    }

    if !unimodular(&a33, meter) {
        return Err(Error::invariant("trailing block a33 is not unimodular"));
    }
    let a33_inv = inverse(&a33, meter)?;
    let c13 = mul(&a13, &a33_inv, meter)?; // a13 a33^{-1}
    let c23 = mul(&a23r, &a33_inv, meter)?; // a23' a33^{-1}

    let x = a11.sub(&mul(&c13, &a13.star_adjoint(), meter)?)?;
    let y = a12.sub(&mul(&c13, &a23r.star_adjoint(), meter)?.scalar_mul(pi))?;
    let z = a22r.sub(&mul(&c23, &a23r.star_adjoint(), meter)?)?;

    let unit_upper = |top: Matrix, mid: Matrix| -> Result<Matrix> {
        let m = n - 2 * r;
        Matrix::assemble(
            f,
            &[
                vec![Matrix::identity(f, r), Matrix::zeros(f, r, r), top],
                vec![Matrix::zeros(f, r, r), Matrix::identity(f, r), mid],
                vec![
                    Matrix::zeros(f, m, r),
                    Matrix::zeros(f, m, r),
                    Matrix::identity(f, m),
                ],
            ],
        )
    };
    let v = unit_upper(c13.neg(), c23.scalar_mul(pi).neg())?;
    let w = unit_upper(c13.scalar_mul(pi).neg(), c23.neg())?;

    let one = f.one();
    if congruence(a, &v, meter)? != reduced_shape(&x, &y, &z, &a33, &one, &pi2)? {
        return Err(Error::invariant(
            "v·a·v* does not have the reduced block form",
        ));
    }
    if congruence(bprime, &w, meter)? != reduced_shape(&x, &y, &z, &a33, &pi2, &one)? {
        return Err(Error::invariant(
            "w·b'·w* does not have the reduced block form",
        ));
    }
    Ok(BlockElimination { v, w, x, y, z, a33 })
}

/// Output of [`normalize_y`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YNormalization {
    /// `y⁻¹ · x · y⁻*`
    pub xprime: Matrix,
    /// `y⁻¹ ⊕ I_r`
    pub nhat: Matrix,
}

/// Conjugates `[x, y; y*, π²z]` and `[π²x, y; y*, z]` by `y⁻¹ ⊕ I_r` so the
/// off-diagonal block becomes the identity.
pub fn normalize_y(
    x: &Matrix,
    y: &Matrix,
    z: &Matrix,
    pi: &FieldElement,
    meter: &Meter,
) -> Result<YNormalization> {
    let f = x.field();
    let r = x.rows();
    if !unimodular(y, meter) {
        return Err(Error::invariant("off-diagonal block y is not unimodular"));
    }
    let y_inv = inverse(y, meter)?;
    let xprime = congruence(x, &y_inv, meter)?;
    let nhat = y_inv.direct_sum(&Matrix::identity(f, r))?;

    let pi2 = pi * pi;
    let id = Matrix::identity(f, r);
    let pair = |x: &Matrix, y: &Matrix, z: &Matrix| {
        Matrix::assemble(
            f,
            &[
                vec![x.clone(), y.clone()],
                vec![y.star_adjoint(), z.clone()],
            ],
        )
    };
    let a_side = pair(x, y, &z.scalar_mul(&pi2))?;
    let b_side = pair(&x.scalar_mul(&pi2), y, z)?;
    if congruence(&a_side, &nhat, meter)? != pair(&xprime, &id, &z.scalar_mul(&pi2))?
        || congruence(&b_side, &nhat, meter)? != pair(&xprime.scalar_mul(&pi2), &id, z)?
    {
        return Err(Error::invariant(
            "normalising y did not produce identity corners",
        ));
    }
    Ok(YNormalization { xprime, nhat })
}

/// The closed-form integral isometry from `[x, 1; 1, π²z]` to
/// `[π²x, 1; 1, z]` for `*`-symmetric integral `x`, `z` and `σ`-fixed `π`
/// of positive valuation. Returns the `2r × 2r` matrix `U`.
pub fn core_isometry(x: &Matrix, z: &Matrix, pi: &FieldElement, meter: &Meter) -> Result<Matrix> {
    let f = x.field();
    let r = x.rows();
    check_pi(pi, f)?;
    if !x.is_square() || !z.is_square() || z.rows() != r {
        return Err(Error::dim("core_isometry: x and z must be r x r"));
    }
    if !x.is_star_symmetric() || !z.is_star_symmetric() || !x.is_integral() || !z.is_integral() {
        return Err(Error::InvalidInput(
            "core_isometry needs *-symmetric integral x and z".into(),
        ));
    }
    let id = Matrix::identity(f, r);
    let two = f.from_int(2);
    let pi_inv = pi.recip()?;
    let px = x.scalar_mul(pi);
    let pz = z.scalar_mul(pi);
    let m = id.scalar_mul(&two).sub(&px)?.sub(&pz)?;
    let w = inverse(&m, meter).map_err(|_| Error::invariant("2 - πx - πz is singular"))?;
    if !w.is_integral() {
        return Err(Error::invariant("w = (2 - πx - πz)^{-1} is not integral"));
    }
    let one_minus_px = id.sub(&px)?;
    let one_minus_pz = id.sub(&pz)?;
    let kx = mul(&one_minus_px, &w, meter)?.scalar_mul(&two); // 2(1-πx)w
    let kz = mul(&one_minus_pz, &w, meter)?.scalar_mul(&two); // 2(1-πz)w
    let u11 = id.sub(&kx)?.scalar_mul(pi);
    let u22 = id.sub(&kz)?.scalar_mul(&pi_inv);
    let u = Matrix::assemble(f, &[vec![u11, kx], vec![kz, u22]])?;

    if !u.is_integral() {
        return Err(Error::invariant("core isometry is not integral"));
    }
    if !unimodular(&u, meter) {
        return Err(Error::invariant("core isometry is not unimodular"));
    }
    let pi2 = pi * pi;
    let source = Matrix::assemble(
        f,
        &[
            vec![x.clone(), id.clone()],
            vec![id.clone(), z.scalar_mul(&pi2)],
        ],
    )?;
    let target = Matrix::assemble(
        f,
        &[vec![x.scalar_mul(&pi2), id.clone()], vec![id, z.clone()]],
    )?;
    if congruence(&source, &u, meter)? != target {
        return Err(Error::invariant("core isometry identity failed"));
    }
    Ok(u)
}

/// Everything computed while building one level's isometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelIsometry {
    pub elimination: BlockElimination,
    /// `y⁻¹ ⊕ I_r ⊕ I_{n-2r}`
    pub nhat: Matrix,
    /// `U ⊕ I_{n-2r}`
    pub core: Matrix,
    /// `W⁻¹ · Ñ⁻¹ · Û · Ñ · V`
    pub s1: Matrix,
}

/// Composes the pieces into `s1 ∈ GL_n(S)` with `s1 · a · s1* = bprime`.
pub fn level_isometry(
    a: &Matrix,
    bprime: &Matrix,
    pi: &FieldElement,
    r: usize,
    meter: &Meter,
) -> Result<LevelIsometry> {
    let f = a.field();
    let n = a.rows();
    let elimination = block_eliminate(a, bprime, pi, r, meter)?;
    let norm = normalize_y(&elimination.x, &elimination.y, &elimination.z, pi, meter)?;
    let u = core_isometry(&norm.xprime, &elimination.z, pi, meter)?;
    let rest = Matrix::identity(f, n - 2 * r);
    let nhat = norm.nhat.direct_sum(&rest)?;
    let core = u.direct_sum(&rest)?;
    let s1 = compose_level(&elimination.v, &elimination.w, &nhat, &core, meter)?;
    if !unimodular(&s1, meter) {
        return Err(Error::invariant("level isometry is not unimodular"));
    }
    if congruence(a, &s1, meter)? != *bprime {
        return Err(Error::invariant("level isometry does not carry a to b'"));
    }
    Ok(LevelIsometry {
        elimination,
        nhat,
        core,
        s1,
    })
}

/// `W⁻¹ · Ñ⁻¹ · Û · Ñ · V`.
pub(crate) fn compose_level(
    v: &Matrix,
    w: &Matrix,
    nhat: &Matrix,
    core: &Matrix,
    meter: &Meter,
) -> Result<Matrix> {
    let w_inv = inverse(w, meter)?;
    let n_inv = inverse(nhat, meter)?;
    let inner = mul(&mul(core, nhat, meter)?, v, meter)?;
    mul(&mul(&w_inv, &n_inv, meter)?, &inner, meter)
}
