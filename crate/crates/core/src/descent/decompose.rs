//! `GL_n(K) = GL_n(S) · T · GL_n(S)`, with `T` the invertible diagonals.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::meter::Meter;

/// `z = left · diagonal · right` with `left`, `right` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub left: Matrix,
    pub diagonal: Matrix,
    pub right: Matrix,
}

/// Factors an invertible `z` through a diagonal matrix.
///
/// At step `k` the entry of least valuation in the trailing block is moved
/// to `(k, k)`; all quotients by it are then integral, so clearing its row
/// and column is a unimodular operation. Ties are broken by the smallest
/// `(row, col)`. An already diagonal `z` is returned untouched.
pub fn diagonal_decompose(z: &Matrix, meter: &Meter) -> Result<Decomposition> {
    if !z.is_square() {
        return Err(Error::dim("diagonal_decompose of a non-square matrix"));
    }
    let field = z.field();
    let n = z.rows();
    if z.is_diagonal() {
        if z.diagonal_entries().iter().any(|d| d.is_zero()) {
            return Err(Error::SingularMatrix);
        }
        return Ok(Decomposition {
            left: Matrix::identity(field, n),
            diagonal: z.clone(),
            right: Matrix::identity(field, n),
        });
    }

    let mut m = z.clone();
    let mut left = Matrix::identity(field, n);
    let mut right = Matrix::identity(field, n);
    for k in 0..n {
        let rest = (n - k) as u64;
        meter.valuations(rest * rest);
        meter.group_ops(rest * rest);
        let (pi, pj) = m.min_valuation_pivot(k).ok_or(Error::SingularMatrix)?;
        // m <- S m, left <- left S
        m.swap_rows(k, pi);
        left.swap_cols(k, pi);
        // m <- m S, right <- S right
        m.swap_cols(k, pj);
        right.swap_rows(k, pj);

        let inv = m.get(k, k).recip()?;
        for i in k + 1..n {
            if m.get(i, k).is_zero() {
                continue;
            }
            let c = m.get(i, k) * &inv;
            m.row_axpy(i, k, &c, k);
            // left <- left (1 + c e_i e_k^T)
            left.col_axpy(k, i, &-&c, 0);
        }
        for j in k + 1..n {
            if m.get(k, j).is_zero() {
                continue;
            }
            let d = &inv * m.get(k, j);
            m.set(k, j, field.zero());
            // right <- (1 + d e_k e_j^T) right
            right.row_axpy(k, j, &-&d, 0);
        }
    }
    Ok(Decomposition {
        left,
        diagonal: m,
        right,
    })
}
