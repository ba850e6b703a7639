//! Dense exact matrices over a [`Field`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::value::ValExt;

mod fraction_free;
mod residue;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldElement>,
}

impl Matrix {
    /// Row-major construction; checks the entry count and that every entry
    /// lives in `field`.
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if !entries.iter().all(|e| field.contains(e)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dim("ragged rows"));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Small-integer convenience constructor.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Matrix::from_rows(field, data).expect("rectangular integer matrix")
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn diagonal(field: Field, ds: &[FieldElement]) -> Result<Self> {
        let n = ds.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, d) in ds.iter().enumerate() {
            if !field.contains(d) {
                return Err(Error::FieldMismatch);
            }
            m.entries[i * n + i] = d.clone();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        assert!(self.field.contains(&x), "entry from a different field");
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn same_shape(&self, other: &Matrix, op: &str) -> Result<()> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&FieldElement, &FieldElement) -> FieldElement,
    ) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| -x)
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &FieldElement) -> Matrix {
        assert!(self.field.contains(c), "scalar from a different field");
        self.map(|x| c * x)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = fraction_free::mul(
            self.field,
            &self.entries,
            &other.entries,
            self.rows,
            self.cols,
            other.cols,
        );
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            field: self.field,
            entries,
        })
    }

    /// `a*`: transpose with the involution applied entrywise.
    pub fn star_adjoint(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).involute());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    pub fn is_star_symmetric(&self) -> bool {
        self.is_square() && *self == self.star_adjoint()
    }

    /// `u·a·u*`.
    pub fn congruence(&self, u: &Matrix) -> Result<Matrix> {
        if !self.is_square() || !u.is_square() || u.rows != self.rows {
            return Err(Error::dim(format!(
                "congruence of {}x{} by {}x{}",
                self.rows, self.cols, u.rows, u.cols
            )));
        }
        u.mul(self)?.mul(&u.star_adjoint())
    }

    /// Entrywise valuation, row-major rows.
    pub fn valuation_matrix(&self) -> Vec<Vec<ValExt>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| self.field.valuation(x))
                    .collect()
            })
            .collect()
    }

    /// Every entry lies in the valuation ring.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| self.field.is_integral(x))
    }

    /// Integral with unit determinant, i.e. an element of `GL_n(S)`. The
    /// determinant is a unit iff it survives reduction to the residue
    /// field, which is where it is computed.
    pub fn is_unimodular(&self) -> bool {
        if !self.is_square() || !self.is_integral() {
            return false;
        }
        residue::reduction_is_invertible(self.field, &self.entries, self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<FieldElement> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Position of an entry of minimal valuation in the square submatrix
    /// starting at `(k, k)`; ties go to the lexicographically smallest
    /// `(row, col)`. `None` if that submatrix is zero.
    pub(crate) fn min_valuation_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(ValExt, usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let v = self.field.valuation(x);
                if best.as_ref().is_none_or(|(bv, _, _)| v < *bv) {
                    best = Some((v, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] -= c * row[source]`, restricted to columns `from..`.
    pub(crate) fn row_axpy(&mut self, target: usize, source: usize, c: &FieldElement, from: usize) {
        for j in from..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, j) - &(c * s);
            self.entries[target * self.cols + j] = v;
        }
    }

    /// `col[target] -= col[source] * c`, restricted to rows `from..`.
    pub(crate) fn col_axpy(&mut self, target: usize, source: usize, c: &FieldElement, from: usize) {
        for i in from..self.rows {
            let s = self.get(i, source);
            if s.is_zero() {
                continue;
            }
            let v = self.get(i, target) - &(s * c);
            self.entries[i * self.cols + target] = v;
        }
    }

    /// Exact inverse by fraction-free Gauss-Jordan elimination, pivoting on
    /// an entry of minimal valuation in the remaining submatrix.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dim("inverse of a non-square matrix"));
        }
        let entries = fraction_free::inverse(self.field, &self.entries, self.rows)
            .ok_or(Error::SingularMatrix)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        })
    }

    /// Determinant from the final pivot of the same elimination, with sign
    /// tracking for the swaps.
    pub fn determinant(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::dim("determinant of a non-square matrix"));
        }
        Ok(fraction_free::determinant(
            self.field,
            &self.entries,
            self.rows,
        ))
    }

    /// Submatrix `rows × cols`.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> Result<Matrix> {
        if rows.start > rows.end
            || cols.start > cols.end
            || rows.end > self.rows
            || cols.end > self.cols
        {
            return Err(Error::dim(format!(
                "block {rows:?} x {cols:?} of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            entries.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols: cols.len(),
            field: self.field,
            entries,
        })
    }

    /// Assembles a block matrix from a grid of conformant blocks.
    pub fn assemble(field: Field, blocks: &[Vec<Matrix>]) -> Result<Matrix> {
        let Some(first) = blocks.first() else {
            return Ok(Matrix::zeros(field, 0, 0));
        };
        let widths: Vec<usize> = first.iter().map(Matrix::cols).collect();
        let cols: usize = widths.iter().sum();
        let mut entries = Vec::new();
        let mut rows = 0;
        for block_row in blocks {
            if block_row.len() != widths.len() {
                return Err(Error::dim("block rows of different lengths"));
            }
            let height = block_row.first().map_or(0, Matrix::rows);
            for (b, &w) in block_row.iter().zip(&widths) {
                if b.field != field {
                    return Err(Error::FieldMismatch);
                }
                if b.rows != height || b.cols != w {
                    return Err(Error::dim("nonconformant blocks"));
                }
            }
            for i in 0..height {
                for b in block_row {
                    entries.extend_from_slice(b.row(i));
                }
            }
            rows += height;
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let f = self.field;
        Matrix::assemble(
            f,
            &[
                vec![self.clone(), Matrix::zeros(f, self.rows, other.cols)],
                vec![Matrix::zeros(f, other.rows, self.cols), other.clone()],
            ],
        )
    }

    /// Largest bit length of any integer appearing in the entries.
    pub fn max_bit_length(&self) -> u64 {
        self.entries
            .iter()
            .map(FieldElement::bit_length)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// A permutation of `0..n`. As a matrix `P`, row `i` of `P·a` is row
/// `images[i]` of `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermuteSide {
    /// `P·a`
    Rows,
    /// `a·P*`
    Cols,
    /// `P·a·P*`
    Congruent,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || core::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other` as matrices: `P_self · P_other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn to_matrix(&self, field: Field) -> Matrix {
        let n = self.images.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &j) in self.images.iter().enumerate() {
            m.entries[i * n + j] = field.one();
        }
        m
    }

    pub fn apply(&self, a: &Matrix, side: PermuteSide) -> Result<Matrix> {
        let n = self.images.len();
        let rows_ok = side == PermuteSide::Cols || a.rows == n;
        let cols_ok = side == PermuteSide::Rows || a.cols == n;
        if !rows_ok || !cols_ok {
            return Err(Error::dim(format!(
                "permutation of size {n} applied to a {}x{} matrix",
                a.rows, a.cols
            )));
        }
        let row_map = |i: usize| {
            if side == PermuteSide::Cols {
                i
            } else {
                self.images[i]
            }
        };
        let col_map = |j: usize| {
            if side == PermuteSide::Rows {
                j
            } else {
                self.images[j]
            }
        };
        let mut entries = Vec::with_capacity(a.entries.len());
        for i in 0..a.rows {
            for j in 0..a.cols {
                entries.push(a.get(row_map(i), col_map(j)).clone());
            }
        }
        Ok(Matrix {
            rows: a.rows,
            cols: a.cols,
            field: a.field,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;

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
    fn products() {
        let f = q5();
        let a = Matrix::from_ints(f, &[&[1, 1], &[1, 25]]);
        assert_eq!(Matrix::identity(f, 2).mul(&a).unwrap(), a);
        let swap = Matrix::from_ints(f, &[&[0, 1], &[1, 0]]);
        assert_eq!(
            swap.mul(&a).unwrap(),
            Matrix::from_ints(f, &[&[1, 25], &[1, 1]])
        );
        assert!(matches!(
            a.mul(&Matrix::identity(f, 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn adjoint_over_gaussians() {
        let g = Field::gaussian_inert(3).unwrap();
        let p = |s: &str| g.parse(s).unwrap();
        let a = Matrix::from_rows(g, vec![vec![p("i"), p("1+i")], vec![p("0"), p("2")]]).unwrap();
        let expect =
            Matrix::from_rows(g, vec![vec![p("-i"), p("0")], vec![p("1-i"), p("2")]]).unwrap();
        assert_eq!(a.star_adjoint(), expect);
    }

    #[test]
    fn congruence_by_swap() {
        let f = q5();
        let a = Matrix::from_ints(f, &[&[1, 1], &[1, 25]]);
        let swap = Matrix::from_ints(f, &[&[0, 1], &[1, 0]]);
        assert_eq!(
            a.congruence(&swap).unwrap(),
            Matrix::from_ints(f, &[&[25, 1], &[1, 1]])
        );
        assert_eq!(a.congruence(&Matrix::identity(f, 2)).unwrap(), a);
    }

    #[test]
    fn inverse_and_determinant() {
        let f = q5();
        let d = diag(f, &[(5, 1), (1, 5)]);
        assert_eq!(d.inverse().unwrap(), diag(f, &[(1, 5), (5, 1)]));
        let a = Matrix::from_ints(f, &[&[1, 1], &[1, 25]]);
        assert_eq!(a.determinant().unwrap(), f.from_int(24));
        let s = Matrix::from_ints(f, &[&[1, 1], &[1, 1]]);
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
        assert_eq!(s.determinant().unwrap(), f.zero());
        let m = Matrix::from_ints(f, &[&[0, 2, 1], &[3, 5, 0], &[1, 0, 4]]);
        assert_eq!(
            m.mul(&m.inverse().unwrap()).unwrap(),
            Matrix::identity(f, 3)
        );
        // cofactor expansion: 0*(20) - 2*(12) + 1*(-5) = -29
        assert_eq!(m.determinant().unwrap(), f.from_int(-29));
    }

    #[test]
    fn valuations_and_unimodularity() {
        let f = q5();
        let m = Matrix::from_rows(
            f,
            vec![
                vec![f.from_rational(ratio(50, 3)), f.one()],
                vec![f.zero(), f.from_rational(ratio(1, 5))],
            ],
        )
        .unwrap();
        assert_eq!(
            m.valuation_matrix(),
            vec![
                vec![ValExt::from(2), ValExt::ZERO],
                vec![ValExt::Infinity, ValExt::from(-1)]
            ]
        );
        assert!(Matrix::from_ints(f, &[&[1, 1], &[1, 25]]).is_unimodular());
        assert!(!diag(f, &[(5, 1), (1, 5)]).is_unimodular());
        assert!(!diag(f, &[(5, 1), (1, 1)]).is_unimodular());
        let iv = Matrix::identity(f, 3).valuation_matrix();
        for (i, row) in iv.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(
                    *v,
                    if i == j {
                        ValExt::ZERO
                    } else {
                        ValExt::Infinity
                    }
                );
            }
        }
    }

    #[test]
    fn permutations() {
        let f = q5();
        let d = diag(f, &[(5, 1), (1, 5)]);
        let s = Permutation::swap(2, 0, 1);
        assert_eq!(
            s.apply(&d, PermuteSide::Congruent).unwrap(),
            diag(f, &[(1, 5), (5, 1)])
        );
        assert_eq!(
            Permutation::identity(2)
                .apply(&d, PermuteSide::Congruent)
                .unwrap(),
            d
        );
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let a = Matrix::from_ints(f, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let pm = p.to_matrix(f);
        assert_eq!(p.apply(&a, PermuteSide::Rows).unwrap(), pm.mul(&a).unwrap());
        assert_eq!(
            p.apply(&a, PermuteSide::Cols).unwrap(),
            a.mul(&pm.star_adjoint()).unwrap()
        );
        assert_eq!(
            p.apply(&a, PermuteSide::Congruent).unwrap(),
            a.congruence(&pm).unwrap()
        );
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(p.compose(&p).to_matrix(f), pm.mul(&pm).unwrap());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn blocks() {
        let f = q5();
        let a = Matrix::from_ints(f, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let grid = vec![
            vec![a.block(0..2, 0..2).unwrap(), a.block(0..2, 2..3).unwrap()],
            vec![a.block(2..3, 0..2).unwrap(), a.block(2..3, 2..3).unwrap()],
        ];
        assert_eq!(Matrix::assemble(f, &grid).unwrap(), a);
        assert_eq!(
            Matrix::identity(f, 4).block(0..2, 2..4).unwrap(),
            Matrix::zeros(f, 2, 2)
        );
        assert!(a.block(0..4, 0..1).is_err());
        let x = Matrix::from_ints(f, &[&[1, 2], &[2, 3]]);
        let y = Matrix::from_ints(f, &[&[4, 5], &[6, 7]]);
        let z = Matrix::from_ints(f, &[&[8, 0], &[0, 9]]);
        let m = Matrix::assemble(f, &[vec![x, y.clone()], vec![y.star_adjoint(), z]]).unwrap();
        assert!(m.is_star_symmetric());
    }
}
