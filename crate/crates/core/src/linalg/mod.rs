//! Dense exact matrices over any [`Scalar`] domain.

mod det;
mod span;

use std::fmt;

use thiserror::Error;

use crate::scalar::{Constant, Scalar, ScalarError};

pub use det::{det, det_gaussian};
pub use span::{
    algebra_span_dimension, common_fixed_vector, nullspace, rank, SpanScalar, DEFAULT_SPAN_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("block position {position} out of range for n = {n}")]
    PositionOutOfRange { n: usize, position: usize },
    #[error("matrix is not invertible by the supported routes")]
    NotInvertible,
    #[error("span closure did not stabilize within {0} rounds")]
    CapExceeded(usize),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Row-major dense matrix. All entries share one scalar domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                op: "new",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch {
                op: "from_rows",
                left: (r, c),
                right: (r, rows.iter().map(Vec::len).max().unwrap_or(0)),
            });
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize, proto: &T) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![proto.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, proto: &T) -> Self {
        let mut m = Matrix::zeros(n, n, proto);
        for i in 0..n {
            m.entries[i * n + i] = proto.one_like();
        }
        m
    }

    pub fn diagonal(diag: Vec<T>) -> Result<Self, LinalgError> {
        let proto = diag.first().ok_or(LinalgError::Empty)?.clone();
        let n = diag.len();
        let mut m = Matrix::zeros(n, n, &proto);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn proto(&self) -> &T {
        &self.entries[0]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Scalar, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mat_mul",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let zero = self.proto().zero_like();
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "mul_vec",
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.proto().zero_like(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    fn zip_with(
        &self,
        rhs: &Matrix<T>,
        op: &'static str,
        f: impl Fn(&T, &T) -> T,
    ) -> Result<Matrix<T>, LinalgError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
        self.zip_with(rhs, "add", |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
        self.zip_with(rhs, "sub", |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|e| e.mul(c))
    }

    pub fn neg(&self) -> Matrix<T> {
        self.map(Scalar::neg)
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn pow(&self, exp: u32) -> Result<Matrix<T>, LinalgError> {
        if !self.is_square() {
            return Err(self.not_square("pow"));
        }
        let mut acc = Matrix::identity(self.rows, self.proto());
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn not_square(&self, op: &'static str) -> LinalgError {
        LinalgError::NotSquare {
            op,
            rows: self.rows,
            cols: self.cols,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// For a generalized permutation matrix: the column of the single nonzero
    /// entry in each row.
    pub fn monomial_pattern(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let mut seen = vec![false; self.cols];
        let mut pattern = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut nonzero = self.row(r).iter().enumerate().filter(|(_, e)| !e.is_zero());
            let (c, _) = nonzero.next()?;
            if nonzero.next().is_some() || seen[c] {
                return None;
            }
            seen[c] = true;
            pattern.push(c);
        }
        Some(pattern)
    }

    /// Position `i` (1-based) of the 2x2 block when `self` is the identity
    /// outside rows/cols `i, i+1`.
    pub fn two_local_position(&self) -> Option<usize> {
        if !self.is_square() || self.rows < 2 {
            return None;
        }
        let n = self.rows;
        let off: Vec<usize> = (0..n)
            .filter(|&k| {
                (0..n).any(|c| {
                    let e = self.get(k, c);
                    if k == c {
                        !e.is_one()
                    } else {
                        !e.is_zero()
                    }
                }) || (0..n).any(|r| r != k && !self.get(r, k).is_zero())
            })
            .collect();
        match off.as_slice() {
            [] => Some(1),
            [k] => Some(if *k + 1 < n { k + 1 } else { *k }),
            [a, b] if b == &(a + 1) => Some(a + 1),
            _ => None,
        }
    }

    pub fn block_2x2(&self, position: usize) -> Matrix<T> {
        let k = position - 1;
        Matrix {
            rows: 2,
            cols: 2,
            entries: vec![
                self.get(k, k).clone(),
                self.get(k, k + 1).clone(),
                self.get(k + 1, k).clone(),
                self.get(k + 1, k + 1).clone(),
            ],
        }
    }

    /// Inverse through the structural routes used by every representation
    /// in the crate: generalized permutation matrices with unit entries,
    /// 2-local matrices whose block has a unit determinant, and involutions.
    pub fn try_inverse(&self) -> Result<Matrix<T>, LinalgError> {
        if !self.is_square() {
            return Err(self.not_square("inverse"));
        }
        let n = self.rows;
        if let Some(pattern) = self.monomial_pattern() {
            let mut inv = Matrix::zeros(n, n, self.proto());
            for (r, &c) in pattern.iter().enumerate() {
                let e = self
                    .get(r, c)
                    .unit_inverse()
                    .ok_or(LinalgError::NotInvertible)?;
                inv.set(c, r, e);
            }
            return Ok(inv);
        }
        if let Some(pos) = self.two_local_position() {
            let b = self.block_2x2(pos);
            let d = b.get(0, 0).mul(b.get(1, 1)).sub(&b.get(0, 1).mul(b.get(1, 0)));
            if let Some(dinv) = d.unit_inverse() {
                let inv_block = Matrix {
                    rows: 2,
                    cols: 2,
                    entries: vec![
                        b.get(1, 1).mul(&dinv),
                        b.get(0, 1).neg().mul(&dinv),
                        b.get(1, 0).neg().mul(&dinv),
                        b.get(0, 0).mul(&dinv),
                    ],
                };
                return block_embed(n, pos, &inv_block);
            }
        }
        if self.mul(self)?.is_identity() {
            return Ok(self.clone());
        }
        Err(LinalgError::NotInvertible)
    }

    pub fn vectorize(&self) -> Vec<T> {
        self.entries.clone()
    }
}

impl<T: Constant> Matrix<T> {
    pub fn eye(n: usize) -> Self {
        Matrix::identity(n, &T::one())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer literal")
    }
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
    a.mul(b)
}

/// `I_{i-1} (+) block (+) I_{n-i-1}` for 1-based position `i`.
pub fn block_embed<T: Scalar>(
    n: usize,
    position: usize,
    block: &Matrix<T>,
) -> Result<Matrix<T>, LinalgError> {
    if block.rows != 2 || block.cols != 2 {
        return Err(LinalgError::DimensionMismatch {
            op: "block_embed",
            left: (2, 2),
            right: (block.rows, block.cols),
        });
    }
    if position < 1 || position + 1 > n {
        return Err(LinalgError::PositionOutOfRange { n, position });
    }
    let mut m = Matrix::identity(n, block.proto());
    let k = position - 1;
    for r in 0..2 {
        for c in 0..2 {
            m.set(k + r, k + c, block.get(r, c).clone());
        }
    }
    Ok(m)
}

/// `[[0, a], [b, 0]]`.
pub fn antidiag<T: Scalar>(a: T, b: T) -> Matrix<T> {
    let zero = a.zero_like();
    Matrix {
        rows: 2,
        cols: 2,
        entries: vec![zero.clone(), a, b, zero],
    }
}

/// `p^{-1} m p` for a diagonal `p` with unit diagonal entries.
pub fn conjugate<T: Scalar>(p: &Matrix<T>, m: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
    if !p.is_square() {
        return Err(p.not_square("conjugate"));
    }
    if (p.rows, p.cols) != (m.rows, m.cols) {
        return Err(LinalgError::DimensionMismatch {
            op: "conjugate",
            left: (p.rows, p.cols),
            right: (m.rows, m.cols),
        });
    }
    if !p.is_diagonal() {
        return Err(LinalgError::NotInvertible);
    }
    let n = p.rows;
    let inv: Vec<T> = (0..n)
        .map(|i| p.get(i, i).unit_inverse().ok_or(LinalgError::NotInvertible))
        .collect::<Result<_, _>>()?;
    let mut out = m.clone();
    for r in 0..n {
        for c in 0..n {
            let e = m.get(r, c);
            if !e.is_zero() {
                out.set(r, c, inv[r].mul(e).mul(p.get(c, c)));
            }
        }
    }
    Ok(out)
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{LaurentPoly, Rational};

    type Q = Matrix<Rational>;

    fn t(e: i32) -> LaurentPoly {
        LaurentPoly::var("t", e)
    }

    #[test]
    fn tits_generator_squares_to_identity() {
        let l1 = Q::from_ints(&[&[-1, 1], &[0, 1]]);
        assert_eq!(mat_mul(&l1, &l1).unwrap(), Q::eye(2));
    }

    #[test]
    fn identity_is_neutral() {
        let m = Q::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(Q::eye(3).mul(&m).unwrap(), m);
        assert_eq!(
            Q::eye(2).mul(&m),
            Err(LinalgError::DimensionMismatch {
                op: "mat_mul",
                left: (2, 2),
                right: (3, 3)
            })
        );
    }

    #[test]
    fn symbolic_product_of_mu_generators() {
        let s = "s";
        let l1 = block_embed(3, 1, &antidiag(LaurentPoly::var(s, 1), LaurentPoly::var(s, -1)))
            .unwrap();
        let l2 = block_embed(3, 2, &antidiag(LaurentPoly::var(s, 1), LaurentPoly::var(s, -1)))
            .unwrap();
        let zero = LaurentPoly::zero();
        let expected = Matrix::from_rows(vec![
            vec![zero.clone(), zero.clone(), LaurentPoly::var(s, 2)],
            vec![LaurentPoly::var(s, -1), zero.clone(), zero.clone()],
            vec![zero.clone(), LaurentPoly::var(s, -1), zero],
        ])
        .unwrap();
        assert_eq!(l1.mul(&l2).unwrap(), expected);
    }

    #[test]
    fn block_embedding() {
        let b = LaurentPoly::var("b", 1);
        let m = block_embed(3, 1, &antidiag(b.clone(), b.unit_inverse().unwrap())).unwrap();
        assert_eq!(m.get(0, 1), &b);
        assert_eq!(m.get(1, 0), &LaurentPoly::var("b", -1));
        assert!(m.get(2, 2).is_one());
        assert_eq!(block_embed(3, 2, &Q::eye(2)).unwrap(), Q::eye(3));
        assert_eq!(
            block_embed(3, 3, &Q::eye(2)),
            Err(LinalgError::PositionOutOfRange { n: 3, position: 3 })
        );
        assert_eq!(
            block_embed(3, 0, &Q::eye(2)),
            Err(LinalgError::PositionOutOfRange { n: 3, position: 0 })
        );
        let x = LaurentPoly::var("x", 1);
        let w = block_embed(4, 2, &antidiag(x.clone(), x.unit_inverse().unwrap())).unwrap();
        assert_eq!(w.get(1, 2), &x);
        assert_eq!(w.two_local_position(), Some(2));
    }

    #[test]
    fn conjugation_to_permutations() {
        let s = |e| t(e);
        let mu1 = block_embed(3, 1, &antidiag(s(1), s(-1))).unwrap();
        let p = Matrix::diagonal(vec![s(2), s(1), LaurentPoly::one()]).unwrap();
        let perm = block_embed(3, 1, &antidiag(LaurentPoly::one(), LaurentPoly::one())).unwrap();
        assert_eq!(conjugate(&p, &mu1).unwrap(), perm);
        assert_eq!(conjugate(&Matrix::eye(3), &mu1).unwrap(), mu1);

        let b = LaurentPoly::var("b", 1);
        let om1 = block_embed(3, 1, &antidiag(b.clone(), b.unit_inverse().unwrap())).unwrap();
        let pb = Matrix::diagonal(vec![b.pow(2), b, LaurentPoly::one()]).unwrap();
        assert_eq!(conjugate(&pb, &om1).unwrap(), perm);

        let singular = Q::from_ints(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            conjugate(&singular, &Q::eye(2)),
            Err(LinalgError::NotInvertible)
        );
        assert!(matches!(
            conjugate(&Q::eye(2), &Q::eye(3)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn structural_inverses() {
        let mu = block_embed(4, 2, &antidiag(t(3), t(-3))).unwrap();
        assert!(mu.mul(&mu.try_inverse().unwrap()).unwrap().is_identity());
        let local = block_embed(3, 2, &Q::from_ints(&[&[2, 1], &[1, 1]])).unwrap();
        assert!(local.mul(&local.try_inverse().unwrap()).unwrap().is_identity());
        let tits = Q::from_ints(&[&[-1, 1, 2], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(tits.try_inverse().unwrap(), tits);
        let singular = Q::from_ints(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(singular.try_inverse(), Err(LinalgError::NotInvertible));
    }
}
