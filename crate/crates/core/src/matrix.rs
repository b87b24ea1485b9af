//! 2×2 matrices: integer matrices of determinant one (the BCZ step matrices
//! and their products) and small scalar matrices for lattice bases.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A 2×2 integer matrix of determinant 1, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    entries: [[BigInt; 2]; 2],
}

impl IntMatrix2 {
    pub fn new(entries: [[BigInt; 2]; 2]) -> Result<Self> {
        let m = Self { entries };
        if m.determinant().is_one() {
            Ok(m)
        } else {
            Err(Error::InvalidArgument(format!(
                "matrix {m} has determinant {} != 1",
                m.determinant()
            )))
        }
    }

    pub fn from_i64(entries: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(entries.map(|row| row.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        Self {
            entries: [
                [BigInt::one(), BigInt::zero()],
                [BigInt::zero(), BigInt::one()],
            ],
        }
    }

    /// `A_k = [[0, 1], [-1, k]]`, the matrix through which the BCZ map acts on the tile with index `k`.
    pub fn step(k: u64) -> Self {
        Self {
            entries: [
                [BigInt::zero(), BigInt::one()],
                [-BigInt::one(), BigInt::from(k)],
            ],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row][col]
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.entries
    }

    pub fn determinant(&self) -> BigInt {
        let [[a, b], [c, d]] = &self.entries;
        a * d - b * c
    }

    pub fn trace(&self) -> BigInt {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.entries.clone();
        Self {
            entries: [[a, c], [b, d]],
        }
    }

    /// Inverse; exact because the determinant is one.
    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.entries.clone();
        Self {
            entries: [[d, -b], [-c, a]],
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Trace 2 and not the identity.
    pub fn is_parabolic(&self) -> bool {
        self.trace() == BigInt::from(2) && !self.is_identity()
    }

    /// The row vector `(a, b)` multiplied by the transpose of `self`.
    pub fn act_on_row<S: Scalar>(&self, a: &S, b: &S) -> (S, S) {
        let e = |r: usize, c: usize| S::from_bigint(&self.entries[r][c]);
        (
            e(0, 0) * a.clone() + e(0, 1) * b.clone(),
            e(1, 0) * a.clone() + e(1, 1) * b.clone(),
        )
    }

    pub fn to_scalar<S: Scalar>(&self) -> Matrix2<S> {
        Matrix2::new(
            self.entries
                .clone()
                .map(|row| row.map(|v| S::from_bigint(&v))),
        )
    }
}

impl Mul for &IntMatrix2 {
    type Output = IntMatrix2;

    fn mul(self, rhs: &IntMatrix2) -> IntMatrix2 {
        let a = &self.entries;
        let b = &rhs.entries;
        let cell = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        IntMatrix2 {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }
}

impl Mul for IntMatrix2 {
    type Output = IntMatrix2;

    fn mul(self, rhs: IntMatrix2) -> IntMatrix2 {
        &self * &rhs
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A general 2×2 matrix over a scalar flavor, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix2<S> {
    pub entries: [[S; 2]; 2],
}

impl<S: Scalar> Matrix2<S> {
    pub fn new(entries: [[S; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        Self::new([[S::one(), S::zero()], [S::zero(), S::one()]])
    }

    /// `p_{a,b} = [[a, b], [0, 1/a]]`, the upper-triangular representative of a section point.
    pub fn upper_triangular(a: &S, b: &S) -> Self {
        Self::new([[a.clone(), b.clone()], [S::zero(), a.recip()]])
    }

    /// `h_s = [[1, 0], [-s, 1]]`, time-`s` horocycle flow.
    pub fn horocycle(s: &S) -> Self {
        Self::new([[S::one(), S::zero()], [-s.clone(), S::one()]])
    }

    pub fn determinant(&self) -> S {
        let [[a, b], [c, d]] = &self.entries;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::new(
            self.entries
                .clone()
                .map(|row| row.map(|v| v * factor.clone())),
        )
    }

    /// Column `j` as the vector `(x, y)`.
    pub fn column(&self, j: usize) -> (S, S) {
        (self.entries[0][j].clone(), self.entries[1][j].clone())
    }

    /// `self · (x, y)ᵀ`.
    pub fn apply(&self, x: &S, y: &S) -> (S, S) {
        let [[a, b], [c, d]] = &self.entries;
        (
            a.clone() * x.clone() + b.clone() * y.clone(),
            c.clone() * x.clone() + d.clone() * y.clone(),
        )
    }
}

impl<S: Scalar> Mul for &Matrix2<S> {
    type Output = Matrix2<S>;

    fn mul(self, rhs: &Matrix2<S>) -> Matrix2<S> {
        let a = &self.entries;
        let b = &rhs.entries;
        let cell = |i: usize, j: usize| {
            a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone()
        };
        Matrix2::new([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_matrix_trace_and_determinant() {
        for k in 1..20 {
            let a = IntMatrix2::step(k);
            assert!(a.determinant().is_one());
            assert_eq!(a.trace(), BigInt::from(k));
        }
    }

    #[test]
    fn power_of_parabolic_step() {
        let a2 = IntMatrix2::step(2);
        let cube = &(&a2 * &a2) * &a2;
        assert_eq!(cube, IntMatrix2::from_i64([[-2, 3], [-3, 4]]).unwrap());
        assert!(cube.is_parabolic());
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(IntMatrix2::from_i64([[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = IntMatrix2::from_i64([[-5, 9], [-4, 7]]).unwrap();
        assert!((&m * &m.inverse()).is_identity());
    }
}
