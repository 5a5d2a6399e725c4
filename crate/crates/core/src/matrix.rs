//! Dense matrices over exact rationals, with a semidefiniteness test.
//!
//! Everything downstream of the representation checks reduces to
//! equality and positivity of matrices with rational entries, so the
//! arithmetic here is exact end to end. No floating point appears
//! anywhere in the crate.

use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rational = Ratio<BigInt>;

/// Shorthand for small integer entries.
pub fn rational(n: i64) -> Rational {
    Ratio::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    NotSquare { rows: usize, cols: usize },
    NotSymmetric { row: usize, col: usize },
    RaggedRows { row: usize, expected: usize, found: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NotSquare { rows, cols } => {
                write!(f, "matrix is {}×{}, not square", rows, cols)
            }
            MatrixError::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({}, {})", row, col)
            }
            MatrixError::RaggedRows { row, expected, found } => {
                write!(f, "row {} has {} entries, expected {}", row, found, expected)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: alloc::vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(MatrixError::RaggedRows { row: i, expected: width, found: row.len() });
            }
        }
        Ok(RationalMatrix { rows: height, cols: width, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        RationalMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Matrix product. Zero entries are skipped, which matters because
    /// most matrices in the representation checks are sparse 0/1.
    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "product shape mismatch");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sum shape mismatch");
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "difference shape mismatch");
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    fn symmetry_defect(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The diagonal part, with all off-diagonal entries zeroed.
    pub fn diagonal_part(&self) -> RationalMatrix {
        assert!(self.is_square(), "diagonal part of a non-square matrix");
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| {
            if i == j {
                self.get(i, j).clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Exact positive semidefiniteness, by symmetric elimination with
    /// maximal-diagonal pivoting.
    ///
    /// Each round pivots on the largest remaining diagonal entry and
    /// replaces the rest with its Schur complement, which is positive
    /// semidefinite exactly when the original block is. A negative
    /// pivot refutes immediately. When the largest diagonal entry is
    /// zero, any negative diagonal or any nonzero off-diagonal entry in
    /// the remaining block embeds a 2×2 principal minor with negative
    /// determinant; otherwise the block is zero and the matrix passes.
    pub fn psd(&self) -> Result<bool, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if let Some((i, j)) = self.symmetry_defect() {
            return Err(MatrixError::NotSymmetric { row: i, col: j });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let at = |a: &Vec<Rational>, i: usize, j: usize| a[i * n + j].clone();
        let mut active: Vec<usize> = (0..n).collect();
        while let Some(pos) = {
            let mut best: Option<usize> = None;
            for (p, &i) in active.iter().enumerate() {
                let better = match best {
                    None => true,
                    Some(q) => at(&a, i, i) > at(&a, active[q], active[q]),
                };
                if better {
                    best = Some(p);
                }
            }
            best
        } {
            let k = active[pos];
            let pivot = at(&a, k, k);
            if pivot.is_negative() {
                return Ok(false);
            }
            if pivot.is_zero() {
                // The whole remaining diagonal is ≤ 0; anything nonzero
                // left in the block refutes semidefiniteness.
                for &i in &active {
                    for &j in &active {
                        if !at(&a, i, j).is_zero() {
                            return Ok(false);
                        }
                    }
                }
                return Ok(true);
            }
            active.swap_remove(pos);
            for &i in &active {
                let f = at(&a, i, k) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let delta = &f * at(&a, k, j);
                    a[i * n + j] -= delta;
                }
            }
        }
        Ok(true)
    }
}
