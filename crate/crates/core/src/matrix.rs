//! Dense square matrices over an exact or floating scalar.
//!
//! The workhorse is [`SquareMatrix<Rational>`]: determinants go through
//! fraction-free Bareiss elimination on a denominator-cleared integer
//! matrix, so every minor is exact with polynomial bit growth. The same
//! interface is generic over [`MatrixScalar`] so the finite-difference
//! probes can run the identical minor formulas over [`BigFloat`]
//! (which pivots by magnitude instead).
//!
//! Indices are 1-based throughout, matching the flag-minor notation
//! `Δ_I` (rows `I` against the last `|I|` columns) and `Δ^J` (first `|J|`
//! rows against columns `J`).

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::rational::Rational;

/// Scalar over which the matrix algebra runs. `det` is a trait method so
/// each scalar picks its own elimination strategy.
pub trait MatrixScalar:
    Clone
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + core::ops::Neg<Output = Self>
    + core::ops::Sub<Output = Self>
    + core::ops::Div<Output = Self>
{
    fn det(m: &SquareMatrix<Self>) -> Self;
}

impl MatrixScalar for Rational {
    fn det(m: &SquareMatrix<Rational>) -> Rational {
        det_bareiss(m)
    }
}

impl MatrixScalar for BigFloat {
    fn det(m: &SquareMatrix<BigFloat>) -> BigFloat {
        det_pivoted(m)
    }
}

/// Dense n x n matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<S = Rational> {
    n: usize,
    entries: Vec<S>,
}

impl<S: MatrixScalar> SquareMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows must form a nonempty square".to_string()));
        }
        Ok(SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from a 1-based entry function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based entry access.
    pub fn at(&self, i: usize, j: usize) -> &S {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n, "1-based index out of range");
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Self::from_fn(self.n, |i, j| {
            let mut acc = S::zero();
            for k in 1..=self.n {
                acc = acc + self.at(i, k).clone() * rhs.at(k, j).clone();
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.at(j, i).clone())
    }

    pub fn is_upper_triangular(&self) -> bool {
        (1..=self.n).all(|i| (1..i).all(|j| self.at(i, j).is_zero()))
    }

    pub fn is_unitriangular(&self) -> bool {
        self.is_upper_triangular() && (1..=self.n).all(|i| self.at(i, i).is_one())
    }

    fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Self {
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * k);
        for i in rows {
            for j in cols {
                entries.push(self.at(i, j).clone());
            }
        }
        SquareMatrix { n: k, entries }
    }

    pub fn determinant(&self) -> S {
        S::det(self)
    }

    /// Minor on row set `I` and column set `J`; `|I| = |J|` required,
    /// empty sets give 1.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<S> {
        if rows.len() != cols.len() {
            return Err(Error::CardinalityMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        if !rows.fits(self.n) || !cols.fits(self.n) {
            return Err(Error::IndexOutOfRange(format!(
                "minor index sets must lie in [1,{}]",
                self.n
            )));
        }
        if rows.is_empty() {
            return Ok(S::one());
        }
        Ok(S::det(&self.submatrix(rows, cols)))
    }

    /// Right flag minor: rows `I` against the last `|I|` columns.
    pub fn flag_minor_right(&self, rows: &IndexSet) -> Result<S> {
        let k = rows.len();
        self.minor(rows, &IndexSet::interval(self.n + 1 - k, self.n))
    }

    /// Upper flag minor: the first `|J|` rows against columns `J`.
    pub fn flag_minor_upper(&self, cols: &IndexSet) -> Result<S> {
        let k = cols.len();
        self.minor(&IndexSet::interval(1, k), cols)
    }

    /// Exact Gauss-Jordan inverse; errors when singular.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 1..=n {
            let pivot_row = (c..=n)
                .find(|&r| !a.at(r, c).is_zero())
                .ok_or_else(|| Error::VanishingMinor("matrix is singular".to_string()))?;
            if pivot_row != c {
                for j in 1..=n {
                    let (x, y) = (a.at(c, j).clone(), a.at(pivot_row, j).clone());
                    a.set(c, j, y);
                    a.set(pivot_row, j, x);
                    let (x, y) = (inv.at(c, j).clone(), inv.at(pivot_row, j).clone());
                    inv.set(c, j, y);
                    inv.set(pivot_row, j, x);
                }
            }
            let p = a.at(c, c).clone();
            for j in 1..=n {
                a.set(c, j, a.at(c, j).clone() / p.clone());
                inv.set(c, j, inv.at(c, j).clone() / p.clone());
            }
            for r in 1..=n {
                if r == c || a.at(r, c).is_zero() {
                    continue;
                }
                let f = a.at(r, c).clone();
                for j in 1..=n {
                    a.set(r, j, a.at(r, j).clone() - f.clone() * a.at(c, j).clone());
                    inv.set(r, j, inv.at(r, j).clone() - f.clone() * inv.at(c, j).clone());
                }
            }
        }
        Ok(inv)
    }
}

impl<S: MatrixScalar> core::ops::Mul for &SquareMatrix<S> {
    type Output = SquareMatrix<S>;
    fn mul(self, rhs: Self) -> SquareMatrix<S> {
        SquareMatrix::mul(self, rhs)
    }
}

/// Fraction-free Bareiss elimination after clearing denominators row by
/// row. Every intermediate entry is an integer minor of the scaled
/// matrix, so all divisions are exact.
fn det_bareiss(m: &SquareMatrix<Rational>) -> Rational {
    let n = m.n;
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (1..=n)
        .map(|i| {
            let l = (1..=n).fold(BigInt::one(), |acc, j| acc.lcm(m.at(i, j).denom()));
            scale *= &l;
            (1..=n)
                .map(|j| m.at(i, j).numer() * (&l / m.at(i, j).denom()))
                .collect()
        })
        .collect();

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negate {
        det = -det;
    }
    Rational::new(det, scale)
}

/// Gaussian elimination with partial pivoting, for floating scalars.
fn det_pivoted(m: &SquareMatrix<BigFloat>) -> BigFloat {
    let n = m.n;
    let mut a: Vec<Vec<BigFloat>> = (1..=n)
        .map(|i| (1..=n).map(|j| m.at(i, j).clone()).collect())
        .collect();
    let mut det = BigFloat::one();
    for c in 0..n {
        let pivot = (c..n)
            .max_by(|&r, &s| a[r][c].abs().partial_cmp(&a[s][c].abs()).unwrap())
            .unwrap();
        if a[pivot][c].is_zero() {
            return BigFloat::zero();
        }
        if pivot != c {
            a.swap(c, pivot);
            det = -det;
        }
        det = det * a[c][c].clone();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() / a[c][c].clone();
            for j in c..n {
                a[r][j] = a[r][j].clone() - f.clone() * a[c][j].clone();
            }
        }
    }
    det
}

/// Unipotent upper triangular matrix over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperUnitriangular(SquareMatrix<Rational>);

impl UpperUnitriangular {
    pub fn new(m: SquareMatrix<Rational>) -> Result<Self> {
        if !m.is_unitriangular() {
            return Err(Error::Shape(
                "expected an upper triangular matrix with unit diagonal".to_string(),
            ));
        }
        Ok(UpperUnitriangular(m))
    }

    pub(crate) fn new_unchecked(m: SquareMatrix<Rational>) -> Self {
        debug_assert!(m.is_unitriangular());
        UpperUnitriangular(m)
    }

    pub fn matrix(&self) -> &SquareMatrix<Rational> {
        &self.0
    }

    pub fn into_matrix(self) -> SquareMatrix<Rational> {
        self.0
    }
}

impl core::ops::Deref for UpperUnitriangular {
    type Target = SquareMatrix<Rational>;
    fn deref(&self) -> &SquareMatrix<Rational> {
        &self.0
    }
}

/// Diagonal matrix with nonzero diagonal entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMatrix(SquareMatrix<Rational>);

impl DiagonalMatrix {
    pub fn new(m: SquareMatrix<Rational>) -> Result<Self> {
        let n = m.n();
        for i in 1..=n {
            if m.at(i, i).is_zero() {
                return Err(Error::Shape(format!("zero diagonal entry at {i}")));
            }
            for j in 1..=n {
                if i != j && !m.at(i, j).is_zero() {
                    return Err(Error::Shape("matrix is not diagonal".to_string()));
                }
            }
        }
        Ok(DiagonalMatrix(m))
    }

    pub fn from_entries(diag: Vec<Rational>) -> Result<Self> {
        let n = diag.len();
        Self::new(SquareMatrix::from_fn(n, |i, j| {
            if i == j {
                diag[i - 1].clone()
            } else {
                Rational::zero()
            }
        }))
    }

    /// Reads the diagonal off any square matrix.
    pub fn from_diagonal_of(m: &SquareMatrix<Rational>) -> Result<Self> {
        Self::from_entries((1..=m.n()).map(|i| m.at(i, i).clone()).collect())
    }

    pub fn diag(&self, i: usize) -> &Rational {
        self.0.at(i, i)
    }

    pub fn matrix(&self) -> &SquareMatrix<Rational> {
        &self.0
    }

    pub fn inverse(&self) -> DiagonalMatrix {
        let n = self.0.n();
        DiagonalMatrix(SquareMatrix::from_fn(n, |i, j| {
            if i == j {
                Rational::one() / self.diag(i).clone()
            } else {
                Rational::zero()
            }
        }))
    }

    /// Entrywise absolute value of the diagonal.
    pub fn abs(&self) -> DiagonalMatrix {
        let n = self.0.n();
        DiagonalMatrix(SquareMatrix::from_fn(n, |i, j| {
            if i == j {
                self.diag(i).abs()
            } else {
                Rational::zero()
            }
        }))
    }

    pub fn determinant(&self) -> Rational {
        (1..=self.0.n()).fold(Rational::one(), |acc, i| acc * self.diag(i))
    }
}

impl core::ops::Deref for DiagonalMatrix {
    type Target = SquareMatrix<Rational>;
    fn deref(&self) -> &SquareMatrix<Rational> {
        &self.0
    }
}

/// The order-reversing permutation matrix, `P[i][j] = 1` iff `i + j = n + 1`.
pub fn permutation_w0(n: usize) -> SquareMatrix<Rational> {
    SquareMatrix::from_fn(n, |i, j| {
        if i + j == n + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// The alternating sign matrix `diag(1, -1, 1, ...)`.
pub fn sign_matrix(n: usize) -> DiagonalMatrix {
    DiagonalMatrix::from_entries(
        (1..=n)
            .map(|i| {
                if i % 2 == 1 {
                    Rational::one()
                } else {
                    -Rational::one()
                }
            })
            .collect(),
    )
    .expect("sign matrix diagonal is nonzero")
}

/// Total positivity test for upper triangular matrices with positive
/// diagonal.
///
/// For n <= 6 every minor is checked against its identically-vanishing
/// pattern; the pattern is read off a generic witness built from
/// distinct-prime Jacobi coordinates (a probabilistic but in practice
/// exact detector). For larger n the test falls back to positivity of
/// all right and upper flag minors, the standard criterion for this
/// stratum.
pub fn is_totally_positive(m: &SquareMatrix<Rational>) -> Result<bool> {
    if !m.is_upper_triangular() {
        return Err(Error::Shape(
            "total positivity test expects an upper triangular matrix".to_string(),
        ));
    }
    let n = m.n();
    if n <= 6 {
        let witness = crate::jacobi::generic_witness(n);
        let sets = IndexSet::power_set(n);
        for rows in &sets {
            if rows.is_empty() {
                continue;
            }
            for cols in sets.iter().filter(|c| c.len() == rows.len()) {
                if witness.minor(rows, cols)?.is_zero() {
                    continue; // vanishes identically on the stratum
                }
                if !m.minor(rows, cols)?.is_positive() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    } else {
        for set in IndexSet::power_set(n) {
            if set.is_empty() {
                continue;
            }
            if !m.flag_minor_right(&set)?.is_positive()
                || !m.flag_minor_upper(&set)?.is_positive()
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
