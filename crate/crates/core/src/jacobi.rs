//! Jacobi coordinates and the bidiagonal factorization of unipotent
//! totally positive matrices.
//!
//! A matrix `M` in the totally positive stratum of the unipotent upper
//! triangular group factors uniquely as a product of elementary factors
//! `J_k(x) = I + x E_{k,k+1}`, grouped as
//!
//! ```text
//! M = (J_1(x_12)) (J_2(x_13) J_1(x_23)) ... (J_{n-1}(x_1n) ... J_1(x_{n-1,n}))
//! ```
//!
//! with all parameters positive; the `x_{ij}` are the Jacobi coordinates
//! of `M`. Coordinates are recovered from corner flag minors, so the
//! inverse map detects departure from the stratum by producing a zero
//! denominator or a non-positive coordinate.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::matrix::{MatrixScalar, SquareMatrix, UpperUnitriangular};
use crate::rational::Rational;

/// The `n(n-1)/2` coordinates `x_{ij}`, `1 <= i < j <= n`, stored in
/// lexicographic key order.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiCoords<S = Rational> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Clone> JacobiCoords<S> {
    fn idx(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= n, "coordinate ({i},{j}) out of range");
        (i - 1) * n - i * (i - 1) / 2 + (j - i - 1)
    }

    /// Builds from a 1-based coordinate function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension("need n >= 2".to_string()));
        }
        let mut entries = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..n {
            for j in (i + 1)..=n {
                entries.push(f(i, j));
            }
        }
        Ok(JacobiCoords { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[Self::idx(self.n, i, j)]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: S) {
        let k = Self::idx(self.n, i, j);
        self.entries[k] = v;
    }

    /// Lexicographic iteration over `((i, j), value)`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &S)> + '_ {
        let n = self.n;
        (1..n)
            .flat_map(move |i| ((i + 1)..=n).map(move |j| (i, j)))
            .zip(self.entries.iter())
    }

    /// Same support, transformed values.
    pub fn map<T: Clone>(&self, mut f: impl FnMut(usize, usize, &S) -> T) -> JacobiCoords<T> {
        JacobiCoords {
            n: self.n,
            entries: self
                .iter()
                .map(|((i, j), v)| f(i, j, v))
                .collect(),
        }
    }
}

impl<S: MatrixScalar> JacobiCoords<S> {
    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|v| *v > S::zero())
    }
}

impl JacobiCoords<Rational> {
    /// Validates a complete, strictly positive coordinate set.
    pub fn new(n: usize, pairs: &[((usize, usize), Rational)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension("need n >= 2".to_string()));
        }
        let want = n * (n - 1) / 2;
        if pairs.len() != want {
            return Err(Error::Dimension(format!(
                "expected {want} coordinates for n = {n}, got {}",
                pairs.len()
            )));
        }
        let mut slots: Vec<Option<Rational>> = alloc::vec![None; want];
        for ((i, j), v) in pairs {
            if !(1 <= *i && i < j && *j <= n) {
                return Err(Error::IndexOutOfRange(format!(
                    "coordinate key ({i},{j}) outside 1 <= i < j <= {n}"
                )));
            }
            let k = Self::idx(n, *i, *j);
            if slots[k].is_some() {
                return Err(Error::Parse(format!("duplicate coordinate ({i},{j})")));
            }
            slots[k] = Some(v.clone());
        }
        let coords = JacobiCoords {
            n,
            entries: slots.into_iter().map(|s| s.unwrap()).collect(),
        };
        for ((i, j), v) in coords.iter() {
            if !crate::rational::is_positive(v) {
                return Err(Error::NonPositiveCoordinate { i, j });
            }
        }
        Ok(coords)
    }

    /// All coordinates equal to `x > 0`.
    pub fn constant(n: usize, x: &Rational) -> Result<Self> {
        if !crate::rational::is_positive(x) {
            return Err(Error::NonPositiveCoordinate { i: 1, j: 2 });
        }
        Self::from_fn(n, |_, _| x.clone())
    }
}

/// Expands coordinates into the product of elementary factors, over any
/// scalar. Rejects non-positive coordinates, which would leave the
/// totally positive stratum.
pub fn jacobi_to_matrix_generic<S: MatrixScalar>(
    coords: &JacobiCoords<S>,
) -> Result<SquareMatrix<S>> {
    let n = coords.n();
    for ((i, j), v) in coords.iter() {
        if !(*v > S::zero()) {
            return Err(Error::NonPositiveCoordinate { i, j });
        }
    }
    let mut m = SquareMatrix::<S>::identity(n);
    for k in 1..n {
        for t in (1..=k).rev() {
            // right-multiply by J_t(x_{k+1-t, k+1}): col t+1 += x * col t
            let x = coords.get(k + 1 - t, k + 1).clone();
            for row in 1..=n {
                let v = m.at(row, t + 1).clone() + x.clone() * m.at(row, t).clone();
                m.set(row, t + 1, v);
            }
        }
    }
    Ok(m)
}

/// Rational front end returning the unitriangular refinement.
pub fn jacobi_to_matrix(coords: &JacobiCoords) -> Result<UpperUnitriangular> {
    Ok(UpperUnitriangular::new_unchecked(jacobi_to_matrix_generic(
        coords,
    )?))
}

/// Recovers the coordinates of `M` from its corner flag minors.
///
/// The recovery works for any unitriangular matrix whose corner minors
/// are all nonzero; the result has every coordinate positive exactly
/// when `M` is totally positive.
pub fn matrix_to_jacobi(m: &UpperUnitriangular) -> Result<JacobiCoords> {
    let n = m.n();
    // corner[a][b] = right flag minor on the row interval [a, b]
    let corner = |a: usize, b: usize| -> Result<Rational> {
        m.flag_minor_right(&IndexSet::interval(a, b))
    };
    let mut table = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            let v = corner(a, b)?;
            if v.is_zero() {
                return Err(Error::VanishingMinor(format!("corner [{a},{b}]")));
            }
            table.push(((a, b), v));
        }
    }
    let lookup = |a: usize, b: usize| -> Rational {
        if a > b {
            return Rational::from_integer(1.into());
        }
        table
            .iter()
            .find(|((x, y), _)| *x == a && *y == b)
            .expect("interval in table")
            .1
            .clone()
    };
    JacobiCoords::from_fn(n, |i, j| {
        lookup(j - i, j - 1) * lookup(j - i + 2, j)
            / (lookup(j - i + 1, j - 1) * lookup(j - i + 1, j))
    })
}

/// Unitriangular witness with distinct prime coordinates; its minors
/// decide which minors vanish identically on the stratum.
pub(crate) fn generic_witness(n: usize) -> SquareMatrix<Rational> {
    let primes = first_primes(n * (n - 1) / 2);
    let mut it = primes.into_iter();
    let coords = JacobiCoords::from_fn(n, |_, _| {
        Rational::from_integer(it.next().expect("enough primes").into())
    })
    .expect("n >= 2");
    jacobi_to_matrix_generic(&coords).expect("primes are positive")
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut candidate: u64 = 2;
    while out.len() < count {
        if out.iter().all(|&p| p * p > candidate || candidate % p != 0) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}
