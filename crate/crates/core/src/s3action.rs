//! The balanced subvariety and the symmetric-group action it carries.
//!
//! For `i < n/2` the coordinate products
//!
//! ```text
//! Q_i = prod_{k>i} x_{ik}/x_{n+1-k,n+1-i}  /  prod_{k<i} x_{ki}/x_{n+1-i,n+1-k}
//! ```
//!
//! measure how far a matrix is from the stratum where the two
//! involutions braid: `Q_i = 1` for all `i` is exactly the condition
//! under which `((M')'')' = ((M'')')''`, turning the maps generated by
//! `'` and `''` into an honest action of the symmetric group on three
//! letters. Both involutions invert every `Q_i`.
//!
//! The ratio functions `y_ij = x_ij / x_{i+1,j+1}` transform by clean
//! relabeling laws under the involutions, and their triple-composition
//! law holds on the whole stratum, not only on the balanced part.

use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::involutions::{jacobi_dprime, jacobi_prime};
use crate::jacobi::JacobiCoords;
use crate::rational::Rational;

/// The obstruction values `Q_i`, `1 <= i < n/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct QVector {
    values: Vec<Rational>,
}

impl QVector {
    /// Number of constraints (empty for n <= 2).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-based constraint index.
    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.values.iter().enumerate().map(|(k, v)| (k + 1, v))
    }

    pub fn is_all_ones(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }
}

fn q_range(n: usize) -> impl Iterator<Item = usize> {
    // strictly below n/2
    (1..).take_while(move |&i| 2 * i < n)
}

fn q_single(c: &JacobiCoords, i: usize) -> Rational {
    let n = c.n();
    let mut lhs = Rational::one();
    for k in (i + 1)..=n {
        lhs *= c.get(i, k);
        lhs /= c.get(n + 1 - k, n + 1 - i);
    }
    let mut rhs = Rational::one();
    for k in 1..i {
        rhs *= c.get(k, i);
        rhs /= c.get(n + 1 - i, n + 1 - k);
    }
    lhs / rhs
}

/// All obstruction values of the coordinate set.
pub fn q_values(c: &JacobiCoords) -> QVector {
    QVector {
        values: q_range(c.n()).map(|i| q_single(c, i)).collect(),
    }
}

/// Rescales onto the balanced stratum: sweeps `i` upward, dividing
/// `x_{i,i+1}` by the current `Q_i`. The swept coordinate occurs exactly
/// once inside constraint `i` and not at all inside earlier ones, so a
/// single pass lands every `Q_i` on 1.
pub fn project_to_tilde(c: &JacobiCoords) -> JacobiCoords {
    let mut out = c.clone();
    for i in q_range(c.n()) {
        let q = q_single(&out, i);
        let rescaled = out.get(i, i + 1) / q;
        out.set(i, i + 1, rescaled);
    }
    out
}

/// True iff the two triple compositions agree:
/// `((M')'')' = ((M'')')''`. Holds exactly on the balanced stratum and
/// fails on generic input (any `Q_i != 1`).
pub fn verify_mrho(c: &JacobiCoords) -> bool {
    let lhs = jacobi_prime(&jacobi_dprime(&jacobi_prime(c)));
    let rhs = jacobi_dprime(&jacobi_prime(&jacobi_dprime(c)));
    lhs == rhs
}

/// `y_ij = x_ij / x_{i+1,j+1}` for `1 <= i < j <= n-1`.
pub fn y_ratio(c: &JacobiCoords, i: usize, j: usize) -> Result<Rational> {
    let n = c.n();
    if !(1 <= i && i < j && j <= n - 1) {
        return Err(Error::IndexOutOfRange(alloc::format!(
            "y-ratio needs 1 <= i < j <= {}",
            n - 1
        )));
    }
    Ok(c.get(i, j) / c.get(i + 1, j + 1))
}

/// The barred ratio: the same functional on the reciprocal coordinates,
/// which is just `1 / y_ij`.
pub fn y_ratio_bar(c: &JacobiCoords, i: usize, j: usize) -> Result<Rational> {
    Ok(Rational::one() / y_ratio(c, i, j)?)
}
