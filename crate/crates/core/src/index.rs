//! Index sets and increasing triples.
//!
//! Everything in this crate is 1-based: rows, columns and Jacobi
//! coordinate labels all live in `[1, n]`, matching the standard notation
//! for flag minors.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A strictly increasing set of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Empty set; by convention its flag minor is 1.
    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// Validates that `indices` is strictly increasing and positive.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first().is_some_and(|&a| a == 0) {
            return Err(Error::IndexOutOfRange("indices are 1-based".to_string()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::IndexOutOfRange(
                "index set must be strictly increasing".to_string(),
            ));
        }
        Ok(IndexSet(indices))
    }

    /// The interval `[a, b]`; empty when `a > b`.
    pub fn interval(a: usize, b: usize) -> Self {
        if a == 0 {
            // The formulas below never produce a = 0; guard anyway.
            return IndexSet((1..=b).collect());
        }
        IndexSet((a..=b).collect())
    }

    /// Union of intervals given in ascending order. Panics if the pieces
    /// overlap, which cannot happen for the minor patterns used here.
    pub fn intervals(pieces: &[(usize, usize)]) -> Self {
        let mut v = Vec::new();
        for &(a, b) in pieces {
            let a = a.max(1);
            v.extend(a..=b);
        }
        assert!(v.windows(2).all(|w| w[0] < w[1]), "overlapping intervals");
        IndexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// True iff every index lies in `[1, n]`.
    pub fn fits(&self, n: usize) -> bool {
        self.0.last().is_none_or(|&m| m <= n)
    }

    /// The reversed set: `a` is a member iff `n + 1 - a` is a member of
    /// `self`.
    pub fn bar(&self, n: usize) -> Self {
        let mut v: Vec<usize> = self.0.iter().map(|&a| n + 1 - a).collect();
        v.reverse();
        IndexSet(v)
    }

    /// All subsets of `[1, n]` (including the empty one), by size then
    /// lexicographically. Exponential; intended for n <= 6 test loops.
    pub fn power_set(n: usize) -> Vec<IndexSet> {
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let v: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            out.push(IndexSet(v));
        }
        out.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
        out
    }
}

impl<'a> IntoIterator for &'a IndexSet {
    type Item = usize;
    type IntoIter = core::iter::Copied<core::slice::Iter<'a, usize>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// A point of the discrete tetrahedron: `1 <= a < b < c <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triple {
    pub fn new(a: usize, b: usize, c: usize, n: usize) -> Result<Self> {
        if a >= 1 && a < b && b < c && c <= n {
            Ok(Triple { a, b, c })
        } else {
            Err(Error::InvalidTriple { a, b, c, n })
        }
    }

    /// `(n+1-c, n+1-b, n+1-a)`, the index reversal appearing in the
    /// Y-variable symmetries.
    pub fn reversed(&self, n: usize) -> Triple {
        Triple {
            a: n + 1 - self.c,
            b: n + 1 - self.b,
            c: n + 1 - self.a,
        }
    }
}

/// The discrete tetrahedron `T_n` in lexicographic order.
pub fn tetrahedron(n: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in (a + 1)..=n {
            for c in (b + 1)..=n {
                out.push(Triple { a, b, c });
            }
        }
    }
    out
}
