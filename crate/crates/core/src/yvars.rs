//! The four Y-variable families: cross-ratios of flag minors indexed by
//! increasing triples.
//!
//! With `Δ_I` the right flag minor and `Δ^J` the upper one, and interval
//! unions written `[a,b] ∪ [c,n]`:
//!
//! ```text
//! Y_abc  = Δ_{[a,b-1]∪[c+1,n]} Δ_{[a+1,b]∪[c,n]} / (Δ_{[a,b]∪[c+1,n]} Δ_{[a+1,b-1]∪[c,n]})
//! Ỹ_abc  = Δ_{[1,a]∪[b+1,c-1]} Δ_{[1,a-1]∪[b,c]} / (Δ_{[1,a]∪[b,c-1]} Δ_{[1,a-1]∪[b+1,c]})
//! Y^abc  = Δ^{[a,b]∪[c+1,n]} Δ^{[a+1,b-1]∪[c,n]} / (Δ^{[a,b-1]∪[c+1,n]} Δ^{[a+1,b]∪[c,n]})
//! Ỹ^abc  = Δ^{[1,a]∪[b,c-1]} Δ^{[1,a-1]∪[b+1,c]} / (Δ^{[1,a]∪[b+1,c-1]} Δ^{[1,a-1]∪[b,c]})
//! ```
//!
//! The families are redundant (`Y_abc = Ỹ^{a,a+c-b,c}`) and transform
//! into reciprocals of each other under the two involutions; both facts
//! are exposed as checks here. On the constant-coordinate matrices `M_x`
//! every Y-value degenerates to a ratio of index gaps, independently of
//! `x`, which pins the constant in the dilogarithm sum identities.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::index::{tetrahedron, IndexSet, Triple};
use crate::involutions::{jacobi_dprime, jacobi_prime};
use crate::jacobi::{jacobi_to_matrix, matrix_to_jacobi};
use crate::matrix::{MatrixScalar, SquareMatrix, UpperUnitriangular};
use crate::rational::Rational;

/// Tag selecting one of the four families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum YFamily {
    /// `Y_abc`, right flag minors.
    Lower,
    /// `Ỹ_abc`, right flag minors anchored at the top rows.
    LowerTilde,
    /// `Y^abc`, upper flag minors.
    Upper,
    /// `Ỹ^abc`, upper flag minors anchored at the leading columns.
    UpperTilde,
}

impl YFamily {
    pub const ALL: [YFamily; 4] = [
        YFamily::Lower,
        YFamily::UpperTilde,
        YFamily::LowerTilde,
        YFamily::Upper,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            YFamily::Lower => "y-lower",
            YFamily::LowerTilde => "y-lower-tilde",
            YFamily::Upper => "y-upper",
            YFamily::UpperTilde => "y-upper-tilde",
        }
    }
}

/// Evaluates one Y-variable as an exact ratio of four flag minors.
/// Works over any scalar; the rational path uses fraction-free minors.
pub fn y_value<S: MatrixScalar>(m: &SquareMatrix<S>, family: YFamily, t: Triple) -> Result<S> {
    let n = m.n();
    Triple::new(t.a, t.b, t.c, n)?;
    let (a, b, c) = (t.a, t.b, t.c);
    let iv = IndexSet::intervals;
    let (n1, n2, d1, d2) = match family {
        YFamily::Lower => (
            iv(&[(a, b - 1), (c + 1, n)]),
            iv(&[(a + 1, b), (c, n)]),
            iv(&[(a, b), (c + 1, n)]),
            iv(&[(a + 1, b - 1), (c, n)]),
        ),
        YFamily::LowerTilde => (
            iv(&[(1, a), (b + 1, c - 1)]),
            iv(&[(1, a - 1), (b, c)]),
            iv(&[(1, a), (b, c - 1)]),
            iv(&[(1, a - 1), (b + 1, c)]),
        ),
        YFamily::Upper => (
            iv(&[(a, b), (c + 1, n)]),
            iv(&[(a + 1, b - 1), (c, n)]),
            iv(&[(a, b - 1), (c + 1, n)]),
            iv(&[(a + 1, b), (c, n)]),
        ),
        YFamily::UpperTilde => (
            iv(&[(1, a), (b, c - 1)]),
            iv(&[(1, a - 1), (b + 1, c)]),
            iv(&[(1, a), (b + 1, c - 1)]),
            iv(&[(1, a - 1), (b, c)]),
        ),
    };
    let minor = |s: &IndexSet| -> Result<S> {
        match family {
            YFamily::Lower | YFamily::LowerTilde => m.flag_minor_right(s),
            YFamily::Upper | YFamily::UpperTilde => m.flag_minor_upper(s),
        }
    };
    Ok(minor(&n1)? * minor(&n2)? / (minor(&d1)? * minor(&d2)?))
}

/// All Y-values of a family over the discrete tetrahedron, in
/// lexicographic triple order.
pub fn y_values<S: MatrixScalar>(
    m: &SquareMatrix<S>,
    family: YFamily,
) -> Result<Vec<(Triple, S)>> {
    tetrahedron(m.n())
        .into_iter()
        .map(|t| Ok((t, y_value(m, family, t)?)))
        .collect()
}

/// Exercises the interrelations of the Y-families over every triple:
/// the redundancy `Y_abc = Ỹ^{a,a+c-b,c}` with its general-minor middle
/// member, and the reciprocal laws connecting tilde values of the
/// involution images to reversed-triple values (in both directions).
pub fn y_relations_check(m: &UpperUnitriangular) -> Result<bool> {
    let n = m.n();
    let coords = matrix_to_jacobi(m)?;
    let mp = jacobi_to_matrix(&jacobi_prime(&coords))?;
    let mpp = jacobi_to_matrix(&jacobi_dprime(&coords))?;
    let one = Rational::one();
    for t in tetrahedron(n) {
        let (a, b, c) = (t.a, t.b, t.c);
        let y = y_value(m.matrix(), YFamily::Lower, t)?;
        // redundancy against the upper-tilde family
        let shifted = Triple::new(a, a + c - b, c, n)?;
        if y != y_value(m.matrix(), YFamily::UpperTilde, shifted)? {
            return Ok(false);
        }
        // general-minor middle expression
        let sub = |r: (usize, usize), cc: (usize, usize)| -> Result<Rational> {
            m.minor(&IndexSet::interval(r.0, r.1), &IndexSet::interval(cc.0, cc.1))
        };
        let mid = sub((a, b - 1), (a + c - b + 1, c))? * sub((a + 1, b), (a + c - b, c - 1))?
            / (sub((a, b), (a + c - b, c))? * sub((a + 1, b - 1), (a + c - b + 1, c - 1))?);
        if y != mid {
            return Ok(false);
        }
        // reciprocal laws under the involutions
        let r = t.reversed(n);
        if y_value(mp.matrix(), YFamily::LowerTilde, t)?
            != one.clone() / y_value(m.matrix(), YFamily::Lower, r)?
        {
            return Ok(false);
        }
        if y_value(mpp.matrix(), YFamily::UpperTilde, t)?
            != one.clone() / y_value(m.matrix(), YFamily::Upper, r)?
        {
            return Ok(false);
        }
        // the same laws with the roles of M and its image exchanged
        if y_value(m.matrix(), YFamily::LowerTilde, t)?
            != one.clone() / y_value(mp.matrix(), YFamily::Lower, r)?
        {
            return Ok(false);
        }
        if y_value(m.matrix(), YFamily::UpperTilde, t)?
            != one.clone() / y_value(mpp.matrix(), YFamily::Upper, r)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The constant-coordinate matrix: `(M_x)_{ij} = C(n-i, j-i) x^(j-i)`,
/// equal to the factorization of the all-`x` coordinate set.
pub fn m_x(n: usize, x: &Rational) -> Result<UpperUnitriangular> {
    if !crate::rational::is_positive(x) {
        return Err(Error::NonPositiveCoordinate { i: 1, j: 2 });
    }
    if n < 2 {
        return Err(Error::Dimension("need n >= 2".into()));
    }
    let m = SquareMatrix::from_fn(n, |i, j| {
        if j < i {
            Rational::from_integer(0.into())
        } else {
            let b = num_integer::binomial(BigInt::from(n - i), BigInt::from(j - i));
            Rational::from_integer(b) * pow_rational(x, (j - i) as u32)
        }
    });
    UpperUnitriangular::new(m)
}

fn pow_rational(x: &Rational, k: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..k {
        out *= x;
    }
    out
}

/// Expected Y-value on `M_x`: gap ratio `(c-b)/(b-a)` for the two lower
/// families, its reciprocal for the two upper ones; independent of `x`.
pub fn y_value_on_constant_matrix(family: YFamily, t: Triple) -> Rational {
    let lower = Rational::new(BigInt::from(t.c - t.b), BigInt::from(t.b - t.a));
    match family {
        YFamily::Lower | YFamily::LowerTilde => lower,
        YFamily::Upper | YFamily::UpperTilde => Rational::one() / lower,
    }
}

/// The `(m+1) x (m+1)` reciprocal-factorial Toeplitz matrix,
/// `T[i][j] = 1/(k+j-i)!` with `1/p! = 0` for negative `p`.
pub fn toeplitz_matrix(k: usize, m: usize) -> SquareMatrix<Rational> {
    SquareMatrix::from_fn(m + 1, |i, j| {
        let p = k as i64 + j as i64 - i as i64;
        if p < 0 {
            Rational::from_integer(0.into())
        } else {
            Rational::new(BigInt::one(), factorial(p as u64))
        }
    })
}

/// Closed form for `det T_{k,m}`: `(1! 2! ... m!) / (k! (k+1)! ... (k+m)!)`.
pub fn toeplitz_det(k: usize, m: usize) -> Rational {
    let mut num = BigInt::one();
    for t in 1..=m as u64 {
        num *= factorial(t);
    }
    let mut den = BigInt::one();
    for t in k as u64..=(k + m) as u64 {
        den *= factorial(t);
    }
    Rational::new(num, den)
}

pub(crate) fn factorial(n: u64) -> BigInt {
    let mut out = BigInt::one();
    for t in 2..=n {
        out *= t;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::JacobiCoords;
    use crate::rational::{int, rat};

    fn coords3(a: Rational, b: Rational, c: Rational) -> JacobiCoords {
        JacobiCoords::new(3, &[((1, 2), a), ((1, 3), b), ((2, 3), c)]).unwrap()
    }

    #[test]
    fn n3_y_is_coordinate_ratio() {
        // Y_123 = x_12 / x_23 on the symbolic 3x3 matrix
        let (a, b, c) = (rat(2, 7), int(3), rat(5, 4));
        let m = jacobi_to_matrix(&coords3(a.clone(), b, c.clone())).unwrap();
        let t = Triple::new(1, 2, 3, 3).unwrap();
        assert_eq!(y_value(m.matrix(), YFamily::Lower, t).unwrap(), a / c);
    }

    #[test]
    fn constant_matrix_entries() {
        // n=4, x=1: Pascal-style rows
        let m = m_x(4, &int(1)).unwrap();
        let want = [[1i64, 3, 3, 1], [0, 1, 2, 1], [0, 0, 1, 1], [0, 0, 0, 1]];
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(m.at(i, j), &int(want[i - 1][j - 1]));
            }
        }
        // x=2, n=3
        let m = m_x(3, &int(2)).unwrap();
        assert_eq!(m.at(1, 2), &int(4));
        assert_eq!(m.at(1, 3), &int(4));
        assert_eq!(m.at(2, 3), &int(2));
        assert!(m_x(3, &int(0)).is_err());
    }

    #[test]
    fn constant_matrix_agrees_with_factorization() {
        for x in [rat(1, 3), int(1), int(7)] {
            let direct = m_x(5, &x).unwrap();
            let via_coords =
                jacobi_to_matrix(&JacobiCoords::constant(5, &x).unwrap()).unwrap();
            assert_eq!(direct, via_coords);
        }
    }

    #[test]
    fn constant_matrix_y_values() {
        for x in [rat(1, 3), int(1), int(7)] {
            let m = m_x(5, &x).unwrap();
            for t in tetrahedron(5) {
                for fam in YFamily::ALL {
                    assert_eq!(
                        y_value(m.matrix(), fam, t).unwrap(),
                        y_value_on_constant_matrix(fam, t),
                        "family {fam:?} triple {t:?} x {x}"
                    );
                }
            }
        }
    }

    #[test]
    fn constant_matrix_involution_images() {
        // the involutions send M_x to M_{1/x}
        let x = rat(3, 2);
        let c = JacobiCoords::constant(4, &x).unwrap();
        let inv = JacobiCoords::constant(4, &rat(2, 3)).unwrap();
        assert_eq!(jacobi_prime(&c), inv);
        assert_eq!(jacobi_dprime(&c), inv);
    }

    #[test]
    fn y_relations_on_random_matrix() {
        let c = JacobiCoords::new(
            4,
            &[
                ((1, 2), rat(2, 3)),
                ((1, 3), int(5)),
                ((1, 4), rat(1, 7)),
                ((2, 3), rat(3, 2)),
                ((2, 4), rat(4, 5)),
                ((3, 4), rat(9, 2)),
            ],
        )
        .unwrap();
        let m = jacobi_to_matrix(&c).unwrap();
        assert!(y_relations_check(&m).unwrap());
    }

    #[test]
    fn toeplitz_small_cases() {
        assert_eq!(toeplitz_det(1, 1), rat(1, 2));
        assert_eq!(toeplitz_matrix(1, 1).determinant(), rat(1, 2));
        // 1x1 matrix: F_{k,0} = 1/k!
        assert_eq!(toeplitz_det(4, 0), rat(1, 24));
        // entry below the k-diagonal vanishes
        let t = toeplitz_matrix(0, 2);
        assert_eq!(t.at(3, 1), &int(0));
    }

    #[test]
    fn toeplitz_closed_form_matches_determinant() {
        for k in 0..=5 {
            for m in 0..=5 {
                assert_eq!(toeplitz_matrix(k, m).determinant(), toeplitz_det(k, m));
            }
        }
    }

    #[test]
    fn toeplitz_recurrence() {
        // F_{k,m} = (F_{k,m-1}^2 - F_{k+1,m-1} F_{k-1,m-1}) / F_{k,m-2}
        for k in 1..=8usize {
            for m in 2..=8usize {
                let lhs = toeplitz_det(k, m);
                let rhs = (toeplitz_det(k, m - 1) * toeplitz_det(k, m - 1)
                    - toeplitz_det(k + 1, m - 1) * toeplitz_det(k - 1, m - 1))
                    / toeplitz_det(k, m - 2);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn y_rejects_bad_triple() {
        let m = m_x(4, &int(1)).unwrap();
        assert!(y_value(m.matrix(), YFamily::Lower, Triple { a: 1, b: 1, c: 3 }).is_err());
        assert!(y_value(m.matrix(), YFamily::Lower, Triple { a: 2, b: 3, c: 5 }).is_err());
    }
}
