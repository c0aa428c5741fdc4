//! The Gauss-type decomposition `P M P = M' P D M''` and the maps it
//! induces on the totally positive stratum.
//!
//! Conjugating by the order-reversing permutation `P` and splitting off
//! the triangular factors defines two maps `M -> M'` and `M -> M''`,
//! both involutive, together with a signed diagonal `D_M` whose entries
//! are monomials in the Jacobi coordinates. The same data extends the
//! maps to invertible triangular matrices `G = M Λ` (resp. `Λ M`): the
//! extensions relabel flag minors by index reversal,
//! `Δ_I(check_g(G)) = Δ_{Ī}(G)` and `Δ^J(hat_g(G)) = Δ^{J̄}(G)`.
//!
//! The related non-involutive twist `η`, defined through
//! `P zᵗ = vᵗ d u  ->  η(z) = u`, is provided as a cross-check:
//! `M' = P η(M)ᵗ P` and `M'' = η(P Mᵗ P)`.

use alloc::format;
use alloc::string::ToString;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jacobi::{matrix_to_jacobi, JacobiCoords};
use crate::matrix::{
    is_totally_positive, permutation_w0, DiagonalMatrix, MatrixScalar, SquareMatrix,
    UpperUnitriangular,
};
use crate::rational::Rational;

/// The three factors of `P M P = M' P D_M M''`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussTriple {
    pub m_prime: UpperUnitriangular,
    pub d: DiagonalMatrix,
    pub m_dprime: UpperUnitriangular,
}

/// Exact LDU split with unipotent `L` and `U`; no pivoting, since the
/// stratum guarantees nonzero leading principal minors.
fn ldu(
    a: &SquareMatrix<Rational>,
) -> Result<(SquareMatrix<Rational>, DiagonalMatrix, SquareMatrix<Rational>)> {
    let n = a.n();
    let mut w = a.clone();
    let mut l = SquareMatrix::<Rational>::identity(n);
    for c in 1..=n {
        let pivot = w.at(c, c).clone();
        if pivot.is_zero() {
            return Err(Error::VanishingMinor(format!("leading principal [1,{c}]")));
        }
        for r in (c + 1)..=n {
            if w.at(r, c).is_zero() {
                continue;
            }
            let f = w.at(r, c).clone() / pivot.clone();
            for j in c..=n {
                let v = w.at(r, j).clone() - f.clone() * w.at(c, j).clone();
                w.set(r, j, v);
            }
            l.set(r, c, f);
        }
    }
    let d = DiagonalMatrix::from_diagonal_of(&w)?;
    let u = &d.inverse().matrix().clone() * &w;
    Ok((l, d, u))
}

/// Splits `P M P = M' P D_M M''`; fails off the totally positive
/// stratum, where a leading principal minor of `M P` vanishes.
pub fn decompose_gauss(m: &UpperUnitriangular) -> Result<GaussTriple> {
    let n = m.n();
    let p = permutation_w0(n);
    let (l, d, u) = ldu(&(m.matrix() * &p))?;
    let m_prime = UpperUnitriangular::new(&(&p * &l) * &p)
        .map_err(|_| Error::NotTotallyPositive("conjugated L factor not unipotent".to_string()))?;
    let m_dprime = UpperUnitriangular::new(u)
        .map_err(|_| Error::NotTotallyPositive("U factor not unipotent".to_string()))?;
    Ok(GaussTriple { m_prime, d, m_dprime })
}

/// `M -> M'` through the decomposition.
pub fn prime(m: &UpperUnitriangular) -> Result<UpperUnitriangular> {
    Ok(decompose_gauss(m)?.m_prime)
}

/// `M -> M''` through the decomposition.
pub fn dprime(m: &UpperUnitriangular) -> Result<UpperUnitriangular> {
    Ok(decompose_gauss(m)?.m_dprime)
}

/// Closed form for the coordinates of `M'`:
/// `x_ij(M') = prod_{k<i} x_{k,n+i-j} / prod_{k<=i} x_{k,n+1+i-j}`.
pub fn jacobi_prime_generic<S: MatrixScalar>(c: &JacobiCoords<S>) -> JacobiCoords<S> {
    let n = c.n();
    JacobiCoords::from_fn(n, |i, j| {
        let mut num = S::one();
        for k in 1..i {
            num = num * c.get(k, n + i - j).clone();
        }
        let mut den = S::one();
        for k in 1..=i {
            den = den * c.get(k, n + 1 + i - j).clone();
        }
        num / den
    })
    .expect("same dimension")
}

/// Closed form for the coordinates of `M''`:
/// `x_ij(M'') = prod_{k>j} x_{j+1-i,k} / prod_{k>=j} x_{j-i,k}`.
pub fn jacobi_dprime_generic<S: MatrixScalar>(c: &JacobiCoords<S>) -> JacobiCoords<S> {
    let n = c.n();
    JacobiCoords::from_fn(n, |i, j| {
        let mut num = S::one();
        for k in (j + 1)..=n {
            num = num * c.get(j + 1 - i, k).clone();
        }
        let mut den = S::one();
        for k in j..=n {
            den = den * c.get(j - i, k).clone();
        }
        num / den
    })
    .expect("same dimension")
}

pub fn jacobi_prime(c: &JacobiCoords) -> JacobiCoords {
    jacobi_prime_generic(c)
}

pub fn jacobi_dprime(c: &JacobiCoords) -> JacobiCoords {
    jacobi_dprime_generic(c)
}

/// The signed diagonal of the decomposition:
/// `(D_M)_{ii} = (-1)^{i-1} prod_{k>i} x_{ik} / prod_{k<i} x_{ki}`.
pub fn d_matrix(c: &JacobiCoords) -> DiagonalMatrix {
    let n = c.n();
    DiagonalMatrix::from_entries(
        (1..=n)
            .map(|i| {
                let mut v = Rational::one();
                for k in (i + 1)..=n {
                    v *= c.get(i, k);
                }
                for k in 1..i {
                    v /= c.get(k, i);
                }
                if i % 2 == 0 {
                    -v
                } else {
                    v
                }
            })
            .collect(),
    )
    .expect("positive coordinates give nonzero monomials")
}

/// Entrywise reciprocal of the coordinates; an involution commuting
/// with both `'` maps.
pub fn bar<S: MatrixScalar>(c: &JacobiCoords<S>) -> JacobiCoords<S> {
    c.map(|_, _, v| S::one() / v.clone())
}

fn validate_triangular_positive(g: &SquareMatrix<Rational>) -> Result<()> {
    if !g.is_upper_triangular() {
        return Err(Error::Shape("expected an upper triangular matrix".to_string()));
    }
    if !is_totally_positive(g)? {
        return Err(Error::NotTotallyPositive(
            "a non-vanishing minor is not positive".to_string(),
        ));
    }
    Ok(())
}

/// The flag-minor relabeling involution on invertible totally positive
/// triangular matrices, built as `M' Λ P |D_M| P` from `G = M Λ`.
pub fn check_g(g: &SquareMatrix<Rational>) -> Result<SquareMatrix<Rational>> {
    validate_triangular_positive(g)?;
    let n = g.n();
    let lambda = DiagonalMatrix::from_diagonal_of(g)?;
    let m = UpperUnitriangular::new(g * lambda.inverse().matrix())
        .expect("column rescaling by the diagonal is unipotent");
    let t = decompose_gauss(&m)?;
    let p = permutation_w0(n);
    let pdp = &(&p * t.d.abs().matrix()) * &p;
    Ok(&(t.m_prime.matrix() * lambda.matrix()) * &pdp)
}

/// The upper-flag counterpart, built as `Λ |D_M| M''` from `G = Λ M`.
pub fn hat_g(g: &SquareMatrix<Rational>) -> Result<SquareMatrix<Rational>> {
    validate_triangular_positive(g)?;
    let lambda = DiagonalMatrix::from_diagonal_of(g)?;
    let m = UpperUnitriangular::new(lambda.inverse().matrix() * g)
        .expect("row rescaling by the diagonal is unipotent");
    let t = decompose_gauss(&m)?;
    Ok(&(lambda.matrix() * t.d.abs().matrix()) * t.m_dprime.matrix())
}

/// The twist `z -> u` from `P zᵗ = vᵗ d u`. Not an involution, unlike
/// `prime`/`dprime`; the conjugation identities relating them are
/// exercised in the tests.
pub fn bfz_twist(z: &UpperUnitriangular) -> Result<UpperUnitriangular> {
    let n = z.n();
    let p = permutation_w0(n);
    let (_, _, u) = ldu(&(&p * &z.transpose()))?;
    UpperUnitriangular::new(u)
        .map_err(|_| Error::NotTotallyPositive("twist factor not unipotent".to_string()))
}

/// Recovers coordinates of both involution images and checks them
/// against the closed forms; used by the exact test suite.
pub fn decomposition_matches_closed_forms(m: &UpperUnitriangular) -> Result<bool> {
    let c = matrix_to_jacobi(m)?;
    let t = decompose_gauss(m)?;
    Ok(matrix_to_jacobi(&t.m_prime)? == jacobi_prime(&c)
        && matrix_to_jacobi(&t.m_dprime)? == jacobi_dprime(&c)
        && t.d == d_matrix(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::jacobi_to_matrix;
    use crate::rational::{int, rat};

    fn coords(n: usize, vals: &[(usize, usize, i64, i64)]) -> JacobiCoords {
        JacobiCoords::new(
            n,
            &vals
                .iter()
                .map(|&(i, j, p, q)| ((i, j), rat(p, q)))
                .collect::<alloc::vec::Vec<_>>(),
        )
        .unwrap()
    }

    fn coords4() -> JacobiCoords {
        coords(
            4,
            &[
                (1, 2, 2, 3),
                (1, 3, 5, 1),
                (1, 4, 1, 7),
                (2, 3, 3, 2),
                (2, 4, 4, 5),
                (3, 4, 9, 2),
            ],
        )
    }

    #[test]
    fn n2_decomposition_by_hand() {
        // M = [[1, t], [0, 1]]: M' has coordinate 1/t, D = diag(t, -1/t)
        let t = rat(7, 3);
        let c = coords(2, &[(1, 2, 7, 3)]);
        let g = decompose_gauss(&jacobi_to_matrix(&c).unwrap()).unwrap();
        assert_eq!(g.m_prime.at(1, 2), &(int(1) / t.clone()));
        assert_eq!(g.d.diag(1), &t);
        assert_eq!(g.d.diag(2), &(-int(1) / t));
    }

    #[test]
    fn n3_d_matrix_closed_form() {
        // D = diag(ab, -c/a, 1/(bc))
        let (a, b, c) = (rat(2, 5), int(3), rat(7, 4));
        let cs = JacobiCoords::new(
            3,
            &[((1, 2), a.clone()), ((1, 3), b.clone()), ((2, 3), c.clone())],
        )
        .unwrap();
        let d = d_matrix(&cs);
        assert_eq!(d.diag(1), &(a.clone() * b.clone()));
        assert_eq!(d.diag(2), &(-c.clone() / a));
        assert_eq!(d.diag(3), &(int(1) / (b * c)));
        assert_eq!(&d, &decompose_gauss(&jacobi_to_matrix(&cs).unwrap()).unwrap().d);
    }

    #[test]
    fn n3_closed_form_coordinates() {
        let (a, b, c) = (rat(2, 5), int(3), rat(7, 4));
        let cs = JacobiCoords::new(
            3,
            &[((1, 2), a.clone()), ((1, 3), b.clone()), ((2, 3), c.clone())],
        )
        .unwrap();
        let p = jacobi_prime(&cs);
        assert_eq!(p.get(1, 2), &(int(1) / b.clone()));
        assert_eq!(p.get(1, 3), &(int(1) / a.clone()));
        assert_eq!(p.get(2, 3), &(a.clone() / (b.clone() * c.clone())));
        let q = jacobi_dprime(&cs);
        assert_eq!(q.get(1, 2), &(c.clone() / (a * b.clone())));
        assert_eq!(q.get(1, 3), &(int(1) / c));
        assert_eq!(q.get(2, 3), &(int(1) / b));
    }

    #[test]
    fn decomposition_equation_holds() {
        let m = jacobi_to_matrix(&coords4()).unwrap();
        let g = decompose_gauss(&m).unwrap();
        let p = permutation_w0(4);
        let lhs = &(&p * m.matrix()) * &p;
        let rhs = &(g.m_prime.matrix() * &p) * &(g.d.matrix() * g.m_dprime.matrix());
        assert_eq!(lhs, rhs);
        // determinant bookkeeping: det(D) det(P) = 1
        assert_eq!(g.d.determinant() * p.determinant(), int(1));
    }

    #[test]
    fn involutive_on_coordinates() {
        let c = coords4();
        assert_eq!(jacobi_prime(&jacobi_prime(&c)), c);
        assert_eq!(jacobi_dprime(&jacobi_dprime(&c)), c);
        assert_eq!(bar(&bar(&c)), c);
        assert_eq!(bar(&jacobi_prime(&c)), jacobi_prime(&bar(&c)));
    }

    #[test]
    fn closed_forms_match_elimination() {
        let m = jacobi_to_matrix(&coords4()).unwrap();
        assert!(decomposition_matches_closed_forms(&m).unwrap());
    }

    #[test]
    fn all_ones_bar_fixed_point() {
        let c = JacobiCoords::constant(4, &int(1)).unwrap();
        assert_eq!(bar(&c), c);
    }

    #[test]
    fn twist_conjugation_identities() {
        let m = jacobi_to_matrix(&coords4()).unwrap();
        let g = decompose_gauss(&m).unwrap();
        let p = permutation_w0(4);
        // M' = P eta(M)^t P
        let eta = bfz_twist(&m).unwrap();
        assert_eq!(
            g.m_prime.matrix(),
            &(&(&p * &eta.transpose()) * &p)
        );
        // M'' = eta(P M^t P)
        let conj = UpperUnitriangular::new(&(&p * &m.transpose()) * &p).unwrap();
        assert_eq!(g.m_dprime, bfz_twist(&conj).unwrap());
    }

    #[test]
    fn twist_is_not_involutive() {
        // random search over a few small coordinate choices
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut found = false;
        for _ in 0..20 {
            let c = JacobiCoords::from_fn(3, |_, _| rat(rng.gen_range(1..8), rng.gen_range(1..8)))
                .unwrap();
            let m = jacobi_to_matrix(&c).unwrap();
            let twice = bfz_twist(&bfz_twist(&m).unwrap()).unwrap();
            if twice != m {
                found = true;
                break;
            }
        }
        assert!(found, "expected a witness that the twist is not involutive");
    }

    #[test]
    fn decompose_rejects_degenerate_input() {
        let id = UpperUnitriangular::new(SquareMatrix::identity(3)).unwrap();
        assert!(matches!(
            decompose_gauss(&id),
            Err(Error::VanishingMinor(_))
        ));
    }
}
