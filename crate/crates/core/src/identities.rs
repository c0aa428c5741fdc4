//! Dilogarithm sums over the discrete tetrahedron and the identity
//! chains they satisfy.
//!
//! For every totally positive unitriangular `M` the twelve sums
//! `Σ l(Y(M'))`, `Σ l(1/Y(M))`, `Σ l(Y(M''))` — one triple of sums per
//! Y-family — agree, and the paired sum `Σ l(Y(M)) + Σ l(Y(M'))` equals
//! the triple count `n(n-1)(n-2)/6`. The whole chain is invariant under
//! substituting any of the six involution words for `M`, with the sign
//! of the word deciding whether the Y-values enter inverted; and it
//! survives the passage from unipotent `M` to invertible triangular `G`
//! with the flag-relabeling involutions in place of `'` and `''`.
//!
//! Checks produce [`IdentityReport`]s: named residuals compared against
//! a tolerance, mergeable across parallel trials.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::time::Duration;

use num_bigint::BigInt;
use num_traits::One;

use crate::bigfloat::BigFloat;
use crate::dilog::{spread, DilogEval};
use crate::error::{Error, Result};
use crate::index::tetrahedron;
use crate::involutions::{check_g, hat_g, jacobi_dprime, jacobi_prime};
use crate::jacobi::{jacobi_to_matrix, matrix_to_jacobi, JacobiCoords};
use crate::matrix::{DiagonalMatrix, SquareMatrix, UpperUnitriangular};
use crate::rational::Rational;
use crate::yvars::{y_value, YFamily};

/// One named residual check.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub max_residual: BigFloat,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, residual: BigFloat, tolerance: &BigFloat) -> Self {
        let pass = residual.abs() <= *tolerance;
        IdentityCheck { name: name.into(), max_residual: residual.abs(), pass }
    }
}

/// Aggregated result of a verification run.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub n: usize,
    pub trials: usize,
    pub checks: Vec<IdentityCheck>,
    pub elapsed: Option<Duration>,
}

impl IdentityReport {
    pub fn new(n: usize) -> Self {
        IdentityReport { n, trials: 1, checks: Vec::new(), elapsed: None }
    }

    pub fn push(&mut self, check: IdentityCheck) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Merges another report: residuals max out per name, passes are
    /// conjoined, trial counts add. Order-independent.
    pub fn absorb(&mut self, other: IdentityReport) {
        self.trials += other.trials;
        self.merge_checks(other);
    }

    /// Same-trial composition: folds in another report's checks without
    /// touching the trial count.
    pub fn merge_checks(&mut self, other: IdentityReport) {
        for c in other.checks {
            match self.checks.iter_mut().find(|m| m.name == c.name) {
                Some(mine) => {
                    if c.max_residual > mine.max_residual {
                        mine.max_residual = c.max_residual;
                    }
                    mine.pass &= c.pass;
                }
                None => self.checks.push(c),
            }
        }
    }
}

/// `|T_n| = n(n-1)(n-2)/6` as an exact rational.
pub fn triple_count(n: usize) -> Rational {
    Rational::new(
        BigInt::from(n) * BigInt::from(n - 1) * BigInt::from(n - 2),
        BigInt::from(6),
    )
}

/// `Σ_{T_n} l(Y)` or `Σ l(1/Y)`; Y-values are exact rationals converted
/// once per term.
pub fn dilog_sum(
    ev: &DilogEval,
    m: &SquareMatrix<Rational>,
    family: YFamily,
    invert: bool,
) -> Result<BigFloat> {
    let mut acc = BigFloat::zero();
    for t in tetrahedron(m.n()) {
        let mut y = y_value(m, family, t)?;
        if invert {
            y = Rational::one() / y;
        }
        acc = acc + ev.rogers_l_rational(&y)?;
    }
    Ok(acc)
}

fn involution_images(
    m: &UpperUnitriangular,
) -> Result<(UpperUnitriangular, UpperUnitriangular)> {
    let c = matrix_to_jacobi(m)?;
    Ok((
        jacobi_to_matrix(&jacobi_prime(&c))?,
        jacobi_to_matrix(&jacobi_dprime(&c))?,
    ))
}

/// Paired-sum constants: `Σ l(Y(M)) + Σ l(Y(M'))` for the lower family
/// and the `M''` analogue for the upper one, both against
/// `n(n-1)(n-2)/6`.
pub fn verify_sum_constant(
    ev: &DilogEval,
    m: &UpperUnitriangular,
    tol: &BigFloat,
) -> Result<IdentityReport> {
    let n = m.n();
    let (mp, mpp) = involution_images(m)?;
    let target = BigFloat::from_rational(&triple_count(n), ev.precision() + 32);
    let mut report = IdentityReport::new(n);
    let s_lower = dilog_sum(ev, m.matrix(), YFamily::Lower, false)?
        + dilog_sum(ev, mp.matrix(), YFamily::Lower, false)?;
    report.push(IdentityCheck::new(
        "sum-constant-lower",
        s_lower - target.clone(),
        tol,
    ));
    let s_upper = dilog_sum(ev, m.matrix(), YFamily::Upper, false)?
        + dilog_sum(ev, mpp.matrix(), YFamily::Upper, false)?;
    report.push(IdentityCheck::new("sum-constant-upper", s_upper - target, tol));
    Ok(report)
}

/// The twelve labeled sums of the chain, in family-major order.
pub fn chain_sums(ev: &DilogEval, m: &UpperUnitriangular) -> Result<Vec<(String, BigFloat)>> {
    let (mp, mpp) = involution_images(m)?;
    let mut out = Vec::with_capacity(12);
    for family in YFamily::ALL {
        let label = family.label();
        out.push((
            format!("{label}(prime)"),
            dilog_sum(ev, mp.matrix(), family, false)?,
        ));
        out.push((
            format!("1/{label}"),
            dilog_sum(ev, m.matrix(), family, true)?,
        ));
        out.push((
            format!("{label}(dprime)"),
            dilog_sum(ev, mpp.matrix(), family, false)?,
        ));
    }
    Ok(out)
}

/// All twelve sums of the chain agree pairwise within `tol`.
pub fn verify_chain(
    ev: &DilogEval,
    m: &UpperUnitriangular,
    tol: &BigFloat,
) -> Result<IdentityReport> {
    let sums = chain_sums(ev, m)?;
    let values: Vec<BigFloat> = sums.into_iter().map(|(_, v)| v).collect();
    let mut report = IdentityReport::new(m.n());
    report.push(IdentityCheck::new("chain", spread(&values), tol));
    Ok(report)
}

/// A reduced word in the two involution generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S3Word(Vec<Gen>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    /// `M -> M'`
    S1,
    /// `M -> M''`
    S2,
}

impl S3Word {
    pub fn id() -> Self {
        S3Word(Vec::new())
    }

    /// Parses `"id"`, `"s1"`, `"s2"`, `"s1s2"`, `"s2s1"`, `"s1s2s1"`,
    /// `"s2s1s2"` (the two length-3 words name the same group element).
    pub fn parse(s: &str) -> Result<Self> {
        let gens = match s {
            "id" => Vec::new(),
            "s1" => alloc::vec![Gen::S1],
            "s2" => alloc::vec![Gen::S2],
            "s1s2" => alloc::vec![Gen::S1, Gen::S2],
            "s2s1" => alloc::vec![Gen::S2, Gen::S1],
            "s1s2s1" => alloc::vec![Gen::S1, Gen::S2, Gen::S1],
            "s2s1s2" => alloc::vec![Gen::S2, Gen::S1, Gen::S2],
            other => return Err(Error::Parse(format!("unknown word {other:?}"))),
        };
        Ok(S3Word(gens))
    }

    /// The six group elements in canonical words.
    pub fn all_elements() -> [S3Word; 6] {
        [
            S3Word::parse("id").unwrap(),
            S3Word::parse("s1").unwrap(),
            S3Word::parse("s2").unwrap(),
            S3Word::parse("s1s2").unwrap(),
            S3Word::parse("s2s1").unwrap(),
            S3Word::parse("s1s2s1").unwrap(),
        ]
    }

    pub fn label(&self) -> String {
        if self.0.is_empty() {
            return "id".to_string();
        }
        self.0
            .iter()
            .map(|g| match g {
                Gen::S1 => "s1",
                Gen::S2 => "s2",
            })
            .collect()
    }

    /// `+1` for even words, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        if self.0.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Applies the word as a composition: the rightmost generator acts
    /// first, so `s2s1` sends `M` to `(M')''`.
    pub fn apply(&self, c: &JacobiCoords) -> JacobiCoords {
        let mut out = c.clone();
        for g in self.0.iter().rev() {
            out = match g {
                Gen::S1 => jacobi_prime(&out),
                Gen::S2 => jacobi_dprime(&out),
            };
        }
        out
    }

    /// Word as a permutation of three letters (`s1` swaps the first
    /// pair, `s2` the second), rightmost generator first.
    fn permutation(&self) -> [u8; 3] {
        let mut p = [0u8, 1, 2];
        for g in self.0.iter().rev() {
            let (x, y) = match g {
                Gen::S1 => (0u8, 1u8),
                Gen::S2 => (1, 2),
            };
            for v in p.iter_mut() {
                if *v == x {
                    *v = y;
                } else if *v == y {
                    *v = x;
                }
            }
        }
        p
    }

    /// Group composition, `self` after `rhs`, reduced to the canonical
    /// word of the resulting element.
    pub fn compose(&self, rhs: &S3Word) -> S3Word {
        let (f, g) = (self.permutation(), rhs.permutation());
        let target = [f[g[0] as usize], f[g[1] as usize], f[g[2] as usize]];
        S3Word::all_elements()
            .into_iter()
            .find(|w| w.permutation() == target)
            .expect("six canonical words cover the group")
    }
}

/// Word action on the matrix itself.
pub fn s3_value(m: &UpperUnitriangular, word: &S3Word) -> Result<UpperUnitriangular> {
    jacobi_to_matrix(&word.apply(&matrix_to_jacobi(m)?))
}

fn signed_family_sum(
    ev: &DilogEval,
    c: &JacobiCoords,
    family: YFamily,
    word: &S3Word,
) -> Result<BigFloat> {
    let image = jacobi_to_matrix(&word.apply(c))?;
    dilog_sum(ev, image.matrix(), family, word.sign() < 0)
}

/// The sign-twisted form: one word per family, the four sums
/// `Σ l(Y_fam(s(M))^sgn(s))` agree within `tol`.
pub fn verify_s3_form(
    ev: &DilogEval,
    m: &UpperUnitriangular,
    words: &[S3Word; 4],
    tol: &BigFloat,
) -> Result<IdentityReport> {
    let c = matrix_to_jacobi(m)?;
    let mut values = Vec::with_capacity(4);
    for (family, word) in YFamily::ALL.iter().zip(words) {
        values.push(signed_family_sum(ev, &c, *family, word)?);
    }
    let mut report = IdentityReport::new(m.n());
    report.push(IdentityCheck::new("s3-form", spread(&values), tol));
    Ok(report)
}

/// Exhaustive form: all six words against all four families give 24
/// sums; their joint agreement covers every word assignment, since each
/// sum depends on one word only.
pub fn verify_s3_exhaustive(
    ev: &DilogEval,
    m: &UpperUnitriangular,
    tol: &BigFloat,
) -> Result<IdentityReport> {
    let c = matrix_to_jacobi(m)?;
    let mut values = Vec::with_capacity(24);
    for word in S3Word::all_elements() {
        for family in YFamily::ALL {
            values.push(signed_family_sum(ev, &c, family, &word)?);
        }
    }
    let mut report = IdentityReport::new(m.n());
    report.push(IdentityCheck::new("s3-exhaustive", spread(&values), tol));
    Ok(report)
}

/// The chain on invertible triangular matrices: `G`, its two
/// flag-relabeling images, and the exact scaling invariance
/// `Y(Λ1 G Λ2) = Y(G)` that underpins it.
pub fn verify_b_version(
    ev: &DilogEval,
    g: &SquareMatrix<Rational>,
    lambda1: &DiagonalMatrix,
    lambda2: &DiagonalMatrix,
    tol: &BigFloat,
) -> Result<IdentityReport> {
    let n = g.n();
    let gc = check_g(g)?;
    let gh = hat_g(g)?;
    let mut values = Vec::with_capacity(12);
    for family in YFamily::ALL {
        values.push(dilog_sum(ev, &gc, family, false)?);
        values.push(dilog_sum(ev, g, family, true)?);
        values.push(dilog_sum(ev, &gh, family, false)?);
    }
    let mut report = IdentityReport::new(n);
    report.push(IdentityCheck::new("b-chain", spread(&values), tol));

    // exact scaling invariance of every Y-value
    let scaled = &(lambda1.matrix() * g) * lambda2.matrix();
    let mut exact = true;
    for family in YFamily::ALL {
        for t in tetrahedron(n) {
            if y_value(&scaled, family, t)? != y_value(g, family, t)? {
                exact = false;
            }
        }
    }
    report.push(IdentityCheck::new(
        "b-scaling",
        if exact { BigFloat::zero() } else { BigFloat::one() },
        tol,
    ));
    Ok(report)
}
