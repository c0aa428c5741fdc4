//! The Rogers dilogarithm and the dilogarithm sums attached to 4x4
//! totally positive matrices.
//!
//! The normalization in use is
//!
//! ```text
//! l(x) = 6/pi^2 * L(x/(1+x)),   L(u) = Li2(u) + (1/2) ln u ln(1-u)
//! ```
//!
//! for `x > 0`, which satisfies `l(x) + l(1/x) = 1` and the five-term
//! pentagon relation. Evaluation reduces the series argument below 1/2
//! through the reflection `Li2(u) = pi^2/6 - ln u ln(1-u) - Li2(1-u)`;
//! both `u = x/(1+x)` and `1-u = 1/(1+x)` are formed directly from `x`,
//! so no cancellation occurs near either endpoint. An evaluator caches
//! pi and the normalization constant once per precision.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bigfloat::{max_abs, pi, BigFloat};
use crate::error::{Error, Result};
use crate::index::tetrahedron;
use crate::jacobi::JacobiCoords;
use crate::matrix::{is_totally_positive, SquareMatrix};
use crate::rational::Rational;
use crate::yvars::{y_value, YFamily};

/// Dilogarithm evaluator for one working precision.
#[derive(Debug, Clone)]
pub struct DilogEval {
    precision: u32,
    work: u32,
    pi2_over_6: BigFloat,
    six_over_pi2: BigFloat,
}

impl DilogEval {
    pub fn new(precision: u32) -> Result<Self> {
        if precision < 16 {
            return Err(Error::Domain("precision below 16 bits".to_string()));
        }
        let work = precision + 32;
        let pi_w = pi(work);
        let pi2 = pi_w.clone() * pi_w;
        let six = BigFloat::from_i64(6).with_precision(work);
        let pi2_over_6 = pi2.clone() / six.clone();
        let six_over_pi2 = six / pi2;
        Ok(DilogEval { precision, work, pi2_over_6, six_over_pi2 })
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Default residual tolerance `2^(-precision/2)`: half the bits are
    /// budgeted for truncation and rounding accumulated across a sum.
    pub fn default_tolerance(&self) -> BigFloat {
        BigFloat::pow2(-((self.precision / 2) as i64))
    }

    /// `Li2(t) = sum t^k / k^2` for `0 <= t <= 1/2`.
    fn li2_series(&self, t: &BigFloat) -> BigFloat {
        let wp = self.work;
        let mut sum = t.clone();
        let mut pow = t.clone();
        let mut k: i64 = 2;
        loop {
            pow = (pow * t.clone()).with_precision(wp);
            let term = pow.clone().div_wp(&BigFloat::from_i64(k * k), wp);
            if term.is_zero() || term.mag_exp() < -(wp as i64 + 2) {
                break;
            }
            sum = (sum + term).with_precision(wp);
            k += 1;
        }
        sum
    }

    /// `6/pi^2 L(u)` from the exact pair `u = x/(1+x)`, `v = 1/(1+x)`.
    /// `reflect` selects the branch; callers pass `u > 1/2`.
    fn rogers_from_uv(&self, u: &BigFloat, v: &BigFloat, reflect: bool) -> Result<BigFloat> {
        let log_term = (u.ln()? * v.ln()?).mul_pow2(-1);
        let l = if reflect {
            self.pi2_over_6.clone() - self.li2_series(v) - log_term
        } else {
            self.li2_series(u) + log_term
        };
        Ok((self.six_over_pi2.clone() * l).with_precision(self.precision))
    }

    /// Rogers dilogarithm of a positive float.
    pub fn rogers_l(&self, x: &BigFloat) -> Result<BigFloat> {
        if !x.is_positive() {
            return Err(Error::Domain("rogers_l needs x > 0".to_string()));
        }
        let x = x.with_precision(self.work);
        let one = BigFloat::one().with_precision(self.work);
        let denom = one.clone() + x.clone();
        let u = x.div_wp(&denom, self.work);
        let v = one.div_wp(&denom, self.work);
        // u > 1/2 iff x > 1
        self.rogers_from_uv(&u, &v, u > v)
    }

    /// Rogers dilogarithm of a positive rational; the series arguments
    /// are formed exactly before conversion.
    pub fn rogers_l_rational(&self, x: &Rational) -> Result<BigFloat> {
        if !x.is_positive() {
            return Err(Error::Domain("rogers_l needs x > 0".to_string()));
        }
        let one_plus = Rational::one() + x;
        let u = BigFloat::from_rational(&(x / &one_plus), self.work);
        let v = BigFloat::from_rational(&(Rational::one() / one_plus), self.work);
        self.rogers_from_uv(&u, &v, u > v)
    }

    /// The totally symmetric four-term combination
    /// `F(x,y,z) = l(x/(1+y)) + l((1+x+y)z/((1+x)(1+y)))
    ///           + l(xy/((1+x+y)(1+z))) + l(y/(1+x))`.
    pub fn f_xyz(&self, x: &BigFloat, y: &BigFloat, z: &BigFloat) -> Result<BigFloat> {
        for v in [x, y, z] {
            if !v.is_positive() {
                return Err(Error::Domain("f_xyz needs positive arguments".to_string()));
            }
        }
        let wp = self.work;
        let one = BigFloat::one().with_precision(wp);
        let (x, y, z) = (x.with_precision(wp), y.with_precision(wp), z.with_precision(wp));
        let opx = one.clone() + x.clone();
        let opy = one.clone() + y.clone();
        let opz = one.clone() + z.clone();
        let opxy = one.clone() + x.clone() + y.clone();
        let t1 = x.clone().div_wp(&opy, wp);
        let t2 = (opxy.clone() * z).div_wp(&(opx.clone() * opy), wp);
        let t3 = (x * y.clone()).div_wp(&(opxy * opz), wp);
        let t4 = y.div_wp(&opx, wp);
        let mut acc = BigFloat::zero();
        for t in [t1, t2, t3, t4] {
            acc = acc + self.rogers_l(&t)?;
        }
        Ok(acc.with_precision(self.precision))
    }

    /// `F` on exact rational arguments.
    pub fn f_xyz_rational(&self, x: &Rational, y: &Rational, z: &Rational) -> Result<BigFloat> {
        for v in [x, y, z] {
            if !v.is_positive() {
                return Err(Error::Domain("f_xyz needs positive arguments".to_string()));
            }
        }
        let one = Rational::one();
        let opx = one.clone() + x;
        let opy = one.clone() + y;
        let opz = one.clone() + z;
        let opxy = one.clone() + x + y;
        let args = [
            x / &opy,
            &opxy * z / (&opx * &opy),
            x * y / (&opxy * &opz),
            y / &opx,
        ];
        let mut acc = BigFloat::zero();
        for a in &args {
            acc = acc + self.rogers_l_rational(a)?;
        }
        Ok(acc.with_precision(self.precision))
    }

    /// Four-dilogarithm functional on a 4x4 totally positive matrix: the
    /// sum of `l` over the lower Y-values of the four triples.
    pub fn script_l(&self, g: &SquareMatrix<Rational>) -> Result<BigFloat> {
        if g.n() != 4 {
            return Err(Error::Dimension("script_l is defined on 4x4 matrices".to_string()));
        }
        if !is_totally_positive(g)? {
            return Err(Error::NotTotallyPositive(
                "script_l needs a totally positive matrix".to_string(),
            ));
        }
        let mut acc = BigFloat::zero();
        for t in tetrahedron(4) {
            let y = y_value(g, YFamily::Lower, t)?;
            acc = acc + self.rogers_l_rational(&y)?;
        }
        Ok(acc.with_precision(self.precision))
    }
}

/// Solution of the three-ratio substitution for n = 4 coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Xyz {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Xyz {
    pub fn all_positive(&self) -> bool {
        self.x.is_positive() && self.y.is_positive() && self.z.is_positive()
    }

    pub fn all_below_minus_one(&self) -> bool {
        let m1 = -Rational::one();
        self.x < m1 && self.y < m1 && self.z < m1
    }
}

/// Solves the linear system
///
/// ```text
/// z/(1+y) = x12/x23,   y/(1+x) = x13/x24,   x/(1+z) = x23/x34
/// ```
///
/// which is regular iff `delta = x24 x34 - x12 x13` is nonzero; returns
/// `None` on the degenerate slice. Any solution has all three values
/// positive or all three below -1.
pub fn solve_xyz(c: &JacobiCoords) -> Result<Option<Xyz>> {
    if c.n() != 4 {
        return Err(Error::Dimension("the substitution is defined for n = 4".to_string()));
    }
    let (x12, x13, x23) = (c.get(1, 2), c.get(1, 3), c.get(2, 3));
    let (x24, x34) = (c.get(2, 4), c.get(3, 4));
    let delta = x24 * x34 - x12 * x13;
    if delta.is_zero() {
        return Ok(None);
    }
    let one = Rational::one();
    let x = (x12 * x13 + x12 * x24 + x23 * x24) / &delta;
    let y = x13 / x24 * (&one + &x);
    let z = x12 / x23 * (&one + &y);
    debug_assert_eq!(&x / (one + &z), x23 / x34);
    let out = Xyz { x, y, z };
    debug_assert!(out.all_positive() || out.all_below_minus_one());
    Ok(Some(out))
}

/// Max over pairwise differences of a list of values (its spread).
pub fn spread(values: &[BigFloat]) -> BigFloat {
    let mut diffs = Vec::new();
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            diffs.push(a.clone() - b.clone());
        }
    }
    max_abs(diffs.iter())
}
