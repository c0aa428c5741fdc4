//! Arbitrary-precision radix-2 floating point.
//!
//! A value is `mantissa * 2^exponent` with the mantissa stored as an odd
//! (or zero) big integer, so representations are canonical and equality
//! is structural. Every arithmetic operation rounds to nearest, ties to
//! even, at the larger of the operand precisions. Values built from
//! machine integers carry precision 0, meaning "exact so far": they
//! adopt the partner's precision on first contact with a rounded value.
//!
//! There are no NaNs and no infinities anywhere in this crate; domain
//! violations surface as [`Error`] values instead.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::DEFAULT_PRECISION;

const LOG10_2: f64 = 0.301_029_995_663_981_2;

/// `round` for finite inputs; avoids the std-only method.
fn round_i64(x: f64) -> i64 {
    if x >= 0.0 {
        (x + 0.5) as i64
    } else {
        -((-x + 0.5) as i64)
    }
}

/// `2^e` for |e| < 1023, assembled from bits.
fn pow2_f64(e: i64) -> f64 {
    let e = e.clamp(-1022, 1023);
    f64::from_bits(((e + 1023) as u64) << 52)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { mantissa: BigInt::zero(), exponent: 0, precision: 0 }
    }

    pub fn one() -> Self {
        BigFloat { mantissa: BigInt::one(), exponent: 0, precision: 0 }
    }

    /// Exact small integer (precision 0: no rounding has happened yet).
    pub fn from_i64(v: i64) -> Self {
        normalize(BigInt::from(v), 0, 0, false)
    }

    /// Rounds `r` to `precision` significand bits.
    pub fn from_rational(r: &Rational, precision: u32) -> Self {
        div_big(r.numer().clone(), r.denom().clone(), 0, precision)
    }

    /// Parses a decimal literal: `-1.25e-3`, `0.5`, `7`, `1e-25`.
    pub fn from_decimal_str(s: &str, precision: u32) -> Result<Self> {
        let s = s.trim();
        let (mant_s, exp_s) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, Some(e)),
            None => (s, None),
        };
        let exp: i64 = match exp_s {
            Some(e) => e.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?,
            None => 0,
        };
        let (int_s, frac_s) = match mant_s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mant_s, ""),
        };
        if int_s.is_empty() && frac_s.is_empty() {
            return Err(Error::Parse(format!("empty mantissa in {s:?}")));
        }
        let joined = format!("{int_s}{frac_s}");
        let digits: BigInt = joined
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let scale = exp - frac_s.len() as i64;
        let ten = BigInt::from(10);
        let r = if scale >= 0 {
            Rational::from_integer(digits * ten.pow(scale as u32))
        } else {
            Rational::new(digits, ten.pow((-scale) as u32))
        };
        Ok(Self::from_rational(&r, precision))
    }

    /// Exact power of two.
    pub fn pow2(k: i64) -> Self {
        BigFloat { mantissa: BigInt::one(), exponent: k, precision: 0 }
    }

    /// Exact value as a rational; never lossy.
    pub fn to_rational(&self) -> Rational {
        let two = BigInt::from(2);
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa * two.pow(self.exponent as u32))
        } else {
            Rational::new(self.mantissa.clone(), two.pow((-self.exponent) as u32))
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Re-rounds to `precision` bits (or just retags when already short).
    pub fn with_precision(&self, precision: u32) -> Self {
        normalize(self.mantissa.clone(), self.exponent, precision, false)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mantissa: self.mantissa.abs(), ..self.clone() }
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { exponent: self.exponent + k, ..self.clone() }
    }

    /// Position of the leading bit: the value lies in
    /// `[2^(mag_exp-1), 2^mag_exp)`. `i64::MIN` for zero.
    pub fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.mantissa.bits() as i64 + self.exponent
        }
    }

    fn cmp_value(&self, other: &Self) -> core::cmp::Ordering {
        use core::cmp::Ordering;
        match (self.mantissa.sign(), other.mantissa.sign()) {
            (Sign::Minus, Sign::NoSign | Sign::Plus) => return Ordering::Less,
            (Sign::NoSign, Sign::Plus) => return Ordering::Less,
            (Sign::Plus, Sign::NoSign | Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        // same nonzero sign: align exponents and compare exactly
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &other.mantissa << (other.exponent - e) as u64;
        a.cmp(&b)
    }

    /// Natural logarithm; requires a strictly positive value.
    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain("ln of a non-positive value".to_string()));
        }
        let prec = if self.precision == 0 { DEFAULT_PRECISION } else { self.precision };
        let wp = prec + 32;
        // self = f * 2^k with f in [1, 2)
        let b = self.mantissa.bits() as i64;
        let mut k = self.exponent + b - 1;
        let mut f = BigFloat { mantissa: self.mantissa.clone(), exponent: -(b - 1), precision: wp };
        // pull f into [3/4, 3/2) so t below stays small
        if f.cmp_value(&BigFloat { mantissa: BigInt::from(3), exponent: -1, precision: 0 })
            != core::cmp::Ordering::Less
        {
            f = f.mul_pow2(-1);
            k += 1;
        }
        let one = BigFloat::one().with_precision(wp);
        let t = round_binop(&(f.clone() - one.clone()), wp).div_wp(&(f + one), wp);
        let sigma = atanh_series(&t, wp);
        let ln = BigFloat::from_i64(k) * ln2(wp) + sigma.mul_pow2(1);
        Ok(normalize(ln.mantissa, ln.exponent, prec, false))
    }

    /// Exponential. Argument is range-reduced by halving, so any
    /// magnitude that fits the exponent range is fine.
    pub fn exp(&self) -> Self {
        let prec = if self.precision == 0 { DEFAULT_PRECISION } else { self.precision };
        if self.is_zero() {
            return BigFloat::one().with_precision(prec);
        }
        // halve until |r| <= 1/4
        let reductions = (self.mag_exp() + 2).max(0) as u32;
        let wp = prec + 32 + 2 * reductions;
        let r = self.with_precision(wp).mul_pow2(-(reductions as i64));
        let mut sum = BigFloat::one().with_precision(wp);
        let mut term = BigFloat::one().with_precision(wp);
        let mut j: i64 = 1;
        loop {
            term = round_binop(&(term * r.clone()), wp).div_wp(&BigFloat::from_i64(j), wp);
            if term.is_zero() || term.mag_exp() < -(wp as i64 + 2) {
                break;
            }
            sum = round_binop(&(sum + term.clone()), wp);
            j += 1;
        }
        for _ in 0..reductions {
            sum = round_binop(&(sum.clone() * sum), wp);
        }
        normalize(sum.mantissa, sum.exponent, prec, false)
    }

    /// Division at an explicit working precision.
    pub(crate) fn div_wp(&self, rhs: &Self, wp: u32) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        if self.is_zero() {
            return BigFloat { precision: wp, ..BigFloat::zero() };
        }
        div_big(
            self.mantissa.clone(),
            rhs.mantissa.clone(),
            self.exponent - rhs.exponent,
            wp,
        )
    }

    /// Scientific decimal form with `digits` significant digits, e.g.
    /// `"2.7756e-17"`. Exact zero prints as `"0"`.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let mag = self.mantissa.magnitude().clone();
        let ten = BigUint::from(10u32);
        // first estimate of the decimal exponent
        let mut d = round_i64((self.mag_exp() as f64 - 0.5) * LOG10_2);
        let (n, d) = loop {
            let k = digits as i64 - 1 - d;
            let mut num = mag.clone();
            let mut den = BigUint::one();
            if k >= 0 {
                num *= ten.pow(k as u32);
            } else {
                den *= ten.pow((-k) as u32);
            }
            if self.exponent >= 0 {
                num <<= self.exponent as u64;
            } else {
                den <<= (-self.exponent) as u64;
            }
            let n = (num * 2u32 + &den) / (den * 2u32); // round half up
            let lo = ten.pow(digits as u32 - 1);
            let hi = ten.pow(digits as u32);
            if n < lo {
                d -= 1;
            } else if n >= hi {
                d += 1;
            } else {
                break (n, d);
            }
        };
        let s = n.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        if digits == 1 {
            format!("{sign}{s}e{d}")
        } else {
            format!("{sign}{}.{}e{d}", &s[..1], &s[1..])
        }
    }

    /// Best-effort conversion for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let r = self.with_precision(60);
        let m = r.mantissa.to_f64().unwrap_or(0.0);
        m * pow2_f64(r.exponent)
    }
}

/// Rounds `m * 2^e` to `prec` significand bits (nearest, ties to even),
/// then strips trailing zero bits so representations are canonical.
/// `sticky` records dropped nonzero mass strictly below the given bits.
fn normalize(m: BigInt, mut e: i64, prec: u32, sticky: bool) -> BigFloat {
    if m.is_zero() {
        return BigFloat { mantissa: BigInt::zero(), exponent: 0, precision: prec };
    }
    let (sign, mut mag) = (m.sign(), m.magnitude().clone());
    if prec > 0 {
        let bits = mag.bits();
        if bits > prec as u64 {
            let shift = bits - prec as u64;
            let dropped = &mag & ((BigUint::one() << shift) - 1u32);
            mag >>= shift;
            e += shift as i64;
            let half = BigUint::one() << (shift - 1);
            let round_up = dropped > half
                || (dropped == half && (sticky || mag.is_odd()));
            if round_up {
                mag += 1u32;
                if mag.bits() > prec as u64 {
                    mag >>= 1;
                    e += 1;
                }
            }
        }
    }
    let tz = mag.trailing_zeros().unwrap_or(0);
    if tz > 0 {
        mag >>= tz;
        e += tz as i64;
    }
    BigFloat { mantissa: BigInt::from_biguint(sign, mag), exponent: e, precision: prec }
}

/// Re-rounds an exact intermediate to a working precision.
fn round_binop(v: &BigFloat, wp: u32) -> BigFloat {
    normalize(v.mantissa.clone(), v.exponent, wp, false)
}

/// `(a / b) * 2^e0` rounded to `prec` bits. Signs ride along.
fn div_big(a: BigInt, b: BigInt, e0: i64, prec: u32) -> BigFloat {
    assert!(!b.is_zero(), "division by zero");
    if a.is_zero() {
        return BigFloat { mantissa: BigInt::zero(), exponent: 0, precision: prec };
    }
    let negative = a.is_negative() != b.is_negative();
    let (a, b) = (a.magnitude().clone(), b.magnitude().clone());
    let prec_eff = if prec == 0 { DEFAULT_PRECISION } else { prec };
    let gap = a.bits() as i64 - b.bits() as i64;
    let s = (prec_eff as i64 + 3 - gap).max(0) as u64;
    let (q, r) = (a << s).div_rem(&b);
    let mut q = BigInt::from(q);
    if negative {
        q = -q;
    }
    normalize(q, e0 - s as i64, prec_eff, !r.is_zero())
}

/// `atanh(t) = t + t^3/3 + t^5/5 + ...` for `|t| < 1/2`.
fn atanh_series(t: &BigFloat, wp: u32) -> BigFloat {
    let t2 = round_binop(&(t.clone() * t.clone()), wp);
    let mut sum = t.clone();
    let mut pow = t.clone();
    let mut k: i64 = 3;
    loop {
        pow = round_binop(&(pow * t2.clone()), wp);
        let term = pow.div_wp(&BigFloat::from_i64(k), wp);
        if term.is_zero() || term.mag_exp() < -(wp as i64 + 2) {
            break;
        }
        sum = round_binop(&(sum + term), wp);
        k += 2;
    }
    sum
}

/// `ln 2 = 2 atanh(1/3)` at `wp` bits.
pub(crate) fn ln2(wp: u32) -> BigFloat {
    let third = BigFloat::from_rational(&Rational::new(BigInt::one(), BigInt::from(3)), wp);
    atanh_series(&third, wp).mul_pow2(1)
}

/// Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`, evaluated on
/// scaled integers.
pub fn pi(prec: u32) -> BigFloat {
    let sb = prec as u64 + 32;
    let scale = BigInt::one() << sb;
    let v = 16 * atan_inv_scaled(&scale, 5) - 4 * atan_inv_scaled(&scale, 239);
    normalize(v, -(sb as i64), prec, true)
}

/// `atan(1/q) * scale`, truncated alternating series.
fn atan_inv_scaled(scale: &BigInt, q: u32) -> BigInt {
    let q2 = BigInt::from(q) * q;
    let mut pow = scale / q;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !pow.is_zero() {
        let term = &pow / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow /= &q2;
        k += 1;
    }
    sum
}

impl core::ops::Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mantissa: -self.mantissa, ..self }
    }
}

impl core::ops::Add for BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: BigFloat) -> BigFloat {
        let prec = self.precision.max(rhs.precision);
        if self.is_zero() {
            return normalize(rhs.mantissa, rhs.exponent, prec, false);
        }
        if rhs.is_zero() {
            return normalize(self.mantissa, self.exponent, prec, false);
        }
        let e = self.exponent.min(rhs.exponent);
        let a = self.mantissa << (self.exponent - e) as u64;
        let b = rhs.mantissa << (rhs.exponent - e) as u64;
        normalize(a + b, e, prec, false)
    }
}

impl core::ops::Sub for BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: BigFloat) -> BigFloat {
        self + (-rhs)
    }
}

impl core::ops::Mul for BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: BigFloat) -> BigFloat {
        let prec = self.precision.max(rhs.precision);
        normalize(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent, prec, false)
    }
}

impl core::ops::Div for BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: BigFloat) -> BigFloat {
        let prec = self.precision.max(rhs.precision);
        self.div_wp(&rhs, if prec == 0 { DEFAULT_PRECISION } else { prec })
    }
}

impl num_traits::Zero for BigFloat {
    fn zero() -> Self {
        BigFloat::zero()
    }
    fn is_zero(&self) -> bool {
        BigFloat::is_zero(self)
    }
}

impl num_traits::One for BigFloat {
    fn one() -> Self {
        BigFloat::one()
    }
    fn is_one(&self) -> bool {
        self.mantissa.is_one() && self.exponent == 0
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp_value(other))
    }
}

impl core::fmt::Display for BigFloat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let digits = (self.precision.max(20) as usize * 30103).div_ceil(100000) + 2;
        write!(f, "{}", self.to_sci(digits))
    }
}

/// Helper collecting values that tests and reports need: max of absolute
/// values.
pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a BigFloat>) -> BigFloat {
    let mut best = BigFloat::zero();
    for v in values {
        let a = v.abs();
        if a > best {
            best = a;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn close(a: &BigFloat, b: &BigFloat, tol_exp: i64) -> bool {
        (a.clone() - b.clone()).abs().mag_exp() < tol_exp
    }

    #[test]
    fn rational_round_trip() {
        let r = rat(355, 113);
        let f = BigFloat::from_rational(&r, 128);
        let back = f.to_rational();
        // within one ulp
        let err = (back - r).abs();
        assert!(err < rat(1, 1) / rat(2, 1).pow(126));
    }

    #[test]
    fn exact_integers_stay_exact() {
        let a = BigFloat::from_i64(6);
        let b = BigFloat::from_i64(10);
        assert_eq!((a.clone() * b.clone()).to_rational(), rat(60, 1));
        assert_eq!((a - b).to_rational(), rat(-4, 1));
    }

    #[test]
    fn canonical_representation_equality() {
        let a = BigFloat::from_rational(&rat(3, 4), 64);
        let b = BigFloat::from_rational(&rat(6, 8), 128);
        assert_eq!(a.mantissa, b.mantissa);
        assert_eq!(a.exponent, b.exponent);
    }

    #[test]
    fn ordering() {
        let a = BigFloat::from_rational(&rat(1, 3), 96);
        let b = BigFloat::from_rational(&rat(1, 2), 96);
        assert!(a < b);
        assert!(-b.clone() < a);
        assert!(BigFloat::zero() < a);
    }

    #[test]
    fn pi_against_reference() {
        // 40 decimal digits of pi
        let want = BigFloat::from_decimal_str(
            "3.141592653589793238462643383279502884197",
            140,
        )
        .unwrap();
        let got = pi(140);
        assert!(close(&got, &want, -130), "pi error too large: {got}");
    }

    #[test]
    fn ln_functional_checks() {
        let wp = 160;
        let e1 = BigFloat::from_rational(&rat(7, 2), wp);
        let e2 = BigFloat::from_rational(&rat(9, 5), wp);
        let lhs = (e1.clone() * e2.clone()).ln().unwrap();
        let rhs = e1.ln().unwrap() + e2.ln().unwrap();
        assert!(close(&lhs, &rhs, -(wp as i64 - 8)));
        // ln(1) = 0
        assert!(BigFloat::one().with_precision(wp).ln().unwrap().is_zero());
        // ln(2^10) = 10 ln 2
        let l = BigFloat::pow2(10).with_precision(wp).ln().unwrap();
        assert!(close(&l, &(BigFloat::from_i64(10) * ln2(wp)), -(wp as i64 - 8)));
        assert!(BigFloat::zero().ln().is_err());
        assert!((-BigFloat::one()).ln().is_err());
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = BigFloat::from_rational(&rat(13, 7), 128);
        let y = x.ln().unwrap().exp();
        assert!(close(&x, &y, -120));
        // tiny argument: exp(h) ~ 1 + h
        let h = BigFloat::from_decimal_str("1e-6", 128).unwrap();
        let e = h.exp();
        let lin = BigFloat::one() + h.clone();
        assert!((e - lin).abs().to_f64() < 1e-11);
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(BigFloat::zero().to_sci(5), "0");
        let v = BigFloat::from_decimal_str("1.25e-3", 96).unwrap();
        assert_eq!(v.to_sci(3), "1.25e-3");
        let v = BigFloat::from_i64(-31416);
        assert_eq!(v.to_sci(4), "-3.142e4");
        let one = BigFloat::one();
        assert_eq!(one.to_sci(1), "1e0");
    }

    #[test]
    fn decimal_parse_errors() {
        assert!(BigFloat::from_decimal_str("", 64).is_err());
        assert!(BigFloat::from_decimal_str("1e", 64).is_err());
        assert!(BigFloat::from_decimal_str("x", 64).is_err());
        let v = BigFloat::from_decimal_str("-0.5", 64).unwrap();
        assert_eq!(v.to_rational(), rat(-1, 2));
    }
}
