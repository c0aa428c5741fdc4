//! Exact scalar type and its textual forms.
//!
//! All matrix algebra in this crate runs over [`Rational`], an
//! arbitrary-precision fraction that is renormalized (positive
//! denominator, reduced to lowest terms) after every operation.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Rational = num_rational::Ratio<BigInt>;

/// Shorthand for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or `"p"` with optional sign; `q` must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {num_s:?}")))?;
    let den: BigInt = match den_s {
        Some(q) => q
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {q:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical form `"p/q"` with `q > 0`, denominator always written
/// (so `3` prints as `"3/1"`). Used wherever byte-stable output matters.
pub fn format_expanded(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// True iff strictly positive.
pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 4/-6 ").unwrap(), rat(-2, 3));
        assert_eq!(format_expanded(&int(3)), "3/1");
        assert_eq!(format_expanded(&rat(-4, 6)), "-2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn normalization_invariants() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom() > &BigInt::from(0));
    }
}
