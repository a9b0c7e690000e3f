//! Exact rational scalars.
//!
//! Every number in this crate is a `Rat`: an arbitrary-precision rational
//! kept in lowest terms with a positive denominator. The only operation
//! beyond ordinary field arithmetic is parsing from the string form used
//! in all JSON payloads: an optional sign, an integer, and an optional
//! `/denominator` part, e.g. `"-3/7"`, `"42"`, `"0"`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rat = num_rational::BigRational;

/// Error produced when a string is not a valid exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct RatParseError {
    pub input: String,
    pub reason: &'static str,
}

/// Builds a rational from a machine integer.
pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Builds the rational `num/den`. Panics if `den == 0`; callers pass
/// literal nonzero denominators.
pub fn rat_frac(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the exact-rational grammar: `[+-]? digits ( '/' digits )?`.
///
/// The denominator, when present, must be a positive integer; `"1/0"` is
/// rejected rather than passed to the underlying constructor. A Unicode
/// minus sign (U+2212) is accepted as a synonym for `-`.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let err = |reason: &'static str| RatParseError {
        input: s.to_owned(),
        reason,
    };
    let normalized = s.trim().replace('\u{2212}', "-");
    if normalized.is_empty() {
        return Err(err("empty string"));
    }
    let (num_str, den_str) = match normalized.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (normalized.as_str(), None),
    };
    let num = parse_signed_integer(num_str).ok_or_else(|| err("malformed numerator"))?;
    let den = match den_str {
        None => BigInt::from(1),
        Some(d) => {
            let den = parse_unsigned_integer(d).ok_or_else(|| err("malformed denominator"))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            den
        }
    };
    Ok(Rat::new(num, den))
}

fn parse_signed_integer(s: &str) -> Option<BigInt> {
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let magnitude = parse_unsigned_integer(digits)?;
    Some(BigInt::from(sign) * magnitude)
}

fn parse_unsigned_integer(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Renders a rational in the same grammar `parse_rat` accepts:
/// `"n"` for integers, `"n/d"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}
