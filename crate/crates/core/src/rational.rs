//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `-p` or `p/q`. Returns `None` for anything else, including a
/// zero denominator.
pub fn parse(token: &str) -> Option<Rational> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats as `p` or `p/q`.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering with `digits` significant digits, for human output only.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    match value.to_f64() {
        Some(0.0) => "0".to_string(),
        Some(x) => {
            let magnitude = x.abs().log10().floor() as i64;
            let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
            let s = format!("{x:.decimals$}");
            if s.contains('.') {
                s.trim_end_matches('0').trim_end_matches('.').to_string()
            } else {
                s
            }
        }
        None => value.to_string(),
    }
}

pub fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}
