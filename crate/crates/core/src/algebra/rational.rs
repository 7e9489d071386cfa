use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number. `num_rational` keeps the value reduced with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for building small rationals in tables and tests.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `int ('/' posint)?` with an optional leading sign. Surrounding
/// whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: format!("{message} in rational `{text}`"),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let digits = num_str.strip_prefix(['-', '+']).unwrap_or(num_str);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(0, "expected an integer"));
    }
    let num: BigInt = num_str
        .trim_start_matches('+')
        .parse()
        .map_err(|_| err(0, "expected an integer"))?;
    let den = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(num_str.len() + 1, "expected a positive integer denominator"));
            }
            let den: BigInt = d.parse().map_err(|_| err(num_str.len() + 1, "bad denominator"))?;
            if den.is_zero() {
                return Err(err(num_str.len() + 1, "zero denominator"));
            }
            den
        }
    };
    Ok(Rational::new(num, den))
}

/// Canonical text form: `n` or `n/d`, sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn abs(r: &Rational) -> Rational {
    r.abs()
}
