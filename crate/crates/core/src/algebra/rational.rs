//! Exact rationals.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so structural equality is numeric equality.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let t = text.trim();
    let bad = || AlgebraError::Parse {
        input: text.to_string(),
        reason: "expected an integer or p/q rational literal".into(),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(AlgebraError::Parse {
            input: text.to_string(),
            reason: "zero denominator".into(),
        });
    }
    Ok(Rational::new(num, den))
}

/// Canonical wire string: `"p"` for integers, `"p/q"` otherwise.
pub fn to_wire(q: &Rational) -> String {
    q.to_string()
}

/// Sign as -1, 0 or 1.
pub fn sign_of(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if !q.denom().is_one() {
        return None;
    }
    i64::try_from(q.numer().clone()).ok()
}
