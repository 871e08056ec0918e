//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Coefficient field of every algebra in this crate.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p`, `+p`, `p/q` (no decimals, no whitespace, q > 0 after sign handling).
pub fn parse_rational(text: &str) -> Result<Scalar, AlgebraError> {
    let bad = || AlgebraError::MalformedRational(text.to_string());
    let (negative, body) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.is_none_or(digits) {
        return Err(bad());
    }
    let mut numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    if negative {
        numer = -numer;
    }
    Ok(Scalar::new(numer, denom))
}

/// `p` for integers, `p/q` otherwise. Re-parses with [`parse_rational`].
pub fn format_rational(q: &Scalar) -> String {
    q.to_string()
}

pub fn abs(q: &Scalar) -> Scalar {
    q.abs()
}

/// Binomial coefficient C(n, k) as an exact scalar.
pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Scalar::from_integer(acc)
}
