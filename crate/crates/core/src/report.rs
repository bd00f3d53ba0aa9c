//! Formatting helpers for exact values in machine-readable output.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serializer;

/// `num/den` with the fraction in lowest terms, e.g. `1/2`, `0/1`, `1/1`.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a/b` or a bare integer into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_positive() || d.is_negative() {
                Some(BigRational::new(n, d))
            } else {
                None
            }
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Decimal approximation for human-readable output only.
pub fn approx(r: &BigRational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // very large operands: scale both down by the same power of two
        let shift = r.denom().bits().saturating_sub(900);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

pub(crate) fn big_as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(v))
}

pub(crate) fn rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational_string))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_in_lowest_terms() {
        let r = BigRational::new(BigInt::from(10), BigInt::from(16));
        assert_eq!(rational_string(&r), "5/8");
        assert_eq!(rational_string(&BigRational::from_integer(1.into())), "1/1");
        assert_eq!(rational_string(&BigRational::from_integer(0.into())), "0/1");
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("1/10"), Some(BigRational::new(1.into(), 10.into())));
        assert_eq!(parse_rational("3"), Some(BigRational::from_integer(3.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn approximates_huge_fractions() {
        let one = BigInt::from(1);
        let r = BigRational::new((&one << 2000usize) + &one, &one << 2002usize);
        assert!((approx(&r) - 0.25).abs() < 1e-12);
    }
}
