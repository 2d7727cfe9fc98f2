//! Exact rational scalars used for series coefficients.
//!
//! Coefficients are arbitrary-precision rationals ([`num_rational::BigRational`]).
//! Nothing in this crate ever rounds: a coefficient is either exactly an
//! integer or exactly a fraction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Rat = BigRational;

/// The rational `n/1`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses a rational literal: either an integer (`-24`) or a fraction
/// (`65/756`). Rejects empty input, a zero denominator, and anything with
/// stray characters, without panicking.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse(format!("invalid rational literal {s:?}: {msg}"));
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| bad("numerator is not an integer"))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| bad("denominator is not an integer"))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(bad("denominator is zero"));
    }
    Ok(Rat::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rat("-24").unwrap(), rat_int(-24));
        assert_eq!(parse_rat("65/756").unwrap(), rat(65, 756));
        assert_eq!(parse_rat(" 3/6 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-6/-4").unwrap(), rat(3, 2));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "/", "1/", "/2", "1/0", "0/0", "a", "1.5", "1/2/3", "2^3"] {
            assert!(parse_rat(bad).is_err(), "should reject {bad:?}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1", "-24", "65/756", "-691/2730"] {
            assert_eq!(parse_rat(s).unwrap().to_string(), s);
        }
    }
}
