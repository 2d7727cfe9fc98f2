//! Exact truncated formal power series in one variable `q`.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `q^0, q^1, ..., q^N` as exact rationals. All arithmetic is performed
//! exactly and truncated at `q^N`; there is no floating point anywhere.
//!
//! The truncation order is part of the value. Binary operations require both
//! operands to carry the *same* order and fail with
//! [`Error::OrderMismatch`](crate::Error::OrderMismatch) otherwise — mixing
//! orders silently is almost always a bug in this domain, so the caller must
//! [`truncate`](TruncatedSeries::truncate) explicitly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{parse_rat, Rat};

/// A formal power series truncated at `q^order`, with exact rational
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    /// `coeffs[n]` is the coefficient of `q^n`; `coeffs.len() == order + 1`.
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Rat::one())
    }

    /// The single term `c * q^exponent`. An exponent beyond the truncation
    /// order yields the zero series.
    pub fn monomial(order: usize, exponent: usize, c: Rat) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = c;
        }
        s
    }

    /// Builds a series from explicit coefficients of `q^0..=q^N`,
    /// where `N = coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        TruncatedSeries {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    /// Convenience constructor from machine integers.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| crate::rational::rat_int(c)).collect())
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The coefficient of `q^n`. Panics if `n` exceeds the order; use
    /// [`try_coeff`](Self::try_coeff) when `n` is not known to be in range.
    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    /// The coefficient of `q^n`, or `None` beyond the truncation order.
    pub fn try_coeff(&self, n: usize) -> Option<&Rat> {
        self.coeffs.get(n)
    }

    /// All coefficients, `q^0` first.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The coefficient of `q^n` as a big integer.
    ///
    /// Panics if the coefficient is not an integer; use only on series known
    /// to be integral (partition-counting series and friends).
    pub fn integer_coeff(&self, n: usize) -> BigInt {
        let c = &self.coeffs[n];
        assert!(
            c.is_integer(),
            "coefficient of q^{n} is not an integer: {c}"
        );
        c.to_integer()
    }

    /// True if every stored coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The smallest exponent with a nonzero coefficient, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    /// Asserts that every coefficient is an integer, panicking with `context`
    /// otherwise. Integral constructors call this: a fractional coefficient
    /// in a counting series means a bug, not a user error.
    pub(crate) fn expect_integral(self, context: &str) -> Self {
        for (n, c) in self.coeffs.iter().enumerate() {
            assert!(
                c.is_integer(),
                "{context}: coefficient of q^{n} is not an integer ({c})"
            );
        }
        self
    }

    fn check_orders(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        } else {
            Ok(())
        }
    }

    /// Exact sum. Fails on mismatched truncation orders.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_orders(other)?;
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Exact difference. Fails on mismatched truncation orders.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_orders(other)?;
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplies every coefficient by the exact scalar `c`.
    pub fn scale(&self, c: &Rat) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&crate::rational::rat_int(c))
    }

    /// Exact truncated product (schoolbook convolution; zero coefficients
    /// are skipped, which makes products with sparse series cheap).
    /// Fails on mismatched truncation orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_orders(other)?;
        let n = self.order;
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries {
            order: n,
            coeffs: out,
        })
    }

    /// `self^e` by repeated squaring; `e == 0` gives the constant series `1`.
    pub fn pow(&self, e: u64) -> Self {
        let mut result = Self::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same order by construction");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order by construction");
            }
        }
        result
    }

    /// Exact multiplicative inverse. Fails if the constant term is zero.
    pub fn invert(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order;
        let a0_inv = self.coeffs[0].recip();
        let mut out = vec![Rat::zero(); n + 1];
        out[0] = a0_inv.clone();
        for m in 1..=n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() && !out[m - k].is_zero() {
                    acc += &self.coeffs[k] * &out[m - k];
                }
            }
            if !acc.is_zero() {
                out[m] = -(acc * &a0_inv);
            }
        }
        Ok(TruncatedSeries {
            order: n,
            coeffs: out,
        })
    }

    /// The substitution `q -> q^s`, keeping the same truncation order: the
    /// coefficient of `q^n` becomes the coefficient of `q^{s n}`, and input
    /// coefficients beyond `order / s` are dropped. Requires `s >= 1`.
    pub fn substitute_power(&self, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument(
                "substitution exponent must be at least 1".into(),
            ));
        }
        let mut out = Self::zero(self.order);
        for (n, c) in self.coeffs.iter().enumerate() {
            match n.checked_mul(s) {
                Some(e) if e <= self.order => out.coeffs[e] = c.clone(),
                _ => break,
            }
        }
        Ok(out)
    }

    /// Like [`TruncatedSeries::substitute_power`], but the result is emitted
    /// at an independently chosen truncation order. This is exact whenever
    /// `self` carries every coefficient the target range can see, i.e.
    /// `floor(order / s) <= self.order()`; otherwise an order-mismatch error
    /// is returned. It lets `f(q^s)` be built from `f` computed only up to
    /// `order / s` instead of all the way up to `order`.
    pub fn substitute_power_to(&self, s: usize, order: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument(
                "substitution exponent must be at least 1".into(),
            ));
        }
        if order / s > self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: order / s,
            });
        }
        let mut out = Self::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            match n.checked_mul(s) {
                Some(e) if e <= order => out.coeffs[e] = c.clone(),
                _ => break,
            }
        }
        Ok(out)
    }

    /// Multiplication by `q^d` at fixed truncation order: coefficients shift
    /// up by `d` and the top `d` coefficients fall off.
    pub fn shift_up(&self, d: usize) -> Self {
        let mut out = Self::zero(self.order);
        for n in d..=self.order {
            out.coeffs[n] = self.coeffs[n - d].clone();
        }
        out
    }

    /// Explicitly reduces the truncation order (the only sanctioned way to
    /// make orders match). Fails if `new_order` exceeds the current order.
    pub fn truncate(&self, new_order: usize) -> Result<Self> {
        if new_order > self.order {
            return Err(Error::InvalidArgument(format!(
                "cannot truncate a series of order {} to the larger order {}",
                self.order, new_order
            )));
        }
        Ok(TruncatedSeries {
            order: new_order,
            coeffs: self.coeffs[..=new_order].to_vec(),
        })
    }

    /// In-place multiplication by the sparse factor `1 - q^e` (`e >= 1`).
    /// This costs O(order) and is the workhorse behind all Pochhammer
    /// products.
    pub(crate) fn mul_one_minus_q_pow(&mut self, e: usize) {
        debug_assert!(e >= 1);
        for n in (e..=self.order).rev() {
            let prev = self.coeffs[n - e].clone();
            self.coeffs[n] -= prev;
        }
    }

    /// In-place division by the sparse factor `1 - q^e` (`e >= 1`), i.e.
    /// multiplication by the geometric series `1 + q^e + q^{2e} + ...`.
    pub(crate) fn div_one_minus_q_pow(&mut self, e: usize) {
        debug_assert!(e >= 1);
        for n in e..=self.order {
            let prev = self.coeffs[n - e].clone();
            self.coeffs[n] += prev;
        }
    }

    /// Serializes to the documented JSON form
    /// `{"order": N, "coeffs": ["c0", "c1", ...]}` with each coefficient as
    /// an exact decimal string (`"num/den"`, or `"num"` for integers).
    /// Parsing the emitted string with [`from_json`](Self::from_json) and
    /// re-serializing reproduces it byte for byte.
    pub fn to_json(&self) -> String {
        let repr = SeriesRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(Rat::to_string).collect(),
        };
        serde_json::to_string(&repr).expect("series serialization cannot fail")
    }

    /// Parses the JSON form emitted by [`to_json`](Self::to_json).
    pub fn from_json(s: &str) -> Result<Self> {
        let repr: SeriesRepr =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("series JSON: {e}")))?;
        let expected = repr
            .order
            .checked_add(1)
            .ok_or_else(|| Error::Parse("series JSON: order is out of range".into()))?;
        if repr.coeffs.len() != expected {
            return Err(Error::Parse(format!(
                "series JSON: order {} requires {} coefficients, found {}",
                repr.order,
                expected,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rat(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            order: repr.order,
            coeffs,
        })
    }

    /// Serializes as CSV with the documented header `n,coefficient`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coefficient\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl fmt::Display for TruncatedSeries {
    /// Human-readable form, e.g. `1 - q^2 - q^3 + q^5 + O(q^6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            wrote = true;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}*q^{n}")?,
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}
