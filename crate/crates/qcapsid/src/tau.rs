//! Ramanujan's tau function by six independent routes, plus the
//! verification predicates that tie the routes together.
//!
//! The reference definition is the coefficient series of
//! `q prod_{n>=1} (1 - q^n)^24`. The two vector-partition routes recover
//! `tau(n)` from counting differences of the predefined families (the
//! differences vanish everywhere except at one position per `n`), and the
//! three arithmetic routes express the same series through Eisenstein
//! series and divisor-sum convolutions. All arithmetic is exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qseries::{eisenstein, eta24, phi_series};
use crate::rational::{rat, Rat};
use crate::series::TruncatedSeries;
use crate::vector_partitions::{predefined, VectorFamily};

/// Default ceiling on the internal truncation order of any computation
/// started through the convenience entry points ([`tau`], [`tau_with`]).
/// The vector-partition routes need internal orders 110 or 10 times the
/// target index, so they hit this ceiling much earlier than the direct
/// routes do. Raise the budget explicitly via [`tau_with_budget`] when you
/// really want a deeper computation.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// A strategy for computing the tau series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TauMethod {
    /// Coefficients of `q prod (1-q^n)^24` (the definition).
    Eta24,
    /// Counting difference of the vector families `A` and `B`; the
    /// difference lives on exponents that are multiples of 110.
    VectorMod110,
    /// Counting difference of the vector families `U`, `V` and `W` on
    /// exponents that are multiples of 10.
    VectorMod10,
    /// `(E_4^3 - E_6^2) / 1728`.
    EisensteinE4E6,
    /// `691 (E_12 - E_6^2) / 762048`.
    EisensteinE12,
    /// `(65/756) Phi_11 + (691/756) Phi_5 - (691/3) Phi_5^2` where
    /// `Phi_j = sum sigma_j(n) q^n`.
    DivisorSums,
}

impl TauMethod {
    /// Every method, in a stable order.
    pub const ALL: [TauMethod; 6] = [
        TauMethod::Eta24,
        TauMethod::VectorMod110,
        TauMethod::VectorMod10,
        TauMethod::EisensteinE4E6,
        TauMethod::EisensteinE12,
        TauMethod::DivisorSums,
    ];

    /// Stable machine-friendly name, accepted back by [`FromStr`].
    pub fn name(self) -> &'static str {
        match self {
            TauMethod::Eta24 => "eta24",
            TauMethod::VectorMod110 => "vector110",
            TauMethod::VectorMod10 => "vector10",
            TauMethod::EisensteinE4E6 => "eisenstein46",
            TauMethod::EisensteinE12 => "eisenstein12",
            TauMethod::DivisorSums => "divisor-sums",
        }
    }

    /// The internal series order needed to produce `tau(1..=n_max)`.
    fn required_order(self, n_max: u64) -> u64 {
        match self {
            TauMethod::VectorMod110 => 110 * (n_max - 1),
            TauMethod::VectorMod10 => 10 * (n_max - 1),
            _ => n_max,
        }
    }
}

impl fmt::Display for TauMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TauMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TauMethod::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown tau method {s:?}; expected one of: {}",
                    TauMethod::ALL.map(|m| m.name()).join(", ")
                ))
            })
    }
}

fn predefined_family(name: &str) -> VectorFamily {
    predefined(name).expect("family is registered")
}

/// The difference series whose coefficient at `q^{110 j}` is `tau(j+1)` and
/// which vanishes at every other exponent: family `A` minus `q^2` times
/// family `B`.
fn mod110_difference(order: usize) -> TruncatedSeries {
    let a = predefined_family("A").series(order);
    let b = predefined_family("B").series(order);
    a.sub(&b.shift_up(2)).expect("orders match")
}

/// The difference series whose coefficient at `q^{10 j}` is `tau(j+1)` and
/// which vanishes at every other exponent: `U - q^2 V - 11 q W`.
fn mod10_difference(order: usize) -> TruncatedSeries {
    let u = predefined_family("U").series(order);
    let v = predefined_family("V").series(order);
    let w = predefined_family("W").series(order);
    u.sub(&v.shift_up(2))
        .and_then(|s| s.sub(&w.scale_int(11).shift_up(1)))
        .expect("orders match")
}

/// Reads off every 110th (or 10th) coefficient into a series of order
/// `n_max` whose coefficient at `q^k` is `tau(k)`.
fn compress(diff: &TruncatedSeries, step: usize, n_max: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rat::zero(); n_max + 1];
    for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = diff.coeff(step * (k - 1)).clone();
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// Computes `sum_{n=1}^{n_max} tau(n) q^n` by the chosen method.
///
/// `budget` caps the *internal* truncation order; the vector methods need
/// orders `110 (n_max - 1)` and `10 (n_max - 1)` respectively, everything
/// else just `n_max`. Exceeding the budget is reported as
/// [`Error::OrderBudget`] before any work is done.
pub fn tau_series(method: TauMethod, n_max: u64, budget: usize) -> Result<TruncatedSeries> {
    if n_max == 0 {
        return Err(Error::InvalidArgument(
            "tau(n) needs n >= 1; requested a series up to n = 0".into(),
        ));
    }
    let required = method.required_order(n_max);
    if required > budget as u64 {
        return Err(Error::OrderBudget {
            required: usize::try_from(required).unwrap_or(usize::MAX),
            budget,
        });
    }
    let n = n_max as usize;
    match method {
        TauMethod::Eta24 => Ok(eta24(n)),
        TauMethod::VectorMod110 => {
            let diff = mod110_difference(required as usize);
            Ok(compress(&diff, 110, n))
        }
        TauMethod::VectorMod10 => {
            let diff = mod10_difference(required as usize);
            Ok(compress(&diff, 10, n))
        }
        TauMethod::EisensteinE4E6 => {
            let e4 = eisenstein(4, n)?;
            let e6 = eisenstein(6, n)?;
            let num = e4.pow(3).sub(&e6.pow(2))?;
            Ok(num.scale(&rat(1, 1728)).expect_integral("tau via E4, E6"))
        }
        TauMethod::EisensteinE12 => {
            let e12 = eisenstein(12, n)?;
            let e6 = eisenstein(6, n)?;
            let num = e12.sub(&e6.pow(2))?;
            Ok(num.scale(&rat(691, 762048)).expect_integral("tau via E12"))
        }
        TauMethod::DivisorSums => {
            let phi11 = phi_series(11, n)?;
            let phi5 = phi_series(5, n)?;
            let conv = phi5.mul(&phi5)?;
            let s = phi11
                .scale(&rat(65, 756))
                .add(&phi5.scale(&rat(691, 756)))?
                .sub(&conv.scale(&rat(691, 3)))?;
            Ok(s.expect_integral("tau via divisor sums"))
        }
    }
}

/// `tau(n)` by the definition, within the default budget.
pub fn tau(n: u64) -> Result<BigInt> {
    tau_with(TauMethod::Eta24, n)
}

/// `tau(n)` by the chosen method, within the default budget.
pub fn tau_with(method: TauMethod, n: u64) -> Result<BigInt> {
    tau_with_budget(method, n, DEFAULT_MAX_ORDER)
}

/// `tau(n)` by the chosen method, within an explicit budget.
pub fn tau_with_budget(method: TauMethod, n: u64, budget: usize) -> Result<BigInt> {
    Ok(tau_series(method, n, budget)?.integer_coeff(n as usize))
}

/// `tau(1), ..., tau(n_max)` by the chosen method (index `i` holds
/// `tau(i+1)`).
pub fn tau_sweep(method: TauMethod, n_max: u64, budget: usize) -> Result<Vec<BigInt>> {
    let series = tau_series(method, n_max, budget)?;
    Ok((1..=n_max as usize).map(|k| series.integer_coeff(k)).collect())
}

/// The divisor power sum `sigma_j(n) = sum_{d | n} d^j`.
///
/// # Panics
/// Panics when `n == 0`.
pub fn sigma(j: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma_j(n) needs n >= 1");
    let mut total = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(j);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(j);
            }
        }
        d += 1;
    }
    total
}

/// Checks, coefficient by coefficient up to `order`, that the family
/// difference `A - q^2 B` equals `sum_j tau(j+1) q^{110 j}`: tau values at
/// the multiples of 110 and zero everywhere else. Returns the number of
/// coefficients checked.
pub fn verify_tau_identity_mod110(order: usize) -> Result<u64> {
    verify_difference_pattern(&mod110_difference(order), 110, "A - q^2 B")
}

/// The modulus-10 counterpart: `U - q^2 V - 11 q W` equals
/// `sum_j tau(j+1) q^{10 j}`.
pub fn verify_tau_identity_mod10(order: usize) -> Result<u64> {
    verify_difference_pattern(&mod10_difference(order), 10, "U - q^2 V - 11 q W")
}

fn verify_difference_pattern(diff: &TruncatedSeries, step: usize, label: &str) -> Result<u64> {
    let order = diff.order();
    let taus = eta24(order / step + 1);
    let zero = Rat::zero();
    for i in 0..=order {
        let expected = if i % step == 0 {
            taus.coeff(i / step + 1)
        } else {
            &zero
        };
        if diff.coeff(i) != expected {
            return Err(Error::Verification(format!(
                "{label} fails at q^{i}: got {}, expected {expected}",
                diff.coeff(i)
            )));
        }
    }
    Ok(order as u64 + 1)
}

/// Checks that the family difference `D - q^2 E` is supported exactly on
/// the exponents `13 n(n+1)/2` with coefficient `(-1)^n (2n+1)`, and
/// returns the `(exponent, coefficient)` pairs found up to `order`.
pub fn triangular_pattern_mod13(order: usize) -> Result<Vec<(u64, i64)>> {
    let d = predefined_family("D").series(order);
    let e = predefined_family("E").series(order);
    let diff = d.sub(&e.shift_up(2)).expect("orders match");

    let mut triggers = Vec::new();
    let mut n: u64 = 0;
    loop {
        let expo = 13 * n * (n + 1) / 2;
        if expo > order as u64 {
            break;
        }
        let value = (2 * n as i64 + 1) * if n % 2 == 0 { 1 } else { -1 };
        triggers.push((expo, value));
        n += 1;
    }

    let zero = Rat::zero();
    let mut next = triggers.iter().peekable();
    for i in 0..=order {
        let expected_value = match next.peek() {
            Some(&&(expo, value)) if expo == i as u64 => {
                next.next();
                Some(value)
            }
            _ => None,
        };
        let expected = match expected_value {
            Some(v) => Rat::from_integer(BigInt::from(v)),
            None => zero.clone(),
        };
        if diff.coeff(i) != &expected {
            return Err(Error::Verification(format!(
                "D - q^2 E fails at q^{i}: got {}, expected {expected}",
                diff.coeff(i)
            )));
        }
    }
    Ok(triggers)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks the multiplicative structure of tau on `1..=n_max`:
/// `tau(m n) = tau(m) tau(n)` for coprime `m, n` and
/// `tau(p^{e+1}) = tau(p) tau(p^e) - p^11 tau(p^{e-1})` at prime powers.
/// Returns the number of equations checked.
pub fn verify_multiplicativity(n_max: u64, budget: usize) -> Result<u64> {
    let taus = tau_sweep(TauMethod::Eta24, n_max, budget)?;
    let t = |k: u64| &taus[(k - 1) as usize];
    let mut checked = 0u64;

    for m in 2..=n_max {
        for n in (m + 1)..=(n_max / m) {
            if m.gcd(&n) != 1 {
                continue;
            }
            if *t(m * n) != t(m) * t(n) {
                return Err(Error::Verification(format!(
                    "tau({m} * {n}) != tau({m}) tau({n}) for coprime arguments"
                )));
            }
            checked += 1;
        }
    }

    for p in 2..=n_max {
        if !is_prime(p) {
            continue;
        }
        let p11 = BigInt::from(p).pow(11);
        let mut power = p; // p^e, starting at e = 1
        while let Some(next) = power.checked_mul(p).filter(|&x| x <= n_max) {
            let previous = power / p; // p^{e-1}
            let expected = t(p) * t(power) - &p11 * t(previous);
            if *t(next) != expected {
                return Err(Error::Verification(format!(
                    "Hecke recursion fails at p = {p}, p^e = {power}"
                )));
            }
            checked += 1;
            power = next;
        }
    }

    Ok(checked)
}

/// Checks that every listed method produces the same `tau(1..=n_max)`.
/// Returns the number of (method, index) comparisons made.
pub fn verify_methods_agree(methods: &[TauMethod], n_max: u64, budget: usize) -> Result<u64> {
    let Some((first, rest)) = methods.split_first() else {
        return Ok(0);
    };
    let reference = tau_sweep(*first, n_max, budget)?;
    let mut checked = 0u64;
    for method in rest {
        let other = tau_sweep(*method, n_max, budget)?;
        for (i, (a, b)) in reference.iter().zip(&other).enumerate() {
            if a != b {
                return Err(Error::Verification(format!(
                    "methods {first} and {method} disagree at n = {}: {a} vs {b}",
                    i + 1
                )));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// tau(1..=15), cross-checked against several independent methods in
    /// the tests below and in the integration suite.
    const TAU: [i64; 15] = [
        1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944,
        -577738, 401856, 1217160,
    ];

    #[test]
    fn tau_matches_the_frozen_table() {
        for (i, expected) in TAU.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(tau(n).unwrap(), BigInt::from(*expected), "tau({n})");
        }
    }

    #[test]
    fn tau_of_zero_is_rejected() {
        assert!(matches!(tau(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn budgets_are_enforced_before_any_work() {
        match tau_with_budget(TauMethod::Eta24, 5000, DEFAULT_MAX_ORDER) {
            Err(Error::OrderBudget { required, budget }) => {
                assert_eq!(required, 5000);
                assert_eq!(budget, DEFAULT_MAX_ORDER);
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
        match tau_with_budget(TauMethod::VectorMod110, 40, DEFAULT_MAX_ORDER) {
            Err(Error::OrderBudget { required, .. }) => assert_eq!(required, 4290),
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn vector_routes_reach_tau_of_two() {
        assert_eq!(
            tau_with_budget(TauMethod::VectorMod110, 2, 110).unwrap(),
            BigInt::from(-24)
        );
        assert_eq!(
            tau_with_budget(TauMethod::VectorMod10, 2, 10).unwrap(),
            BigInt::from(-24)
        );
    }

    #[test]
    fn direct_methods_agree_to_n_60() {
        let checked = verify_methods_agree(
            &[
                TauMethod::Eta24,
                TauMethod::EisensteinE4E6,
                TauMethod::EisensteinE12,
                TauMethod::DivisorSums,
            ],
            60,
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        assert_eq!(checked, 180);
    }

    #[test]
    fn vector_routes_agree_with_the_definition_at_small_n() {
        verify_methods_agree(&[TauMethod::Eta24, TauMethod::VectorMod10], 8, 70).unwrap();
        verify_methods_agree(&[TauMethod::Eta24, TauMethod::VectorMod110], 3, 220).unwrap();
    }

    #[test]
    fn difference_patterns_hold_at_moderate_order() {
        assert_eq!(verify_tau_identity_mod110(250).unwrap(), 251);
        assert_eq!(verify_tau_identity_mod10(120).unwrap(), 121);
    }

    #[test]
    fn triangular_pattern_starts_as_expected() {
        let pattern = triangular_pattern_mod13(140).unwrap();
        assert_eq!(pattern, vec![(0, 1), (13, -3), (39, 5), (78, -7), (130, 9)]);
    }

    #[test]
    fn multiplicativity_holds_to_40() {
        // 22 coprime products plus 7 prime-power recursions fit below 40.
        assert_eq!(verify_multiplicativity(40, DEFAULT_MAX_ORDER).unwrap(), 29);
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(11, 1), BigInt::from(1));
        assert_eq!(sigma(11, 2), BigInt::from(2049));
        assert_eq!(sigma(11, 3), BigInt::from(177_148));
        assert_eq!(sigma(5, 1), BigInt::from(1));
        assert_eq!(sigma(5, 2), BigInt::from(33));
        assert_eq!(sigma(5, 6), BigInt::from(8052));
        assert_eq!(sigma(1, 12), BigInt::from(28));
        let phi5 = phi_series(5, 30).unwrap();
        for n in 1..=30u64 {
            assert_eq!(phi5.integer_coeff(n as usize), sigma(5, n));
        }
    }

    #[test]
    fn tau_is_congruent_to_sigma11_mod_691() {
        let taus = tau_sweep(TauMethod::Eta24, 40, DEFAULT_MAX_ORDER).unwrap();
        for n in 1..=40u64 {
            let diff = &taus[(n - 1) as usize] - sigma(11, n);
            assert!(
                (diff % BigInt::from(691)).is_zero(),
                "congruence fails at n = {n}"
            );
        }
    }

    #[test]
    fn method_names_round_trip() {
        for method in TauMethod::ALL {
            assert_eq!(method.name().parse::<TauMethod>().unwrap(), method);
        }
        assert_eq!("ETA24".parse::<TauMethod>().unwrap(), TauMethod::Eta24);
        assert!(matches!(
            "no-such-method".parse::<TauMethod>(),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn empty_method_list_checks_nothing() {
        assert_eq!(verify_methods_agree(&[], 10, 100).unwrap(), 0);
    }
}
