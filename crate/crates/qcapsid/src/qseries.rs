//! Named q-series constructors: Pochhammer products, eta powers, t-core and
//! capsid generating functions, divisor-power series, and Eisenstein series.
//!
//! Everything here is exact. Infinite products are truncated by keeping only
//! the factors `1 - q^e` with `e <= order`; dropping the rest leaves every
//! kept coefficient unchanged, because each omitted factor is `1 + O(q^{order+1})`.
//! Products and quotients by such binomials cost O(order) per factor, so the
//! constructors below avoid generic convolutions wherever possible.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::CapsidSpec;
use crate::rational::Rat;
use crate::series::TruncatedSeries;

/// The truncated infinite Pochhammer product `(q^k; q^m)_inf`, i.e.
/// `prod_{j >= 0} (1 - q^{k + j m})`. Requires `k >= 1` and `m >= 1`.
pub fn pochhammer_inf(k: u64, m: u64, order: usize) -> Result<TruncatedSeries> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!(
            "pochhammer_inf requires k >= 1 and m >= 1, got k={k}, m={m}"
        )));
    }
    let mut s = TruncatedSeries::one(order);
    mul_pochhammer_factors(&mut s, k, m);
    Ok(s)
}

/// Multiplies `s` in place by `(q^k; q^m)_inf`.
fn mul_pochhammer_factors(s: &mut TruncatedSeries, k: u64, m: u64) {
    let mut e = k;
    while e <= s.order() as u64 {
        s.mul_one_minus_q_pow(e as usize);
        e += m;
    }
}

/// Divides `s` in place by `(q^k; q^m)_inf`.
fn div_pochhammer_factors(s: &mut TruncatedSeries, k: u64, m: u64) {
    let mut e = k;
    while e <= s.order() as u64 {
        s.div_one_minus_q_pow(e as usize);
        e += m;
    }
}

/// Euler's product `(q; q)_inf`. Its coefficients vanish except at the
/// generalized pentagonal numbers, where they are +-1.
pub fn euler_series(order: usize) -> TruncatedSeries {
    pochhammer_inf(1, 1, order).expect("arguments are valid")
}

/// The two-residue product `P_{m,k}(q) = (q^k; q^m)_inf (q^{m-k}; q^m)_inf`.
/// Requires `m >= 2` and `0 < k < m`; satisfies `P_{m,k} = P_{m,m-k}`.
pub fn p_mk(m: u64, k: u64, order: usize) -> Result<TruncatedSeries> {
    if m < 2 || k == 0 || k >= m {
        return Err(Error::InvalidArgument(format!(
            "P_{{m,k}} requires m >= 2 and 0 < k < m, got m={m}, k={k}"
        )));
    }
    let mut s = TruncatedSeries::one(order);
    mul_pochhammer_factors(&mut s, k, m);
    mul_pochhammer_factors(&mut s, m - k, m);
    Ok(s)
}

/// `q * ((q; q)_inf)^24`, the generating function whose coefficient of `q^n`
/// is Ramanujan's tau(n). Computed by squaring `(q;q)_inf` up through the
/// 8th power, cubing that, and finally shifting by one power of `q`.
pub fn eta24(order: usize) -> TruncatedSeries {
    let e1 = euler_series(order);
    let e2 = e1.mul(&e1).expect("same order");
    let e4 = e2.mul(&e2).expect("same order");
    let e8 = e4.mul(&e4).expect("same order");
    let e24 = e8.mul(&e8).expect("same order").mul(&e8).expect("same order");
    e24.shift_up(1).expect_integral("eta24")
}

/// The t-core generating function `(q^t; q^t)_inf^t / (q; q)_inf`.
/// Requires `t >= 2`. Coefficient of `q^n` = number of t-core partitions
/// of `n` (partitions with no hook length divisible by `t`).
pub fn tcore_series(t: u64, order: usize) -> Result<TruncatedSeries> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!(
            "tcore_series requires t >= 2, got t={t}"
        )));
    }
    let mut s = TruncatedSeries::one(order);
    // Every factor of (q^t; q^t)^t is 1 within the truncation when t
    // exceeds the order; skip the passes instead of spinning t times.
    if t <= order as u64 {
        for _ in 0..t {
            mul_pochhammer_factors(&mut s, t, t);
        }
    }
    div_pochhammer_factors(&mut s, 1, 1);
    Ok(s.expect_integral("tcore_series"))
}

/// Classical capsid generating function in product form,
/// `(q^m; q^m)_inf / P_{m,k}(q)`. Requires `m >= 2` and `0 < k < m`.
///
/// For `k != m/2` the coefficient of `q^n` counts the `(m,k)`-capsid
/// partitions of `n`. For `k = m/2` the series is still well defined (and
/// still equals the sum form), but it counts anchored decompositions rather
/// than bare partitions, so it is *not* matched against enumeration.
pub fn capsid_series_product(m: u64, k: u64, order: usize) -> Result<TruncatedSeries> {
    if m < 2 || k == 0 || k >= m {
        return Err(Error::InvalidArgument(format!(
            "capsid series requires m >= 2 and 0 < k < m, got m={m}, k={k}"
        )));
    }
    let mut s = TruncatedSeries::one(order);
    mul_pochhammer_factors(&mut s, m, m);
    div_pochhammer_factors(&mut s, k, m);
    div_pochhammer_factors(&mut s, m - k, m);
    Ok(s.expect_integral("capsid_series_product"))
}

/// Generalized capsid generating function in product form,
/// `(q^{r1+r2}; q^m)_inf / ((q^{r1}; q^m)_inf (q^{r2}; q^m)_inf)`.
/// The coefficient of `q^n` counts the `(m,r1,r2)`-capsid partitions of `n`.
pub fn capsid_series(spec: &CapsidSpec, order: usize) -> TruncatedSeries {
    let (m, r1, r2) = (spec.m(), spec.r1(), spec.r2());
    let mut s = TruncatedSeries::one(order);
    mul_pochhammer_factors(&mut s, r1 + r2, m);
    div_pochhammer_factors(&mut s, r1, m);
    div_pochhammer_factors(&mut s, r2, m);
    s.expect_integral("capsid_series")
}

/// Generalized capsid generating function in sum form,
///
/// ```text
/// sum_{n >= 0} q^{r1 n} / ( (q^m; q^m)_n (q^{m n + r2}; q^m)_inf )
/// ```
///
/// The summation index runs only while `r1 * n <= order`; later terms start
/// beyond the truncation order. Equal to [`capsid_series`] coefficientwise —
/// the two constructions are kept as independent cross-checks.
pub fn capsid_series_sum(spec: &CapsidSpec, order: usize) -> TruncatedSeries {
    capsid_sum_raw(spec.m(), spec.r1(), spec.r2(), order)
        .expect_integral("capsid_series_sum")
}

/// Classical sum form with anchor `m - k` and residue class `k`; valid for
/// every `0 < k < m` including `k = m/2`. Requires `m >= 2`.
pub fn capsid_series_sum_mk(m: u64, k: u64, order: usize) -> Result<TruncatedSeries> {
    if m < 2 || k == 0 || k >= m {
        return Err(Error::InvalidArgument(format!(
            "capsid series requires m >= 2 and 0 < k < m, got m={m}, k={k}"
        )));
    }
    Ok(capsid_sum_raw(m, m - k, k, order).expect_integral("capsid_series_sum_mk"))
}

/// Shared engine for the sum form. Maintains the running product
/// `1 / ((q^m; q^m)_n (q^{m n + r2}; q^m)_inf)` across terms: going from
/// `n-1` to `n` divides by the new finite factor `1 - q^{m n}` and multiplies
/// the head factor `1 - q^{m(n-1) + r2}` back in. Each step costs O(order).
fn capsid_sum_raw(m: u64, r1: u64, r2: u64, order: usize) -> TruncatedSeries {
    let mut running = TruncatedSeries::one(order);
    div_pochhammer_factors(&mut running, r2, m);
    let mut out = TruncatedSeries::zero(order);
    let mut n: u64 = 0;
    loop {
        let shift = match n.checked_mul(r1) {
            Some(s) if s <= order as u64 => s as usize,
            _ => break,
        };
        if n > 0 {
            let new_finite = m * n;
            if new_finite <= order as u64 {
                running.div_one_minus_q_pow(new_finite as usize);
            }
            let head = m * (n - 1) + r2;
            if head <= order as u64 {
                running.mul_one_minus_q_pow(head as usize);
            }
        }
        out = out
            .add(&running.shift_up(shift))
            .expect("same order by construction");
        n += 1;
    }
    out
}

/// The generating function for partitions whose parts are congruent to one
/// of `residues` modulo `modulus`, i.e. `prod_r 1 / (q^r; q^modulus)_inf`.
/// Requires `modulus >= 2` and strictly ascending residues in
/// `1..modulus`.
pub fn residue_class_series(modulus: u64, residues: &[u64], order: usize) -> Result<TruncatedSeries> {
    validate_residue_classes(modulus, residues)?;
    let mut s = TruncatedSeries::one(order);
    for &r in residues {
        div_pochhammer_factors(&mut s, r, modulus);
    }
    Ok(s.expect_integral("residue_class_series"))
}

/// Domain check shared with the vector-family validator: `modulus >= 2` and
/// residues strictly ascending within `1..modulus`.
pub(crate) fn validate_residue_classes(modulus: u64, residues: &[u64]) -> Result<()> {
    if modulus < 2 {
        return Err(Error::InvalidArgument(format!(
            "residue classes require a modulus >= 2, got {modulus}"
        )));
    }
    if residues.is_empty() {
        return Err(Error::InvalidArgument(
            "residue classes require at least one residue".to_string(),
        ));
    }
    for (i, &r) in residues.iter().enumerate() {
        if r == 0 || r >= modulus {
            return Err(Error::InvalidArgument(format!(
                "residue {r} is outside 1..{modulus}"
            )));
        }
        if i > 0 && residues[i - 1] >= r {
            return Err(Error::InvalidArgument(format!(
                "residues must be strictly ascending, got {} before {r}",
                residues[i - 1]
            )));
        }
    }
    Ok(())
}

/// The divisor-power series `Phi_j(q) = sum_{n >= 1} sigma_j(n) q^n`.
/// Requires odd `j >= 1` (the exponents that occur in Eisenstein series).
pub fn phi_series(j: u32, order: usize) -> Result<TruncatedSeries> {
    if j == 0 || j % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "phi_series requires an odd positive exponent, got j={j}"
        )));
    }
    let mut coeffs = vec![Rat::zero(); order + 1];
    for d in 1..=order {
        let dj = Rat::from_integer(BigInt::from(d).pow(j));
        let mut t = d;
        while t <= order {
            coeffs[t] += &dj;
            t += d;
        }
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// The Bernoulli number `B_n` as an exact rational, via the defining
/// recurrence `sum_{k=0}^{n} C(n+1, k) B_k = 0` with `B_0 = 1`
/// (so `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Rat {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    b.push(Rat::one());
    for m in 1..=n {
        let mut acc = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                let c = binomial(BigInt::from(m + 1), BigInt::from(k));
                acc += Rat::from_integer(c) * bk;
            }
        }
        let m1 = Rat::from_integer(BigInt::from(m + 1));
        b.push(-(acc / m1));
    }
    b.pop().expect("the vector is nonempty")
}

/// The normalized Eisenstein series
/// `E_n(q) = 1 - (2n / B_n) Phi_{n-1}(q)` for even weight `n >= 2`.
/// Exact rational coefficients; in general not integral (e.g. weight 12).
pub fn eisenstein(weight: u32, order: usize) -> Result<TruncatedSeries> {
    if weight < 2 || weight % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "eisenstein requires an even weight >= 2, got {weight}"
        )));
    }
    let phi = phi_series(weight - 1, order)?;
    let factor = Rat::from_integer(BigInt::from(2 * weight)) / bernoulli(weight as usize);
    TruncatedSeries::one(order).sub(&phi.scale(&factor))
}
