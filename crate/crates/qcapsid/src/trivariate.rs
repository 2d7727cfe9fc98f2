//! The refined capsid generating function in three variables.
//!
//! For a capsid the two natural statistics are the multiplicity `a` of the
//! anchor `r1` and the number `b` of parts congruent to `r2` mod `m`
//! (see [`crate::partitions::capsid_profile`]). This module computes
//!
//! ```text
//! C(x, y, q) = (x y q^{r1+r2}; q^m)_inf
//!              / ( (x q^{r1}; q^m)_inf (y q^{r2}; q^m)_inf )
//! ```
//!
//! whose coefficient of `x^a y^b q^n` counts the capsids of `n` with profile
//! `(a, b)`. Exchanging the roles of `(x, r1)` and `(y, r2)` leaves the
//! product unchanged, which is the refined symmetry realized combinatorially
//! by [`crate::bijection`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::partitions::CapsidSpec;
use crate::rational::Rat;
use crate::series::TruncatedSeries;

/// Exponent shift contributed by one sparse factor: `x`, `y`, or `xy`.
#[derive(Clone, Copy)]
enum Marker {
    X,
    Y,
    Xy,
}

impl Marker {
    fn delta(self) -> (u64, u64) {
        match self {
            Marker::X => (1, 0),
            Marker::Y => (0, 1),
            Marker::Xy => (1, 1),
        }
    }
}

/// A `q`-series truncated at a fixed order whose coefficients are integer
/// polynomials in two auxiliary variables `x` and `y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XySeries {
    order: usize,
    coeffs: Vec<BTreeMap<(u64, u64), BigInt>>,
}

impl XySeries {
    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BTreeMap::new(); order + 1];
        coeffs[0].insert((0, 0), BigInt::from(1));
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The coefficient of `x^a y^b q^n`. Panics if `n` exceeds the order.
    pub fn coefficient(&self, a: u64, b: u64, n: usize) -> BigInt {
        assert!(n <= self.order, "coefficient index {n} exceeds order {}", self.order);
        self.coeffs[n].get(&(a, b)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The full polynomial attached to `q^n`, as `(a, b) -> coefficient`
    /// pairs with zero entries omitted.
    pub fn q_coefficient(&self, n: usize) -> &BTreeMap<(u64, u64), BigInt> {
        assert!(n <= self.order, "coefficient index {n} exceeds order {}", self.order);
        &self.coeffs[n]
    }

    /// In-place division by `1 - M q^e`, i.e. multiplication by the
    /// geometric series in `M q^e`. Ascending order of `n` makes each source
    /// coefficient final before it is read.
    fn div_one_minus(&mut self, marker: Marker, e: usize) {
        debug_assert!(e >= 1);
        let (da, db) = marker.delta();
        for n in e..=self.order {
            let (lower, upper) = self.coeffs.split_at_mut(n);
            let src = &lower[n - e];
            let dst = &mut upper[0];
            for (&(a, b), c) in src {
                let entry = dst.entry((a + da, b + db)).or_insert_with(BigInt::zero);
                *entry += c;
            }
            upper[0].retain(|_, c| !c.is_zero());
        }
    }

    /// In-place multiplication by `1 - M q^e`. Descending order of `n` reads
    /// each source coefficient before it is overwritten.
    fn mul_one_minus(&mut self, marker: Marker, e: usize) {
        debug_assert!(e >= 1);
        let (da, db) = marker.delta();
        for n in (e..=self.order).rev() {
            let (lower, upper) = self.coeffs.split_at_mut(n);
            let src = &lower[n - e];
            let dst = &mut upper[0];
            for (&(a, b), c) in src {
                let entry = dst.entry((a + da, b + db)).or_insert_with(BigInt::zero);
                *entry -= c;
            }
            upper[0].retain(|_, c| !c.is_zero());
        }
    }

    /// Sets `x = y = 1`, collapsing each polynomial to an integer.
    pub fn specialize_ones(&self) -> TruncatedSeries {
        let coeffs: Vec<Rat> = self
            .coeffs
            .iter()
            .map(|poly| Rat::from_integer(poly.values().sum::<BigInt>()))
            .collect();
        TruncatedSeries::from_coeffs(coeffs)
    }
}

/// The refined capsid generating function `C(x, y, q)` for `spec`, truncated
/// at `order`.
pub fn refined_capsid_series(spec: &CapsidSpec, order: usize) -> XySeries {
    let (m, r1, r2) = (spec.m() as usize, spec.r1() as usize, spec.r2() as usize);
    let mut s = XySeries::one(order);
    let mut e = r1;
    while e <= order {
        s.div_one_minus(Marker::X, e);
        e += m;
    }
    let mut e = r2;
    while e <= order {
        s.div_one_minus(Marker::Y, e);
        e += m;
    }
    let mut e = r1 + r2;
    while e <= order {
        s.mul_one_minus(Marker::Xy, e);
        e += m;
    }
    s
}

/// The number of `(m, r1, r2)`-capsid partitions of `n` whose anchor
/// multiplicity is `a` and whose residue-class part count is `b`.
pub fn refined_gamma(spec: &CapsidSpec, a: u64, b: u64, n: usize) -> BigInt {
    refined_capsid_series(spec, n).coefficient(a, b, n)
}
