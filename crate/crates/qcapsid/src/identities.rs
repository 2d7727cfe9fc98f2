//! A registry of named product/series identities, each checkable to any
//! truncation order.
//!
//! Every entry builds the *residual* of its identity — left side minus right
//! side — which must vanish identically. The registry powers the `verify`
//! subcommand of the CLI and the cross-checks in the integration tests: the
//! shifted identities here are exactly the ones that make the vector-family
//! differences in [`crate::tau`] collapse to single tau values.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qseries::{euler_series, p_mk};
use crate::rational::Rat;
use crate::series::TruncatedSeries;

/// A named identity with a residual builder.
pub struct Identity {
    pub name: &'static str,
    /// The claim, written out (ASCII, `G11` meaning `G(q^11)` etc.).
    pub description: &'static str,
    build: fn(usize) -> TruncatedSeries,
}

impl Identity {
    /// Left side minus right side, truncated at `order`.
    pub fn residual(&self, order: usize) -> TruncatedSeries {
        (self.build)(order)
    }

    /// Checks that the residual vanishes coefficientwise up to `order`.
    /// Returns the number of coefficients checked.
    pub fn verify(&self, order: usize) -> Result<u64> {
        let r = self.residual(order);
        match r.first_nonzero() {
            None => Ok(order as u64 + 1),
            Some(n) => Err(Error::Verification(format!(
                "identity {} fails first at q^{n} with coefficient {}",
                self.name,
                r.coeff(n)
            ))),
        }
    }
}

/// `1 / prod P_{m,k}` over the given `(m, k)` pairs.
fn inv_p_product(pairs: &[(u64, u64)], order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    for &(m, k) in pairs {
        s = s
            .mul(&p_mk(m, k, order).expect("registry parameters are valid"))
            .expect("orders match");
    }
    s.invert().expect("constant term is 1")
}

/// The Rogers-Ramanujan products `G = 1/P_{5,1}` and `H = 1/P_{5,2}`.
fn rr_g(order: usize) -> TruncatedSeries {
    inv_p_product(&[(5, 1)], order)
}

fn rr_h(order: usize) -> TruncatedSeries {
    inv_p_product(&[(5, 2)], order)
}

/// Their modulus-13 analogues `Gt = 1/(P_{13,1} P_{13,3} P_{13,4})` and
/// `Ht = 1/(P_{13,2} P_{13,5} P_{13,6})`.
fn rb_g(order: usize) -> TruncatedSeries {
    inv_p_product(&[(13, 1), (13, 3), (13, 4)], order)
}

fn rb_h(order: usize) -> TruncatedSeries {
    inv_p_product(&[(13, 2), (13, 5), (13, 6)], order)
}

fn sub(a: TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a.sub(b).expect("orders match")
}

fn mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a.mul(b).expect("orders match")
}

fn one_minus(s: TruncatedSeries) -> TruncatedSeries {
    let one = TruncatedSeries::one(s.order());
    sub(s, &one)
}

fn ramanujan55(order: usize) -> TruncatedSeries {
    let g = rr_g(order);
    let h = rr_h(order);
    let g11 = g.substitute_power(11).expect("11 >= 1");
    let h11 = h.substitute_power(11).expect("11 >= 1");
    one_minus(sub(mul(&h, &g11), &mul(&g, &h11).shift_up(2)))
}

fn ramanujan5_powers(order: usize) -> TruncatedSeries {
    let g = rr_g(order);
    let h = rr_h(order);
    let gh6 = mul(&g, &h).pow(6);
    let lead = sub(mul(&h, &g.pow(11)), &mul(&g, &h.pow(11)).shift_up(2));
    one_minus(sub(lead, &gh6.scale_int(11).shift_up(1)))
}

fn robins39(order: usize) -> TruncatedSeries {
    let g = rb_g(order);
    let h = rb_h(order);
    let g3 = g.substitute_power(3).expect("3 >= 1");
    let h3 = h.substitute_power(3).expect("3 >= 1");
    one_minus(sub(mul(&h, &g3), &mul(&g, &h3).shift_up(2)))
}

fn robins13_powers(order: usize) -> TruncatedSeries {
    let g = rb_g(order);
    let h = rb_h(order);
    let gh2 = mul(&g, &h).pow(2);
    let lead = sub(mul(&h, &g.pow(3)), &mul(&g, &h.pow(3)).shift_up(2));
    one_minus(sub(lead, &gh2.scale_int(3).shift_up(1)))
}

fn ramanujan55_p(order: usize) -> TruncatedSeries {
    let a = inv_p_product(&[(5, 2), (55, 11)], order);
    let b = inv_p_product(&[(5, 1), (55, 22)], order);
    one_minus(sub(a, &b.shift_up(2)))
}

fn ramanujan55_pd(order: usize) -> TruncatedSeries {
    let a = inv_p_product(&[(10, 2), (10, 3), (110, 11), (110, 44)], order);
    let b = inv_p_product(&[(10, 1), (10, 4), (110, 22), (110, 33)], order);
    one_minus(sub(a, &b.shift_up(2)))
}

/// Twelve-factor residue lists equivalent to [`ramanujan55_p`]: the modulus
/// 55 with residues `5j - 3` (and 11) against `5j - 4` (and 22).
fn ramanujan55_ab(order: usize) -> TruncatedSeries {
    let ks: Vec<(u64, u64)> = (1..=11).map(|j| (55, 5 * j - 3)).chain([(55, 11)]).collect();
    let ls: Vec<(u64, u64)> = (1..=11).map(|j| (55, 5 * j - 4)).chain([(55, 22)]).collect();
    let a = inv_p_product(&ks, order);
    let b = inv_p_product(&ls, order);
    one_minus(sub(a, &b.shift_up(2)))
}

/// Twelve-factor residue lists equivalent to [`robins39`], modulus 39.
fn robins39_ab(order: usize) -> TruncatedSeries {
    let ks: Vec<(u64, u64)> = [2u64, 15, 28, 5, 18, 31, 6, 19, 32, 3, 9, 12]
        .iter()
        .map(|&k| (39, k))
        .collect();
    let ls: Vec<(u64, u64)> = [1u64, 14, 27, 3, 16, 29, 4, 17, 30, 6, 15, 18]
        .iter()
        .map(|&l| (39, l))
        .collect();
    let a = inv_p_product(&ks, order);
    let b = inv_p_product(&ls, order);
    one_minus(sub(a, &b.shift_up(2)))
}

/// `(q^s; q^s)^3 = sum_n (-1)^n (2n+1) q^{s n(n+1)/2}` for a given step `s`.
fn jacobi_cubes_step(s: u64, order: usize) -> TruncatedSeries {
    let cube = euler_series(order)
        .substitute_power(s as usize)
        .expect("s >= 1")
        .pow(3);
    let mut expected = TruncatedSeries::zero(order);
    let mut n: u64 = 0;
    loop {
        let expo = match n.checked_mul(n + 1).map(|t| t / 2).and_then(|t| t.checked_mul(s)) {
            Some(e) if e <= order as u64 => e as usize,
            _ => break,
        };
        let c = BigInt::from(2 * n + 1) * if n % 2 == 0 { 1 } else { -1 };
        expected = expected
            .add(&TruncatedSeries::monomial(order, expo, Rat::from_integer(c)))
            .expect("orders match");
        n += 1;
    }
    sub(cube, &expected)
}

fn jacobi_cubes(order: usize) -> TruncatedSeries {
    jacobi_cubes_step(1, order)
}

fn jacobi_cubes_13(order: usize) -> TruncatedSeries {
    jacobi_cubes_step(13, order)
}

/// All registered identities.
pub fn all() -> &'static [Identity] {
    &[
        Identity {
            name: "ramanujan55",
            description: "1 = H(q) G(q^11) - q^2 G(q) H(q^11), with G = 1/P_{5,1}, H = 1/P_{5,2}",
            build: ramanujan55,
        },
        Identity {
            name: "ramanujan5-powers",
            description: "1 = H G^11 - q^2 G H^11 - 11 q G^6 H^6",
            build: ramanujan5_powers,
        },
        Identity {
            name: "robins39",
            description: "1 = Ht(q) Gt(q^3) - q^2 Gt(q) Ht(q^3), with Gt = 1/(P_{13,1} P_{13,3} P_{13,4}), Ht = 1/(P_{13,2} P_{13,5} P_{13,6})",
            build: robins39,
        },
        Identity {
            name: "robins13-powers",
            description: "1 = Ht Gt^3 - q^2 Gt Ht^3 - 3 q Gt^2 Ht^2",
            build: robins13_powers,
        },
        Identity {
            name: "ramanujan55-p",
            description: "1 = 1/(P_{5,2} P_{55,11}) - q^2/(P_{5,1} P_{55,22})",
            build: ramanujan55_p,
        },
        Identity {
            name: "ramanujan55-pd",
            description: "1 = 1/(P_{10,2} P_{10,3} P_{110,11} P_{110,44}) - q^2/(P_{10,1} P_{10,4} P_{110,22} P_{110,33})",
            build: ramanujan55_pd,
        },
        Identity {
            name: "ramanujan55-ab",
            description: "mod-55 residue-list form: 1 = 1/prod_j P_{55,k_j} - q^2/prod_j P_{55,l_j}",
            build: ramanujan55_ab,
        },
        Identity {
            name: "robins39-ab",
            description: "mod-39 residue-list form: 1 = 1/prod_j P_{39,k_j} - q^2/prod_j P_{39,l_j}",
            build: robins39_ab,
        },
        Identity {
            name: "jacobi-cubes",
            description: "(q;q)^3 = sum_n (-1)^n (2n+1) q^{n(n+1)/2}",
            build: jacobi_cubes,
        },
        Identity {
            name: "jacobi-cubes-13",
            description: "(q^13;q^13)^3 = sum_n (-1)^n (2n+1) q^{13 n(n+1)/2}",
            build: jacobi_cubes_13,
        },
    ]
}

/// Looks up a registered identity by name.
pub fn by_name(name: &str) -> Option<&'static Identity> {
    all().iter().find(|i| i.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use std::collections::BTreeSet;

    #[test]
    fn every_registered_identity_holds_to_order_150() {
        for identity in all() {
            let checked = identity.verify(150).unwrap_or_else(|e| {
                panic!("{}: {e}", identity.name);
            });
            assert_eq!(checked, 151);
        }
    }

    #[test]
    fn names_are_unique_and_resolvable() {
        let names: BTreeSet<_> = all().iter().map(|i| i.name).collect();
        assert_eq!(names.len(), all().len());
        for identity in all() {
            assert!(by_name(identity.name).is_some());
        }
        assert!(by_name("no-such-identity").is_none());
    }

    #[test]
    fn residue_list_sides_match_the_product_sides() {
        // The twelve P-factors with modulus 55 multiply out to exactly
        // H(q) G(q^11) (first list) and G(q) H(q^11) (second list).
        let order = 120;
        let ks: Vec<(u64, u64)> = (1..=11).map(|j| (55, 5 * j - 3)).chain([(55, 11)]).collect();
        let a = inv_p_product(&ks, order);
        let g11 = rr_g(order).substitute_power(11).unwrap();
        assert_eq!(a, mul(&rr_h(order), &g11));

        let ls: Vec<(u64, u64)> = (1..=11).map(|j| (55, 5 * j - 4)).chain([(55, 22)]).collect();
        let b = inv_p_product(&ls, order);
        let h11 = rr_h(order).substitute_power(11).unwrap();
        assert_eq!(b, mul(&rr_g(order), &h11));
    }

    #[test]
    fn modulus_13_residue_lists_match_their_product_sides() {
        let order = 90;
        let ks: Vec<(u64, u64)> = [2u64, 15, 28, 5, 18, 31, 6, 19, 32, 3, 9, 12]
            .iter()
            .map(|&k| (39, k))
            .collect();
        let a = inv_p_product(&ks, order);
        let g3 = rb_g(order).substitute_power(3).unwrap();
        assert_eq!(a, mul(&rb_h(order), &g3));
    }

    #[test]
    fn verify_reports_the_first_failing_power() {
        let broken = Identity {
            name: "broken",
            description: "q^3 = 0",
            build: |order| TruncatedSeries::monomial(order, 3, Rat::one()),
        };
        let err = broken.verify(10).unwrap_err();
        assert!(err.to_string().contains("q^3"), "{err}");
    }
}
