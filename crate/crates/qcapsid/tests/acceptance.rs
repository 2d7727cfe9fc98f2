//! Acceptance gate: one test per headline claim, each ending in a single
//! `PASS` line (run with `--nocapture` to see them). Everything here is
//! exact arithmetic; the expected numbers were frozen from independent
//! computations.

use num_bigint::BigInt;

use qcapsid::bijection;
use qcapsid::identities;
use qcapsid::partitions::{
    capsid_partitions, for_each_partition, mk_capsid_count, t_core_count, CapsidSpec, Partition,
};
use qcapsid::qseries::{capsid_series, capsid_series_sum, eta24, tcore_series};
use qcapsid::tau::{
    self, tau, tau_sweep, tau_with_budget, triangular_pattern_mod13, verify_tau_identity_mod10,
    verify_tau_identity_mod110, TauMethod,
};
use qcapsid::trivariate::refined_capsid_series;
use qcapsid::vector_partitions::{direct_count, predefined};

fn family(name: &str) -> qcapsid::vector_partitions::VectorFamily {
    predefined(name).expect("predefined family")
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn c01_tau2_from_the_mod110_families() {
    let a = family("A");
    let b = family("B");
    assert_eq!(a.count(110), int(174_780));
    assert_eq!(b.count(108), int(174_804));
    assert_eq!(a.count(110) - b.count(108), int(-24));
    assert_eq!(tau_with_budget(TauMethod::VectorMod110, 2, 220).unwrap(), int(-24));
    println!("PASS c01: a(110) - b(108) = 174780 - 174804 = -24 = tau(2)");
}

#[test]
fn c02_tau2_from_the_mod10_families() {
    let u = family("U").count(10);
    let v = family("V").count(8);
    let w = family("W").count(9);
    assert_eq!(u, int(381_405));
    assert_eq!(v, int(3_139));
    assert_eq!(w, int(34_390));
    assert_eq!(&u - &v - int(11) * &w, int(-24));
    assert_eq!(tau_with_budget(TauMethod::VectorMod10, 2, 20).unwrap(), int(-24));
    println!("PASS c02: u(10) - v(8) - 11 w(9) = 381405 - 3139 - 11*34390 = -24 = tau(2)");
}

#[test]
fn c03_capsid_golden_sets_of_weight_16() {
    let listed = |m, k| -> Vec<String> {
        capsid_partitions(&CapsidSpec::from_mk(m, k).unwrap(), 16)
            .iter()
            .map(Partition::to_string)
            .collect()
    };
    assert_eq!(
        listed(5, 1),
        ["(1^16)", "(4^4)", "(1^10,6)", "(1^4,6^2)", "(4,6^2)", "(1^5,11)", "(16)"]
    );
    assert_eq!(
        listed(5, 4),
        ["(1^16)", "(4^4)", "(1^11,5)", "(1^6,5^2)", "(1,5^3)", "(1^6,10)", "(1^2,14)"]
    );
    println!("PASS c03: both weight-16 capsid families have exactly the seven expected members");
}

#[test]
fn c04_bijection_golden_case() {
    let spec = CapsidSpec::new(5, 1, 2).unwrap();
    let input: Partition = "(1^3,5,15^2,22,27)".parse().unwrap();
    let trace = bijection::apply_with_trace(&spec, &input).unwrap();
    assert_eq!(trace.anchor_multiplicity, 3);
    assert_eq!(trace.residue_count, 2);
    assert_eq!(trace.zero_quotient.to_string(), "(1,3^2)");
    assert_eq!(trace.residue_quotient.to_string(), "(4,5)");
    // The merged partition is (5,4,3,3,1) and its conjugate (5,4,4,2,1),
    // written here in multiplicity notation.
    assert_eq!(trace.merged.to_string(), "(1,3^2,4,5)");
    assert_eq!(trace.merged_conjugate.to_string(), "(1,2,4^2,5)");
    assert_eq!(trace.image.to_string(), "(2^2,5,10,21^2,26)");
    // And back again.
    let swapped = spec.swapped();
    assert_eq!(bijection::apply(&swapped, &trace.image).unwrap(), input);
    println!("PASS c04: (1^3,5,15^2,22,27) maps to (2^2,5,10,21^2,26) with the expected trace");
}

#[test]
fn c05_mod110_difference_reproduces_tau_to_12() {
    // Build the two family series once at the full order; the coefficient
    // of q^{110 (n-1)} in A - q^2 B must be tau(n) for n = 1..=12.
    let order = 1320;
    let a = family("A").series(order);
    let b = family("B").series(order);
    let diff = a.sub(&b.shift_up(2)).unwrap();
    let taus = tau_sweep(TauMethod::Eta24, 12, 4096).unwrap();
    for (i, expected) in taus.iter().enumerate() {
        let got = diff.integer_coeff(110 * i);
        assert_eq!(&got, expected, "tau({}) via the mod-110 difference", i + 1);
    }
    println!("PASS c05: the mod-110 counting difference equals tau(n) for n = 1..=12 at order 1320");
}

#[test]
fn c06_vanishing_outside_the_special_exponents() {
    // Coefficientwise: a(n) = b(n-2) whenever n is not a multiple of 110
    // (order 1320), and u(n) - v(n-2) - 11 w(n-1) = 0 whenever n is not a
    // multiple of 10 (order 1000). The verifiers also pin the values at
    // the multiples to tau.
    assert_eq!(verify_tau_identity_mod110(1320).unwrap(), 1321);
    assert_eq!(verify_tau_identity_mod10(1000).unwrap(), 1001);
    // Spot-check the raw counting form of the statement as well.
    let a = family("A");
    let b = family("B");
    for n in [57i64, 111, 219, 1001] {
        assert_eq!(a.count(n), b.count(n - 2), "a({n}) = b({n}-2)");
    }
    let (u, v, w) = (family("U"), family("V"), family("W"));
    for n in [9i64, 11, 95, 333] {
        assert_eq!(
            u.count(n) - v.count(n - 2) - int(11) * w.count(n - 1),
            int(0),
            "mod-10 difference vanishes at {n}"
        );
    }
    println!("PASS c06: the counting differences vanish at every non-special exponent (orders 1320 and 1000)");
}

#[test]
fn c07_triangular_pattern_to_1000() {
    let pattern = triangular_pattern_mod13(1000).unwrap();
    assert_eq!(
        pattern,
        vec![
            (0, 1),
            (13, -3),
            (39, 5),
            (78, -7),
            (130, 9),
            (195, -11),
            (273, 13),
            (364, -15),
            (468, 17),
            (585, -19),
            (715, 21),
            (858, -23),
        ]
    );
    println!("PASS c07: D - q^2 E is supported exactly on 13-fold triangular numbers up to 1000");
}

#[test]
fn c08_identity_residuals_vanish_to_1000() {
    for name in [
        "ramanujan55",
        "ramanujan5-powers",
        "robins39",
        "ramanujan55-p",
        "ramanujan55-pd",
        "jacobi-cubes",
    ] {
        let identity = identities::by_name(name).expect("registered identity");
        assert_eq!(identity.verify(1000).unwrap(), 1001, "{name}");
    }
    println!("PASS c08: all six named identity residuals vanish to order 1000");
}

#[test]
fn c09_oracle_equivalence_suite() {
    // (a) Sum form vs product form of the capsid generating function.
    let specs = [
        CapsidSpec::from_mk(5, 1).unwrap(),
        CapsidSpec::from_mk(5, 4).unwrap(),
        CapsidSpec::from_mk(10, 3).unwrap(),
        CapsidSpec::new(5, 1, 2).unwrap(),
        CapsidSpec::new(7, 2, 4).unwrap(),
    ];
    for spec in &specs {
        assert_eq!(
            capsid_series_sum(spec, 300),
            capsid_series(spec, 300),
            "sum vs product for ({}, {}, {})",
            spec.m(),
            spec.r1(),
            spec.r2()
        );
    }

    // (b) Enumeration vs series coefficients: capsids to 40, t-cores to 25.
    for (m, k) in [(5, 1), (5, 4)] {
        let series = qcapsid::qseries::capsid_series_product(m, k, 40).unwrap();
        for n in 0..=40u64 {
            assert_eq!(
                int(mk_capsid_count(m, k, n).unwrap() as i64),
                series.integer_coeff(n as usize),
                "({m},{k})-capsids of {n}"
            );
        }
    }
    let general = CapsidSpec::new(5, 1, 2).unwrap();
    let general_series = capsid_series(&general, 40);
    for n in 0..=40u64 {
        assert_eq!(
            int(capsid_partitions(&general, n).len() as i64),
            general_series.integer_coeff(n as usize)
        );
    }
    for t in [3u64, 5, 7] {
        let series = tcore_series(t, 25).unwrap();
        for n in 0..=25u64 {
            assert_eq!(
                int(t_core_count(t, n) as i64),
                series.integer_coeff(n as usize),
                "{t}-cores of {n}"
            );
        }
    }

    // (c) Vector-partition counts vs their series.
    for name in ["A", "B", "D", "E"] {
        let fam = family(name);
        let series = fam.series(40);
        for n in 0..=40u64 {
            assert_eq!(
                direct_count(&fam, n).unwrap(),
                series.integer_coeff(n as usize),
                "{name}({n})"
            );
        }
    }
    for name in ["U", "V", "W"] {
        let fam = family(name);
        let series = fam.series(20);
        for n in 0..=20u64 {
            assert_eq!(
                direct_count(&fam, n).unwrap(),
                series.integer_coeff(n as usize),
                "{name}({n})"
            );
        }
    }

    // (d) The involution is a weight-preserving, profile-reversing
    // bijection on every capsid of weight at most 60, for three families.
    let mut involution_facts = 0;
    for spec in [
        CapsidSpec::new(5, 1, 2).unwrap(),
        CapsidSpec::from_mk(5, 1).unwrap(),
        CapsidSpec::from_mk(5, 4).unwrap(),
    ] {
        involution_facts += bijection::verify_involution(&spec, 60).unwrap();
    }

    // (e) Refined symmetry: gamma(m,r1,r2 | a,b,n) = gamma(m,r2,r1 | b,a,n).
    for spec in [CapsidSpec::new(5, 1, 2).unwrap(), CapsidSpec::new(7, 2, 4).unwrap()] {
        let lhs = refined_capsid_series(&spec, 40);
        let rhs = refined_capsid_series(&spec.swapped(), 40);
        for n in 0..=40 {
            for (&(a, b), c) in lhs.q_coefficient(n) {
                assert_eq!(rhs.coefficient(b, a, n), *c, "gamma symmetry at n = {n}");
            }
            for (&(b, a), c) in rhs.q_coefficient(n) {
                assert_eq!(lhs.coefficient(a, b, n), *c, "gamma symmetry at n = {n}");
            }
        }
    }

    println!(
        "PASS c09: sum/product, enumeration/series, count/series, involution ({involution_facts} facts), and refined symmetry all agree"
    );
}

#[test]
fn c10_eisenstein_routes_match_to_200() {
    let reference = eta24(200);
    for method in [
        TauMethod::EisensteinE4E6,
        TauMethod::EisensteinE12,
        TauMethod::DivisorSums,
    ] {
        let series = tau::tau_series(method, 200, 4096).unwrap();
        assert_eq!(series, reference, "{method} vs eta24");
        assert!(series.is_integral());
    }
    println!("PASS c10: the E4/E6, E12, and divisor-sum routes reproduce the tau series to order 200");
}

#[test]
fn c11_multiplicativity_spot_checks() {
    assert_eq!(tau(6).unwrap(), int(-6048));
    assert_eq!(tau(6).unwrap(), tau(2).unwrap() * tau(3).unwrap());
    assert_eq!(tau(10).unwrap(), tau(2).unwrap() * tau(5).unwrap());
    assert_eq!(tau(15).unwrap(), tau(3).unwrap() * tau(5).unwrap());
    println!("PASS c11: tau(6) = tau(2)tau(3) = -6048, tau(10) = tau(2)tau(5), tau(15) = tau(3)tau(5)");
}

/// Guards the suite itself: every partition visitor used above really
/// enumerates all partitions (checked against the Euler product at a
/// weight big enough to matter).
#[test]
fn enumeration_sanity_for_the_suite() {
    let mut count = 0u64;
    for_each_partition(30, |_| count += 1);
    let p = qcapsid::qseries::euler_series(30)
        .invert()
        .unwrap()
        .integer_coeff(30);
    assert_eq!(int(count as i64), p);
    assert_eq!(count, 5604);
}
