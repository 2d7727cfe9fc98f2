//! The profile-swapping bijection between capsid families.
//!
//! For a spec `(m, r1, r2)` the map sends a capsid with profile `(a, b)`
//! (anchor multiplicity and residue-class part count) to an
//! `(m, r2, r1)`-capsid of the same weight with profile `(b, a)`, and it is
//! an involution: applying the map for the swapped spec returns the input.
//! This realizes, partition by partition, the symmetry of the refined
//! generating function in [`crate::trivariate`].
//!
//! The construction works entirely on quotient partitions:
//!
//! 1. divide the zero-class parts by `m` (giving `zero_quotient`), and map
//!    each residue-class part `p` to `(p - r2) / m` (giving
//!    `residue_quotient`; quotient 0 is recorded only in the count `b`);
//! 2. merge the two quotients and conjugate;
//! 3. split the conjugate into its `a` largest parts (`leading`, padded
//!    with zeros if needed) and the rest (`trailing`);
//! 4. reassemble: `b` copies of `r2`, each trailing part times `m`, and
//!    each leading part times `m` plus `r1`.
//!
//! All steps run on multiplicity maps, so cost scales with the number of
//! distinct parts, never with multiplicities or weight.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{capsid_partitions, capsid_profile, is_capsid, CapsidSpec, Partition};

/// A capsid split into its anchor count, residue count, and the two
/// quotient partitions (step 1 above).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CapsidDecomposition {
    /// Multiplicity of the anchor part `r1`.
    pub anchor_multiplicity: u64,
    /// Number of parts congruent to `r2` mod `m`, with multiplicity.
    pub residue_count: u64,
    /// Zero-class parts divided by `m`.
    pub zero_quotient: Partition,
    /// Residue-class parts mapped to `(p - r2) / m`, zero quotients omitted
    /// (they are the difference between `residue_count` and this partition's
    /// part count).
    pub residue_quotient: Partition,
}

/// Splits a capsid into its [`CapsidDecomposition`]. Fails with
/// [`Error::NotACapsid`] if `lambda` is not an `(m, r1, r2)`-capsid.
pub fn decompose(spec: &CapsidSpec, lambda: &Partition) -> Result<CapsidDecomposition> {
    if !is_capsid(spec, lambda) {
        return Err(Error::NotACapsid {
            m: spec.m(),
            r1: spec.r1(),
            r2: spec.r2(),
            partition: lambda.to_string(),
        });
    }
    let (m, r1, r2) = (spec.m(), spec.r1(), spec.r2());
    let mut residue_count = 0u64;
    let mut zero_pairs = Vec::new();
    let mut residue_pairs = Vec::new();
    for (part, mult) in lambda.distinct_parts() {
        if part == r1 {
            continue;
        }
        if part % m == 0 {
            zero_pairs.push((part / m, mult));
        } else {
            residue_count += mult;
            let quotient = (part - r2) / m;
            if quotient > 0 {
                residue_pairs.push((quotient, mult));
            }
        }
    }
    Ok(CapsidDecomposition {
        anchor_multiplicity: lambda.multiplicity(r1),
        residue_count,
        zero_quotient: Partition::from_multiplicities(zero_pairs)
            .expect("quotients of valid parts are valid"),
        residue_quotient: Partition::from_multiplicities(residue_pairs)
            .expect("quotients of valid parts are valid"),
    })
}

/// Rebuilds the capsid a [`CapsidDecomposition`] came from: the inverse of
/// [`decompose`]. Fails if the encoded parts or the total weight overflow
/// `u64`; it does not re-check the capsid conditions.
pub fn compose(spec: &CapsidSpec, d: &CapsidDecomposition) -> Result<Partition> {
    let (m, r1, r2) = (spec.m(), spec.r1(), spec.r2());
    let mut pairs: Vec<(u64, u64)> = vec![
        (r1, d.anchor_multiplicity),
        (r2, d.residue_count - d.residue_quotient.len()),
    ];
    for (part, mult) in d.zero_quotient.distinct_parts() {
        let scaled = part
            .checked_mul(m)
            .ok_or_else(|| Error::InvalidArgument("zero-class part exceeds u64".into()))?;
        pairs.push((scaled, mult));
    }
    for (part, mult) in d.residue_quotient.distinct_parts() {
        let scaled = part
            .checked_mul(m)
            .and_then(|s| s.checked_add(r2))
            .ok_or_else(|| Error::InvalidArgument("residue-class part exceeds u64".into()))?;
        pairs.push((scaled, mult));
    }
    Partition::from_multiplicities(pairs)
}

/// Every intermediate object of one application of the bijection.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BijectionTrace {
    pub spec: CapsidSpec,
    pub input: Partition,
    /// `a`: multiplicity of the anchor `r1` in the input.
    pub anchor_multiplicity: u64,
    /// `b`: number of residue-class parts of the input.
    pub residue_count: u64,
    /// Zero-class parts divided by `m`.
    pub zero_quotient: Partition,
    /// Residue-class parts mapped to `(p - r2)/m`, zero quotients omitted.
    pub residue_quotient: Partition,
    /// How many residue-class parts had quotient zero (parts equal to `r2`).
    pub residue_padding: u64,
    /// The merged quotient partition.
    pub merged: Partition,
    /// Its conjugate.
    pub merged_conjugate: Partition,
    /// The `a` largest parts of the conjugate (zero padding omitted).
    pub leading: Partition,
    /// How many zeros pad `leading` up to `a` parts.
    pub leading_padding: u64,
    /// The remaining parts of the conjugate.
    pub trailing: Partition,
    /// The resulting `(m, r2, r1)`-capsid.
    pub image: Partition,
}

/// Applies the bijection and reports every intermediate step.
pub fn apply_with_trace(spec: &CapsidSpec, lambda: &Partition) -> Result<BijectionTrace> {
    let d = decompose(spec, lambda)?;
    let (m, r1, r2) = (spec.m(), spec.r1(), spec.r2());
    let a = d.anchor_multiplicity;
    let b = d.residue_count;

    let merged = Partition::from_multiplicities(
        d.residue_quotient
            .distinct_parts()
            .chain(d.zero_quotient.distinct_parts()),
    )
    .expect("merged quotient weight is below the input weight");
    let merged_conjugate = merged.conjugate();

    // Split the conjugate into its `a` largest parts and the rest. A run of
    // equal parts may be divided between the two sides.
    let mut leading_pairs = Vec::new();
    let mut trailing_pairs = Vec::new();
    let mut remaining = a;
    for (part, mult) in merged_conjugate.distinct_parts().rev() {
        if remaining == 0 {
            trailing_pairs.push((part, mult));
        } else {
            let taken = mult.min(remaining);
            remaining -= taken;
            leading_pairs.push((part, taken));
            if mult > taken {
                trailing_pairs.push((part, mult - taken));
            }
        }
    }
    let leading_padding = remaining;
    let leading = Partition::from_multiplicities(leading_pairs.iter().copied())
        .expect("a sub-multiset of a valid partition is valid");
    let trailing = Partition::from_multiplicities(trailing_pairs.iter().copied())
        .expect("a sub-multiset of a valid partition is valid");

    // Reassemble. Every scaled part is bounded by the preserved weight, so
    // the u64 conversions cannot fail for a representable input.
    let mut image_pairs: Vec<(u64, u64)> = vec![(r2, b), (r1, leading_padding)];
    for (part, mult) in trailing.distinct_parts() {
        let scaled = u128::from(part) * u128::from(m);
        image_pairs.push((
            u64::try_from(scaled).expect("image parts cannot exceed the preserved weight"),
            mult,
        ));
    }
    for (part, mult) in leading.distinct_parts() {
        let scaled = u128::from(part) * u128::from(m) + u128::from(r1);
        image_pairs.push((
            u64::try_from(scaled).expect("image parts cannot exceed the preserved weight"),
            mult,
        ));
    }
    let image = Partition::from_multiplicities(image_pairs)
        .expect("the image has the same weight as the input");
    debug_assert!(is_capsid(&spec.swapped(), &image));
    debug_assert_eq!(image.weight(), lambda.weight());

    Ok(BijectionTrace {
        spec: *spec,
        input: lambda.clone(),
        anchor_multiplicity: a,
        residue_count: b,
        residue_padding: b - d.residue_quotient.len(),
        zero_quotient: d.zero_quotient,
        residue_quotient: d.residue_quotient,
        merged,
        merged_conjugate,
        leading,
        leading_padding,
        trailing,
        image,
    })
}

/// Applies the bijection: the image is an `(m, r2, r1)`-capsid of the same
/// weight whose profile is the input's profile reversed.
pub fn apply(spec: &CapsidSpec, lambda: &Partition) -> Result<Partition> {
    apply_with_trace(spec, lambda).map(|t| t.image)
}

/// Exhaustively verifies the bijection on every capsid of every weight up to
/// `max_n`: the image must be a capsid for the swapped spec with the same
/// weight and reversed profile, applying the swapped map must return the
/// input, and the two families must have equal counts at every weight.
/// Weights are checked in parallel. Returns the number of capsids checked.
pub fn verify_involution(spec: &CapsidSpec, max_n: u64) -> Result<u64> {
    let swapped = spec.swapped();
    (0..=max_n)
        .into_par_iter()
        .map(|n| -> Result<u64> {
            let forward = capsid_partitions(spec, n);
            let backward = capsid_partitions(&swapped, n);
            if forward.len() != backward.len() {
                return Err(Error::Verification(format!(
                    "family sizes differ at weight {n}: {} vs {}",
                    forward.len(),
                    backward.len()
                )));
            }
            for lambda in &forward {
                let (a, b) = capsid_profile(spec, lambda).expect("enumerated capsids are capsids");
                let image = apply(spec, lambda)?;
                if image.weight() != n {
                    return Err(Error::Verification(format!(
                        "image of {lambda} has weight {}, expected {n}",
                        image.weight()
                    )));
                }
                match capsid_profile(&swapped, &image) {
                    Some((ib, ia)) if (ib, ia) == (b, a) => {}
                    other => {
                        return Err(Error::Verification(format!(
                            "image {image} of {lambda} has profile {other:?}, expected ({b}, {a})"
                        )))
                    }
                }
                let back = apply(&swapped, &image)?;
                if &back != lambda {
                    return Err(Error::Verification(format!(
                        "double application sent {lambda} to {back}"
                    )));
                }
            }
            Ok(forward.len() as u64)
        })
        .try_reduce(|| 0, |x, y| Ok(x + y))
}
