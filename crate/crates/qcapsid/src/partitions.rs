//! Integer partitions in multiplicity form, capsid membership predicates,
//! and exhaustive enumeration.
//!
//! A [`Partition`] stores `part -> multiplicity` in a sorted map, so all the
//! structural operations (conjugation, membership tests, the bijection in
//! [`crate::bijection`]) run in time proportional to the number of *distinct*
//! parts. That keeps parsed input with huge multiplicities safe to handle;
//! only the explicitly documented materializing helpers are proportional to
//! the number of parts or to the weight.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integer partition, stored as multiplicities of its distinct parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: BTreeMap<u64, u64>,
    weight: u64,
}

impl Partition {
    /// The empty partition (the unique partition of 0).
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from a list of parts in any order.
    /// Rejects zero parts and weights exceeding `u64::MAX`.
    pub fn from_parts(parts: &[u64]) -> Result<Self> {
        Self::from_multiplicities(parts.iter().map(|&p| (p, 1)))
    }

    /// Builds a partition from `(part, multiplicity)` pairs. Pairs may repeat
    /// (multiplicities accumulate) and zero multiplicities are ignored.
    /// Rejects zero parts and weights exceeding `u64::MAX`.
    pub fn from_multiplicities(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut parts: BTreeMap<u64, u64> = BTreeMap::new();
        let mut weight: u128 = 0;
        for (part, mult) in pairs {
            if mult == 0 {
                continue;
            }
            if part == 0 {
                return Err(Error::InvalidArgument(
                    "partitions cannot contain the part 0".to_string(),
                ));
            }
            weight += u128::from(part) * u128::from(mult);
            if weight > u128::from(u64::MAX) {
                return Err(Error::InvalidArgument(
                    "partition weight exceeds u64::MAX".to_string(),
                ));
            }
            let slot = parts.entry(part).or_insert(0);
            *slot = slot.checked_add(mult).ok_or_else(|| {
                Error::InvalidArgument("part multiplicity exceeds u64::MAX".to_string())
            })?;
        }
        Ok(Self {
            parts,
            weight: weight as u64,
        })
    }

    /// The sum of all parts.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// The number of parts, counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.parts.values().sum()
    }

    /// True for the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// How many times `part` occurs.
    pub fn multiplicity(&self, part: u64) -> u64 {
        self.parts.get(&part).copied().unwrap_or(0)
    }

    /// The distinct parts in ascending order, with their multiplicities.
    /// The iterator is double-ended, so `.rev()` walks them descending.
    pub fn distinct_parts(&self) -> impl DoubleEndedIterator<Item = (u64, u64)> + '_ {
        self.parts.iter().map(|(&p, &m)| (p, m))
    }

    /// The largest part, if any.
    pub fn largest_part(&self) -> Option<u64> {
        self.parts.keys().next_back().copied()
    }

    /// The smallest part, if any.
    pub fn smallest_part(&self) -> Option<u64> {
        self.parts.keys().next().copied()
    }

    /// All parts in descending order, repeated per multiplicity.
    ///
    /// Materializes one entry per part: only use this when the number of
    /// parts is known to be small (it is unbounded for parsed input).
    pub fn parts_descending(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (&p, &m) in self.parts.iter().rev() {
            out.extend(std::iter::repeat(p).take(m as usize));
        }
        out
    }

    /// The conjugate partition (reflect the Young diagram across its main
    /// diagonal). Runs in time linear in the number of distinct parts.
    pub fn conjugate(&self) -> Partition {
        let mut out: BTreeMap<u64, u64> = BTreeMap::new();
        let mut count_ge = 0u64; // number of parts >= the current distinct part
        let mut iter = self.parts.iter().rev().peekable();
        while let Some((&part, &mult)) = iter.next() {
            count_ge += mult;
            let next_part = iter.peek().map(|(&p, _)| p).unwrap_or(0);
            // Columns of height `count_ge` appear once per column index in
            // (next_part, part], i.e. with multiplicity part - next_part.
            out.insert(count_ge, part - next_part);
        }
        Partition {
            parts: out,
            weight: self.weight,
        }
    }

    /// Hook lengths of the Young diagram, row by row (largest part first).
    ///
    /// Materializes one entry per cell, i.e. memory proportional to the
    /// weight: only use this for small partitions.
    pub fn hook_lengths(&self) -> Vec<Vec<u64>> {
        let rows = self.parts_descending();
        let cols = self.conjugate().parts_descending();
        rows.iter()
            .enumerate()
            .map(|(i, &row_len)| {
                (0..row_len as usize)
                    .map(|j| row_len - j as u64 + cols[j] - i as u64 - 1)
                    .collect()
            })
            .collect()
    }

    /// True if no hook length is divisible by `t`. Panics if `t == 0`.
    /// Cost is proportional to the weight (see [`Partition::hook_lengths`]).
    pub fn is_t_core(&self, t: u64) -> bool {
        assert!(t >= 1, "is_t_core requires t >= 1");
        self.hook_lengths()
            .iter()
            .all(|row| row.iter().all(|h| h % t != 0))
    }
}

impl fmt::Display for Partition {
    /// Multiplicity notation with ascending parts: `(1^3,5,15^2,22,27)`,
    /// `(16)`, and `()` for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (&part, &mult)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if mult == 1 {
                write!(f, "{part}")?;
            } else {
                write!(f, "{part}^{mult}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses multiplicity notation. Accepted forms:
    ///
    /// - parenthesized or bare: `(6,5^2)` or `6,5^2`
    /// - `,` or `+` separators: `11+5` equals `(11,5)`
    /// - repeated parts accumulate: `5,5` equals `5^2`
    /// - whitespace around tokens is ignored; `()` is the empty partition
    ///
    /// Parts and multiplicities must be positive integers; the total weight
    /// must fit in a `u64`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let (inner, parenthesized) = if let Some(rest) = trimmed.strip_prefix('(') {
            let inner = rest.strip_suffix(')').ok_or_else(|| {
                Error::Parse(format!("unbalanced parentheses in partition {trimmed:?}"))
            })?;
            (inner.trim(), true)
        } else {
            (trimmed, false)
        };
        if inner.is_empty() {
            return if parenthesized {
                Ok(Self::empty())
            } else {
                Err(Error::Parse(
                    "empty partition literal; write the empty partition as \"()\"".to_string(),
                ))
            };
        }
        let mut pairs = Vec::new();
        for token in inner.split([',', '+']) {
            let token = token.trim();
            let (part_str, mult_str) = match token.split_once('^') {
                Some((p, e)) => (p.trim(), Some(e.trim())),
                None => (token, None),
            };
            let part: u64 = part_str
                .parse()
                .map_err(|_| Error::Parse(format!("invalid part {token:?}")))?;
            let mult: u64 = match mult_str {
                Some(e) => e
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid multiplicity {token:?}")))?,
                None => 1,
            };
            if part == 0 {
                return Err(Error::Parse("partitions cannot contain the part 0".to_string()));
            }
            if mult == 0 {
                return Err(Error::Parse(format!(
                    "zero multiplicity in {token:?}; omit the part instead"
                )));
            }
            pairs.push((part, mult));
        }
        Self::from_multiplicities(pairs).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Parameters of a generalized capsid family: a modulus `m` and two distinct
/// anchored residues `r1, r2` with `0 < r1, r2 < m`.
///
/// An `(m, r1, r2)`-capsid is a partition whose parts are the number `r1`
/// itself, multiples of `m`, or parts congruent to `r2` modulo `m`, subject
/// to the anchoring conditions checked by [`is_capsid`]. The classical
/// `(m, k)` family corresponds to `r1 = m - k`, `r2 = k`; for `k = m/2`
/// those coincide, and the classical functions [`is_mk_capsid`] /
/// [`mk_capsid_partitions`] must be used instead.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CapsidSpec {
    m: u64,
    r1: u64,
    r2: u64,
}

impl CapsidSpec {
    /// Validates `m >= 2`, `0 < r1, r2 < m`, and `r1 != r2`.
    pub fn new(m: u64, r1: u64, r2: u64) -> Result<Self> {
        if m < 2 || r1 == 0 || r1 >= m || r2 == 0 || r2 >= m {
            return Err(Error::InvalidArgument(format!(
                "capsid residues must satisfy m >= 2 and 0 < r1, r2 < m, got m={m}, r1={r1}, r2={r2}"
            )));
        }
        if r1 == r2 {
            return Err(Error::InvalidArgument(format!(
                "capsid residues must be distinct, got r1 = r2 = {r1} (mod {m})"
            )));
        }
        Ok(Self { m, r1, r2 })
    }

    /// The classical `(m, k)` family as a generalized spec with `r1 = m - k`
    /// and `r2 = k`. Fails when `k = m/2` (use the `mk`-specific functions,
    /// which handle the coincident residue correctly).
    pub fn from_mk(m: u64, k: u64) -> Result<Self> {
        if m < 2 || k == 0 || k >= m {
            return Err(Error::InvalidArgument(format!(
                "classical capsids require m >= 2 and 0 < k < m, got m={m}, k={k}"
            )));
        }
        if 2 * k == m {
            return Err(Error::InvalidArgument(format!(
                "k = m/2 = {k} has coincident residues; use the mk-specific functions"
            )));
        }
        Self::new(m, m - k, k)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn r1(&self) -> u64 {
        self.r1
    }

    pub fn r2(&self) -> u64 {
        self.r2
    }

    /// The spec with the two residues exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            m: self.m,
            r1: self.r2,
            r2: self.r1,
        }
    }

    /// True when `r1 + r2 = m`, i.e. the spec is a classical `(m, k)` family.
    pub fn is_classical(&self) -> bool {
        self.r1 + self.r2 == self.m
    }
}

/// Core membership check shared by the generalized and classical predicates.
///
/// Each part is classified in order: the exact value `r1` is the anchor;
/// otherwise multiples of `m` form the zero class and parts congruent to
/// `r2` mod `m` form the residue class; anything else disqualifies. (When
/// `r1` is congruent to `r2` — the classical `k = m/2` case — classifying
/// the anchor first is what exempts it from the residue-class constraint.)
/// The anchoring conditions are:
///
/// - anchor absent: the zero class must be empty;
/// - anchor present with multiplicity `a`: `r1` is the smallest part, the
///   zero class stays `<= m*a`, and the residue class stays `> m*a`.
fn capsid_check(
    m: u64,
    r1: u64,
    r2: u64,
    anchor_mult: u64,
    smallest: Option<u64>,
    distinct_parts: impl IntoIterator<Item = u64>,
) -> bool {
    let bound = u128::from(m) * u128::from(anchor_mult);
    for part in distinct_parts {
        if part == r1 {
            continue;
        }
        if part % m == 0 {
            if anchor_mult == 0 || u128::from(part) > bound {
                return false;
            }
        } else if part % m == r2 % m {
            if anchor_mult > 0 && u128::from(part) <= bound {
                return false;
            }
        } else {
            return false;
        }
    }
    if anchor_mult > 0 {
        if let Some(s) = smallest {
            if s < r1 {
                return false;
            }
        }
    }
    true
}

/// Whether `p` is an `(m, r1, r2)`-capsid (see [`CapsidSpec`]).
pub fn is_capsid(spec: &CapsidSpec, p: &Partition) -> bool {
    capsid_check(
        spec.m,
        spec.r1,
        spec.r2,
        p.multiplicity(spec.r1),
        p.smallest_part(),
        p.distinct_parts().map(|(part, _)| part),
    )
}

/// Whether `p` is a classical `(m, k)`-capsid, for any `0 < k < m` including
/// `k = m/2`: parts are congruent to 0 or `k` mod `m` or equal to the anchor
/// `m - k`, with the same anchoring conditions as the generalized form.
pub fn is_mk_capsid(m: u64, k: u64, p: &Partition) -> Result<bool> {
    if m < 2 || k == 0 || k >= m {
        return Err(Error::InvalidArgument(format!(
            "classical capsids require m >= 2 and 0 < k < m, got m={m}, k={k}"
        )));
    }
    let r1 = m - k;
    Ok(capsid_check(
        m,
        r1,
        k,
        p.multiplicity(r1),
        p.smallest_part(),
        p.distinct_parts().map(|(part, _)| part),
    ))
}

/// The refined statistics of a capsid: `Some((a, b))` where `a` is the
/// multiplicity of the anchor `r1` and `b` the number of parts congruent to
/// `r2` mod `m` (with multiplicity), or `None` if `p` is not a capsid for
/// this spec. These are the two exponents tracked by
/// [`crate::trivariate::refined_capsid_series`], and the bijection in
/// [`crate::bijection`] exchanges them.
pub fn capsid_profile(spec: &CapsidSpec, p: &Partition) -> Option<(u64, u64)> {
    if !is_capsid(spec, p) {
        return None;
    }
    let a = p.multiplicity(spec.r1);
    let b = p
        .distinct_parts()
        .filter(|&(part, _)| part % spec.m == spec.r2)
        .map(|(_, mult)| mult)
        .sum();
    Some((a, b))
}

/// Calls `f` once per partition of `n`, passing the parts in descending
/// order. Partitions are visited in ascending lexicographic order of those
/// descending part lists: for `n = 4` the order is `[1,1,1,1]`, `[2,1,1]`,
/// `[2,2]`, `[3,1]`, `[4]`.
///
/// The number of partitions grows subexponentially (p(60) is already close
/// to a million); callers are responsible for keeping `n` reasonable.
pub fn for_each_partition(n: u64, mut f: impl FnMut(&[u64])) {
    fn rec(remaining: u64, cap: u64, buf: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if remaining == 0 {
            f(buf);
            return;
        }
        for first in 1..=cap.min(remaining) {
            buf.push(first);
            rec(remaining - first, first, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::new();
    rec(n, n.max(1), &mut buf, &mut f);
}

/// Classifies a descending part list the same way [`is_capsid`] classifies a
/// [`Partition`]; used to filter enumeration output without building maps.
fn slice_is_capsid(m: u64, r1: u64, r2: u64, parts_desc: &[u64]) -> bool {
    let anchor_mult = parts_desc.iter().filter(|&&p| p == r1).count() as u64;
    let smallest = parts_desc.last().copied();
    let distinct = parts_desc
        .iter()
        .enumerate()
        .filter(|&(i, &p)| i == 0 || parts_desc[i - 1] != p)
        .map(|(_, &p)| p);
    capsid_check(m, r1, r2, anchor_mult, smallest, distinct)
}

/// All `(m, r1, r2)`-capsid partitions of `n`, in the enumeration order of
/// [`for_each_partition`]. Exhaustive filter over all partitions of `n` —
/// intended as a reference implementation for moderate `n`.
pub fn capsid_partitions(spec: &CapsidSpec, n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |parts| {
        if slice_is_capsid(spec.m, spec.r1, spec.r2, parts) {
            out.push(Partition::from_parts(parts).expect("enumerated parts are valid"));
        }
    });
    out
}

/// All classical `(m, k)`-capsid partitions of `n` (any `0 < k < m`,
/// including `k = m/2`), in enumeration order.
pub fn mk_capsid_partitions(m: u64, k: u64, n: u64) -> Result<Vec<Partition>> {
    if m < 2 || k == 0 || k >= m {
        return Err(Error::InvalidArgument(format!(
            "classical capsids require m >= 2 and 0 < k < m, got m={m}, k={k}"
        )));
    }
    let r1 = m - k;
    let mut out = Vec::new();
    for_each_partition(n, |parts| {
        if slice_is_capsid(m, r1, k, parts) {
            out.push(Partition::from_parts(parts).expect("enumerated parts are valid"));
        }
    });
    Ok(out)
}

/// The number of classical `(m, k)`-capsid partitions of `n`, by exhaustive
/// enumeration (no partitions are materialized).
pub fn mk_capsid_count(m: u64, k: u64, n: u64) -> Result<u64> {
    if m < 2 || k == 0 || k >= m {
        return Err(Error::InvalidArgument(format!(
            "classical capsids require m >= 2 and 0 < k < m, got m={m}, k={k}"
        )));
    }
    let r1 = m - k;
    let mut count = 0;
    for_each_partition(n, |parts| {
        if slice_is_capsid(m, r1, k, parts) {
            count += 1;
        }
    });
    Ok(count)
}

/// The number of `t`-core partitions of `n`, by exhaustive enumeration and
/// hook inspection. Panics if `t == 0`.
pub fn t_core_count(t: u64, n: u64) -> u64 {
    assert!(t >= 1, "t_core_count requires t >= 1");
    let mut count = 0;
    for_each_partition(n, |parts| {
        if slice_is_t_core(parts, t) {
            count += 1;
        }
    });
    count
}

/// Hook check on a descending part list: true if no hook length is
/// divisible by `t`.
fn slice_is_t_core(parts_desc: &[u64], t: u64) -> bool {
    // Column heights: cols[j] = number of rows with at least j+1 cells.
    let width = parts_desc.first().copied().unwrap_or(0) as usize;
    let mut cols = vec![0u64; width];
    for &row in parts_desc {
        for c in cols.iter_mut().take(row as usize) {
            *c += 1;
        }
    }
    parts_desc.iter().enumerate().all(|(i, &row_len)| {
        (0..row_len as usize).all(|j| (row_len - j as u64 + cols[j] - i as u64 - 1) % t != 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{capsid_series, capsid_series_product, tcore_series};
    use crate::rational::rat_int;
    use proptest::prelude::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn construction_tracks_weight_length_and_multiplicities() {
        let x = p(&[5, 1, 5, 3]);
        assert_eq!(x.weight(), 14);
        assert_eq!(x.len(), 4);
        assert_eq!(x.multiplicity(5), 2);
        assert_eq!(x.multiplicity(2), 0);
        assert_eq!(x.largest_part(), Some(5));
        assert_eq!(x.smallest_part(), Some(1));
        assert_eq!(x.parts_descending(), vec![5, 5, 3, 1]);
        assert!(Partition::from_parts(&[3, 0]).is_err());
        assert!(Partition::empty().is_empty());
        assert_eq!(Partition::empty().weight(), 0);
    }

    #[test]
    fn from_multiplicities_accumulates_and_checks_overflow() {
        let x = Partition::from_multiplicities([(5, 2), (5, 1), (2, 0)]).unwrap();
        assert_eq!(x.multiplicity(5), 3);
        assert_eq!(x.multiplicity(2), 0);
        assert_eq!(x.weight(), 15);
        assert!(Partition::from_multiplicities([(u64::MAX, 2)]).is_err());
        assert!(Partition::from_multiplicities([(2, u64::MAX), (2, 1)]).is_err());
    }

    #[test]
    fn display_uses_ascending_multiplicity_notation() {
        assert_eq!(p(&[27, 22, 15, 15, 5, 1, 1, 1]).to_string(), "(1^3,5,15^2,22,27)");
        assert_eq!(p(&[16]).to_string(), "(16)");
        assert_eq!(Partition::empty().to_string(), "()");
    }

    #[test]
    fn parsing_accepts_the_documented_forms() {
        let golden = p(&[27, 22, 15, 15, 5, 1, 1, 1]);
        assert_eq!("(1^3,5,15^2,22,27)".parse::<Partition>().unwrap(), golden);
        assert_eq!(" ( 1^3 , 5 , 15^2 , 22 , 27 ) ".parse::<Partition>().unwrap(), golden);
        assert_eq!("16".parse::<Partition>().unwrap(), p(&[16]));
        assert_eq!("11+5".parse::<Partition>().unwrap(), p(&[11, 5]));
        assert_eq!("5,5".parse::<Partition>().unwrap(), p(&[5, 5]));
        assert_eq!("5^2,5".parse::<Partition>().unwrap(), p(&[5, 5, 5]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("( )".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn parsing_rejects_malformed_input() {
        for bad in [
            "",
            "   ",
            "(",
            ")",
            "(5",
            "5)",
            "(,)",
            "1,,2",
            "5^0",
            "0",
            "0^3",
            "5^",
            "^2",
            "abc",
            "1.5",
            "-3",
            "(1;2)",
            "1 5",
            "5^2^2",
            "18446744073709551616",
            "18446744073709551615^2",
            "9999999999^9999999999",
        ] {
            assert!(bad.parse::<Partition>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        for parts in [vec![], vec![16], vec![11, 5], vec![6, 5, 5], vec![7, 7, 7, 2, 1, 1]] {
            let x = p(&parts);
            assert_eq!(x.to_string().parse::<Partition>().unwrap(), x);
        }
    }

    #[test]
    fn conjugation_matches_hand_examples() {
        assert_eq!(p(&[5, 4, 4, 2, 1]).conjugate(), p(&[5, 4, 3, 3, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[4]).conjugate(), p(&[1, 1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn hook_lengths_match_the_arm_leg_count() {
        let hooks = p(&[4, 2, 1]).hook_lengths();
        assert_eq!(hooks, vec![vec![6, 4, 2, 1], vec![3, 1], vec![1]]);
    }

    #[test]
    fn t_core_flag_matches_hook_divisibility() {
        assert!(p(&[2, 1]).is_t_core(2)); // staircase: hooks {3,1,1}
        assert!(!p(&[2]).is_t_core(2)); // hooks {2,1}
        assert!(p(&[3, 1, 1]).is_t_core(3)); // hooks {5,2,1,2,1}
        assert!(!p(&[3, 1, 1]).is_t_core(5));
        assert!(Partition::empty().is_t_core(2));
    }

    #[test]
    fn t_core_counts_match_the_generating_function() {
        for t in [2u64, 3, 5, 7] {
            let series = tcore_series(t, 18).unwrap();
            for n in 0..=18u64 {
                let count = t_core_count(t, n) as i64;
                assert_eq!(series.coeff(n as usize), &rat_int(count), "t={t}, n={n}");
            }
        }
    }

    #[test]
    fn slice_and_partition_hook_checks_agree() {
        for n in 0..=14u64 {
            for_each_partition(n, |parts| {
                let p = Partition::from_parts(parts).unwrap();
                for t in [2u64, 3, 5] {
                    assert_eq!(slice_is_t_core(parts, t), p.is_t_core(t), "{p} t={t}");
                }
            });
        }
    }

    #[test]
    fn counting_matches_materializing() {
        for n in 0..=20u64 {
            assert_eq!(
                mk_capsid_count(5, 1, n).unwrap(),
                mk_capsid_partitions(5, 1, n).unwrap().len() as u64
            );
        }
        assert!(mk_capsid_count(5, 0, 3).is_err());
    }

    #[test]
    fn spec_validation_rejects_bad_residues() {
        assert!(CapsidSpec::new(5, 1, 2).is_ok());
        assert!(CapsidSpec::new(1, 1, 1).is_err());
        assert!(CapsidSpec::new(5, 0, 2).is_err());
        assert!(CapsidSpec::new(5, 5, 2).is_err());
        assert!(CapsidSpec::new(5, 2, 0).is_err());
        assert!(CapsidSpec::new(5, 2, 7).is_err());
        assert!(CapsidSpec::new(5, 2, 2).is_err());
    }

    #[test]
    fn classical_spec_conversion_and_swapping() {
        let s = CapsidSpec::from_mk(5, 2).unwrap();
        assert_eq!((s.m(), s.r1(), s.r2()), (5, 3, 2));
        assert!(s.is_classical());
        let t = s.swapped();
        assert_eq!((t.r1(), t.r2()), (2, 3));
        assert!(CapsidSpec::from_mk(4, 2).is_err()); // coincident residues
        assert!(CapsidSpec::from_mk(4, 0).is_err());
        assert!(!CapsidSpec::new(7, 2, 4).unwrap().is_classical());
    }

    #[test]
    fn membership_spot_checks_for_the_5_1_family() {
        // (5,1)-capsids: anchor 4, zero class mod 5, residue class 1 mod 5.
        let c = |parts: &[u64]| is_mk_capsid(5, 1, &p(parts)).unwrap();
        assert!(c(&[4, 4, 4, 4])); // anchors only
        assert!(c(&[6, 4])); // residue part above m*a = 5
        assert!(c(&[6])); // no anchor and no zero class
        assert!(c(&[5, 4])); // zero class within m*a
        assert!(c(&[11, 6])); // no anchor, all parts in the residue class
        assert!(c(&[16, 11, 4, 4])); // a = 2: both residue parts above 10
        assert!(!c(&[10, 4])); // zero class above m*a
        assert!(!c(&[4, 1])); // residue part 1 not above m*a
        assert!(!c(&[10])); // zero class without anchor
        assert!(!c(&[6, 4, 2])); // 2 is in no admissible class
        assert!(!c(&[9, 4])); // congruent to the anchor but not equal to it
    }

    #[test]
    fn membership_spot_checks_for_the_5_4_family() {
        // (5,4)-capsids: anchor 1, zero class mod 5, residue class 4 mod 5.
        let c = |parts: &[u64]| is_mk_capsid(5, 4, &p(parts)).unwrap();
        assert!(c(&[4, 4, 4, 4])); // no anchor: all parts in the residue class
        assert!(c(&[9, 4]));
        assert!(c(&[5, 5, 5, 1])); // a = 1: zero class within 5
        assert!(c(&[14, 1, 1])); // a = 2: residue part above 10
        assert!(c(&[9, 1])); // a = 1: residue part above 5
        assert!(!c(&[5, 4])); // zero class without anchor
        assert!(!c(&[4, 1])); // residue part 4 not above m*a = 5
        assert!(!c(&[10, 1])); // zero class above m*a = 5
    }

    #[test]
    fn membership_respects_the_anchor_bound_exactly() {
        // In the (5,1) family with a = 2 anchors of size 4, the zero class
        // may reach 10 and the residue class must exceed 10.
        assert!(is_mk_capsid(5, 1, &p(&[10, 4, 4])).unwrap());
        assert!(!is_mk_capsid(5, 1, &p(&[15, 4, 4])).unwrap());
        assert!(is_mk_capsid(5, 1, &p(&[11, 4, 4])).unwrap());
        assert!(!is_mk_capsid(5, 1, &p(&[6, 4, 4])).unwrap()); // 6 <= 10
    }

    #[test]
    fn membership_handles_the_coincident_residue_family() {
        // (4,2)-capsids: anchor 2, zero class mod 4, residue class 2 mod 4.
        let c = |parts: &[u64]| is_mk_capsid(4, 2, &p(parts)).unwrap();
        assert!(c(&[2, 2])); // anchors are exempt from the residue bound
        assert!(c(&[6, 2])); // 6 > m*a = 4
        assert!(c(&[6, 4, 2]));
        assert!(c(&[6, 6])); // no anchor: all parts in the residue class
        assert!(c(&[4, 2]));
        assert!(!c(&[8, 2])); // zero class above m*a
        assert!(!c(&[4])); // zero class without anchor
        assert!(!c(&[2, 2, 2, 1]));
        assert!(is_mk_capsid(4, 5, &p(&[2])).is_err());
    }

    #[test]
    fn generalized_membership_uses_the_exact_anchor_value() {
        let spec = CapsidSpec::new(5, 1, 2).unwrap();
        assert!(is_capsid(&spec, &p(&[27, 22, 15, 15, 5, 1, 1, 1])));
        assert!(is_capsid(&spec, &p(&[2, 2])));
        assert!(is_capsid(&spec, &p(&[1])));
        assert!(!is_capsid(&spec, &p(&[6]))); // congruent to r1 but not equal to it
        assert!(!is_capsid(&spec, &p(&[6, 1])));
    }

    #[test]
    fn generalized_membership_bound_cases() {
        let spec = CapsidSpec::new(5, 1, 2).unwrap();
        // a = 1: zero class <= 5, residue class > 5.
        assert!(is_capsid(&spec, &p(&[7, 1])));
        assert!(!is_capsid(&spec, &p(&[2, 1]))); // 2 <= 5
        assert!(is_capsid(&spec, &p(&[5, 1])));
        assert!(!is_capsid(&spec, &p(&[10, 1])));
        // a = 2: residue class > 10.
        assert!(!is_capsid(&spec, &p(&[7, 1, 1])));
        assert!(is_capsid(&spec, &p(&[12, 1, 1])));
        assert!(is_capsid(&spec, &p(&[10, 1, 1])));
    }

    #[test]
    fn profiles_report_anchor_and_residue_statistics() {
        let spec = CapsidSpec::new(5, 1, 2).unwrap();
        let golden = p(&[27, 22, 15, 15, 5, 1, 1, 1]);
        assert_eq!(capsid_profile(&spec, &golden), Some((3, 2)));
        assert_eq!(capsid_profile(&spec, &p(&[2, 2])), Some((0, 2)));
        assert_eq!(capsid_profile(&spec, &Partition::empty()), Some((0, 0)));
        assert_eq!(capsid_profile(&spec, &p(&[6])), None);
    }

    #[test]
    fn enumeration_visits_partitions_in_ascending_lex_order() {
        let mut seen = Vec::new();
        for_each_partition(4, |parts| seen.push(parts.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![1, 1, 1, 1],
                vec![2, 1, 1],
                vec![2, 2],
                vec![3, 1],
                vec![4],
            ]
        );
        let mut zero = 0;
        for_each_partition(0, |parts| {
            assert!(parts.is_empty());
            zero += 1;
        });
        assert_eq!(zero, 1);
    }

    #[test]
    fn enumeration_counts_match_the_partition_function() {
        let expected = [
            1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490,
            627,
        ];
        for (n, &pn) in expected.iter().enumerate() {
            let mut count = 0;
            for_each_partition(n as u64, |_| count += 1);
            assert_eq!(count, pn, "p({n})");
        }
    }

    #[test]
    fn capsid_enumeration_matches_series_coefficients() {
        for (m, k) in [(5u64, 1u64), (5, 2), (7, 3), (10, 1), (10, 3)] {
            let series = capsid_series_product(m, k, 25).unwrap();
            for n in 0..=25u64 {
                let count = mk_capsid_partitions(m, k, n).unwrap().len() as i64;
                assert_eq!(series.coeff(n as usize), &rat_int(count), "(m,k)=({m},{k}), n={n}");
            }
        }
    }

    #[test]
    fn generalized_capsid_enumeration_matches_series_coefficients() {
        for (m, r1, r2) in [(5u64, 1u64, 2u64), (7, 2, 4), (10, 3, 1)] {
            let spec = CapsidSpec::new(m, r1, r2).unwrap();
            let series = capsid_series(&spec, 22);
            for n in 0..=22u64 {
                let count = capsid_partitions(&spec, n).len() as i64;
                assert_eq!(
                    series.coeff(n as usize),
                    &rat_int(count),
                    "(m,r1,r2)=({m},{r1},{r2}), n={n}"
                );
            }
        }
    }

    #[test]
    fn coincident_residues_make_the_series_overcount_decompositions() {
        // For k = m/2 the product/sum series counts *anchored decompositions*,
        // not partitions: (2,2) is one partition of 4 but two decompositions
        // (anchor multiplicity 0 or 2), so the counts diverge and the series
        // is deliberately never matched against enumeration in that regime.
        let series = capsid_series_product(4, 2, 6).unwrap();
        assert_eq!(series.coeff(4), &rat_int(2));
        let count = mk_capsid_partitions(4, 2, 4).unwrap().len();
        assert_eq!(count, 1);
    }

    #[test]
    fn golden_capsid_counts_of_sixteen() {
        assert_eq!(mk_capsid_partitions(5, 1, 16).unwrap().len(), 7);
        assert_eq!(mk_capsid_partitions(5, 4, 16).unwrap().len(), 7);
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        proptest::collection::vec((1u64..=40, 1u64..=5), 0..8)
            .prop_map(|pairs| Partition::from_multiplicities(pairs).unwrap())
    }

    proptest! {
        #[test]
        fn conjugation_is_a_weight_preserving_involution(x in arb_partition()) {
            let c = x.conjugate();
            prop_assert_eq!(c.weight(), x.weight());
            prop_assert_eq!(c.conjugate(), x);
        }

        #[test]
        fn conjugation_swaps_length_and_largest_part(x in arb_partition()) {
            let c = x.conjugate();
            prop_assert_eq!(c.largest_part().unwrap_or(0), x.len());
            prop_assert_eq!(c.len(), x.largest_part().unwrap_or(0));
        }

        #[test]
        fn display_parse_round_trip(x in arb_partition()) {
            prop_assert_eq!(x.to_string().parse::<Partition>().unwrap(), x);
        }
    }
}
