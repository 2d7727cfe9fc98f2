//! Vector partitions: Cartesian products of capsid, t-core, and
//! residue-restricted partition families with weighted total size.
//!
//! A [`VectorFamily`] is a list of components; a vector partition of `n` is
//! one partition per component whose scaled weights sum to `n` (each
//! component carries a `scale` multiplier). The counting function of a
//! family is the coefficient sequence of the product of the component
//! generating functions with `q -> q^scale` applied per component.
//!
//! The seven predefined families (`A`, `B`, `U`, `V`, `W`, `D`, `E`) are the
//! ones whose counting functions assemble Ramanujan's tau function and the
//! triangular-number pattern in [`crate::tau`].
//!
//! Counting conventions follow from the series: `count(0) = 1` (the empty
//! vector partition) and `count(n) = 0` for `n < 0`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{for_each_partition, mk_capsid_count, t_core_count};
use crate::qseries::{
    capsid_series_product, residue_class_series, tcore_series, validate_residue_classes,
};
use crate::series::TruncatedSeries;

/// One factor of a vector-partition family.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentKind {
    /// Classical `(m, k)`-capsid partitions. `k = m/2` is rejected: there
    /// the generating function counts anchored decompositions rather than
    /// partitions, so it cannot define a partition family.
    MkCapsid { m: u64, k: u64 },
    /// `t`-core partitions.
    TCore { t: u64 },
    /// Partitions whose parts are congruent to one of `residues` mod
    /// `modulus`.
    ResidueClasses { modulus: u64, residues: Vec<u64> },
}

impl ComponentKind {
    fn validate(&self) -> Result<()> {
        match self {
            ComponentKind::MkCapsid { m, k } => {
                if *m < 2 || *k == 0 || k >= m {
                    return Err(Error::InvalidArgument(format!(
                        "capsid component requires m >= 2 and 0 < k < m, got m={m}, k={k}"
                    )));
                }
                if 2 * k == *m {
                    return Err(Error::InvalidArgument(format!(
                        "capsid component with k = m/2 = {k} does not define a partition family"
                    )));
                }
                Ok(())
            }
            ComponentKind::TCore { t } => {
                if *t < 2 {
                    return Err(Error::InvalidArgument(format!(
                        "t-core component requires t >= 2, got t={t}"
                    )));
                }
                Ok(())
            }
            ComponentKind::ResidueClasses { modulus, residues } => {
                validate_residue_classes(*modulus, residues)
            }
        }
    }

    /// The component's generating function before scaling.
    fn base_series(&self, order: usize) -> TruncatedSeries {
        match self {
            ComponentKind::MkCapsid { m, k } => {
                capsid_series_product(*m, *k, order).expect("validated on construction")
            }
            ComponentKind::TCore { t } => {
                tcore_series(*t, order).expect("validated on construction")
            }
            ComponentKind::ResidueClasses { modulus, residues } => {
                residue_class_series(*modulus, residues, order).expect("validated on construction")
            }
        }
    }

    /// Counts members of weight `n` by exhaustive enumeration — an oracle
    /// for the generating function, used by [`direct_count`].
    fn enumerated_count(&self, n: u64) -> u64 {
        match self {
            ComponentKind::MkCapsid { m, k } => {
                mk_capsid_count(*m, *k, n).expect("validated on construction")
            }
            ComponentKind::TCore { t } => t_core_count(*t, n),
            ComponentKind::ResidueClasses { modulus, residues } => {
                let mut count = 0;
                for_each_partition(n, |parts| {
                    if parts.iter().all(|p| residues.contains(&(p % modulus))) {
                        count += 1;
                    }
                });
                count
            }
        }
    }
}

fn default_scale() -> u64 {
    1
}

/// A component together with its weight multiplier: member partitions
/// contribute `scale * weight` to the total size of a vector partition.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Component {
    #[serde(flatten)]
    pub kind: ComponentKind,
    /// Weight multiplier (equivalently, `q -> q^scale` in the generating
    /// function). Defaults to 1 when absent in JSON.
    #[serde(default = "default_scale")]
    pub scale: u64,
}

impl Component {
    pub fn new(kind: ComponentKind, scale: u64) -> Result<Self> {
        if scale == 0 {
            return Err(Error::InvalidArgument(
                "component scale must be at least 1".to_string(),
            ));
        }
        kind.validate()?;
        Ok(Self { kind, scale })
    }

    /// The component's generating function in the family's variable, i.e.
    /// the base series with `q -> q^scale`, truncated at `order`. Base
    /// series are cached globally per `(kind, base order)`.
    fn series(&self, order: usize) -> TruncatedSeries {
        let base_order = order / self.scale.max(1) as usize;
        let key = format!(
            "component:{}:{}",
            serde_json::to_string(&self.kind).expect("component kinds serialize"),
            base_order
        );
        let base = cache_get_or_compute(&key, || self.kind.base_series(base_order));
        base.substitute_power_to(self.scale as usize, order)
            .expect("base order covers every visible coefficient")
    }
}

/// A named Cartesian product of components.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VectorFamily {
    name: String,
    components: Vec<Component>,
}

impl VectorFamily {
    /// Builds and validates a family. An empty component list is the empty
    /// product (its only vector partition is the empty one, of size 0).
    pub fn new(name: impl Into<String>, components: Vec<Component>) -> Result<Self> {
        for c in &components {
            if c.scale == 0 {
                return Err(Error::InvalidArgument(
                    "component scale must be at least 1".to_string(),
                ));
            }
            c.kind.validate()?;
        }
        Ok(Self {
            name: name.into(),
            components,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Parses the JSON description, e.g.
    /// `{"name":"A","components":[{"kind":"mk_capsid","m":10,"k":2,"scale":1},
    /// {"kind":"t_core","t":11,"scale":10}]}`. All numeric domains are
    /// validated after deserialization.
    pub fn from_json(s: &str) -> Result<Self> {
        let parsed: VectorFamily =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(parsed.name, parsed.components)
    }

    /// Serializes to the JSON form accepted by [`VectorFamily::from_json`].
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("families serialize")
    }

    /// `1 + sum_{n >= 1} count(n) q^n`, truncated at `order`. Equal
    /// components are grouped and raised to their power rather than
    /// multiplied one by one; the assembled product is cached globally.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        let key = format!(
            "family:{}:{}",
            serde_json::to_string(&self.components).expect("components serialize"),
            order
        );
        cache_get_or_compute(&key, || {
            let mut groups: Vec<(&Component, u64)> = Vec::new();
            for c in &self.components {
                match groups.iter_mut().find(|(g, _)| *g == c) {
                    Some((_, count)) => *count += 1,
                    None => groups.push((c, 1)),
                }
            }
            let mut out = TruncatedSeries::one(order);
            for (component, count) in groups {
                let factor = component.series(order).pow(count);
                out = out.mul(&factor).expect("orders match by construction");
            }
            out.expect_integral("vector family series")
        })
    }

    /// The number of vector partitions of `n` in this family. Negative
    /// sizes count zero; `count(0)` is 1 (the empty vector partition).
    pub fn count(&self, n: i64) -> BigInt {
        if n < 0 {
            return BigInt::zero();
        }
        let n = n as usize;
        self.series(n).integer_coeff(n)
    }
}

/// Counts vector partitions of `n` by enumerating the component partitions
/// and convolving the counts — sharing no code with the `q`-series path, so
/// the two can cross-check each other. Exhaustive enumeration limits this
/// to `n <= 60`.
pub fn direct_count(family: &VectorFamily, n: u64) -> Result<BigInt> {
    if n > 60 {
        return Err(Error::InvalidArgument(format!(
            "direct_count enumerates partitions exhaustively and is limited to n <= 60, got {n}"
        )));
    }
    let n = n as usize;
    // Component counts are pure functions of (kind, weight); memoize across
    // repeated components.
    let mut memo: HashMap<(&ComponentKind, u64), BigInt> = HashMap::new();
    let mut dp = vec![BigInt::zero(); n + 1];
    dp[0] = BigInt::one();
    for component in &family.components {
        let scale = component.scale as usize;
        let mut next = vec![BigInt::zero(); n + 1];
        for j in 0..=(n / scale) {
            let count = memo
                .entry((&component.kind, j as u64))
                .or_insert_with(|| BigInt::from(component.kind.enumerated_count(j as u64)))
                .clone();
            if count.is_zero() {
                continue;
            }
            for w in (j * scale)..=n {
                if !dp[w - j * scale].is_zero() {
                    next[w] += &dp[w - j * scale] * &count;
                }
            }
        }
        dp = next;
    }
    Ok(dp.pop().expect("dp has n+1 entries"))
}

/// The names of the built-in families, in their conventional order.
pub fn predefined_names() -> &'static [&'static str] {
    &["A", "B", "U", "V", "W", "D", "E"]
}

/// Looks up a built-in family by name (case-insensitive).
pub fn predefined(name: &str) -> Option<VectorFamily> {
    let mk = |m, k, scale| Component::new(ComponentKind::MkCapsid { m, k }, scale).unwrap();
    let tc = |t, scale| Component::new(ComponentKind::TCore { t }, scale).unwrap();
    let res = |modulus, residues: &[u64], scale| {
        Component::new(
            ComponentKind::ResidueClasses {
                modulus,
                residues: residues.to_vec(),
            },
            scale,
        )
        .unwrap()
    };
    let repeat = |c: Component, times: usize| std::iter::repeat(c).take(times);

    let components = match name.to_ascii_uppercase().as_str() {
        "A" => vec![mk(10, 2, 1), mk(10, 3, 1), mk(10, 1, 11), mk(10, 4, 11), tc(11, 10), tc(11, 10)],
        "B" => vec![mk(10, 1, 1), mk(10, 4, 1), mk(10, 2, 11), mk(10, 3, 11), tc(11, 10), tc(11, 10)],
        "U" => [mk(10, 2, 1), mk(10, 3, 1)]
            .into_iter()
            .chain(repeat(mk(10, 1, 1), 11))
            .chain(repeat(mk(10, 4, 1), 11))
            .collect(),
        "V" => [mk(10, 1, 1), mk(10, 4, 1)]
            .into_iter()
            .chain(repeat(mk(10, 2, 1), 11))
            .chain(repeat(mk(10, 3, 1), 11))
            .collect(),
        "W" => repeat(mk(10, 1, 1), 6)
            .chain(repeat(mk(10, 4, 1), 6))
            .chain(repeat(mk(10, 2, 1), 6))
            .chain(repeat(mk(10, 3, 1), 6))
            .collect(),
        "D" => vec![
            mk(13, 2, 1),
            mk(13, 5, 1),
            mk(13, 6, 1),
            res(13, &[1, 3, 4, 9, 10, 12], 3),
        ],
        "E" => vec![
            mk(13, 1, 1),
            mk(13, 3, 1),
            mk(13, 4, 1),
            res(13, &[2, 5, 6, 7, 8, 11], 3),
        ],
        _ => return None,
    };
    let name = name.to_ascii_uppercase();
    Some(VectorFamily::new(name, components).expect("built-in families are valid"))
}

/// Global cache of computed series, shared by all families in the process.
/// Values are cloned out; computation happens outside the lock (a cache
/// race recomputes a value instead of deadlocking).
fn cache_get_or_compute(key: &str, compute: impl FnOnce() -> TruncatedSeries) -> TruncatedSeries {
    static CACHE: OnceLock<Mutex<HashMap<String, TruncatedSeries>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache lock").get(key) {
        return hit.clone();
    }
    let value = compute();
    cache
        .lock()
        .expect("cache lock")
        .insert(key.to_string(), value.clone());
    value
}
