//! Exact partition combinatorics and q-series arithmetic around
//! Ramanujan's tau function.
//!
//! The crate has three layers:
//!
//! * **Series arithmetic** ([`series`], [`rational`]): truncated power
//!   series over exact big rationals, with sparse helpers for the
//!   `(1 - q^e)` factors that dominate everything downstream.
//! * **Combinatorics** ([`partitions`], [`qseries`], [`trivariate`],
//!   [`bijection`]): integer partitions with multiplicity-map storage,
//!   membership tests and enumeration for the anchored "capsid" families,
//!   their one- and three-variable generating functions, and an explicit
//!   weight-preserving involution between complementary capsid families.
//! * **Applications** ([`vector_partitions`], [`identities`], [`tau`]):
//!   vector-partition counting families whose differences collapse to tau
//!   values, a registry of the product identities that make the collapse
//!   happen, and six independent routes to `tau(n)` that can be checked
//!   against one another.
//!
//! All arithmetic is exact; nothing here floats.
//!
//! # Examples
//!
//! ```
//! use qcapsid::tau::{tau, tau_with_budget, TauMethod};
//!
//! // By the definition: coefficient of q^2 in q prod (1 - q^n)^24.
//! assert_eq!(tau(2).unwrap().to_string(), "-24");
//!
//! // The same value as a difference of two vector-partition counts.
//! let by_counting = tau_with_budget(TauMethod::VectorMod110, 2, 110).unwrap();
//! assert_eq!(by_counting.to_string(), "-24");
//! ```
//!
//! ```
//! use qcapsid::partitions::{mk_capsid_count, Partition};
//!
//! // Seven partitions of 16 satisfy the (5,1)-capsid conditions...
//! assert_eq!(mk_capsid_count(5, 1, 16).unwrap(), 7);
//!
//! // ...one of which is (1^5, 11).
//! let p: Partition = "(1^5, 11)".parse().unwrap();
//! assert!(qcapsid::partitions::is_mk_capsid(5, 1, &p).unwrap());
//! ```

pub mod bijection;
pub mod error;
pub mod identities;
pub mod partitions;
pub mod qseries;
pub mod rational;
pub mod series;
pub mod tau;
pub mod trivariate;
pub mod vector_partitions;

pub use error::{Error, Result};
pub use partitions::{CapsidSpec, Partition};
pub use rational::Rat;
pub use series::TruncatedSeries;
pub use tau::{tau, TauMethod};
