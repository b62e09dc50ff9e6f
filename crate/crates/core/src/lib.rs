//! Self-conjugate simultaneous core partitions and free rational Motzkin paths.
//!
//! A self-conjugate partition is encoded by the set of its main-diagonal hook
//! lengths ([`MdSet`]). For coprime `s` and `d`, the `(s+d,d;a)`-abacus places
//! one bead per diagonal hook; its column profile (the abacus function) turns
//! every self-conjugate `(s, s+d, ..., s+pd)`-core into a free rational
//! Motzkin path, and the map is a bijection onto paths avoiding a small family
//! of factors, prefixes and suffixes.
//!
//! Modules:
//! - [`partition`]: diagonal-hook sets, Young diagrams, hook tables, core tests.
//! - [`abacus`]: label arithmetic, bead placement, the abacus function.
//! - [`motzkin`]: paths, the constraint family, enumeration and DP counting.
//! - [`bijection`]: the path map, its inverse, and the corner statistic.
//! - [`formulas`]: exact closed-form counts.
//! - [`oracle`]: brute-force enumerators and the per-instance verifier.

pub mod abacus;
pub mod bijection;
mod error;
pub mod formulas;
pub mod motzkin;
pub mod oracle;
pub mod partition;

pub use abacus::{AbacusFunction, AbacusSpec, AbacusState};
pub use bijection::{CornerStats, MappingRecord, PhiContext};
pub use error::{Error, Result};
pub use formulas::{CountMethod, CountResult};
pub use motzkin::{MotzkinPath, ParityCase, PathConstraintSet, Step};
pub use oracle::{EnumerationTask, VerifyOptions, VerifyReport};
pub use partition::{MdSet, Partition, PartitionRecord, SelfConjugatePartition};

/// Greatest common divisor on the unsigned parameters used throughout.
pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// `(s, s+d, ..., s+pd)`.
pub fn moduli(s: u64, d: u64, p: u32) -> Vec<u64> {
    (0..=u64::from(p)).map(|k| s + k * d).collect()
}
