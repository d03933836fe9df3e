//! Exact DSC coefficients of finite semigroups: the ratio of congruences to
//! diagonal subsemigroups (reflexive compatible relations).
//!
//! Brute-force enumeration handles small Cayley tables. Rees matrix
//! semigroups are counted through linked triples, including a symbolic path
//! over `Z_{p^k}` for huge `k`, and [`constructor`] realizes any rational in
//! `(0, 1)` as a coefficient with a checkable certificate. Clifford
//! semigroups are covered by kernel/trace pairs.

mod bitset;
pub mod clifford;
pub mod constructor;
pub mod corpus;
mod error;
pub mod format;
pub mod groups;
mod par;
mod rational;
pub mod rees;
pub mod relations;
pub mod semigroup;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use rational::ExactRational;

/// Size caps for the exponential paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest semigroup order for relation enumeration.
    pub brute_force_order: usize,
    /// Largest group order for normal-subgroup enumeration.
    pub group_order: usize,
    /// Largest order of a semigroup built as an explicit table.
    pub materialize_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            brute_force_order: 10,
            group_order: groups::GROUP_CAP,
            materialize_order: 200,
        }
    }
}
