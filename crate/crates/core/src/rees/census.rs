//! Counting linked triples per normal subgroup.
//!
//! For a normal subgroup `N`, the relations `S` with `(N, S, Δ)` linked are
//! exactly the relations contained in one maximal equivalence `σ_N`, and
//! dually for `τ_N`. Counting equivalence (resp. reflexive) subrelations of
//! an equivalence only needs its block sizes: `∏ B(a_t)` (resp.
//! `∏ 2^(a_t^2 - a_t)`).

use crate::groups::NormalSubgroup;
use crate::relations::{bell, reflexive_count, Partition};
use crate::semigroup::DscReport;
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Which normal subgroup(s) a census row describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupLabel {
    Concrete(NormalSubgroup),
    /// Chain members `p^m Z_{p^k}` for `from <= m <= to`, all sharing the
    /// same `σ` and `τ`.
    Chain { from: BigUint, to: BigUint },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub label: SubgroupLabel,
    /// Number of normal subgroups covered by this row.
    pub multiplicity: BigUint,
    pub sigma: Partition,
    pub tau: Partition,
    pub e_i: BigUint,
    pub e_lambda: BigUint,
    pub r_i: BigUint,
    pub r_lambda: BigUint,
}

fn counts(p: &Partition) -> Result<(BigUint, BigUint)> {
    let mut e = BigUint::one();
    let mut r = BigUint::one();
    for size in p.block_sizes() {
        e *= bell(size)?;
        r *= reflexive_count(size);
    }
    Ok((e, r))
}

impl CensusRow {
    pub fn new(label: SubgroupLabel, sigma: Partition, tau: Partition) -> Result<Self> {
        let multiplicity = match &label {
            SubgroupLabel::Concrete(_) => BigUint::one(),
            SubgroupLabel::Chain { from, to } => {
                if to < from {
                    return Err(Error::Internal("empty chain span".into()));
                }
                to - from + 1u32
            }
        };
        let (e_i, r_i) = counts(&sigma)?;
        let (e_lambda, r_lambda) = counts(&tau)?;
        Ok(CensusRow {
            label,
            multiplicity,
            sigma,
            tau,
            e_i,
            e_lambda,
            r_i,
            r_lambda,
        })
    }

    /// Linked equivalence triples contributed by this row.
    pub fn equivalence_triples(&self) -> BigUint {
        &self.multiplicity * &self.e_i * &self.e_lambda
    }

    /// Linked reflexive triples contributed by this row.
    pub fn reflexive_triples(&self) -> BigUint {
        &self.multiplicity * &self.r_i * &self.r_lambda
    }
}

/// Census rows ordered from the whole group down to the trivial subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCensus {
    rows: Vec<CensusRow>,
}

impl TripleCensus {
    pub fn from_rows(rows: Vec<CensusRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Internal("census without normal subgroups".into()));
        }
        for row in &rows {
            if row.e_i > row.r_i || row.e_lambda > row.r_lambda {
                return Err(Error::Internal("equivalence count exceeds reflexive count".into()));
            }
        }
        Ok(TripleCensus { rows })
    }

    pub fn rows(&self) -> &[CensusRow] {
        &self.rows
    }

    /// Total number of normal subgroups covered.
    pub fn subgroup_count(&self) -> BigUint {
        self.rows.iter().map(|r| &r.multiplicity).sum()
    }

    pub fn congruence_count(&self) -> BigUint {
        self.rows.iter().map(CensusRow::equivalence_triples).fold(BigUint::zero(), |a, b| a + b)
    }

    pub fn diagonal_count(&self) -> BigUint {
        self.rows.iter().map(CensusRow::reflexive_triples).fold(BigUint::zero(), |a, b| a + b)
    }

    pub fn report(&self) -> Result<DscReport> {
        DscReport::new(self.congruence_count(), self.diagonal_count())
    }
}
