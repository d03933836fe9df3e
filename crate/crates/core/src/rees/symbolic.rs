use super::census::{CensusRow, SubgroupLabel, TripleCensus};
use super::ReesSpec;
use crate::groups::{checked_pow, FiniteGroup, PadicInt, SymbolicCyclicGroup};
use crate::relations::{BinaryRelation, Partition};
use crate::semigroup::DscReport;
use crate::{Error, Limits, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeSet;

/// A Rees matrix semigroup over `Z_{p^k}` (written additively), with the
/// sandwich matrix stored as p-adically factored integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicCyclicReesSpec {
    group: SymbolicCyclicGroup,
    a: usize,
    b: usize,
    entries: Vec<PadicInt>,
}

impl SymbolicCyclicReesSpec {
    /// Entries are residues in `0..p^k`, `b` rows of `a`.
    pub fn new(group: SymbolicCyclicGroup, a: usize, b: usize, rows: Vec<Vec<BigUint>>) -> Result<Self> {
        if rows.len() != b || rows.iter().any(|r| r.len() != a) {
            return Err(Error::Validation(format!("sandwich matrix must be {b} rows of {a} entries")));
        }
        let mut entries = Vec::with_capacity(a * b);
        for x in rows.into_iter().flatten() {
            // x < p^k holds trivially once k exceeds the bit length of x
            let k_small = group.k().to_u64().is_some_and(|k| k <= x.bits());
            if k_small {
                let modulus = checked_pow(group.p(), group.k())
                    .ok_or_else(|| Error::Domain("modulus too large".into()))?;
                if x >= modulus {
                    return Err(Error::Validation(format!(
                        "entry {x} is not reduced mod p^k = {modulus}"
                    )));
                }
            }
            entries.push(PadicInt::from_int(&BigInt::from_biguint(Sign::Plus, x), group.p()));
        }
        Self::from_padic(group, a, b, entries)
    }

    /// Entries given in factored form; anything divisible by `p^k` becomes 0.
    pub fn from_padic(group: SymbolicCyclicGroup, a: usize, b: usize, entries: Vec<PadicInt>) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Validation("index sets must be nonempty".into()));
        }
        if entries.len() != a * b {
            return Err(Error::Validation(format!(
                "{} entries for a {b}x{a} matrix",
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|e| match e.valuation() {
                Some(v) if v >= group.k() => PadicInt::zero(),
                _ => e,
            })
            .collect();
        Ok(SymbolicCyclicReesSpec { group, a, b, entries })
    }

    pub fn group(&self) -> &SymbolicCyclicGroup {
        &self.group
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn entry(&self, lambda: usize, i: usize) -> &PadicInt {
        &self.entries[lambda * self.a + i]
    }

    /// `q_{λμij} = p_{λi} - p_{μi} + p_{μj} - p_{λj}` over the integers.
    pub fn extract(&self, lambda: usize, mu: usize, i: usize, j: usize) -> Result<PadicInt> {
        if i >= self.a || j >= self.a || lambda >= self.b || mu >= self.b {
            return Err(Error::Domain(format!(
                "extract index ({lambda},{mu},{i},{j}) out of range"
            )));
        }
        PadicInt::sum(
            &[
                self.entry(lambda, i).clone(),
                self.entry(mu, i).neg(),
                self.entry(mu, j).clone(),
                self.entry(lambda, j).neg(),
            ],
            self.group.p(),
        )
    }

    /// Effective valuations of all extracts, indexed `[λ][μ][i][j]`
    /// row-major.
    fn valuations(&self) -> Result<Vec<BigUint>> {
        let mut out = Vec::with_capacity(self.a * self.a * self.b * self.b);
        for l in 0..self.b {
            for m in 0..self.b {
                for i in 0..self.a {
                    for j in 0..self.a {
                        out.push(self.group.valuation(&self.extract(l, m, i, j)?));
                    }
                }
            }
        }
        Ok(out)
    }

    fn sigma_tau_from(&self, vals: &[BigUint], m: &BigUint) -> Result<(Partition, Partition)> {
        let (a, b) = (self.a, self.b);
        let at = |l: usize, mu: usize, i: usize, j: usize| &vals[((l * b + mu) * a + i) * a + j];
        let mut sigma = BinaryRelation::empty(a);
        for i in 0..a {
            for j in 0..a {
                if (0..b).all(|l| (0..b).all(|mu| at(l, mu, i, j) >= m)) {
                    sigma.insert(i, j);
                }
            }
        }
        let mut tau = BinaryRelation::empty(b);
        for l in 0..b {
            for mu in 0..b {
                if (0..a).all(|i| (0..a).all(|j| at(l, mu, i, j) >= m)) {
                    tau.insert(l, mu);
                }
            }
        }
        let part = |rel: &BinaryRelation, name: &str| {
            Partition::from_equivalence(rel).map_err(|_| {
                Error::Internal(format!("maximal linked relation {name} is not an equivalence"))
            })
        };
        Ok((part(&sigma, "sigma")?, part(&tau, "tau")?))
    }

    /// `σ` and `τ` for the chain member `p^m Z_{p^k}`.
    pub fn sigma_tau(&self, m: &BigUint) -> Result<(Partition, Partition)> {
        if m > self.group.k() {
            return Err(Error::Domain(format!("chain member {m} exceeds k = {}", self.group.k())));
        }
        self.sigma_tau_from(&self.valuations()?, m)
    }

    /// Census over the whole chain. Membership of an extract in `p^m Z_{p^k}`
    /// only changes at `m = v + 1` for extract valuations `v`, so the chain
    /// splits into at most `a^2 b^2 + 1` spans of identical rows, whatever
    /// the size of `k`.
    pub fn triple_census(&self) -> Result<TripleCensus> {
        let vals = self.valuations()?;
        let k = self.group.k();
        let mut starts: BTreeSet<BigUint> = BTreeSet::from([BigUint::zero()]);
        for v in &vals {
            let s = v + 1u32;
            if &s <= k {
                starts.insert(s);
            }
        }
        let starts: Vec<BigUint> = starts.into_iter().collect();
        let mut rows = Vec::with_capacity(starts.len());
        for (t, from) in starts.iter().enumerate() {
            let to = match starts.get(t + 1) {
                Some(next) => next - 1u32,
                None => k.clone(),
            };
            let (sigma, tau) = self.sigma_tau_from(&vals, from)?;
            rows.push(CensusRow::new(
                SubgroupLabel::Chain { from: from.clone(), to },
                sigma,
                tau,
            )?);
        }
        TripleCensus::from_rows(rows)
    }

    pub fn chi_rees(&self) -> Result<DscReport> {
        self.triple_census()?.report()
    }

    /// The same semigroup over an explicit `Z_{p^k}` table, when `p^k` fits
    /// the group cap.
    pub fn to_concrete(&self, limits: &Limits) -> Result<ReesSpec> {
        let (p, k) = (self.group.p(), self.group.k());
        let order = (k <= &BigUint::from(usize::BITS))
            .then(|| checked_pow(p, k))
            .flatten()
            .and_then(|m| m.to_usize())
            .ok_or_else(|| Error::Domain(format!("cyclic group order {p}^{k} is too large to materialize")))?;
        if order > limits.group_order {
            return Err(Error::cap("cyclic group order", order, limits.group_order));
        }
        let rows = self
            .entries
            .chunks(self.a)
            .map(|row| {
                row.iter()
                    .map(|e| {
                        self.group
                            .residue(e, 64)
                            .and_then(|r| r.to_usize())
                            .ok_or_else(|| Error::Internal("residue out of range".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ReesSpec::new(FiniteGroup::cyclic(order), self.a, self.b, rows)
    }
}
