use crate::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Exponent gaps above this many bits are refused rather than materialized.
const MAX_GAP_BITS: u64 = 1 << 26;

/// The cyclic group `Z_{p^k}` for a prime `p`, never materialized.
///
/// Its normal subgroups form the chain `p^m Z_{p^k}` for `m = 0..=k`; member
/// `m = 0` is the whole group and `m = k` the trivial subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicCyclicGroup {
    p: BigUint,
    k: BigUint,
}

impl SymbolicCyclicGroup {
    /// `p` is trusted to be prime; see [`crate::constructor::is_prime`].
    pub fn new(p: BigUint, k: BigUint) -> Result<Self> {
        if p < BigUint::from(2u32) {
            return Err(Error::Domain(format!("{p} is not a prime")));
        }
        Ok(SymbolicCyclicGroup { p, k })
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn k(&self) -> &BigUint {
        &self.k
    }

    pub fn normal_chain(&self) -> NormalChain {
        NormalChain { k: self.k.clone() }
    }

    /// Effective p-adic valuation of `x` as an element of `Z_{p^k}`, capped
    /// at `k` (the residue 0 has valuation `k`).
    pub fn valuation(&self, x: &PadicInt) -> BigUint {
        match &x.unit {
            u if u.is_zero() => self.k.clone(),
            _ => x.valuation.clone().min(self.k.clone()),
        }
    }

    /// Whether `x` lies in the chain member `p^m Z_{p^k}`.
    pub fn in_chain_member(&self, x: &PadicInt, m: &BigUint) -> bool {
        &self.valuation(x) >= m
    }

    /// The canonical residue in `0..p^k`, when `p^k` is small enough to
    /// write down (at most `max_bits` bits).
    pub fn residue(&self, x: &PadicInt, max_bits: u64) -> Option<BigUint> {
        let k = self.k.to_u64()?;
        if k.saturating_mul(self.p.bits()) > max_bits {
            return None;
        }
        let modulus = BigInt::from(pow_big(&self.p, k)?);
        let value = x.to_bigint(&self.p)?;
        value.mod_floor(&modulus).to_biguint()
    }
}

/// The chain of exponents `0..=k` describing the normal subgroups of
/// `Z_{p^k}`, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalChain {
    k: BigUint,
}

impl NormalChain {
    pub fn len(&self) -> BigUint {
        &self.k + 1u32
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn top(&self) -> &BigUint {
        &self.k
    }

    pub fn iter(&self) -> impl Iterator<Item = BigUint> + '_ {
        let mut next = BigUint::zero();
        std::iter::from_fn(move || {
            if next > self.k {
                None
            } else {
                let out = next.clone();
                next += 1u32;
                Some(out)
            }
        })
    }
}

fn pow_big(p: &BigUint, e: u64) -> Option<BigUint> {
    let e = u32::try_from(e).ok()?;
    Some(p.pow(e))
}

/// An integer written as `p^valuation * unit` with `p` not dividing `unit`.
/// Zero has `unit = 0` and `valuation = 0`.
///
/// Entries of constructed sandwich matrices are `p^r 2^s` with `r` possibly
/// in the millions; this form keeps their extracts exact without expanding
/// `p^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    valuation: BigUint,
    unit: BigInt,
}

impl PadicInt {
    pub fn zero() -> Self {
        PadicInt {
            valuation: BigUint::zero(),
            unit: BigInt::zero(),
        }
    }

    /// Factors `n` as `p^v * u`.
    pub fn from_int(n: &BigInt, p: &BigUint) -> Self {
        Self::from_parts(BigUint::zero(), n.clone(), p)
    }

    /// `p^valuation * unit`, normalizing any powers of `p` out of `unit`.
    pub fn from_parts(valuation: BigUint, unit: BigInt, p: &BigUint) -> Self {
        if unit.is_zero() {
            return Self::zero();
        }
        // strip p^(2^j) for growing j, then greedily from the largest power
        // down, so a valuation v costs O(log v) divisions
        let mut powers = vec![BigInt::from_biguint(Sign::Plus, p.clone())];
        while (&unit % powers.last().unwrap()).is_zero() {
            let last = powers.last().unwrap();
            let next = last * last;
            if next.bits() > unit.bits() {
                break;
            }
            powers.push(next);
        }
        let mut unit = unit;
        let mut valuation = valuation;
        for (j, pw) in powers.iter().enumerate().rev() {
            let (q, r) = unit.div_rem(pw);
            if r.is_zero() {
                unit = q;
                valuation += BigUint::one() << j;
            }
        }
        PadicInt { valuation, unit }
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<&BigUint> {
        (!self.is_zero()).then_some(&self.valuation)
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn neg(&self) -> Self {
        PadicInt {
            valuation: self.valuation.clone(),
            unit: -&self.unit,
        }
    }

    /// Exact sum. Terms are rescaled to the least valuation, so the cost
    /// depends on the valuation gaps, never on the valuations themselves.
    pub fn sum(terms: &[PadicInt], p: &BigUint) -> Result<PadicInt> {
        let Some(base) = terms
            .iter()
            .filter(|t| !t.is_zero())
            .map(|t| &t.valuation)
            .min()
            .cloned()
        else {
            return Ok(Self::zero());
        };
        let mut acc = BigInt::zero();
        for t in terms.iter().filter(|t| !t.is_zero()) {
            let gap = (&t.valuation - &base)
                .to_u64()
                .filter(|g| g.saturating_mul(p.bits()) <= MAX_GAP_BITS)
                .ok_or_else(|| {
                    Error::Domain("valuation gap too large to add exactly".into())
                })?;
            acc += &t.unit * BigInt::from_biguint(Sign::Plus, p.pow(gap as u32));
        }
        Ok(Self::from_parts(base, acc, p))
    }

    /// The integer value, when it fits in a bounded number of bits.
    pub fn to_bigint(&self, p: &BigUint) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        let v = self.valuation.to_u64()?;
        if v.saturating_mul(p.bits()) > MAX_GAP_BITS {
            return None;
        }
        Some(&self.unit * BigInt::from_biguint(Sign::Plus, pow_big(p, v)?))
    }
}

impl Default for PadicInt {
    fn default() -> Self {
        Self::zero()
    }
}

/// `p^e` for a big exponent, refusing results above `MAX_GAP_BITS` bits.
pub(crate) fn checked_pow(p: &BigUint, e: &BigUint) -> Option<BigUint> {
    let e = e.to_u64()?;
    if e.saturating_mul(p.bits()) > MAX_GAP_BITS {
        return None;
    }
    if p.is_one() {
        return Some(BigUint::one());
    }
    pow_big(p, e)
}
