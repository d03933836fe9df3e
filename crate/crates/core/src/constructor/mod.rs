//! Realizing a rational `α ∈ (0, 1)` as the DSC coefficient of a Rees
//! matrix semigroup over a cyclic group `Z_{p^k}`.
//!
//! For `α = β/γ` and dimensions `a, b`, set `c = γ - β`,
//! `d = β 2^(a²-a) 2^(b²-b) - γ B(a) B(b)`, `k = c + d - 1`, `r = c - 1` and
//! take `p` the least prime above `2^(ab+1)`. The `Λ × I` sandwich matrix holds
//! `p^r 2^s` for `s = 0..ab`, row-major.

mod certificate;
mod primes;

pub use certificate::{read_certificate, write_certificate};
pub use primes::{is_prime, smallest_prime_above};

use crate::groups::{checked_pow, PadicInt, SymbolicCyclicGroup};
use crate::rees::SymbolicCyclicReesSpec;
use crate::relations::{bell, reflexive_count};
use crate::{Error, ExactRational, Limits, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive};
use std::collections::HashSet;
use std::fmt;

/// Entries are `p^v * unit` with respect to the certificate's own `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionCertificate {
    pub alpha: ExactRational,
    pub a: usize,
    pub b: usize,
    pub c: BigUint,
    pub d: BigUint,
    pub k: BigUint,
    pub r: BigUint,
    pub p: BigUint,
    pub entries: Vec<PadicInt>,
    pub chi: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// `None` when the check was skipped.
    pub passed: Option<bool>,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.passed == Some(false))
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, result: std::result::Result<(), String>) {
        let (passed, witness) = match result {
            Ok(()) => (Some(true), String::new()),
            Err(w) => (Some(false), w),
        };
        self.checks.push(CheckOutcome { name, passed, witness });
    }

    fn skip(&mut self, name: &'static str, why: String) {
        self.checks.push(CheckOutcome {
            name,
            passed: None,
            witness: why,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.passed {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skip",
            };
            write!(f, "{status} {}", c.name)?;
            if !c.witness.is_empty() {
                write!(f, ": {}", c.witness)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub const CHECK_PRIME: &str = "prime";
pub const CHECK_ENTRIES: &str = "entries";
pub const CHECK_EXTRACTS: &str = "extracts";
pub const CHECK_ARITHMETIC: &str = "arithmetic";
pub const CHECK_CHI: &str = "chi";
pub const CHECK_CENSUS: &str = "census";
pub const CHECK_CONCRETE: &str = "concrete";
pub const CHECK_BRUTE_FORCE: &str = "brute-force";

/// `(B(a)B(b), 2^(a²-a) 2^(b²-b))`
fn bound_parts(a: usize, b: usize) -> Result<(BigUint, BigUint)> {
    Ok((bell(a)? * bell(b)?, reflexive_count(a) * reflexive_count(b)))
}

/// `B(a)B(b) / (2^(a²-a) 2^(b²-b))`, the least χ reachable with an
/// `a × b` construction.
pub fn dimension_bound(a: usize, b: usize) -> Result<ExactRational> {
    let (e, r) = bound_parts(a, b)?;
    ExactRational::from_counts(&e, &r)
}

fn positive_parts(alpha: &ExactRational) -> Result<(BigUint, BigUint)> {
    if !alpha.is_positive() || alpha.numer() >= alpha.denom() {
        let note = if alpha.is_one() {
            "; alpha = 1 is the coefficient of every finite group"
        } else {
            ""
        };
        return Err(Error::Domain(format!("alpha = {alpha} is not in (0, 1){note}")));
    }
    Ok((
        alpha.numer().magnitude().clone(),
        alpha.denom().magnitude().clone(),
    ))
}

/// Least `(a, b)` by `a + b`, then `a`, with `a, b >= 2` and bound `<= α`.
pub fn choose_dimensions(alpha: &ExactRational) -> Result<(usize, usize)> {
    positive_parts(alpha)?;
    for n in 4.. {
        for a in 2..=n - 2 {
            let b = n - a;
            if dimension_bound(a, b)? <= *alpha {
                return Ok((a, b));
            }
        }
    }
    unreachable!()
}

/// `((r+1) B(a)B(b) + k - r) / ((r+1) 2^(a²-a) 2^(b²-b) + k - r)`
pub fn chi_formula(a: usize, b: usize, k: &BigUint, r: &BigUint) -> Result<ExactRational> {
    if r > k {
        return Err(Error::Domain(format!("r = {r} exceeds k = {k}")));
    }
    let (e, big_r) = bound_parts(a, b)?;
    let span = r + 1u32;
    let rest = k - r;
    ExactRational::from_counts(&(&span * e + &rest), &(&span * big_r + &rest))
}

pub fn chi_certificate(cert: &ConstructionCertificate) -> Result<ExactRational> {
    chi_formula(cert.a, cert.b, &cert.k, &cert.r)
}

fn prime_bound(a: usize, b: usize) -> BigUint {
    BigUint::one() << (a * b + 1)
}

fn entry(r: &BigUint, s: usize, p: &BigUint) -> PadicInt {
    PadicInt::from_parts(r.clone(), BigInt::one() << s, p)
}

pub fn construct(alpha: &ExactRational, a: usize, b: usize) -> Result<ConstructionCertificate> {
    let (beta, gamma) = positive_parts(alpha)?;
    if a < 2 || b < 2 {
        return Err(Error::Domain(format!("dimensions must be at least 2, got a = {a}, b = {b}")));
    }
    let (e, big_r) = bound_parts(a, b)?;
    let (plus, minus) = (&beta * &big_r, &gamma * &e);
    if plus < minus {
        return Err(Error::Domain(format!(
            "alpha = {alpha} is below the lower bound B(a)B(b)/2^(a^2-a)2^(b^2-b) = {} for a = {a}, b = {b}",
            dimension_bound(a, b)?
        )));
    }
    let c = &gamma - &beta;
    let d = plus - minus;
    let k = &c + &d - 1u32;
    let r = &c - 1u32;
    let p = smallest_prime_above(&prime_bound(a, b));
    let entries = (0..a * b).map(|s| entry(&r, s, &p)).collect();
    let chi = chi_formula(a, b, &k, &r)?;
    if chi != *alpha {
        return Err(Error::Internal(format!("constructed chi {chi} differs from alpha {alpha}")));
    }
    Ok(ConstructionCertificate {
        alpha: alpha.clone(),
        a,
        b,
        c,
        d,
        k,
        r,
        p,
        entries,
        chi,
    })
}

impl ConstructionCertificate {
    pub fn group(&self) -> Result<SymbolicCyclicGroup> {
        SymbolicCyclicGroup::new(self.p.clone(), self.k.clone())
    }

    /// The certified semigroup, entries reduced mod `p^k`.
    pub fn rees_spec(&self) -> Result<SymbolicCyclicReesSpec> {
        SymbolicCyclicReesSpec::from_padic(self.group()?, self.a, self.b, self.entries.clone())
    }

    /// `a p^k b` when it fits a machine word.
    pub fn materialized_order(&self) -> Option<usize> {
        // p >= 2, so p^k needs at least k bits
        if self.k > BigUint::from(usize::BITS) {
            return None;
        }
        let pk = checked_pow(&self.p, &self.k)?.to_usize()?;
        pk.checked_mul(self.a)?.checked_mul(self.b)
    }

    fn extract(&self, lambda: usize, mu: usize, i: usize, j: usize) -> Result<PadicInt> {
        let at = |l: usize, x: usize| &self.entries[l * self.a + x];
        PadicInt::sum(
            &[at(lambda, i).clone(), at(mu, i).neg(), at(mu, j).clone(), at(lambda, j).neg()],
            &self.p,
        )
    }

    /// Every extract with `λ ≠ μ`, `i ≠ j` paired with its integer
    /// valuation (`None` for zero).
    pub fn off_diagonal_extracts(&self) -> Result<Vec<((usize, usize, usize, usize), Option<BigUint>)>> {
        let mut out = Vec::with_capacity(self.a * (self.a - 1) * self.b * (self.b.saturating_sub(1)));
        for lambda in 0..self.b {
            for mu in (0..self.b).filter(|&m| m != lambda) {
                for i in 0..self.a {
                    for j in (0..self.a).filter(|&j| j != i) {
                        let q = self.extract(lambda, mu, i, j)?;
                        out.push(((lambda, mu, i, j), q.valuation().cloned()));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn check_prime(cert: &ConstructionCertificate) -> std::result::Result<(), String> {
    let bound = prime_bound(cert.a, cert.b);
    if cert.p <= bound {
        return Err(format!("p = {} does not exceed 2^(ab+1) = {bound}", cert.p));
    }
    if !is_prime(&cert.p) {
        return Err(format!("p = {} is composite", cert.p));
    }
    Ok(())
}

fn check_entries(cert: &ConstructionCertificate) -> std::result::Result<(), String> {
    let n = cert.a * cert.b;
    if cert.entries.len() != n {
        return Err(format!("{} entries, expected {n}", cert.entries.len()));
    }
    let mut seen = HashSet::new();
    for (s, e) in cert.entries.iter().enumerate() {
        if !seen.insert(e) {
            return Err(format!("entry {s} repeats an earlier entry"));
        }
    }
    for (s, e) in cert.entries.iter().enumerate() {
        if *e != entry(&cert.r, s, &cert.p) {
            return Err(format!("entry {s} is not p^r 2^{s}"));
        }
    }
    Ok(())
}

fn check_extracts(cert: &ConstructionCertificate) -> std::result::Result<(), String> {
    if cert.entries.len() != cert.a * cert.b {
        return Err("entry count mismatch".into());
    }
    let extracts = cert.off_diagonal_extracts().map_err(|e| e.to_string())?;
    for ((l, m, i, j), v) in extracts {
        match v {
            Some(v) if v == cert.r => {}
            Some(v) => {
                return Err(format!("q[{l},{m},{i},{j}] has valuation {v}, expected r = {}", cert.r))
            }
            None => return Err(format!("q[{l},{m},{i},{j}] = 0")),
        }
    }
    Ok(())
}

fn check_arithmetic(cert: &ConstructionCertificate) -> std::result::Result<(), String> {
    if cert.a < 2 || cert.b < 2 {
        return Err(format!("a = {}, b = {} must both be at least 2", cert.a, cert.b));
    }
    let beta = cert.alpha.numer();
    let gamma = cert.alpha.denom();
    if !beta.is_positive() || beta >= gamma {
        return Err(format!("alpha = {} is not in (0, 1)", cert.alpha));
    }
    let (e, big_r) = bound_parts(cert.a, cert.b).map_err(|e| e.to_string())?;
    let c = gamma - beta;
    let d = beta * BigInt::from_biguint(Sign::Plus, big_r) - gamma * BigInt::from_biguint(Sign::Plus, e);
    let big = |x: &BigUint| BigInt::from_biguint(Sign::Plus, x.clone());
    if big(&cert.c) != c {
        return Err(format!("c = {}, expected {c}", cert.c));
    }
    if big(&cert.d) != d {
        return Err(format!("d = {}, expected {d}", cert.d));
    }
    if big(&cert.k) != &c + &d - 1 {
        return Err(format!("k = {} differs from c + d - 1", cert.k));
    }
    if big(&cert.r) != &c - 1 {
        return Err(format!("r = {} differs from c - 1", cert.r));
    }
    Ok(())
}

fn check_chi(cert: &ConstructionCertificate) -> std::result::Result<(), String> {
    let chi = chi_certificate(cert).map_err(|e| e.to_string())?;
    if chi != cert.alpha {
        return Err(format!("formula gives {chi}, alpha = {}", cert.alpha));
    }
    if cert.chi != cert.alpha {
        return Err(format!("recorded chi = {} differs from alpha = {}", cert.chi, cert.alpha));
    }
    Ok(())
}

fn check_census(cert: &ConstructionCertificate) -> std::result::Result<(), String> {
    let report = cert
        .rees_spec()
        .and_then(|s| s.chi_rees())
        .map_err(|e| e.to_string())?;
    if report.chi != cert.alpha {
        return Err(format!("triple census gives {}, alpha = {}", report.chi, cert.alpha));
    }
    Ok(())
}

/// Runs every check, recording failures with witnesses instead of
/// stopping at the first.
pub fn verify_certificate(cert: &ConstructionCertificate, limits: &Limits) -> VerificationReport {
    let mut report = VerificationReport { checks: Vec::new() };
    report.push(CHECK_PRIME, check_prime(cert));
    report.push(CHECK_ENTRIES, check_entries(cert));
    report.push(CHECK_EXTRACTS, check_extracts(cert));
    report.push(CHECK_ARITHMETIC, check_arithmetic(cert));
    report.push(CHECK_CHI, check_chi(cert));
    report.push(CHECK_CENSUS, check_census(cert));

    let order = cert.materialized_order();
    match order {
        Some(n) if n <= limits.materialize_order => {
            let concrete = cert
                .rees_spec()
                .and_then(|s| s.to_concrete(limits))
                .and_then(|spec| Ok((spec.chi_rees(limits)?, spec)));
            match concrete {
                Ok((census, spec)) => {
                    report.push(
                        CHECK_CONCRETE,
                        if census.chi == cert.alpha {
                            Ok(())
                        } else {
                            Err(format!("explicit census gives {}", census.chi))
                        },
                    );
                    if n <= limits.brute_force_order {
                        let brute = spec
                            .materialize(limits)
                            .and_then(|s| s.dsc_coefficient(limits))
                            .map_err(|e| e.to_string())
                            .and_then(|r| {
                                if r == census {
                                    Ok(())
                                } else {
                                    Err(format!("brute force gives {}", r.chi))
                                }
                            });
                        report.push(CHECK_BRUTE_FORCE, brute);
                    } else {
                        report.skip(CHECK_BRUTE_FORCE, format!("order {n} over the brute-force cap"));
                    }
                }
                Err(e) => report.push(CHECK_CONCRETE, Err(e.to_string())),
            }
        }
        _ => {
            let why = "materialized order over the cap".to_string();
            report.skip(CHECK_CONCRETE, why.clone());
            report.skip(CHECK_BRUTE_FORCE, why);
        }
    }
    report
}
