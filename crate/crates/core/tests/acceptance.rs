//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure.

use dsc_core::clifford::adjoined_identity_counterexample;
use dsc_core::constructor::{
    chi_certificate, choose_dimensions, construct, dimension_bound, verify_certificate,
    ConstructionCertificate,
};
use dsc_core::corpus;
use dsc_core::groups::FiniteGroup;
use dsc_core::relations::bell;
use dsc_core::{ExactRational, Limits};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Bell numbers by the Stirling recurrence, independent of the library.
fn bell_oracle(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for k in 1..=m {
            let prev_k = row.get(k).cloned().unwrap_or_default();
            next[k] = BigUint::from(k) * prev_k + &row[k - 1];
        }
        row = next;
    }
    row.iter().sum()
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn ratio(num: BigUint, den: BigUint) -> ExactRational {
    ExactRational::from_counts(&num, &den).unwrap()
}

fn band_formula(a: usize, b: usize) -> ExactRational {
    ratio(bell_oracle(a) * bell_oracle(b), pow2(a * a - a) * pow2(b * b - b))
}

fn rees_limits() -> Limits {
    Limits {
        brute_force_order: 12,
        ..Limits::default()
    }
}

fn group_law() -> Check {
    let lim = Limits::default();
    let groups = corpus::stored_groups();
    ensure!(groups.len() == 12, "{} stored groups", groups.len());
    for (name, g) in &groups {
        ensure!(g.order() <= 8, "{name} has order {}", g.order());
        let s = dsc_core::semigroup::FiniteSemigroup::from_group(g);
        let r = s.dsc_coefficient(&lim).map_err(err)?;
        ensure!(r.chi.is_one(), "{name}: chi = {}", r.chi);
    }
    let mut non_groups = 0;
    for s in corpus::semigroups_up_to_order(4) {
        if s.is_group() {
            continue;
        }
        non_groups += 1;
        let r = s.dsc_coefficient(&lim).map_err(err)?;
        ensure!(r.chi < ExactRational::one(), "non-group {:?} has chi = {}", s.table_rows(), r.chi);
    }
    Ok(format!("12 groups at chi = 1/1, {non_groups} non-group semigroups below 1"))
}

fn rectangular_bands() -> Check {
    let lim = Limits::default();
    let mut seen = Vec::new();
    for ((a, b), expected) in [((1, 2), "1/2"), ((2, 2), "1/4"), ((2, 3), "5/128")] {
        let r = corpus::rectangular_band(a, b).dsc_coefficient(&lim).map_err(err)?;
        let formula = band_formula(a, b);
        ensure!(formula.to_string() == expected, "formula for {a}x{b} gives {formula}");
        ensure!(r.chi == formula, "{a}x{b} band: brute force {} vs formula {formula}", r.chi);
        seen.push(format!("{a}x{b}={}", r.chi));
    }
    Ok(seen.join(" "))
}

fn triple_oracle() -> Check {
    let lim = rees_limits();
    let mut matrices = HashSet::new();
    let mut count = 0;
    for (name, spec) in corpus::small_rees_specs() {
        if spec.materialized_order() > 12 {
            continue;
        }
        matrices.insert((spec.group().order(), spec.rows()));
        let census = spec.chi_rees(&lim).map_err(err)?;
        let brute = spec.materialize(&lim).and_then(|s| s.dsc_coefficient(&lim)).map_err(err)?;
        ensure!(
            census.congruence_count == brute.congruence_count && census.diagonal_count == brute.diagonal_count,
            "{name}: census {}/{} vs brute force {}/{}",
            census.congruence_count,
            census.diagonal_count,
            brute.congruence_count,
            brute.diagonal_count
        );
        count += 1;
    }
    ensure!(matrices.len() >= 6, "only {} distinct sandwich matrices", matrices.len());
    Ok(format!("{count} specs, {} distinct matrices, counts equal", matrices.len()))
}

fn round_trips() -> Check {
    let lim = rees_limits();
    let (mut relations, mut triples) = (0usize, 0usize);
    for (name, spec) in corpus::small_rees_specs() {
        let s = spec.materialize(&lim).map_err(err)?;
        for rho in s.diagonal_subsemigroups(&lim).map_err(err)? {
            let t = spec.relation_to_triple(&rho, &lim).map_err(err)?;
            let back = spec.triple_to_relation(&t, &lim).map_err(err)?;
            ensure!(back == rho, "{name}: relation {rho} returns as {back}");
            relations += 1;
        }
        for t in spec.linked_reflexive_triples(&lim).map_err(err)? {
            let rho = spec.triple_to_relation(&t, &lim).map_err(err)?;
            let back = spec.relation_to_triple(&rho, &lim).map_err(err)?;
            ensure!(back == t, "{name}: triple {t:?} returns as {back:?}");
            triples += 1;
        }
    }
    ensure!(relations == triples, "{relations} relations but {triples} triples");
    Ok(format!("{relations} relations and {triples} triples restored"))
}

fn random_rationals(n: usize) -> Vec<ExactRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let gamma: u64 = rng.gen_range(2..=1_000_000);
        let beta: u64 = rng.gen_range(1..gamma);
        out.push(ExactRational::new(beta, gamma).unwrap());
    }
    out
}

fn constructor_soundness() -> Check {
    let lim = Limits::default();
    let alphas = random_rationals(200);
    for alpha in &alphas {
        let (a, b) = choose_dimensions(alpha).map_err(err)?;
        let cert = construct(alpha, a, b).map_err(err)?;
        let report = verify_certificate(&cert, &lim);
        ensure!(report.all_passed(), "alpha = {alpha}:\n{report}");
        ensure!(report.check("census").and_then(|c| c.passed) == Some(true), "alpha = {alpha}: census not run");
        let chi = chi_certificate(&cert).map_err(err)?;
        ensure!(chi == *alpha, "alpha = {alpha}: chi_certificate = {chi}");
    }
    Ok(format!("{} certificates verified", alphas.len()))
}

/// Extract valuations over explicit integers, independent of the factored
/// representation.
fn explicit_extract_check(cert: &ConstructionCertificate) -> Result<usize, String> {
    let p = BigInt::from(cert.p.clone());
    let r: u32 = cert.r.clone().try_into().map_err(err)?;
    let pr = p.pow(r);
    let pr1 = &pr * &p;
    let entries: Vec<BigInt> = (0..cert.a * cert.b).map(|s| &pr << s).collect();
    for (s, e) in cert.entries.iter().enumerate() {
        ensure!(e.to_bigint(&cert.p).as_ref() == Some(&entries[s]), "entry {s} is not p^r 2^{s}");
    }
    let at = |l: usize, i: usize| &entries[l * cert.a + i];
    let mut cases = 0;
    for l in 0..cert.b {
        for m in (0..cert.b).filter(|&m| m != l) {
            for i in 0..cert.a {
                for j in (0..cert.a).filter(|&j| j != i) {
                    let q = at(l, i) - at(m, i) + at(m, j) - at(l, j);
                    ensure!(q.is_multiple_of(&pr), "p^r does not divide q[{l},{m},{i},{j}]");
                    ensure!(!q.is_multiple_of(&pr1), "p^(r+1) divides q[{l},{m},{i},{j}]");
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

fn extract_generation() -> Check {
    let mut total = 0;
    let mut certs = 0;
    for (a, b) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let floor = dimension_bound(a, b).map_err(err)?;
        // the lower bound itself (r = k), and a few values above it
        let mut alphas = vec![floor.clone()];
        for (num, den) in [(1u64, 2u64), (2, 3), (9, 10), (99, 100)] {
            let x = ExactRational::new(num, den).unwrap();
            if x >= floor {
                alphas.push(x);
            }
        }
        alphas.push(ExactRational::new(1u64, 1000u64).unwrap());
        for alpha in alphas.into_iter().filter(|x| *x >= floor && !x.is_one()) {
            let cert = construct(&alpha, a, b).map_err(err)?;
            let expected = a * (a - 1) * b * (b - 1);
            let symbolic = cert.off_diagonal_extracts().map_err(err)?;
            ensure!(symbolic.len() == expected, "{} extracts, expected {expected}", symbolic.len());
            for (idx, v) in &symbolic {
                ensure!(v.as_ref() == Some(&cert.r), "alpha = {alpha}: q{idx:?} has valuation {v:?}, r = {}", cert.r);
            }
            if cert.r <= BigUint::from(2000u32) {
                let n = explicit_extract_check(&cert)?;
                ensure!(n == expected, "{n} explicit extracts, expected {expected}");
            }
            total += expected;
            certs += 1;
        }
    }
    Ok(format!("{total} extracts over {certs} certificates, all of valuation exactly r"))
}

fn bell_inequality() -> Check {
    let mut pairs = 0;
    for s in 1..10usize {
        for t in 1..=10 - s {
            let (bs, bt, bst) = (bell(s).map_err(err)?, bell(t).map_err(err)?, bell(s + t).map_err(err)?);
            ensure!(bs == bell_oracle(s) && bst == bell_oracle(s + t), "library Bell numbers disagree");
            ensure!(bst <= &bs * &bt * pow2(s * t), "B({}) > B({s})B({t})2^{}", s + t, s * t);
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs (s, t)"))
}

fn clifford_bound() -> Check {
    let lim = Limits::default();
    let systems = corpus::small_clifford_systems();
    let mut strict = 0;
    for (name, sys) in &systems {
        let r = sys.chi_bound_report(&lim).map_err(err)?;
        ensure!(r.chi_s() <= r.chi_y(), "{name}: chi(S) = {} > chi(Y) = {}", r.chi_s(), r.chi_y());
        ensure!(r.pair_bound_holds, "{name}: K |Diag(Y)| exceeds |Diag(S)|");
        if !r.tight {
            strict += 1;
        }
        let s = sys.materialize(&lim).map_err(err)?;
        let mut images = HashSet::new();
        let pairs = sys.diagonal_pairs(&lim).map_err(err)?;
        for pair in &pairs {
            let rho = sys.rho_from_pair(pair, &lim).map_err(err)?;
            ensure!(s.is_diagonal_subsemigroup(&rho).map_err(err)?, "{name}: pair image not a diagonal subsemigroup");
            images.insert(rho);
        }
        ensure!(images.len() == pairs.len(), "{name}: {} pairs, {} images", pairs.len(), images.len());
    }
    ensure!(systems.len() >= 5, "only {} systems", systems.len());
    for (g, h) in [(FiniteGroup::cyclic(2), vec![0]), (FiniteGroup::cyclic(4), vec![0, 2])] {
        let (sys, rel) = adjoined_identity_counterexample(&g, &h, &lim).map_err(err)?;
        let s = sys.materialize(&lim).map_err(err)?;
        ensure!(s.is_diagonal_subsemigroup(&rel).map_err(err)?, "G^1 relation is not a diagonal subsemigroup");
        for pair in sys.diagonal_pairs(&lim).map_err(err)? {
            ensure!(sys.rho_from_pair(&pair, &lim).map_err(err)? != rel, "G^1 relation hit by a pair");
        }
    }
    Ok(format!("{} systems ({strict} strict), injective, 2 counterexamples", systems.len()))
}

fn lower_bound() -> Check {
    let lim = rees_limits();
    let mut checked = 0;
    for (name, spec) in corpus::small_rees_specs() {
        if spec.a() < 2 || spec.b() < 2 {
            continue;
        }
        let chi = spec.chi_rees(&lim).map_err(err)?.chi;
        let floor = band_formula(spec.a(), spec.b());
        ensure!(floor <= chi && chi < ExactRational::one(), "{name}: chi = {chi}, floor = {floor}");
        checked += 1;
    }
    Ok(format!("{checked} specs with a, b > 1"))
}

struct Criterion {
    id: usize,
    name: &'static str,
    run: fn() -> Check,
    budget: Option<Duration>,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "group law", run: group_law, budget: Some(Duration::from_secs(10)) },
        Criterion { id: 2, name: "rectangular band formula", run: rectangular_bands, budget: Some(Duration::from_secs(60)) },
        Criterion { id: 3, name: "triple census matches brute force", run: triple_oracle, budget: None },
        Criterion { id: 4, name: "relation/triple round trip", run: round_trips, budget: None },
        Criterion { id: 5, name: "constructor soundness", run: constructor_soundness, budget: Some(Duration::from_secs(30)) },
        Criterion { id: 6, name: "extract generation", run: extract_generation, budget: None },
        Criterion { id: 7, name: "Bell inequality", run: bell_inequality, budget: None },
        Criterion { id: 8, name: "Clifford bound and counterexample", run: clifford_bound, budget: Some(Duration::from_secs(60)) },
        Criterion { id: 9, name: "Rees lower bound", run: lower_bound, budget: None },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(budget)) if elapsed > budget => {
                Err(format!("took {:.2}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs()))
            }
            (o, _) => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("criterion {} [{status}] {} ({:.2}s): {detail}", c.id, c.name, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
