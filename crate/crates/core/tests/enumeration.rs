use dsc_core::corpus::{chain_semilattice, rectangular_band, semigroups_up_to_order};
use dsc_core::relations::{
    bell, collect_closed_sets, collect_closed_sets_sequential, count_closed_sets, count_closed_sets_sequential,
    enumerate_closed_sets, BinaryRelation,
};
use dsc_core::{BitSet, Limits};
use num_bigint::BigUint;
use proptest::prelude::*;

fn pairs_closure(n: usize) -> impl Fn(&BitSet) -> BitSet + Sync {
    move |set| {
        let mut rel = BinaryRelation::from_pairs(n, set.iter().map(|x| (x / n, x % n)));
        for i in 0..n {
            rel.insert(i, i);
        }
        let eq = rel.equivalence_closure();
        BitSet::from_indices(n * n, eq.pairs().map(|(i, j)| i * n + j))
    }
}

// closure under a fixed family of implications `premise -> conclusion`
fn horn_closure(rules: Vec<(Vec<usize>, usize)>) -> impl Fn(&BitSet) -> BitSet + Sync {
    move |set| {
        let mut out = set.clone();
        loop {
            let mut changed = false;
            for (premise, conclusion) in &rules {
                if premise.iter().all(|&x| out.contains(x)) && out.insert(*conclusion) {
                    changed = true;
                }
            }
            if !changed {
                return out;
            }
        }
    }
}

fn brute_force_closed(n: usize, closure: &impl Fn(&BitSet) -> BitSet) -> Vec<BitSet> {
    let mut out: Vec<BitSet> = (0u32..1 << n)
        .map(|mask| BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)))
        .filter(|s| closure(s) == *s)
        .collect();
    out.sort_by(|a, b| a.lectic_cmp(b));
    out
}

#[test]
fn equivalence_closure_yields_bell_numbers() {
    for n in 1..=5 {
        let expected = bell(n).unwrap();
        assert_eq!(BigUint::from(count_closed_sets(n * n, pairs_closure(n))), expected);
        assert_eq!(BigUint::from(count_closed_sets_sequential(n * n, pairs_closure(n))), expected);
        assert_eq!(BigUint::from(enumerate_closed_sets(n * n, pairs_closure(n)).count()), expected);
    }
}

#[test]
fn congruence_counts_match_partition_oracle() {
    let limits = Limits::default();
    for s in semigroups_up_to_order(4) {
        let by_closure = s.count_congruences(&limits).unwrap();
        assert_eq!(by_closure, BigUint::from(s.count_congruences_by_partitions().unwrap()));
    }
    for s in [rectangular_band(2, 3), chain_semilattice(5)] {
        let by_closure = s.count_congruences(&limits).unwrap();
        assert_eq!(by_closure, BigUint::from(s.count_congruences_by_partitions().unwrap()));
    }
}

#[test]
fn listed_congruences_are_congruences() {
    let s = rectangular_band(2, 2);
    let limits = Limits::default();
    let all = s.collect_congruences(&limits).unwrap();
    assert_eq!(all.len(), 4);
    for rel in &all {
        assert!(rel.is_equivalence());
        assert!(s.is_congruence(rel).unwrap());
    }
    for rel in s.collect_diagonal_subsemigroups(&limits).unwrap() {
        assert!(s.is_diagonal_subsemigroup(&rel).unwrap());
    }
}

fn rules_strategy(n: usize) -> impl Strategy<Value = Vec<(Vec<usize>, usize)>> {
    prop::collection::vec((prop::collection::vec(0..n, 0..3), 0..n), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumerators_agree_with_brute_force(rules in rules_strategy(8)) {
        let n = 8;
        let closure = horn_closure(rules);
        let expected = brute_force_closed(n, &closure);
        let streamed: Vec<BitSet> = enumerate_closed_sets(n, &closure).collect();
        prop_assert_eq!(&streamed, &expected);
        prop_assert_eq!(&collect_closed_sets(n, &closure), &expected);
        prop_assert_eq!(&collect_closed_sets_sequential(n, &closure), &expected);
        prop_assert_eq!(count_closed_sets(n, &closure), expected.len() as u64);
        prop_assert_eq!(count_closed_sets_sequential(n, &closure), expected.len() as u64);
    }

    #[test]
    fn equivalence_closure_is_a_closure(pairs in prop::collection::vec((0usize..6, 0usize..6), 0..12),
                                        extra in prop::collection::vec((0usize..6, 0usize..6), 0..6)) {
        let r = BinaryRelation::from_pairs(6, pairs);
        let c = r.equivalence_closure();
        prop_assert!(r.is_subset(&c));
        prop_assert!(c.is_equivalence());
        prop_assert_eq!(&c.equivalence_closure(), &c);
        let bigger = r.union(&BinaryRelation::from_pairs(6, extra));
        prop_assert!(c.is_subset(&bigger.equivalence_closure()));
        let partition = c.to_partition().unwrap();
        prop_assert_eq!(partition.to_relation(), c);
    }
}
