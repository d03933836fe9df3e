use super::*;
use crate::corpus;
use crate::groups::{PadicInt, SymbolicCyclicGroup};
use crate::relations::bell;
use crate::ExactRational;
use num_bigint::BigUint;
use proptest::prelude::*;

fn lim() -> Limits {
    Limits {
        brute_force_order: 12,
        ..Limits::default()
    }
}

fn z2_identity() -> ReesSpec {
    ReesSpec::new(FiniteGroup::cyclic(2), 2, 2, vec![vec![0, 0], vec![0, 0]]).unwrap()
}

fn band(a: usize, b: usize) -> ReesSpec {
    ReesSpec::new(FiniteGroup::trivial(), a, b, vec![vec![0; a]; b]).unwrap()
}

fn symbolic(p: u32, k: u32, rows: Vec<Vec<u32>>) -> SymbolicCyclicReesSpec {
    let group = SymbolicCyclicGroup::new(p.into(), k.into()).unwrap();
    let (a, b) = (rows[0].len(), rows.len());
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(BigUint::from).collect())
        .collect();
    SymbolicCyclicReesSpec::new(group, a, b, rows).unwrap()
}

fn n(x: u32) -> BigUint {
    BigUint::from(x)
}

fn q(s: &str) -> ExactRational {
    s.parse().unwrap()
}

#[test]
fn extract_examples() {
    let s3 = corpus::symmetric_group_3();
    let spec = ReesSpec::new(s3, 3, 2, vec![vec![1, 4, 2], vec![5, 0, 3]]).unwrap();
    for l in 0..2 {
        for m in 0..2 {
            for i in 0..3 {
                for j in 0..3 {
                    let x = spec.extract(l, m, i, j).unwrap();
                    if l == m || i == j {
                        assert_eq!(x, spec.group().identity());
                    }
                }
            }
        }
    }
    assert!(matches!(spec.extract(2, 0, 0, 0), Err(Error::Domain(_))));
    let z2 = z2_identity();
    assert_eq!(z2.extract(0, 1, 0, 1).unwrap(), 0);

    let sym = symbolic(37, 1, vec![vec![1, 2], vec![4, 8]]);
    let x = sym.extract(0, 1, 0, 1).unwrap();
    assert_eq!(sym.group().residue(&x, 64), Some(n(3)));
    assert!(sym.extract(0, 0, 2, 0).is_err());
}

#[test]
fn is_linked_examples() {
    let spec = ReesSpec::new(corpus::symmetric_group_3(), 2, 2, vec![vec![1, 4], vec![5, 3]]).unwrap();
    let g = spec.group();
    let whole = NormalSubgroup::whole(g);
    let trivial = NormalSubgroup::trivial(g);
    assert!(spec.is_linked(&whole, &BinaryRelation::full(2), &BinaryRelation::full(2)).unwrap());
    assert!(spec
        .is_linked(&trivial, &BinaryRelation::diagonal(2), &BinaryRelation::diagonal(2))
        .unwrap());
    assert!(matches!(
        spec.is_linked(&trivial, &BinaryRelation::diagonal(3), &BinaryRelation::diagonal(2)),
        Err(Error::Shape(_))
    ));

    // over Z_37 the extract 3 is not in the trivial subgroup
    let sym = symbolic(37, 1, vec![vec![1, 2], vec![4, 8]]);
    let (sigma, tau) = sym.sigma_tau(&n(1)).unwrap();
    assert!(sigma.is_discrete() && tau.is_discrete());
    let (sigma, _) = sym.sigma_tau(&n(0)).unwrap();
    assert!(sigma.is_single_block());
}

#[test]
fn linked_triple_checks() {
    let spec = ReesSpec::new(FiniteGroup::cyclic(2), 2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
    let g = spec.group();
    let err = spec
        .linked_triple(NormalSubgroup::trivial(g), BinaryRelation::full(2), BinaryRelation::diagonal(2))
        .unwrap_err();
    assert!(matches!(err, Error::Contract(_)));
    let err = spec
        .linked_triple(NormalSubgroup::whole(g), BinaryRelation::empty(2), BinaryRelation::diagonal(2))
        .unwrap_err();
    assert!(matches!(err, Error::Contract(_)));
    let t = spec
        .linked_triple(NormalSubgroup::whole(g), BinaryRelation::full(2), BinaryRelation::diagonal(2))
        .unwrap();
    assert_eq!(t.kind, TripleKind::Equivalence);
    let mut s = BinaryRelation::diagonal(2);
    s.insert(0, 1);
    let t = spec
        .linked_triple(NormalSubgroup::whole(g), s, BinaryRelation::diagonal(2))
        .unwrap();
    assert_eq!(t.kind, TripleKind::Reflexive);
}

#[test]
fn triple_to_relation_examples() {
    let spec = z2_identity();
    let g = spec.group();
    let order = spec.materialized_order();
    let s = spec.materialize(&lim()).unwrap();
    let rho = |normal, on_i, on_lambda| {
        let t = spec.linked_triple(normal, on_i, on_lambda).unwrap();
        spec.triple_to_relation(&t, &lim()).unwrap()
    };
    let delta = rho(NormalSubgroup::trivial(g), BinaryRelation::diagonal(2), BinaryRelation::diagonal(2));
    assert_eq!(delta, BinaryRelation::diagonal(order));
    let full = rho(NormalSubgroup::whole(g), BinaryRelation::full(2), BinaryRelation::full(2));
    assert_eq!(full, BinaryRelation::full(order));

    let fibres = rho(NormalSubgroup::whole(g), BinaryRelation::diagonal(2), BinaryRelation::diagonal(2));
    // (i,g,λ) ~ (i,h,λ): four fibres of size two
    assert_eq!(fibres.pair_count(), 16);
    for (x, y) in fibres.pairs() {
        let ((i, _, l), (j, _, m)) = (spec.decode(x), spec.decode(y));
        assert_eq!((i, l), (j, m));
    }
    assert!(s.is_diagonal_subsemigroup(&fibres).unwrap());
    let back = spec.relation_to_triple(&fibres, &lim()).unwrap();
    assert_eq!(back.normal, NormalSubgroup::whole(g));
    assert_eq!(back.on_i, BinaryRelation::diagonal(2));
    assert_eq!(back.on_lambda, BinaryRelation::diagonal(2));
    assert_eq!(back.kind, TripleKind::Equivalence);

    let bogus = LinkedTriple {
        normal: NormalSubgroup::trivial(g),
        on_i: BinaryRelation::full(2),
        on_lambda: BinaryRelation::full(2),
        kind: TripleKind::Equivalence,
    };
    let spec2 = ReesSpec::new(FiniteGroup::cyclic(2), 2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
    assert!(matches!(spec2.triple_to_relation(&bogus, &lim()), Err(Error::Contract(_))));
}

#[test]
fn relation_to_triple_examples() {
    let spec = z2_identity();
    let g = spec.group();
    let order = spec.materialized_order();
    let t = spec.relation_to_triple(&BinaryRelation::diagonal(order), &lim()).unwrap();
    assert_eq!(t.normal, NormalSubgroup::trivial(g));
    assert_eq!((t.on_i.clone(), t.on_lambda.clone()), (BinaryRelation::diagonal(2), BinaryRelation::diagonal(2)));
    let t = spec.relation_to_triple(&BinaryRelation::full(order), &lim()).unwrap();
    assert_eq!(t.normal, NormalSubgroup::whole(g));
    assert_eq!((t.on_i, t.on_lambda), (BinaryRelation::full(2), BinaryRelation::full(2)));

    let mut not_closed = BinaryRelation::diagonal(order);
    not_closed.insert(0, 1);
    not_closed.insert(0, 7);
    if !spec.materialize(&lim()).unwrap().is_diagonal_subsemigroup(&not_closed).unwrap() {
        assert!(matches!(spec.relation_to_triple(&not_closed, &lim()), Err(Error::Contract(_))));
    }
    assert!(matches!(
        spec.relation_to_triple(&BinaryRelation::empty(order), &lim()),
        Err(Error::Contract(_))
    ));
}

#[test]
fn sigma_tau_examples() {
    let spec = ReesSpec::new(corpus::symmetric_group_3(), 2, 3, vec![vec![1, 4], vec![5, 3], vec![0, 2]]).unwrap();
    let (sigma, tau) = spec.sigma_tau(&NormalSubgroup::whole(spec.group())).unwrap();
    assert!(sigma.is_single_block() && tau.is_single_block());
    let spec = z2_identity();
    let (sigma, tau) = spec.sigma_tau(&NormalSubgroup::trivial(spec.group())).unwrap();
    assert!(sigma.is_single_block() && tau.is_single_block());

    // the constructed spec with r = 2, k = 4: members p^3, p^4 sit below p^r
    let p = n(37);
    let group = SymbolicCyclicGroup::new(p.clone(), n(4)).unwrap();
    let entries = (0..4)
        .map(|s| PadicInt::from_parts(n(2), num_bigint::BigInt::from(1) << s, &p))
        .collect();
    let sym = SymbolicCyclicReesSpec::from_padic(group, 2, 2, entries).unwrap();
    for m in [3u32, 4] {
        let (sigma, tau) = sym.sigma_tau(&n(m)).unwrap();
        assert!(sigma.is_discrete() && tau.is_discrete());
    }
    for m in 0..=2u32 {
        let (sigma, tau) = sym.sigma_tau(&n(m)).unwrap();
        assert!(sigma.is_single_block() && tau.is_single_block());
    }
    assert!(sym.sigma_tau(&n(5)).is_err());
}

#[test]
fn census_examples() {
    let c = band(2, 2).triple_census(&lim()).unwrap();
    assert_eq!(c.rows().len(), 1);
    let row = &c.rows()[0];
    assert_eq!((row.e_i.clone(), row.e_lambda.clone()), (n(2), n(2)));
    assert_eq!((row.r_i.clone(), row.r_lambda.clone()), (n(4), n(4)));

    let c = z2_identity().triple_census(&lim()).unwrap();
    assert_eq!(c.rows().len(), 2);
    assert_eq!(c.congruence_count(), n(8));
    assert_eq!(c.diagonal_count(), n(32));

    let sym = symbolic(37, 8, vec![vec![1, 2], vec![4, 8]]);
    let c = sym.triple_census().unwrap();
    assert_eq!(c.subgroup_count(), n(9));
    assert_eq!(c.congruence_count(), n(4 + 8));
    assert_eq!(c.diagonal_count(), n(16 + 8));
    let full: Vec<_> = c.rows().iter().filter(|r| r.sigma.is_single_block()).collect();
    assert_eq!(full.len(), 1);
    assert_eq!(full[0].multiplicity, n(1));
    assert_eq!(sym.chi_rees().unwrap().chi, q("1/2"));
}

#[test]
fn chi_rees_examples() {
    assert_eq!(band(2, 2).chi_rees(&lim()).unwrap().chi, q("1/4"));
    let report = z2_identity().chi_rees(&lim()).unwrap();
    assert_eq!(report.chi, q("1/4"));
    let brute = z2_identity().materialize(&lim()).unwrap().dsc_coefficient(&lim()).unwrap();
    assert_eq!(brute, report);
    for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(3), corpus::symmetric_group_3()] {
        for b in 1..=4usize {
            let rows = (0..b).map(|l| vec![l % g.order()]).collect();
            let spec = ReesSpec::new(g.clone(), 1, b, rows).unwrap();
            let expected = ExactRational::from_counts(&bell(b).unwrap(), &crate::relations::reflexive_count(b)).unwrap();
            assert_eq!(spec.chi_rees(&lim()).unwrap().chi, expected, "b = {b}");
        }
    }
}

#[test]
fn materialize_examples() {
    let one = band(1, 1).materialize(&lim()).unwrap();
    assert_eq!(one.order(), 1);
    assert_eq!(band(2, 2).materialize(&lim()).unwrap(), corpus::rectangular_band(2, 2));
    let s = z2_identity().materialize(&lim()).unwrap();
    assert_eq!(s.order(), 8);
    assert_eq!(s.dsc_coefficient(&lim()).unwrap().chi, q("1/4"));
    let big = ReesSpec::new(FiniteGroup::cyclic(60), 2, 2, vec![vec![0, 0], vec![0, 0]]).unwrap();
    assert!(matches!(big.materialize(&lim()), Err(Error::Cap { .. })));
}

#[test]
fn symbolic_matches_concrete() {
    for (p, k) in [(2u32, 3u32), (3, 2), (5, 1), (7, 2)] {
        let m = p.pow(k);
        for seed in 0..6u32 {
            let rows: Vec<Vec<u32>> = (0..2)
                .map(|l| (0..2).map(|i| (seed * 7 + l * 3 + i * 5 + l * i * seed) % m).collect())
                .collect();
            let sym = symbolic(p, k, rows);
            let concrete = sym.to_concrete(&lim()).unwrap();
            assert_eq!(sym.chi_rees().unwrap(), concrete.chi_rees(&lim()).unwrap(), "p={p} k={k} seed={seed}");
        }
    }
}

#[test]
fn extract_of_inverse_pairs() {
    for (name, spec) in corpus::small_rees_specs() {
        let g = spec.group();
        let s = spec.materialize(&lim()).unwrap();
        for rho in s.diagonal_subsemigroups(&lim()).unwrap() {
            for i in 0..spec.a() {
                for l in 0..spec.b() {
                    for x in 0..g.order() {
                        for y in 0..g.order() {
                            if rho.contains(spec.element(i, x, l), spec.element(i, y, l)) {
                                assert!(
                                    rho.contains(spec.element(i, g.inv(x), l), spec.element(i, g.inv(y), l)),
                                    "{name}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

fn arb_spec() -> impl Strategy<Value = ReesSpec> {
    let groups = corpus::stored_groups();
    (0..groups.len(), 1usize..=3, 1usize..=3, proptest::collection::vec(0usize..64, 9)).prop_map(
        move |(gi, a, b, raw)| {
            let g = groups[gi].1.clone();
            let rows = (0..b).map(|l| (0..a).map(|i| raw[l * 3 + i] % g.order()).collect()).collect();
            ReesSpec::new(g, a, b, rows).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extract_facts(spec in arb_spec()) {
        let g = spec.group();
        let (a, b) = (spec.a(), spec.b());
        let q = |l, m, i, j| spec.extract(l, m, i, j).unwrap();
        for normal in g.normal_subgroups().unwrap() {
            for l in 0..b { for m in 0..b { for i in 0..a { for j in 0..a {
                if l == m || i == j {
                    prop_assert_eq!(q(l, m, i, j), g.identity());
                }
                prop_assert_eq!(g.inv(q(l, m, i, j)), q(l, m, j, i));
                if normal.contains(q(l, m, i, j)) {
                    prop_assert!(normal.contains(q(m, l, i, j)));
                    prop_assert!(normal.contains(q(l, m, j, i)));
                    prop_assert!(normal.contains(q(m, l, j, i)));
                }
                for k in 0..a {
                    if normal.contains(q(l, m, i, j)) && normal.contains(q(l, m, j, k)) {
                        prop_assert!(normal.contains(q(l, m, i, k)));
                    }
                }
                for nu in 0..b {
                    if normal.contains(q(l, m, i, j)) && normal.contains(q(m, nu, i, j)) {
                        prop_assert!(normal.contains(q(l, nu, i, j)));
                    }
                }
            }}}}
        }
    }

    #[test]
    fn closure_of_linked_is_linked(spec in arb_spec(), picks in proptest::collection::vec(any::<u32>(), 4)) {
        let g = spec.group();
        for normal in g.normal_subgroups().unwrap() {
            let (sigma, tau) = spec.sigma_tau(&normal).unwrap();
            let subs_i = reflexive_subrelations(&sigma);
            let subs_l = reflexive_subrelations(&tau);
            let s1 = &subs_i[picks[0] as usize % subs_i.len()];
            let s2 = &subs_i[picks[1] as usize % subs_i.len()];
            let t1 = &subs_l[picks[2] as usize % subs_l.len()];
            let t2 = &subs_l[picks[3] as usize % subs_l.len()];
            prop_assert!(spec.is_linked(&normal, s1, t1).unwrap());
            prop_assert!(spec.is_linked(&normal, s2, t2).unwrap());
            let s = s1.union(s2).equivalence_closure();
            let t = t1.union(t2).equivalence_closure();
            prop_assert!(spec.is_linked(&normal, &s, &t).unwrap());
        }
    }

    #[test]
    fn census_lower_bound(spec in arb_spec()) {
        let chi = spec.chi_rees(&lim()).unwrap().chi;
        if spec.a() > 1 && spec.b() > 1 {
            let floor = crate::constructor::dimension_bound(spec.a(), spec.b()).unwrap();
            prop_assert!(floor <= chi);
            prop_assert!(chi < ExactRational::one());
        }
    }
}
