//! Stored groups and small semigroups used as test corpora.

use crate::clifford::{CliffordSystem, RawClifford};
use crate::groups::FiniteGroup;
use crate::rees::ReesSpec;
use crate::semigroup::FiniteSemigroup;
use std::collections::BTreeSet;

/// Builds a group table from an explicit element list whose first entry is
/// the identity.
fn group_from_elements<T: PartialEq>(elements: &[T], mul: impl Fn(&T, &T) -> T) -> FiniteGroup {
    let index = |x: &T| elements.iter().position(|e| e == x).expect("closed under product");
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|x| elements.iter().map(|y| index(&mul(x, y))).collect())
        .collect();
    FiniteGroup::from_table(&table).expect("stored group table")
}

/// Closes a set of permutation generators under composition; the identity
/// comes first, then lexicographic order.
fn permutation_group(degree: usize, generators: &[Vec<usize>]) -> FiniteGroup {
    let compose = |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> { (0..degree).map(|i| q[p[i]]).collect() };
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity.clone()];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = compose(&p, g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.remove(&identity);
    let mut elements = vec![identity];
    elements.extend(seen);
    group_from_elements(&elements, compose)
}

pub fn symmetric_group_3() -> FiniteGroup {
    permutation_group(3, &[vec![1, 0, 2], vec![1, 2, 0]])
}

/// Symmetries of a square, order 8.
pub fn dihedral_group_4() -> FiniteGroup {
    permutation_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
}

pub fn klein_four_group() -> FiniteGroup {
    let elements: Vec<u8> = (0..4).collect();
    group_from_elements(&elements, |a, b| a ^ b)
}

/// Quaternion group: elements `(sign, unit)` with units `1, i, j, k`.
pub fn quaternion_group() -> FiniteGroup {
    // unit products: UNIT[a][b] = (sign flip, unit)
    const UNIT: [[(bool, u8); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let elements: Vec<(bool, u8)> = (0..8).map(|k| (k >= 4, k % 4)).collect();
    group_from_elements(&elements, |&(sa, ua), &(sb, ub)| {
        let (flip, u) = UNIT[ua as usize][ub as usize];
        (sa ^ sb ^ flip, u)
    })
}

/// The twelve groups of order at most 8 used throughout the tests.
pub fn stored_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("trivial", FiniteGroup::trivial()),
        ("Z2", FiniteGroup::cyclic(2)),
        ("Z3", FiniteGroup::cyclic(3)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("V4", klein_four_group()),
        ("Z5", FiniteGroup::cyclic(5)),
        ("S3", symmetric_group_3()),
        ("Z6", FiniteGroup::cyclic(6)),
        ("Z7", FiniteGroup::cyclic(7)),
        ("Z8", FiniteGroup::cyclic(8)),
        ("D4", dihedral_group_4()),
        ("Q8", quaternion_group()),
    ]
}

/// The `a x b` rectangular band, product `(i, l)(j, m) = (i, m)`, elements
/// ordered as `i * b + l`.
pub fn rectangular_band(a: usize, b: usize) -> FiniteSemigroup {
    let n = a * b;
    let table: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| (x / b) * b + y % b).collect())
        .collect();
    FiniteSemigroup::from_table(&table).expect("rectangular band")
}

pub fn left_zero_semigroup(n: usize) -> FiniteSemigroup {
    let table: Vec<Vec<usize>> = (0..n).map(|x| vec![x; n]).collect();
    FiniteSemigroup::from_table(&table).expect("left zero semigroup")
}

/// Meet semilattice of a chain `0 > 1 > ... > n-1` (index `n-1` is the
/// bottom): `x * y = max(x, y)`.
pub fn chain_semilattice(n: usize) -> FiniteSemigroup {
    let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| x.max(y)).collect()).collect();
    FiniteSemigroup::from_table(&table).expect("chain")
}

/// One representative of every isomorphism class of semigroups of order
/// `1..=max_order`, found by backtracking over Cayley tables.
pub fn semigroups_up_to_order(max_order: usize) -> Vec<FiniteSemigroup> {
    (1..=max_order).flat_map(semigroups_of_order).collect()
}

pub fn semigroups_of_order(n: usize) -> Vec<FiniteSemigroup> {
    const UNSET: usize = usize::MAX;
    let mut table = vec![UNSET; n * n];
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    let perms = permutations(n);

    fn consistent(n: usize, t: &[usize]) -> bool {
        for x in 0..n {
            for y in 0..n {
                let xy = t[x * n + y];
                if xy == usize::MAX {
                    continue;
                }
                for z in 0..n {
                    let yz = t[y * n + z];
                    if yz == usize::MAX {
                        continue;
                    }
                    let (l, r) = (t[xy * n + z], t[x * n + yz]);
                    if l != usize::MAX && r != usize::MAX && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(
        n: usize,
        cell: usize,
        t: &mut Vec<usize>,
        perms: &[Vec<usize>],
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if cell == n * n {
            out.insert(canonical_form(n, t, perms));
            return;
        }
        for v in 0..n {
            t[cell] = v;
            if consistent(n, t) {
                fill(n, cell + 1, t, perms, out);
            }
        }
        t[cell] = usize::MAX;
    }

    fill(n, 0, &mut table, &perms, &mut classes);
    classes
        .into_iter()
        .map(|flat| FiniteSemigroup::from_flat_unchecked(n, flat))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least relabelling of a table.
fn canonical_form(n: usize, t: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| {
            // relabelled table: t'[p x][p y] = p[t[x][y]]
            let mut r = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    r[p[x] * n + p[y]] = p[t[x * n + y]];
                }
            }
            r
        })
        .min()
        .expect("at least one permutation")
}

/// Rees matrix specs over groups up to `Z_3` with index sets of size at most
/// two: every materialization has order at most 12.
pub fn small_rees_specs() -> Vec<(String, ReesSpec)> {
    let mut out = Vec::new();
    let add = |out: &mut Vec<(String, ReesSpec)>, name: String, g: &FiniteGroup, a, b, rows: Vec<Vec<usize>>| {
        out.push((name, ReesSpec::new(g.clone(), a, b, rows).expect("corpus spec")));
    };
    let triv = FiniteGroup::trivial();
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    add(&mut out, "band 1x1".into(), &triv, 1, 1, vec![vec![0]]);
    add(&mut out, "band 1x2".into(), &triv, 1, 2, vec![vec![0], vec![0]]);
    add(&mut out, "band 2x1".into(), &triv, 2, 1, vec![vec![0, 0]]);
    add(&mut out, "band 2x2".into(), &triv, 2, 2, vec![vec![0, 0], vec![0, 0]]);
    add(&mut out, "Z2 1x1".into(), &z2, 1, 1, vec![vec![1]]);
    add(&mut out, "Z2 1x2 [0;1]".into(), &z2, 1, 2, vec![vec![0], vec![1]]);
    add(&mut out, "Z2 2x1 [0 1]".into(), &z2, 2, 1, vec![vec![0, 1]]);
    add(&mut out, "Z3 2x1 [1 2]".into(), &z3, 2, 1, vec![vec![1, 2]]);
    // every 2x2 sandwich matrix over Z2 (16 of them)
    for m in 0..16usize {
        let rows = vec![vec![m & 1, m >> 1 & 1], vec![m >> 2 & 1, m >> 3 & 1]];
        add(&mut out, format!("Z2 2x2 {rows:?}"), &z2, 2, 2, rows);
    }
    for rows in [
        vec![vec![0, 0], vec![0, 0]],
        vec![vec![0, 0], vec![0, 1]],
        vec![vec![0, 1], vec![2, 0]],
        vec![vec![1, 2], vec![2, 1]],
        vec![vec![2, 2], vec![2, 2]],
        vec![vec![0, 2], vec![0, 1]],
    ] {
        add(&mut out, format!("Z3 2x2 {rows:?}"), &z3, 2, 2, rows);
    }
    out
}

/// Clifford systems whose materializations stay within the default
/// brute-force cap.
pub fn small_clifford_systems() -> Vec<(&'static str, CliffordSystem)> {
    let triv = FiniteGroup::trivial;
    let z2 = || FiniteGroup::cyclic(2);
    let z3 = || FiniteGroup::cyclic(3);
    let chain2 = vec![vec![0, 1], vec![1, 1]];
    let build = |meet: Vec<Vec<usize>>, groups: Vec<FiniteGroup>, homs: Vec<(usize, usize, Vec<usize>)>| {
        CliffordSystem::validate(RawClifford { meet, groups, homs }).expect("corpus system")
    };
    vec![
        ("Z2", build(vec![vec![0]], vec![z2()], vec![])),
        ("S3", build(vec![vec![0]], vec![symmetric_group_3()], vec![])),
        (
            "2-chain trivial",
            build(chain2.clone(), vec![triv(), triv()], vec![(0, 1, vec![0])]),
        ),
        (
            "Z2 over trivial",
            build(chain2.clone(), vec![z2(), triv()], vec![(0, 1, vec![0, 0])]),
        ),
        (
            "Z2 over Z2 identity",
            build(chain2.clone(), vec![z2(), z2()], vec![(0, 1, vec![0, 1])]),
        ),
        (
            "Z2 over Z2 collapse",
            build(chain2.clone(), vec![z2(), z2()], vec![(0, 1, vec![0, 0])]),
        ),
        (
            "Z2 with identity adjoined",
            build(chain2.clone(), vec![triv(), z2()], vec![(0, 1, vec![0])]),
        ),
        (
            "Z3 with identity adjoined",
            build(chain2, vec![triv(), z3()], vec![(0, 1, vec![0])]),
        ),
        (
            "3-chain Z2 top",
            build(
                vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
                vec![z2(), triv(), triv()],
                vec![(0, 1, vec![0, 0]), (0, 2, vec![0, 0]), (1, 2, vec![0])],
            ),
        ),
        (
            "diamond trivial",
            // 0 on top, 1 and 2 incomparable, 3 at the bottom
            build(
                vec![vec![0, 1, 2, 3], vec![1, 1, 3, 3], vec![2, 3, 2, 3], vec![3, 3, 3, 3]],
                vec![triv(), triv(), triv(), triv()],
                vec![
                    (0, 1, vec![0]),
                    (0, 2, vec![0]),
                    (0, 3, vec![0]),
                    (1, 3, vec![0]),
                    (2, 3, vec![0]),
                ],
            ),
        ),
        (
            "V-shape Z2 leaves",
            // 0 and 1 incomparable, meet 2
            build(
                vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]],
                vec![z2(), z2(), z2()],
                vec![(0, 2, vec![0, 1]), (1, 2, vec![0, 0])],
            ),
        ),
    ]
}
