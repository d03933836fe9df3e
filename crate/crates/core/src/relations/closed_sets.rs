//! Enumeration of the closed sets of a closure operator.
//!
//! [`NextClosure`] streams closed sets in lectic order of their
//! characteristic vectors. The counting and collecting entry points walk the
//! Close-by-One tree instead: every closed set `B` has a unique parent, namely
//! the closed set it was generated from by adding the first element that
//! distinguishes it, so subtrees can be explored independently.

use crate::bitset::BitSet;

/// Streams the closed sets of `closure` over `{0..universe_size-1}`.
///
/// `closure` must be extensive, monotone and idempotent.
pub fn enumerate_closed_sets<F>(universe_size: usize, closure: F) -> NextClosure<F>
where
    F: Fn(&BitSet) -> BitSet,
{
    NextClosure {
        universe: universe_size,
        next: None,
        started: false,
        closure,
    }
}

pub struct NextClosure<F> {
    universe: usize,
    next: Option<BitSet>,
    started: bool,
    closure: F,
}

impl<F> NextClosure<F>
where
    F: Fn(&BitSet) -> BitSet,
{
    fn successor(&self, current: &BitSet) -> Option<BitSet> {
        let mut prefix = current.clone();
        for i in (0..self.universe).rev() {
            if prefix.contains(i) {
                prefix.remove(i);
            } else {
                let mut candidate = prefix.clone();
                candidate.insert(i);
                let closed = (self.closure)(&candidate);
                if closed.agrees_below(&prefix, i) {
                    return Some(closed);
                }
            }
        }
        None
    }
}

impl<F> Iterator for NextClosure<F>
where
    F: Fn(&BitSet) -> BitSet,
{
    type Item = BitSet;

    fn next(&mut self) -> Option<BitSet> {
        if !self.started {
            self.started = true;
            self.next = Some((self.closure)(&BitSet::new(self.universe)));
        }
        let current = self.next.take()?;
        self.next = self.successor(&current);
        Some(current)
    }
}

fn child<F>(closure: &F, parent: &BitSet, i: usize) -> Option<BitSet>
where
    F: Fn(&BitSet) -> BitSet,
{
    if parent.contains(i) {
        return None;
    }
    let mut candidate = parent.clone();
    candidate.insert(i);
    let closed = closure(&candidate);
    closed.agrees_below(parent, i).then_some(closed)
}

fn count_subtree_seq<F>(closure: &F, n: usize, node: &BitSet, start: usize) -> u64
where
    F: Fn(&BitSet) -> BitSet,
{
    1 + (start..n)
        .filter_map(|i| child(closure, node, i).map(|c| (c, i)))
        .map(|(c, i)| count_subtree_seq(closure, n, &c, i + 1))
        .sum::<u64>()
}

fn collect_subtree_seq<F>(closure: &F, n: usize, node: BitSet, start: usize, out: &mut Vec<BitSet>)
where
    F: Fn(&BitSet) -> BitSet,
{
    let children: Vec<(BitSet, usize)> = (start..n)
        .filter_map(|i| child(closure, &node, i).map(|c| (c, i)))
        .collect();
    out.push(node);
    for (c, i) in children {
        collect_subtree_seq(closure, n, c, i + 1, out);
    }
}

/// All closed sets in lectic order, computed on a single thread.
pub fn collect_closed_sets_sequential<F>(universe_size: usize, closure: F) -> Vec<BitSet>
where
    F: Fn(&BitSet) -> BitSet,
{
    let root = closure(&BitSet::new(universe_size));
    let mut out = Vec::new();
    collect_subtree_seq(&closure, universe_size, root, 0, &mut out);
    out.sort_by(|a, b| a.lectic_cmp(b));
    out
}

/// Number of closed sets, computed on a single thread.
pub fn count_closed_sets_sequential<F>(universe_size: usize, closure: F) -> u64
where
    F: Fn(&BitSet) -> BitSet,
{
    let root = closure(&BitSet::new(universe_size));
    count_subtree_seq(&closure, universe_size, &root, 0)
}

#[cfg(feature = "parallel")]
mod parallel {
    use super::*;
    use rayon::prelude::*;

    pub(super) fn count_subtree<F>(closure: &F, n: usize, node: &BitSet, start: usize) -> u64
    where
        F: Fn(&BitSet) -> BitSet + Sync,
    {
        1 + (start..n)
            .into_par_iter()
            .filter_map(|i| child(closure, node, i).map(|c| (c, i)))
            .map(|(c, i)| count_subtree(closure, n, &c, i + 1))
            .sum::<u64>()
    }

    pub(super) fn collect_subtree<F>(closure: &F, n: usize, node: BitSet, start: usize) -> Vec<BitSet>
    where
        F: Fn(&BitSet) -> BitSet + Sync,
    {
        let mut out: Vec<BitSet> = (start..n)
            .into_par_iter()
            .filter_map(|i| child(closure, &node, i).map(|c| (c, i)))
            .flat_map_iter(|(c, i)| collect_subtree(closure, n, c, i + 1))
            .collect();
        out.push(node);
        out
    }
}

/// Number of closed sets, with subtrees of the Close-by-One tree explored on
/// the rayon pool.
#[cfg(feature = "parallel")]
pub fn count_closed_sets_parallel<F>(universe_size: usize, closure: F) -> u64
where
    F: Fn(&BitSet) -> BitSet + Sync,
{
    let root = closure(&BitSet::new(universe_size));
    parallel::count_subtree(&closure, universe_size, &root, 0)
}

/// Number of closed sets; parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn count_closed_sets<F>(universe_size: usize, closure: F) -> u64
where
    F: Fn(&BitSet) -> BitSet + Sync,
{
    count_closed_sets_parallel(universe_size, closure)
}

#[cfg(not(feature = "parallel"))]
pub fn count_closed_sets<F>(universe_size: usize, closure: F) -> u64
where
    F: Fn(&BitSet) -> BitSet + Sync,
{
    count_closed_sets_sequential(universe_size, closure)
}

/// All closed sets, sorted into lectic order. The result does not depend on
/// the number of worker threads.
pub fn collect_closed_sets<F>(universe_size: usize, closure: F) -> Vec<BitSet>
where
    F: Fn(&BitSet) -> BitSet + Sync,
{
    #[cfg(feature = "parallel")]
    {
        let root = closure(&BitSet::new(universe_size));
        let mut all = parallel::collect_subtree(&closure, universe_size, root, 0);
        all.sort_by(|a, b| a.lectic_cmp(b));
        all
    }
    #[cfg(not(feature = "parallel"))]
    collect_closed_sets_sequential(universe_size, closure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::BinaryRelation;
    use std::cmp::Ordering;

    fn naive_closed_sets<F: Fn(&BitSet) -> BitSet>(n: usize, closure: &F) -> Vec<BitSet> {
        let mut out: Vec<BitSet> = (0u64..1 << n)
            .map(|m| BitSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
            .filter(|s| closure(s) == *s)
            .collect();
        out.sort_by(|a, b| a.lectic_cmp(b));
        out
    }

    #[test]
    fn identity_closure_yields_power_set() {
        let sets: Vec<_> = enumerate_closed_sets(2, |s: &BitSet| s.clone()).collect();
        assert_eq!(
            sets,
            vec![
                BitSet::new(2),
                BitSet::from_indices(2, [1]),
                BitSet::from_indices(2, [0]),
                BitSet::from_indices(2, [0, 1]),
            ]
        );
    }

    #[test]
    fn add_zero_closure() {
        let close = |s: &BitSet| {
            let mut t = s.clone();
            t.insert(0);
            t
        };
        let sets: Vec<_> = enumerate_closed_sets(2, close).collect();
        assert_eq!(
            sets,
            vec![BitSet::from_indices(2, [0]), BitSet::from_indices(2, [0, 1])]
        );
    }

    /// Off-diagonal pairs of a 3-set, closed under equivalence closure.
    fn off_diagonal_equivalence(n: usize) -> (Vec<(usize, usize)>, impl Fn(&BitSet) -> BitSet + Sync) {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let p2 = pairs.clone();
        let close = move |s: &BitSet| {
            let rel = BinaryRelation::from_pairs(n, s.iter().map(|k| p2[k]));
            let closed = rel.equivalence_closure();
            BitSet::from_indices(
                p2.len(),
                p2.iter()
                    .enumerate()
                    .filter(|(_, &(i, j))| closed.contains(i, j))
                    .map(|(k, _)| k),
            )
        };
        (pairs, close)
    }

    #[test]
    fn equivalence_closure_on_three_points_gives_bell_three() {
        let (pairs, close) = off_diagonal_equivalence(3);
        assert_eq!(pairs.len(), 6);
        let naive = naive_closed_sets(6, &close);
        assert_eq!(naive.len(), 5);
        let stream: Vec<_> = enumerate_closed_sets(6, &close).collect();
        assert_eq!(stream, naive);
        assert_eq!(count_closed_sets_sequential(6, &close), 5);
        assert_eq!(count_closed_sets(6, &close), 5);
        assert_eq!(collect_closed_sets(6, &close), naive);
    }

    #[test]
    fn engines_agree_with_naive_filter_up_to_twelve() {
        // closure: x in X and x+1 < n forces x+1 (downward-free chain rule)
        // plus "0 and 1 force 2"
        for n in 0..=12usize {
            let close = move |s: &BitSet| {
                let mut t = s.clone();
                let mut changed = true;
                while changed {
                    changed = false;
                    for x in 0..n {
                        if t.contains(x) && x % 3 == 0 && x + 1 < n && t.insert(x + 1) {
                            changed = true;
                        }
                    }
                    if n > 2 && t.contains(0) && t.contains(1) && t.insert(2) {
                        changed = true;
                    }
                }
                t
            };
            let naive = naive_closed_sets(n, &close);
            let stream: Vec<_> = enumerate_closed_sets(n, &close).collect();
            assert_eq!(stream, naive, "n = {n}");
            assert_eq!(count_closed_sets(n, &close), naive.len() as u64);
            assert_eq!(collect_closed_sets(n, &close), naive);
        }
    }

    #[test]
    fn stream_is_strictly_lectic() {
        let (_, close) = off_diagonal_equivalence(4);
        let sets: Vec<_> = enumerate_closed_sets(12, &close).collect();
        assert_eq!(sets.len(), 15);
        for w in sets.windows(2) {
            assert_eq!(w[0].lectic_cmp(&w[1]), Ordering::Less);
        }
    }
}
