//! Clifford semigroups `S[Y; G_α; φ_{α,β}]`: a meet semilattice `Y` of
//! groups glued by structure homomorphisms.
//!
//! The partial order on `Y` is derived from the meet table: `α >= β` iff
//! `αβ = β`. Elements of the materialized semigroup are numbered node by
//! node, then by group index.

use crate::groups::{FiniteGroup, NormalSubgroup};
use crate::relations::BinaryRelation;
use crate::semigroup::{DscReport, FiniteSemigroup};
use crate::{Error, ExactRational, Limits, Result};
use num_bigint::BigUint;

/// Unvalidated input for [`CliffordSystem::validate`]. `homs` lists maps
/// `(α, β, images)` for comparable pairs `α > β`; identity maps on a node may
/// be given but are implied.
#[derive(Clone, Debug)]
pub struct RawClifford {
    pub meet: Vec<Vec<usize>>,
    pub groups: Vec<FiniteGroup>,
    pub homs: Vec<(usize, usize, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordSystem {
    size: usize,
    meet: Vec<usize>,
    groups: Vec<FiniteGroup>,
    // homs[α * size + β] for α >= β
    homs: Vec<Option<Vec<usize>>>,
    offsets: Vec<usize>,
}

/// A normal subgroup per node with `φ_{α,β}(N_α) ⊆ N_β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KernelFamily {
    pub subgroups: Vec<NormalSubgroup>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    Congruence,
    Diagonal,
}

/// A kernel with a trace relation on `Y` (identified with the idempotents).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordPair {
    pub kernel: KernelFamily,
    pub trace: BinaryRelation,
    pub kind: PairKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordBoundReport {
    pub semigroup: DscReport,
    pub semilattice: DscReport,
    /// Number of kernels `K`.
    pub kernel_count: usize,
    /// Whether `K |Diag(Y)| <= |Diag(S)|`.
    pub pair_bound_holds: bool,
    /// Whether `χ(S) = χ(Y)`.
    pub tight: bool,
}

fn semilattice_witness(n: usize, meet: &[usize]) -> Option<String> {
    for x in 0..n {
        if meet[x * n + x] != x {
            return Some(format!("{x}*{x} != {x}"));
        }
        for y in 0..n {
            if meet[x * n + y] != meet[y * n + x] {
                return Some(format!("{x}*{y} != {y}*{x}"));
            }
        }
    }
    crate::groups::associativity_witness(n, meet)
        .map(|(x, y, z)| format!("({x}*{y})*{z} != {x}*({y}*{z})"))
}

impl CliffordSystem {
    pub fn validate(raw: RawClifford) -> Result<Self> {
        let meet = crate::groups::validate_square(&raw.meet)?;
        let n = raw.meet.len();
        if let Some(w) = semilattice_witness(n, &meet) {
            return Err(Error::Validation(format!("meet table is not a semilattice: {w}")));
        }
        if raw.groups.len() != n {
            return Err(Error::Validation(format!(
                "{} groups for a semilattice of size {n}",
                raw.groups.len()
            )));
        }
        let geq = |a: usize, b: usize| meet[a * n + b] == b;
        let mut homs: Vec<Option<Vec<usize>>> = vec![None; n * n];
        for (alpha, beta, map) in raw.homs {
            if alpha >= n || beta >= n {
                return Err(Error::Validation(format!("hom {alpha} -> {beta}: node out of range")));
            }
            if !geq(alpha, beta) {
                return Err(Error::Validation(format!("hom {alpha} -> {beta}: {alpha} is not above {beta}")));
            }
            let (src, dst) = (&raw.groups[alpha], &raw.groups[beta]);
            if map.len() != src.order() || map.iter().any(|&y| y >= dst.order()) {
                return Err(Error::Validation(format!("hom {alpha} -> {beta}: malformed map {map:?}")));
            }
            if alpha == beta && map.iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::Validation(format!("hom {alpha} -> {alpha} is not the identity")));
            }
            for x in 0..src.order() {
                for y in 0..src.order() {
                    if map[src.mul(x, y)] != dst.mul(map[x], map[y]) {
                        return Err(Error::Validation(format!(
                            "hom {alpha} -> {beta} is not a homomorphism: image of {x}*{y}"
                        )));
                    }
                }
            }
            if homs[alpha * n + beta].replace(map).is_some() {
                return Err(Error::Validation(format!("hom {alpha} -> {beta} given twice")));
            }
        }
        for alpha in 0..n {
            homs[alpha * n + alpha].get_or_insert_with(|| (0..raw.groups[alpha].order()).collect());
            for beta in 0..n {
                if geq(alpha, beta) && homs[alpha * n + beta].is_none() {
                    return Err(Error::Validation(format!("missing hom {alpha} -> {beta}")));
                }
            }
        }
        for a in 0..n {
            for b in (0..n).filter(|&b| geq(a, b)) {
                for c in (0..n).filter(|&c| geq(b, c)) {
                    let (ab, bc, ac) = (
                        homs[a * n + b].as_ref().unwrap(),
                        homs[b * n + c].as_ref().unwrap(),
                        homs[a * n + c].as_ref().unwrap(),
                    );
                    if let Some(x) = (0..ab.len()).find(|&x| bc[ab[x]] != ac[x]) {
                        return Err(Error::Validation(format!(
                            "homs {a} -> {b} -> {c} do not compose to {a} -> {c} at element {x}"
                        )));
                    }
                }
            }
        }
        let mut offsets = Vec::with_capacity(n);
        let mut total = 0;
        for g in &raw.groups {
            offsets.push(total);
            total += g.order();
        }
        Ok(CliffordSystem {
            size: n,
            meet,
            groups: raw.groups,
            homs,
            offsets,
        })
    }

    /// `|Y|`
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn geq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == b
    }

    pub fn group(&self, alpha: usize) -> &FiniteGroup {
        &self.groups[alpha]
    }

    /// `φ_{α,β}(x)`; panics unless `α >= β`.
    pub fn hom(&self, alpha: usize, beta: usize, x: usize) -> usize {
        self.homs[alpha * self.size + beta].as_ref().expect("comparable nodes")[x]
    }

    pub fn meet_rows(&self) -> Vec<Vec<usize>> {
        self.meet.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// Structure maps for comparable pairs `α > β`.
    pub fn proper_homs(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let n = self.size;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.geq(a, b))
            .map(|(a, b)| (a, b, self.homs[a * n + b].clone().unwrap()))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.groups.iter().map(FiniteGroup::order).sum()
    }

    pub fn element(&self, alpha: usize, g: usize) -> usize {
        self.offsets[alpha] + g
    }

    /// `(α, g)` for an element index.
    pub fn locate(&self, x: usize) -> (usize, usize) {
        let alpha = self.offsets.partition_point(|&o| o <= x) - 1;
        (alpha, x - self.offsets[alpha])
    }

    /// `1_α`
    pub fn idempotent(&self, alpha: usize) -> usize {
        self.element(alpha, self.groups[alpha].identity())
    }

    fn product(&self, x: usize, y: usize) -> usize {
        let ((a, gx), (b, gy)) = (self.locate(x), self.locate(y));
        let c = self.meet(a, b);
        self.element(c, self.groups[c].mul(self.hom(a, c, gx), self.hom(b, c, gy)))
    }

    fn inverse(&self, x: usize) -> usize {
        let (a, g) = self.locate(x);
        self.element(a, self.groups[a].inv(g))
    }

    pub fn materialize(&self, limits: &Limits) -> Result<FiniteSemigroup> {
        let n = self.order();
        if n > limits.materialize_order {
            return Err(Error::cap("Clifford semigroup order", n, limits.materialize_order));
        }
        let table: Vec<usize> = (0..n * n).map(|k| self.product(k / n, k % n)).collect();
        Ok(FiniteSemigroup::from_flat_unchecked(n, table))
    }

    /// `Y` as a semigroup.
    pub fn semilattice(&self) -> FiniteSemigroup {
        FiniteSemigroup::from_flat_unchecked(self.size, self.meet.clone())
    }

    /// Whether `E = {1_α}` multiplies like `Y` under `1_α ↦ α`.
    pub fn idempotents_match_semilattice(&self) -> bool {
        (0..self.size).all(|a| {
            (0..self.size).all(|b| self.product(self.idempotent(a), self.idempotent(b)) == self.idempotent(self.meet(a, b)))
        })
    }

    fn image_condition(&self, subgroups: &[NormalSubgroup]) -> bool {
        let n = self.size;
        (0..n).all(|a| {
            (0..n).filter(|&b| self.geq(a, b)).all(|b| {
                subgroups[a]
                    .elements()
                    .into_iter()
                    .all(|x| subgroups[b].contains(self.hom(a, b, x)))
            })
        })
    }

    pub fn is_kernel(&self, kernel: &KernelFamily) -> bool {
        kernel.subgroups.len() == self.size && self.image_condition(&kernel.subgroups)
    }

    pub fn enumerate_kernels(&self, limits: &Limits) -> Result<Vec<KernelFamily>> {
        let mut options = Vec::with_capacity(self.size);
        for g in &self.groups {
            if g.order() > limits.group_order {
                return Err(Error::cap("group order", g.order(), limits.group_order));
            }
            options.push(g.normal_subgroups()?);
        }
        let mut out = Vec::new();
        let mut chosen: Vec<NormalSubgroup> = Vec::with_capacity(self.size);
        self.extend_kernels(&options, &mut chosen, &mut out);
        Ok(out)
    }

    fn extend_kernels(
        &self,
        options: &[Vec<NormalSubgroup>],
        chosen: &mut Vec<NormalSubgroup>,
        out: &mut Vec<KernelFamily>,
    ) {
        let next = chosen.len();
        if next == self.size {
            out.push(KernelFamily {
                subgroups: chosen.clone(),
            });
            return;
        }
        for candidate in &options[next] {
            // check the image condition against already chosen nodes
            let ok = (0..next).all(|a| {
                let pair_ok = |hi: usize, lo: usize, n_hi: &NormalSubgroup, n_lo: &NormalSubgroup| {
                    !self.geq(hi, lo) || n_hi.elements().into_iter().all(|x| n_lo.contains(self.hom(hi, lo, x)))
                };
                pair_ok(a, next, &chosen[a], candidate) && pair_ok(next, a, candidate, &chosen[a])
            });
            if ok {
                chosen.push(candidate.clone());
                self.extend_kernels(options, chosen, out);
                chosen.pop();
            }
        }
    }

    fn check_pair_shape(&self, pair: &CliffordPair) -> Result<()> {
        if pair.trace.size() != self.size || pair.kernel.subgroups.len() != self.size {
            return Err(Error::Shape(format!(
                "pair over {} nodes with trace on {} points, semilattice of size {}",
                pair.kernel.subgroups.len(),
                pair.trace.size(),
                self.size
            )));
        }
        Ok(())
    }

    /// Trace is a congruence on `Y`, and `φ_{α,β}(x) ∈ N`, `(1_α, 1_β) ∈ τ`
    /// imply `x ∈ N` for all `α >= β`.
    pub fn is_congruence_pair(&self, pair: &CliffordPair) -> Result<bool> {
        self.check_pair_shape(pair)?;
        if !self.semilattice().is_congruence(&pair.trace)? {
            return Ok(false);
        }
        let n = self.size;
        let kernel = &pair.kernel.subgroups;
        Ok((0..n).all(|a| {
            (0..n)
                .filter(|&b| self.geq(a, b) && pair.trace.contains(a, b))
                .all(|b| {
                    (0..self.groups[a].order())
                        .all(|x| !kernel[b].contains(self.hom(a, b, x)) || kernel[a].contains(x))
                })
        }))
    }

    /// `ρ_{N,τ} = {(x, y) : (xx^-1, yy^-1) ∈ τ, xy^-1 ∈ N}`.
    pub fn rho_from_pair(&self, pair: &CliffordPair, limits: &Limits) -> Result<BinaryRelation> {
        self.check_pair_shape(pair)?;
        if !self.is_kernel(&pair.kernel) {
            return Err(Error::Contract("kernel family violates the image condition".into()));
        }
        if !self.semilattice().is_diagonal_subsemigroup(&pair.trace)? {
            return Err(Error::Contract("trace is not a diagonal subsemigroup of Y".into()));
        }
        let order = self.order();
        if order > limits.materialize_order {
            return Err(Error::cap("Clifford semigroup order", order, limits.materialize_order));
        }
        let mut rel = BinaryRelation::empty(order);
        for x in 0..order {
            let (a, _) = self.locate(x);
            for y in 0..order {
                let (b, _) = self.locate(y);
                if !pair.trace.contains(a, b) {
                    continue;
                }
                let (c, w) = self.locate(self.product(x, self.inverse(y)));
                if pair.kernel.subgroups[c].contains(w) {
                    rel.insert(x, y);
                }
            }
        }
        Ok(rel)
    }

    /// All kernels paired with all diagonal subsemigroups of `Y`.
    pub fn diagonal_pairs(&self, limits: &Limits) -> Result<Vec<CliffordPair>> {
        let kernels = self.enumerate_kernels(limits)?;
        let traces = self.semilattice().collect_diagonal_subsemigroups(limits)?;
        Ok(kernels
            .iter()
            .flat_map(|k| {
                traces.iter().map(move |t| CliffordPair {
                    kernel: k.clone(),
                    trace: t.clone(),
                    kind: PairKind::Diagonal,
                })
            })
            .collect())
    }

    /// All congruence pairs.
    pub fn congruence_pairs(&self, limits: &Limits) -> Result<Vec<CliffordPair>> {
        let kernels = self.enumerate_kernels(limits)?;
        let traces = self.semilattice().collect_congruences(limits)?;
        let mut out = Vec::new();
        for k in &kernels {
            for t in &traces {
                let pair = CliffordPair {
                    kernel: k.clone(),
                    trace: t.clone(),
                    kind: PairKind::Congruence,
                };
                if self.is_congruence_pair(&pair)? {
                    out.push(pair);
                }
            }
        }
        Ok(out)
    }

    /// Brute-force `χ(S)` and `χ(Y)` with the pair-family lower bound.
    pub fn chi_bound_report(&self, limits: &Limits) -> Result<CliffordBoundReport> {
        let semigroup = self.materialize(limits)?.dsc_coefficient(limits)?;
        let semilattice = self.semilattice().dsc_coefficient(limits)?;
        let kernel_count = self.enumerate_kernels(limits)?.len();
        if semigroup.chi > semilattice.chi {
            return Err(Error::Internal(format!(
                "chi(S) = {} exceeds chi(Y) = {}",
                semigroup.chi, semilattice.chi
            )));
        }
        let pair_bound_holds =
            BigUint::from(kernel_count) * &semilattice.diagonal_count <= semigroup.diagonal_count;
        let tight = semigroup.chi == semilattice.chi;
        Ok(CliffordBoundReport {
            semigroup,
            semilattice,
            kernel_count,
            pair_bound_holds,
            tight,
        })
    }
}

impl CliffordBoundReport {
    pub fn chi_s(&self) -> &ExactRational {
        &self.semigroup.chi
    }

    pub fn chi_y(&self) -> &ExactRational {
        &self.semilattice.chi
    }
}

/// `G^1` as a Clifford system: a trivial group on top of `G`. Element 0 is
/// the adjoined identity, elements `1..=|G|` are `G`.
pub fn adjoined_identity_system(group: &FiniteGroup) -> CliffordSystem {
    CliffordSystem::validate(RawClifford {
        meet: vec![vec![0, 1], vec![1, 1]],
        groups: vec![FiniteGroup::trivial(), group.clone()],
        homs: vec![(0, 1, vec![group.identity()])],
    })
    .expect("G^1 is a Clifford semigroup")
}

/// `{(1,1)} ∪ G×G ∪ {1}×H` on `G^1` for a proper subgroup `H`, checked to be
/// a diagonal subsemigroup that no diagonal pair produces.
pub fn adjoined_identity_counterexample(
    group: &FiniteGroup,
    subgroup: &[usize],
    limits: &Limits,
) -> Result<(CliffordSystem, BinaryRelation)> {
    let h = crate::bitset::BitSet::from_indices(group.order(), subgroup.iter().copied());
    if subgroup.iter().any(|&x| x >= group.order()) || !group.is_subgroup(&h) {
        return Err(Error::Contract(format!("{subgroup:?} is not a subgroup")));
    }
    if h.count() == group.order() {
        return Err(Error::Contract("subgroup is not proper".into()));
    }
    let system = adjoined_identity_system(group);
    let n = system.order();
    let mut rel = BinaryRelation::empty(n);
    rel.insert(0, 0);
    for x in 1..n {
        for y in 1..n {
            rel.insert(x, y);
        }
    }
    for x in h.iter() {
        rel.insert(0, system.element(1, x));
    }
    let semigroup = system.materialize(limits)?;
    if !semigroup.is_diagonal_subsemigroup(&rel)? {
        return Err(Error::Internal("counterexample is not a diagonal subsemigroup".into()));
    }
    for pair in system.diagonal_pairs(limits)? {
        if system.rho_from_pair(&pair, limits)? == rel {
            return Err(Error::Internal("counterexample arises from a diagonal pair".into()));
        }
    }
    Ok((system, rel))
}
