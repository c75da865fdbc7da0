//! Combinatorics on the extended support `Λ ∪ Λ̃`: the `⋆` operation, the
//! one-step propagation map `ψ`, connections and the quotient `(Λ \ {0})/∼`.
//!
//! `ψ` distributes over unions, so a label lies in an iterated `ψ` set iff a
//! chain of single-element `ψ` steps reaches it. Reachability is therefore a
//! breadth-first search over elements, and connection families are read off
//! the search tree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::Deref;
use std::sync::OnceLock;

use crate::algebra::{ExtLabel, GradedAlgebra, LabelId, ProductTarget, ValidationReport};
use crate::error::{Error, Result};

/// Cached `λ ⋆ μ` for plain labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarTable {
    n: usize,
    plain: Vec<Option<LabelId>>,
}

impl StarTable {
    /// Fails if some pair of blocks multiplies into more than one block.
    pub fn new(alg: &GradedAlgebra) -> Result<Self> {
        let n = alg.label_count();
        let mut plain = Vec::with_capacity(n * n);
        for s in alg.label_ids() {
            for t in alg.label_ids() {
                plain.push(match alg.component_product_target(s, t) {
                    ProductTarget::Zero => None,
                    ProductTarget::Target(u) => Some(u),
                    ProductTarget::Incoherent(_) => {
                        return Err(Error::Invalid(format!(
                            "products of {} and {} are not homogeneous",
                            alg.label_name(s),
                            alg.label_name(t)
                        )))
                    }
                });
            }
        }
        Ok(StarTable { n, plain })
    }

    pub fn plain(&self, a: LabelId, b: LabelId) -> Option<LabelId> {
        self.plain[a.0 * self.n + b.0]
    }

    pub fn star(&self, a: ExtLabel, b: ExtLabel) -> BTreeSet<LabelId> {
        match (a.tilde, b.tilde) {
            (false, false) => self.plain(a.base, b.base).into_iter().collect(),
            (false, true) => self.inverse(a.base, b.base),
            (true, false) => self.inverse(b.base, a.base),
            (true, true) => BTreeSet::new(),
        }
    }

    /// `λ ⋆ μ̃ = {η : η ⋆ μ = {λ}}`
    fn inverse(&self, lambda: LabelId, mu: LabelId) -> BTreeSet<LabelId> {
        (0..self.n).map(LabelId).filter(|&eta| self.plain(eta, mu) == Some(lambda)).collect()
    }
}

/// An algebra that passed every axiom check, together with its `⋆` table.
#[derive(Debug)]
pub struct CheckedAlgebra {
    alg: GradedAlgebra,
    star: StarTable,
    partition: OnceLock<ConnectionPartition>,
}

impl CheckedAlgebra {
    pub fn new(alg: GradedAlgebra) -> Result<Self> {
        let report = alg.validate();
        if !report.is_valid() {
            return Err(Error::Invalid(format!("failed checks: {}", report.failed().join(", "))));
        }
        Self::from_report(alg, &report)
    }

    /// Reuse a report already computed for `alg`.
    pub fn from_report(alg: GradedAlgebra, report: &ValidationReport) -> Result<Self> {
        if !report.is_valid() {
            return Err(Error::Invalid(format!("failed checks: {}", report.failed().join(", "))));
        }
        let star = StarTable::new(&alg)?;
        Ok(CheckedAlgebra { alg, star, partition: OnceLock::new() })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.alg
    }

    pub fn into_inner(self) -> GradedAlgebra {
        self.alg
    }

    pub fn star_table(&self) -> &StarTable {
        &self.star
    }

    pub fn star(&self, a: ExtLabel, b: ExtLabel) -> BTreeSet<LabelId> {
        self.star.star(a, b)
    }

    pub fn psi(&self, omega: &BTreeSet<ExtLabel>, a: ExtLabel) -> Result<BTreeSet<ExtLabel>> {
        psi(self, omega, a)
    }

    pub fn partition(&self) -> &ConnectionPartition {
        self.partition.get_or_init(|| connection_classes(self))
    }

    fn is_zero_ext(&self, e: ExtLabel) -> bool {
        self.alg.is_zero_label(e.base)
    }
}

impl Deref for CheckedAlgebra {
    type Target = GradedAlgebra;
    fn deref(&self) -> &GradedAlgebra {
        &self.alg
    }
}

pub fn star(alg: &CheckedAlgebra, a: ExtLabel, b: ExtLabel) -> BTreeSet<LabelId> {
    alg.star.star(a, b)
}

/// `ψ(Ω, a)`: the labels of `⋃ x ⋆ a` other than `0`, together with their
/// tilde twins.
pub fn psi(alg: &CheckedAlgebra, omega: &BTreeSet<ExtLabel>, a: ExtLabel) -> Result<BTreeSet<ExtLabel>> {
    if omega.iter().any(|&x| alg.is_zero_ext(x)) {
        return Err(Error::ZeroInPsiDomain);
    }
    let mut out = BTreeSet::new();
    for &x in omega {
        for eta in alg.star(x, a) {
            if !alg.is_zero_label(eta) {
                out.insert(ExtLabel::plain(eta));
                out.insert(ExtLabel::tilde(eta));
            }
        }
    }
    Ok(out)
}

/// Breadth-first closure from `{λ, λ̃}` with the parent `(x, a)` of every
/// reached symbol.
#[derive(Clone, Debug)]
struct Search {
    root: LabelId,
    parent: BTreeMap<ExtLabel, Option<(ExtLabel, ExtLabel)>>,
}

impl Search {
    fn run(alg: &CheckedAlgebra, root: LabelId) -> Search {
        let mut parent = BTreeMap::new();
        let mut queue = VecDeque::new();
        for start in [ExtLabel::plain(root), ExtLabel::tilde(root)] {
            parent.insert(start, None);
            queue.push_back(start);
        }
        let ext: Vec<ExtLabel> = alg.ext_labels().collect();
        while let Some(x) = queue.pop_front() {
            let single = BTreeSet::from([x]);
            for &a in &ext {
                // x is never 0 or 0̃: the root is nonzero and ψ drops them
                let next = psi(alg, &single, a).expect("zero symbols are never enqueued");
                for y in next {
                    if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(y) {
                        slot.insert(Some((x, a)));
                        queue.push_back(y);
                    }
                }
            }
        }
        Search { root, parent }
    }

    fn reached(&self) -> BTreeSet<ExtLabel> {
        self.parent.keys().copied().collect()
    }

    /// Connection family `{λ_1, …, λ_n}` from the root to `target`.
    fn family(&self, target: LabelId) -> Option<Vec<ExtLabel>> {
        if target == self.root {
            return Some(vec![ExtLabel::plain(target)]);
        }
        let mut node = ExtLabel::plain(target);
        let mut steps = Vec::new();
        while let Some(Some((x, a))) = self.parent.get(&node) {
            steps.push(*a);
            node = *x;
        }
        if !self.parent.contains_key(&ExtLabel::plain(target)) {
            return None;
        }
        steps.push(node);
        steps.reverse();
        Some(steps)
    }
}

fn check_nonzero(alg: &CheckedAlgebra, l: LabelId) -> Result<()> {
    if l.0 >= alg.label_count() {
        return Err(Error::UnknownLabel(format!("#{}", l.0)));
    }
    if alg.is_zero_label(l) {
        return Err(Error::ZeroLabelArgument(alg.label_name(l).to_string()));
    }
    Ok(())
}

/// Smallest tilde-closed set containing `{λ, λ̃}` and closed under one-step `ψ` moves.
pub fn reachable(alg: &CheckedAlgebra, lambda: LabelId) -> Result<BTreeSet<ExtLabel>> {
    check_nonzero(alg, lambda)?;
    Ok(Search::run(alg, lambda).reached())
}

/// A connection family from `λ` to `μ`, if one exists.
pub fn is_connected(alg: &CheckedAlgebra, lambda: LabelId, mu: LabelId) -> Result<Option<Vec<ExtLabel>>> {
    check_nonzero(alg, lambda)?;
    check_nonzero(alg, mu)?;
    Ok(Search::run(alg, lambda).family(mu))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayError {
    EmptyFamily,
    /// `n = 1` but the family is not `{λ}` with `λ = μ`.
    BadSingleton,
    /// `λ_1 ∉ {λ, λ̃}`.
    BadStart,
    /// The iterated set became empty after this many steps.
    Empty {
        step: usize,
    },
    /// `μ` is missing from the final set.
    TargetMissing,
    /// A step hit the distinguished zero in the domain of `ψ`.
    ZeroInDomain {
        step: usize,
    },
}

/// Replay a connection family through `ψ` set by set and check conditions
/// (1)–(3) of a connection from `λ` to `μ`.
pub fn replay_witness(
    alg: &CheckedAlgebra,
    lambda: LabelId,
    mu: LabelId,
    family: &[ExtLabel],
) -> Result<(), ReplayError> {
    let (&first, rest) = family.split_first().ok_or(ReplayError::EmptyFamily)?;
    if rest.is_empty() {
        return if first == ExtLabel::plain(lambda) && lambda == mu { Ok(()) } else { Err(ReplayError::BadSingleton) };
    }
    if first.base != lambda {
        return Err(ReplayError::BadStart);
    }
    let mut set = BTreeSet::from([first]);
    for (step, &a) in rest.iter().enumerate() {
        set = psi(alg, &set, a).map_err(|_| ReplayError::ZeroInDomain { step })?;
        if set.is_empty() {
            return Err(ReplayError::Empty { step: step + 1 });
        }
    }
    if set.contains(&ExtLabel::plain(mu)) {
        Ok(())
    } else {
        Err(ReplayError::TargetMissing)
    }
}

/// The quotient `(Λ \ {0})/∼` with a connection family for every ordered
/// pair inside a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionPartition {
    pub classes: Vec<Vec<LabelId>>,
    pub witness: BTreeMap<(LabelId, LabelId), Vec<ExtLabel>>,
    /// `[λ]` as computed from `λ`, for every nonzero label.
    pub closure: BTreeMap<LabelId, BTreeSet<LabelId>>,
}

impl ConnectionPartition {
    pub fn class_of(&self, l: LabelId) -> Option<&[LabelId]> {
        self.classes.iter().find(|c| c.contains(&l)).map(Vec::as_slice)
    }

    pub fn is_class(&self, cls: &[LabelId]) -> bool {
        let mut sorted = cls.to_vec();
        sorted.sort();
        self.classes.contains(&sorted)
    }

    /// Pairs breaking symmetry or transitivity of `∼`; empty when `∼` is an
    /// equivalence relation.
    pub fn equivalence_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&l, cl) in &self.closure {
            if !cl.contains(&l) {
                out.push(format!("reflexivity fails at #{}", l.0));
            }
            for &m in cl {
                if !self.closure.get(&m).is_some_and(|c| c.contains(&l)) {
                    out.push(format!("symmetry fails for (#{}, #{})", l.0, m.0));
                }
                if let Some(cm) = self.closure.get(&m) {
                    for t in cm {
                        if !cl.contains(t) {
                            out.push(format!("transitivity fails for (#{}, #{}, #{})", l.0, m.0, t.0));
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn connection_classes(alg: &CheckedAlgebra) -> ConnectionPartition {
    let searches: BTreeMap<LabelId, Search> = alg.nonzero_labels().map(|l| (l, Search::run(alg, l))).collect();
    let closure: BTreeMap<LabelId, BTreeSet<LabelId>> = searches
        .iter()
        .map(|(&l, s)| {
            let plain = s.parent.keys().filter(|e| !e.tilde && !alg.is_zero_label(e.base)).map(|e| e.base).collect();
            (l, plain)
        })
        .collect();

    let mut assigned = BTreeSet::new();
    let mut classes = Vec::new();
    for l in alg.nonzero_labels() {
        if assigned.contains(&l) {
            continue;
        }
        let cls: Vec<LabelId> = closure[&l].iter().copied().filter(|m| !assigned.contains(m)).collect();
        assigned.extend(cls.iter().copied());
        classes.push(cls);
    }

    let mut witness = BTreeMap::new();
    for cls in &classes {
        for &l in cls {
            for &m in cls {
                if let Some(f) = searches[&l].family(m) {
                    witness.insert((l, m), f);
                }
            }
        }
    }
    ConnectionPartition { classes, witness, closure }
}
