//! Global structure: center, tightness of the zero block, maximal length,
//! multiplicativity, the decomposition `P = U ⊕ Σ I_[λ]`, and gr-simplicity
//! decided both by the connection criterion and by direct ideal search.
//!
//! "Ideal" throughout means graded ideal.

use crate::algebra::{GradedAlgebra, LabelId, Product};
use crate::error::{Error, Result};
use crate::ideals::{self, GradedSubspace};
use crate::linalg::{Subspace, Vector};
use crate::support::CheckedAlgebra;

/// `Z(P) = {x : [x, P] + xP + Px = 0}`
pub fn center(alg: &GradedAlgebra) -> Subspace {
    let n = alg.total_dim();
    let mut rows = Vec::with_capacity(3 * n * n);
    for j in 0..n {
        // x ↦ [x, e_j], x ↦ x e_j, x ↦ e_j x, one row per output coordinate
        for (which, left) in [(Product::Bracket, true), (Product::Assoc, true), (Product::Assoc, false)] {
            for k in 0..n {
                let row = (0..n)
                    .map(|i| {
                        let c = if left { alg.constant(which, i, j) } else { alg.constant(which, j, i) };
                        c.map_or_else(num_traits::Zero::zero, |v| v[k].clone())
                    })
                    .collect();
                let row = Vector::from_entries(row);
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    Subspace::null_space(n, rows).expect("rows have the algebra dimension")
}

/// Span of `[P_λ, P_μ] + P_λ P_μ` over `λ, μ ∈ Λ \ {0}` with `λ ⋆ μ = {0}`.
fn zero_block_products(alg: &CheckedAlgebra) -> Subspace {
    let mut span = Subspace::zero(alg.total_dim());
    let Some(z) = alg.zero_label() else {
        return span;
    };
    for l in alg.nonzero_labels() {
        for m in alg.nonzero_labels() {
            if alg.star_table().plain(l, m) == Some(z) {
                span = span.sum(&alg.block_product_span(l, m)).unwrap();
            }
        }
    }
    span
}

/// `P_0` is zero (no distinguished zero) or spanned by the products of
/// nonzero-degree blocks landing in degree zero.
pub fn is_tight_zero(alg: &CheckedAlgebra) -> bool {
    match alg.zero_label() {
        None => true,
        Some(z) => zero_block_products(alg) == alg.block_space(z),
    }
}

/// Every block other than the zero block is one-dimensional.
pub fn is_maximal_length(alg: &GradedAlgebra) -> bool {
    alg.nonzero_labels().all(|l| alg.block_dim(l) == 1)
}

/// A triple `λ ∈ μ ⋆ s` for which `P_λ` is not produced by `P_μ` and `P_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityFailure {
    pub lambda: LabelId,
    pub mu: LabelId,
    pub s: LabelId,
}

/// Multiplicativity: whenever `μ ⋆ s = {λ}` with `λ ≠ 0`,
/// `P_λ ⊆ [P_μ, P_s] + P_μ P_s`.
///
/// Tilde arguments need no separate pass: `λ ∈ μ ⋆ s̃` iff `λ ⋆ s = {μ}`,
/// which is the plain triple `(μ; λ, s)`. Degree-zero targets are covered by
/// tightness instead.
pub fn is_multiplicative(alg: &CheckedAlgebra) -> Vec<MultiplicativityFailure> {
    let mut out = Vec::new();
    for mu in alg.label_ids() {
        for s in alg.label_ids() {
            let Some(lambda) = alg.star_table().plain(mu, s) else {
                continue;
            };
            if alg.is_zero_label(lambda) {
                continue;
            }
            let produced = alg.block_product_span(mu, s);
            if !alg.block_space(lambda).is_subspace_of(&produced).unwrap() {
                out.push(MultiplicativityFailure { lambda, mu, s });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFlags {
    pub centerless: bool,
    pub tight_zero: bool,
    pub maximal_length: bool,
    pub multiplicative: bool,
    pub center: Subspace,
}

impl StructureFlags {
    pub fn of(alg: &CheckedAlgebra) -> Self {
        let center = center(alg);
        StructureFlags {
            centerless: center.is_zero(),
            tight_zero: is_tight_zero(alg),
            maximal_length: is_maximal_length(alg),
            multiplicative: is_multiplicative(alg).is_empty(),
            center,
        }
    }

    fn unmet(&self, which: &[Hypothesis]) -> Vec<Hypothesis> {
        which.iter().copied().filter(|h| !self.holds(*h)).collect()
    }

    pub fn holds(&self, h: Hypothesis) -> bool {
        match h {
            Hypothesis::Centerless => self.centerless,
            Hypothesis::TightZero => self.tight_zero,
            Hypothesis::MaximalLength => self.maximal_length,
            Hypothesis::Multiplicative => self.multiplicative,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Hypothesis {
    Centerless,
    TightZero,
    MaximalLength,
    Multiplicative,
}

impl Hypothesis {
    pub fn unmet_note(self) -> &'static str {
        match self {
            Hypothesis::Centerless => "center nonzero",
            Hypothesis::TightZero => "zero block not tight",
            Hypothesis::MaximalLength => "not of maximal length",
            Hypothesis::Multiplicative => "not multiplicative",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub class: Vec<LabelId>,
    pub ideal: GradedSubspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    /// Complement in `P_0` (block-local coordinates of the zero block).
    pub u: Subspace,
    pub summands: Vec<Summand>,
    pub covers: bool,
    pub direct: bool,
}

pub fn decompose(alg: &CheckedAlgebra) -> Result<DecompositionReport> {
    let summands: Vec<Summand> = alg
        .partition()
        .classes
        .iter()
        .map(|cls| Ok(Summand { class: cls.clone(), ideal: ideals::ideal_of_class(alg, cls)? }))
        .collect::<Result<_>>()?;

    let (u, u_global) = match alg.zero_label() {
        None => (Subspace::zero(0), Subspace::zero(alg.total_dim())),
        Some(z) => {
            let zero_block = Subspace::full(alg.block_dim(z));
            let u = ideals::zero_part_of_ideals(alg)?.complement_in(&zero_block)?;
            let global = u.embed(alg.block_range(z).start, alg.total_dim());
            (u, global)
        }
    };

    let mut total = u_global;
    for s in &summands {
        total = total.sum(&s.ideal.to_subspace(alg))?;
    }
    let covers = total.is_full();

    let dims = u.rank() + summands.iter().map(|s| s.ideal.dim()).sum::<usize>();
    let mut direct = dims == alg.total_dim();
    'pairs: for (k, a) in summands.iter().enumerate() {
        for b in &summands[k + 1..] {
            if !ideals::pairwise_orthogonal(alg, &a.ideal, &b.ideal)?.is_empty() {
                direct = false;
                break 'pairs;
            }
        }
    }
    Ok(DecompositionReport { u, summands, covers, direct })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremCheck {
    HypothesesNotMet(Vec<Hypothesis>),
    Asserted { holds: bool, failures: Vec<String> },
}

impl TheoremCheck {
    pub fn violated(&self) -> bool {
        matches!(self, TheoremCheck::Asserted { holds: false, .. })
    }
}

/// Centerless with a tight zero block: `P` is the direct sum of the `I_[λ]`.
pub fn check_direct_sum_theorem(alg: &CheckedAlgebra) -> Result<TheoremCheck> {
    let flags = StructureFlags::of(alg);
    let unmet = flags.unmet(&[Hypothesis::Centerless, Hypothesis::TightZero]);
    if !unmet.is_empty() {
        return Ok(TheoremCheck::HypothesesNotMet(unmet));
    }
    let d = decompose(alg)?;
    let mut failures = Vec::new();
    if !d.u.is_zero() {
        failures.push(format!("complement has dimension {}", d.u.rank()));
    }
    if !d.covers {
        failures.push("summands do not cover the algebra".into());
    }
    if !d.direct {
        failures.push("sum is not direct".into());
    }
    Ok(TheoremCheck::Asserted { holds: failures.is_empty(), failures })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Simple,
    /// `witness` is a proper nonzero graded ideal when one was found.
    NotSimple {
        witness: Option<GradedSubspace>,
    },
    Inapplicable {
        unmet: Vec<Hypothesis>,
    },
}

impl Verdict {
    pub fn is_applicable(&self) -> bool {
        !matches!(self, Verdict::Inapplicable { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Simple => "simple",
            Verdict::NotSimple { .. } => "not_simple",
            Verdict::Inapplicable { .. } => "inapplicable",
        }
    }

    /// Same answer, ignoring witnesses.
    pub fn agrees_with(&self, other: &Verdict) -> bool {
        self.tag() == other.tag()
    }
}

/// Decide gr-simplicity by generating the ideal of every nonzero block.
///
/// Complete under maximal length, centerless and tight zero block: a nonzero
/// graded ideal cannot sit inside `P_0`, so it contains some full `P_λ`.
pub fn gr_simple_direct(alg: &CheckedAlgebra) -> Result<Verdict> {
    let flags = StructureFlags::of(alg);
    let unmet = flags.unmet(&[Hypothesis::MaximalLength, Hypothesis::Centerless, Hypothesis::TightZero]);
    if !unmet.is_empty() {
        return Ok(Verdict::Inapplicable { unmet });
    }
    if !alg.has_nonzero_product() {
        return Ok(Verdict::NotSimple { witness: None });
    }
    let whole = GradedSubspace::whole(alg);
    for l in alg.nonzero_labels() {
        let generated = ideals::ideal_closure(alg, &GradedSubspace::blocks_of(alg, &[l]))?;
        if generated != whole {
            return Ok(Verdict::NotSimple { witness: Some(generated) });
        }
    }
    Ok(Verdict::Simple)
}

/// Decide gr-simplicity by counting connection classes.
pub fn gr_simple_criterion(alg: &CheckedAlgebra) -> Result<Verdict> {
    let flags = StructureFlags::of(alg);
    let unmet = flags.unmet(&[
        Hypothesis::Centerless,
        Hypothesis::Multiplicative,
        Hypothesis::MaximalLength,
        Hypothesis::TightZero,
    ]);
    if !unmet.is_empty() {
        return Ok(Verdict::Inapplicable { unmet });
    }
    let classes = &alg.partition().classes;
    if !alg.has_nonzero_product() || classes.is_empty() {
        return Ok(Verdict::NotSimple { witness: None });
    }
    if classes.len() == 1 {
        return Ok(Verdict::Simple);
    }
    Ok(Verdict::NotSimple { witness: Some(ideals::ideal_of_class(alg, &classes[0])?) })
}

/// The subalgebra `I_[λ]` as an algebra of its own: labels of the class plus
/// the slice `I_{0,[λ]}` as the new zero block (dropped, with `0 = ∅`, when
/// that slice vanishes).
pub fn restrict_to_class(alg: &CheckedAlgebra, cls: &[LabelId]) -> Result<GradedAlgebra> {
    let i0 = ideals::i0_of_class(alg, cls)?;
    let zero_slice = alg.zero_label().map(|z| i0.block(z).clone()).filter(|s| !s.is_zero());

    // (label, basis in global coordinates)
    let mut blocks: Vec<(LabelId, Vec<Vector>)> = Vec::new();
    for l in alg.label_ids() {
        let start = alg.block_range(l).start;
        if alg.is_zero_label(l) {
            if let Some(slice) = &zero_slice {
                blocks.push((l, slice.basis().iter().map(|b| b.embed(start, alg.total_dim())).collect()));
            }
        } else if cls.contains(&l) {
            blocks.push((l, alg.block_range(l).map(|i| alg.basis_vector(i)).collect()));
        }
    }
    let labels: Vec<(&str, usize)> = blocks.iter().map(|(l, b)| (alg.label_name(*l), b.len())).collect();
    let zero_name = zero_slice.as_ref().map(|_| alg.label_name(alg.zero_label().unwrap()));
    let names: Vec<&str> = cls.iter().map(|&l| alg.label_name(l)).collect();
    let mut out = GradedAlgebra::new(format!("{}[{}]", alg.name(), names.join(",")), &labels, zero_name)?;

    let basis: Vec<&Vector> = blocks.iter().flat_map(|(_, b)| b.iter()).collect();
    let kept: Vec<LabelId> = blocks.iter().map(|(l, _)| *l).collect();
    let covered = GradedSubspace::blocks_of(alg, &kept);
    let coords = |v: &Vector| -> Result<Vector> {
        let mut entries = Vec::with_capacity(basis.len());
        for &l in &kept {
            let local = v.slice(alg.block_range(l));
            match (&zero_slice, alg.is_zero_label(l)) {
                (Some(slice), true) => entries.extend(slice.coordinates(&local)?.ok_or(Error::NotClosed)?),
                _ => entries.extend(local.into_entries()),
            }
        }
        if !covered.contains(alg, v)? {
            return Err(Error::NotClosed);
        }
        Ok(Vector::from_entries(entries))
    };
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            for which in [Product::Bracket, Product::Assoc] {
                let value = alg.product_vec(which, x, y)?;
                out.set_constant(which, i, j, coords(&value)?)?;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineSummand {
    pub class: Vec<LabelId>,
    pub restricted: GradedAlgebra,
    /// Names of failed axiom checks of the restricted algebra.
    pub failed_checks: Vec<&'static str>,
    pub verdict: Option<Verdict>,
}

impl FineSummand {
    pub fn passes(&self) -> bool {
        self.failed_checks.is_empty() && self.verdict == Some(Verdict::Simple)
    }
}

/// Under all four hypotheses every `I_[λ]` is itself gr-simple; checked by
/// rebuilding each summand as an algebra and deciding it directly.
pub fn fine_decomposition_check(alg: &CheckedAlgebra) -> Result<Vec<FineSummand>> {
    let flags = StructureFlags::of(alg);
    let unmet = flags.unmet(&[
        Hypothesis::Centerless,
        Hypothesis::Multiplicative,
        Hypothesis::MaximalLength,
        Hypothesis::TightZero,
    ]);
    if !unmet.is_empty() {
        return Err(Error::HypothesesNotMet(unmet.iter().map(|h| h.unmet_note().to_string()).collect()));
    }
    alg.partition()
        .classes
        .iter()
        .map(|cls| {
            let restricted = restrict_to_class(alg, cls)?;
            let report = restricted.validate();
            let failed_checks = report.failed();
            let verdict = match CheckedAlgebra::from_report(restricted.clone(), &report) {
                Ok(checked) => Some(gr_simple_direct(&checked)?),
                Err(_) => None,
            };
            Ok(FineSummand { class: cls.clone(), restricted, failed_checks, verdict })
        })
        .collect()
}
