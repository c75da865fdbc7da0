//! Graded subspaces, the ideals `I_[λ] = I_{0,[λ]} ⊕ V_[λ]`, ideal closures,
//! and containment checks by exact linear algebra.

use std::collections::BTreeSet;

use crate::algebra::{GradedAlgebra, LabelId, Product};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::support::CheckedAlgebra;

/// A subspace `A = ⊕ A_s` stored block by block in block-local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    blocks: Vec<Subspace>,
}

impl GradedSubspace {
    pub fn zero(alg: &GradedAlgebra) -> Self {
        GradedSubspace { blocks: alg.label_ids().map(|l| Subspace::zero(alg.block_dim(l))).collect() }
    }

    pub fn whole(alg: &GradedAlgebra) -> Self {
        GradedSubspace { blocks: alg.label_ids().map(|l| Subspace::full(alg.block_dim(l))).collect() }
    }

    /// `P_l` for each `l` in `labels`, zero elsewhere.
    pub fn blocks_of(alg: &GradedAlgebra, labels: &[LabelId]) -> Self {
        let mut s = Self::zero(alg);
        for &l in labels {
            s.blocks[l.0] = Subspace::full(alg.block_dim(l));
        }
        s
    }

    /// Graded span of `vectors`: each vector is split into its homogeneous
    /// components first.
    pub fn graded_span<'a>(alg: &GradedAlgebra, vectors: impl IntoIterator<Item = &'a Vector>) -> Result<Self> {
        let mut s = Self::zero(alg);
        for v in vectors {
            s.absorb(alg, v)?;
        }
        Ok(s)
    }

    /// Set block `l` to a subspace given in block-local coordinates.
    pub fn set_block(&mut self, alg: &GradedAlgebra, l: LabelId, block: Subspace) -> Result<()> {
        let dim = alg.block_dim(l);
        if block.ambient_dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: block.ambient_dim() });
        }
        self.blocks[l.0] = block;
        Ok(())
    }

    pub fn block(&self, l: LabelId) -> &Subspace {
        &self.blocks[l.0]
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Subspace::rank).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Subspace::is_zero)
    }

    /// Labels whose block is nonzero.
    pub fn support(&self) -> Vec<LabelId> {
        (0..self.blocks.len()).map(LabelId).filter(|l| !self.blocks[l.0].is_zero()).collect()
    }

    /// Add the homogeneous components of `v`. Returns whether the dimension grew.
    fn absorb(&mut self, alg: &GradedAlgebra, v: &Vector) -> Result<bool> {
        v.check_dim(alg.total_dim())?;
        let mut grew = false;
        for l in alg.blocks_touched(v) {
            grew |= self.blocks[l.0].insert(v.slice(alg.block_range(l)));
        }
        Ok(grew)
    }

    /// Basis of the represented subspace, in global coordinates.
    pub fn global_basis(&self, alg: &GradedAlgebra) -> Vec<Vector> {
        alg.label_ids()
            .flat_map(|l| {
                let start = alg.block_range(l).start;
                self.blocks[l.0].basis().iter().map(move |b| b.embed(start, alg.total_dim())).collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn to_subspace(&self, alg: &GradedAlgebra) -> Subspace {
        Subspace::span(alg.total_dim(), self.global_basis(alg)).expect("blocks fit the algebra")
    }

    pub fn contains(&self, alg: &GradedAlgebra, v: &Vector) -> Result<bool> {
        v.check_dim(alg.total_dim())?;
        for l in alg.blocks_touched(v) {
            if !self.blocks[l.0].contains(&v.slice(alg.block_range(l)))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sum(b)).collect::<Result<_>>()?;
        Ok(GradedSubspace { blocks })
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> Result<bool> {
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            if !a.is_subspace_of(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_fits(&self, alg: &GradedAlgebra) -> Result<()> {
        if self.blocks.len() != alg.label_count() {
            return Err(Error::DimensionMismatch { expected: alg.label_count(), found: self.blocks.len() });
        }
        for l in alg.label_ids() {
            let found = self.blocks[l.0].ambient_dim();
            if found != alg.block_dim(l) {
                return Err(Error::DimensionMismatch { expected: alg.block_dim(l), found });
            }
        }
        Ok(())
    }
}

/// A product that escapes the subspace under test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentViolation {
    pub product: Product,
    /// Global basis vector of the subspace (or of the left factor).
    pub left: Vector,
    pub right: Vector,
    pub value: Vector,
}

fn check_class(alg: &CheckedAlgebra, cls: &[LabelId]) -> Result<()> {
    if alg.partition().is_class(cls) {
        Ok(())
    } else {
        Err(Error::NotAClass(cls.iter().map(|&l| alg.label_name(l).to_string()).collect()))
    }
}

/// `I_{0,[λ]}`: the span inside `P_0` of `[P_μ, P_η] + P_μ P_η` over
/// `μ, η ∈ [λ]` with `μ ⋆ η = {0}`.
pub fn i0_of_class(alg: &CheckedAlgebra, cls: &[LabelId]) -> Result<GradedSubspace> {
    check_class(alg, cls)?;
    let mut out = GradedSubspace::zero(alg);
    let Some(zero) = alg.zero_label() else {
        return Ok(out);
    };
    for &mu in cls {
        for &eta in cls {
            if alg.star_table().plain(mu, eta) == Some(zero) {
                for v in alg.block_product_span(mu, eta).basis() {
                    out.absorb(alg, v)?;
                }
            }
        }
    }
    Ok(out)
}

/// `V_[λ] = ⊕_{μ ∈ [λ]} P_μ`
pub fn v_of_class(alg: &CheckedAlgebra, cls: &[LabelId]) -> Result<GradedSubspace> {
    check_class(alg, cls)?;
    Ok(GradedSubspace::blocks_of(alg, cls))
}

/// `I_[λ] = I_{0,[λ]} ⊕ V_[λ]`
pub fn ideal_of_class(alg: &CheckedAlgebra, cls: &[LabelId]) -> Result<GradedSubspace> {
    i0_of_class(alg, cls)?.sum(&v_of_class(alg, cls)?)
}

/// Products `[x, y]`, `xy` and `yx` for `x ∈ left`, `y ∈ right` that fall
/// outside `target`.
fn escaping_products(
    alg: &GradedAlgebra,
    left: &[Vector],
    right: &[Vector],
    target: &GradedSubspace,
) -> Result<Vec<ContainmentViolation>> {
    let mut out = Vec::new();
    for x in left {
        for y in right {
            let candidates = [(Product::Bracket, x, y), (Product::Assoc, x, y), (Product::Assoc, y, x)];
            for (which, a, b) in candidates {
                let value = alg.product_vec(which, a, b)?;
                if !target.contains(alg, &value)? {
                    out.push(ContainmentViolation { product: which, left: a.clone(), right: b.clone(), value });
                }
            }
        }
    }
    Ok(out)
}

/// `[A, A] + AA ⊆ A`
pub fn is_graded_subalgebra(alg: &CheckedAlgebra, sub: &GradedSubspace) -> Result<Vec<ContainmentViolation>> {
    sub.check_fits(alg)?;
    let basis = sub.global_basis(alg);
    escaping_products(alg, &basis, &basis, sub)
}

/// `[I, P] + IP + PI ⊆ I`
pub fn is_graded_ideal(alg: &CheckedAlgebra, sub: &GradedSubspace) -> Result<Vec<ContainmentViolation>> {
    sub.check_fits(alg)?;
    let basis = sub.global_basis(alg);
    let all: Vec<Vector> = (0..alg.total_dim()).map(|i| alg.basis_vector(i)).collect();
    escaping_products(alg, &basis, &all, sub)
}

/// Smallest graded ideal containing `gens`.
pub fn ideal_closure(alg: &GradedAlgebra, gens: &GradedSubspace) -> Result<GradedSubspace> {
    gens.check_fits(alg)?;
    let n = alg.total_dim();
    let mut current = gens.clone();
    // each sweep either stops or strictly grows the dimension
    for _ in 0..=n {
        let basis = current.global_basis(alg);
        let mut next = current.clone();
        let mut grew = false;
        for v in &basis {
            for j in 0..n {
                for value in [
                    alg.times_basis(Product::Bracket, v, j),
                    alg.times_basis(Product::Assoc, v, j),
                    alg.basis_times(Product::Assoc, j, v),
                ] {
                    grew |= next.absorb(alg, &value)?;
                }
            }
        }
        current = next;
        if !grew {
            return Ok(current);
        }
    }
    unreachable!("ideal closure exceeded {n} sweeps")
}

/// `[S1, S2] + S1 S2 + S2 S1 = 0`
pub fn pairwise_orthogonal(
    alg: &CheckedAlgebra,
    s1: &GradedSubspace,
    s2: &GradedSubspace,
) -> Result<Vec<ContainmentViolation>> {
    s1.check_fits(alg)?;
    s2.check_fits(alg)?;
    let zero = GradedSubspace::zero(alg);
    escaping_products(alg, &s1.global_basis(alg), &s2.global_basis(alg), &zero)
}

/// Sum of `I_{0,[λ]}` over all classes, as a subspace of the zero block
/// (block-local coordinates). Zero when there is no distinguished zero.
pub fn zero_part_of_ideals(alg: &CheckedAlgebra) -> Result<Subspace> {
    let Some(z) = alg.zero_label() else {
        return Ok(Subspace::zero(0));
    };
    let mut total = Subspace::zero(alg.block_dim(z));
    for cls in &alg.partition().classes {
        total = total.sum(i0_of_class(alg, cls)?.block(z))?;
    }
    Ok(total)
}

/// Labels of `sub` other than the zero label, i.e. `Λ^I`.
pub fn nonzero_support(alg: &GradedAlgebra, sub: &GradedSubspace) -> BTreeSet<LabelId> {
    sub.support().into_iter().filter(|&l| !alg.is_zero_label(l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn checked(a: GradedAlgebra) -> CheckedAlgebra {
        CheckedAlgebra::new(a).unwrap()
    }

    fn class(a: &CheckedAlgebra, names: &[&str]) -> Vec<LabelId> {
        let mut v: Vec<_> = names.iter().map(|n| a.label_id(n).unwrap()).collect();
        v.sort();
        v
    }

    fn span(a: &GradedAlgebra, vs: &[&[i64]]) -> GradedSubspace {
        let vs: Vec<Vector> = vs.iter().map(|v| Vector::from_ints(v)).collect();
        GradedSubspace::graded_span(a, &vs).unwrap()
    }

    #[test]
    fn i0_examples() {
        let a = checked(catalog::m2_cartan());
        let z = a.label_id("z").unwrap();
        let i0 = i0_of_class(&a, &class(&a, &["p", "m"])).unwrap();
        assert!(i0.block(z).is_full());
        assert_eq!(i0.dim(), 2);

        let h = checked(catalog::heis3());
        let i0 = i0_of_class(&h, &class(&h, &["a", "b"])).unwrap();
        assert_eq!(i0.dim(), 1);
        assert!(i0.block(h.label_id("z").unwrap()).is_full());

        let d = checked(catalog::m2_double());
        let i0 = i0_of_class(&d, &class(&d, &["p1", "m1"])).unwrap();
        let zd = d.label_id("z").unwrap();
        assert_eq!(
            i0.block(zd),
            &Subspace::span(4, [Vector::from_ints(&[1, 0, 0, 0]), Vector::from_ints(&[0, 1, 0, 0])]).unwrap()
        );
    }

    #[test]
    fn i0_rejects_non_class() {
        let a = checked(catalog::m2_cartan());
        assert!(matches!(i0_of_class(&a, &class(&a, &["p"])), Err(Error::NotAClass(_))));
    }

    #[test]
    fn v_and_ideal_examples() {
        let a = checked(catalog::m2_cartan());
        let cls = class(&a, &["p", "m"]);
        assert_eq!(v_of_class(&a, &cls).unwrap().dim(), 2);
        assert_eq!(ideal_of_class(&a, &cls).unwrap(), GradedSubspace::whole(&a));

        let h = checked(catalog::heis3());
        let cls = class(&h, &["a", "b"]);
        assert_eq!(v_of_class(&h, &cls).unwrap(), span(&h, &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(ideal_of_class(&h, &cls).unwrap(), GradedSubspace::whole(&h));

        let d = checked(catalog::m2_double());
        let second = class(&d, &["p2", "m2"]);
        assert_eq!(v_of_class(&d, &second).unwrap(), span(&d, &[&[0, 0, 0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 0, 0, 1]]));
        let first = ideal_of_class(&d, &class(&d, &["p1", "m1"])).unwrap();
        assert_eq!(first.dim(), 4);
        assert!(is_graded_ideal(&d, &first).unwrap().is_empty());
    }

    #[test]
    fn subalgebra_examples() {
        let a = checked(catalog::m2_cartan());
        let e12 = span(&a, &[&[0, 0, 1, 0]]);
        assert!(is_graded_subalgebra(&a, &e12).unwrap().is_empty());
        let e11 = span(&a, &[&[1, 0, 0, 0]]);
        assert!(is_graded_subalgebra(&a, &e11).unwrap().is_empty());
        let viol = is_graded_ideal(&a, &e11).unwrap();
        assert!(viol.iter().any(|v| v.product == Product::Assoc && v.value == Vector::from_ints(&[0, 0, 1, 0])));
        assert!(is_graded_ideal(&a, &GradedSubspace::zero(&a)).unwrap().is_empty());
    }

    #[test]
    fn closure_examples() {
        let a = checked(catalog::m2_cartan());
        let p = GradedSubspace::blocks_of(&a, &[a.label_id("p").unwrap()]);
        assert_eq!(ideal_closure(&a, &p).unwrap(), GradedSubspace::whole(&a));

        let h = checked(catalog::heis3());
        let c = span(&h, &[&[1, 0, 0]]);
        assert_eq!(ideal_closure(&h, &c).unwrap(), c);

        let zero = GradedSubspace::zero(&a);
        assert_eq!(ideal_closure(&a, &zero).unwrap(), zero);
    }

    #[test]
    fn orthogonality_examples() {
        let d = checked(catalog::m2_double());
        let i1 = ideal_of_class(&d, &class(&d, &["p1", "m1"])).unwrap();
        let i2 = ideal_of_class(&d, &class(&d, &["p2", "m2"])).unwrap();
        assert!(pairwise_orthogonal(&d, &i1, &i2).unwrap().is_empty());
        assert!(pairwise_orthogonal(&d, &GradedSubspace::zero(&d), &i1).unwrap().is_empty());

        let a = checked(catalog::m2_cartan());
        let i = ideal_of_class(&a, &class(&a, &["p", "m"])).unwrap();
        assert!(!pairwise_orthogonal(&a, &i, &i).unwrap().is_empty());
    }

    #[test]
    fn graded_span_splits_components() {
        let a = catalog::m2_cartan();
        let s = span(&a, &[&[1, 0, 1, 0]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&a, &Vector::from_ints(&[1, 0, 0, 0])).unwrap());
    }
}
