//! Set-graded non-commutative Poisson algebras given by structure constants.
//!
//! The global basis is the concatenation of the homogeneous blocks in label
//! order. Both products are stored densely as `n × n` tables of optional
//! vectors (`None` means the product of the two basis vectors is zero).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};

/// Position of a label in [`GradedAlgebra::labels`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub usize);

/// An element of `Λ ∪ Λ̃`: a label or its tilde twin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtLabel {
    pub base: LabelId,
    pub tilde: bool,
}

impl ExtLabel {
    pub fn plain(base: LabelId) -> Self {
        ExtLabel { base, tilde: false }
    }

    pub fn tilde(base: LabelId) -> Self {
        ExtLabel { base, tilde: true }
    }

    /// `λ ↦ λ̃`, an involution.
    pub fn twin(self) -> Self {
        ExtLabel { base: self.base, tilde: !self.tilde }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    Bracket,
    Assoc,
}

#[derive(Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    name: String,
    labels: Vec<String>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    total_dim: usize,
    block_of: Vec<LabelId>,
    bracket: Vec<Option<Vector>>,
    aprod: Vec<Option<Vector>>,
    zero_label: Option<LabelId>,
}

impl GradedAlgebra {
    /// An algebra with the given homogeneous blocks and all products zero.
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        labels: &[(S, usize)],
        zero_label: Option<&str>,
    ) -> Result<Self> {
        let mut names: Vec<String> = Vec::with_capacity(labels.len());
        let mut dims = Vec::with_capacity(labels.len());
        let mut offsets = Vec::with_capacity(labels.len());
        let mut block_of = Vec::new();
        let mut total = 0;
        for (k, (name, dim)) in labels.iter().enumerate() {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(Error::Malformed("empty label name".into()));
            }
            if names.iter().any(|n| n == name) {
                return Err(Error::DuplicateLabel(name.to_string()));
            }
            if *dim == 0 {
                return Err(Error::EmptyLabel(name.to_string()));
            }
            names.push(name.to_string());
            dims.push(*dim);
            offsets.push(total);
            block_of.extend(std::iter::repeat_n(LabelId(k), *dim));
            total += dim;
        }
        let zero_label = match zero_label {
            None => None,
            Some(z) => {
                Some(LabelId(names.iter().position(|n| n == z).ok_or_else(|| Error::UnknownLabel(z.to_string()))?))
            }
        };
        Ok(GradedAlgebra {
            name: name.into(),
            labels: names,
            dims,
            offsets,
            total_dim: total,
            block_of,
            bracket: vec![None; total * total],
            aprod: vec![None; total * total],
            zero_label,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label_ids(&self) -> impl Iterator<Item = LabelId> + Clone {
        (0..self.labels.len()).map(LabelId)
    }

    /// `Λ \ {0}` in label order.
    pub fn nonzero_labels(&self) -> impl Iterator<Item = LabelId> + Clone + '_ {
        self.label_ids().filter(move |&l| Some(l) != self.zero_label)
    }

    /// All of `Λ ∪ Λ̃`, plain symbols first within each label.
    pub fn ext_labels(&self) -> impl Iterator<Item = ExtLabel> + Clone {
        self.label_ids().flat_map(|l| [ExtLabel::plain(l), ExtLabel::tilde(l)])
    }

    pub fn label_name(&self, l: LabelId) -> &str {
        &self.labels[l.0]
    }

    pub fn label_id(&self, name: &str) -> Result<LabelId> {
        self.labels.iter().position(|n| n == name).map(LabelId).ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn ext_name(&self, e: ExtLabel) -> String {
        if e.tilde {
            format!("~{}", self.label_name(e.base))
        } else {
            self.label_name(e.base).to_string()
        }
    }

    pub fn block_dim(&self, l: LabelId) -> usize {
        self.dims[l.0]
    }

    pub fn block_range(&self, l: LabelId) -> Range<usize> {
        self.offsets[l.0]..self.offsets[l.0] + self.dims[l.0]
    }

    pub fn block_of(&self, index: usize) -> LabelId {
        self.block_of[index]
    }

    pub fn zero_label(&self) -> Option<LabelId> {
        self.zero_label
    }

    pub fn is_zero_label(&self, l: LabelId) -> bool {
        self.zero_label == Some(l)
    }

    /// Full homogeneous block `P_l` as a subspace of the algebra.
    pub fn block_space(&self, l: LabelId) -> Subspace {
        Subspace::full(self.block_dim(l)).embed(self.offsets[l.0], self.total_dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(self.total_dim, i)
    }

    fn table(&self, which: Product) -> &[Option<Vector>] {
        match which {
            Product::Bracket => &self.bracket,
            Product::Assoc => &self.aprod,
        }
    }

    fn table_mut(&mut self, which: Product) -> &mut Vec<Option<Vector>> {
        match which {
            Product::Bracket => &mut self.bracket,
            Product::Assoc => &mut self.aprod,
        }
    }

    /// Structure constant vector of `e_i ∘ e_j`, `None` when zero.
    pub fn constant(&self, which: Product, i: usize, j: usize) -> Option<&Vector> {
        self.table(which)[i * self.total_dim + j].as_ref()
    }

    /// Set a single ordered entry of a product table.
    pub fn set_constant(&mut self, which: Product, i: usize, j: usize, value: Vector) -> Result<()> {
        let n = self.total_dim;
        for idx in [i, j] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, total: n });
            }
        }
        value.check_dim(n)?;
        let slot = &mut self.table_mut(which)[i * n + j];
        *slot = if value.is_zero() { None } else { Some(value) };
        Ok(())
    }

    /// Set `[e_i, e_j] = value` and `[e_j, e_i] = -value`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vector) -> Result<()> {
        let neg = -&value;
        self.set_constant(Product::Bracket, i, j, value)?;
        if i != j {
            self.set_constant(Product::Bracket, j, i, neg)?;
        }
        Ok(())
    }

    pub fn set_aprod(&mut self, i: usize, j: usize, value: Vector) -> Result<()> {
        self.set_constant(Product::Assoc, i, j, value)
    }

    /// Nonzero entries `(i, j, value)` of a product table, row-major.
    pub fn entries(&self, which: Product) -> impl Iterator<Item = (usize, usize, &Vector)> + '_ {
        let n = self.total_dim;
        self.table(which).iter().enumerate().filter_map(move |(k, v)| v.as_ref().map(|v| (k / n, k % n, v)))
    }

    /// Bilinear extension of a product table.
    pub fn product_vec(&self, which: Product, x: &Vector, y: &Vector) -> Result<Vector> {
        x.check_dim(self.total_dim)?;
        y.check_dim(self.total_dim)?;
        let mut out = Vector::zeros(self.total_dim);
        let ys: Vec<usize> = y.support().collect();
        for i in x.support() {
            for &j in &ys {
                if let Some(c) = self.constant(which, i, j) {
                    out.add_scaled(&(&x[i] * &y[j]), c);
                }
            }
        }
        Ok(out)
    }

    pub fn bracket_vec(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.product_vec(Product::Bracket, x, y)
    }

    pub fn aprod_vec(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.product_vec(Product::Assoc, x, y)
    }

    /// Products of a basis vector with an arbitrary vector, on either side.
    pub(crate) fn basis_times(&self, which: Product, i: usize, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.total_dim);
        for j in y.support() {
            if let Some(c) = self.constant(which, i, j) {
                out.add_scaled(&y[j], c);
            }
        }
        out
    }

    pub(crate) fn times_basis(&self, which: Product, x: &Vector, j: usize) -> Vector {
        let mut out = Vector::zeros(self.total_dim);
        for i in x.support() {
            if let Some(c) = self.constant(which, i, j) {
                out.add_scaled(&x[i], c);
            }
        }
        out
    }

    fn constant_or_zero(&self, which: Product, i: usize, j: usize) -> Vector {
        self.constant(which, i, j).cloned().unwrap_or_else(|| Vector::zeros(self.total_dim))
    }

    /// Labels whose block meets the support of `v`.
    pub fn blocks_touched(&self, v: &Vector) -> BTreeSet<LabelId> {
        v.support().map(|i| self.block_of(i)).collect()
    }

    /// Where `[P_s, P_t] + P_s P_t` lives.
    pub fn component_product_target(&self, s: LabelId, t: LabelId) -> ProductTarget {
        let mut touched = BTreeSet::new();
        for i in self.block_range(s) {
            for j in self.block_range(t) {
                for which in [Product::Bracket, Product::Assoc] {
                    if let Some(v) = self.constant(which, i, j) {
                        touched.extend(self.blocks_touched(v));
                    }
                }
            }
        }
        match touched.len() {
            0 => ProductTarget::Zero,
            1 => ProductTarget::Target(*touched.iter().next().unwrap()),
            _ => ProductTarget::Incoherent(touched),
        }
    }

    /// Span of `[P_s, P_t] + P_s P_t` in the global basis.
    pub fn block_product_span(&self, s: LabelId, t: LabelId) -> Subspace {
        let mut span = Subspace::zero(self.total_dim);
        for i in self.block_range(s) {
            for j in self.block_range(t) {
                for which in [Product::Bracket, Product::Assoc] {
                    if let Some(v) = self.constant(which, i, j) {
                        span.insert(v.clone());
                    }
                }
            }
        }
        span
    }

    pub fn check_antisymmetry(&self) -> Vec<Violation> {
        let n = self.total_dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let r = &self.constant_or_zero(Product::Bracket, i, j) + &self.constant_or_zero(Product::Bracket, j, i);
                if !r.is_zero() {
                    out.push(Violation::Basis { indices: vec![i, j], residual: r });
                }
            }
        }
        out
    }

    pub fn check_jacobi(&self) -> Vec<Violation> {
        let n = self.total_dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let ij = self.constant_or_zero(Product::Bracket, i, j);
                for k in j..n {
                    let jk = self.constant_or_zero(Product::Bracket, j, k);
                    let ki = self.constant_or_zero(Product::Bracket, k, i);
                    let r = &(&self.times_basis(Product::Bracket, &ij, k)
                        + &self.times_basis(Product::Bracket, &jk, i))
                        + &self.times_basis(Product::Bracket, &ki, j);
                    if !r.is_zero() {
                        out.push(Violation::Basis { indices: vec![i, j, k], residual: r });
                    }
                }
            }
        }
        out
    }

    pub fn check_associativity(&self) -> Vec<Violation> {
        let n = self.total_dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.constant_or_zero(Product::Assoc, i, j);
                for k in 0..n {
                    let jk = self.constant_or_zero(Product::Assoc, j, k);
                    let r = &self.times_basis(Product::Assoc, &ij, k) - &self.basis_times(Product::Assoc, i, &jk);
                    if !r.is_zero() {
                        out.push(Violation::Basis { indices: vec![i, j, k], residual: r });
                    }
                }
            }
        }
        out
    }

    /// `[e_i, e_j e_k] = [e_i, e_j] e_k + e_j [e_i, e_k]`
    pub fn check_leibniz(&self) -> Vec<Violation> {
        let n = self.total_dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.constant_or_zero(Product::Bracket, i, j);
                for k in 0..n {
                    let jk = self.constant_or_zero(Product::Assoc, j, k);
                    let ik = self.constant_or_zero(Product::Bracket, i, k);
                    let lhs = self.basis_times(Product::Bracket, i, &jk);
                    let rhs = &self.times_basis(Product::Assoc, &ij, k) + &self.basis_times(Product::Assoc, j, &ik);
                    let r = &lhs - &rhs;
                    if !r.is_zero() {
                        out.push(Violation::Basis { indices: vec![i, j, k], residual: r });
                    }
                }
            }
        }
        out
    }

    pub fn check_grading_coherence(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for s in self.label_ids() {
            for t in self.label_ids() {
                if let ProductTarget::Incoherent(touched) = self.component_product_target(s, t) {
                    out.push(Violation::Incoherent { s, t, touched: touched.into_iter().collect() });
                }
            }
        }
        out
    }

    /// `0 ⋆ λ ≠ {0}` for every `λ ≠ 0`. Vacuous when there is no distinguished zero.
    pub fn validate_zero_label(&self) -> Vec<Violation> {
        let Some(z) = self.zero_label else {
            return Vec::new();
        };
        self.nonzero_labels()
            .filter(|&l| self.component_product_target(z, l) == ProductTarget::Target(z))
            .map(|label| Violation::ZeroLabel { label })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            antisymmetry: self.check_antisymmetry(),
            jacobi: self.check_jacobi(),
            associativity: self.check_associativity(),
            leibniz: self.check_leibniz(),
            grading_coherence: self.check_grading_coherence(),
            zero_label: self.validate_zero_label(),
        }
    }

    /// `[P,P] + PP ≠ 0`
    pub fn has_nonzero_product(&self) -> bool {
        self.bracket.iter().chain(&self.aprod).any(Option::is_some)
    }

    /// Change of basis `e_i ↦ c_i e_i`.
    pub fn rescaled(&self, scale: &[crate::linalg::Rational]) -> Result<GradedAlgebra> {
        let n = self.total_dim;
        if scale.len() != n || scale.iter().any(Zero::is_zero) {
            return Err(Error::DimensionMismatch { expected: n, found: scale.len() });
        }
        let mut out = self.clone();
        for which in [Product::Bracket, Product::Assoc] {
            let table = out.table_mut(which);
            for (k, slot) in table.iter_mut().enumerate() {
                if let Some(v) = slot {
                    let (i, j) = (k / n, k % n);
                    let cij = &scale[i] * &scale[j];
                    let entries = v.entries().iter().zip(scale).map(|(x, c)| x * &cij / c).collect();
                    *v = Vector::from_entries(entries);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .field("dims", &self.dims)
            .field("zero_label", &self.zero_label.map(|z| self.label_name(z)))
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductTarget {
    Zero,
    Target(LabelId),
    Incoherent(BTreeSet<LabelId>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// An identity failing on the basis tuple `indices`; `residual` is
    /// left-hand side minus right-hand side.
    Basis {
        indices: Vec<usize>,
        residual: Vector,
    },
    Incoherent {
        s: LabelId,
        t: LabelId,
        touched: Vec<LabelId>,
    },
    ZeroLabel {
        label: LabelId,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub antisymmetry: Vec<Violation>,
    pub jacobi: Vec<Violation>,
    pub associativity: Vec<Violation>,
    pub leibniz: Vec<Violation>,
    pub grading_coherence: Vec<Violation>,
    pub zero_label: Vec<Violation>,
}

impl ValidationReport {
    pub fn checks(&self) -> [(&'static str, &[Violation]); 6] {
        [
            ("antisymmetry", &self.antisymmetry),
            ("jacobi", &self.jacobi),
            ("associativity", &self.associativity),
            ("leibniz", &self.leibniz),
            ("grading_coherence", &self.grading_coherence),
            ("zero_label", &self.zero_label),
        ]
    }

    /// The five defining axioms (Lie, associative, Leibniz, grading).
    pub fn axioms_pass(&self) -> bool {
        self.checks()[..5].iter().all(|(_, v)| v.is_empty())
    }

    pub fn is_valid(&self) -> bool {
        self.checks().iter().all(|(_, v)| v.is_empty())
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks().iter().filter(|(_, v)| !v.is_empty()).map(|(n, _)| *n).collect()
    }
}
