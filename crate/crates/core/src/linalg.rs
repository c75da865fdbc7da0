//! Exact linear algebra over the rationals.
//!
//! Subspaces are always kept in reduced row-echelon form, so two equal
//! subspaces of one ambient space have identical bases and compare equal
//! with `==`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A coordinate vector in the global basis of an algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_entries(entries: Vec<Rational>) -> Self {
        Vector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i)
    }

    pub fn leading_index(&self) -> Option<usize> {
        self.support().next()
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }

    pub fn set(&mut self, i: usize, value: Rational) {
        self.0[i] = value;
    }

    /// Copy of the coordinates in `range`, as a vector of its own.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Vector {
        Vector(self.0[range].to_vec())
    }

    /// Embed a block-local vector at `offset` inside an ambient space of `dim`.
    pub fn embed(&self, offset: usize, dim: usize) -> Vector {
        let mut v = Vector::zeros(dim);
        v.0[offset..offset + self.dim()].clone_from_slice(&self.0);
        v
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found: self.dim() })
        }
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A linear subspace of `Q^dim`, stored as its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Subspace { dim, rows: (0..dim).map(|i| Vector::unit(dim, i)).collect(), pivots: (0..dim).collect() }
    }

    /// Canonical echelon basis of the span of `vectors`.
    pub fn echelonize<'a, I>(dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut s = Subspace::zero(dim);
        for v in vectors {
            v.check_dim(dim)?;
            s.insert(v.clone());
        }
        Ok(s)
    }

    /// Same as [`Subspace::echelonize`] for owned vectors.
    pub fn span(dim: usize, vectors: impl IntoIterator<Item = Vector>) -> Result<Self> {
        let mut s = Subspace::zero(dim);
        for v in vectors {
            v.check_dim(dim)?;
            s.insert(v);
        }
        Ok(s)
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the subspace itself.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after elimination against the echelon basis.
    fn reduce(&self, mut v: Vector) -> Vector {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -v[p].clone();
                v.add_scaled(&c, row);
            }
        }
        v
    }

    /// Adds `v` to the span, keeping reduced row-echelon form. Returns whether
    /// the dimension grew.
    pub(crate) fn insert(&mut self, v: Vector) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.leading_index() else {
            return false;
        };
        let inv = r[p].recip();
        r = r.scale(&inv);
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let c = -row[p].clone();
                row.add_scaled(&c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        v.check_dim(self.dim)?;
        Ok(self.reduce(v.clone()).is_zero())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &Vector) -> Result<Option<Vec<Rational>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        check_same(self, other)?;
        for row in &self.rows {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_same(self, other)?;
        let mut s = self.clone();
        for row in &other.rows {
            s.insert(row.clone());
        }
        Ok(s)
    }

    /// Intersection by the Zassenhaus construction: echelonize `[a | a]` and
    /// `[b | 0]`, the rows with zero left half span `A ∩ B` on the right.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_same(self, other)?;
        let n = self.dim;
        let doubled = self
            .rows
            .iter()
            .map(|a| {
                let mut e = a.entries().to_vec();
                e.extend_from_slice(a.entries());
                Vector(e)
            })
            .chain(other.rows.iter().map(|b| {
                let mut e = b.entries().to_vec();
                e.resize(2 * n, Rational::zero());
                Vector(e)
            }));
        let big = Subspace::span(2 * n, doubled)?;
        let rows = big.rows.iter().zip(&big.pivots).filter(|(_, &p)| p >= n).map(|(r, _)| r.slice(n..2 * n));
        Subspace::span(n, rows)
    }

    /// Complement of `self` inside `ambient`: the echelon rows of `ambient`
    /// whose pivots are not pivots of `self`.
    pub fn complement_in(&self, ambient: &Subspace) -> Result<Subspace> {
        if !self.is_subspace_of(ambient)? {
            return Err(Error::NotContained);
        }
        let rows = ambient
            .rows
            .iter()
            .zip(&ambient.pivots)
            .filter(|(_, p)| self.pivots.binary_search(p).is_err())
            .map(|(r, _)| r.clone());
        Subspace::span(self.dim, rows)
    }

    /// Kernel of the matrix whose rows are `rows` (each of length `ncols`).
    pub fn null_space(ncols: usize, rows: impl IntoIterator<Item = Vector>) -> Result<Subspace> {
        let row_space = Subspace::span(ncols, rows)?;
        let free = (0..ncols).filter(|c| row_space.pivots.binary_search(c).is_err());
        let kernel = free.map(|f| {
            let mut v = Vector::unit(ncols, f);
            for (row, &p) in row_space.rows.iter().zip(&row_space.pivots) {
                v.set(p, -row[f].clone());
            }
            v
        });
        Subspace::span(ncols, kernel)
    }

    /// Embed a subspace of `Q^k` at `offset` inside `Q^dim`.
    pub fn embed(&self, offset: usize, dim: usize) -> Subspace {
        Subspace {
            dim,
            rows: self.rows.iter().map(|r| r.embed(offset, dim)).collect(),
            pivots: self.pivots.iter().map(|p| p + offset).collect(),
        }
    }
}

fn check_same(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.dim == b.dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: a.dim, found: b.dim })
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace").field("dim", &self.dim).field("basis", &self.rows).finish()
    }
}

/// Lowest terms with a positive denominator.
pub fn is_canonical(x: &Rational) -> bool {
    use num_integer::Integer;
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}
