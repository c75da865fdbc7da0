//! JSON documents describing an algebra by its structure constants.
//!
//! ```json
//! {"name": "m2-cartan",
//!  "labels": [{"name": "z", "dim": 2}, {"name": "p", "dim": 1}],
//!  "zero_label": "z",
//!  "bracket": [{"i": 0, "j": 2, "value": [{"index": 2, "num": 1, "den": 1}]}],
//!  "aprod":   [{"i": 0, "j": 2, "value": [{"index": 2, "num": 1, "den": 1}]}]}
//! ```
//!
//! Bracket entries are given for `i <= j` only and antisymmetrized on load.
//! Any index may also be written `{"label": "p", "k": 0}`, the `k`-th basis
//! vector of block `p`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{GradedAlgebra, Product};
use crate::error::{Error, Result};
use crate::linalg::{Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub labels: Vec<LabelDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_label: Option<String>,
    #[serde(default)]
    pub bracket: Vec<EntryDoc>,
    #[serde(default)]
    pub aprod: Vec<EntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelDoc {
    pub name: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub i: IndexRef,
    pub j: IndexRef,
    pub value: Vec<CoefDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefDoc {
    pub index: IndexRef,
    pub num: Integer,
    #[serde(default = "Integer::one")]
    pub den: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexRef {
    Global(usize),
    Local { label: String, k: usize },
}

/// Arbitrary-size integer: a JSON number when it fits in `i64`, otherwise a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integer(pub BigInt);

impl Integer {
    fn one() -> Self {
        Integer(BigInt::from(1))
    }
}

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Visit;
        impl serde::de::Visitor<'_> for Visit {
            type Value = Integer;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Integer, E> {
                Ok(Integer(v.into()))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Integer, E> {
                Ok(Integer(v.into()))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Integer, E> {
                v.parse().map(Integer).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(Visit)
    }
}

impl From<&BigInt> for Integer {
    fn from(n: &BigInt) -> Self {
        Integer(n.clone())
    }
}

impl CoefDoc {
    pub fn rational(&self) -> Result<Rational> {
        if self.den.0.is_zero() {
            return Err(Error::MalformedRational(format!("{}/0", self.num.0)));
        }
        Ok(Rational::new(self.num.0.clone(), self.den.0.clone()))
    }
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Build the algebra. Axioms are not checked here.
    pub fn to_algebra(&self) -> Result<GradedAlgebra> {
        let labels: Vec<(&str, usize)> = self.labels.iter().map(|l| (l.name.as_str(), l.dim)).collect();
        let mut alg = GradedAlgebra::new(self.name.clone(), &labels, self.zero_label.as_deref())?;
        for (which, entries) in [(Product::Bracket, &self.bracket), (Product::Assoc, &self.aprod)] {
            let mut seen = BTreeSet::new();
            for entry in entries {
                let i = resolve(&alg, &entry.i)?;
                let j = resolve(&alg, &entry.j)?;
                if which == Product::Bracket && i > j {
                    return Err(Error::Malformed(format!("bracket entry ({i}, {j}) must have i <= j")));
                }
                if !seen.insert((i, j)) {
                    return Err(Error::Malformed(format!("duplicate entry ({i}, {j})")));
                }
                let value = vector(&alg, &entry.value)?;
                match which {
                    Product::Bracket => alg.set_bracket(i, j, value)?,
                    Product::Assoc => alg.set_aprod(i, j, value)?,
                }
            }
        }
        Ok(alg)
    }

    /// Canonical document of an algebra: global indices, sorted entries,
    /// reduced rationals, zero coefficients omitted.
    ///
    /// Only bracket entries with `i <= j` are written, so an algebra whose
    /// bracket is not antisymmetric does not survive a round trip.
    pub fn from_algebra(alg: &GradedAlgebra) -> Self {
        let entries = |which: Product| -> Vec<EntryDoc> {
            alg.entries(which)
                .filter(|(i, j, _)| which == Product::Assoc || i <= j)
                .map(|(i, j, v)| EntryDoc { i: IndexRef::Global(i), j: IndexRef::Global(j), value: sparse(v) })
                .collect()
        };
        AlgebraDocument {
            name: alg.name().to_string(),
            labels: alg
                .label_ids()
                .map(|l| LabelDoc { name: alg.label_name(l).to_string(), dim: alg.block_dim(l) })
                .collect(),
            zero_label: alg.zero_label().map(|z| alg.label_name(z).to_string()),
            bracket: entries(Product::Bracket),
            aprod: entries(Product::Assoc),
        }
    }

    /// Load and re-serialize: the form [`from_algebra`](Self::from_algebra)
    /// produces for the same algebra.
    pub fn canonicalize(&self) -> Result<Self> {
        Ok(Self::from_algebra(&self.to_algebra()?))
    }
}

/// Nonzero coefficients of `v` with global indices.
pub fn sparse(v: &Vector) -> Vec<CoefDoc> {
    v.support()
        .map(|k| CoefDoc { index: IndexRef::Global(k), num: v[k].numer().into(), den: v[k].denom().into() })
        .collect()
}

fn resolve(alg: &GradedAlgebra, r: &IndexRef) -> Result<usize> {
    match r {
        IndexRef::Global(i) if *i < alg.total_dim() => Ok(*i),
        IndexRef::Global(i) => Err(Error::IndexOutOfRange { index: *i, total: alg.total_dim() }),
        IndexRef::Local { label, k } => {
            let l = alg.label_id(label)?;
            let range = alg.block_range(l);
            if *k >= range.len() {
                return Err(Error::LocalIndexOutOfRange { label: label.clone(), k: *k, dim: range.len() });
            }
            Ok(range.start + k)
        }
    }
}

fn vector(alg: &GradedAlgebra, coefs: &[CoefDoc]) -> Result<Vector> {
    let mut v = Vector::zeros(alg.total_dim());
    let mut seen = BTreeSet::new();
    for c in coefs {
        let k = resolve(alg, &c.index)?;
        if !seen.insert(k) {
            return Err(Error::Malformed(format!("coefficient index {k} given twice")));
        }
        v.set(k, c.rational()?);
    }
    Ok(v)
}

pub fn load_str(text: &str) -> Result<GradedAlgebra> {
    AlgebraDocument::from_json(text)?.to_algebra()
}

pub fn load_file(path: impl AsRef<Path>) -> Result<GradedAlgebra> {
    load_str(&std::fs::read_to_string(path)?)
}

pub fn to_json(alg: &GradedAlgebra) -> String {
    AlgebraDocument::from_algebra(alg).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::rat;

    #[test]
    fn catalog_round_trips() {
        for (_, a) in catalog::corpus() {
            let doc = AlgebraDocument::from_algebra(&a);
            let text = doc.to_json();
            let back = load_str(&text).unwrap();
            assert_eq!(back, a);
            assert_eq!(AlgebraDocument::from_json(&text).unwrap(), doc);
        }
    }

    #[test]
    fn loader_antisymmetrizes() {
        let text = r#"{"name":"heis3","labels":[{"name":"z","dim":1},{"name":"a","dim":1},{"name":"b","dim":1}],
            "zero_label":"z",
            "bracket":[{"i":{"label":"a","k":0},"j":2,"value":[{"index":0,"num":1}]}]}"#;
        let a = load_str(text).unwrap();
        assert_eq!(a, catalog::heis3());
        assert_eq!(a.constant(Product::Bracket, 2, 1), Some(&Vector::from_ints(&[-1, 0, 0])));
    }

    #[test]
    fn rationals_are_reduced_and_big_values_survive() {
        let text = r#"{"name":"x","labels":[{"name":"a","dim":1}],
            "aprod":[{"i":0,"j":0,"value":[{"index":0,"num":6,"den":-4}]}]}"#;
        let a = load_str(text).unwrap();
        assert_eq!(a.constant(Product::Assoc, 0, 0).unwrap()[0], rat(-3, 2));

        let big = "123456789012345678901234567890";
        let text = format!(
            r#"{{"name":"x","labels":[{{"name":"a","dim":1}}],
            "aprod":[{{"i":0,"j":0,"value":[{{"index":0,"num":"{big}","den":1}}]}}]}}"#
        );
        let a = load_str(&text).unwrap();
        let json = to_json(&a);
        assert!(json.contains(&format!("\"{big}\"")));
        assert_eq!(load_str(&json).unwrap(), a);
    }

    #[test]
    fn rejections() {
        let base = |bracket: &str| {
            format!(r#"{{"name":"x","labels":[{{"name":"a","dim":1}},{{"name":"b","dim":1}}],"bracket":[{bracket}]}}"#)
        };
        let cases = [
            (r#"{"i":{"label":"q","k":0},"j":1,"value":[]}"#, "unknown label"),
            (r#"{"i":0,"j":5,"value":[]}"#, "out of range"),
            (r#"{"i":{"label":"a","k":1},"j":1,"value":[]}"#, "local index"),
            (r#"{"i":0,"j":1,"value":[{"index":0,"num":1,"den":0}]}"#, "malformed rational"),
            (r#"{"i":1,"j":0,"value":[]}"#, "i <= j"),
            (r#"{"i":0,"j":1,"value":[]},{"i":0,"j":1,"value":[]}"#, "duplicate"),
            (r#"{"i":0,"j":1,"value":[{"index":0,"num":1},{"index":0,"num":2}]}"#, "twice"),
        ];
        for (entry, needle) in cases {
            let err = load_str(&base(entry)).unwrap_err().to_string();
            assert!(err.contains(needle), "{entry}: {err}");
        }
        assert!(matches!(load_str("{"), Err(Error::Json(_))));
        assert!(matches!(
            load_str(r#"{"name":"x","labels":[{"name":"a","dim":1}],"zero_label":"q"}"#),
            Err(Error::UnknownLabel(_))
        ));
        assert!(load_str(r#"{"name":"x","labels":[],"extra":1}"#).is_err());
    }

    #[test]
    fn canonicalize_sorts_and_drops_zeros() {
        let text = r#"{"name":"x","labels":[{"name":"a","dim":2}],
            "aprod":[{"i":1,"j":1,"value":[{"index":1,"num":2,"den":2},{"index":0,"num":0}]},
                     {"i":0,"j":0,"value":[{"index":0,"num":1}]}]}"#;
        let c = AlgebraDocument::from_json(text).unwrap().canonicalize().unwrap();
        assert_eq!(c.aprod.len(), 2);
        assert_eq!(c.aprod[0].i, IndexRef::Global(0));
        assert_eq!(
            c.aprod[1].value,
            vec![CoefDoc { index: IndexRef::Global(1), num: Integer(1.into()), den: Integer(1.into()) }]
        );
        assert_eq!(c.canonicalize().unwrap(), c);
    }
}
