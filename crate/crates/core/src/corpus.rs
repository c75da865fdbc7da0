//! The bundled corpus, embedded at build time.

use crate::algebra::GradedAlgebra;
use crate::document;
use crate::error::Result;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        /// `(file stem, JSON text)` for every bundled algebra.
        pub const FILES: &[(&str, &str)] = &[$(($name, include_str!(concat!("../corpus/", $name, ".json")))),*];
    };
}

bundled!(
    "m2-cartan",
    "heis3",
    "m2-double",
    "sl2-cartan",
    "broken-jacobi",
    "broken-leibniz",
    "untight-z",
    "partial-action",
);

pub fn load(name: &str) -> Option<Result<GradedAlgebra>> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| document::load_str(text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn files_match_catalog() {
        let built = catalog::corpus();
        assert_eq!(FILES.len(), built.len());
        for ((stem, text), (name, alg)) in FILES.iter().zip(built) {
            assert_eq!(*stem, name);
            assert_eq!(document::load_str(text).unwrap(), alg, "{stem}");
            assert_eq!(document::to_json(&alg) + "\n", *text, "{stem} is not canonical");
        }
    }

    #[test]
    fn expected_shapes() {
        let m2 = load("m2-cartan").unwrap().unwrap();
        let dims: Vec<_> = m2.label_ids().map(|l| (m2.label_name(l), m2.block_dim(l))).collect();
        assert_eq!(dims, [("z", 2), ("p", 1), ("m", 1)]);
        let h = load("heis3").unwrap().unwrap();
        assert_eq!(h.total_dim(), 3);
        assert_eq!(h.entries(crate::Product::Assoc).count(), 0);
        assert!(load("nope").is_none());
    }
}
