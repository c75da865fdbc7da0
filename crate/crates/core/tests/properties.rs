use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use setgraded::algebra::{Product, ProductTarget};
use setgraded::analysis::{self, StructureFlags};
use setgraded::document::{AlgebraDocument, IndexRef};
use setgraded::ideals::{self, GradedSubspace};
use setgraded::linalg::{is_canonical, rat};
use setgraded::report::{Report, ReportOptions, Sections};
use setgraded::support::CheckedAlgebra;
use setgraded::{catalog, document, ExtLabel, GradedAlgebra, Rational, Subspace, Vector};

const DIM: usize = 4;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), dim).prop_map(Vector::from_entries)
}

fn subspace() -> impl Strategy<Value = Subspace> {
    prop::collection::vec(vector(DIM), 0..=4).prop_map(|vs| Subspace::span(DIM, vs).unwrap())
}

fn algebra() -> impl Strategy<Value = CheckedAlgebra> {
    any::<u64>().prop_map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CheckedAlgebra::new(catalog::random_algebra(&mut rng, 6, 2)).unwrap()
    })
}

/// A random vector inside `P_l`.
fn in_block(alg: &GradedAlgebra, l: setgraded::LabelId, coefs: &[Rational]) -> Vector {
    let mut v = Vector::zeros(alg.total_dim());
    for (k, i) in alg.block_range(l).enumerate() {
        v.set(i, coefs[k % coefs.len()].clone());
    }
    v
}

fn ext_domain(alg: &GradedAlgebra) -> Vec<ExtLabel> {
    alg.ext_labels().filter(|e| !alg.is_zero_label(e.base)).collect()
}

fn subset(all: &[ExtLabel], mask: u32) -> BTreeSet<ExtLabel> {
    all.iter().enumerate().filter(|(k, _)| mask >> (k % 32) & 1 == 1).map(|(_, e)| *e).collect()
}

fn tilde_image(set: &BTreeSet<ExtLabel>) -> BTreeSet<ExtLabel> {
    set.iter().map(|e| e.twin()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension_formula(a in subspace(), b in subspace()) {
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(a.rank() + b.rank(), sum.rank() + meet.rank());
        prop_assert!(meet.is_subspace_of(&a).unwrap() && meet.is_subspace_of(&b).unwrap());
        prop_assert!(a.is_subspace_of(&sum).unwrap() && b.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn complement_is_a_complement(s in subspace(), t in subspace()) {
        let w = s.sum(&t).unwrap();
        let c = s.complement_in(&w).unwrap();
        prop_assert!(s.intersect(&c).unwrap().is_zero());
        prop_assert_eq!(s.sum(&c).unwrap(), w);
        prop_assert!(c.is_subspace_of(&s.sum(&t).unwrap()).unwrap());
    }

    #[test]
    fn echelonize_is_idempotent(s in subspace()) {
        let again = Subspace::echelonize(DIM, s.basis()).unwrap();
        prop_assert_eq!(again.basis(), s.basis());
        prop_assert_eq!(again.pivots(), s.pivots());
        for row in s.basis() {
            prop_assert!(row.entries().iter().all(is_canonical));
            prop_assert_eq!(&row[row.leading_index().unwrap()], &rat(1, 1));
        }
    }

    #[test]
    fn null_space_is_annihilated(rows in prop::collection::vec(vector(DIM), 0..=3)) {
        let ker = Subspace::null_space(DIM, rows.clone()).unwrap();
        let rank = Subspace::span(DIM, rows.clone()).unwrap().rank();
        prop_assert_eq!(ker.rank() + rank, DIM);
        for k in ker.basis() {
            for r in &rows {
                let dot: Rational = r.entries().iter().zip(k.entries()).map(|(x, y)| x * y).sum();
                prop_assert_eq!(dot, rat(0, 1));
            }
        }
    }

    #[test]
    fn products_are_bilinear(alg in algebra(), a in rational(), b in rational(), seed in any::<u64>()) {
        let n = alg.total_dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random = || {
            use rand::Rng;
            Vector::from_entries((0..n).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect())
        };
        let (x, y, z) = (random(), random(), random());
        let ax_by = &x.scale(&a) + &y.scale(&b);
        for which in [Product::Bracket, Product::Assoc] {
            let lhs = alg.product_vec(which, &ax_by, &z).unwrap();
            let rhs = &alg.product_vec(which, &x, &z).unwrap().scale(&a) + &alg.product_vec(which, &y, &z).unwrap().scale(&b);
            prop_assert_eq!(&lhs, &rhs);
            let lhs = alg.product_vec(which, &z, &ax_by).unwrap();
            let rhs = &alg.product_vec(which, &z, &x).unwrap().scale(&a) + &alg.product_vec(which, &z, &y).unwrap().scale(&b);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn products_land_in_target_block(alg in algebra(), cx in prop::collection::vec(rational(), 2), cy in prop::collection::vec(rational(), 2)) {
        for s in alg.label_ids() {
            for t in alg.label_ids() {
                let (x, y) = (in_block(&alg, s, &cx), in_block(&alg, t, &cy));
                let v = &alg.bracket_vec(&x, &y).unwrap() + &alg.aprod_vec(&x, &y).unwrap();
                match alg.component_product_target(s, t) {
                    ProductTarget::Zero => prop_assert!(v.is_zero()),
                    ProductTarget::Target(u) => prop_assert!(alg.block_space(u).contains(&v).unwrap()),
                    ProductTarget::Incoherent(_) => prop_assert!(false, "validated algebra is incoherent"),
                }
            }
        }
    }

    #[test]
    fn psi_is_tilde_closed_and_distributive(alg in algebra(), m1 in any::<u32>(), m2 in any::<u32>(), pick in any::<prop::sample::Index>()) {
        let dom = ext_domain(&alg);
        prop_assume!(!dom.is_empty());
        let all: Vec<ExtLabel> = alg.ext_labels().collect();
        let a = all[pick.index(all.len())];
        let (o1, o2) = (subset(&dom, m1), subset(&dom, m2));
        let p1 = alg.psi(&o1, a).unwrap();
        let p2 = alg.psi(&o2, a).unwrap();
        prop_assert_eq!(tilde_image(&p1), p1.clone());
        let union: BTreeSet<_> = o1.union(&o2).copied().collect();
        let pu = alg.psi(&union, a).unwrap();
        prop_assert_eq!(pu, p1.union(&p2).copied().collect::<BTreeSet<_>>());
        for e in &p1 {
            prop_assert!(!alg.is_zero_label(e.base));
        }
    }

    #[test]
    fn second_bullet_duality(alg in algebra()) {
        for lambda in alg.label_ids() {
            for mu in alg.label_ids() {
                for eta in alg.label_ids() {
                    let left = alg.star(ExtLabel::plain(lambda), ExtLabel::tilde(mu)).contains(&eta);
                    let right = alg.star(ExtLabel::plain(eta), ExtLabel::plain(mu)) == BTreeSet::from([lambda]);
                    prop_assert_eq!(left, right);
                }
                prop_assert!(alg.star(ExtLabel::tilde(lambda), ExtLabel::tilde(mu)).is_empty());
            }
        }
    }

    #[test]
    fn closure_is_monotone_idempotent_and_ideal(alg in algebra(), gens in prop::collection::vec(prop::collection::vec(rational(), 8), 0..=2)) {
        let n = alg.total_dim();
        let vs: Vec<Vector> = gens.iter().map(|g| Vector::from_entries(g.iter().cycle().take(n).cloned().collect())).collect();
        let g = GradedSubspace::graded_span(&alg, &vs).unwrap();
        let cl = ideals::ideal_closure(&alg, &g).unwrap();
        prop_assert!(g.is_subspace_of(&cl).unwrap());
        prop_assert_eq!(ideals::ideal_closure(&alg, &cl).unwrap(), cl.clone());
        prop_assert!(ideals::is_graded_ideal(&alg, &cl).unwrap().is_empty());
        if analysis::is_maximal_length(&alg) {
            for l in alg.nonzero_labels() {
                let r = cl.block(l).rank();
                prop_assert!(r == 0 || r == alg.block_dim(l));
            }
        }
        // a bigger generating set gives a bigger ideal
        let bigger = g.sum(&GradedSubspace::blocks_of(&alg, &[alg.label_ids().next().unwrap()])).unwrap();
        prop_assert!(cl.is_subspace_of(&ideals::ideal_closure(&alg, &bigger).unwrap()).unwrap());
    }

    #[test]
    fn class_ideals(alg in algebra()) {
        for cls in &alg.partition().classes {
            let i0 = ideals::i0_of_class(&alg, cls).unwrap();
            let mut support = i0.support();
            support.retain(|&l| !alg.is_zero_label(l));
            prop_assert!(support.is_empty());
            let v = ideals::v_of_class(&alg, cls).unwrap();
            prop_assert!(i0.is_subspace_of(&ideals::ideal_closure(&alg, &v).unwrap()).unwrap());
            let i = ideals::ideal_of_class(&alg, cls).unwrap();
            prop_assert!(ideals::is_graded_ideal(&alg, &i).unwrap().is_empty());
        }
    }

    #[test]
    fn center_annihilates(alg in algebra()) {
        let z = analysis::center(&alg);
        for c in z.basis() {
            for j in 0..alg.total_dim() {
                let e = alg.basis_vector(j);
                prop_assert!(alg.bracket_vec(c, &e).unwrap().is_zero());
                prop_assert!(alg.aprod_vec(c, &e).unwrap().is_zero());
                prop_assert!(alg.aprod_vec(&e, c).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn decomposition_and_restrictions(alg in algebra()) {
        let d = analysis::decompose(&alg).unwrap();
        prop_assert!(d.covers);
        let f = StructureFlags::of(&alg);
        if f.centerless && f.tight_zero {
            prop_assert!(d.direct);
        }
        if let Ok(parts) = analysis::fine_decomposition_check(&alg) {
            for p in parts {
                prop_assert!(p.restricted.validate().is_valid(), "{:?}", p.failed_checks);
            }
        }
    }

    #[test]
    fn rescaling_preserves_structure(alg in algebra(), scale in prop::collection::vec((1i64..=5, 1i64..=3, any::<bool>()), 12)) {
        let s: Vec<Rational> = (0..alg.total_dim()).map(|i| {
            let (n, d, neg) = scale[i];
            rat(if neg { -n } else { n }, d)
        }).collect();
        let other = CheckedAlgebra::new(alg.rescaled(&s).unwrap()).unwrap();
        prop_assert_eq!(&other.partition().classes, &alg.partition().classes);
        prop_assert_eq!(
            analysis::gr_simple_direct(&other).unwrap().tag(),
            analysis::gr_simple_direct(&alg).unwrap().tag()
        );
        prop_assert_eq!(analysis::center(&other).rank(), analysis::center(&alg).rank());
    }

    #[test]
    fn document_round_trip(alg in algebra()) {
        let doc = AlgebraDocument::from_algebra(&alg);
        let back = document::load_str(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, alg.algebra());
        prop_assert_eq!(doc.canonicalize().unwrap(), doc.clone());

        // label-relative indices describe the same algebra
        let mut local = doc.clone();
        let relabel = |r: &mut IndexRef| {
            if let IndexRef::Global(i) = *r {
                let l = alg.block_of(i);
                *r = IndexRef::Local { label: alg.label_name(l).to_string(), k: i - alg.block_range(l).start };
            }
        };
        for e in local.bracket.iter_mut().chain(local.aprod.iter_mut()) {
            relabel(&mut e.i);
            relabel(&mut e.j);
            e.value.iter_mut().for_each(|c| relabel(&mut c.index));
        }
        prop_assert_eq!(local.canonicalize().unwrap(), doc);
    }

    #[test]
    fn reports_are_deterministic(alg in algebra()) {
        let opts = ReportOptions { sections: Sections::ALL, witness: true };
        let a = Report::build(alg.algebra().clone(), opts).unwrap();
        let b = Report::build(alg.algebra().clone(), opts).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert_eq!(a.exit_code(), if a.problems.is_empty() { 0 } else { 1 });
    }
}
