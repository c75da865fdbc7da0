//! Built-in algebras: the bundled corpus, small negative fixtures, and a
//! generator of random valid algebras assembled from them.
//!
//! Matrix-based algebras are built by multiplying actual matrices and
//! reading the result back in the chosen basis, so their structure
//! constants do not depend on any code in [`crate::algebra`].

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{GradedAlgebra, Product};
use crate::linalg::{int, rat, Rational, Subspace, Vector};

type Matrix = Vec<Vec<Rational>>;

fn elementary(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = vec![vec![int(0); n]; n];
    m[i][j] = int(1);
    m
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = vec![vec![int(0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == int(0) {
                continue;
            }
            for j in 0..n {
                c[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    c
}

fn flatten(m: &Matrix) -> Vector {
    Vector::from_entries(m.iter().flatten().cloned().collect())
}

/// Solve `Σ c_i basis_i = v` for a linearly independent `basis`.
fn express(basis: &[Vector], v: &Vector) -> Vector {
    let k = basis.len();
    let rows = (0..v.dim()).map(|r| {
        let mut entries: Vec<Rational> = basis.iter().map(|b| b[r].clone()).collect();
        entries.push(-v[r].clone());
        Vector::from_entries(entries)
    });
    let kernel = Subspace::null_space(k + 1, rows).expect("consistent dimensions");
    let sol = kernel.basis().iter().find(|s| s[k] != int(0)).expect("product leaves the span of the matrix basis");
    let scale = sol[k].recip();
    Vector::from_entries(sol.entries()[..k].iter().map(|x| x * &scale).collect())
}

/// An algebra spanned by the given matrices, graded by `labels`, with the
/// commutator as bracket and (optionally) the matrix product.
fn matrix_algebra(
    name: &str,
    labels: &[(&str, usize)],
    zero: Option<&str>,
    basis: Vec<Matrix>,
    with_product: bool,
) -> GradedAlgebra {
    let mut alg = GradedAlgebra::new(name, labels, zero).expect("well-formed fixture");
    let flat: Vec<Vector> = basis.iter().map(flatten).collect();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let ab = matmul(&basis[i], &basis[j]);
            let ba = matmul(&basis[j], &basis[i]);
            let comm: Matrix = ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect();
            alg.set_constant(Product::Bracket, i, j, express(&flat, &flatten(&comm))).unwrap();
            if with_product {
                alg.set_aprod(i, j, express(&flat, &flatten(&ab))).unwrap();
            }
        }
    }
    alg
}

/// `M₂(Q)` with the Cartan grading: `z = {E11, E22}`, `p = {E12}`, `m = {E21}`.
pub fn m2_cartan() -> GradedAlgebra {
    let basis = vec![elementary(2, 0, 0), elementary(2, 1, 1), elementary(2, 0, 1), elementary(2, 1, 0)];
    matrix_algebra("m2-cartan", &[("z", 2), ("p", 1), ("m", 1)], Some("z"), basis, true)
}

/// Two block-diagonal copies of `M₂(Q)` inside `M₄(Q)` sharing the diagonal label `z`.
pub fn m2_double() -> GradedAlgebra {
    let basis = vec![
        elementary(4, 0, 0),
        elementary(4, 1, 1),
        elementary(4, 2, 2),
        elementary(4, 3, 3),
        elementary(4, 0, 1),
        elementary(4, 1, 0),
        elementary(4, 2, 3),
        elementary(4, 3, 2),
    ];
    matrix_algebra("m2-double", &[("z", 4), ("p1", 1), ("m1", 1), ("p2", 1), ("m2", 1)], Some("z"), basis, true)
}

/// `sl₂(Q)` with zero associative product: `z = {h}`, `p = {e}`, `m = {f}`.
pub fn sl2_cartan() -> GradedAlgebra {
    let mut h = elementary(2, 0, 0);
    h[1][1] = int(-1);
    let basis = vec![h, elementary(2, 0, 1), elementary(2, 1, 0)];
    matrix_algebra("sl2-cartan", &[("z", 1), ("p", 1), ("m", 1)], Some("z"), basis, false)
}

/// Heisenberg algebra `[x, y] = c` with zero product: `z = {c}`, `a = {x}`, `b = {y}`.
pub fn heis3() -> GradedAlgebra {
    let mut alg = GradedAlgebra::new("heis3", &[("z", 1), ("a", 1), ("b", 1)], Some("z")).unwrap();
    alg.set_bracket(1, 2, Vector::from_ints(&[1, 0, 0])).unwrap();
    alg
}

/// One-dimensional algebra with every product zero.
pub fn line() -> GradedAlgebra {
    GradedAlgebra::new("line", &[("l", 1)], None).unwrap()
}

/// An algebra whose only label is the distinguished zero.
pub fn zero_only() -> GradedAlgebra {
    GradedAlgebra::new("zero-only", &[("z", 1)], Some("z")).unwrap()
}

/// `m2-cartan` with `[E11, E21] = +E21` (antisymmetrized), which breaks Jacobi.
pub fn broken_jacobi() -> GradedAlgebra {
    let mut alg = m2_cartan();
    alg.set_name("broken-jacobi");
    alg.set_bracket(0, 3, Vector::from_ints(&[0, 0, 0, 1])).unwrap();
    alg
}

/// `m2-cartan` with `E12 · E21 = E22`.
pub fn broken_leibniz() -> GradedAlgebra {
    let mut alg = m2_cartan();
    alg.set_name("broken-leibniz");
    alg.set_aprod(2, 3, Vector::from_ints(&[0, 1, 0, 0])).unwrap();
    alg
}

/// `m2-cartan` with an extra central, annihilating basis vector `c` in block `z`.
pub fn untight_z() -> GradedAlgebra {
    let base = m2_cartan();
    // new order: E11, E22, c | E12 | E21
    let remap = |i: usize| if i < 2 { i } else { i + 1 };
    let mut alg = GradedAlgebra::new("untight-z", &[("z", 3), ("p", 1), ("m", 1)], Some("z")).unwrap();
    for which in [Product::Bracket, Product::Assoc] {
        for (i, j, v) in base.entries(which) {
            let mut w = Vector::zeros(5);
            for k in v.support() {
                w.set(remap(k), v[k].clone());
            }
            alg.set_constant(which, remap(i), remap(j), w).unwrap();
        }
    }
    alg
}

/// Lie algebra `[h, x1] = x1`, `[h, x2] = 0` graded `z = {h}`, `a = {x1, x2}`;
/// `P_a` is only partly produced by `[P_z, P_a]`.
pub fn partial_action() -> GradedAlgebra {
    let mut alg = GradedAlgebra::new("partial-action", &[("z", 1), ("a", 2)], Some("z")).unwrap();
    alg.set_bracket(0, 1, Vector::from_ints(&[0, 1, 0])).unwrap();
    alg
}

/// Two-dimensional non-abelian Lie algebra `[h, e] = e`, graded `z = {h}`,
/// `p = {e}`, with no distinguished zero.
pub fn borel2() -> GradedAlgebra {
    let mut alg = GradedAlgebra::new("borel2", &[("z", 1), ("p", 1)], None).unwrap();
    alg.set_bracket(0, 1, Vector::from_ints(&[0, 1])).unwrap();
    alg
}

/// Products of `P_a` with itself land in two different blocks.
pub fn incoherent() -> GradedAlgebra {
    let mut alg = GradedAlgebra::new("incoherent", &[("a", 1), ("b", 1), ("c", 1)], None).unwrap();
    alg.set_aprod(0, 0, Vector::from_ints(&[0, 1, 1])).unwrap();
    alg
}

/// `[P_z, P_a]` lands back in `P_z`, so `z` is not an admissible zero.
pub fn zero_absorbing() -> GradedAlgebra {
    let mut alg = GradedAlgebra::new("zero-absorbing", &[("z", 1), ("a", 1)], Some("z")).unwrap();
    alg.set_bracket(0, 1, Vector::from_ints(&[1, 0])).unwrap();
    alg
}

/// The bundled corpus as `(file stem, algebra)`, in a fixed order.
pub fn corpus() -> Vec<(&'static str, GradedAlgebra)> {
    vec![
        ("m2-cartan", m2_cartan()),
        ("heis3", heis3()),
        ("m2-double", m2_double()),
        ("sl2-cartan", sl2_cartan()),
        ("broken-jacobi", broken_jacobi()),
        ("broken-leibniz", broken_leibniz()),
        ("untight-z", untight_z()),
        ("partial-action", partial_action()),
    ]
}

/// How a summand of [`direct_sum`] treats its distinguished zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroMode {
    /// Merge the summand's zero block into the shared zero label `z`.
    Shared,
    /// Keep the zero block as an ordinary label of its own.
    Own,
}

/// Direct sum of algebras. Labels of summand `k` get the suffix `k+1`
/// unless the summand's zero block is merged into the shared label `z`.
/// The result has a distinguished zero iff some summand is [`ZeroMode::Shared`].
pub fn direct_sum(name: &str, parts: &[(GradedAlgebra, ZeroMode)]) -> GradedAlgebra {
    let mut shared_dim = 0;
    let mut labels: Vec<(String, usize)> = Vec::new();
    for (k, (alg, mode)) in parts.iter().enumerate() {
        for l in alg.label_ids() {
            if *mode == ZeroMode::Shared && alg.is_zero_label(l) {
                shared_dim += alg.block_dim(l);
            } else {
                labels.push((format!("{}{}", alg.label_name(l), k + 1), alg.block_dim(l)));
            }
        }
    }
    let zero = (shared_dim > 0).then_some("z");
    if shared_dim > 0 {
        labels.insert(0, ("z".to_string(), shared_dim));
    }
    let mut out = GradedAlgebra::new(name, &labels, zero).expect("distinct suffixed labels");

    // global index maps, summand by summand
    let mut shared_next = 0;
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for (k, (alg, mode)) in parts.iter().enumerate() {
        let mut map = vec![0; alg.total_dim()];
        for l in alg.label_ids() {
            let range = alg.block_range(l);
            if *mode == ZeroMode::Shared && alg.is_zero_label(l) {
                for (t, i) in range.enumerate() {
                    map[i] = shared_next + t;
                }
                shared_next += alg.block_dim(l);
            } else {
                let target = out.label_id(&format!("{}{}", alg.label_name(l), k + 1)).unwrap();
                let start = out.block_range(target).start;
                for (t, i) in range.enumerate() {
                    map[i] = start + t;
                }
            }
        }
        maps.push(map);
    }
    let n = out.total_dim();
    for ((alg, _), map) in parts.iter().zip(&maps) {
        for which in [Product::Bracket, Product::Assoc] {
            for (i, j, v) in alg.entries(which) {
                let mut w = Vector::zeros(n);
                for k in v.support() {
                    w.set(map[k], v[k].clone());
                }
                out.set_constant(which, map[i], map[j], w).unwrap();
            }
        }
    }
    out
}

/// Reorder labels (and their blocks) by `order`, a permutation of label positions.
pub fn permute_labels(alg: &GradedAlgebra, order: &[usize]) -> GradedAlgebra {
    let ids: Vec<_> = alg.label_ids().collect();
    let labels: Vec<(String, usize)> =
        order.iter().map(|&k| (alg.label_name(ids[k]).to_string(), alg.block_dim(ids[k]))).collect();
    let zero = alg.zero_label().map(|z| alg.label_name(z).to_string());
    let mut out = GradedAlgebra::new(alg.name(), &labels, zero.as_deref()).unwrap();
    let mut map = vec![0; alg.total_dim()];
    for &k in order {
        let l = ids[k];
        let target = out.label_id(alg.label_name(l)).unwrap();
        let start = out.block_range(target).start;
        for (t, i) in alg.block_range(l).enumerate() {
            map[i] = start + t;
        }
    }
    let n = out.total_dim();
    for which in [Product::Bracket, Product::Assoc] {
        for (i, j, v) in alg.entries(which) {
            let mut w = Vector::zeros(n);
            for k in v.support() {
                w.set(map[k], v[k].clone());
            }
            out.set_constant(which, map[i], map[j], w).unwrap();
        }
    }
    out
}

/// A random valid algebra with at most `max_labels` labels and blocks of
/// dimension at most `max_block`: a direct sum of corpus blocks and
/// zero-product graded Lie algebras, with random label order and a random
/// diagonal change of basis.
pub fn random_algebra<R: Rng + ?Sized>(rng: &mut R, max_labels: usize, max_block: usize) -> GradedAlgebra {
    let pieces: [fn() -> GradedAlgebra; 4] = [m2_cartan, heis3, sl2_cartan, line];
    loop {
        let count = rng.gen_range(1..=3);
        let parts: Vec<(GradedAlgebra, ZeroMode)> = (0..count)
            .map(|_| {
                let alg = pieces.choose(rng).unwrap()();
                let mode = if rng.gen_bool(0.5) { ZeroMode::Shared } else { ZeroMode::Own };
                (alg, mode)
            })
            .collect();
        let sum = direct_sum("random", &parts);
        if sum.label_count() > max_labels || sum.label_ids().any(|l| sum.block_dim(l) > max_block) {
            continue;
        }
        let mut order: Vec<usize> = (0..sum.label_count()).collect();
        order.shuffle(rng);
        let permuted = permute_labels(&sum, &order);
        let scale: Vec<Rational> = (0..permuted.total_dim())
            .map(|_| {
                let num = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
                rat(num, rng.gen_range(1..=4))
            })
            .collect();
        return permuted.rescaled(&scale).unwrap();
    }
}
