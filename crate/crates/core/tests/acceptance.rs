//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use setgraded::algebra::Product;
use setgraded::analysis::{self, StructureFlags, Verdict};
use setgraded::ideals;
use setgraded::support::{self, CheckedAlgebra};
use setgraded::{catalog, document, ExtLabel, GradedAlgebra, Vector};

const RANDOM_ALGEBRAS: usize = 60;
const SEED: u64 = 0x5e7_9ade;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("axiom suite and mutation sensitivity", axiom_suite),
        ("connection relation is an equivalence", equivalence),
        ("class ideals are graded ideals, distinct classes orthogonal", ideal_theorems),
        ("decomposition covers, is direct when centerless and tight", decomposition),
        ("simplicity routes agree", simplicity),
        ("fine decomposition of m2-double", fine_decomposition),
        ("witness families replay", witness_replay),
        ("report --json is deterministic", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn corpus_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{stem}.json"))
}

fn valid_corpus() -> Vec<GradedAlgebra> {
    setgraded::corpus::FILES
        .iter()
        .map(|(_, text)| document::load_str(text).unwrap())
        .filter(|a| a.validate().is_valid())
        .collect()
}

/// Valid corpus entries followed by seeded random direct sums.
fn suite() -> Vec<CheckedAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    valid_corpus()
        .into_iter()
        .chain((0..RANDOM_ALGEBRAS).map(|_| catalog::random_algebra(&mut rng, 6, 2)))
        .map(|a| CheckedAlgebra::new(a).expect("suite algebras validate"))
        .collect()
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

/// Negate or double one coefficient of one ordered structure constant.
fn mutations(alg: &GradedAlgebra) -> Vec<(String, GradedAlgebra)> {
    let mut out = Vec::new();
    for which in [Product::Bracket, Product::Assoc] {
        let entries: Vec<(usize, usize, Vector)> = alg.entries(which).map(|(i, j, v)| (i, j, v.clone())).collect();
        for (i, j, v) in entries {
            for k in v.support().collect::<Vec<_>>() {
                for (how, factor) in [("negate", -1), ("double", 2)] {
                    let mut w = v.clone();
                    w.set(k, &v[k] * setgraded::linalg::int(factor));
                    let mut m = alg.clone();
                    m.set_constant(which, i, j, w).unwrap();
                    out.push((format!("{which:?}({i},{j})[{k}] {how}"), m));
                }
            }
        }
    }
    out
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    for stem in ["m2-cartan", "heis3", "m2-double"] {
        let a = document::load_file(corpus_path(stem)).map_err(|e| e.to_string())?;
        let r = a.validate();
        ensure(r.axioms_pass(), || format!("{stem} fails {:?}", r.failed()))?;
    }
    let muts = mutations(&catalog::m2_cartan());
    ensure(muts.len() >= 20, || format!("only {} mutations", muts.len()))?;
    for (what, m) in &muts {
        ensure(!m.validate().axioms_pass(), || format!("mutation {what} passes every check"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{} mutations rejected in {} ms", muts.len(), elapsed.as_millis()))
}

fn equivalence() -> Outcome {
    let suite = suite();
    for a in &suite {
        let p = a.partition();
        ensure(p.equivalence_violations().is_empty(), || format!("{}: {:?}", a.name(), p.equivalence_violations()))?;
        // pairwise reachability, independent of the stored partition
        let labels: Vec<_> = a.nonzero_labels().collect();
        for &l in &labels {
            for &m in &labels {
                let lm = support::is_connected(a, l, m).unwrap().is_some();
                let ml = support::is_connected(a, m, l).unwrap().is_some();
                ensure(lm == ml, || format!("{}: symmetry fails for ({}, {})", a.name(), l.0, m.0))?;
                ensure(lm == p.class_of(l).unwrap().contains(&m), || format!("{}: partition disagrees", a.name()))?;
                for &t in &labels {
                    let mt = support::is_connected(a, m, t).unwrap().is_some();
                    let lt = support::is_connected(a, l, t).unwrap().is_some();
                    ensure(!(lm && mt) || lt, || format!("{}: transitivity fails", a.name()))?;
                }
            }
            ensure(support::is_connected(a, l, l).unwrap().is_some(), || format!("{}: not reflexive", a.name()))?;
        }
    }
    Ok(format!("{} algebras", suite.len()))
}

fn ideal_theorems() -> Outcome {
    let suite = suite();
    let mut classes = 0;
    for a in &suite {
        let cls = &a.partition().classes;
        let ideals: Vec<_> = cls.iter().map(|c| ideals::ideal_of_class(a, c).unwrap()).collect();
        for (c, i) in cls.iter().zip(&ideals) {
            classes += 1;
            ensure(ideals::is_graded_subalgebra(a, i).unwrap().is_empty(), || {
                format!("{}: {c:?} not a subalgebra", a.name())
            })?;
            ensure(ideals::is_graded_ideal(a, i).unwrap().is_empty(), || format!("{}: {c:?} not an ideal", a.name()))?;
        }
        for (k, x) in ideals.iter().enumerate() {
            for y in &ideals[k + 1..] {
                ensure(ideals::pairwise_orthogonal(a, x, y).unwrap().is_empty(), || {
                    format!("{}: not orthogonal", a.name())
                })?;
            }
        }
    }
    Ok(format!("{classes} classes over {} algebras", suite.len()))
}

fn decomposition() -> Outcome {
    let suite = suite();
    let mut direct_required = 0;
    for a in &suite {
        let d = analysis::decompose(a).unwrap();
        ensure(d.covers, || format!("{}: does not cover", a.name()))?;
        let f = StructureFlags::of(a);
        if f.centerless && f.tight_zero {
            direct_required += 1;
            ensure(d.direct, || format!("{}: centerless and tight but not direct", a.name()))?;
        }
    }
    let dd = CheckedAlgebra::new(document::load_file(corpus_path("m2-double")).unwrap()).unwrap();
    let d = analysis::decompose(&dd).unwrap();
    let dims: Vec<usize> = d.summands.iter().map(|s| s.ideal.dim()).collect();
    ensure(dims == [4, 4] && d.u.is_zero(), || format!("m2-double: summands {dims:?}, U dim {}", d.u.rank()))?;
    Ok(format!("{} algebras, {direct_required} required direct", suite.len()))
}

fn simplicity() -> Outcome {
    let suite = suite();
    let mut both = 0;
    for a in &suite {
        let c = analysis::gr_simple_criterion(a).unwrap();
        let d = analysis::gr_simple_direct(a).unwrap();
        if c.is_applicable() && d.is_applicable() {
            both += 1;
            ensure(c.agrees_with(&d), || format!("{}: criterion {}, direct {}", a.name(), c.tag(), d.tag()))?;
        }
    }
    let m2 = CheckedAlgebra::new(document::load_file(corpus_path("m2-cartan")).unwrap()).unwrap();
    let pair = (analysis::gr_simple_criterion(&m2).unwrap(), analysis::gr_simple_direct(&m2).unwrap());
    ensure(pair == (Verdict::Simple, Verdict::Simple), || format!("m2-cartan: {pair:?}"))?;

    let dd = CheckedAlgebra::new(document::load_file(corpus_path("m2-double")).unwrap()).unwrap();
    for v in [analysis::gr_simple_criterion(&dd).unwrap(), analysis::gr_simple_direct(&dd).unwrap()] {
        match &v {
            Verdict::NotSimple { witness: Some(w) }
                if w.dim() == 4 && ideals::is_graded_ideal(&dd, w).unwrap().is_empty() => {}
            other => return Err(format!("m2-double: {other:?}")),
        }
    }
    Ok(format!("both routes applicable on {both} of {} algebras", suite.len()))
}

fn fine_decomposition() -> Outcome {
    let dd = CheckedAlgebra::new(document::load_file(corpus_path("m2-double")).unwrap()).unwrap();
    let parts = analysis::fine_decomposition_check(&dd).map_err(|e| e.to_string())?;
    ensure(parts.len() == 2, || format!("{} summands", parts.len()))?;
    for p in &parts {
        let r = p.restricted.validate();
        ensure(r.is_valid(), || format!("{} fails {:?}", p.restricted.name(), r.failed()))?;
        let checked = CheckedAlgebra::new(p.restricted.clone()).unwrap();
        let v = analysis::gr_simple_direct(&checked).unwrap();
        ensure(v == Verdict::Simple, || format!("{}: {v:?}", p.restricted.name()))?;
    }
    Ok("2 summands, each valid and simple".into())
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_setgraded")).args(args).output().expect("binary runs")
}

fn witness_replay() -> Outcome {
    let out = run_cli(&["classes", "--corpus", "--witness", "--json"]);
    let reports: Vec<Value> = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let mut replayed = 0;
    for r in &reports {
        let Some(witnesses) = r.pointer("/classes/witnesses").and_then(Value::as_array) else {
            continue;
        };
        let stem = r["name"].as_str().unwrap();
        let alg = CheckedAlgebra::new(document::load_file(corpus_path(stem)).unwrap()).unwrap();
        let ext = |name: &str| -> ExtLabel {
            match name.strip_prefix('~') {
                Some(base) => ExtLabel::tilde(alg.label_id(base).unwrap()),
                None => ExtLabel::plain(alg.label_id(name).unwrap()),
            }
        };
        for w in witnesses {
            let from = alg.label_id(w["from"].as_str().unwrap()).unwrap();
            let to = alg.label_id(w["to"].as_str().unwrap()).unwrap();
            let family: Vec<ExtLabel> =
                w["family"].as_array().unwrap().iter().map(|n| ext(n.as_str().unwrap())).collect();
            // step by step: every intermediate set nonempty, the last holds the target
            let mut set: BTreeSet<ExtLabel> = BTreeSet::from([family[0]]);
            for &a in &family[1..] {
                set = alg.psi(&set, a).map_err(|e| format!("{stem}: {e}"))?;
                ensure(!set.is_empty(), || format!("{stem}: empty set in {w}"))?;
            }
            ensure(set.contains(&ExtLabel::plain(to)), || format!("{stem}: target missing in {w}"))?;
            ensure(support::replay_witness(&alg, from, to, &family).is_ok(), || format!("{stem}: {w}"))?;
            replayed += 1;
        }
    }
    ensure(replayed > 0, || "no witnesses emitted".into())?;
    Ok(format!("{replayed} families"))
}

fn determinism() -> Outcome {
    let stems: Vec<&str> = setgraded::corpus::FILES.iter().map(|(s, _)| *s).collect();
    for stem in &stems {
        let path = corpus_path(stem);
        let path = path.to_str().unwrap();
        let a = run_cli(&["report", "--json", "--witness", path]);
        let b = run_cli(&["report", "--json", "--witness", path]);
        ensure(!a.stdout.is_empty(), || format!("{stem}: no output"))?;
        ensure(a.stdout == b.stdout, || format!("{stem}: outputs differ"))?;
        ensure(a.status.code() == b.status.code(), || format!("{stem}: exit codes differ"))?;
    }
    Ok(format!("{} files", stems.len()))
}
