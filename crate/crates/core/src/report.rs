//! Reports bundling validation, support combinatorics, decomposition and
//! simplicity, serializable deterministically.
//!
//! Every mathematical failure found while building a report is listed in
//! [`Report::problems`]; the exit code is a function of that list alone.

use std::fmt::Write;

use num_bigint::Sign;
use serde::Serialize;

use crate::algebra::{ExtLabel, GradedAlgebra, LabelId, Violation};
use crate::analysis::{self, DecompositionReport, StructureFlags, TheoremCheck, Verdict};
use crate::document::{sparse, CoefDoc, IndexRef, Integer};
use crate::error::{Error, Result};
use crate::ideals::{self, GradedSubspace};
use crate::support::{self, CheckedAlgebra};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sections {
    pub support: bool,
    pub classes: bool,
    pub decomposition: bool,
    pub simplicity: bool,
    pub fine: bool,
}

impl Sections {
    pub const VALIDATE: Sections =
        Sections { support: false, classes: false, decomposition: false, simplicity: false, fine: false };
    pub const CLASSES: Sections = Sections { classes: true, ..Self::VALIDATE };
    pub const DECOMPOSE: Sections = Sections { decomposition: true, ..Self::VALIDATE };
    pub const SIMPLE: Sections = Sections { simplicity: true, ..Self::VALIDATE };
    pub const ALL: Sections =
        Sections { support: true, classes: true, decomposition: true, simplicity: true, fine: true };
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub sections: Sections,
    /// Include a connection family for every ordered pair inside a class.
    pub witness: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub total_dim: usize,
    pub labels: Vec<LabelEntry>,
    pub zero_label: Option<String>,
    pub axioms: AxiomsSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<StarEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<ClassesSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<FlagsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplicity: Option<SimplicitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fine_decomposition: Option<FineSection>,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelEntry {
    pub name: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomsSection {
    pub valid: bool,
    pub checks: Vec<CheckEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: &'static str,
    pub pass: bool,
    pub violations: Vec<ViolationEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationEntry {
    Basis { elements: Vec<String>, residual: Vec<CoefDoc> },
    Incoherent { left: String, right: String, touched: Vec<String> },
    ZeroLabel { label: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassesSection {
    pub classes: Vec<Vec<String>>,
    pub equivalence_violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub from: String,
    pub to: String,
    pub family: Vec<String>,
    pub replays: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionSection {
    pub u_dim: usize,
    pub summands: Vec<SummandEntry>,
    pub covers: bool,
    pub direct: bool,
    pub direct_sum_theorem: TheoremEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandEntry {
    pub class: Vec<String>,
    pub dim: usize,
    pub zero_part_dim: usize,
    pub graded_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TheoremEntry {
    HypothesesNotMet { unmet: Vec<&'static str> },
    Holds,
    Fails { failures: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagsSection {
    pub centerless: bool,
    pub center_dim: usize,
    pub tight_zero: bool,
    pub maximal_length: bool,
    pub multiplicative: bool,
    /// `(λ, μ, s)` with `μ ⋆ s = {λ}` and `P_λ` not produced.
    pub multiplicativity_failures: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicitySection {
    pub note: &'static str,
    pub criterion: VerdictEntry,
    pub direct: VerdictEntry,
    pub agree: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictEntry {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unmet: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<IdealEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealEntry {
    pub dim: usize,
    pub support: Vec<String>,
    pub basis: Vec<Vec<CoefDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FineSection {
    HypothesesNotMet { unmet: Vec<String> },
    Checked { summands: Vec<FineEntry> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FineEntry {
    pub class: Vec<String>,
    pub dim: usize,
    pub failed_checks: Vec<&'static str>,
    pub verdict: Option<&'static str>,
}

const SIMPLICITY_NOTE: &str = "simplicity is with respect to graded ideals";

/// Name of a basis vector: the label for one-dimensional blocks, `label[k]`
/// otherwise.
pub fn basis_name(alg: &GradedAlgebra, i: usize) -> String {
    let l = alg.block_of(i);
    if alg.block_dim(l) == 1 {
        alg.label_name(l).to_string()
    } else {
        format!("{}[{}]", alg.label_name(l), i - alg.block_range(l).start)
    }
}

fn names(alg: &GradedAlgebra, ls: &[LabelId]) -> Vec<String> {
    ls.iter().map(|&l| alg.label_name(l).to_string()).collect()
}

fn ext_names(alg: &GradedAlgebra, es: &[ExtLabel]) -> Vec<String> {
    es.iter().map(|&e| alg.ext_name(e)).collect()
}

fn violation_entry(alg: &GradedAlgebra, v: &Violation) -> ViolationEntry {
    match v {
        Violation::Basis { indices, residual } => ViolationEntry::Basis {
            elements: indices.iter().map(|&i| basis_name(alg, i)).collect(),
            residual: sparse(residual),
        },
        Violation::Incoherent { s, t, touched } => ViolationEntry::Incoherent {
            left: alg.label_name(*s).to_string(),
            right: alg.label_name(*t).to_string(),
            touched: names(alg, touched),
        },
        Violation::ZeroLabel { label } => ViolationEntry::ZeroLabel { label: alg.label_name(*label).to_string() },
    }
}

fn ideal_entry(alg: &GradedAlgebra, sub: &GradedSubspace) -> IdealEntry {
    IdealEntry {
        dim: sub.dim(),
        support: names(alg, &sub.support()),
        basis: sub.global_basis(alg).iter().map(sparse).collect(),
    }
}

fn verdict_entry(alg: &GradedAlgebra, v: &Verdict) -> VerdictEntry {
    match v {
        Verdict::Simple => VerdictEntry { verdict: v.tag(), unmet: vec![], witness: None },
        Verdict::NotSimple { witness } => {
            VerdictEntry { verdict: v.tag(), unmet: vec![], witness: witness.as_ref().map(|w| ideal_entry(alg, w)) }
        }
        Verdict::Inapplicable { unmet } => {
            VerdictEntry { verdict: v.tag(), unmet: unmet.iter().map(|h| h.unmet_note()).collect(), witness: None }
        }
    }
}

impl Report {
    pub fn build(alg: GradedAlgebra, opts: ReportOptions) -> Result<Report> {
        let validation = alg.validate();
        let mut problems = Vec::new();
        if !validation.is_valid() {
            problems.push(format!("failed checks: {}", validation.failed().join(", ")));
        }
        let checks = validation
            .checks()
            .iter()
            .map(|(name, vs)| CheckEntry {
                name,
                pass: vs.is_empty(),
                violations: vs.iter().map(|v| violation_entry(&alg, v)).collect(),
            })
            .collect();
        let mut report = Report {
            name: alg.name().to_string(),
            total_dim: alg.total_dim(),
            labels: alg
                .label_ids()
                .map(|l| LabelEntry { name: alg.label_name(l).to_string(), dim: alg.block_dim(l) })
                .collect(),
            zero_label: alg.zero_label().map(|z| alg.label_name(z).to_string()),
            axioms: AxiomsSection { valid: validation.is_valid(), checks },
            support: None,
            classes: None,
            decomposition: None,
            flags: None,
            simplicity: None,
            fine_decomposition: None,
            problems,
        };
        if !validation.is_valid() {
            return Ok(report);
        }
        let alg = CheckedAlgebra::from_report(alg, &validation)?;
        let s = opts.sections;
        if s.support {
            report.support = Some(star_dump(&alg));
        }
        if s.classes {
            report.classes = Some(report.classes_section(&alg, opts.witness));
        }
        if s.decomposition {
            report.decomposition = Some(report.decomposition_section(&alg)?);
        }
        if s.simplicity {
            let flags = StructureFlags::of(&alg);
            report.flags = Some(FlagsSection {
                centerless: flags.centerless,
                center_dim: flags.center.rank(),
                tight_zero: flags.tight_zero,
                maximal_length: flags.maximal_length,
                multiplicative: flags.multiplicative,
                multiplicativity_failures: analysis::is_multiplicative(&alg)
                    .iter()
                    .map(|f| [f.lambda, f.mu, f.s].map(|l| alg.label_name(l).to_string()))
                    .collect(),
            });
            report.simplicity = Some(report.simplicity_section(&alg)?);
        }
        if s.fine {
            report.fine_decomposition = Some(report.fine_section(&alg)?);
        }
        Ok(report)
    }

    fn classes_section(&mut self, alg: &CheckedAlgebra, witness: bool) -> ClassesSection {
        let partition = alg.partition();
        let equivalence_violations = partition.equivalence_violations();
        for v in &equivalence_violations {
            self.problems.push(format!("connection relation: {v}"));
        }
        let witnesses = witness.then(|| {
            partition
                .witness
                .iter()
                .map(|(&(l, m), family)| {
                    let replays = support::replay_witness(alg, l, m, family).is_ok();
                    if !replays {
                        self.problems.push(format!(
                            "witness family {} -> {} does not replay",
                            alg.label_name(l),
                            alg.label_name(m)
                        ));
                    }
                    WitnessEntry {
                        from: alg.label_name(l).to_string(),
                        to: alg.label_name(m).to_string(),
                        family: ext_names(alg, family),
                        replays,
                    }
                })
                .collect()
        });
        ClassesSection {
            classes: partition.classes.iter().map(|c| names(alg, c)).collect(),
            equivalence_violations,
            witnesses,
        }
    }

    fn decomposition_section(&mut self, alg: &CheckedAlgebra) -> Result<DecompositionSection> {
        let DecompositionReport { u, summands, covers, direct } = analysis::decompose(alg)?;
        if !covers {
            self.problems.push("U and the class ideals do not span the algebra".into());
        }
        let mut entries = Vec::with_capacity(summands.len());
        for s in &summands {
            let graded_ideal = ideals::is_graded_ideal(alg, &s.ideal)?.is_empty()
                && ideals::is_graded_subalgebra(alg, &s.ideal)?.is_empty();
            if !graded_ideal {
                self.problems.push(format!("I[{}] is not a graded ideal", names(alg, &s.class).join(",")));
            }
            entries.push(SummandEntry {
                class: names(alg, &s.class),
                dim: s.ideal.dim(),
                zero_part_dim: alg.zero_label().map_or(0, |z| s.ideal.block(z).rank()),
                graded_ideal,
            });
        }
        let theorem = match analysis::check_direct_sum_theorem(alg)? {
            TheoremCheck::HypothesesNotMet(unmet) => {
                TheoremEntry::HypothesesNotMet { unmet: unmet.iter().map(|h| h.unmet_note()).collect() }
            }
            TheoremCheck::Asserted { holds: true, .. } => TheoremEntry::Holds,
            TheoremCheck::Asserted { holds: false, failures } => {
                for f in &failures {
                    self.problems.push(format!("direct sum theorem: {f}"));
                }
                TheoremEntry::Fails { failures }
            }
        };
        Ok(DecompositionSection { u_dim: u.rank(), summands: entries, covers, direct, direct_sum_theorem: theorem })
    }

    fn simplicity_section(&mut self, alg: &CheckedAlgebra) -> Result<SimplicitySection> {
        let criterion = analysis::gr_simple_criterion(alg)?;
        let direct = analysis::gr_simple_direct(alg)?;
        let agree = (criterion.is_applicable() && direct.is_applicable()).then(|| criterion.agrees_with(&direct));
        if agree == Some(false) {
            self.problems.push(format!(
                "simplicity routes disagree: criterion {}, direct {}",
                criterion.tag(),
                direct.tag()
            ));
        }
        Ok(SimplicitySection {
            note: SIMPLICITY_NOTE,
            criterion: verdict_entry(alg, &criterion),
            direct: verdict_entry(alg, &direct),
            agree,
        })
    }

    fn fine_section(&mut self, alg: &CheckedAlgebra) -> Result<FineSection> {
        match analysis::fine_decomposition_check(alg) {
            Err(Error::HypothesesNotMet(unmet)) => Ok(FineSection::HypothesesNotMet { unmet }),
            Err(e) => Err(e),
            Ok(parts) => {
                let mut summands = Vec::with_capacity(parts.len());
                for p in parts {
                    let class = names(alg, &p.class);
                    if !p.passes() {
                        self.problems
                            .push(format!("fine decomposition: I[{}] is not a simple algebra", class.join(",")));
                    }
                    summands.push(FineEntry {
                        class,
                        dim: p.restricted.total_dim(),
                        verdict: p.verdict.as_ref().map(Verdict::tag),
                        failed_checks: p.failed_checks,
                    });
                }
                Ok(FineSection::Checked { summands })
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.problems.is_empty() {
            EXIT_OK
        } else {
            EXIT_MATH
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Human-readable summary of the populated sections.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let labels: Vec<String> = self.labels.iter().map(|l| format!("{}:{}", l.name, l.dim)).collect();
        let _ = writeln!(out, "{} (dim {}; labels {})", self.name, self.total_dim, labels.join(" "));
        if let Some(z) = &self.zero_label {
            let _ = writeln!(out, "zero label: {z}");
        }
        for c in &self.axioms.checks {
            let _ = writeln!(out, "  {:<18} {}", c.name, if c.pass { "ok" } else { "FAIL" });
            for v in c.violations.iter().take(5) {
                let _ = writeln!(out, "    {}", describe_violation(v));
            }
            if c.violations.len() > 5 {
                let _ = writeln!(out, "    ... {} more", c.violations.len() - 5);
            }
        }
        if let Some(star) = &self.support {
            let _ = writeln!(out, "star table:");
            for e in star {
                let _ = writeln!(out, "  {} * {} = {{{}}}", e.left, e.right, e.result.join(", "));
            }
        }
        if let Some(c) = &self.classes {
            let classes: Vec<String> = c.classes.iter().map(|c| format!("{{{}}}", c.join(", "))).collect();
            let _ = writeln!(out, "classes: [{}]", classes.join(", "));
            for w in c.witnesses.iter().flatten() {
                let _ = writeln!(
                    out,
                    "  {} ~ {}: {{{}}}{}",
                    w.from,
                    w.to,
                    w.family.join(", "),
                    if w.replays { "" } else { " (does not replay)" }
                );
            }
        }
        if let Some(d) = &self.decomposition {
            let dims: Vec<String> = d.summands.iter().map(|s| s.dim.to_string()).collect();
            let _ = writeln!(
                out,
                "decomposition: U dim {}, summands [{}], covers {}, direct {}",
                d.u_dim,
                dims.join(", "),
                d.covers,
                d.direct
            );
            let theorem = match &d.direct_sum_theorem {
                TheoremEntry::HypothesesNotMet { unmet } => format!("not applicable ({})", unmet.join(", ")),
                TheoremEntry::Holds => "holds".into(),
                TheoremEntry::Fails { failures } => format!("FAILS ({})", failures.join("; ")),
            };
            let _ = writeln!(out, "  direct sum theorem: {theorem}");
        }
        if let Some(f) = &self.flags {
            let _ = writeln!(
                out,
                "flags: centerless {} (center dim {}), tight zero {}, maximal length {}, multiplicative {}",
                f.centerless, f.center_dim, f.tight_zero, f.maximal_length, f.multiplicative
            );
        }
        if let Some(s) = &self.simplicity {
            for (route, v) in [("criterion", &s.criterion), ("direct", &s.direct)] {
                let mut line = format!("{route}: {}", v.verdict);
                if !v.unmet.is_empty() {
                    let _ = write!(line, " ({})", v.unmet.join(", "));
                }
                if let Some(w) = &v.witness {
                    let _ = write!(line, ", witness ideal dim {} on {{{}}}", w.dim, w.support.join(", "));
                }
                let _ = writeln!(out, "{line}");
            }
            let _ = writeln!(out, "  ({})", s.note);
        }
        if let Some(f) = &self.fine_decomposition {
            match f {
                FineSection::HypothesesNotMet { unmet } => {
                    let _ = writeln!(out, "fine decomposition: not applicable ({})", unmet.join(", "));
                }
                FineSection::Checked { summands } => {
                    for s in summands {
                        let _ = writeln!(
                            out,
                            "fine summand {{{}}}: dim {}, {}",
                            s.class.join(", "),
                            s.dim,
                            s.verdict.unwrap_or("invalid")
                        );
                    }
                }
            }
        }
        for p in &self.problems {
            let _ = writeln!(out, "problem: {p}");
        }
        out
    }
}

fn star_dump(alg: &CheckedAlgebra) -> Vec<StarEntry> {
    let mut out = Vec::new();
    for a in alg.ext_labels() {
        for b in alg.ext_labels() {
            let result = alg.star(a, b);
            if !result.is_empty() {
                out.push(StarEntry {
                    left: alg.ext_name(a),
                    right: alg.ext_name(b),
                    result: result.iter().map(|&l| alg.label_name(l).to_string()).collect(),
                });
            }
        }
    }
    out
}

fn describe_violation(v: &ViolationEntry) -> String {
    match v {
        ViolationEntry::Basis { elements, residual } => {
            let mut res = String::new();
            for (n, c) in residual.iter().enumerate() {
                let IndexRef::Global(k) = c.index else { unreachable!("reports use global indices") };
                let negative = c.num.0.sign() == Sign::Minus;
                match (n, negative) {
                    (0, true) => res.push('-'),
                    (0, false) => {}
                    (_, true) => res.push_str(" - "),
                    (_, false) => res.push_str(" + "),
                }
                let _ = write!(res, "{}", c.num.0.magnitude());
                if c.den != Integer(1.into()) {
                    let _ = write!(res, "/{}", c.den.0);
                }
                let _ = write!(res, " e{k}");
            }
            format!("at ({}), residual {res}", elements.join(", "))
        }
        ViolationEntry::Incoherent { left, right, touched } => {
            format!("P_{left} P_{right} meets several blocks {{{}}}", touched.join(", "))
        }
        ViolationEntry::ZeroLabel { label } => format!("zero label {label} is not admissible"),
    }
}
