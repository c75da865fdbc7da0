use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use setgraded::report::{Report, ReportOptions, Sections, EXIT_INPUT};
use setgraded::{corpus, document, GradedAlgebra, Result};

/// Check and analyse set-graded non-commutative Poisson algebras given by
/// structure constants.
///
/// Exit status: 0 ok, 1 mathematical failure, 2 input error.
#[derive(Parser)]
#[command(name = "setgraded", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms
    Validate(Target),
    /// Connection classes of the nonzero labels
    Classes(Target),
    /// Decomposition into U and the class ideals
    Decompose(Target),
    /// Gr-simplicity by the connection criterion and by ideal search
    Simple(Target),
    /// Everything above plus the star table and fine decomposition
    Report(Target),
}

#[derive(Args)]
struct Target {
    /// Algebra document (JSON)
    #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
    path: Option<PathBuf>,

    /// Machine-readable JSON output
    #[arg(long)]
    json: bool,

    /// Run over the bundled corpus instead of a file
    #[arg(long)]
    corpus: bool,

    /// Include a connection family for every connected pair
    #[arg(long)]
    witness: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (target, sections) = match &cli.command {
        Command::Validate(t) => (t, Sections::VALIDATE),
        Command::Classes(t) => (t, Sections::CLASSES),
        Command::Decompose(t) => (t, Sections::DECOMPOSE),
        Command::Simple(t) => (t, Sections::SIMPLE),
        Command::Report(t) => (t, Sections::ALL),
    };
    let opts = ReportOptions { sections, witness: target.witness };

    let inputs: Vec<(String, Result<GradedAlgebra>)> = match &target.path {
        Some(path) => vec![(path.display().to_string(), document::load_file(path))],
        None => corpus::FILES.iter().map(|(name, text)| (name.to_string(), document::load_str(text))).collect(),
    };

    let mut code = 0;
    let mut reports = Vec::with_capacity(inputs.len());
    for (source, alg) in inputs {
        match alg.and_then(|a| Report::build(a, opts)) {
            Ok(r) => {
                code = code.max(r.exit_code());
                reports.push(r);
            }
            Err(e) => {
                eprintln!("{source}: {e}");
                code = EXIT_INPUT;
            }
        }
    }

    if target.json {
        if target.corpus {
            println!("{}", serde_json::to_string_pretty(&reports).expect("reports always serialize"));
        } else if let Some(r) = reports.first() {
            println!("{}", r.to_json());
        }
    } else {
        for (k, r) in reports.iter().enumerate() {
            if k > 0 {
                println!();
            }
            print!("{}", r.to_text());
        }
    }
    ExitCode::from(code as u8)
}
