//! `satnorm`: membership oracles and diagram checks for corpus files.
//!
//! Exit codes: 0 on success or no failure, 2 when a theorem-level check
//! failed (build-breaking), 1 on usage, parse or validation errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use satnorm_cli::commands::{self, Outcome};

#[derive(Parser)]
#[command(
    name = "satnorm",
    version,
    about = "Exact membership oracles for relative weak normalization and Lipschitz saturation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis of a named ideal.
    Gb {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weak-normalization membership of an element.
    WnMember {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lipschitz-saturation membership of an element (three-valued).
    LipMember {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maranesi / strong-Lipman / Lipman classification of a diagram.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hypothesis predicates of a morphism, with certificates.
    Morph {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pointwise contraction check of a diagram over a test set.
    Contraction {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        testset: String,
        #[arg(long, default_value = "wn")]
        mode: String,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership comparison between a sequence and its quotient by an ideal.
    QuotientCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        testset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership comparison after adjoining certified members to the middle
    /// algebra.
    Idempotency {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        seq: String,
        /// Test set naming the members to adjoin.
        #[arg(long)]
        gens: String,
        #[arg(long)]
        testset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every check over a corpus file or directory, with a summary table.
    Suite {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "wn")]
        mode: String,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cmd: Cmd) -> Result<(Outcome, Option<PathBuf>), commands::CliError> {
    match cmd {
        Cmd::Gb {
            input,
            ideal,
            order,
            out,
        } => Ok((commands::run_gb(&input, &ideal, &order)?, out)),
        Cmd::WnMember {
            input,
            seq,
            element,
            bound,
            out,
        } => Ok((commands::run_wn_member(&input, &seq, &element, bound)?, out)),
        Cmd::LipMember {
            input,
            seq,
            element,
            bound,
            out,
        } => Ok((
            commands::run_lip_member(&input, &seq, &element, bound)?,
            out,
        )),
        Cmd::Classify {
            input,
            diagram,
            bound,
            out,
        } => Ok((commands::run_classify(&input, &diagram, bound)?, out)),
        Cmd::Morph {
            input,
            morphism,
            out,
        } => Ok((commands::run_morph(&input, &morphism)?, out)),
        Cmd::Contraction {
            input,
            diagram,
            testset,
            mode,
            bound,
            out,
        } => Ok((
            commands::run_contraction(&input, &diagram, &testset, &mode, bound)?,
            out,
        )),
        Cmd::QuotientCheck {
            input,
            seq,
            ideal,
            testset,
            out,
        } => Ok((
            commands::run_quotient_check(&input, &seq, &ideal, &testset)?,
            out,
        )),
        Cmd::Idempotency {
            input,
            seq,
            gens,
            testset,
            out,
        } => Ok((
            commands::run_idempotency(&input, &seq, &gens, &testset)?,
            out,
        )),
        Cmd::Suite {
            input,
            mode,
            bound,
            out,
        } => Ok((commands::run_suite(&input, &mode, bound)?, out)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not usage errors
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.cmd) {
        Ok((outcome, out)) => {
            let mut rendered =
                serde_json::to_string_pretty(&outcome.report).expect("report serializes");
            rendered.push('\n');
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, rendered) {
                    eprintln!("error: cannot write `{}`: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{rendered}");
            }
            for line in &outcome.summary {
                eprintln!("{line}");
            }
            if outcome.build_breaking {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
