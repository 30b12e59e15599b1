//! `liefol`: rigidity certificates and foliation checks from the command
//! line. Exit codes: 0 ok, 1 claim failure, 2 input error, 3 internal
//! invariant violation.

mod commands;
mod error;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use liefol_core::catalog::Params;
use liefol_core::cecoh::BracketConvention;
use liefol_core::geom::{ProjPoint, DEFAULT_SAMPLES};
use liefol_core::qlinalg::Rational;

use error::{CliError, EXIT_CLAIM_FAILURE, EXIT_OK};
use input::{parse_rational, SubSpec};
use report::Report;

#[derive(Parser)]
#[command(
    name = "liefol",
    version,
    about = "Rigidity of Lie subalgebras of vector fields and their foliations"
)]
struct Cli {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timing in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Selection {
    /// Input document (JSON).
    file: PathBuf,
    /// Subalgebra as basis indices `0,2` or coefficient rows `1,0;0,1/2`.
    #[arg(long)]
    subalgebra: Option<String>,
    /// Value of the parameter t for parametric field documents.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
}

#[derive(Args)]
struct Sampling {
    /// Number of seeded sample points.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Seed of the point generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Audit structure constants or a fields document.
    Validate {
        /// Input document (JSON).
        file: PathBuf,
    },
    /// Z1, B1, H1 of g with coefficients in L/g, and the rigidity verdict.
    Rigidity(Selection),
    /// Z^k, B^k, H^k of L/g (or of the adjoint module without a subalgebra).
    Cohomology {
        #[command(flatten)]
        sel: Selection,
        /// Cohomological degree k.
        #[arg(long)]
        degree: usize,
    },
    /// Generic orbit dimension over seeded points, with the sample log.
    OrbitDim {
        #[command(flatten)]
        sel: Selection,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Fields of L tangent to the foliation of g at seeded points.
    Maximality {
        #[command(flatten)]
        sel: Selection,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Bracket closure of a field family over Q(t), with table or witness.
    FamilyCheck {
        /// Input document (JSON).
        file: PathBuf,
        /// Bracket sign convention: matrix ([X_A, X_B] = X_[A,B]) or derivation.
        #[arg(long, default_value = "matrix")]
        convention: BracketConvention,
        /// Parameter values at which specialization is compared with closure.
        #[arg(long, default_value = "0,1,2", allow_hyphen_values = true)]
        at: String,
    },
    /// Defining 1-form of a codimension-one foliation on P^n.
    Form {
        #[command(flatten)]
        sel: Selection,
        /// Check the Frobenius condition omega ^ d omega = 0.
        #[arg(long)]
        frobenius: bool,
        /// Points to classify, e.g. `1:0:0:0,0:1:0:0`.
        #[arg(long, allow_hyphen_values = true)]
        kupka: Option<String>,
    },
    /// Named worked examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry names and parameters.
    List,
    /// Run an entry's expected-claims table.
    Run {
        /// Entry name (see `catalog list`).
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        /// Run every entry with its default parameters.
        #[arg(long, conflicts_with_all = ["n", "t"])]
        all: bool,
        /// Dimension parameter of the entry.
        #[arg(long)]
        n: Option<usize>,
        /// Family parameter t.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
}

struct Resolved {
    sub: Option<SubSpec>,
    t: Option<Rational>,
}

fn resolve(sel: &Selection) -> Result<(input::Document, Resolved), CliError> {
    let doc = input::load(&sel.file)?;
    let sub = sel.subalgebra.as_deref().map(SubSpec::parse).transpose()?;
    let t = sel.t.as_deref().map(parse_rational).transpose()?;
    Ok((doc, Resolved { sub, t }))
}

fn parse_points(src: &str) -> Result<Vec<ProjPoint>, CliError> {
    src.split(',')
        .map(|p| {
            let coords = p
                .split(':')
                .map(|c| parse_rational(c.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ProjPoint::new(coords)?)
        })
        .collect()
}

enum Outcome {
    One(Report),
    Many(Vec<Report>),
}

fn execute(command: Command, echo: &str) -> Result<Outcome, CliError> {
    let one = |r: Result<Report, CliError>| r.map(Outcome::One);
    match command {
        Command::Validate { file } => one(commands::validate(&input::load(&file)?, echo)),
        Command::Rigidity(sel) => {
            let (doc, r) = resolve(&sel)?;
            one(commands::rigidity(&doc, r.sub.as_ref(), r.t.as_ref(), echo))
        }
        Command::Cohomology { sel, degree } => {
            let (doc, r) = resolve(&sel)?;
            one(commands::cohomology(&doc, r.sub.as_ref(), r.t.as_ref(), degree, echo))
        }
        Command::OrbitDim { sel, sampling } => {
            let (doc, r) = resolve(&sel)?;
            one(commands::orbit_dim(
                &doc,
                r.sub.as_ref(),
                r.t.as_ref(),
                sampling.samples,
                sampling.seed,
                echo,
            ))
        }
        Command::Maximality { sel, sampling } => {
            let (doc, r) = resolve(&sel)?;
            one(commands::maximality(
                &doc,
                r.sub.as_ref(),
                r.t.as_ref(),
                sampling.samples,
                sampling.seed,
                echo,
            ))
        }
        Command::FamilyCheck { file, convention, at } => {
            let doc = input::load(&file)?;
            let at = at
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_rational(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            one(commands::family_check(&doc, convention, &at, echo))
        }
        Command::Form { sel, frobenius, kupka } => {
            let (doc, r) = resolve(&sel)?;
            let points = kupka.as_deref().map(parse_points).transpose()?.unwrap_or_default();
            one(commands::form(
                &doc,
                r.sub.as_ref(),
                r.t.as_ref(),
                frobenius,
                &points,
                echo,
            ))
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => Ok(Outcome::One(commands::catalog_list(echo))),
        Command::Catalog {
            action:
                CatalogAction::Run {
                    name,
                    all,
                    n,
                    t,
                    seed,
                    samples,
                },
        } => {
            let params = Params {
                n,
                t: t.as_deref().map(parse_rational).transpose()?,
                seed,
                samples,
            };
            if all {
                let reports = commands::catalog_run_all(&params, echo)
                    .into_iter()
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Outcome::Many(reports))
            } else {
                let name = name.expect("clap requires a name without --all");
                one(commands::catalog_run(&name, &params, echo))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::iter::once("liefol".to_string())
        .chain(std::env::args().skip(1).filter(|a| a != "--timing"))
        .collect::<Vec<_>>()
        .join(" ");
    let start = Instant::now();
    let outcome = execute(cli.command, &echo);
    let elapsed = cli.timing.then(|| start.elapsed().as_millis());
    match outcome {
        Ok(Outcome::One(mut r)) => {
            r.timing_ms = elapsed;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&r.to_value()).expect("report serializes")
                );
            } else {
                print!("{}", r.to_text());
            }
            ExitCode::from(r.exit_code())
        }
        Ok(Outcome::Many(reports)) => {
            if cli.json {
                let mut v = report::bundle_value(&echo, &reports);
                if let Some(t) = elapsed {
                    v["timing_ms"] = (t as u64).into();
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("report serializes"));
            } else {
                let texts: Vec<String> = reports.iter().map(Report::to_text).collect();
                print!("{}", texts.join("\n"));
                if let Some(t) = elapsed {
                    println!("timing_ms: {t}");
                }
            }
            ExitCode::from(if reports.iter().all(|r| r.ok) {
                EXIT_OK
            } else {
                EXIT_CLAIM_FAILURE
            })
        }
        Err(e) => {
            if cli.json {
                let kind = match e {
                    CliError::Input(_) => "input",
                    CliError::Internal(_) => "internal",
                };
                let v = report::error_value(&echo, kind, &e.to_string());
                println!("{}", serde_json::to_string_pretty(&v).expect("report serializes"));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
