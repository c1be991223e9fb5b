use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ramkloost::matrices::{format_sig12, MatrixKind};
use ramkloost::numtheory::{phi_tilde_fast, totient_summary};
use ramkloost::spectral::large_sieve_identity;
use ramkloost::sums::{kloosterman, ramanujan};
use ramkloost::{build_matrix, export_matrix, run_claim, spectrum, verify_all, Claim, Error, ExportFormat};

#[derive(Parser)]
#[command(name = "ramkloost", version, about = "Ramanujan and Kloosterman sums, their matrices, and exact spectral checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single exponential sum.
    Sum {
        #[command(subcommand)]
        which: SumCommand,
    },
    /// Count units k with k^2 = -1 (mod q).
    Phitilde(PhitildeArgs),
    /// Build a matrix and write it as CSV or JSON.
    Matrix(MatrixArgs),
    /// Exact eigenvalue multiplicities, as JSON.
    Spectrum {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        param: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one claim, or all of them.
    Verify(VerifyArgs),
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
}

#[derive(Subcommand)]
enum SumCommand {
    /// c_q(n)
    Ramanujan {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// S(m, n; q)
    Kloosterman {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Print the exact value in Z[zeta_q] as JSON.
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Args)]
struct PhitildeArgs {
    #[arg(long, conflicts_with = "table", required_unless_present = "table")]
    q: Option<u64>,
    /// CSV of q, phi, phi_tilde, tau for q = 1..=upto.
    #[arg(long, requires = "upto")]
    table: bool,
    #[arg(long)]
    upto: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "Aq")]
    Aq,
    #[value(name = "Bq")]
    Bq,
    #[value(name = "X")]
    X,
    #[value(name = "Y")]
    Y,
}

impl From<Kind> for MatrixKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Aq => MatrixKind::Aq,
            Kind::Bq => MatrixKind::Bq,
            Kind::X => MatrixKind::X,
            Kind::Y => MatrixKind::Y,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    param: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include exact coefficient vectors (JSON, cyclotomic kinds).
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    claim: Option<String>,
    #[arg(long)]
    param: Option<u64>,
    #[arg(long)]
    all: bool,
    #[arg(long = "max-q", default_value_t = 64)]
    max_q: u64,
    #[arg(long = "max-Q", default_value_t = 6)]
    max_big_q: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Large-sieve sum against the quadratic form in X.
    LargeSieve {
        #[arg(long = "Q")]
        big_q: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> Result<(), Error> {
    let mut w = writer(out)?;
    serde_json::to_writer_pretty(&mut w, v)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Sum { which: SumCommand::Ramanujan { q, n } } => {
            println!("{}", ramanujan(q, n)?);
        }
        Command::Sum { which: SumCommand::Kloosterman { q, m, n, exact } } => {
            let v = kloosterman(q, m, n)?;
            if exact {
                let doc = json!({
                    "q": q,
                    "m": m,
                    "n": n,
                    "order": v.exact.order(),
                    "coefficients": v.exact.coeffs(),
                    "expression": v.exact.to_string(),
                    "approx": v.approx,
                });
                emit_json(&None, &doc)?;
            } else {
                println!("{}", format_sig12(v.approx));
            }
        }
        Command::Phitilde(args) => {
            if args.table {
                let upto = args.upto.unwrap_or(0);
                let mut w = writer(&None)?;
                writeln!(w, "q,phi,phi_tilde,tau")?;
                for q in 1..=upto {
                    let s = totient_summary(q);
                    writeln!(w, "{},{},{},{}", s.q, s.phi, s.phi_tilde, s.tau)?;
                }
            } else {
                let q = args.q.unwrap_or(0);
                if q == 0 {
                    return Err(Error::Domain("q must be positive".into()));
                }
                println!("{}", phi_tilde_fast(q));
            }
        }
        Command::Matrix(args) => {
            let m = build_matrix(args.kind.into(), args.param)?;
            let format = match args.format {
                Format::Csv => ExportFormat::Csv,
                Format::Json => ExportFormat::Json,
            };
            let mut w = writer(&args.out)?;
            export_matrix(&m, format, args.exact, &mut w)?;
            w.flush()?;
        }
        Command::Spectrum { kind, param, out } => match spectrum(kind.into(), param) {
            Ok(s) => emit_json(&out, &serde_json::to_value(&s)?)?,
            Err(Error::VerificationFailed(rep)) => {
                emit_json(&out, &serde_json::to_value(&*rep)?)?;
                return Ok(Outcome::Fail);
            }
            Err(e) => return Err(e),
        },
        Command::Verify(args) => {
            let reports = if args.all {
                verify_all(args.max_q, args.max_big_q)?
            } else {
                let claim: Claim = args.claim.as_deref().unwrap_or_default().parse()?;
                let param = match (claim.param_name(), args.param) {
                    (None, p) => p.unwrap_or(0),
                    (Some(_), Some(p)) => p,
                    (Some(name), None) => {
                        return Err(Error::Domain(format!("{claim} needs --param ({name})")));
                    }
                };
                vec![run_claim(claim, param)?]
            };
            let pass = reports.iter().all(|r| r.pass);
            let doc = if args.all {
                serde_json::to_value(&reports)?
            } else {
                serde_json::to_value(&reports[0])?
            };
            emit_json(&args.out, &doc)?;
            if !pass {
                return Ok(Outcome::Fail);
            }
        }
        Command::Demo { which: DemoCommand::LargeSieve { big_q, seed } } => {
            let rep = large_sieve_identity(big_q, None, seed)?;
            emit_json(&None, &serde_json::to_value(&rep)?)?;
            if !rep.pass {
                return Ok(Outcome::Fail);
            }
        }
    }
    Ok(Outcome::Pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() || matches!(e, Error::Io(_)) { 2 } else { 1 })
        }
    }
}
