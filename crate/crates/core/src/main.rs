use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hodgecert::blowup::Variant;
use hodgecert::certify::{build_example, certify_nonprojective, check_hypo_endo, CertifyOptions};
use hodgecert::hodge::certificate::EndoVerdict;
use hodgecert::linalg::io::parse_matrix;
use hodgecert::linalg::RatMatrix;

#[derive(Parser)]
#[command(name = "hodgecert", version, about = "Exact non-projectivity certificates for Kähler cohomology ring models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the endomorphism conditions on Φ.
    CheckEndo {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long, default_value_t = 2000)]
        prime_bound: u64,
    },
    /// Build a model cohomology ring and write it as JSON.
    BuildExample {
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        times_p1: bool,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every check and write the certificate report.
    Certify {
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        acknowledge_sampled: bool,
        #[arg(long)]
        times_p1: bool,
        #[arg(long, default_value_t = 2000)]
        prime_bound: u64,
        #[arg(long)]
        report: PathBuf,
    },
}

fn read_phi(path: &Path) -> Result<RatMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::CheckEndo { phi, prime_bound } => {
            let phi = read_phi(&phi)?;
            let cert = check_hypo_endo(&phi, prime_bound).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&cert).map_err(|e| e.to_string())?);
            Ok(match cert.verdict {
                EndoVerdict::Proven => 0,
                EndoVerdict::ProvenConsequences => 2,
                _ => 1,
            })
        }
        Command::BuildExample {
            variant,
            times_p1,
            phi,
            out,
        } => {
            let phi = read_phi(&phi)?;
            let ring = build_example(&phi, variant, times_p1).map_err(|e| e.to_string())?;
            write(&out, &ring.to_json().map_err(|e| e.to_string())?)?;
            eprintln!("{}: betti numbers {:?}", ring.variant_label(), ring.betti_numbers());
            Ok(0)
        }
        Command::Certify {
            variant,
            phi,
            samples,
            seed,
            acknowledge_sampled,
            times_p1,
            prime_bound,
            report,
        } => {
            let phi = read_phi(&phi)?;
            let options = CertifyOptions {
                prime_bound,
                samples,
                seed,
                acknowledge_sampled,
                times_p1,
            };
            let r = certify_nonprojective(&phi, variant, &options).map_err(|e| e.to_string())?;
            write(&report, &r.to_json().map_err(|e| e.to_string())?)?;
            let conclusion = serde_json::to_value(r.conclusion).map_err(|e| e.to_string())?;
            println!("conclusion: {}", conclusion.as_str().unwrap_or_default());
            for reason in &r.conclusion_reasons {
                println!("  {reason}");
            }
            Ok(r.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
