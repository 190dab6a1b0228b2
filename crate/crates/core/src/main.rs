use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nshd::dynamics::Fault;
use nshd::harness::{self, RunConfig};
use nshd::scaling::{lions_exponent, parse_rational, rational_to_f64, solvability_margin};
use nshd::{Error, Result};

#[derive(Parser)]
#[command(name = "nshd", version, about = "Hyperdissipative Navier-Stokes on the periodic torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration and write diagnostics, checkpoint and summary.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repeat a run for several dissipation exponents.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated exponents; rationals such as 5/4 are accepted.
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that evolution commutes with the rescaling u(x) -> q^{2α-1} u(qx).
    ScaleCheck {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        q: u32,
    },
    /// Print α_L(n) and, with --alpha, the solvability margin.
    Exponents {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Run the built-in property suite.
    Verify {
        #[arg(long)]
        filter: Option<String>,
        /// Break the solver on purpose to see the suite fail.
        #[arg(long, value_enum, hide = true)]
        fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    FlipDissipation,
    NoDealias,
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data"));
}

fn config_with_out(config: &std::path::Path, out: Option<PathBuf>) -> Result<(RunConfig, PathBuf)> {
    let cfg = RunConfig::load(config)?;
    let out = out
        .or_else(|| cfg.output.dir.clone())
        .ok_or_else(|| Error::InvalidConfig { field: "output.dir".into(), message: "no --out given and none in config".into() })?;
    Ok((cfg, out))
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Run { config, out } => {
            let (cfg, out) = config_with_out(&config, out)?;
            let rec = harness::run_config(&cfg, &out)?;
            eprintln!("{:?}: t = {}, E = {}", rec.status, rec.summary.t, rec.summary.energy);
            Ok(rec.status.exit_code())
        }
        Command::Sweep { config, alphas, out } => {
            let cfg = RunConfig::load(&config)?;
            let alphas = alphas
                .iter()
                .map(|a| parse_rational(a).map(rational_to_f64))
                .collect::<Result<Vec<_>>>()?;
            let summary = harness::sweep(&cfg, &alphas, Some(&out))?;
            print!("{}", summary.to_csv());
            Ok(0)
        }
        Command::ScaleCheck { config, q } => {
            let cfg = RunConfig::load(&config)?;
            let report = harness::scale_check(&cfg, q)?;
            print_json(&report);
            Ok(if report.passed() { 0 } else { 5 })
        }
        Command::Exponents { n, alpha } => {
            if n < 2 {
                return Err(Error::InvalidConfig { field: "n".into(), message: "must be at least 2".into() });
            }
            let lions = lions_exponent(n);
            let mut out = json!({ "n": n, "alpha_lions": lions.to_string(), "alpha_lions_value": rational_to_f64(lions) });
            if let Some(a) = alpha {
                let a = parse_rational(&a)?;
                let m = solvability_margin(n, a);
                out["alpha"] = json!(a.to_string());
                out["margin"] = json!(m.value.to_string());
                out["margin_value"] = json!(rational_to_f64(m.value));
                out["classification"] = json!(m.classification.to_string());
            }
            print_json(&out);
            Ok(0)
        }
        Command::Verify { filter, fault } => {
            let fault = match fault {
                None => Fault::None,
                Some(FaultArg::FlipDissipation) => Fault::FlipDissipationSign,
                Some(FaultArg::NoDealias) => Fault::DisableDealiasing,
            };
            let report = harness::verify_with_fault(filter.as_deref(), fault)?;
            print_json(&report);
            Ok(if report.passed { 0 } else { 5 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("NSHD_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
