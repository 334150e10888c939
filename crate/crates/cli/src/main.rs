//! `camscat`: fixed-energy scattering for radial magnetic Schrödinger
//! operators outside a disk.

mod commands;
mod config;
mod error;
mod medium;
mod output;
mod verify;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use camscat_core::fields::{presets, EffectivePotential};
use clap::{Parser, Subcommand};

use config::{parse_complex, parse_scan, parse_tolerance, RunConfig};
use error::{CliError, CliResult};
use output::{Format, Table};

#[derive(Debug, Parser)]
#[command(name = "camscat", version, about = "Fixed-energy scattering for radial magnetic Schrödinger operators outside a disk")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Medium file (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    medium: Option<PathBuf>,
    /// Second medium file, for `discriminate`.
    #[arg(long = "medium-b", global = true, value_name = "PATH")]
    medium_b: Option<PathBuf>,
    /// Largest angular momentum |l|.
    #[arg(long = "lmax", global = true, default_value_t = 40)]
    l_max: i64,
    /// Number of radial grid points (at least 256).
    #[arg(long = "grid", global = true, default_value_t = 1024)]
    grid_size: usize,
    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Tolerance override, KEY=VALUE; repeatable.
    #[arg(long = "tol", global = true, value_name = "KEY=VALUE", value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Phase shifts and σ(l) for l in [-lmax, lmax].
    Direct,
    /// σ(ν) over a complex grid of orders.
    CamScan {
        /// "re0:re1:n,im0:im1:m".
        #[arg(long, allow_hyphen_values = true)]
        scan: String,
    },
    /// Recover flux/2π mod 2 from σ(l), 0 ≤ l ≤ lmax.
    Flux {
        /// Fraction of the l ≥ 20 tail used for extrapolation.
        #[arg(long = "tail-fraction", default_value_t = commands::DEFAULT_TAIL_FRACTION)]
        tail_fraction: f64,
    },
    /// Compare two media: fluxes first, then the table of F(l).
    Discriminate,
    /// Run the invariant groups; exits 1 if any fails.
    Verify,
    /// Bessel and Hankel functions of complex order.
    Bessel {
        /// Orders "RE" or "RE,IM"; repeatable.
        #[arg(long, required = true, allow_hyphen_values = true)]
        nu: Vec<String>,
        /// Arguments; repeatable or comma separated.
        #[arg(long, required = true, value_delimiter = ',')]
        r: Vec<f64>,
    },
}

impl Cli {
    fn config(&self) -> RunConfig {
        RunConfig {
            medium: self.medium.clone(),
            medium_b: self.medium_b.clone(),
            l_max: self.l_max,
            grid_size: self.grid_size,
            tolerances: self.tolerances.iter().cloned().collect::<BTreeMap<_, _>>(),
            out: self.out.clone(),
            format: self.format,
        }
    }
}

fn verify(cfg: &RunConfig) -> CliResult<()> {
    let q = match &cfg.medium {
        Some(_) => cfg.potential_a()?,
        None => EffectivePotential::from_medium(presets::bump_step(0.3)?)?,
    };
    cfg.check_l_max(&q)?;
    let results = verify::run(cfg, &q)?;
    for r in &results {
        eprintln!(
            "{:<16} {} measured {:.3e} tol {:.1e}  {}",
            r.group,
            if r.pass() { "PASS" } else { "FAIL" },
            r.measured,
            r.tolerance,
            r.detail
        );
    }
    verify::table(&results).emit(cfg.format, cfg.out.as_deref())?;
    let failed = results.iter().filter(|r| !r.pass()).count();
    if failed > 0 {
        return Err(CliError::VerifyFailed { failed });
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    let cfg = cli.config();
    cfg.validate()?;
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
    }
    let table: Table = match &cli.command {
        Command::Direct => commands::direct(&cfg)?,
        Command::CamScan { scan } => commands::cam_scan(&cfg, &parse_scan(scan)?)?,
        Command::Flux { tail_fraction } => commands::flux(&cfg, *tail_fraction)?,
        Command::Discriminate => commands::discriminate(&cfg)?,
        Command::Verify => return verify(&cfg),
        Command::Bessel { nu, r } => {
            let nus = nu.iter().map(|s| parse_complex(s)).collect::<CliResult<Vec<_>>>()?;
            commands::bessel(&nus, r)?
        }
    };
    table.emit(cfg.format, cfg.out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
