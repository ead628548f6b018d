use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use twinsieve::experiment::{
    constants, render_constants, render_identities, render_table, render_theta_sweep,
    render_truncation_sweep, run_table, sieving_limit_sweep, truncation_sweep, BackendChoice,
    ModelConfig, OutputFormat, TableOutput,
};
use twinsieve::sieve_model::{HlMode, DEFAULT_HL_CUTOFF};
use twinsieve::symmetric_series::{check_identities_with, resource_warning};
use twinsieve::{Backend, Error};

#[derive(Parser)]
#[command(name = "twinsieve", version, about = "Sieve-product heuristics for twin prime counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare exact twin counts with Hardy-Littlewood and truncated-series predictions.
    Table {
        /// Comma-separated x values; accepts 1e6 notation.
        #[arg(long, value_delimiter = ',', value_parser = parse_x,
              default_value = "1e4,1e5,1e6,1e7")]
        x: Vec<u64>,
        #[arg(long, default_value_t = 4)]
        tmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the truncation degree at fixed x.
    SweepTmax {
        #[arg(long, value_parser = parse_x, default_value = "1e6")]
        x: u64,
        #[arg(long, default_value_t = 0)]
        tmin: usize,
        /// Upper end of the truncation range (inclusive).
        #[arg(long, default_value_t = 10)]
        tmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the sieving-limit exponent at fixed x.
    SweepTheta {
        #[arg(long, value_parser = parse_x, default_value = "1e6")]
        x: u64,
        /// Comma-separated exponents in (0, 1).
        #[arg(long = "thetas", value_delimiter = ',',
              default_value = "0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.5")]
        thetas: Vec<f64>,
        #[arg(long, default_value_t = 4)]
        tmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check the algebraic identities between the f(t; z) evaluation routes.
    VerifyIdentities {
        #[arg(long, value_parser = parse_x, default_value = "100")]
        z: u64,
        #[arg(long, default_value_t = 6)]
        tmax: usize,
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
        #[arg(long, default_value = "exact-rational")]
        backend: Backend,
        #[arg(long, default_value = "pretty")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print 2C2, the Mertens constants and odd-prime zeta partial sums.
    Constants {
        #[arg(long, value_parser = parse_x, default_value_t = DEFAULT_HL_CUTOFF)]
        hl_cutoff: u64,
        #[arg(long, value_parser = parse_x, default_value = "1e7")]
        zeta_cutoff: u64,
        #[arg(long, default_value = "pretty")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0.25)]
    theta: f64,
    /// auto, exact-rational or compensated-float.
    #[arg(long, default_value = "auto")]
    backend: BackendChoice,
    #[arg(long, default_value = "integral")]
    hl_mode: HlMode,
    #[arg(long, value_parser = parse_x, default_value_t = DEFAULT_HL_CUTOFF)]
    hl_cutoff: u64,
    /// csv, json or pretty.
    #[arg(long, default_value = "pretty")]
    format: OutputFormat,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self, x_values: Vec<u64>, t_max: usize) -> ModelConfig {
        ModelConfig {
            x_values,
            theta: self.theta,
            t_max,
            backend: self.backend,
            hl_mode: self.hl_mode,
            hl_cutoff: self.hl_cutoff,
            output_format: self.format,
        }
    }
}

/// Integer or scientific notation such as `1e6`.
fn parse_x(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v < 0.0 || v.fract() != 0.0 || v > u64::MAX as f64 {
        return Err(format!("`{s}` is not a nonnegative integer"));
    }
    Ok(v as u64)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::Config(format!("cannot write output: {e}"));
    match out {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(io),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Table { x, tmax, common } => {
            let config = common.config(x, tmax);
            let rows = run_table(&config)?;
            for r in &rows {
                if let Some(flag) = &r.hl_flag {
                    eprintln!("warning: x = {}: {flag}", r.x);
                }
            }
            let out = TableOutput { config, rows };
            emit(&render_table(&out, common.format)?, common.out.as_ref())?;
        }
        Command::SweepTmax {
            x,
            tmin,
            tmax,
            common,
        } => {
            let config = common.config(vec![x], tmax);
            config.validate()?;
            let sweep = truncation_sweep(x, tmin..=tmax, &config)?;
            if let Some(w) = resource_warning(sweep.z, tmax, sweep.backend) {
                eprintln!("warning: {w}");
            }
            emit(
                &render_truncation_sweep(&sweep, &config, common.format)?,
                common.out.as_ref(),
            )?;
        }
        Command::SweepTheta {
            x,
            thetas,
            tmax,
            common,
        } => {
            let config = common.config(vec![x], tmax);
            config.validate()?;
            let sweep = sieving_limit_sweep(x, &thetas, &config)?;
            emit(
                &render_theta_sweep(&sweep, &config, common.format)?,
                common.out.as_ref(),
            )?;
        }
        Command::VerifyIdentities {
            z,
            tmax,
            tolerance,
            backend,
            format,
            out,
        } => {
            if tolerance.is_nan() || tolerance < 0.0 {
                return Err(Error::Config(format!("tolerance must be >= 0, got {tolerance}")));
            }
            if let Some(w) = resource_warning(z, tmax, backend) {
                eprintln!("warning: {w}");
            }
            let report = check_identities_with(z, tmax, tolerance, backend)?;
            emit(&render_identities(&report, format)?, out.as_ref())?;
            if !report.passed() {
                return Ok(3);
            }
        }
        Command::Constants {
            hl_cutoff,
            zeta_cutoff,
            format,
            out,
        } => {
            let report = constants(hl_cutoff, zeta_cutoff)?;
            emit(&render_constants(&report, format)?, out.as_ref())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
