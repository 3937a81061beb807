//! `zonal`: command-line front end for the zonal spectral analysis library.
//!
//! Exit codes: 0 on success, 1 when a computation or check fails, 2 on
//! argument or configuration errors.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use num_complex::Complex64;

use commands::{DensityChoice, Grid, KernelChoice, ModeChoice, PotentialChoice, VariantChoice};
use config::{Format, Overrides, RunConfig};
use error::CliError;
use output::Report;

#[derive(Debug, Parser)]
#[command(name = "zonal", version, about = "Zonal spectral analysis of the Landau–Zeeman operator")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Flat `key = value` file; flags take precedence over its keys.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Field strength λ as a rational ("1", "1/2", "0.25").
    #[arg(long, global = true)]
    lambda: Option<String>,
    /// Number of particles κ.
    #[arg(long, global = true)]
    kappa: Option<u32>,
    /// Zone index a.
    #[arg(long, global = true)]
    zone: Option<u32>,
    /// Coulomb strength Q.
    #[arg(long = "q", global = true, value_name = "Q")]
    q: Option<f64>,
    /// Quadrature and series tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energies and multiplicities of a gross zone.
    Spectrum {
        #[arg(long)]
        p_max: Option<u32>,
    },
    /// Exact eigen-relations for all Itô states with p + q ≤ max-degree.
    VerifyEigen {
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
    },
    /// Kernel values on a square grid of z against a fixed w.
    Kernels {
        #[arg(long, value_enum, default_value = "projection")]
        kind: KernelChoice,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// The fixed second point as "re,im".
        #[arg(long, default_value = "0,0", value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        grid_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        grid_max: f64,
        #[arg(long, default_value_t = 5)]
        grid_n: u32,
    },
    /// Zonal partition functions at the given times.
    Partition {
        #[arg(long, value_enum, default_value = "wiener")]
        variant: VariantChoice,
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        t: Vec<f64>,
    },
    /// Coulomb transmission matrix elements between zones.
    Coulomb {
        /// Target zone (defaults to --zone).
        #[arg(long)]
        b: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        m_min: Option<i64>,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long, value_enum, default_value = "coulomb")]
        potential: PotentialChoice,
    },
    /// Lamb amplitude σ by quadrature and the resulting shift.
    Lamb {
        /// Comma-separated orbital numbers.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        l: Vec<u32>,
        #[arg(long, value_enum, default_value = "epsilon-p")]
        mode: ModeChoice,
        #[arg(long, value_enum, default_value = "stirling")]
        density: DensityChoice,
        /// Integration cutoff K (default: chosen from the tail bound).
        #[arg(long = "cutoff", value_name = "K")]
        k: Option<u64>,
    },
    /// Run the acceptance checks.
    ReportAll {
        #[arg(long)]
        criterion: Option<u8>,
    },
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let (re, im) = text.split_once(',').ok_or_else(|| format!("expected \"re,im\", got {text:?}"))?;
    let part = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    let z = Complex64::new(part(re)?, part(im)?);
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err("components must be finite".into());
    }
    Ok(z)
}

fn run(cli: Cli) -> Result<(Report, RunConfig), CliError> {
    let c = cli.common;
    let mut flags = Overrides {
        config: c.config,
        lambda: c.lambda,
        kappa: c.kappa,
        zone: c.zone,
        q: c.q,
        tol: c.tol,
        format: c.format,
        output: c.output,
        ..Overrides::default()
    };
    match &cli.command {
        Command::Spectrum { p_max } => flags.p_max = *p_max,
        Command::Coulomb { m_max, .. } => flags.m_max = *m_max,
        Command::Lamb { k, .. } => flags.k = *k,
        _ => {}
    }
    let config = RunConfig::resolve(flags)?;
    let report = match cli.command {
        Command::Spectrum { .. } => commands::spectrum(&config)?,
        Command::VerifyEigen { max_degree } => commands::verify_eigen(&config, max_degree)?,
        Command::Kernels {
            kind,
            t,
            w,
            grid_min,
            grid_max,
            grid_n,
        } => commands::kernels(&config, kind, t, w, Grid { min: grid_min, max: grid_max, n: grid_n })?,
        Command::Partition { variant, t } => commands::partition(&config, variant, &t)?,
        Command::Coulomb { b, m_min, potential, .. } => commands::coulomb(&config, b, m_min, potential)?,
        Command::Lamb { l, mode, density, .. } => commands::lamb(&config, &l, mode, density)?,
        Command::ReportAll { criterion } => commands::report_all(criterion)?,
    };
    Ok((report, config))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let text = e.render().to_string();
            eprint!("{text}");
            if !text.contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
    };
    let outcome = run(cli).and_then(|(report, config)| {
        report.write(&config)?;
        for note in &report.notes {
            eprintln!("{note}");
        }
        report.failure.map_or(Ok(()), |f| Err(CliError::Check(f)))
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Usage(_) = e {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("-0.5, 2").unwrap(), Complex64::new(-0.5, 2.0));
        assert!(parse_complex("1").is_err());
        assert!(parse_complex("nan,0").is_err());
    }
}
