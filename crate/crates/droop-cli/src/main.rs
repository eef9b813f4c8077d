//! Command-line front end for the droop link models.
//!
//! Exit codes: 0 on success, 1 for config or usage errors, 2 for
//! model-domain errors (e.g. a requested power outside the validity of the
//! first-order droop model).

mod config;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use thiserror::Error;

use droop_core::{
    dbm_to_mw, derive_params, run_chain, snr_report, sweep_power, sweep_spans, top_markers,
    DerivedParams, LinkConfig, ModelError,
};

use config::load_config;
use report::{fmt_f64, write_power_sweep_csv, write_span_sweep_csv, write_trace_csv, RunManifest};

#[derive(Debug, Error)]
enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Model(ModelError),
    #[error("io error: {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Model(_) => 2,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        match err {
            ModelError::Config(msg) => CliError::Config(msg),
            other => CliError::Model(other),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "droop",
    version,
    about = "SNR and spectral efficiency of optically amplified links with power-mode amplifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived linear-domain parameters of a link
    Derive {
        /// Link config file (flat TOML)
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
    /// Sweep both SNR models over a launch-power grid and write a CSV
    SweepPower {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Grid start, dBm
        #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
        pmin: f64,
        /// Grid end, dBm
        #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
        pmax: f64,
        /// Grid spacing, dB
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        /// Output CSV path
        #[arg(long, value_name = "CSV")]
        out: PathBuf,
    },
    /// Sweep the top spectral efficiency over a span-count range and write a CSV
    SweepSpans {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// First span count
        #[arg(long, default_value_t = 10)]
        nmin: u32,
        /// Last span count
        #[arg(long, default_value_t = 500)]
        nmax: u32,
        /// Span-count increment
        #[arg(long, default_value_t = 10)]
        nstep: u32,
        /// Output CSV path
        #[arg(long, value_name = "CSV")]
        out: PathBuf,
    },
    /// Print optimal launch powers and top SNRs of both models
    Optimum {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
    /// Run the per-span bookkeeping simulator and write the trace as CSV
    Simulate {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Launch power, dBm
        #[arg(long, value_name = "DBM", allow_negative_numbers = true)]
        power_dbm: f64,
        /// Output CSV path
        #[arg(long, value_name = "CSV")]
        out: PathBuf,
        /// Override the derived per-span output ASE beta, mW
        #[arg(long, value_name = "MW")]
        beta_mw: Option<f64>,
        /// Override the per-span NLI coefficient, mW^-2
        #[arg(long, value_name = "PER_MW2")]
        alpha_nl_per_mw2: Option<f64>,
    },
    /// Print both SNRs, the upper bound, and the gaps at one launch power
    Gap {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Launch power, dBm
        #[arg(long, value_name = "DBM", allow_negative_numbers = true)]
        power_dbm: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Derive { config } => {
            let cfg = load_config(&config)?;
            let params = derive_params(&cfg)?;
            print_derive(&config, &cfg, &params);
            Ok(())
        }
        Command::SweepPower {
            config,
            pmin,
            pmax,
            step,
            out,
        } => {
            let cfg = load_config(&config)?;
            let params = derive_params(&cfg)?;
            let rows = sweep_power(&cfg, pmin, pmax, step)?;
            let manifest = RunManifest {
                subcommand: "sweep-power",
                config: &cfg,
                derived: &params,
                extra: vec![
                    ("grid.p_min_dbm".into(), fmt_f64(pmin)),
                    ("grid.p_max_dbm".into(), fmt_f64(pmax)),
                    ("grid.step_db".into(), fmt_f64(step)),
                ],
            };
            write_file(&out, |w| write_power_sweep_csv(w, &manifest, &rows))?;
            println!("wrote {} rows to {}", rows.len(), out.display());
            Ok(())
        }
        Command::SweepSpans {
            config,
            nmin,
            nmax,
            nstep,
            out,
        } => {
            let cfg = load_config(&config)?;
            let params = derive_params(&cfg)?;
            let rows = sweep_spans(&cfg, nmin, nmax, nstep)?;
            let manifest = RunManifest {
                subcommand: "sweep-spans",
                config: &cfg,
                derived: &params,
                extra: vec![
                    ("grid.n_min".into(), nmin.to_string()),
                    ("grid.n_max".into(), nmax.to_string()),
                    ("grid.n_step".into(), nstep.to_string()),
                ],
            };
            write_file(&out, |w| write_span_sweep_csv(w, &manifest, &rows))?;
            println!("wrote {} rows to {}", rows.len(), out.display());
            Ok(())
        }
        Command::Optimum { config } => {
            let cfg = load_config(&config)?;
            let markers = top_markers(&cfg)?;
            println!("p_o_gn_mw = {}", fmt_f64(markers.p_o_gn_mw));
            println!("p_o_gn_dbm = {}", fmt_f64(10.0 * markers.p_o_gn_mw.log10()));
            println!("snr_o_gn = {}", fmt_f64(markers.snr_o_gn));
            println!("snr_o_gn_db = {}", fmt_f64(10.0 * markers.snr_o_gn.log10()));
            println!("p_o_gdf_mw = {}", fmt_f64(markers.p_o_gdf_mw));
            println!(
                "p_o_gdf_dbm = {}",
                fmt_f64(10.0 * markers.p_o_gdf_mw.log10())
            );
            println!("snr_o_gdf = {}", fmt_f64(markers.snr_o_gdf));
            println!(
                "snr_o_gdf_db = {}",
                fmt_f64(10.0 * markers.snr_o_gdf.log10())
            );
            println!(
                "snr_o_gdf_predicted = {}",
                fmt_f64(markers.snr_o_gdf_predicted)
            );
            println!(
                "snr_o_gdf_predicted_db = {}",
                fmt_f64(10.0 * markers.snr_o_gdf_predicted.log10())
            );
            println!(
                "prediction_error_db = {}",
                fmt_f64(markers.prediction_error_db)
            );
            Ok(())
        }
        Command::Simulate {
            config,
            power_dbm,
            out,
            beta_mw,
            alpha_nl_per_mw2,
        } => {
            let cfg = load_config(&config)?;
            let mut params = derive_params(&cfg)?;
            let mut extra = vec![("power_dbm".into(), fmt_f64(power_dbm))];
            if let Some(beta) = beta_mw {
                check_override("--beta-mw", beta)?;
                params.beta_mw = beta;
                params.mu_a_mw = beta * params.span_loss_linear;
                extra.push(("override.beta_mw".into(), fmt_f64(beta)));
            }
            if let Some(alpha) = alpha_nl_per_mw2 {
                check_override("--alpha-nl-per-mw2", alpha)?;
                params.alpha_nl_per_mw2 = alpha;
                extra.push(("override.alpha_nl_per_mw2".into(), fmt_f64(alpha)));
            }
            let p_mw = dbm_to_mw(power_dbm)?;
            let trace = run_chain(p_mw, &params)?;
            extra.push(("final_snr".into(), fmt_f64(trace.final_snr)));
            extra.push((
                "final_snr_db".into(),
                fmt_f64(10.0 * trace.final_snr.log10()),
            ));
            let manifest = RunManifest {
                subcommand: "simulate",
                config: &cfg,
                derived: &params,
                extra,
            };
            write_file(&out, |w| write_trace_csv(w, &manifest, &trace))?;
            println!("final_snr = {}", fmt_f64(trace.final_snr));
            println!("final_snr_db = {}", fmt_f64(10.0 * trace.final_snr.log10()));
            println!("wrote {} states to {}", trace.states.len(), out.display());
            Ok(())
        }
        Command::Gap { config, power_dbm } => {
            let cfg = load_config(&config)?;
            let params = derive_params(&cfg)?;
            let p_mw = dbm_to_mw(power_dbm)?;
            let report = snr_report(p_mw, &params)?;
            println!("power_dbm = {}", fmt_f64(power_dbm));
            println!("power_mw = {}", fmt_f64(report.power_mw));
            println!("snr_gn = {}", fmt_f64(report.snr_gn));
            println!("snr_gn_db = {}", fmt_f64(10.0 * report.snr_gn.log10()));
            println!("snr_gdf = {}", fmt_f64(report.snr_gdf));
            println!("snr_gdf_db = {}", fmt_f64(10.0 * report.snr_gdf.log10()));
            println!("snr_gdf_ub = {}", fmt_f64(report.snr_gdf_ub));
            println!(
                "snr_gdf_ub_db = {}",
                fmt_f64(10.0 * report.snr_gdf_ub.log10())
            );
            println!("gap_db_exact = {}", fmt_f64(report.gap_db_exact));
            println!("gap_db_approx = {}", fmt_f64(report.gap_db_approx));
            println!("snr1a = {}", fmt_f64(report.snr1a));
            println!("snr1n = {}", fmt_f64(report.snr1n));
            Ok(())
        }
    }
}

fn check_override(flag: &str, value: f64) -> Result<(), CliError> {
    if !value.is_finite() || value < 0.0 {
        return Err(CliError::Config(format!(
            "{flag} must be finite and >= 0, got {value}"
        )));
    }
    Ok(())
}

fn print_derive(path: &Path, cfg: &LinkConfig, params: &DerivedParams) {
    let span_loss_db = cfg.loss_db_per_km * cfg.span_length_km;
    let rows = [
        ("span_loss_db", fmt_f64(span_loss_db)),
        ("span_loss_linear", fmt_f64(params.span_loss_linear)),
        ("mu_a_mw", fmt_f64(params.mu_a_mw)),
        ("mu_a_dbm", fmt_f64(10.0 * params.mu_a_mw.log10())),
        ("beta_mw", fmt_f64(params.beta_mw)),
        ("beta_dbm", fmt_f64(10.0 * params.beta_mw.log10())),
        ("alpha_nl_per_mw2", fmt_f64(params.alpha_nl_per_mw2)),
        ("gawbs_loss", fmt_f64(params.gawbs_loss)),
        ("n_spans", params.n_spans.to_string()),
    ];
    println!("derived parameters for {}", path.display());
    println!();
    for (key, value) in &rows {
        println!("  {key:<18} {value}");
    }
    println!();
    for (key, value) in &rows {
        println!("{key}={value}");
    }
}

fn write_file(
    path: &Path,
    write: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
) -> Result<(), CliError> {
    let to_cli_err = |source: io::Error| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(to_cli_err)?;
    let mut writer = BufWriter::new(file);
    write(&mut writer).map_err(to_cli_err)?;
    writer.flush().map_err(to_cli_err)
}
