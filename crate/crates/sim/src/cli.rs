//! Command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use dude_core::config::NetworkConfig;
use dude_core::metrics::{GainRow, ScenarioReport};

use crate::config_io::{load_config, with_field};
use crate::error::SimError;
use crate::format::fmt_f64;
use crate::output::{write_outputs, ReportDocument};
use crate::preset::{compare_policies, gain_rows, preset, PRESET_NAMES};
use crate::runner::{default_workers, run_scenario};

#[derive(Debug, Parser)]
#[command(name = "dude-sim", version, about = "Uplink/downlink decoupling Monte Carlo simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// JSON config file; missing keys take their defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub drops: Option<u32>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coupled baseline against the configured UL policy.
    Run(Common),
    /// Run one of the named comparisons.
    Compare {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES))]
        preset: String,
        #[command(flatten)]
        common: Common,
    },
    /// Repeat a run (or a preset) for several values of one config field.
    Sweep {
        #[arg(long)]
        param: String,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES))]
        preset: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn base_config(common: &Common) -> Result<NetworkConfig, SimError> {
    let mut config = match &common.config {
        Some(path) => load_config(path)?,
        None => NetworkConfig::default(),
    };
    if let Some(seed) = common.seed {
        config.master_seed = seed;
    }
    if let Some(drops) = common.drops {
        config.num_drops = drops;
    }
    config.validate().map_err(SimError::Validation)?;
    Ok(config)
}

struct Outcome {
    config: NetworkConfig,
    report: ScenarioReport,
    gains: Vec<GainRow>,
    name: String,
}

fn simulate(config: &NetworkConfig, preset_name: Option<&str>, workers: usize) -> Result<Outcome, SimError> {
    match preset_name {
        Some(name) => {
            let cmp = compare_policies(config, &preset(name)?, workers)?;
            Ok(Outcome {
                config: cmp.config,
                report: cmp.report,
                gains: cmp.gains,
                name: name.to_owned(),
            })
        }
        None => {
            let report = run_scenario(config, workers)?;
            let gains = gain_rows(&report)?;
            Ok(Outcome {
                config: config.clone(),
                report,
                gains,
                name: "run".to_owned(),
            })
        }
    }
}

fn emit(out: &Path, o: &Outcome, preset_name: Option<&str>) -> Result<String, SimError> {
    let doc = ReportDocument::new(&o.config, preset_name, &o.report, o.gains.clone())?;
    write_outputs(out, &doc, &o.report, &o.name)?;
    let mut s = String::new();
    for p in &doc.summary.policies {
        let _ = writeln!(
            s,
            "{:<16} rate p05 {:>10.3} Mbit/s  p50 {:>10.3} Mbit/s  tx p50 {:>6.2} dBm  p95 {:>6.2} dBm  sinr-std p50 {:>5.2} dB  UEs/small UL {:>6.2}",
            p.label,
            p.ul_rate_bps.p05 / 1e6,
            p.ul_rate_bps.p50 / 1e6,
            p.ul_tx_power_dbm.p50,
            p.ul_tx_power_dbm.p95,
            p.ul_sinr_std_db.p50,
            p.ul_ues_per_small,
        );
    }
    for g in &doc.gains {
        let _ = writeln!(
            s,
            "{} vs {}: rate gain p05 {:+.1}%  p50 {:+.1}%  tx reduction p50 {:.2} dB  p95 {:.2} dB  decoupled {:.1}%",
            g.test,
            g.baseline,
            g.rate_gain_p05,
            g.rate_gain_p50,
            g.tx_power_reduction_p50_db,
            g.tx_power_reduction_p95_db,
            100.0 * g.decoupling_fraction_test,
        );
    }
    let _ = writeln!(s, "wrote {}", out.display());
    Ok(s)
}

/// Execute a parsed command; returns the text to print.
pub fn execute(cli: Cli) -> Result<String, SimError> {
    match cli.command {
        Command::Run(common) => {
            let config = base_config(&common)?;
            let workers = common.workers.unwrap_or_else(default_workers);
            emit(&common.out, &simulate(&config, None, workers)?, None)
        }
        Command::Compare { preset: name, common } => {
            let config = base_config(&common)?;
            let workers = common.workers.unwrap_or_else(default_workers);
            emit(&common.out, &simulate(&config, Some(&name), workers)?, Some(&name))
        }
        Command::Sweep {
            param,
            values,
            preset: name,
            common,
        } => {
            let base = base_config(&common)?;
            let workers = common.workers.unwrap_or_else(default_workers);
            // Validate every value before spending time on simulation.
            let configs = values
                .iter()
                .map(|v| with_field(&base, &param, v).map(|c| (v, c)))
                .collect::<Result<Vec<_>, _>>()?;
            fs::create_dir_all(&common.out).map_err(|source| SimError::Write {
                path: common.out.clone(),
                source,
            })?;
            let mut text = String::new();
            let mut table = csv::Writer::from_path(common.out.join("sweep.csv"))?;
            table.write_record([
                "param",
                "value",
                "baseline",
                "test",
                "rate_gain_p05",
                "rate_gain_p50",
                "tx_power_reduction_p50_db",
                "tx_power_reduction_p95_db",
                "decoupling_fraction",
            ])?;
            for (value, config) in configs {
                let outcome = simulate(&config, name.as_deref(), workers)?;
                let dir = common.out.join(format!("{param}={value}"));
                let _ = writeln!(text, "[{param}={value}]");
                text.push_str(&emit(&dir, &outcome, name.as_deref())?);
                for g in &outcome.gains {
                    table.write_record([
                        param.clone(),
                        value.clone(),
                        g.baseline.clone(),
                        g.test.clone(),
                        fmt_f64(g.rate_gain_p05),
                        fmt_f64(g.rate_gain_p50),
                        fmt_f64(g.tx_power_reduction_p50_db),
                        fmt_f64(g.tx_power_reduction_p95_db),
                        fmt_f64(g.decoupling_fraction_test),
                    ])?;
                }
            }
            table.flush().map_err(|source| SimError::Write {
                path: common.out.join("sweep.csv"),
                source,
            })?;
            Ok(text)
        }
    }
}
