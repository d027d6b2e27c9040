//! Report files.
//!
//! * `report.json`: config echo, seed, version, per-policy summaries and gains.
//! * `cdf_<metric>_<policy>.csv`: `value,cum_prob`. Per-UE metrics are written
//!   in full; the all-slot SINR pool is written on a 1001-point quantile grid.
//! * `gains.csv`: `preset,percentile,gain_percent`.
//!
//! Floats carry 17 significant digits.

use std::fs;
use std::path::{Path, PathBuf};

use dude_core::config::NetworkConfig;
use dude_core::metrics::{empirical_cdf, percentile_sorted, GainRow, ReportSummary, ScenarioReport};
use serde::{Deserialize, Serialize};

use crate::error::SimError;
use crate::format::{fmt_f64, to_json_string};

pub const SINR_GRID_POINTS: usize = 1001;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub seed: u64,
    pub preset: Option<String>,
    pub config: NetworkConfig,
    pub summary: ReportSummary,
    pub gains: Vec<GainRow>,
}

impl ReportDocument {
    pub fn new(config: &NetworkConfig, preset: Option<&str>, report: &ScenarioReport, gains: Vec<GainRow>) -> Result<Self, SimError> {
        Ok(ReportDocument {
            version: env!("CARGO_PKG_VERSION").to_owned(),
            seed: config.master_seed,
            preset: preset.map(str::to_owned),
            config: config.clone(),
            summary: report.summary().map_err(SimError::Runtime)?,
            gains,
        })
    }

    pub fn to_json(&self) -> String {
        to_json_string(self).expect("report serializes")
    }
}

pub fn read_report(path: &Path) -> Result<ReportDocument, SimError> {
    let text = fs::read_to_string(path).map_err(|source| SimError::Write {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(SimError::Json)
}

fn write_text(path: PathBuf, text: &str) -> Result<PathBuf, SimError> {
    fs::write(&path, text).map_err(|source| SimError::Write { path: path.clone(), source })?;
    Ok(path)
}

pub fn write_cdf_csv(path: &Path, cdf: &[(f64, f64)]) -> Result<(), SimError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["value", "cum_prob"])?;
    for &(v, p) in cdf {
        w.write_record([fmt_f64(v), fmt_f64(p)])?;
    }
    w.flush().map_err(|source| SimError::Write {
        path: path.to_owned(),
        source,
    })?;
    Ok(())
}

pub fn read_cdf_csv(path: &Path) -> Result<Vec<(f64, f64)>, SimError> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in r.deserialize() {
        let (v, p): (f64, f64) = row?;
        out.push((v, p));
    }
    Ok(out)
}

/// Quantile grid `(P_{k/(m-1)}, k/(m-1))` for `k = 0..m`.
pub fn quantile_grid(samples: &[f64], points: usize) -> Vec<(f64, f64)> {
    let mut xs = samples.to_vec();
    xs.sort_unstable_by(f64::total_cmp);
    if xs.is_empty() {
        return Vec::new();
    }
    (0..points)
        .map(|k| {
            let p = k as f64 / (points - 1) as f64;
            (percentile_sorted(&xs, p).expect("nonempty, p in range"), p)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainCsvRow {
    pub preset: String,
    pub percentile: f64,
    pub gain_percent: f64,
}

/// One row per (comparison, percentile). Multi-baseline presets name the
/// baseline after a slash.
pub fn gain_csv_rows(preset: &str, gains: &[GainRow]) -> Vec<GainCsvRow> {
    let mut rows = Vec::new();
    for g in gains {
        let name = if gains.len() > 1 {
            format!("{preset}/{}", g.baseline)
        } else {
            preset.to_owned()
        };
        for (p, v) in [(0.05, g.rate_gain_p05), (0.5, g.rate_gain_p50)] {
            rows.push(GainCsvRow {
                preset: name.clone(),
                percentile: p,
                gain_percent: v,
            });
        }
    }
    rows
}

pub fn write_gains_csv(path: &Path, rows: &[GainCsvRow]) -> Result<(), SimError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["preset", "percentile", "gain_percent"])?;
    for r in rows {
        w.write_record([r.preset.clone(), fmt_f64(r.percentile), fmt_f64(r.gain_percent)])?;
    }
    w.flush().map_err(|source| SimError::Write {
        path: path.to_owned(),
        source,
    })?;
    Ok(())
}

pub fn read_gains_csv(path: &Path) -> Result<Vec<GainCsvRow>, SimError> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| row.map_err(SimError::from)).collect()
}

/// Write `report.json`, every CDF and `gains.csv` into `dir`.
pub fn write_outputs(dir: &Path, doc: &ReportDocument, report: &ScenarioReport, preset_name: &str) -> Result<Vec<PathBuf>, SimError> {
    fs::create_dir_all(dir).map_err(|source| SimError::Write {
        path: dir.to_owned(),
        source,
    })?;
    let mut written = vec![write_text(dir.join("report.json"), &doc.to_json())?];
    for policy in &report.policies {
        let per_ue: [(&str, &[f64]); 3] = [
            ("ul_tx_power_dbm", &policy.ul_tx_power_dbm),
            ("ul_sinr_std_db", &policy.ul_sinr_std_db),
            ("ul_rate_bps", &policy.ul_rate_bps),
        ];
        for (metric, samples) in per_ue {
            let path = dir.join(format!("cdf_{metric}_{}.csv", policy.label));
            write_cdf_csv(&path, &empirical_cdf(samples).map_err(SimError::Runtime)?)?;
            written.push(path);
        }
        let path = dir.join(format!("cdf_ul_sinr_db_{}.csv", policy.label));
        write_cdf_csv(&path, &quantile_grid(&policy.ul_sinr_db, SINR_GRID_POINTS))?;
        written.push(path);
    }
    let path = dir.join("gains.csv");
    write_gains_csv(&path, &gain_csv_rows(preset_name, &doc.gains))?;
    written.push(path);
    Ok(written)
}
