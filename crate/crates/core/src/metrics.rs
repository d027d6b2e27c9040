//! Distribution statistics and cross-drop aggregation.
//!
//! Percentiles interpolate linearly between order statistics at
//! `q = (n - 1) p`. Per-UE metrics are pooled over all drops before any
//! percentile or gain is taken.

use alloc::string::String;
use alloc::vec::Vec;

use crate::association::Direction;
use crate::error::{CoreError, Result};
use crate::network::Tier;
use crate::uplink::{Case, DropResult};

fn sorted(samples: &[f64]) -> Vec<f64> {
    let mut xs = samples.to_vec();
    xs.sort_unstable_by(f64::total_cmp);
    xs
}

/// Sorted `(value, k/n)` steps.
pub fn empirical_cdf(samples: &[f64]) -> Result<Vec<(f64, f64)>> {
    if samples.is_empty() {
        return Err(CoreError::EmptySamples);
    }
    let n = samples.len() as f64;
    Ok(sorted(samples)
        .into_iter()
        .enumerate()
        .map(|(k, x)| (x, (k + 1) as f64 / n))
        .collect())
}

/// Percentile of already sorted samples.
pub fn percentile_sorted(sorted: &[f64], p: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(CoreError::EmptySamples);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(CoreError::InvalidPercentile(p));
    }
    let q = (sorted.len() - 1) as f64 * p;
    let lo = libm::floor(q) as usize;
    if lo + 1 >= sorted.len() {
        return Ok(sorted[sorted.len() - 1]);
    }
    let frac = q - lo as f64;
    Ok(sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]))
}

pub fn percentile(samples: &[f64], p: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(CoreError::EmptySamples);
    }
    percentile_sorted(&sorted(samples), p)
}

/// `100 * (P_p(test) / P_p(baseline) - 1)`.
pub fn rate_gain_percent(rates_test: &[f64], rates_baseline: &[f64], p: f64) -> Result<f64> {
    let test = percentile(rates_test, p)?;
    let base = percentile(rates_baseline, p)?;
    if base == 0.0 {
        return Err(CoreError::ZeroBaseline);
    }
    Ok(100.0 * (test / base - 1.0))
}

/// Population standard deviation; zero for fewer than two samples.
pub fn population_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    libm::sqrt(var)
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

pub type Cdf = Vec<(f64, f64)>;

/// Per-UE SINR standard deviations (dB) and their CDF.
pub fn sinr_std_summary<S: AsRef<[f64]>>(series: &[S]) -> Result<(Vec<f64>, Cdf)> {
    let stds: Vec<f64> = series.iter().map(|s| population_std(s.as_ref())).collect();
    let cdf = empirical_cdf(&stds)?;
    Ok((stds, cdf))
}

/// Pooled samples of one case over all drops. Per-UE vectors are aligned
/// across the cases of a report: entry `i` is the same UE in the same drop.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolicySamples {
    pub label: String,
    pub case: Case,
    pub ul_tx_power_dbm: Vec<f64>,
    pub ul_serving_loss_db: Vec<f64>,
    /// Every per-slot SINR sample, dB.
    pub ul_sinr_db: Vec<f64>,
    pub ul_sinr_std_db: Vec<f64>,
    pub ul_rate_bps: Vec<f64>,
    pub dl_macro_attached: u64,
    pub dl_small_attached: u64,
    pub ul_macro_attached: u64,
    pub ul_small_attached: u64,
    pub decoupled_ues: u64,
    pub completion_slots: u64,
}

impl PolicySamples {
    fn new(case: Case) -> Self {
        PolicySamples {
            label: case.label(),
            case,
            ul_tx_power_dbm: Vec::new(),
            ul_serving_loss_db: Vec::new(),
            ul_sinr_db: Vec::new(),
            ul_sinr_std_db: Vec::new(),
            ul_rate_bps: Vec::new(),
            dl_macro_attached: 0,
            dl_small_attached: 0,
            ul_macro_attached: 0,
            ul_small_attached: 0,
            decoupled_ues: 0,
            completion_slots: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScenarioReport {
    pub drops: u64,
    pub macro_cells: u64,
    pub small_cells: u64,
    pub ues: u64,
    pub policies: Vec<PolicySamples>,
}

impl ScenarioReport {
    pub fn new(cases: &[Case]) -> Self {
        ScenarioReport {
            drops: 0,
            macro_cells: 0,
            small_cells: 0,
            ues: 0,
            policies: cases.iter().copied().map(PolicySamples::new).collect(),
        }
    }

    /// Append a drop. Callers feed drops in index order for reproducible sample order.
    pub fn absorb(&mut self, drop: &DropResult) {
        assert_eq!(drop.cases.len(), self.policies.len(), "case count mismatch");
        self.drops += 1;
        self.macro_cells += drop.num_macro as u64;
        self.small_cells += drop.num_small as u64;
        self.ues += drop.num_ue as u64;
        for (pool, case) in self.policies.iter_mut().zip(&drop.cases) {
            debug_assert_eq!(pool.case, case.case);
            for m in &case.ue {
                pool.ul_tx_power_dbm.push(m.tx_power_dbm);
                pool.ul_serving_loss_db.push(m.serving_loss_db);
                pool.ul_sinr_db.extend_from_slice(&m.sinr_db_series);
                pool.ul_sinr_std_db.push(m.sinr_std_db);
                pool.ul_rate_bps.push(m.mean_rate_bps);
            }
            pool.dl_macro_attached += case.dl_load.macro_attached as u64;
            pool.dl_small_attached += case.dl_load.small_attached as u64;
            pool.ul_macro_attached += case.ul_load.macro_attached as u64;
            pool.ul_small_attached += case.ul_load.small_attached as u64;
            pool.decoupled_ues += case
                .association
                .dl_cell
                .iter()
                .zip(&case.association.ul_cell)
                .filter(|(d, u)| d != u)
                .count() as u64;
            pool.completion_slots += u64::from(case.completion_slots);
        }
    }

    /// Concatenate another report over the same cases.
    pub fn merge(&mut self, other: &ScenarioReport) {
        assert_eq!(self.policies.len(), other.policies.len(), "case count mismatch");
        self.drops += other.drops;
        self.macro_cells += other.macro_cells;
        self.small_cells += other.small_cells;
        self.ues += other.ues;
        for (a, b) in self.policies.iter_mut().zip(&other.policies) {
            a.ul_tx_power_dbm.extend_from_slice(&b.ul_tx_power_dbm);
            a.ul_serving_loss_db.extend_from_slice(&b.ul_serving_loss_db);
            a.ul_sinr_db.extend_from_slice(&b.ul_sinr_db);
            a.ul_sinr_std_db.extend_from_slice(&b.ul_sinr_std_db);
            a.ul_rate_bps.extend_from_slice(&b.ul_rate_bps);
            a.dl_macro_attached += b.dl_macro_attached;
            a.dl_small_attached += b.dl_small_attached;
            a.ul_macro_attached += b.ul_macro_attached;
            a.ul_small_attached += b.ul_small_attached;
            a.decoupled_ues += b.decoupled_ues;
            a.completion_slots += b.completion_slots;
        }
    }

    pub fn policy(&self, label: &str) -> Option<&PolicySamples> {
        self.policies.iter().find(|p| p.label == label)
    }

    /// Attached UEs per cell of a tier, pooled over drops.
    pub fn mean_ues_per_cell(&self, policy: usize, tier: Tier, direction: Direction) -> f64 {
        let p = &self.policies[policy];
        let (attached, cells) = match (tier, direction) {
            (Tier::Macro, Direction::Dl) => (p.dl_macro_attached, self.macro_cells),
            (Tier::Small, Direction::Dl) => (p.dl_small_attached, self.small_cells),
            (Tier::Macro, Direction::Ul) => (p.ul_macro_attached, self.macro_cells),
            (Tier::Small, Direction::Ul) => (p.ul_small_attached, self.small_cells),
        };
        if cells == 0 {
            0.0
        } else {
            attached as f64 / cells as f64
        }
    }

    pub fn decoupling_fraction(&self, policy: usize) -> f64 {
        if self.ues == 0 {
            0.0
        } else {
            self.policies[policy].decoupled_ues as f64 / self.ues as f64
        }
    }

    pub fn summary(&self) -> Result<ReportSummary> {
        let policies = (0..self.policies.len())
            .map(|i| PolicySummary::of(self, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReportSummary {
            drops: self.drops,
            macro_cells: self.macro_cells,
            small_cells: self.small_cells,
            ues: self.ues,
            policies,
        })
    }

    /// Gains of `test` over `baseline`.
    pub fn compare(&self, baseline: usize, test: usize) -> Result<GainRow> {
        let b = &self.policies[baseline];
        let t = &self.policies[test];
        let reduction = |xs: &[f64], ys: &[f64], p| -> Result<f64> { Ok(percentile(xs, p)? - percentile(ys, p)?) };
        Ok(GainRow {
            baseline: b.label.clone(),
            test: t.label.clone(),
            rate_gain_p05: rate_gain_percent(&t.ul_rate_bps, &b.ul_rate_bps, 0.05)?,
            rate_gain_p50: rate_gain_percent(&t.ul_rate_bps, &b.ul_rate_bps, 0.5)?,
            tx_power_reduction_p50_db: reduction(&b.ul_tx_power_dbm, &t.ul_tx_power_dbm, 0.5)?,
            tx_power_reduction_p95_db: reduction(&b.ul_tx_power_dbm, &t.ul_tx_power_dbm, 0.95)?,
            sinr_std_reduction_p50_db: reduction(&b.ul_sinr_std_db, &t.ul_sinr_std_db, 0.5)?,
            sinr_std_reduction_mean_db: mean(&b.ul_sinr_std_db) - mean(&t.ul_sinr_std_db),
            ul_ues_per_small_cell_baseline: self.mean_ues_per_cell(baseline, Tier::Small, Direction::Ul),
            ul_ues_per_small_cell_test: self.mean_ues_per_cell(test, Tier::Small, Direction::Ul),
            decoupling_fraction_test: self.decoupling_fraction(test),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Quantiles {
    pub p05: f64,
    pub p50: f64,
    pub p95: f64,
    pub mean: f64,
}

impl Quantiles {
    pub fn of(samples: &[f64]) -> Result<Self> {
        let xs = sorted(samples);
        Ok(Quantiles {
            p05: percentile_sorted(&xs, 0.05)?,
            p50: percentile_sorted(&xs, 0.5)?,
            p95: percentile_sorted(&xs, 0.95)?,
            mean: mean(&xs),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolicySummary {
    pub label: String,
    pub case: Case,
    pub ue_samples: u64,
    pub sinr_samples: u64,
    pub ul_tx_power_dbm: Quantiles,
    pub ul_sinr_db: Quantiles,
    pub ul_sinr_std_db: Quantiles,
    pub ul_rate_bps: Quantiles,
    pub dl_ues_per_macro: f64,
    pub dl_ues_per_small: f64,
    pub ul_ues_per_macro: f64,
    pub ul_ues_per_small: f64,
    pub decoupling_fraction: f64,
    pub completion_slots: u64,
}

impl PolicySummary {
    fn of(report: &ScenarioReport, i: usize) -> Result<Self> {
        let p = &report.policies[i];
        Ok(PolicySummary {
            label: p.label.clone(),
            case: p.case,
            ue_samples: p.ul_rate_bps.len() as u64,
            sinr_samples: p.ul_sinr_db.len() as u64,
            ul_tx_power_dbm: Quantiles::of(&p.ul_tx_power_dbm)?,
            ul_sinr_db: Quantiles::of(&p.ul_sinr_db)?,
            ul_sinr_std_db: Quantiles::of(&p.ul_sinr_std_db)?,
            ul_rate_bps: Quantiles::of(&p.ul_rate_bps)?,
            dl_ues_per_macro: report.mean_ues_per_cell(i, Tier::Macro, Direction::Dl),
            dl_ues_per_small: report.mean_ues_per_cell(i, Tier::Small, Direction::Dl),
            ul_ues_per_macro: report.mean_ues_per_cell(i, Tier::Macro, Direction::Ul),
            ul_ues_per_small: report.mean_ues_per_cell(i, Tier::Small, Direction::Ul),
            decoupling_fraction: report.decoupling_fraction(i),
            completion_slots: p.completion_slots,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReportSummary {
    pub drops: u64,
    pub macro_cells: u64,
    pub small_cells: u64,
    pub ues: u64,
    pub policies: Vec<PolicySummary>,
}

/// Test-versus-baseline comparison. Power and SINR-std reductions are
/// baseline minus test, in dB.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GainRow {
    pub baseline: String,
    pub test: String,
    pub rate_gain_p05: f64,
    pub rate_gain_p50: f64,
    pub tx_power_reduction_p50_db: f64,
    pub tx_power_reduction_p95_db: f64,
    pub sinr_std_reduction_p50_db: f64,
    pub sinr_std_reduction_mean_db: f64,
    pub ul_ues_per_small_cell_baseline: f64,
    pub ul_ues_per_small_cell_test: f64,
    pub decoupling_fraction_test: f64,
}
