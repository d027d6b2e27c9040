//! Named comparisons: decoupled uplink against coupled pico- or femtocell
//! networks, and the three-case transmit-power comparison.

use dude_core::config::NetworkConfig;
use dude_core::metrics::{GainRow, ScenarioReport};
use dude_core::uplink::Case;

use crate::error::SimError;
use crate::runner::run_cases;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallCellProfile {
    /// 30 dBm small cells.
    Picocell,
    /// 20 dBm small cells.
    Femtocell,
}

impl SmallCellProfile {
    pub fn power_dbm(self) -> f64 {
        match self {
            SmallCellProfile::Picocell => 30.0,
            SmallCellProfile::Femtocell => 20.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioPreset {
    pub name: &'static str,
    pub profile: SmallCellProfile,
    /// Every baseline is compared against `test`.
    pub baselines: Vec<Case>,
    pub test: Case,
}

impl ScenarioPreset {
    /// Baselines first, test last.
    pub fn cases(&self) -> Vec<Case> {
        let mut cases = self.baselines.clone();
        cases.push(self.test);
        cases
    }

    pub fn apply(&self, config: &NetworkConfig) -> NetworkConfig {
        NetworkConfig {
            small_power_dbm: self.profile.power_dbm(),
            ..config.clone()
        }
    }
}

pub const PRESET_NAMES: [&str; 5] = ["pico-bias0", "pico-bias6", "femto-bias0", "femto-bias8", "fig1-cases"];

pub fn preset(name: &str) -> Result<ScenarioPreset, SimError> {
    use SmallCellProfile::*;
    let single = |name, profile, bias| ScenarioPreset {
        name,
        profile,
        baselines: vec![Case::coupled(bias)],
        test: Case::decoupled(),
    };
    Ok(match name {
        "pico-bias0" => single("pico-bias0", Picocell, 0.0),
        "pico-bias6" => single("pico-bias6", Picocell, 6.0),
        "femto-bias0" => single("femto-bias0", Femtocell, 0.0),
        "femto-bias8" => single("femto-bias8", Femtocell, 8.0),
        "fig1-cases" => ScenarioPreset {
            name: "fig1-cases",
            profile: Picocell,
            baselines: vec![Case::coupled(0.0), Case::coupled(6.0)],
            test: Case::decoupled(),
        },
        other => return Err(SimError::UnknownPreset(other.to_owned())),
    })
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub preset: ScenarioPreset,
    /// The configuration actually simulated (small-cell power from the preset).
    pub config: NetworkConfig,
    pub report: ScenarioReport,
    pub gains: Vec<GainRow>,
}

/// All comparisons of a report whose last case is the test case.
pub fn gain_rows(report: &ScenarioReport) -> Result<Vec<GainRow>, SimError> {
    let test = report.policies.len() - 1;
    (0..test)
        .map(|b| report.compare(b, test).map_err(SimError::Runtime))
        .collect()
}

pub fn compare_policies(config: &NetworkConfig, preset: &ScenarioPreset, workers: usize) -> Result<Comparison, SimError> {
    let config = preset.apply(config);
    let report = run_cases(&config, &preset.cases(), workers)?;
    let gains = gain_rows(&report)?;
    Ok(Comparison {
        preset: preset.clone(),
        config,
        report,
        gains,
    })
}
