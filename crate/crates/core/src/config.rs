//! Scenario parameterization.
//!
//! Defaults describe the baseline scenario:
//! a 2 km square torus with 5 macro cells/km², 20 small cells/km² (four per
//! macro), 330 UEs/km², 46/30/20 dBm maximum powers, exponent 3.5 path loss,
//! 8 dB log-normal shadowing and 20 MHz split into 100 blocks.

use crate::error::{CoreError, Result};
use crate::math::THERMAL_NOISE_DBM_PER_HZ;

/// Which slots contribute SINR samples to a UE's series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SinrSampling {
    /// Every attached UE is measured in every slot on its own share of the
    /// blocks, against the reference-block transmitters of the other cells.
    AllSlots,
    /// Only the UE holding the reference block is measured; a round-robin
    /// completion pass gives never-scheduled UEs one sample.
    ScheduledOnly,
}

/// Uplink association rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum UlPolicy {
    /// Uplink cell forced equal to the downlink (max biased RSRP) cell.
    Coupled,
    /// Uplink cell chosen independently as the minimum coupling loss cell.
    Decoupled,
}

impl UlPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            UlPolicy::Coupled => "coupled",
            UlPolicy::Decoupled => "decoupled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct NetworkConfig {
    /// Side of the square toroidal window, meters.
    pub window_side: f64,
    /// Macro BSs per km².
    pub macro_density: f64,
    /// Small-cell BSs per km².
    pub small_density: f64,
    /// UEs per km².
    pub ue_density: f64,
    pub macro_power_dbm: f64,
    pub small_power_dbm: f64,
    pub ue_max_power_dbm: f64,
    /// Downlink selection bias of the small tier. The macro tier is fixed at 0 dB.
    pub small_bias_db: f64,
    pub pathloss_exponent: f64,
    /// Path loss at 1 m.
    pub pathloss_intercept_db: f64,
    pub min_distance_m: f64,
    pub shadowing_std_db: f64,
    pub noise_figure_db: f64,
    pub bandwidth_hz: f64,
    pub num_blocks: u32,
    pub pc_p0_dbm: f64,
    pub pc_alpha: f64,
    pub num_drops: u32,
    pub slots_per_drop: u32,
    pub master_seed: u64,
    pub ul_policy: UlPolicy,
    /// Apply `small_bias_db` to the downlink association of decoupled UEs too.
    /// Off by default: decoupled UEs pick their DL cell by plain RSRP.
    pub decoupled_dl_bias: bool,
    /// Optional cap on per-slot spectral efficiency, bit/s/Hz.
    pub max_spectral_efficiency: Option<f64>,
    pub sinr_sampling: SinrSampling,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        NetworkConfig {
            window_side: 2000.0,
            macro_density: 5.0,
            small_density: 20.0,
            ue_density: 330.0,
            macro_power_dbm: 46.0,
            small_power_dbm: 30.0,
            ue_max_power_dbm: 20.0,
            small_bias_db: 0.0,
            pathloss_exponent: 3.5,
            pathloss_intercept_db: 40.75,
            min_distance_m: 1.0,
            shadowing_std_db: 8.0,
            noise_figure_db: 5.0,
            bandwidth_hz: 20e6,
            num_blocks: 100,
            pc_p0_dbm: -78.0,
            pc_alpha: 0.8,
            num_drops: 200,
            slots_per_drop: 50,
            master_seed: 2015,
            ul_policy: UlPolicy::Decoupled,
            decoupled_dl_bias: false,
            max_spectral_efficiency: None,
            sinr_sampling: SinrSampling::AllSlots,
        }
    }
}

fn check(ok: bool, field: &'static str, reason: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(CoreError::InvalidConfig { field, reason })
    }
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<()> {
        check(
            self.window_side.is_finite() && self.window_side > 0.0,
            "window_side",
            "must be a positive finite length",
        )?;
        for (field, v) in [
            ("macro_density", self.macro_density),
            ("small_density", self.small_density),
            ("ue_density", self.ue_density),
        ] {
            check(v.is_finite() && v >= 0.0, field, "must be a finite density >= 0")?;
        }
        for (field, v) in [
            ("macro_power_dbm", self.macro_power_dbm),
            ("small_power_dbm", self.small_power_dbm),
            ("ue_max_power_dbm", self.ue_max_power_dbm),
            ("small_bias_db", self.small_bias_db),
            ("pathloss_intercept_db", self.pathloss_intercept_db),
            ("noise_figure_db", self.noise_figure_db),
            ("pc_p0_dbm", self.pc_p0_dbm),
        ] {
            check(v.is_finite(), field, "must be finite")?;
        }
        check(
            self.pathloss_exponent.is_finite() && self.pathloss_exponent > 2.0,
            "pathloss_exponent",
            "must be > 2",
        )?;
        check(
            self.min_distance_m.is_finite() && self.min_distance_m > 0.0,
            "min_distance_m",
            "must be > 0",
        )?;
        check(
            self.shadowing_std_db.is_finite() && self.shadowing_std_db >= 0.0,
            "shadowing_std_db",
            "must be >= 0",
        )?;
        check(
            self.bandwidth_hz.is_finite() && self.bandwidth_hz > 0.0,
            "bandwidth_hz",
            "must be > 0",
        )?;
        check(self.num_blocks >= 1, "num_blocks", "must be >= 1")?;
        check(
            (0.0..=1.0).contains(&self.pc_alpha),
            "pc_alpha",
            "must lie in [0, 1]",
        )?;
        check(self.num_drops >= 1, "num_drops", "must be >= 1")?;
        check(self.slots_per_drop >= 1, "slots_per_drop", "must be >= 1")?;
        if let Some(cap) = self.max_spectral_efficiency {
            check(
                cap.is_finite() && cap > 0.0,
                "max_spectral_efficiency",
                "must be > 0 when set",
            )?;
        }
        Ok(())
    }

    /// Window area in km².
    pub fn area_km2(&self) -> f64 {
        let side_km = self.window_side / 1000.0;
        side_km * side_km
    }

    /// Width of one frequency block, the reference block of the uplink model.
    pub fn block_bandwidth_hz(&self) -> f64 {
        self.bandwidth_hz / f64::from(self.num_blocks)
    }

    pub fn noise_power_dbm(&self) -> f64 {
        THERMAL_NOISE_DBM_PER_HZ + 10.0 * libm::log10(self.block_bandwidth_hz()) + self.noise_figure_db
    }

    pub fn noise_power_mw(&self) -> f64 {
        crate::math::db_to_linear(self.noise_power_dbm())
    }
}
