//! Uplink engine: fractional power control, per-slot co-channel scheduling,
//! SINR and equipartition rates.
//!
//! Interference is tracked on one reference frequency block. In every slot each
//! BS with attached UEs lets one of them, chosen uniformly, transmit on that
//! block, so the interference seen at a BS is the sum over every other cell's
//! active UE. Under equipartition every attached UE owns a share of the blocks
//! in every slot, and the reference-block draw stands for the co-channel
//! transmitters on any of them, so by default each UE gets one SINR sample per
//! slot ([`SinrSampling::AllSlots`]). A UE's rate is its cell's bandwidth
//! divided by the number of UEs attached to the cell, times its mean per-slot
//! Shannon efficiency.
//!
//! Several [`Case`]s can be evaluated on one drop. They share the deployment,
//! the shadowing, the scheduling uniforms and the keyed fading gains, so the
//! comparison between policies uses common random numbers.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::association::{decoupling_fraction, load_by_cell, AssociationMap, CellLoad, Direction};
use crate::channel::{build_link_state, slot_fading, LinkState};
use crate::config::{NetworkConfig, SinrSampling, UlPolicy};
use crate::error::{CoreError, Result};
use crate::math::{db_to_linear, linear_to_db};
use crate::metrics::population_std;
use crate::network::{sample_deployment, Deployment, Tier};
use crate::rng::{drop_seed, stream, Stream};

/// Fractional power control, `min(P_max, P0 + alpha * L)`.
pub fn transmit_power_dbm(coupling_loss_serving: f64, config: &NetworkConfig) -> f64 {
    (config.pc_p0_dbm + config.pc_alpha * coupling_loss_serving).min(config.ue_max_power_dbm)
}

/// UL-attached UEs of every BS, ascending by UE index.
pub fn cell_members(ul_cell: &[usize], num_bs: usize) -> Vec<Vec<usize>> {
    let mut members = vec![Vec::new(); num_bs];
    for (ue, &bs) in ul_cell.iter().enumerate() {
        members[bs].push(ue);
    }
    members
}

/// Pick one transmitter per non-empty cell. One uniform is drawn for every BS,
/// empty or not, so the draw for BS `j` does not depend on other cells' loads.
pub fn schedule_slot<R: Rng + ?Sized>(members: &[Vec<usize>], rng: &mut R) -> Vec<Option<usize>> {
    members
        .iter()
        .map(|cell| {
            let u: f64 = rng.random();
            if cell.is_empty() {
                None
            } else {
                let k = ((u * cell.len() as f64) as usize).min(cell.len() - 1);
                Some(cell[k])
            }
        })
        .collect()
}

/// Transmit powers of every UE for one case, in dBm and mW.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerProfile {
    pub dbm: Vec<f64>,
    pub mw: Vec<f64>,
}

impl PowerProfile {
    pub fn from_dbm(dbm: Vec<f64>) -> Self {
        let mw = dbm.iter().map(|&p| db_to_linear(p)).collect();
        PowerProfile { dbm, mw }
    }

    /// Fractional power control against each UE's serving coupling loss.
    pub fn from_serving_loss(serving_loss_db: &[f64], config: &NetworkConfig) -> Self {
        PowerProfile::from_dbm(serving_loss_db.iter().map(|&l| transmit_power_dbm(l, config)).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum FadingSource {
    /// Counter-based gains from [`slot_fading`].
    Keyed { drop_seed: u64, slot: u64 },
    /// Explicit `[ue][bs]` matrix.
    Matrix { num_bs: usize, gains: Vec<f64> },
}

/// Transmitters and fading of one slot on the reference block.
#[derive(Debug, Clone, PartialEq)]
pub struct UplinkSlotState<'a> {
    /// Reference-block transmitter of each BS, `None` for cells without
    /// UL-attached UEs.
    pub active_ue: Vec<Option<usize>>,
    pub power: &'a PowerProfile,
    fading: FadingSource,
}

impl<'a> UplinkSlotState<'a> {
    /// Slot state whose fading is keyed on `(drop_seed, slot, ue, bs)`.
    pub fn keyed(active_ue: Vec<Option<usize>>, power: &'a PowerProfile, drop_seed: u64, slot: u64) -> Self {
        UplinkSlotState {
            active_ue,
            power,
            fading: FadingSource::Keyed { drop_seed, slot },
        }
    }

    /// Slot state with an explicit fading matrix, `gains[ue * num_bs + bs]`.
    pub fn with_fading(active_ue: Vec<Option<usize>>, power: &'a PowerProfile, gains: Vec<f64>) -> Self {
        let num_bs = active_ue.len();
        assert_eq!(gains.len(), power.dbm.len() * num_bs);
        UplinkSlotState {
            active_ue,
            power,
            fading: FadingSource::Matrix { num_bs, gains },
        }
    }

    #[inline]
    pub fn fading(&self, ue: usize, bs: usize) -> f64 {
        match &self.fading {
            FadingSource::Keyed { drop_seed, slot } => slot_fading(*drop_seed, *slot, ue, bs),
            FadingSource::Matrix { num_bs, gains } => gains[ue * num_bs + bs],
        }
    }

    /// Power received at `bs` from UE `ue`, mW.
    #[inline]
    pub fn received_mw(&self, ue: usize, bs: usize, link_state: &LinkState) -> f64 {
        self.power.mw[ue] * self.fading(ue, bs) * link_state.coupling_gain(ue, bs)
    }

    /// Reference-block interference at `bs` from the transmitters of every other cell, mW.
    pub fn interference_mw(&self, bs: usize, link_state: &LinkState) -> f64 {
        self.active_ue
            .iter()
            .enumerate()
            .filter(|&(cell, _)| cell != bs)
            .filter_map(|(_, k)| k.map(|k| self.received_mw(k, bs, link_state)))
            .sum()
    }
}

/// Linear uplink SINR of `ue`, attached to `serving_bs`, in this slot.
///
/// The UE's own blocks see one transmitter from every other cell, which is
/// what the reference block's `active_ue` draw represents. For the UE that
/// holds the reference block itself this is the plain co-channel SINR.
pub fn uplink_sinr(
    ue: usize,
    serving_bs: usize,
    slot: &UplinkSlotState<'_>,
    link_state: &LinkState,
    config: &NetworkConfig,
) -> f64 {
    let signal = slot.received_mw(ue, serving_bs, link_state);
    signal / (config.noise_power_mw() + slot.interference_mw(serving_bs, link_state))
}

/// Equipartition rate: `(W / load) * mean(log2(1 + SINR))` over the UE's active slots.
pub fn uplink_rate_bps(ue: usize, sinr_series: &[f64], cell_load: usize, config: &NetworkConfig) -> Result<f64> {
    if sinr_series.is_empty() {
        return Err(CoreError::NoActiveSlots { ue });
    }
    debug_assert!(cell_load >= 1);
    let efficiency = |s: f64| {
        let se = libm::log2(1.0 + s);
        match config.max_spectral_efficiency {
            Some(cap) => se.min(cap),
            None => se,
        }
    };
    let mean_se = sinr_series.iter().map(|&s| efficiency(s)).sum::<f64>() / sinr_series.len() as f64;
    Ok(config.bandwidth_hz / cell_load.max(1) as f64 * mean_se)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UplinkMetricsPerUE {
    /// Per-slot SINR in dB, in slot order, over the UE's sampled slots.
    pub sinr_db_series: Vec<f64>,
    pub mean_rate_bps: f64,
    pub sinr_std_db: f64,
    pub tx_power_dbm: f64,
    /// Coupling loss to the UL serving cell.
    pub serving_loss_db: f64,
}

/// An association rule evaluated on a drop.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Case {
    pub ul_policy: UlPolicy,
    /// Small-tier DL bias. Ignored for decoupled UEs unless
    /// `NetworkConfig::decoupled_dl_bias` is set.
    pub small_bias_db: f64,
}

impl Case {
    pub const fn coupled(small_bias_db: f64) -> Self {
        Case {
            ul_policy: UlPolicy::Coupled,
            small_bias_db,
        }
    }

    pub const fn decoupled() -> Self {
        Case {
            ul_policy: UlPolicy::Decoupled,
            small_bias_db: 0.0,
        }
    }

    /// Bias actually applied to the DL association.
    pub fn dl_bias_db(&self, config: &NetworkConfig) -> f64 {
        match self.ul_policy {
            UlPolicy::Coupled => self.small_bias_db,
            UlPolicy::Decoupled if config.decoupled_dl_bias => self.small_bias_db,
            UlPolicy::Decoupled => 0.0,
        }
    }

    /// Short name such as `coupled-bias6` or `decoupled`.
    pub fn label(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        match self.ul_policy {
            UlPolicy::Coupled => {
                let _ = write!(s, "coupled-bias{}", self.small_bias_db);
            }
            UlPolicy::Decoupled if self.small_bias_db != 0.0 => {
                let _ = write!(s, "decoupled-bias{}", self.small_bias_db);
            }
            UlPolicy::Decoupled => s.push_str("decoupled"),
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub case: Case,
    pub association: AssociationMap,
    pub ue: Vec<UplinkMetricsPerUE>,
    pub dl_load: CellLoad,
    pub ul_load: CellLoad,
    pub decoupling_fraction: f64,
    /// Extra slots appended so every UE transmitted at least once.
    pub completion_slots: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DropResult {
    pub drop_index: u64,
    pub num_macro: usize,
    pub num_small: usize,
    pub num_ue: usize,
    pub cases: Vec<CaseResult>,
}

/// One Monte Carlo drop: deployment, shadowing, then every case on shared randomness.
pub fn run_drop(config: &NetworkConfig, drop_index: u64, cases: &[Case]) -> Result<DropResult> {
    let seed = drop_seed(config.master_seed, drop_index);
    let deployment = sample_deployment(config, seed)?;
    let link_state = build_link_state(&deployment, config, &mut stream(seed, Stream::Shadowing, 0));
    let cases = cases
        .iter()
        .map(|case| simulate_case(config, &deployment, &link_state, *case, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(DropResult {
        drop_index,
        num_macro: deployment.tier_count(Tier::Macro),
        num_small: deployment.tier_count(Tier::Small),
        num_ue: deployment.num_ue(),
        cases,
    })
}

/// Run the slots of one case on a given deployment and link state.
pub fn simulate_case(
    config: &NetworkConfig,
    deployment: &Deployment,
    link_state: &LinkState,
    case: Case,
    drop_seed: u64,
) -> Result<CaseResult> {
    let biased = deployment.with_small_bias(case.dl_bias_db(config));
    let association = AssociationMap::build(case.ul_policy, &biased, link_state);
    let num_ue = deployment.num_ue();
    let num_bs = deployment.num_bs();

    let serving_loss: Vec<f64> = (0..num_ue)
        .map(|ue| link_state.coupling_loss_db(ue, association.ul_cell[ue]))
        .collect();
    let power = PowerProfile::from_serving_loss(&serving_loss, config);
    let members = cell_members(&association.ul_cell, num_bs);
    let mut series: Vec<Vec<f64>> = vec![Vec::new(); num_ue];
    let noise_mw = config.noise_power_mw();

    let slots = u64::from(config.slots_per_drop);
    for slot in 0..slots {
        let active = schedule_slot(&members, &mut stream(drop_seed, Stream::Scheduling, slot));
        let state = UplinkSlotState::keyed(active, &power, drop_seed, slot);
        match config.sinr_sampling {
            SinrSampling::AllSlots => {
                let interference: Vec<f64> = (0..num_bs)
                    .map(|bs| {
                        if members[bs].is_empty() {
                            0.0
                        } else {
                            state.interference_mw(bs, link_state)
                        }
                    })
                    .collect();
                for (ue, &bs) in association.ul_cell.iter().enumerate() {
                    let signal = state.received_mw(ue, bs, link_state);
                    series[ue].push(signal / (noise_mw + interference[bs]));
                }
            }
            SinrSampling::ScheduledOnly => {
                for (bs, ue) in state.active_ue.iter().enumerate() {
                    if let Some(ue) = *ue {
                        series[ue].push(uplink_sinr(ue, bs, &state, link_state, config));
                    }
                }
            }
        }
    }

    // Round-robin completion: never-scheduled UEs get one slot each, lowest
    // index first; other cells keep drawing a random transmitter as interferers.
    let mut pending: Vec<Vec<usize>> = members
        .iter()
        .map(|cell| cell.iter().copied().filter(|&ue| series[ue].is_empty()).collect())
        .collect();
    let mut cursor = vec![0usize; num_bs];
    let mut slot = slots;
    while pending.iter().zip(&cursor).any(|(p, &c)| c < p.len()) {
        let mut active = schedule_slot(&members, &mut stream(drop_seed, Stream::Scheduling, slot));
        let mut targets = Vec::new();
        for bs in 0..num_bs {
            if let Some(&ue) = pending[bs].get(cursor[bs]) {
                active[bs] = Some(ue);
                cursor[bs] += 1;
                targets.push((bs, ue));
            }
        }
        let state = UplinkSlotState::keyed(active, &power, drop_seed, slot);
        for (bs, ue) in targets {
            series[ue].push(uplink_sinr(ue, bs, &state, link_state, config));
        }
        slot += 1;
    }
    pending.clear();

    let ul_load = load_by_cell(&association, deployment, Direction::Ul);
    let ue = (0..num_ue)
        .map(|ue| {
            let linear = &series[ue];
            let mean_rate_bps = uplink_rate_bps(ue, linear, ul_load.counts[association.ul_cell[ue]], config)?;
            let sinr_db_series: Vec<f64> = linear.iter().map(|&s| linear_to_db(s)).collect();
            Ok(UplinkMetricsPerUE {
                sinr_std_db: population_std(&sinr_db_series),
                sinr_db_series,
                mean_rate_bps,
                tx_power_dbm: power.dbm[ue],
                serving_loss_db: serving_loss[ue],
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CaseResult {
        case,
        dl_load: load_by_cell(&association, deployment, Direction::Dl),
        ul_load,
        decoupling_fraction: decoupling_fraction(&association),
        association,
        ue,
        completion_slots: (slot - slots) as u32,
    })
}
