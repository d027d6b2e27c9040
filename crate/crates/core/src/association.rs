//! Downlink and uplink cell association.
//!
//! The downlink cell maximizes biased RSRP, `P_tx - L + bias`, with fast fading
//! excluded. A coupled UE uses the same cell in the uplink; a decoupled UE
//! picks the cell with the smallest coupling loss. Ties go to the lowest index.

use alloc::vec::Vec;

use crate::channel::LinkState;
use crate::config::UlPolicy;
use crate::network::{Deployment, Tier};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationMap {
    pub policy: UlPolicy,
    pub dl_cell: Vec<usize>,
    pub ul_cell: Vec<usize>,
}

impl AssociationMap {
    /// DL association on `deployment` (biases as stored there), then the
    /// uplink rule of `policy`.
    pub fn build(policy: UlPolicy, deployment: &Deployment, link_state: &LinkState) -> Self {
        let dl_cell = associate_dl(deployment, link_state);
        let ul_cell = associate_ul(policy, deployment, link_state, &dl_cell);
        AssociationMap {
            policy,
            dl_cell,
            ul_cell,
        }
    }

    pub fn num_ue(&self) -> usize {
        self.dl_cell.len()
    }
}

/// First index of the maximum; NaN never wins.
fn argmax_by(n: usize, mut metric: impl FnMut(usize) -> f64) -> usize {
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for j in 0..n {
        let v = metric(j);
        if v > best_value {
            best = j;
            best_value = v;
        }
    }
    best
}

pub fn associate_dl(deployment: &Deployment, link_state: &LinkState) -> Vec<usize> {
    (0..link_state.num_ue())
        .map(|ue| {
            let row = link_state.coupling_loss_row(ue);
            argmax_by(deployment.num_bs(), |j| {
                let bs = &deployment.bs_list[j];
                bs.tx_power_dbm - row[j] + bs.bias_db
            })
        })
        .collect()
}

pub fn associate_ul(policy: UlPolicy, deployment: &Deployment, link_state: &LinkState, dl_assoc: &[usize]) -> Vec<usize> {
    match policy {
        UlPolicy::Coupled => dl_assoc.to_vec(),
        UlPolicy::Decoupled => (0..link_state.num_ue())
            .map(|ue| {
                let row = link_state.coupling_loss_row(ue);
                argmax_by(deployment.num_bs(), |j| -row[j])
            })
            .collect(),
    }
}

/// Share of UEs whose UL and DL cells differ. Zero for an empty map.
pub fn decoupling_fraction(assoc: &AssociationMap) -> f64 {
    if assoc.num_ue() == 0 {
        return 0.0;
    }
    let split = assoc
        .dl_cell
        .iter()
        .zip(&assoc.ul_cell)
        .filter(|(d, u)| d != u)
        .count();
    split as f64 / assoc.num_ue() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Dl,
    Ul,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellLoad {
    /// Attached UEs per BS.
    pub counts: Vec<usize>,
    pub macro_attached: usize,
    pub small_attached: usize,
    pub macro_cells: usize,
    pub small_cells: usize,
}

impl CellLoad {
    pub fn tier_mean(&self, tier: Tier) -> f64 {
        let (attached, cells) = match tier {
            Tier::Macro => (self.macro_attached, self.macro_cells),
            Tier::Small => (self.small_attached, self.small_cells),
        };
        if cells == 0 {
            0.0
        } else {
            attached as f64 / cells as f64
        }
    }
}

pub fn load_by_cell(assoc: &AssociationMap, deployment: &Deployment, direction: Direction) -> CellLoad {
    let cells = match direction {
        Direction::Dl => &assoc.dl_cell,
        Direction::Ul => &assoc.ul_cell,
    };
    let mut counts = alloc::vec![0usize; deployment.num_bs()];
    for &c in cells {
        counts[c] += 1;
    }
    let mut load = CellLoad {
        counts,
        macro_attached: 0,
        small_attached: 0,
        macro_cells: 0,
        small_cells: 0,
    };
    for (bs, &n) in deployment.bs_list.iter().zip(&load.counts) {
        match bs.tier {
            Tier::Macro => {
                load.macro_cells += 1;
                load.macro_attached += n;
            }
            Tier::Small => {
                load.small_cells += 1;
                load.small_attached += n;
            }
        }
    }
    load
}
