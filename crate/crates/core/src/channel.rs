//! Large-scale loss and small-scale fading.
//!
//! Coupling loss is path loss minus the shadowing gain, in dB. Shadowing is
//! drawn once per link per drop; Rayleigh fading is a unit-mean exponential
//! power gain, block-constant within a slot and independent across slots.

use alloc::vec::Vec;

use rand::distr::Open01;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::config::NetworkConfig;
use crate::math::db_to_linear;
use crate::network::{toroidal_distance, Deployment};
use crate::rng::{SplitMix64, Stream};

/// Power-law path loss with a 1 m intercept. Distances below `min_distance_m`
/// are clamped.
pub fn path_loss_db(distance: f64, config: &NetworkConfig) -> f64 {
    let d = distance.max(config.min_distance_m);
    config.pathloss_intercept_db + 10.0 * config.pathloss_exponent * libm::log10(d)
}

/// Zero-mean Gaussian shadowing in dB.
pub fn sample_shadowing_db<R: Rng + ?Sized>(rng: &mut R, std_db: f64) -> f64 {
    if std_db == 0.0 {
        return 0.0;
    }
    Normal::new(0.0, std_db)
        .expect("validated shadowing std")
        .sample(rng)
}

/// Unit-mean exponential power gain (Rayleigh amplitude).
pub fn sample_fading<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    -libm::log(u)
}

/// Fading gain of link `(ue, bs)` in `slot`, keyed on the drop seed so every
/// policy evaluated on the drop sees the same value.
pub fn slot_fading(drop_seed: u64, slot: u64, ue: usize, bs: usize) -> f64 {
    let mut rng = SplitMix64::keyed(&[drop_seed, Stream::Fading as u64, slot, ue as u64, bs as u64]);
    sample_fading(&mut rng)
}

/// Per-(UE, BS) large-scale state for one drop. Matrices are row-major by UE.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkState {
    num_ue: usize,
    num_bs: usize,
    pathloss_db: Vec<f64>,
    shadowing_db: Vec<f64>,
    coupling_loss_db: Vec<f64>,
    coupling_gain: Vec<f64>,
}

impl LinkState {
    /// Assemble a link state from explicit matrices (row-major, UE by BS).
    pub fn from_parts(num_ue: usize, num_bs: usize, pathloss_db: Vec<f64>, shadowing_db: Vec<f64>) -> Self {
        assert_eq!(pathloss_db.len(), num_ue * num_bs);
        assert_eq!(shadowing_db.len(), num_ue * num_bs);
        let coupling_loss_db: Vec<f64> = pathloss_db
            .iter()
            .zip(&shadowing_db)
            .map(|(pl, sh)| pl - sh)
            .collect();
        let coupling_gain = coupling_loss_db.iter().map(|&l| db_to_linear(-l)).collect();
        LinkState {
            num_ue,
            num_bs,
            pathloss_db,
            shadowing_db,
            coupling_loss_db,
            coupling_gain,
        }
    }

    pub fn num_ue(&self) -> usize {
        self.num_ue
    }

    pub fn num_bs(&self) -> usize {
        self.num_bs
    }

    #[inline]
    fn idx(&self, ue: usize, bs: usize) -> usize {
        debug_assert!(ue < self.num_ue && bs < self.num_bs);
        ue * self.num_bs + bs
    }

    pub fn pathloss_db(&self, ue: usize, bs: usize) -> f64 {
        self.pathloss_db[self.idx(ue, bs)]
    }

    pub fn shadowing_db(&self, ue: usize, bs: usize) -> f64 {
        self.shadowing_db[self.idx(ue, bs)]
    }

    pub fn coupling_loss_db(&self, ue: usize, bs: usize) -> f64 {
        self.coupling_loss_db[self.idx(ue, bs)]
    }

    /// `10^(-coupling_loss/10)`.
    #[inline]
    pub fn coupling_gain(&self, ue: usize, bs: usize) -> f64 {
        self.coupling_gain[self.idx(ue, bs)]
    }

    /// Coupling losses from one UE to every BS.
    pub fn coupling_loss_row(&self, ue: usize) -> &[f64] {
        &self.coupling_loss_db[ue * self.num_bs..(ue + 1) * self.num_bs]
    }
}

/// Path loss and shadowing over every UE–BS link. Shadowing is drawn UE-major.
pub fn build_link_state<R: Rng + ?Sized>(deployment: &Deployment, config: &NetworkConfig, rng: &mut R) -> LinkState {
    let (nu, nb) = (deployment.num_ue(), deployment.num_bs());
    let mut pathloss = Vec::with_capacity(nu * nb);
    let mut shadowing = Vec::with_capacity(nu * nb);
    for ue in &deployment.ue_list {
        for bs in &deployment.bs_list {
            let d = toroidal_distance(*ue, bs.position, deployment.window_side);
            pathloss.push(path_loss_db(d, config));
            shadowing.push(sample_shadowing_db(rng, config.shadowing_std_db));
        }
    }
    LinkState::from_parts(nu, nb, pathloss, shadowing)
}
