//! Coined quantum random walks on a line, simulated as interference of
//! classical field amplitudes in a beam-splitter network.
//!
//! The crate tracks one complex amplitude per field mode through a lattice
//! of splitters and phase shifters and reads the walker's position
//! distribution off the per-node mean photon numbers. A reference coined
//! walk ([`walk`]) serves as an independent oracle for the network
//! simulation ([`optics`]); [`decoherence`] adds the two unitary noise
//! channels (random extra phase shifts, jittered splitter transmittivity)
//! and ensemble averaging that drive the distribution from the quantum
//! interference pattern to the classical bell curve; [`analysis`] supplies
//! the statistics used to compare the regimes and the element counts of
//! the two hardware layouts.

pub mod analysis;
pub mod decoherence;
pub mod dist;
pub mod error;
pub mod optics;
pub mod walk;

pub use analysis::{
    default_flat_region, flatness, moments, poisson_photon_probability, resource_count,
    tv_distance, Layout, Moments, ResourceCount,
};
pub use decoherence::{
    run_ensemble, run_trial, sample_phase_offset, sample_realization, sample_theta, trial_rng,
    EnsembleResult, NoiseConfig, PhaseSharing, RandomnessMode,
};
pub use dist::SiteDistribution;
pub use error::{Error, Result};
pub use optics::{
    apply_t1, apply_t2, photon_distribution, propagate, scale_to_input, BeamSplitterParams,
    Direction, LineState, NoiseRealization, PhaseLayer, PhaseMap, PhotonDistribution, StepNoise,
    ThetaMap,
};
pub use walk::{
    classical_distribution, init_coin, matching_coin, step, walk_distribution, Coin,
    CoinWalkState, PositionDistribution,
};
