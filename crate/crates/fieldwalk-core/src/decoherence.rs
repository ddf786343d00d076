//! Monte Carlo noise channels and ensemble averaging.
//!
//! Two unitary noise channels are modeled. *Phase noise* attaches an
//! extra shifter to every field mode just before and just after each step
//! transition; the shift is `2*pi*|l|` with `l` drawn from a Gaussian
//! centred at 1 with width `sigma_pp`, so `sigma_pp = 0` leaves the
//! neutral shift `2*pi`. *Transmittivity noise* replaces the 50:50
//! splitter angle by `(pi/2)*|m|` with `m` Gaussian around 1 with width
//! `sigma_bs`, clamped to `[0, pi]`.
//!
//! # Reproducibility
//!
//! Every trial owns a ChaCha8 generator seeded from the master seed with
//! the trial index as stream, so trials are independent of each other and
//! of execution order. Within a trial, draws are consumed in a canonical
//! order:
//!
//! * fresh randomness — per transition `j -> j+1`: phase offsets for the
//!   modes entering the transition (nodes ascending, `Down` before
//!   `Side`), then splitter angles (nodes ascending), then offsets for
//!   the modes leaving it (same ordering);
//! * fixed randomness — one table drawn up front and reused at every
//!   transition: for each node `k = -N ..= N` the offsets
//!   `(Down, Before)`, `(Down, After)`, `(Side, Before)`, `(Side, After)`,
//!   then one splitter angle per node.
//!
//! With `PhaseSharing::PerStep` a single fresh offset is shared by all
//! modes of a layer (one draw per layer per transition); this makes the
//! offsets a global phase and is provided to let both readings of the
//! sampling granularity be exercised. Sharing does not apply to fixed
//! randomness, where the table is always per mode. Channels with zero
//! width draw nothing, so a zero-noise trial is bit-identical to the
//! noise-free walk.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::dist::SiteDistribution;
use crate::error::{Error, Result};
use crate::optics::{
    photon_distribution, propagate, BeamSplitterParams, Direction, LineState, NoiseRealization,
    PhaseLayer, PhaseMap, StepNoise, ThetaMap,
};

/// Whether noise is redrawn every transition or frozen per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomnessMode {
    Fresh,
    Fixed,
}

/// Granularity of fresh phase draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseSharing {
    /// Independent draw for every mode at every layer.
    PerMode,
    /// One draw shared by all modes of a layer.
    PerStep,
}

/// Noise channel widths and ensemble bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    pub sigma_pp: f64,
    pub sigma_bs: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub randomness: RandomnessMode,
    pub phase_sharing: PhaseSharing,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            sigma_pp: 0.0,
            sigma_bs: 0.0,
            trials: 50,
            master_seed: 0,
            randomness: RandomnessMode::Fresh,
            phase_sharing: PhaseSharing::PerMode,
        }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        for sigma in [self.sigma_pp, self.sigma_bs] {
            if !sigma.is_finite() || sigma < 0.0 {
                return Err(Error::InvalidSigma(sigma));
            }
        }
        if self.trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(())
    }
}

/// Trial-averaged distribution with per-site standard error of the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    pub mean: SiteDistribution,
    pub stderr: SiteDistribution,
    pub trials_used: usize,
}

/// Generator for one trial: ChaCha8 keyed by the master seed, with the
/// trial index selecting the stream.
pub fn trial_rng(master_seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index);
    rng
}

/// Shift applied for a Gaussian draw `l`: `2*pi*|l|`, not reduced modulo
/// `2*pi` (reduction happens implicitly in `e^{i shift}`).
pub fn phase_offset_from(l: f64) -> f64 {
    2.0 * PI * l.abs()
}

/// Draws `l ~ Normal(1, sigma_pp)` and returns the shift `2*pi*|l|`.
pub fn sample_phase_offset<R: Rng + ?Sized>(rng: &mut R, sigma_pp: f64) -> f64 {
    let normal = Normal::new(1.0, sigma_pp).expect("sigma_pp validated non-negative");
    phase_offset_from(normal.sample(rng))
}

/// Splitter angle for a Gaussian draw `m`: `(pi/2)*|m|` clamped to
/// `[0, pi]` so the splitter stays physical.
pub fn theta_from(m: f64) -> f64 {
    ((PI / 2.0) * m.abs()).clamp(0.0, PI)
}

/// Draws `m ~ Normal(1, sigma_bs)` and returns the clamped angle.
pub fn sample_theta<R: Rng + ?Sized>(rng: &mut R, sigma_bs: f64) -> f64 {
    let normal = Normal::new(1.0, sigma_bs).expect("sigma_bs validated non-negative");
    theta_from(normal.sample(rng))
}

/// Draws the full noise realization for one trial, following the
/// canonical order documented at module level.
pub fn sample_realization(
    cfg: &NoiseConfig,
    n_steps: usize,
    trial_index: u64,
) -> Result<NoiseRealization> {
    cfg.validate()?;
    if n_steps == 0 {
        return Err(Error::NoSteps);
    }
    let mut rng = trial_rng(cfg.master_seed, trial_index);
    let phase_on = cfg.sigma_pp > 0.0;
    let theta_on = cfg.sigma_bs > 0.0;

    match cfg.randomness {
        RandomnessMode::Fresh => {
            let mut steps = Vec::with_capacity(n_steps - 1);
            for line in 1..n_steps {
                let mut phases = if phase_on { Some(PhaseMap::new()) } else { None };
                if let Some(map) = phases.as_mut() {
                    draw_fresh_layer(map, &mut rng, cfg, line, PhaseLayer::Before);
                }
                let theta = if theta_on {
                    let mut map = ThetaMap::new();
                    for node in LineState::line_nodes(line) {
                        map.insert(node, sample_theta(&mut rng, cfg.sigma_bs));
                    }
                    Some(map)
                } else {
                    None
                };
                if let Some(map) = phases.as_mut() {
                    draw_fresh_layer(map, &mut rng, cfg, line + 1, PhaseLayer::After);
                }
                steps.push(StepNoise { theta, phases });
            }
            Ok(NoiseRealization::Sequence(steps))
        }
        RandomnessMode::Fixed => {
            let bound = n_steps as i64;
            let phases = if phase_on {
                let mut map = PhaseMap::new();
                for node in -bound..=bound {
                    for (dir, layer) in [
                        (Direction::Down, PhaseLayer::Before),
                        (Direction::Down, PhaseLayer::After),
                        (Direction::Side, PhaseLayer::Before),
                        (Direction::Side, PhaseLayer::After),
                    ] {
                        map.insert((node, dir, layer), sample_phase_offset(&mut rng, cfg.sigma_pp));
                    }
                }
                Some(map)
            } else {
                None
            };
            let theta = if theta_on {
                let mut map = ThetaMap::new();
                for node in -bound..=bound {
                    map.insert(node, sample_theta(&mut rng, cfg.sigma_bs));
                }
                Some(map)
            } else {
                None
            };
            Ok(NoiseRealization::Repeated(StepNoise { theta, phases }))
        }
    }
}

fn draw_fresh_layer(
    map: &mut PhaseMap,
    rng: &mut ChaCha8Rng,
    cfg: &NoiseConfig,
    line: usize,
    layer: PhaseLayer,
) {
    let shared = match cfg.phase_sharing {
        PhaseSharing::PerMode => None,
        PhaseSharing::PerStep => Some(sample_phase_offset(rng, cfg.sigma_pp)),
    };
    for node in LineState::line_nodes(line) {
        for dir in [Direction::Down, Direction::Side] {
            if LineState::mode_exists(line, node, dir) {
                let offset =
                    shared.unwrap_or_else(|| sample_phase_offset(rng, cfg.sigma_pp));
                map.insert((node, dir, layer), offset);
            }
        }
    }
}

/// One noise realization of the full walk; deterministic in
/// `(master_seed, trial_index)`.
pub fn run_trial(
    n_steps: usize,
    t1: BeamSplitterParams,
    cfg: &NoiseConfig,
    trial_index: u64,
) -> Result<SiteDistribution> {
    let noise = sample_realization(cfg, n_steps, trial_index)?;
    let line = propagate(n_steps, t1, Some(&noise))?;
    Ok(photon_distribution(&line))
}

/// Averages `cfg.trials` independent trials.
///
/// Trials run in parallel but are reduced in trial order with compensated
/// summation, so the result is independent of the execution schedule.
pub fn run_ensemble(
    n_steps: usize,
    t1: BeamSplitterParams,
    cfg: &NoiseConfig,
) -> Result<EnsembleResult> {
    cfg.validate()?;
    let per_trial: Vec<SiteDistribution> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| run_trial(n_steps, t1, cfg, trial))
        .collect::<Result<Vec<_>>>()?;

    let sites = 2 * n_steps + 1;
    let count = per_trial.len() as f64;
    // two-pass reduction anchored on the first trial, so bit-identical
    // trials yield the exact mean and an exactly zero standard error
    let anchor = per_trial[0].dense();
    let mut shift = vec![0.0; sites];
    let mut mean = vec![0.0; sites];
    for i in 0..sites {
        let mut acc = KahanSum::default();
        for trial in &per_trial {
            acc.add(trial.dense()[i] - anchor[i]);
        }
        shift[i] = acc.value() / count;
        mean[i] = (anchor[i] + shift[i]).max(0.0);
    }

    let mut stderr = vec![0.0; sites];
    if per_trial.len() > 1 {
        for (i, slot) in stderr.iter_mut().enumerate() {
            let mut acc = KahanSum::default();
            for trial in &per_trial {
                let dev = (trial.dense()[i] - anchor[i]) - shift[i];
                acc.add(dev * dev);
            }
            let sample_var = acc.value() / (count - 1.0);
            *slot = (sample_var / count).sqrt();
        }
    }

    Ok(EnsembleResult {
        mean: SiteDistribution::from_dense(n_steps, mean)?,
        stderr: SiteDistribution::from_dense(n_steps, stderr)?,
        trials_used: per_trial.len(),
    })
}

#[derive(Default)]
struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let y = x - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}
