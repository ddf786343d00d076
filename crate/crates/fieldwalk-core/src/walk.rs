//! Reference coined random walk on a line.
//!
//! The walker carries a two-state coin (`Right`/`Left`); each step mixes
//! the coin with a Hadamard and shifts the position conditioned on it:
//!
//! ```text
//! (x, R) -> ( (x+1, R) + (x-1, L) ) / sqrt(2)
//! (x, L) -> ( (x+1, R) - (x-1, L) ) / sqrt(2)
//! ```
//!
//! This is the same linear map as the optical step transition with
//! `Right` playing `Down` and `Left` playing `Side`, which is what makes
//! the module an independent oracle for the network simulation. The
//! classical binomial walk is included as the decoherence baseline.

use num_complex::Complex64;

use crate::dist::SiteDistribution;
use crate::error::{Error, Result};
use crate::optics::BeamSplitterParams;

/// Probability of finding the walker at each position.
pub type PositionDistribution = SiteDistribution;

/// Coin basis states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coin {
    Right,
    Left,
}

/// Complex amplitudes per `(position, coin)` after some number of steps.
///
/// Parity-packed like the optical line: slot `i` holds position
/// `x = 2 i - j`. After `j >= 1` steps the extreme positions carry a
/// single coin component (`Right` at `+j`, `Left` at `-j`).
#[derive(Debug, Clone, PartialEq)]
pub struct CoinWalkState {
    step: usize,
    right: Vec<Complex64>,
    left: Vec<Complex64>,
}

impl CoinWalkState {
    /// Steps taken so far.
    pub fn step_index(&self) -> usize {
        self.step
    }

    fn slot(&self, x: i64) -> Option<usize> {
        let j = self.step as i64;
        if x.abs() > j || (x - j) % 2 != 0 {
            return None;
        }
        Some(((x + j) / 2) as usize)
    }

    fn occupies(&self, x: i64, coin: Coin) -> bool {
        let j = self.step as i64;
        match self.slot(x) {
            None => false,
            Some(_) if self.step == 0 => true,
            Some(_) => match coin {
                Coin::Right => x > -j,
                Coin::Left => x < j,
            },
        }
    }

    /// Amplitude of `(x, coin)`; zero for absent components.
    pub fn amplitude(&self, x: i64, coin: Coin) -> Complex64 {
        match (self.slot(x), self.occupies(x, coin)) {
            (Some(i), true) => match coin {
                Coin::Right => self.right[i],
                Coin::Left => self.left[i],
            },
            _ => Complex64::ZERO,
        }
    }

    /// Total probability; stays 1 under stepping.
    pub fn norm_sqr(&self) -> f64 {
        self.right
            .iter()
            .chain(self.left.iter())
            .map(|a| a.norm_sqr())
            .sum()
    }

    /// Position distribution: coin marginal of the squared amplitudes.
    pub fn distribution(&self) -> PositionDistribution {
        let mut dist = SiteDistribution::zeros(self.step);
        let j = self.step as i64;
        for (i, (r, l)) in self.right.iter().zip(self.left.iter()).enumerate() {
            dist.set(2 * i as i64 - j, r.norm_sqr() + l.norm_sqr());
        }
        dist
    }
}

/// Walker at the origin with the given coin amplitudes.
///
/// The amplitudes must be normalized to within 1e-12.
pub fn init_coin(right: Complex64, left: Complex64) -> Result<CoinWalkState> {
    let norm = right.norm_sqr() + left.norm_sqr();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(norm));
    }
    Ok(CoinWalkState {
        step: 0,
        right: vec![right],
        left: vec![left],
    })
}

/// One Hadamard-coin step.
pub fn step(state: &CoinWalkState) -> CoinWalkState {
    let j = state.step;
    let mut right = vec![Complex64::ZERO; j + 2];
    let mut left = vec![Complex64::ZERO; j + 2];
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..=j {
        let r = state.right[i];
        let l = state.left[i];
        // position x = 2i - j feeds slots i+1 (x+1) and i (x-1)
        right[i + 1] += inv_sqrt2 * (r + l);
        left[i] += inv_sqrt2 * (r - l);
    }
    CoinWalkState {
        step: j + 1,
        right,
        left,
    }
}

/// Position distribution after `n` further steps from `initial`.
pub fn walk_distribution(n: usize, initial: &CoinWalkState) -> PositionDistribution {
    let mut state = initial.clone();
    for _ in 0..n {
        state = step(&state);
    }
    state.distribution()
}

/// Unbiased classical walk baseline: `P(x) = C(n, (n+x)/2) / 2^n` on
/// sites with the parity of `n`.
pub fn classical_distribution(n: usize) -> PositionDistribution {
    let mut dist = SiteDistribution::zeros(n);
    // binomial probabilities by the multiplicative recurrence, exact to
    // rounding for n up to a few thousand
    let mut p = 0.5f64.powi(n as i32);
    for m in 0..=n {
        dist.set(2 * m as i64 - n as i64, p);
        p *= (n - m) as f64 / (m + 1) as f64;
    }
    dist
}

/// Initial coin state whose coined walk reproduces the photon
/// distribution of the network driven by the given input splitter.
///
/// The splitter output becomes the walk's state after its first step, so
/// the matching coin is the Hadamard preimage of the output amplitudes
/// `(cos(theta/2), e^{i phi} sin(theta/2))`. For the symmetric settings
/// this is `(R + iL)/sqrt(2)` up to a global phase.
pub fn matching_coin(t1: &BeamSplitterParams) -> (Complex64, Complex64) {
    let half = t1.theta() / 2.0;
    let down = Complex64::new(half.cos(), 0.0);
    let side = Complex64::from_polar(half.sin(), t1.phi());
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    (inv_sqrt2 * (down + side), inv_sqrt2 * (down - side))
}
