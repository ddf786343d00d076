//! Field-amplitude propagation through the beam-splitter network.
//!
//! The network is organized in *dynamic lines*: line `j` holds the field
//! modes after `j` steps, one pair of modes per node `k` (`|k| <= j`,
//! `k ≡ j mod 2`). A mode is either incident *downward* (`Down`) or
//! *sideward* (`Side`) on its node. The input beam enters the first
//! splitter `T1`; every later transition `j -> j+1` applies the step block
//! `T2` (phase shifter, 50:50 splitter, phase shifter) at each occupied
//! node.
//!
//! Amplitudes are tracked as complex fractions of the input field
//! amplitude, so squared magnitudes are fractions of the input mean photon
//! number. The evolution is linear and unitary; the observable is the
//! per-node photon distribution, which is insensitive to the overall phase
//! conventions fixed here.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::dist::SiteDistribution;
use crate::error::{Error, Result};

/// Per-node photon fractions `M(j, k)`; sums to 1 for unitary evolution.
pub type PhotonDistribution = SiteDistribution;

/// Which way a mode travels into its node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Down,
    Side,
}

impl Direction {
    fn label(self) -> &'static str {
        match self {
            Direction::Down => "down",
            Direction::Side => "side",
        }
    }
}

/// Whether a phase offset acts on the modes entering a step block or on
/// the modes leaving it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhaseLayer {
    Before,
    After,
}

/// Splitter angles per node for one transition; nodes not listed use the
/// noise-free `theta = pi/2`.
pub type ThetaMap = BTreeMap<i64, f64>;

/// Phase offsets (radians) per mode and layer for one transition; modes
/// not listed are left untouched.
pub type PhaseMap = BTreeMap<(i64, Direction, PhaseLayer), f64>;

/// Noise attached to a single `T2` transition.
#[derive(Debug, Clone, Default)]
pub struct StepNoise {
    pub theta: Option<ThetaMap>,
    pub phases: Option<PhaseMap>,
}

impl StepNoise {
    fn theta_map(&self) -> Option<&ThetaMap> {
        self.theta.as_ref()
    }

    fn phase_map(&self) -> Option<&PhaseMap> {
        self.phases.as_ref()
    }
}

/// Noise for a whole propagation, either one entry per transition or a
/// single table reused at every transition (fixed randomness).
///
/// Entries addressing modes that do not exist on the transition they are
/// applied to are ignored, so a `Repeated` table may simply cover every
/// node the walk can ever reach.
#[derive(Debug, Clone)]
pub enum NoiseRealization {
    Sequence(Vec<StepNoise>),
    Repeated(StepNoise),
}

impl NoiseRealization {
    fn check_len(&self, transitions: usize) -> Result<()> {
        match self {
            NoiseRealization::Sequence(steps) if steps.len() != transitions => {
                Err(Error::NoiseLengthMismatch {
                    expected: transitions,
                    got: steps.len(),
                })
            }
            _ => Ok(()),
        }
    }

    fn at(&self, transition: usize) -> &StepNoise {
        match self {
            NoiseRealization::Sequence(steps) => &steps[transition],
            NoiseRealization::Repeated(step) => step,
        }
    }
}

/// Angles of the input beam splitter.
///
/// `theta` controls the split ratio (transmittivity `cos^2(theta/2)`),
/// `phi` the relative phase of the reflected part. The symmetric walk
/// uses `theta = pi/2`, `phi = -pi/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterParams {
    theta: f64,
    phi: f64,
}

impl BeamSplitterParams {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidTheta(theta));
        }
        if !(phi > -PI && phi <= PI) {
            return Err(Error::InvalidPhi(phi));
        }
        Ok(Self { theta, phi })
    }

    /// The settings producing the symmetric walk distribution.
    pub fn symmetric() -> Self {
        Self {
            theta: PI / 2.0,
            phi: -PI / 2.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Complex field amplitudes on one dynamic line.
///
/// Stored parity-packed: slot `i` holds node `k = 2 i - j`. On every line
/// with `j >= 1` the extreme nodes carry a single mode (`Down` at `k = +j`,
/// `Side` at `k = -j`); the opposite slots are structurally zero. The
/// degenerate line `j = 0` has one node that may carry both modes.
#[derive(Debug, Clone, PartialEq)]
pub struct LineState {
    step: usize,
    down: Vec<Complex64>,
    side: Vec<Complex64>,
}

impl LineState {
    /// Builds a line from explicit `(node, direction, amplitude)` modes.
    ///
    /// Rejects nodes off the line, parity violations, edge modes that
    /// cannot exist, and duplicate entries. Normalization is not checked;
    /// unit total intensity is a property of unitary evolution, not of
    /// construction.
    pub fn from_modes(step: usize, modes: &[(i64, Direction, Complex64)]) -> Result<Self> {
        let mut state = Self {
            step,
            down: vec![Complex64::ZERO; step + 1],
            side: vec![Complex64::ZERO; step + 1],
        };
        let mut seen = BTreeMap::new();
        for &(node, dir, amp) in modes {
            if !state.occupies(node, dir) {
                return Err(Error::InvalidMode {
                    step,
                    node,
                    dir: dir.label(),
                });
            }
            if seen.insert((node, dir), ()).is_some() {
                return Err(Error::DuplicateMode {
                    step,
                    node,
                    dir: dir.label(),
                });
            }
            let i = state.slot(node).expect("occupied node is on the line");
            match dir {
                Direction::Down => state.down[i] = amp,
                Direction::Side => state.side[i] = amp,
            }
        }
        Ok(state)
    }

    /// Line index `j`.
    pub fn step_index(&self) -> usize {
        self.step
    }

    fn slot(&self, node: i64) -> Option<usize> {
        let j = self.step as i64;
        if node.abs() > j || (node - j) % 2 != 0 {
            return None;
        }
        Some(((node + j) / 2) as usize)
    }

    /// Nodes of line `step` in ascending order.
    pub fn line_nodes(step: usize) -> impl Iterator<Item = i64> {
        let j = step as i64;
        (0..=step).map(move |i| 2 * i as i64 - j)
    }

    /// True if line `step` structurally carries the mode `(node, dir)`.
    pub fn mode_exists(step: usize, node: i64, dir: Direction) -> bool {
        let j = step as i64;
        if node.abs() > j || (node - j) % 2 != 0 {
            return false;
        }
        if step == 0 {
            return true;
        }
        match dir {
            Direction::Down => node > -j,
            Direction::Side => node < j,
        }
    }

    /// True if the mode exists structurally on this line, whatever its
    /// current amplitude.
    pub fn occupies(&self, node: i64, dir: Direction) -> bool {
        Self::mode_exists(self.step, node, dir)
    }

    /// Amplitude of a mode; zero for modes absent from this line.
    pub fn amplitude(&self, node: i64, dir: Direction) -> Complex64 {
        match (self.slot(node), self.occupies(node, dir)) {
            (Some(i), true) => match dir {
                Direction::Down => self.down[i],
                Direction::Side => self.side[i],
            },
            _ => Complex64::ZERO,
        }
    }

    /// Occupied nodes in ascending order.
    pub fn nodes(&self) -> impl Iterator<Item = i64> + '_ {
        let j = self.step as i64;
        (0..=self.step).map(move |i| 2 * i as i64 - j)
    }

    /// Occupied modes in ascending node order, `Down` before `Side`.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Direction, Complex64)> + '_ {
        self.nodes().flat_map(move |k| {
            [Direction::Down, Direction::Side]
                .into_iter()
                .filter(move |&dir| self.occupies(k, dir))
                .map(move |dir| (k, dir, self.amplitude(k, dir)))
        })
    }

    /// Total intensity `sum |amplitude|^2`; 1 under noise-free evolution.
    pub fn total_intensity(&self) -> f64 {
        self.down
            .iter()
            .chain(self.side.iter())
            .map(|a| a.norm_sqr())
            .sum()
    }

    /// Multiplies one mode by `e^{i offset}`. Absent modes are untouched
    /// (a vacuum port has no amplitude to shift).
    pub fn apply_phase(&mut self, node: i64, dir: Direction, offset: f64) {
        if let Some(i) = self.slot(node) {
            if self.occupies(node, dir) {
                let factor = Complex64::from_polar(1.0, offset);
                match dir {
                    Direction::Down => self.down[i] *= factor,
                    Direction::Side => self.side[i] *= factor,
                }
            }
        }
    }

    fn apply_phase_layer(&mut self, phases: &PhaseMap, layer: PhaseLayer) {
        for (&(node, dir, l), &offset) in phases {
            if l == layer {
                self.apply_phase(node, dir, offset);
            }
        }
    }
}

/// Splits the input beam on the first splitter, producing line 1:
/// amplitude `cos(theta/2)` travels down to node +1 and
/// `e^{i phi} sin(theta/2)` sideward to node -1.
pub fn apply_t1(params: BeamSplitterParams) -> LineState {
    let half = params.theta / 2.0;
    LineState {
        step: 1,
        down: vec![Complex64::ZERO, Complex64::new(half.cos(), 0.0)],
        side: vec![
            Complex64::from_polar(half.sin(), params.phi),
            Complex64::ZERO,
        ],
    }
}

/// Advances one dynamic line to the next by applying the step block `T2`
/// at every occupied node.
///
/// At a node with incident amplitudes `(d, s)` and splitter angle `theta`
/// the block feeds the next line as
///
/// ```text
/// to (k+1, Down): sin(theta/2) d + cos(theta/2) s
/// to (k-1, Side): cos(theta/2) d - sin(theta/2) s
/// ```
///
/// which at the noise-free `theta = pi/2` is the Hadamard mix
/// `(d + s)/sqrt(2)`, `(d - s)/sqrt(2)`. Absent modes count as zero, so
/// edge nodes mix with an implicit vacuum port. `Before` phase offsets act
/// on the incident modes, `After` offsets on the produced modes; offsets
/// addressed to modes a line does not carry are ignored.
pub fn apply_t2(
    state: &LineState,
    theta_per_node: Option<&ThetaMap>,
    phase_offsets: Option<&PhaseMap>,
) -> LineState {
    let mut input = state.clone();
    if let Some(phases) = phase_offsets {
        input.apply_phase_layer(phases, PhaseLayer::Before);
    }

    let j = input.step;
    let mut next = LineState {
        step: j + 1,
        down: vec![Complex64::ZERO; j + 2],
        side: vec![Complex64::ZERO; j + 2],
    };

    for (i, k) in input.nodes().enumerate() {
        let (sin_half, cos_half) = match theta_per_node.and_then(|m| m.get(&k)) {
            Some(&theta) => {
                let half = theta / 2.0;
                (half.sin(), half.cos())
            }
            None => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        };
        let d = input.down[i];
        let s = input.side[i];
        // node k on line j feeds slots i+1 (node k+1) and i (node k-1)
        // on line j+1
        next.down[i + 1] += sin_half * d + cos_half * s;
        next.side[i] += cos_half * d - sin_half * s;
    }

    if let Some(phases) = phase_offsets {
        next.apply_phase_layer(phases, PhaseLayer::After);
    }
    next
}

/// Runs the full network: the input splitter followed by `n_steps - 1`
/// step transitions, optionally with a noise realization supplying per-
/// transition splitter angles and phase offsets.
pub fn propagate(
    n_steps: usize,
    t1: BeamSplitterParams,
    noise: Option<&NoiseRealization>,
) -> Result<LineState> {
    if n_steps == 0 {
        return Err(Error::NoSteps);
    }
    let transitions = n_steps - 1;
    if let Some(noise) = noise {
        noise.check_len(transitions)?;
    }
    let mut state = apply_t1(t1);
    for t in 0..transitions {
        state = match noise.map(|n| n.at(t)) {
            Some(step_noise) => apply_t2(&state, step_noise.theta_map(), step_noise.phase_map()),
            None => apply_t2(&state, None, None),
        };
    }
    Ok(state)
}

/// Per-node photon fraction: `M(j, k)` is the summed squared magnitude of
/// the two modes incident on node `k`.
pub fn photon_distribution(state: &LineState) -> PhotonDistribution {
    let mut dist = SiteDistribution::zeros(state.step);
    for k in state.nodes() {
        let m = state.amplitude(k, Direction::Down).norm_sqr()
            + state.amplitude(k, Direction::Side).norm_sqr();
        dist.set(k, m);
    }
    dist
}

/// Rescales a normalized distribution to absolute mean photon numbers for
/// an input beam carrying `mean_photons` photons on average.
pub fn scale_to_input(
    dist: &PhotonDistribution,
    mean_photons: f64,
) -> Result<Vec<(i64, f64)>> {
    if !mean_photons.is_finite() || mean_photons < 0.0 {
        return Err(Error::NegativeMeanPhotons(mean_photons));
    }
    Ok(dist.sites().map(|(k, v)| (k, v * mean_photons)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn symmetric_line(n: usize) -> LineState {
        propagate(n, BeamSplitterParams::symmetric(), None).unwrap()
    }

    fn assert_close(a: Complex64, b: Complex64) {
        assert!((a - b).norm() < TOL, "{a} != {b}");
    }

    #[test]
    fn params_reject_out_of_range() {
        assert_eq!(
            BeamSplitterParams::new(-0.1, 0.0),
            Err(Error::InvalidTheta(-0.1))
        );
        assert_eq!(
            BeamSplitterParams::new(3.5, 0.0),
            Err(Error::InvalidTheta(3.5))
        );
        assert_eq!(
            BeamSplitterParams::new(1.0, -PI),
            Err(Error::InvalidPhi(-PI))
        );
        assert!(BeamSplitterParams::new(1.0, PI).is_ok());
        assert!(BeamSplitterParams::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn t1_symmetric_amplitudes() {
        let line = apply_t1(BeamSplitterParams::symmetric());
        assert_eq!(line.step_index(), 1);
        assert_close(
            line.amplitude(1, Direction::Down),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        );
        assert_close(
            line.amplitude(-1, Direction::Side),
            Complex64::new(0.0, -FRAC_1_SQRT_2),
        );
        assert!((line.total_intensity() - 1.0).abs() < TOL);
    }

    #[test]
    fn t1_fully_transmitting_and_reflecting() {
        let through = apply_t1(BeamSplitterParams::new(0.0, 1.0).unwrap());
        assert_close(through.amplitude(1, Direction::Down), Complex64::ONE);
        assert_close(through.amplitude(-1, Direction::Side), Complex64::ZERO);

        let reflected = apply_t1(BeamSplitterParams::new(PI, 0.0).unwrap());
        assert_close(reflected.amplitude(1, Direction::Down), Complex64::ZERO);
        assert_close(reflected.amplitude(-1, Direction::Side), Complex64::ONE);
    }

    #[test]
    fn t2_splits_single_mode_evenly() {
        let seed = LineState::from_modes(0, &[(0, Direction::Down, Complex64::ONE)]).unwrap();
        let line = apply_t2(&seed, None, None);
        assert_close(
            line.amplitude(1, Direction::Down),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        );
        assert_close(
            line.amplitude(-1, Direction::Side),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        );
    }

    #[test]
    fn t2_second_line_quarters() {
        let line = symmetric_line(2);
        for (k, dir) in [
            (2, Direction::Down),
            (0, Direction::Down),
            (0, Direction::Side),
            (-2, Direction::Side),
        ] {
            assert!((line.amplitude(k, dir).norm_sqr() - 0.25).abs() < TOL);
        }
        assert_close(line.amplitude(2, Direction::Side), Complex64::ZERO);
        assert_close(line.amplitude(-2, Direction::Down), Complex64::ZERO);
    }

    #[test]
    fn fourth_line_mode_magnitudes() {
        // Squared magnitudes {1,1,5,1,1,5,1,1}/16 over the eight modes in
        // ascending node order, Side listed at the lower edge first.
        let line = symmetric_line(4);
        let expected = [
            (-4, Direction::Side, 1.0 / 16.0),
            (-2, Direction::Down, 1.0 / 16.0),
            (-2, Direction::Side, 5.0 / 16.0),
            (0, Direction::Down, 1.0 / 16.0),
            (0, Direction::Side, 1.0 / 16.0),
            (2, Direction::Down, 5.0 / 16.0),
            (2, Direction::Side, 1.0 / 16.0),
            (4, Direction::Down, 1.0 / 16.0),
        ];
        for (k, dir, want) in expected {
            assert!(
                (line.amplitude(k, dir).norm_sqr() - want).abs() < TOL,
                "mode ({k}, {dir:?})"
            );
        }
    }

    #[test]
    fn fourth_line_photon_distribution() {
        let dist = photon_distribution(&symmetric_line(4));
        assert!((dist.value(-4) - 1.0 / 16.0).abs() < TOL);
        assert!((dist.value(-2) - 3.0 / 8.0).abs() < TOL);
        assert!((dist.value(0) - 1.0 / 8.0).abs() < TOL);
        assert!((dist.value(2) - 3.0 / 8.0).abs() < TOL);
        assert!((dist.value(4) - 1.0 / 16.0).abs() < TOL);
    }

    #[test]
    fn first_line_is_even_split() {
        let dist = photon_distribution(&apply_t1(BeamSplitterParams::symmetric()));
        assert!((dist.value(1) - 0.5).abs() < TOL);
        assert!((dist.value(-1) - 0.5).abs() < TOL);
    }

    #[test]
    fn propagate_one_step_is_t1() {
        let params = BeamSplitterParams::new(1.0, 0.5).unwrap();
        assert_eq!(propagate(1, params, None).unwrap(), apply_t1(params));
    }

    #[test]
    fn propagate_rejects_zero_steps() {
        assert_eq!(
            propagate(0, BeamSplitterParams::symmetric(), None),
            Err(Error::NoSteps)
        );
    }

    #[test]
    fn propagate_checks_noise_length() {
        let noise = NoiseRealization::Sequence(vec![StepNoise::default(); 2]);
        assert_eq!(
            propagate(5, BeamSplitterParams::symmetric(), Some(&noise)),
            Err(Error::NoiseLengthMismatch {
                expected: 4,
                got: 2
            })
        );
    }

    #[test]
    fn long_walk_stays_unitary() {
        let line = symmetric_line(200);
        assert!((line.total_intensity() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scale_to_input_examples() {
        let dist = photon_distribution(&symmetric_line(4));
        let unit = scale_to_input(&dist, 1.0).unwrap();
        for (k, v) in &unit {
            assert!((v - dist.value(*k)).abs() < TOL);
        }
        let dark = scale_to_input(&dist, 0.0).unwrap();
        assert!(dark.iter().all(|&(_, v)| v == 0.0));
        let four = scale_to_input(&dist, 4.0).unwrap();
        let at_zero = four.iter().find(|&&(k, _)| k == 0).unwrap().1;
        assert!((at_zero - 0.5).abs() < TOL);
        assert!(scale_to_input(&dist, -1.0).is_err());
    }

    #[test]
    fn from_modes_rejects_bad_modes() {
        let one = Complex64::ONE;
        // wrong parity
        assert!(LineState::from_modes(2, &[(1, Direction::Down, one)]).is_err());
        // off the line
        assert!(LineState::from_modes(2, &[(4, Direction::Down, one)]).is_err());
        // edge slot that cannot exist
        assert!(LineState::from_modes(2, &[(2, Direction::Side, one)]).is_err());
        assert!(LineState::from_modes(2, &[(-2, Direction::Down, one)]).is_err());
        // duplicate
        assert!(LineState::from_modes(
            2,
            &[(0, Direction::Down, one), (0, Direction::Down, one)]
        )
        .is_err());
    }

    #[test]
    fn final_line_phases_leave_distribution_unchanged() {
        let line = symmetric_line(6);
        let before = photon_distribution(&line);
        let mut shifted = line;
        let mut phase = 0.3;
        for k in (-6..=6).step_by(2) {
            shifted.apply_phase(k, Direction::Down, phase);
            shifted.apply_phase(k, Direction::Side, 2.0 * phase);
            phase += 0.7;
        }
        let after = photon_distribution(&shifted);
        for ((_, a), (_, b)) in before.sites().zip(after.sites()) {
            assert!((a - b).abs() < TOL);
        }
    }

    proptest! {
        #[test]
        fn unitarity_for_any_splitter(
            theta in 0.0..=PI,
            phi_scale in -1.0f64..1.0,
            n in 1usize..40,
        ) {
            // -phi_scale * PI covers (-pi, pi]
            let params = BeamSplitterParams::new(theta, -phi_scale * PI).unwrap();
            let line = propagate(n, params, None).unwrap();
            prop_assert!((line.total_intensity() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn occupied_sites_match_line_parity(n in 1usize..30) {
            let dist = photon_distribution(&symmetric_line(n));
            for (k, v) in dist.sites() {
                prop_assert_eq!((k - n as i64) % 2, 0);
                prop_assert!(v >= 0.0);
            }
            // holes stay empty
            for k in -(n as i64)..=(n as i64) {
                if (k - n as i64) % 2 != 0 {
                    prop_assert_eq!(dist.value(k), 0.0);
                }
            }
        }
    }
}
