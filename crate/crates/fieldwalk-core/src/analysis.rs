//! Statistics and comparisons over site distributions, plus element
//! counts for the two hardware layouts.

use crate::dist::SiteDistribution;
use crate::error::{Error, Result};

/// Tolerance inside which a distribution is renormalized instead of
/// rejected.
const NORMALIZATION_TOL: f64 = 1e-6;

/// First and second moments over the site index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
}

/// Mean, variance and standard deviation of a distribution over sites.
///
/// The input must sum to 1 within 1e-6; it is renormalized before the
/// moments are taken.
pub fn moments(dist: &SiteDistribution) -> Result<Moments> {
    let total = dist.total();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotADistribution(total));
    }
    let mean: f64 = dist.sites().map(|(k, v)| k as f64 * v).sum::<f64>() / total;
    let variance: f64 = dist
        .sites()
        .map(|(k, v)| {
            let dev = k as f64 - mean;
            dev * dev * v
        })
        .sum::<f64>()
        / total;
    Ok(Moments {
        mean,
        variance,
        std_dev: variance.sqrt(),
    })
}

/// Total variation distance: half the L1 distance over the union of the
/// two supports, parity holes counting as zeros.
///
/// The distributions must live on sites of the same parity and each sum
/// to 1 within 1e-6 (they are renormalized).
pub fn tv_distance(p: &SiteDistribution, q: &SiteDistribution) -> Result<f64> {
    if p.parity() != q.parity() {
        return Err(Error::ParityMismatch);
    }
    let (pt, qt) = (p.total(), q.total());
    for total in [pt, qt] {
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotADistribution(total));
        }
    }
    let bound = p.steps().max(q.steps()) as i64;
    let parity = p.parity() as i64;
    let mut sum = 0.0;
    let mut k = -bound + (bound + parity).rem_euclid(2);
    while k <= bound {
        sum += (p.value(k) / pt - q.value(k) / qt).abs();
        k += 2;
    }
    Ok(sum / 2.0)
}

/// Max-to-mean ratio of the values on the occupied sites inside
/// `[lo, hi]` (clipped to the support); 1 means perfectly flat.
pub fn flatness(dist: &SiteDistribution, lo: i64, hi: i64) -> Result<f64> {
    let bound = dist.steps() as i64;
    let lo = lo.max(-bound);
    let hi = hi.min(bound);
    let occupied: Vec<f64> = dist
        .sites()
        .filter(|&(k, _)| k >= lo && k <= hi)
        .map(|(_, v)| v)
        .collect();
    if occupied.is_empty() {
        return Err(Error::EmptyRegion { lo, hi });
    }
    let mean = occupied.iter().sum::<f64>() / occupied.len() as f64;
    let max = occupied.iter().cloned().fold(0.0f64, f64::max);
    if mean == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(max / mean)
}

/// Comparison window for flatness checks: `[-ceil(n/sqrt(2)),
/// +ceil(n/sqrt(2))]`, the region the spread-out walk fills.
pub fn default_flat_region(steps: usize) -> (i64, i64) {
    let bound = (steps as f64 / std::f64::consts::SQRT_2).ceil() as i64;
    (-bound, bound)
}

/// Poisson weight `e^{-mu} mu^n / n!` of detecting `n` photons in a
/// field with mean photon number `mu`.
pub fn poisson_photon_probability(mean_photons: f64, n: u32) -> Result<f64> {
    if !mean_photons.is_finite() || mean_photons < 0.0 {
        return Err(Error::NegativeMeanPhotons(mean_photons));
    }
    let mut p = (-mean_photons).exp();
    for i in 1..=n {
        p *= mean_photons / i as f64;
    }
    Ok(p)
}

/// Hardware layout realizing the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// One row of elements per step; element count grows quadratically.
    DynamicLine,
    /// Folded loop with acousto-optic switches; element count grows
    /// linearly.
    AomLoop,
}

impl std::fmt::Display for Layout {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Layout::DynamicLine => write!(f, "line"),
            Layout::AomLoop => write!(f, "aom"),
        }
    }
}

/// Optical element tallies for a walk of `n_steps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceCount {
    pub layout: Layout,
    pub n_steps: usize,
    pub beam_splitters: u64,
    pub phase_shifters: u64,
    pub aoms: u64,
    pub detectors: u64,
}

/// Element tallies per layout.
///
/// The dynamic line uses the input splitter plus one step block (one
/// splitter, two shifters) per occupied node per transition, edge nodes
/// included, and one detector per final node. The loop layout reuses one
/// block per step with two switches each, plus the two detector rows.
pub fn resource_count(n_steps: usize, layout: Layout) -> Result<ResourceCount> {
    if n_steps == 0 {
        return Err(Error::NoSteps);
    }
    let n = n_steps as u64;
    let count = match layout {
        Layout::DynamicLine => {
            let blocks = (n - 1) * (n + 2) / 2;
            ResourceCount {
                layout,
                n_steps,
                beam_splitters: 1 + blocks,
                phase_shifters: 2 * blocks,
                aoms: 0,
                detectors: n + 1,
            }
        }
        Layout::AomLoop => ResourceCount {
            layout,
            n_steps,
            beam_splitters: n,
            phase_shifters: 2 * n,
            aoms: 2 * n,
            detectors: 2 * n + 1,
        },
    };
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::classical_distribution;
    use proptest::prelude::*;

    fn quantum_four() -> SiteDistribution {
        SiteDistribution::from_sites(
            4,
            &[
                (-4, 1.0 / 16.0),
                (-2, 3.0 / 8.0),
                (0, 1.0 / 8.0),
                (2, 3.0 / 8.0),
                (4, 1.0 / 16.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn moments_of_classical_walk() {
        let m = moments(&classical_distribution(200)).unwrap();
        assert!(m.mean.abs() < 1e-9);
        assert!((m.std_dev - 200.0f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn moments_of_fourth_step_walk() {
        let m = moments(&quantum_four()).unwrap();
        assert!(m.mean.abs() < 1e-12);
        assert!((m.variance - 5.0).abs() < 1e-12);
        assert!((m.std_dev - 5.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn moments_of_point_mass() {
        let point = SiteDistribution::from_sites(0, &[(0, 1.0)]).unwrap();
        let m = moments(&point).unwrap();
        assert_eq!((m.mean, m.variance, m.std_dev), (0.0, 0.0, 0.0));
    }

    #[test]
    fn moments_reject_unnormalized() {
        let bad = SiteDistribution::from_sites(1, &[(1, 0.3)]).unwrap();
        assert!(matches!(moments(&bad), Err(Error::NotADistribution(_))));
    }

    #[test]
    fn tv_identical_is_zero() {
        let d = quantum_four();
        assert_eq!(tv_distance(&d, &d).unwrap(), 0.0);
    }

    #[test]
    fn tv_disjoint_point_masses_is_one() {
        let origin = SiteDistribution::from_sites(0, &[(0, 1.0)]).unwrap();
        let far = SiteDistribution::from_sites(2, &[(2, 1.0)]).unwrap();
        assert!((tv_distance(&origin, &far).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tv_quantum_vs_classical_at_four_steps() {
        // |1/16-1/16|*2 + |3/8-1/4|*2 + |1/8-3/8| halves to 1/4
        let tv = tv_distance(&quantum_four(), &classical_distribution(4)).unwrap();
        assert!((tv - 0.25).abs() < 1e-12);
    }

    #[test]
    fn tv_rejects_parity_mismatch() {
        let even = quantum_four();
        let odd = classical_distribution(3);
        assert_eq!(tv_distance(&even, &odd), Err(Error::ParityMismatch));
    }

    #[test]
    fn flatness_uniform_and_point_mass() {
        let uniform = SiteDistribution::from_sites(4, &[(-4, 0.2), (-2, 0.2), (0, 0.2), (2, 0.2), (4, 0.2)])
            .unwrap();
        assert!((flatness(&uniform, -4, 4).unwrap() - 1.0).abs() < 1e-12);

        let point = SiteDistribution::from_sites(4, &[(0, 1.0)]).unwrap();
        // five occupied sites in the window
        assert!((flatness(&point, -4, 4).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn flatness_rejects_empty_region() {
        let d = quantum_four();
        assert!(matches!(
            flatness(&d, 10, 20),
            Err(Error::EmptyRegion { .. })
        ));
    }

    #[test]
    fn default_region_covers_the_spread() {
        assert_eq!(default_flat_region(200), (-142, 142));
        assert_eq!(default_flat_region(4), (-3, 3));
    }

    #[test]
    fn poisson_values() {
        assert!((poisson_photon_probability(1.0, 1).unwrap() - 0.3679).abs() < 1e-4);
        assert_eq!(poisson_photon_probability(0.0, 0).unwrap(), 1.0);
        assert!((poisson_photon_probability(2.0, 0).unwrap() - (-2.0f64).exp()).abs() < 1e-15);
        assert!(poisson_photon_probability(-1.0, 0).is_err());
    }

    #[test]
    fn resource_counts_match_layouts() {
        let line4 = resource_count(4, Layout::DynamicLine).unwrap();
        assert_eq!(line4.beam_splitters, 10);
        assert_eq!(line4.phase_shifters, 18);
        assert_eq!(line4.aoms, 0);
        assert_eq!(line4.detectors, 5);

        let line1 = resource_count(1, Layout::DynamicLine).unwrap();
        assert_eq!(line1.beam_splitters, 1);
        assert_eq!(line1.phase_shifters, 0);
        assert_eq!(line1.detectors, 2);

        let aom10 = resource_count(10, Layout::AomLoop).unwrap();
        assert_eq!(aom10.beam_splitters, 10);
        assert_eq!(aom10.phase_shifters, 20);
        assert_eq!(aom10.aoms, 20);
        assert_eq!(aom10.detectors, 21);

        assert_eq!(resource_count(0, Layout::AomLoop), Err(Error::NoSteps));
    }

    #[test]
    fn loop_layout_is_exactly_linear() {
        for n in 1..=100 {
            let c = resource_count(n, Layout::AomLoop).unwrap();
            assert_eq!(c.beam_splitters, n as u64);
            assert_eq!(c.phase_shifters, 2 * n as u64);
            assert_eq!(c.aoms, 2 * n as u64);
        }
    }

    fn arb_dist(steps: usize) -> impl Strategy<Value = SiteDistribution> {
        prop::collection::vec(0.0f64..1.0, steps + 1).prop_filter_map(
            "normalizable",
            move |vals| {
                let total: f64 = vals.iter().sum();
                if total < 1e-6 {
                    return None;
                }
                let sites: Vec<(i64, f64)> = vals
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (2 * i as i64 - steps as i64, v / total))
                    .collect();
                Some(SiteDistribution::from_sites(steps, &sites).unwrap())
            },
        )
    }

    proptest! {
        #[test]
        fn tv_is_a_metric(
            (p, q, r) in (3usize..8).prop_flat_map(|s| (arb_dist(s), arb_dist(s), arb_dist(s)))
        ) {
            let pq = tv_distance(&p, &q).unwrap();
            let qp = tv_distance(&q, &p).unwrap();
            let pr = tv_distance(&p, &r).unwrap();
            let rq = tv_distance(&r, &q).unwrap();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&pq));
            prop_assert!((pq - qp).abs() < 1e-12);
            prop_assert!(tv_distance(&p, &p).unwrap() < 1e-12);
            prop_assert!(pq <= pr + rq + 1e-12);
        }
    }
}
