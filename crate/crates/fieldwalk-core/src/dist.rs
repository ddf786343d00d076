//! Real-valued data on the sites of a line after a fixed number of steps.
//!
//! After `n` steps a walker can only occupy sites `k` with `|k| <= n` and
//! `k ≡ n (mod 2)`. Values are stored densely over `[-n, n]` with the
//! parity holes kept as exact zeros, so lookups by site are O(1).

use crate::error::{Error, Result};

/// Non-negative values indexed by site on a line, dense over `[-steps, steps]`.
///
/// Used both for normalized distributions (position probabilities, mean
/// photon-number fractions) and for per-site statistics such as standard
/// errors; normalization is checked by consumers that require it.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteDistribution {
    steps: usize,
    values: Vec<f64>,
}

impl SiteDistribution {
    /// Builds from a dense value vector of length `2 * steps + 1`, index `i`
    /// holding the value at site `i - steps`.
    pub fn from_dense(steps: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != 2 * steps + 1 {
            return Err(Error::InvalidValue(values.len() as f64));
        }
        for &v in &values {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidValue(v));
            }
        }
        Ok(Self { steps, values })
    }

    /// Builds from `(site, value)` pairs; unlisted sites are zero.
    pub fn from_sites(steps: usize, sites: &[(i64, f64)]) -> Result<Self> {
        let mut values = vec![0.0; 2 * steps + 1];
        let bound = steps as i64;
        for &(k, v) in sites {
            if k.unsigned_abs() as usize > steps || (k - bound) % 2 != 0 {
                return Err(Error::InvalidMode {
                    step: steps,
                    node: k,
                    dir: "site",
                });
            }
            values[(k + bound) as usize] = v;
        }
        Self::from_dense(steps, values)
    }

    pub(crate) fn zeros(steps: usize) -> Self {
        Self {
            steps,
            values: vec![0.0; 2 * steps + 1],
        }
    }

    pub(crate) fn set(&mut self, site: i64, value: f64) {
        let idx = (site + self.steps as i64) as usize;
        self.values[idx] = value;
    }

    /// Number of steps taken; also the largest reachable |site|.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Parity (0 or 1) shared by all occupied sites.
    pub fn parity(&self) -> usize {
        self.steps % 2
    }

    /// Value at `site`; zero outside `[-steps, steps]`.
    pub fn value(&self, site: i64) -> f64 {
        if site.unsigned_abs() as usize > self.steps {
            return 0.0;
        }
        self.values[(site + self.steps as i64) as usize]
    }

    /// Dense values over `[-steps, steps]`, parity holes included.
    pub fn dense(&self) -> &[f64] {
        &self.values
    }

    /// Occupied sites in ascending order with their values.
    ///
    /// Yields exactly the sites matching the line parity, holes skipped.
    pub fn sites(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let n = self.steps as i64;
        (-n..=n)
            .filter(move |k| (k - n) % 2 == 0)
            .map(move |k| (k, self.value(k)))
    }

    /// Sum of all values.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}
