//! The shifted-logarithm family and the per-β standardize/winsorise pipeline.
//!
//! For a feature `x` with range `R = max - min` the family is
//!
//! * `β > 0`: `ln(x_i - min + R/|β|)` (concave, pulls in a right tail)
//! * `β < 0`: `-ln(max - x_i + R/|β|)` (convex, pulls in a left tail)
//! * `β = 0`: identity
//!
//! Every branch is strictly increasing, and the shift `R/|β|` makes the
//! family equivariant under `a·x + b` for `a > 0`. After the transform the
//! vector is centered on its median and scaled by its mean absolute
//! deviation from the median, clipped at the Gumbel threshold `L`, and
//! re-standardized by mean and standard deviation if anything was clipped.

use alloc::vec;
use alloc::vec::Vec;

use crate::adstat::anderson_darling;
use crate::error::{Error, Result};
use crate::stats::{gumbel_quantile, mean_abs_dev_about, mean_and_std, median_sorted, sorted};

pub const DEFAULT_GUMBEL_PERCENTILE: f64 = 0.95;

/// Grid magnitudes of the default search grid; each is used with both signs.
pub const DEFAULT_GRID_MAGNITUDES: [f64; 13] = [
    0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0,
];

/// `{0} ∪ {±g}` over [`DEFAULT_GRID_MAGNITUDES`], in ascending order (27 values).
pub fn default_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = DEFAULT_GRID_MAGNITUDES.iter().rev().map(|g| -g).collect();
    grid.push(0.0);
    grid.extend_from_slice(&DEFAULT_GRID_MAGNITUDES);
    grid
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TransformConfig {
    beta_grid: Vec<f64>,
    winsorise: bool,
    gumbel_percentile: f64,
    restrict_by_skewness: bool,
}

impl Default for TransformConfig {
    fn default() -> Self {
        Self {
            beta_grid: default_grid(),
            winsorise: true,
            gumbel_percentile: DEFAULT_GUMBEL_PERCENTILE,
            restrict_by_skewness: false,
        }
    }
}

impl TransformConfig {
    /// Builds a config, checking that the grid holds distinct finite values
    /// with exactly one zero and that the percentile lies in (0, 1).
    pub fn new(beta_grid: Vec<f64>, winsorise: bool, gumbel_percentile: f64) -> Result<Self> {
        if !(gumbel_percentile > 0.0 && gumbel_percentile < 1.0) {
            return Err(Error::Domain("gumbel percentile must lie in (0, 1)"));
        }
        if beta_grid.iter().any(|b| !b.is_finite()) {
            return Err(Error::Invalid("beta grid values must be finite".into()));
        }
        if beta_grid.iter().filter(|&&b| b == 0.0).count() != 1 {
            return Err(Error::Invalid(
                "beta grid must contain 0 exactly once".into(),
            ));
        }
        let mut s = beta_grid.clone();
        s.sort_unstable_by(f64::total_cmp);
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("beta grid values must be distinct".into()));
        }
        Ok(Self {
            beta_grid,
            winsorise,
            gumbel_percentile,
            restrict_by_skewness: false,
        })
    }

    /// Only try β whose sign matches the sample skewness (plus β = 0).
    pub fn with_restrict_by_skewness(mut self, on: bool) -> Self {
        self.restrict_by_skewness = on;
        self
    }

    pub fn beta_grid(&self) -> &[f64] {
        &self.beta_grid
    }

    pub fn winsorise(&self) -> bool {
        self.winsorise
    }

    pub fn gumbel_percentile(&self) -> f64 {
        self.gumbel_percentile
    }

    pub fn restrict_by_skewness(&self) -> bool {
        self.restrict_by_skewness
    }
}

/// Result of the full pipeline at one β.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformOutcome {
    pub beta: f64,
    /// Final vector in standardized units.
    pub transformed: Vec<f64>,
    /// A² of `transformed`; `+inf` for a degenerate outcome at β ≠ 0.
    pub ad_stat: f64,
    pub winsorised_count: usize,
    /// Clipping threshold `L`, when winsorisation is enabled and `n ≥ 2`.
    pub threshold: Option<f64>,
    /// Zero range or zero spread: `transformed` is all zeros.
    pub degenerate: bool,
}

/// Applies `φ_β` elementwise (natural log).
pub fn shifted_log_transform(x: &[f64], beta: f64) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(Error::DegenerateInput("empty feature"));
    }
    if !beta.is_finite() {
        return Err(Error::Domain("beta must be finite"));
    }
    if beta == 0.0 {
        return Ok(x.to_vec());
    }
    let (lo, hi) = x
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let range = hi - lo;
    if range == 0.0 {
        return Err(Error::DegenerateInput("zero range"));
    }
    let shift = range / libm::fabs(beta);
    let out = if beta > 0.0 {
        x.iter().map(|&v| libm::log((v - lo) + shift)).collect()
    } else {
        x.iter().map(|&v| -libm::log((hi - v) + shift)).collect()
    };
    Ok(out)
}

/// Centers on the median and divides by the mean absolute deviation from
/// the median. A zero deviation yields the zero vector.
pub fn standardize_median_mad(x: &[f64]) -> Vec<f64> {
    if x.is_empty() {
        return Vec::new();
    }
    let med = median_sorted(&sorted(x));
    let mad = mean_abs_dev_about(x, med);
    if mad == 0.0 {
        return vec![0.0; x.len()];
    }
    x.iter().map(|&v| (v - med) / mad).collect()
}

/// Extreme-value clipping threshold `L = G⁻¹(p)·a_n + b_n` for the maximum
/// of `n` standard normals, with
/// `a_n = (2 ln n)^(-1/2)` and
/// `b_n = (2 ln n)^(1/2) - (ln ln n + ln 4π) / (2 ln n)^(1/2)`.
pub fn gumbel_threshold(n: usize, p: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain("gumbel threshold needs n >= 2"));
    }
    let q = gumbel_quantile(p)?;
    let ln_n = libm::log(n as f64);
    let root = libm::sqrt(2.0 * ln_n);
    let a_n = 1.0 / root;
    let b_n = root - (libm::log(ln_n) + libm::log(4.0 * core::f64::consts::PI)) / root;
    Ok(q * a_n + b_n)
}

/// Pulls every `|x_i| > limit` back to `sign(x_i)·limit`; returns the
/// clipped vector and the number of modified elements.
pub fn winsorise(x: &[f64], limit: f64) -> (Vec<f64>, usize) {
    let mut count = 0;
    let out = x
        .iter()
        .map(|&v| {
            if libm::fabs(v) > limit {
                count += 1;
                libm::copysign(limit, v)
            } else {
                v
            }
        })
        .collect();
    (out, count)
}

fn degenerate_outcome(n: usize, beta: f64, threshold: Option<f64>) -> TransformOutcome {
    let zeros = vec![0.0; n];
    let ad_stat = if beta == 0.0 {
        anderson_darling(&zeros)
    } else {
        f64::INFINITY
    };
    TransformOutcome {
        beta,
        transformed: zeros,
        ad_stat,
        winsorised_count: 0,
        threshold,
        degenerate: true,
    }
}

/// Transform, standardize, winsorise, conditionally re-standardize and score
/// `x` at a single β. Degenerate inputs come back flagged, never as errors.
pub fn pipeline_single_beta(x: &[f64], beta: f64, cfg: &TransformConfig) -> TransformOutcome {
    let n = x.len();
    let threshold = if cfg.winsorise && n >= 2 {
        gumbel_threshold(n, cfg.gumbel_percentile).ok()
    } else {
        None
    };
    let Ok(phi) = shifted_log_transform(x, beta) else {
        return degenerate_outcome(n, beta, threshold);
    };
    let sorted_phi = sorted(&phi);
    let med = median_sorted(&sorted_phi);
    let mad = mean_abs_dev_about(&phi, med);
    if mad == 0.0 || !mad.is_finite() {
        return degenerate_outcome(n, beta, threshold);
    }
    let dagger: Vec<f64> = phi.iter().map(|&v| (v - med) / mad).collect();

    let (clipped, winsorised_count) = match threshold {
        Some(limit) => winsorise(&dagger, limit),
        None => (dagger, 0),
    };
    let transformed = if winsorised_count > 0 {
        match mean_and_std(&clipped) {
            Ok((m, s)) if s > 0.0 => clipped.iter().map(|&v| (v - m) / s).collect(),
            _ => return degenerate_outcome(n, beta, threshold),
        }
    } else {
        clipped
    };
    let ad_stat = anderson_darling(&transformed);
    TransformOutcome {
        beta,
        transformed,
        ad_stat,
        winsorised_count,
        threshold,
        degenerate: false,
    }
}
