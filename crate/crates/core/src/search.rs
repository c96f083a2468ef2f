//! Grid search over β: run the pipeline at every grid point and keep the
//! outcome with the smallest Anderson-Darling statistic.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::matrix::FeatureMatrix;
use crate::stats::sample_skewness;
use crate::transform::{pipeline_single_beta, TransformConfig, TransformOutcome};

pub use crate::transform::default_grid;

/// Features shorter than this skip the search and get β = 0.
pub const MIN_SEARCH_LEN: usize = 8;

/// Per-feature selection record.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FeatureReport {
    pub feature_name: String,
    pub chosen_beta: f64,
    /// A² at β = 0.
    pub ad_before: f64,
    /// A² at the chosen β.
    pub ad_after: f64,
    /// `None` when the raw feature is constant.
    pub skewness_before: Option<f64>,
    pub skewness_after: Option<f64>,
    pub winsorised_count: usize,
    #[cfg_attr(feature = "serde", serde(rename = "threshold_L"))]
    pub threshold_l: Option<f64>,
    pub degenerate: bool,
    /// Number of finite values that entered the search.
    pub n: usize,
    /// `n` was below [`MIN_SEARCH_LEN`]; the feature was only standardized.
    pub short_sample: bool,
}

/// Ranking of a candidate β. Lower is better: smaller A², then smaller |β|,
/// then the sign that agrees with the skewness of the raw feature, then
/// positive β (only reachable when the skewness is exactly zero).
fn rank(a: &TransformOutcome, b: &TransformOutcome, skew: f64) -> Ordering {
    let sign_rank = |beta: f64| -> u8 {
        if beta == 0.0 || (beta > 0.0 && skew > 0.0) || (beta < 0.0 && skew < 0.0) {
            0
        } else {
            1
        }
    };
    a.ad_stat
        .total_cmp(&b.ad_stat)
        .then(a.beta.abs().total_cmp(&b.beta.abs()))
        .then(sign_rank(a.beta).cmp(&sign_rank(b.beta)))
        .then(b.beta.total_cmp(&a.beta))
}

/// Runs every β in `cfg`'s grid on `x` and returns the report together with
/// the transformed vector of the winning β.
///
/// `x` must be finite. Constant features come back as zeros with
/// `degenerate` set and β = 0.
pub fn select_beta(name: &str, x: &[f64], cfg: &TransformConfig) -> (FeatureReport, Vec<f64>) {
    let skew = sample_skewness(x).ok();
    let baseline = pipeline_single_beta(x, 0.0, cfg);
    let short_sample = x.len() < MIN_SEARCH_LEN;

    let mut best = baseline.clone();
    if !short_sample && !baseline.degenerate {
        let s = skew.unwrap_or(0.0);
        let allowed = |beta: f64| {
            !cfg.restrict_by_skewness() || (beta > 0.0 && s > 0.0) || (beta < 0.0 && s < 0.0)
        };
        for &beta in cfg.beta_grid() {
            if beta == 0.0 || !allowed(beta) {
                continue;
            }
            let candidate = pipeline_single_beta(x, beta, cfg);
            if rank(&candidate, &best, s) == Ordering::Less {
                best = candidate;
            }
        }
    }

    let report = FeatureReport {
        feature_name: name.into(),
        chosen_beta: best.beta,
        ad_before: baseline.ad_stat,
        ad_after: best.ad_stat,
        skewness_before: skew,
        skewness_after: sample_skewness(&best.transformed).ok(),
        winsorised_count: best.winsorised_count,
        threshold_l: best.threshold,
        degenerate: baseline.degenerate,
        n: x.len(),
        short_sample,
    };
    (report, best.transformed)
}

/// [`select_beta`] on a feature that may contain non-finite entries. Those
/// are left out of every statistic and returned unchanged in place.
pub fn transform_feature(
    name: &str,
    values: &[f64],
    cfg: &TransformConfig,
) -> (FeatureReport, Vec<f64>) {
    if values.iter().all(|v| v.is_finite()) {
        return select_beta(name, values, cfg);
    }
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    let (report, transformed) = select_beta(name, &finite, cfg);
    let mut it = transformed.into_iter();
    let out = values
        .iter()
        .map(|&v| {
            if v.is_finite() {
                it.next().unwrap_or(v)
            } else {
                v
            }
        })
        .collect();
    (report, out)
}

/// Applies [`transform_feature`] to every feature row. Shape, names and
/// order are preserved and the reports line up with the rows.
pub fn transform_matrix(
    m: &FeatureMatrix,
    cfg: &TransformConfig,
) -> (FeatureMatrix, Vec<FeatureReport>) {
    let (reports, rows): (Vec<_>, Vec<_>) = m
        .features()
        .map(|(name, values)| transform_feature(name, values, cfg))
        .unzip();
    (m.with_values(rows), reports)
}
