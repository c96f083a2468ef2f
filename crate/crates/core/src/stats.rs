//! Descriptive statistics shared by the transform, search and diagnostics code.
//!
//! Conventions: the median of an even-length sample is the midpoint of the two
//! central order statistics, and the sample standard deviation uses the
//! `n - 1` divisor.

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Skewness `m3 / m2^(3/2)` with `1/n`-normalized central moments.
pub fn sample_skewness(x: &[f64]) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::DegenerateInput("skewness needs at least two values"));
    }
    let n = x.len() as f64;
    let m = mean(x);
    let (m2, m3) = x.iter().fold((0.0, 0.0), |(s2, s3), &v| {
        let d = v - m;
        let d2 = d * d;
        (s2 + d2, s3 + d2 * d)
    });
    let (m2, m3) = (m2 / n, m3 / n);
    if m2 == 0.0 {
        return Err(Error::DegenerateInput("skewness of a constant vector"));
    }
    Ok(m3 / (m2 * libm::sqrt(m2)))
}

pub(crate) fn sorted(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    v
}

/// Median of an already sorted, non-empty slice.
pub(crate) fn median_sorted(s: &[f64]) -> f64 {
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / 2.0
    }
}

/// Sample median. Panics on an empty slice.
pub fn median(x: &[f64]) -> f64 {
    assert!(!x.is_empty(), "median of an empty slice");
    median_sorted(&sorted(x))
}

/// `(1/n) Σ |x_i - median(x)|`.
pub fn mean_abs_dev_from_median(x: &[f64]) -> f64 {
    let med = median(x);
    mean_abs_dev_about(x, med)
}

pub(crate) fn mean_abs_dev_about(x: &[f64], center: f64) -> f64 {
    x.iter().map(|&v| libm::fabs(v - center)).sum::<f64>() / x.len() as f64
}

/// Sample mean and standard deviation (divisor `n - 1`).
pub fn mean_and_std(x: &[f64]) -> Result<(f64, f64)> {
    if x.len() < 2 {
        return Err(Error::DegenerateInput(
            "standard deviation needs at least two values",
        ));
    }
    let m = mean(x);
    let ss: f64 = x.iter().map(|&v| (v - m) * (v - m)).sum();
    Ok((m, libm::sqrt(ss / (x.len() - 1) as f64)))
}

/// Linearly interpolated quantile of a sorted slice (the `(n - 1) p` rule).
pub(crate) fn quantile_sorted(s: &[f64], p: f64) -> f64 {
    let h = (s.len() - 1) as f64 * p;
    let lo = libm::floor(h) as usize;
    let hi = (lo + 1).min(s.len() - 1);
    s[lo] + (h - lo as f64) * (s[hi] - s[lo])
}

/// Standard Gumbel CDF `exp(-exp(-x))`.
pub fn gumbel_cdf(x: f64) -> f64 {
    libm::exp(-libm::exp(-x))
}

/// Inverse of the standard Gumbel CDF, `-ln(-ln p)`.
pub fn gumbel_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain("gumbel quantile needs p in (0, 1)"));
    }
    Ok(-libm::log(-libm::log(p)))
}
