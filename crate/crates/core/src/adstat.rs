//! Anderson-Darling distance to the standard normal CDF.

use crate::normal::std_normal_log_cdf;
use crate::stats::sorted;

/// A² of `z` against N(0, 1), in the order-statistic form
///
/// `A² = -n - Σ (2i - 1)/n · [ln Φ(z_(i)) + ln(1 - Φ(z_(n+1-i)))]`.
///
/// Both log terms go through [`std_normal_log_cdf`], so no probability is
/// clamped and far-out order statistics keep their full weight. The input
/// is not modified; an empty slice gives 0.
pub fn anderson_darling(z: &[f64]) -> f64 {
    let s = sorted(z);
    let n = s.len();
    let nf = n as f64;
    let mut acc = 0.0;
    for i in 0..n {
        let weight = (2 * i + 1) as f64 / nf;
        acc += weight * (std_normal_log_cdf(s[i]) + std_normal_log_cdf(-s[n - 1 - i]));
    }
    -nf - acc
}
