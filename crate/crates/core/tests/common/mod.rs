#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn normal(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn lognormal(n: usize, seed: u64) -> Vec<f64> {
    normal(n, seed).into_iter().map(f64::exp).collect()
}

pub fn uniform(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

pub fn neg(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| -v).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// (x - mean) / sd with the n - 1 divisor.
pub fn zscore(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let sd = (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    x.iter().map(|v| (v - m) / sd).collect()
}

/// Unoptimized A² in the single-index form
/// `-n - (1/n) Σ [(2i - 1) ln Φ(z_(i)) + (2n + 1 - 2i) ln(1 - Φ(z_(i)))]`,
/// with Φ and 1 - Φ taken straight from `erfc` and no tail handling.
pub fn naive_anderson_darling(z: &[f64]) -> f64 {
    let mut s = z.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = s.len() as f64;
    let mut total = 0.0;
    for (k, &v) in s.iter().enumerate() {
        let i = (k + 1) as f64;
        let cdf = 0.5 * libm::erfc(-v / std::f64::consts::SQRT_2);
        let sf = 0.5 * libm::erfc(v / std::f64::consts::SQRT_2);
        total += (2.0 * i - 1.0) * cdf.ln() + (2.0 * n + 1.0 - 2.0 * i) * sf.ln();
    }
    -n - total / n
}
