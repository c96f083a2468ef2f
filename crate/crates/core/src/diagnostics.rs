//! Plot data for before/after comparisons: kernel density curves, normal QQ
//! points, jitter strips and pairwise scatter.

use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::normal::std_normal_quantile;
use crate::stats::{mean_and_std, quantile_sorted, sorted};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Kde,
    Qq,
    Scatter,
    Jitter,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Kde => "kde",
            SeriesKind::Qq => "qq",
            SeriesKind::Scatter => "scatter",
            SeriesKind::Jitter => "jitter",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlotSeries {
    pub kind: SeriesKind,
    pub points: Vec<(f64, f64)>,
    pub label: String,
}

/// Silverman's rule of thumb, `0.9·min(sd, IQR/1.34)·n^(-1/5)`.
///
/// Falls back to the standard deviation alone when the IQR is zero.
pub fn silverman_bandwidth(x: &[f64]) -> Result<f64> {
    let (_, sd) = mean_and_std(x)?;
    if sd == 0.0 {
        return Err(Error::DegenerateInput("bandwidth of a constant vector"));
    }
    let s = sorted(x);
    let iqr = quantile_sorted(&s, 0.75) - quantile_sorted(&s, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    Ok(0.9 * spread * libm::pow(x.len() as f64, -0.2))
}

/// Gaussian-kernel density estimate at `t` with bandwidth `h`.
pub fn kde_density(x: &[f64], h: f64, t: f64) -> f64 {
    let norm = 1.0 / (x.len() as f64 * h * libm::sqrt(2.0 * core::f64::consts::PI));
    norm * x
        .iter()
        .map(|&v| {
            let u = (t - v) / h;
            libm::exp(-0.5 * u * u)
        })
        .sum::<f64>()
}

/// Density curve on `eval_points` equispaced points over `[min - 3h, max + 3h]`.
pub fn kde_curve(x: &[f64], eval_points: usize, label: &str) -> Result<PlotSeries> {
    if eval_points < 2 {
        return Err(Error::Domain("kde needs at least two evaluation points"));
    }
    let h = silverman_bandwidth(x)?;
    let (lo, hi) = x
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let (a, b) = (lo - 3.0 * h, hi + 3.0 * h);
    let step = (b - a) / (eval_points - 1) as f64;
    let points = (0..eval_points)
        .map(|k| {
            let t = if k == eval_points - 1 {
                b
            } else {
                a + k as f64 * step
            };
            (t, kde_density(x, h, t))
        })
        .collect();
    Ok(PlotSeries {
        kind: SeriesKind::Kde,
        points,
        label: label.into(),
    })
}

/// Trapezoidal integral of a curve given as `(x, y)` points.
pub fn trapezoid(points: &[(f64, f64)]) -> f64 {
    points
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum()
}

/// Normal QQ pairs: `m` values drawn without replacement from `z` (all of
/// them when `m == n`), sorted, against `Φ⁻¹((i - 0.5)/m)`.
pub fn qq_points(z: &[f64], m: usize, seed: u64, label: &str) -> Result<PlotSeries> {
    if m < 2 {
        return Err(Error::Domain("qq plot needs at least two points"));
    }
    if m > z.len() {
        return Err(Error::Domain("qq subsample larger than the sample"));
    }
    let sample: Vec<f64> = if m == z.len() {
        z.to_vec()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx = rand::seq::index::sample(&mut rng, z.len(), m).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| z[i]).collect()
    };
    let mf = m as f64;
    let points = sorted(&sample)
        .into_iter()
        .enumerate()
        .map(|(i, v)| (std_normal_quantile((i as f64 + 0.5) / mf), v))
        .collect();
    Ok(PlotSeries {
        kind: SeriesKind::Qq,
        points,
        label: label.into(),
    })
}

/// Largest vertical distance of QQ points from the 45° line.
pub fn qq_max_deviation(series: &PlotSeries) -> f64 {
    series
        .points
        .iter()
        .map(|&(t, v)| libm::fabs(v - t))
        .fold(0.0, f64::max)
}

/// Data values against a height in (0, 1) taken from their position in the
/// input, for a strip under a density curve.
pub fn jitter_series(x: &[f64], label: &str) -> PlotSeries {
    let n = x.len() as f64;
    PlotSeries {
        kind: SeriesKind::Jitter,
        points: x
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, (i as f64 + 0.5) / n))
            .collect(),
        label: label.into(),
    }
}

pub fn scatter_series(x: &[f64], y: &[f64], label: &str) -> Result<PlotSeries> {
    if x.len() != y.len() {
        return Err(Error::Domain("scatter coordinates differ in length"));
    }
    Ok(PlotSeries {
        kind: SeriesKind::Scatter,
        points: x.iter().copied().zip(y.iter().copied()).collect(),
        label: label.into(),
    })
}
