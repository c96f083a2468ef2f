use autonorm_core::search::transform_feature;
use autonorm_core::{FeatureMatrix, FeatureReport, TransformConfig};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// `transform_matrix` with features spread over a pool of `threads`
/// workers. Results are collected in feature order, so the output does not
/// depend on the thread count.
pub fn transform_matrix_parallel(
    m: &FeatureMatrix,
    cfg: &TransformConfig,
    threads: usize,
) -> Result<(FeatureMatrix, Vec<FeatureReport>)> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {threads} worker threads: {e}")))?;
    let features: Vec<(&str, &[f64])> = m.features().collect();
    let (reports, rows): (Vec<_>, Vec<_>) = pool.install(|| {
        features
            .par_iter()
            .map(|(name, values)| transform_feature(name, values, cfg))
            .collect::<Vec<_>>()
            .into_iter()
            .unzip()
    });
    Ok((m.with_values(rows), reports))
}
