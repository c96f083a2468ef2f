//! Automatic per-feature transformation toward normality.
//!
//! Each feature (a row of a data matrix) is pushed through a one-parameter
//! family of shifted logarithms, standardized by median and mean absolute
//! deviation, winsorised at an extreme-value threshold and scored with the
//! Anderson-Darling statistic against the standard normal. The parameter
//! with the smallest statistic wins.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, rendering,
//! parallel drivers and the command line live in the `autonorm` crate.
//!
//! ```
//! use autonorm_core::{search::select_beta, transform::TransformConfig};
//!
//! let x: Vec<f64> = (1..=200).map(|i| (i as f64 / 40.0).exp()).collect();
//! let (report, transformed) = select_beta("f0", &x, &TransformConfig::default());
//! assert!(report.ad_after <= report.ad_before);
//! assert_eq!(transformed.len(), x.len());
//! ```

#![no_std]

extern crate alloc;

pub mod adstat;
pub mod diagnostics;
mod error;
pub mod matrix;
pub mod normal;
pub mod search;
pub mod stats;
pub mod transform;

pub use error::{Error, Result};
pub use matrix::{FeatureMatrix, Orientation};
pub use search::FeatureReport;
pub use transform::{TransformConfig, TransformOutcome};
