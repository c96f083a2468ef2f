//! File formats, plotting, parallel driver and command line for
//! [`autonorm_core`].

pub mod cli;
mod error;
pub mod parallel;
pub mod render;
pub mod report;
pub mod table;

pub use error::{Error, Result};
