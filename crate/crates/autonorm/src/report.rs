//! JSON run report: one record per feature plus an echo of every setting
//! needed to reproduce the run.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use autonorm_core::search::MIN_SEARCH_LEN;
use autonorm_core::{FeatureReport, Orientation, TransformConfig};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{NaPolicy, TableOptions};

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    #[serde(flatten)]
    pub transform: TransformConfig,
    pub min_search_len: usize,
    pub std_divisor: &'static str,
    pub even_median: &'static str,
    pub log_base: &'static str,
    pub orientation: Orientation,
    pub delimiter: String,
    pub header: bool,
    pub row_labels: bool,
    pub na_policy: NaPolicy,
    pub seed: u64,
}

impl ConfigEcho {
    pub fn new(transform: &TransformConfig, table: &TableOptions, seed: u64) -> Self {
        Self {
            transform: transform.clone(),
            min_search_len: MIN_SEARCH_LEN,
            std_divisor: "n-1",
            even_median: "midpoint",
            log_base: "e",
            orientation: table.orientation,
            delimiter: char::from(table.delimiter).to_string(),
            header: table.header,
            row_labels: table.row_labels,
            na_policy: table.na_policy,
            seed,
        }
    }
}

#[derive(Serialize)]
struct Document<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a ConfigEcho,
    features: &'a [FeatureReport],
}

pub fn report_json(reports: &[FeatureReport], config: &ConfigEcho) -> String {
    let doc = Document {
        tool: "autonorm",
        version: env!("CARGO_PKG_VERSION"),
        config,
        features: reports,
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

pub fn write_report(reports: &[FeatureReport], config: &ConfigEcho, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    out.write_all(report_json(reports, config).as_bytes())
        .and_then(|_| out.write_all(b"\n"))
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}
