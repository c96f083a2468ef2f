//! Delimited-text matrices.
//!
//! A table may carry a header line (column labels) and a label column (the
//! first field of every data line). Which of the two holds feature names
//! depends on the orientation: with features as columns the header names
//! the features and the label column names the objects, with features as
//! rows it is the other way round. Missing feature names become `f0`,
//! `f1`, ...

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use autonorm_core::{FeatureMatrix, Orientation};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NaPolicy {
    /// Any non-numeric or non-finite cell is a parse error.
    #[default]
    Error,
    /// Such cells are kept as gaps and skipped by the statistics.
    Drop,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableOptions {
    pub delimiter: u8,
    pub orientation: Orientation,
    pub header: bool,
    pub row_labels: bool,
    pub na_policy: NaPolicy,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            orientation: Orientation::FeaturesAsColumns,
            header: true,
            row_labels: false,
            na_policy: NaPolicy::Error,
        }
    }
}

impl TableOptions {
    /// Defaults with the delimiter picked from the extension: tab for
    /// `.tsv`, comma otherwise.
    pub fn for_path(path: &Path) -> Self {
        Self {
            delimiter: default_delimiter(path),
            ..Self::default()
        }
    }
}

pub fn default_delimiter(path: &Path) -> u8 {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("tsv") => b'\t',
        _ => b',',
    }
}

pub fn read_matrix(path: &Path, opts: &TableOptions) -> Result<FeatureMatrix> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_matrix_from(file, path, opts)
}

pub fn read_matrix_from<R: std::io::Read>(
    reader: R,
    path: &Path,
    opts: &TableOptions,
) -> Result<FeatureMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut header: Option<Vec<String>> = None;
    let mut labels = Vec::new();
    let mut lines: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::Parse {
                path: path.into(),
                line,
                column: record.len().min(expected) + 1,
                message: format!("row has {} fields, expected {expected}", record.len()),
            });
        }
        if opts.header && header.is_none() {
            header = Some(record.iter().map(str::to_owned).collect());
            continue;
        }
        let mut fields = record.iter().enumerate();
        if opts.row_labels {
            if let Some((_, label)) = fields.next() {
                labels.push(label.to_owned());
            }
        }
        let values = fields
            .map(|(col, cell)| {
                parse_cell(cell, opts.na_policy).ok_or_else(|| Error::Parse {
                    path: path.into(),
                    line,
                    column: col + 1,
                    message: format!("cannot use {cell:?} as a finite number"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        lines.push(values);
    }

    let skip = usize::from(opts.row_labels);
    let column_names = header.map(|h| h.into_iter().skip(skip).collect::<Vec<_>>());
    let line_names = opts.row_labels.then_some(labels);
    let (rows, feature_names, object_names) = match opts.orientation {
        Orientation::FeaturesAsRows => (lines, line_names, column_names),
        Orientation::FeaturesAsColumns => (transpose(&lines), column_names, line_names),
    };
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::Table {
            path: path.into(),
            message: "no numeric data".into(),
        });
    }
    let names = feature_names.unwrap_or_else(|| (0..rows.len()).map(|i| format!("f{i}")).collect());
    let m = FeatureMatrix::new(names.into_iter().zip(rows).collect(), opts.orientation)?;
    match object_names {
        Some(o) => Ok(m.with_object_names(o)?),
        None => Ok(m),
    }
}

fn parse_cell(cell: &str, policy: NaPolicy) -> Option<f64> {
    match (cell.parse::<f64>(), policy) {
        (Ok(v), _) if v.is_finite() => Some(v),
        (Ok(v), NaPolicy::Drop) => Some(v),
        (Err(_), NaPolicy::Drop) => Some(f64::NAN),
        _ => None,
    }
}

fn transpose(lines: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let width = lines.first().map_or(0, Vec::len);
    (0..width)
        .map(|j| lines.iter().map(|l| l[j]).collect())
        .collect()
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::io(path, source),
        kind => Error::Parse {
            path: path.into(),
            line,
            column: 0,
            message: format!("{kind:?}"),
        },
    }
}

/// Writes `m` in `opts.orientation`, with a header line and/or label
/// column as requested. Numbers use the shortest decimal form that parses
/// back to the same `f64`; gaps are written as `NaN`.
pub fn write_matrix(m: &FeatureMatrix, path: &Path, opts: &TableOptions) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_matrix_to(m, &mut out, opts).map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}

pub fn write_matrix_to<W: Write>(
    m: &FeatureMatrix,
    out: W,
    opts: &TableOptions,
) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(opts.delimiter)
        .from_writer(out);
    let object_names: Vec<String> = match m.object_names() {
        Some(o) => o.to_vec(),
        None => (0..m.n_objects()).map(|j| format!("o{j}")).collect(),
    };
    let (line_names, column_names, n_lines) = match opts.orientation {
        Orientation::FeaturesAsRows => (m.names().to_vec(), object_names, m.n_features()),
        Orientation::FeaturesAsColumns => (object_names, m.names().to_vec(), m.n_objects()),
    };
    if opts.header {
        let corner = opts.row_labels.then(|| String::from("name"));
        w.write_record(corner.iter().chain(column_names.iter()))?;
    }
    for (i, line_name) in line_names.iter().enumerate().take(n_lines) {
        let cells = match opts.orientation {
            Orientation::FeaturesAsRows => {
                m.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>()
            }
            Orientation::FeaturesAsColumns => (0..m.n_features())
                .map(|f| m.row(f)[i].to_string())
                .collect(),
        };
        let label = opts.row_labels.then_some(line_name);
        w.write_record(label.into_iter().chain(cells.iter()))?;
    }
    w.flush()
}
