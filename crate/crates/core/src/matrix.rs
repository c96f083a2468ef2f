use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// How features are laid out in the on-disk table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Orientation {
    /// One feature per line, objects across.
    FeaturesAsRows,
    /// One object per line, features across.
    #[default]
    FeaturesAsColumns,
}

/// Named features of equal length, stored features-as-rows.
///
/// `orientation` records the layout the matrix was read from (or should be
/// written in); it never changes the in-memory layout.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    names: Vec<String>,
    rows: Vec<Vec<f64>>,
    object_names: Option<Vec<String>>,
    orientation: Orientation,
}

impl FeatureMatrix {
    /// Duplicate names get a `_1`, `_2`, ... suffix.
    pub fn new(features: Vec<(String, Vec<f64>)>, orientation: Orientation) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::Invalid("matrix has no features".into()));
        }
        let n_objects = features[0].1.len();
        if n_objects == 0 {
            return Err(Error::Invalid("features have no values".into()));
        }
        let (names, rows): (Vec<_>, Vec<_>) = features.into_iter().unzip();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n_objects) {
            return Err(Error::Invalid(format!(
                "feature {} ({}) has {} values, expected {n_objects}",
                i,
                names[i],
                r.len()
            )));
        }
        Ok(Self {
            names: uniquify(names),
            rows,
            object_names: None,
            orientation,
        })
    }

    pub fn with_object_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n_objects() {
            return Err(Error::Invalid(format!(
                "{} object names for {} objects",
                names.len(),
                self.n_objects()
            )));
        }
        self.object_names = Some(names);
        Ok(self)
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    /// Same names and metadata, new values. Panics if the shape differs.
    pub fn with_values(&self, rows: Vec<Vec<f64>>) -> Self {
        assert_eq!(rows.len(), self.rows.len(), "feature count changed");
        assert!(
            rows.iter().all(|r| r.len() == self.n_objects()),
            "feature length changed"
        );
        Self {
            names: self.names.clone(),
            rows,
            object_names: self.object_names.clone(),
            orientation: self.orientation,
        }
    }

    pub fn n_features(&self) -> usize {
        self.rows.len()
    }

    pub fn n_objects(&self) -> usize {
        self.rows[0].len()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn object_names(&self) -> Option<&[String]> {
        self.object_names.as_deref()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn feature(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.rows[i].as_slice())
    }

    pub fn features(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.names
            .iter()
            .map(String::as_str)
            .zip(self.rows.iter().map(Vec::as_slice))
    }
}

fn uniquify(names: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(names.len());
    for name in names {
        let mut candidate = name.clone();
        let mut k = 1;
        while out.contains(&candidate) {
            candidate = format!("{name}_{k}");
            k += 1;
        }
        out.push(candidate);
    }
    out
}
