//! JSON exchange format for splines and product results.
//!
//! ```json
//! { "degree": 3, "knots": [0, 0, 0, 0, 1, 1, 1, 1], "coefficients": [1, 2, 3, 4] }
//! ```
//!
//! Product output adds a `stats` object. Unknown fields are ignored on input,
//! so a product file can be fed back in as a factor.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use spline_product::{KnotVector, ProductResult, Spline};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplineFile {
    pub degree: usize,
    pub knots: Vec<f64>,
    pub coefficients: Vec<f64>,
}

impl SplineFile {
    pub fn to_spline(&self) -> Result<Spline, spline_product::Error> {
        let kv = KnotVector::new(self.knots.clone(), self.degree)?;
        Spline::new(kv, self.coefficients.clone())
    }
}

impl From<&Spline> for SplineFile {
    fn from(s: &Spline) -> Self {
        Self {
            degree: s.degree(),
            knots: s.knots().knots().to_vec(),
            coefficients: s.coefficients().to_vec(),
        }
    }
}

/// Naive term count, written as an integer while it fits 64 bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermCount {
    Exact(u64),
    Approximate(f64),
}

impl From<u128> for TermCount {
    fn from(v: u128) -> Self {
        match u64::try_from(v) {
            Ok(v) => TermCount::Exact(v),
            Err(_) => TermCount::Approximate(v as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductStats {
    pub naive_terms: TermCount,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_bar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_counts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_estimate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductFile {
    #[serde(flatten)]
    pub spline: SplineFile,
    pub stats: ProductStats,
}

impl From<&ProductResult> for ProductFile {
    fn from(r: &ProductResult) -> Self {
        Self {
            spline: SplineFile::from(&r.product),
            stats: ProductStats {
                naive_terms: r.naive_term_count.into(),
                nu_bar: Some(r.mean_distinct),
                distinct_counts: Some(r.distinct_term_counts.clone()),
                condition_estimate: None,
            },
        }
    }
}

/// Read and validate a spline file.
pub fn read_spline(path: &Path) -> Result<Spline, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let file: SplineFile = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    file.to_spline().map_err(|source| CliError::InvalidSpline {
        path: path.to_path_buf(),
        source,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("spline data serializes");
    s.push('\n');
    s
}
