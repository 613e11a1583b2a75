//! Raw-data ingestion: a delimited text file (comma or tab, header row)
//! reduced to the sufficient statistics of the configured model.

use std::fs;
use std::path::Path;

use priorcurve_core::SufficientStats;

use crate::config::ColumnMapping;

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv parse failure: {0}")]
    Malformed(#[from] csv::Error),
    #[error("column '{0}' not found in the header")]
    MissingColumn(String),
    #[error("row {row}: unmapped category '{value}'")]
    UnmappedCategory { row: usize, value: String },
    #[error("row {row}: expected a number, got '{value}'")]
    NonNumeric { row: usize, value: String },
    #[error("row {row}: missing value")]
    MissingValue { row: usize },
    #[error("the file has a header but no data rows")]
    Empty,
    #[error("invalid statistics: {0}")]
    BadStats(#[from] priorcurve_core::Error),
}

/// Reduces one column of a delimited file to sufficient statistics:
/// binary mapping -> Bernoulli counts, declared levels -> multinomial
/// counts, numeric column -> sample mean and size.
pub fn ingest_file(path: &Path, column: &str, mapping: &ColumnMapping) -> Result<SufficientStats, IngestError> {
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let delimiter = sniff_delimiter(&text);
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .flexible(false)
        .from_reader(text.as_bytes());
    let col_index = reader
        .headers()?
        .iter()
        .position(|h| h.trim() == column)
        .ok_or_else(|| IngestError::MissingColumn(column.to_string()))?;

    match mapping {
        ColumnMapping::Binary { success } => {
            let mut successes = 0u64;
            let mut trials = 0u64;
            for (idx, record) in reader.records().enumerate() {
                let record = record?;
                let value = field(&record, col_index, idx)?;
                trials += 1;
                if value == success.as_str() {
                    successes += 1;
                }
            }
            if trials == 0 {
                return Err(IngestError::Empty);
            }
            Ok(SufficientStats::bernoulli(successes, trials)?)
        }
        ColumnMapping::Categorical { levels } => {
            let mut counts = vec![0u64; levels.len()];
            let mut rows = 0usize;
            for (idx, record) in reader.records().enumerate() {
                let record = record?;
                let value = field(&record, col_index, idx)?;
                let slot = levels.iter().position(|l| l == value).ok_or_else(|| {
                    IngestError::UnmappedCategory { row: idx + 2, value: value.to_string() }
                })?;
                counts[slot] += 1;
                rows += 1;
            }
            if rows == 0 {
                return Err(IngestError::Empty);
            }
            Ok(SufficientStats::multinomial(counts)?)
        }
        ColumnMapping::Numeric => {
            let mut sum = 0.0;
            let mut rows = 0u64;
            for (idx, record) in reader.records().enumerate() {
                let record = record?;
                let value = field(&record, col_index, idx)?;
                let parsed: f64 = value.trim().parse().map_err(|_| IngestError::NonNumeric {
                    row: idx + 2,
                    value: value.to_string(),
                })?;
                sum += parsed;
                rows += 1;
            }
            if rows == 0 {
                return Err(IngestError::Empty);
            }
            Ok(SufficientStats::normal(sum / rows as f64, rows)?)
        }
    }
}

fn field<'r>(record: &'r csv::StringRecord, index: usize, row_idx: usize) -> Result<&'r str, IngestError> {
    record
        .get(index)
        .map(str::trim)
        .ok_or(IngestError::MissingValue { row: row_idx + 2 })
}

// Header row decides: a tab anywhere selects tab-separated, else comma.
fn sniff_delimiter(text: &str) -> u8 {
    match text.lines().next() {
        Some(header) if header.contains('\t') => b'\t',
        _ => b',',
    }
}
