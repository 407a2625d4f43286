//! Rating sources, techno-economic tables and the source cascade.
//!
//! All inputs are UTF-8 CSV with a header row and `.` as decimal separator.
//! Lines starting with `#` are comments. Country columns accept alpha-3 or
//! alpha-2 codes; everything is normalized to alpha-3.

mod costs;
mod grades;
mod overrides;
mod resolve;
mod sources;

use std::io;

use thiserror::Error;

use crate::country::Iso3;

pub use costs::{adjust_to_base_year, InflationSeries, RegionCostTable, RegionCosts, BASE_YEAR};
pub use grades::GradeTable;
pub use overrides::{parse_overrides, parse_overrides_reader, Override, OverrideScope, OverrideTarget};
pub use resolve::{annual_series, resolve_rates, EconomicProvenance, ResolvedCountry, ResolvedRates};
pub use sources::{
    credendo_to_rate, parse_economic_reader, parse_economic_source, parse_wri, parse_wri_reader, EconomicSource,
    HazardScore, HazardSource, RatingObservation, RatingSource, RawValue,
};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: row {row}: {reason}")]
    MalformedRow { path: String, row: u64, reason: String },
    #[error("{path}: row {row}: unknown country {code:?}")]
    UnknownCountry { path: String, row: u64, code: String },
    #[error("{path}: row {row}: unknown grade {grade:?}")]
    UnknownGrade { path: String, row: u64, grade: String },
    #[error("score {0} outside 1..=7")]
    OutOfRange(i64),
    #[error("inflation series has no rate for {0}")]
    MissingYear(i32),
    #[error("{} unresolved countries: {}", .0.len(), join_codes(.0))]
    UnresolvedCountries(Vec<Iso3>),
    #[error("invalid grade table: {0}")]
    InvalidGradeTable(String),
    #[error("invalid region table: {0}")]
    InvalidRegionTable(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
}

fn join_codes(codes: &[Iso3]) -> String {
    codes.iter().map(Iso3::as_str).collect::<Vec<_>>().join(",")
}

pub(crate) fn io_error(path: &str) -> impl FnOnce(io::Error) -> IngestError + '_ {
    move |source| IngestError::Io {
        path: path.to_string(),
        source,
    }
}

pub(crate) fn csv_error(path: &str) -> impl FnOnce(csv::Error) -> IngestError + '_ {
    move |source| IngestError::Csv {
        path: path.to_string(),
        source,
    }
}

pub(crate) fn malformed(path: &str, row: u64, reason: impl Into<String>) -> IngestError {
    IngestError::MalformedRow {
        path: path.to_string(),
        row,
        reason: reason.into(),
    }
}

/// Read all records, checking that `required` columns exist.
pub(crate) fn read_table<R: io::Read>(
    input: R,
    label: &str,
    required: &[&str],
) -> Result<(Vec<usize>, Vec<csv::StringRecord>), IngestError> {
    let (idx, _, rows) = read_table_with_optional(input, label, required, &[])?;
    Ok((idx, rows))
}

/// Required column indices, optional column indices, and the data rows.
pub(crate) type Table = (Vec<usize>, Vec<Option<usize>>, Vec<csv::StringRecord>);

/// Like [`read_table`], also locating `optional` columns when present.
pub(crate) fn read_table_with_optional<R: io::Read>(
    input: R,
    label: &str,
    required: &[&str],
    optional: &[&str],
) -> Result<Table, IngestError> {
    let mut reader = crate::csvio::reader(input);
    let headers = reader.headers().map_err(csv_error(label))?.clone();
    let columns = crate::csvio::Columns::new(&headers);
    let idx = columns
        .require(required)
        .map_err(|missing| malformed(label, 1, format!("missing column {missing:?}")))?;
    let extra = optional.iter().map(|name| columns.index(name)).collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        rows.push(record.map_err(csv_error(label))?);
    }
    Ok((idx, extra, rows))
}

pub(crate) fn parse_f64(label: &str, row: u64, field: &str, what: &str) -> Result<f64, IngestError> {
    field
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| malformed(label, row, format!("{what} {field:?} is not a number")))
}

pub(crate) fn parse_year(label: &str, row: u64, field: &str) -> Result<i32, IngestError> {
    field
        .parse::<i32>()
        .map_err(|_| malformed(label, row, format!("year {field:?} is not an integer")))
}

pub(crate) fn parse_country(
    registry: &crate::country::CountryRegistry,
    label: &str,
    row: u64,
    field: &str,
) -> Result<Iso3, IngestError> {
    registry.normalize(field).map_err(|_| IngestError::UnknownCountry {
        path: label.to_string(),
        row,
        code: field.to_string(),
    })
}
