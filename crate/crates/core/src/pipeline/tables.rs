//! Readers for the pipeline's own output tables and the potentials input.

use std::collections::BTreeMap;
use std::path::Path;

use crate::country::{CountryRegistry, Iso3};
use crate::csvio::{self, Columns};

use super::{io_error, PipelineError};

fn table_error(path: &Path, reason: impl Into<String>) -> PipelineError {
    PipelineError::Table {
        path: path.display().to_string(),
        reason: reason.into(),
    }
}

fn read_rows(path: &Path, required: &[&str]) -> Result<(Vec<usize>, Vec<csv::StringRecord>), PipelineError> {
    let mut reader = csvio::open(path).map_err(io_error(path))?;
    let headers = reader.headers().map_err(|e| table_error(path, e.to_string()))?.clone();
    let idx = Columns::new(&headers)
        .require(required)
        .map_err(|missing| table_error(path, format!("missing column {missing:?}")))?;
    let rows = reader
        .records()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| table_error(path, e.to_string()))?;
    Ok((idx, rows))
}

fn country(
    path: &Path,
    registry: &CountryRegistry,
    record: &csv::StringRecord,
    field: &str,
) -> Result<Iso3, PipelineError> {
    registry.normalize(field).map_err(|_| {
        table_error(
            path,
            format!("row {}: unknown country {field:?}", csvio::line_of(record)),
        )
    })
}

fn number(path: &Path, record: &csv::StringRecord, field: &str) -> Result<f64, PipelineError> {
    field.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
        table_error(
            path,
            format!("row {}: {field:?} is not a number", csvio::line_of(record)),
        )
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatesTableRow {
    pub country: Iso3,
    pub i_economic: f64,
    pub i_hazard: f64,
    pub i_final: f64,
}

/// Read a `discount_rates.csv` produced by the `rates` command.
pub fn read_rates_table(
    path: &Path,
    registry: &CountryRegistry,
) -> Result<BTreeMap<Iso3, RatesTableRow>, PipelineError> {
    let (idx, rows) = read_rows(path, &["iso3", "i_economic", "i_hazard", "i_final"])?;
    let mut out = BTreeMap::new();
    for record in &rows {
        let code = country(path, registry, record, &record[idx[0]])?;
        let row = RatesTableRow {
            country: code,
            i_economic: number(path, record, &record[idx[1]])?,
            i_hazard: number(path, record, &record[idx[2]])?,
            i_final: number(path, record, &record[idx[3]])?,
        };
        if out.insert(code, row).is_some() {
            return Err(table_error(path, format!("duplicate row for {code}")));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcohTableRow {
    pub country: Iso3,
    pub lcoh_usd_per_kg: Option<f64>,
    pub discount_rate: Option<f64>,
    pub status: String,
}

/// Read an `lcoh.csv` produced by the `lcoh` command.
pub fn read_lcoh_table(path: &Path, registry: &CountryRegistry) -> Result<BTreeMap<Iso3, LcohTableRow>, PipelineError> {
    let (idx, rows) = read_rows(path, &["iso3", "lcoh_usd_per_kg", "discount_rate", "status"])?;
    let mut out = BTreeMap::new();
    for record in &rows {
        let code = country(path, registry, record, &record[idx[0]])?;
        let optional = |field: &str| -> Result<Option<f64>, PipelineError> {
            if field.is_empty() {
                Ok(None)
            } else {
                number(path, record, field).map(Some)
            }
        };
        let row = LcohTableRow {
            country: code,
            lcoh_usd_per_kg: optional(&record[idx[1]])?,
            discount_rate: optional(&record[idx[2]])?,
            status: record[idx[3]].to_string(),
        };
        if row.status == "ok" && row.lcoh_usd_per_kg.is_none() {
            return Err(table_error(path, format!("{code} has status ok but no LCOH")));
        }
        if out.insert(code, row).is_some() {
            return Err(table_error(path, format!("duplicate row for {code}")));
        }
    }
    Ok(out)
}

/// Read `iso3,total_potential_kg`.
pub(crate) fn read_potentials(path: &Path, registry: &CountryRegistry) -> Result<BTreeMap<Iso3, f64>, PipelineError> {
    let (idx, rows) = read_rows(path, &["iso3", "total_potential_kg"])?;
    let mut out = BTreeMap::new();
    for record in &rows {
        let code = country(path, registry, record, &record[idx[0]])?;
        let value = number(path, record, &record[idx[1]])?;
        if value < 0.0 {
            return Err(table_error(path, format!("{code}: negative potential")));
        }
        if out.insert(code, value).is_some() {
            return Err(table_error(path, format!("duplicate row for {code}")));
        }
    }
    Ok(out)
}
