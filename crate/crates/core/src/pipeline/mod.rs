//! End-to-end commands: ingest, rates, LCOH, comparison and statistics.

mod commands;
mod config;
mod tables;

use std::io;

use thiserror::Error;

use crate::analytics::AnalyticsError;
use crate::energymodel::ModelError;
use crate::ingestion::IngestError;
use crate::ratecalc::RateError;

pub use commands::{
    cmd_compare, cmd_lcoh, cmd_rates, cmd_stats, CompareOutcome, LcohOutcome, LcohRow, StatsOutcome, COMPARISON_FILE,
    CORRELATION_FILE, GEOJSON_FILE, LCOH_FILE, RANGES_FILE, RANGE_HISTOGRAM_FILE, RATES_FILE, STATS_FILE,
};
pub use config::{RateMode, RunConfig, DEFAULT_END_YEAR, DEFAULT_UNIFORM_RATE, DEFAULT_WINDOW, PATH_KEYS};
pub use tables::{read_lcoh_table, read_rates_table, LcohTableRow, RatesTableRow};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for unreadable or invalid input and configuration.
pub const EXIT_INPUT: i32 = 2;
/// Exit status when some countries cannot be given a discount rate.
pub const EXIT_UNRESOLVED: i32 = 3;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Rate(#[from] RateError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error("{path}: {reason}")]
    Table { path: String, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Ingest(IngestError::UnresolvedCountries(_)) => EXIT_UNRESOLVED,
            _ => EXIT_INPUT,
        }
    }
}

pub(crate) fn io_error(path: &std::path::Path) -> impl FnOnce(io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    }
}
