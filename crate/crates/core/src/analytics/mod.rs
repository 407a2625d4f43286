//! Rate statistics, range histograms and LCOH comparisons between
//! discounting schemes.

mod compare;
mod geojson;
mod ranges;
mod stats;

use thiserror::Error;

use crate::country::Iso3;

pub use compare::{compare_schemes, uniform_gap, ComparisonRecord};
pub use geojson::{join_properties, CountryProperties, CODE_PROPERTIES, DISPLAY_CLIP_USD_PER_KG};
pub use ranges::{range_histogram, CountryRange, RangeHistogram, DEFAULT_BIN_WIDTH};
pub use stats::{quantile_type7, window_stats, yearly_stats, DistributionStats, YearStats, MIN_COUNTRIES};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("{label}: {count} values are too few for statistics")]
    InsufficientData { label: String, count: usize },
    #[error("country sets differ (only in baseline: {only_a:?}; only in alternative: {only_b:?})")]
    CountryMismatch { only_a: Vec<Iso3>, only_b: Vec<Iso3> },
    #[error("{0}: baseline LCOH must be positive")]
    ZeroBaseline(Iso3),
    #[error("bin width {0} must be positive")]
    InvalidBinWidth(f64),
    #[error("invalid GeoJSON: {0}")]
    InvalidGeoJson(String),
}
