//! Final discount rates: window averaging of economic rates, hazard
//! normalization onto the economic scale, and the convex blend.

mod blend;
mod correlation;
mod series;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::country::Iso3;
use crate::ingestion::ResolvedRates;

pub use blend::{blend, normalize_hazard, BlendWeights, WriDenominator, DEFAULT_ECONOMIC_WEIGHT};
pub use correlation::{pearson_permutation_p, pearson_r, Pearson, DEFAULT_PERMUTATIONS};
pub use series::{average_window, EconomicRateSeries, RateSamples, WindowAverage, YearWindow};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RateError {
    #[error("averaging window must cover at least one year")]
    EmptyWindow,
    #[error("{country}: no economic rate between {first_year} and {end_year}")]
    NoDataInWindow {
        country: Iso3,
        first_year: i32,
        end_year: i32,
    },
    #[error("hazard normalization needs at least one score and one economic rate")]
    EmptyInput,
    #[error("largest hazard score is zero, nothing to normalize against")]
    ZeroHazardScale,
    #[error("blend weight {0} outside [0, 1]")]
    WeightOutOfRange(f64),
    #[error("rate {0} outside [0, 1]")]
    RateOutOfRange(f64),
    #[error("correlation needs variation in both inputs")]
    DegenerateVariance,
    #[error("inputs differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("correlation needs at least 3 samples, got {0}")]
    TooFewSamples(usize),
}

/// One row of `discount_rates.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscountRateRecord {
    pub country: Iso3,
    pub i_economic: f64,
    pub i_hazard: f64,
    pub weight_a: f64,
    pub weight_b: f64,
    pub i_final: f64,
    pub econ_source: String,
    pub hazard_source: String,
    pub window_years: u32,
    pub samples_used: usize,
}

/// Average, normalize and blend every resolved country. Records come back
/// ordered by iso3.
pub fn compute_discount_rates(
    resolved: &ResolvedRates,
    weights: BlendWeights,
    denominator: WriDenominator,
) -> Result<Vec<DiscountRateRecord>, RateError> {
    let mut averages = BTreeMap::new();
    for country in resolved.iter() {
        averages.insert(country.country, average_window(&country.economic, resolved.window)?);
    }
    let economic: BTreeMap<Iso3, f64> = averages.iter().map(|(c, a)| (*c, a.rate)).collect();
    let scores: BTreeMap<Iso3, f64> = resolved.iter().map(|c| (c.country, c.hazard.wri)).collect();
    let hazard = normalize_hazard(&scores, &economic, denominator)?;
    resolved
        .iter()
        .map(|country| {
            let code = country.country;
            let avg = averages[&code];
            let i_hazard = hazard[&code];
            Ok(DiscountRateRecord {
                country: code,
                i_economic: avg.rate,
                i_hazard,
                weight_a: weights.economic(),
                weight_b: weights.hazard(),
                i_final: blend(avg.rate, i_hazard, weights.economic())?,
                econ_source: country.economic_provenance.to_string(),
                hazard_source: country.hazard_provenance(),
                window_years: resolved.window.years,
                samples_used: avg.samples_used,
            })
        })
        .collect()
}
