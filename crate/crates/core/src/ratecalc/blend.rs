use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::country::Iso3;

use super::RateError;

/// Default share of the economic rate in the final rate.
pub const DEFAULT_ECONOMIC_WEIGHT: f64 = 0.75;

/// What the hazard score is divided by before scaling onto the economic range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WriDenominator {
    /// The largest score among the countries being normalized.
    #[default]
    Observed,
    /// The top of the 0–100 index scale.
    Theoretical,
}

impl FromStr for WriDenominator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "observed" => Ok(WriDenominator::Observed),
            "100" => Ok(WriDenominator::Theoretical),
            other => Err(format!("wri denominator must be 'observed' or '100', got {other:?}")),
        }
    }
}

impl fmt::Display for WriDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WriDenominator::Observed => "observed",
            WriDenominator::Theoretical => "100",
        })
    }
}

/// Map hazard scores onto the economic rate scale.
///
/// `i_hazard = wri / denominator * max(i_economic)`. With the observed
/// denominator the highest-scoring country receives exactly the largest
/// economic rate, so no hazard rate can exceed it.
pub fn normalize_hazard(
    scores: &BTreeMap<Iso3, f64>,
    economic: &BTreeMap<Iso3, f64>,
    denominator: WriDenominator,
) -> Result<BTreeMap<Iso3, f64>, RateError> {
    if scores.is_empty() || economic.is_empty() {
        return Err(RateError::EmptyInput);
    }
    let max_economic = economic.values().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_score = scores.values().copied().fold(f64::NEG_INFINITY, f64::max);
    let denom = match denominator {
        WriDenominator::Observed => max_score,
        WriDenominator::Theoretical => 100.0,
    };
    if !(denom > 0.0) {
        return Err(RateError::ZeroHazardScale);
    }
    Ok(scores
        .iter()
        .map(|(&code, &wri)| (code, wri / denom * max_economic))
        .collect())
}

/// Economic and hazard weights with `economic + hazard = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlendWeights {
    economic: f64,
}

impl BlendWeights {
    pub fn new(economic: f64) -> Result<Self, RateError> {
        if !(0.0..=1.0).contains(&economic) {
            return Err(RateError::WeightOutOfRange(economic));
        }
        Ok(BlendWeights { economic })
    }

    pub fn economic(&self) -> f64 {
        self.economic
    }

    pub fn hazard(&self) -> f64 {
        1.0 - self.economic
    }
}

impl Default for BlendWeights {
    fn default() -> Self {
        BlendWeights {
            economic: DEFAULT_ECONOMIC_WEIGHT,
        }
    }
}

/// Convex combination `a * i_e + (1 - a) * i_n`.
pub fn blend(economic_rate: f64, hazard_rate: f64, economic_weight: f64) -> Result<f64, RateError> {
    let weights = BlendWeights::new(economic_weight)?;
    for rate in [economic_rate, hazard_rate] {
        if !(0.0..=1.0).contains(&rate) {
            return Err(RateError::RateOutOfRange(rate));
        }
    }
    // Exact at the degenerate weights.
    if weights.economic() == 1.0 {
        return Ok(economic_rate);
    }
    if weights.economic() == 0.0 {
        return Ok(hazard_rate);
    }
    let mixed = weights.economic() * economic_rate + weights.hazard() * hazard_rate;
    // Rounding may step one ulp outside the hull.
    Ok(mixed.clamp(economic_rate.min(hazard_rate), economic_rate.max(hazard_rate)))
}
