use std::collections::BTreeMap;

use crate::country::Iso3;

use super::AnalyticsError;

/// LCOH of one country under a baseline scheme `a` and an alternative `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRecord {
    pub country: Iso3,
    pub lcoh_a: f64,
    pub lcoh_b: f64,
    /// `lcoh_b - lcoh_a`, USD/kg.
    pub delta: f64,
    /// `(lcoh_b - lcoh_a) / lcoh_a`.
    pub rel: f64,
}

impl ComparisonRecord {
    pub fn new(country: Iso3, lcoh_a: f64, lcoh_b: f64) -> Result<Self, AnalyticsError> {
        if !(lcoh_a > 0.0) {
            return Err(AnalyticsError::ZeroBaseline(country));
        }
        let delta = lcoh_b - lcoh_a;
        Ok(ComparisonRecord {
            country,
            lcoh_a,
            lcoh_b,
            delta,
            rel: delta / lcoh_a,
        })
    }
}

/// Per-country change from baseline `a` to alternative `b`, largest relative
/// increase first (ties by iso3).
pub fn compare_schemes(
    a: &BTreeMap<Iso3, f64>,
    b: &BTreeMap<Iso3, f64>,
) -> Result<Vec<ComparisonRecord>, AnalyticsError> {
    let only_a: Vec<Iso3> = a.keys().filter(|k| !b.contains_key(k)).copied().collect();
    let only_b: Vec<Iso3> = b.keys().filter(|k| !a.contains_key(k)).copied().collect();
    if !only_a.is_empty() || !only_b.is_empty() {
        return Err(AnalyticsError::CountryMismatch { only_a, only_b });
    }
    let mut records = a
        .iter()
        .map(|(&code, &la)| ComparisonRecord::new(code, la, b[&code]))
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|x, y| y.rel.total_cmp(&x.rel).then(x.country.cmp(&y.country)));
    Ok(records)
}

/// Country-specific LCOH measured against the uniform-rate baseline.
pub fn uniform_gap(
    specific: &BTreeMap<Iso3, f64>,
    uniform: &BTreeMap<Iso3, f64>,
) -> Result<Vec<ComparisonRecord>, AnalyticsError> {
    compare_schemes(uniform, specific)
}
