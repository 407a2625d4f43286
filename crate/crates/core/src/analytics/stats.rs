use crate::country::Iso3;
use crate::ratecalc::{average_window, EconomicRateSeries, YearWindow};

use super::AnalyticsError;

/// Minimum number of values for a meaningful boxplot.
pub const MIN_COUNTRIES: usize = 4;

/// Quantile by linear interpolation between order statistics, inclusive of
/// the endpoints (R's type 7, NumPy's default). `sorted` must be ascending.
pub fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Boxplot summary of a cross-country distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionStats {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
    /// Sample standard deviation (n - 1 denominator).
    pub std: f64,
    pub min: f64,
    pub max: f64,
    /// Values beyond 1.5 IQR from the quartiles, ordered by country.
    pub outliers: Vec<(Iso3, f64)>,
}

impl DistributionStats {
    pub fn from_values(values: &[(Iso3, f64)]) -> Result<Self, AnalyticsError> {
        if values.len() < 2 {
            return Err(AnalyticsError::InsufficientData {
                label: "distribution".into(),
                count: values.len(),
            });
        }
        let mut sorted: Vec<f64> = values.iter().map(|(_, v)| *v).collect();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len() as f64;
        let mean = sorted.iter().sum::<f64>() / n;
        let var = sorted.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
        let q1 = quantile_type7(&sorted, 0.25);
        let q3 = quantile_type7(&sorted, 0.75);
        let iqr = q3 - q1;
        let (lo, hi) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
        let mut outliers: Vec<(Iso3, f64)> = values.iter().copied().filter(|(_, v)| *v < lo || *v > hi).collect();
        outliers.sort_by_key(|(c, _)| *c);
        Ok(DistributionStats {
            count: sorted.len(),
            mean,
            median: quantile_type7(&sorted, 0.5),
            q1,
            q3,
            iqr,
            std: var.sqrt(),
            min: sorted[0],
            max: sorted[sorted.len() - 1],
            outliers,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct YearStats {
    pub year: i32,
    pub stats: DistributionStats,
}

/// Statistics of the dated rates of all countries in one calendar year.
pub fn yearly_stats<'a, I>(series: I, year: i32) -> Result<YearStats, AnalyticsError>
where
    I: IntoIterator<Item = &'a EconomicRateSeries>,
{
    let values: Vec<(Iso3, f64)> = series
        .into_iter()
        .filter_map(|s| s.in_year(year).map(|v| (s.country, v)))
        .collect();
    if values.len() < MIN_COUNTRIES {
        return Err(AnalyticsError::InsufficientData {
            label: year.to_string(),
            count: values.len(),
        });
    }
    Ok(YearStats {
        year,
        stats: DistributionStats::from_values(&values)?,
    })
}

/// Statistics of per-country window averages, over countries with data in
/// the window.
pub fn window_stats<'a, I>(series: I, window: YearWindow) -> Result<DistributionStats, AnalyticsError>
where
    I: IntoIterator<Item = &'a EconomicRateSeries>,
{
    let values: Vec<(Iso3, f64)> = series
        .into_iter()
        .filter_map(|s| average_window(s, window).ok().map(|a| (s.country, a.rate)))
        .collect();
    if values.len() < MIN_COUNTRIES {
        return Err(AnalyticsError::InsufficientData {
            label: format!("avg{}", window.years),
            count: values.len(),
        });
    }
    DistributionStats::from_values(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn tagged(values: &[f64]) -> Vec<(Iso3, f64)> {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let code = format!(
                    "A{}{}",
                    (b'A' + (i / 26) as u8) as char,
                    (b'A' + (i % 26) as u8) as char
                );
                (Iso3::new(&code).unwrap(), *v)
            })
            .collect()
    }

    #[test]
    fn hand_quartiles() {
        let s = DistributionStats::from_values(&tagged(&[0.01, 0.02, 0.03, 0.04, 0.05])).unwrap();
        assert!((s.median - 0.03).abs() < 1e-15);
        assert!((s.q1 - 0.02).abs() < 1e-15);
        assert!((s.q3 - 0.04).abs() < 1e-15);
        assert!((s.mean - 0.03).abs() < 1e-15);
        assert!((s.std - 0.0158113883008419).abs() < 1e-12);
        assert!(s.outliers.is_empty());
    }

    #[test]
    fn identical_values() {
        let s = DistributionStats::from_values(&tagged(&[0.07; 6])).unwrap();
        assert_eq!(s.iqr, 0.0);
        assert_eq!(s.std, 0.0);
        assert_eq!(s.mean, s.median);
    }

    #[test]
    fn outliers_beyond_fences() {
        let s = DistributionStats::from_values(&tagged(&[0.02, 0.03, 0.03, 0.04, 0.04, 0.05, 0.28])).unwrap();
        assert_eq!(s.outliers.len(), 1);
        assert_eq!(s.outliers[0].1, 0.28);
    }

    #[test]
    fn yearly_stats_needs_four_countries() {
        let series: Vec<EconomicRateSeries> = tagged(&[0.1, 0.2, 0.3])
            .into_iter()
            .map(|(c, v)| EconomicRateSeries::annual(c, BTreeMap::from([(2024, v)])))
            .collect();
        assert!(matches!(
            yearly_stats(&series, 2024),
            Err(AnalyticsError::InsufficientData { count: 3, .. })
        ));
    }

    proptest! {
        #[test]
        fn quartiles_are_ordered(values in proptest::collection::vec(0.0f64..1.0, 2..200)) {
            let s = DistributionStats::from_values(&tagged(&values)).unwrap();
            prop_assert!(s.min <= s.q1 && s.q1 <= s.median && s.median <= s.q3 && s.q3 <= s.max);
            prop_assert!(s.iqr >= 0.0);
        }
    }
}
