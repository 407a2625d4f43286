use std::collections::BTreeMap;

use crate::country::Iso3;

use super::RateError;

/// Economic rate samples for one country.
#[derive(Debug, Clone, PartialEq)]
pub enum RateSamples {
    /// Dated observations, one per calendar year.
    Annual(BTreeMap<i32, f64>),
    /// A single-vintage value that stands in for every year.
    Undated(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EconomicRateSeries {
    pub country: Iso3,
    pub samples: RateSamples,
}

impl EconomicRateSeries {
    pub fn annual(country: Iso3, samples: BTreeMap<i32, f64>) -> Self {
        EconomicRateSeries {
            country,
            samples: RateSamples::Annual(samples),
        }
    }

    pub fn undated(country: Iso3, rate: f64) -> Self {
        EconomicRateSeries {
            country,
            samples: RateSamples::Undated(rate),
        }
    }

    /// Dated value for `year`, if any.
    pub fn in_year(&self, year: i32) -> Option<f64> {
        match &self.samples {
            RateSamples::Annual(map) => map.get(&year).copied(),
            RateSamples::Undated(_) => None,
        }
    }

    pub fn has_data_in(&self, window: YearWindow) -> bool {
        match &self.samples {
            RateSamples::Annual(map) => map.range(window.first_year()..=window.end_year).next().is_some(),
            RateSamples::Undated(_) => true,
        }
    }

    /// All sample values in ascending year order.
    pub fn values(&self) -> Vec<f64> {
        match &self.samples {
            RateSamples::Annual(map) => map.values().copied().collect(),
            RateSamples::Undated(v) => vec![*v],
        }
    }
}

/// The closed year interval `[end_year - years + 1, end_year]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YearWindow {
    pub end_year: i32,
    pub years: u32,
}

impl YearWindow {
    pub fn new(end_year: i32, years: u32) -> Result<Self, RateError> {
        if years == 0 {
            return Err(RateError::EmptyWindow);
        }
        Ok(YearWindow { end_year, years })
    }

    pub fn first_year(&self) -> i32 {
        self.end_year - self.years as i32 + 1
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.first_year()..=self.end_year).contains(&year)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowAverage {
    pub rate: f64,
    pub samples_used: usize,
}

/// Arithmetic mean of the samples that fall inside `window`.
///
/// Missing years are skipped rather than treated as errors, so a series that
/// starts mid-window averages over what it has.
pub fn average_window(series: &EconomicRateSeries, window: YearWindow) -> Result<WindowAverage, RateError> {
    match &series.samples {
        RateSamples::Undated(rate) => Ok(WindowAverage {
            rate: *rate,
            samples_used: 1,
        }),
        RateSamples::Annual(map) => {
            let (sum, count) = map
                .range(window.first_year()..=window.end_year)
                .fold((0.0, 0usize), |(s, n), (_, v)| (s + v, n + 1));
            if count == 0 {
                return Err(RateError::NoDataInWindow {
                    country: series.country,
                    first_year: window.first_year(),
                    end_year: window.end_year,
                });
            }
            Ok(WindowAverage {
                rate: sum / count as f64,
                samples_used: count,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code() -> Iso3 {
        Iso3::new("ARG").unwrap()
    }

    #[test]
    fn constant_series_averages_to_itself() {
        let samples = (2001..=2024).map(|y| (y, 0.08)).collect();
        let series = EconomicRateSeries::annual(code(), samples);
        for years in [1, 3, 5, 10, 24] {
            let avg = average_window(&series, YearWindow::new(2024, years).unwrap()).unwrap();
            assert!((avg.rate - 0.08).abs() < 1e-15);
            assert_eq!(avg.samples_used, years as usize);
        }
    }

    #[test]
    fn partial_window_uses_available_samples() {
        let series = EconomicRateSeries::annual(code(), BTreeMap::from([(2023, 0.06), (2024, 0.10)]));
        let avg = average_window(&series, YearWindow::new(2024, 10).unwrap()).unwrap();
        assert!((avg.rate - 0.08).abs() < 1e-15);
        assert_eq!(avg.samples_used, 2);
    }

    #[test]
    fn undated_value_applies_to_any_window() {
        let series = EconomicRateSeries::undated(code(), 0.0743);
        for years in [1, 10] {
            let avg = average_window(&series, YearWindow::new(2024, years).unwrap()).unwrap();
            assert_eq!(avg.rate, 0.0743);
            assert_eq!(avg.samples_used, 1);
        }
    }

    #[test]
    fn samples_outside_window_are_ignored() {
        let series = EconomicRateSeries::annual(
            code(),
            BTreeMap::from([(2010, 0.5), (2015, 0.1), (2024, 0.2), (2025, 0.9)]),
        );
        let avg = average_window(&series, YearWindow::new(2024, 10).unwrap()).unwrap();
        assert!((avg.rate - 0.15).abs() < 1e-15);
        assert_eq!(avg.samples_used, 2);
    }

    #[test]
    fn empty_window_is_an_error() {
        let series = EconomicRateSeries::annual(code(), BTreeMap::from([(2005, 0.1)]));
        let err = average_window(&series, YearWindow::new(2024, 10).unwrap()).unwrap_err();
        assert!(matches!(err, RateError::NoDataInWindow { first_year: 2015, .. }));
        assert!(YearWindow::new(2024, 0).is_err());
    }
}
