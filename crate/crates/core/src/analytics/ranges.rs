use crate::country::Iso3;
use crate::ratecalc::EconomicRateSeries;

use super::AnalyticsError;

pub const DEFAULT_BIN_WIDTH: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct CountryRange {
    pub country: Iso3,
    pub min: f64,
    pub max: f64,
    pub range: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RangeHistogram {
    pub ranges: Vec<CountryRange>,
    pub bin_width: f64,
    /// `counts[k]` holds ranges in `[k * width, (k + 1) * width)`, over
    /// countries with at least two samples.
    pub counts: Vec<usize>,
}

impl RangeHistogram {
    pub fn counted(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Max minus min of each country's samples, plus a histogram of those ranges.
pub fn range_histogram<'a, I>(series: I, bin_width: f64) -> Result<RangeHistogram, AnalyticsError>
where
    I: IntoIterator<Item = &'a EconomicRateSeries>,
{
    if !(bin_width > 0.0) || !bin_width.is_finite() {
        return Err(AnalyticsError::InvalidBinWidth(bin_width));
    }
    let mut ranges: Vec<CountryRange> = series
        .into_iter()
        .filter_map(|s| {
            let values = s.values();
            let min = values.iter().copied().reduce(f64::min)?;
            let max = values.iter().copied().reduce(f64::max)?;
            Some(CountryRange {
                country: s.country,
                min,
                max,
                range: max - min,
                samples: values.len(),
            })
        })
        .collect();
    ranges.sort_by_key(|r| r.country);
    let mut counts: Vec<usize> = Vec::new();
    for r in ranges.iter().filter(|r| r.samples >= 2) {
        // a small nudge keeps exact multiples like 0.07 / 0.01 in their own bin
        let bin = (r.range / bin_width + 1e-9).floor() as usize;
        if counts.len() <= bin {
            counts.resize(bin + 1, 0);
        }
        counts[bin] += 1;
    }
    Ok(RangeHistogram {
        ranges,
        bin_width,
        counts,
    })
}
