use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use crate::country::{CountryRegistry, Iso3};

use super::{io_error, malformed, parse_country, parse_f64, parse_year, read_table, IngestError};

/// Price year all monetary inputs are converted to.
pub const BASE_YEAR: i32 = 2023;

/// Annual inflation rates by calendar year.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InflationSeries {
    rates: BTreeMap<i32, f64>,
}

impl InflationSeries {
    pub fn new(rates: BTreeMap<i32, f64>) -> Self {
        InflationSeries { rates }
    }

    pub fn load(path: &Path) -> Result<Self, IngestError> {
        let label = path.display().to_string();
        let file = std::fs::File::open(path).map_err(io_error(&label))?;
        Self::from_reader(file, &label)
    }

    /// Parse `year,rate` rows; rates are fractions (0.02 for 2 %).
    pub fn from_reader<R: Read>(input: R, label: &str) -> Result<Self, IngestError> {
        let (idx, rows) = read_table(input, label, &["year", "rate"])?;
        let mut rates = BTreeMap::new();
        for record in &rows {
            let row = crate::csvio::line_of(record);
            let year = parse_year(label, row, &record[idx[0]])?;
            let rate = parse_f64(label, row, &record[idx[1]], "rate")?;
            if rate <= -1.0 {
                return Err(malformed(label, row, format!("inflation rate {rate} not above -1")));
            }
            if rates.insert(year, rate).is_some() {
                return Err(malformed(label, row, format!("duplicate year {year}")));
            }
        }
        Ok(InflationSeries { rates })
    }

    pub fn rate(&self, year: i32) -> Option<f64> {
        self.rates.get(&year).copied()
    }
}

/// Carry `value` from `from_year` prices to `base_year` prices by compounding
/// `(1 + r)` for each year after `from_year` up to and including `base_year`.
/// A later `from_year` deflates by the same factors.
pub fn adjust_to_base_year(
    value: f64,
    from_year: i32,
    inflation: &InflationSeries,
    base_year: i32,
) -> Result<f64, IngestError> {
    let (lo, hi) = if from_year <= base_year {
        (from_year, base_year)
    } else {
        (base_year, from_year)
    };
    let mut factor = 1.0;
    for year in lo + 1..=hi {
        factor *= 1.0 + inflation.rate(year).ok_or(IngestError::MissingYear(year))?;
    }
    Ok(if from_year <= base_year {
        value * factor
    } else {
        value / factor
    })
}

/// Regional wind and PV costs in base-year USD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCosts {
    pub wind_capex_usd_per_kw: f64,
    pub pv_capex_usd_per_kw: f64,
    /// Fraction of capex per year.
    pub wind_opex_frac: f64,
    pub pv_opex_frac: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionCostTable {
    regions: BTreeMap<String, RegionCosts>,
    assignment: BTreeMap<Iso3, String>,
}

impl RegionCostTable {
    pub fn load(
        regions: &Path,
        country_regions: &Path,
        registry: &CountryRegistry,
        inflation: &InflationSeries,
        base_year: i32,
    ) -> Result<Self, IngestError> {
        let regions_label = regions.display().to_string();
        let assign_label = country_regions.display().to_string();
        let regions_file = std::fs::File::open(regions).map_err(io_error(&regions_label))?;
        let assign_file = std::fs::File::open(country_regions).map_err(io_error(&assign_label))?;
        Self::from_readers(
            (regions_file, &regions_label),
            (assign_file, &assign_label),
            registry,
            inflation,
            base_year,
        )
    }

    /// `regions`: `region,wind_capex_usd_per_kw,pv_capex_usd_per_kw,wind_opex_pct,pv_opex_pct,price_year`.
    /// A region may appear on several rows; its costs are the arithmetic
    /// mean of the rows after price adjustment.
    /// `country_regions`: `iso3,region`, one row per registry country.
    pub fn from_readers<R1: Read, R2: Read>(
        (regions, regions_label): (R1, &str),
        (country_regions, assign_label): (R2, &str),
        registry: &CountryRegistry,
        inflation: &InflationSeries,
        base_year: i32,
    ) -> Result<Self, IngestError> {
        let label = regions_label;
        let (idx, rows) = read_table(
            regions,
            label,
            &[
                "region",
                "wind_capex_usd_per_kw",
                "pv_capex_usd_per_kw",
                "wind_opex_pct",
                "pv_opex_pct",
                "price_year",
            ],
        )?;
        let mut sums: BTreeMap<String, ([f64; 4], usize)> = BTreeMap::new();
        for record in &rows {
            let row = crate::csvio::line_of(record);
            let name = record[idx[0]].to_string();
            if name.is_empty() {
                return Err(malformed(label, row, "empty region name"));
            }
            let wind = parse_f64(label, row, &record[idx[1]], "wind capex")?;
            let pv = parse_f64(label, row, &record[idx[2]], "pv capex")?;
            let wind_opex = parse_f64(label, row, &record[idx[3]], "wind opex")? / 100.0;
            let pv_opex = parse_f64(label, row, &record[idx[4]], "pv opex")? / 100.0;
            let year = parse_year(label, row, &record[idx[5]])?;
            if !(wind > 0.0 && pv > 0.0) {
                return Err(malformed(label, row, "capex must be positive"));
            }
            if !(wind_opex > 0.0 && wind_opex < 1.0 && pv_opex > 0.0 && pv_opex < 1.0) {
                return Err(malformed(label, row, "opex must lie strictly between 0 and 100 %"));
            }
            let wind = adjust_to_base_year(wind, year, inflation, base_year)?;
            let pv = adjust_to_base_year(pv, year, inflation, base_year)?;
            let entry = sums.entry(name).or_insert(([0.0; 4], 0));
            for (acc, v) in entry.0.iter_mut().zip([wind, pv, wind_opex, pv_opex]) {
                *acc += v;
            }
            entry.1 += 1;
        }
        let regions: BTreeMap<String, RegionCosts> = sums
            .into_iter()
            .map(|(name, (s, n))| {
                let n = n as f64;
                (
                    name,
                    RegionCosts {
                        wind_capex_usd_per_kw: s[0] / n,
                        pv_capex_usd_per_kw: s[1] / n,
                        wind_opex_frac: s[2] / n,
                        pv_opex_frac: s[3] / n,
                    },
                )
            })
            .collect();

        let label = assign_label;
        let (idx, rows) = read_table(country_regions, label, &["iso3", "region"])?;
        let mut assignment = BTreeMap::new();
        for record in &rows {
            let row = crate::csvio::line_of(record);
            let code = parse_country(registry, label, row, &record[idx[0]])?;
            let region = record[idx[1]].to_string();
            if !regions.contains_key(&region) {
                return Err(malformed(label, row, format!("unknown region {region:?}")));
            }
            if assignment.insert(code, region).is_some() {
                return Err(malformed(label, row, format!("{code} assigned twice")));
            }
        }
        let missing: Vec<String> = registry
            .codes()
            .filter(|c| !assignment.contains_key(c))
            .map(|c| c.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(IngestError::InvalidRegionTable(format!(
                "{} countries without a region: {}",
                missing.len(),
                missing.join(",")
            )));
        }
        Ok(RegionCostTable { regions, assignment })
    }

    pub fn region_of(&self, code: Iso3) -> Option<&str> {
        self.assignment.get(&code).map(String::as_str)
    }

    pub fn costs_for(&self, code: Iso3) -> Option<&RegionCosts> {
        self.assignment.get(&code).and_then(|r| self.regions.get(r))
    }

    pub fn region(&self, name: &str) -> Option<&RegionCosts> {
        self.regions.get(name)
    }

    pub fn regions(&self) -> impl Iterator<Item = (&str, &RegionCosts)> {
        self.regions.iter().map(|(k, v)| (k.as_str(), v))
    }
}
