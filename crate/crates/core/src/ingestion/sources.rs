use std::collections::BTreeSet;
use std::fmt;
use std::io::Read;
use std::path::Path;

use crate::country::{CountryRegistry, Iso3};

use super::grades::GradeTable;
use super::{io_error, malformed, parse_country, parse_f64, parse_year, read_table, IngestError};

/// A file-backed economic rating source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatingSource {
    /// `iso3,year,rate` with the rate as a fraction.
    Damodaran,
    /// `iso3,grade` with a label from the grade table.
    WikiRating,
    /// `iso3,score` with an integer score 1..=7.
    Credendo,
}

/// Where a country's economic rate came from, in cascade order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EconomicSource {
    Damodaran,
    WikiRating,
    Credendo,
    Override,
}

impl From<RatingSource> for EconomicSource {
    fn from(source: RatingSource) -> Self {
        match source {
            RatingSource::Damodaran => EconomicSource::Damodaran,
            RatingSource::WikiRating => EconomicSource::WikiRating,
            RatingSource::Credendo => EconomicSource::Credendo,
        }
    }
}

impl fmt::Display for EconomicSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EconomicSource::Damodaran => "DAMODARAN",
            EconomicSource::WikiRating => "WIKIRATING",
            EconomicSource::Credendo => "CREDENDO",
            EconomicSource::Override => "OVERRIDE",
        })
    }
}

/// The value as it appeared in the source file.
#[derive(Debug, Clone, PartialEq)]
pub enum RawValue {
    Spread(f64),
    Grade(String),
    Score(u8),
    Literal(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatingObservation {
    pub country: Iso3,
    pub source: EconomicSource,
    /// `None` for single-vintage sources.
    pub year: Option<i32>,
    pub raw: RawValue,
    /// Contribution on the common discount-rate scale, in `[0, 1]`.
    pub rate: f64,
}

/// Map a Credendo score onto the grade table by affine index rounding:
/// score `s` selects entry `round((s - 1) * 20 / 6)`, halves rounding up.
pub fn credendo_to_rate(score: i64, table: &GradeTable) -> Result<f64, IngestError> {
    if !(1..=7).contains(&score) {
        return Err(IngestError::OutOfRange(score));
    }
    let top = (table.len() - 1) as i64;
    // round-half-up of (s-1)*top/6 in integer arithmetic
    let index = ((score - 1) * top * 2 + 6) / 12;
    Ok(table.rate(index as usize).expect("index within table"))
}

pub fn parse_economic_source(
    path: &Path,
    source: RatingSource,
    registry: &CountryRegistry,
    grades: &GradeTable,
) -> Result<Vec<RatingObservation>, IngestError> {
    let label = path.display().to_string();
    let file = std::fs::File::open(path).map_err(io_error(&label))?;
    parse_economic_reader(file, &label, source, registry, grades)
}

/// Parse one rating source. `label` names the input in error messages.
pub fn parse_economic_reader<R: Read>(
    input: R,
    label: &str,
    source: RatingSource,
    registry: &CountryRegistry,
    grades: &GradeTable,
) -> Result<Vec<RatingObservation>, IngestError> {
    let required: &[&str] = match source {
        RatingSource::Damodaran => &["iso3", "year", "rate"],
        RatingSource::WikiRating => &["iso3", "grade"],
        RatingSource::Credendo => &["iso3", "score"],
    };
    let (idx, rows) = read_table(input, label, required)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for record in &rows {
        let row = crate::csvio::line_of(record);
        let country = parse_country(registry, label, row, &record[idx[0]])?;
        let observation = match source {
            RatingSource::Damodaran => {
                let year = parse_year(label, row, &record[idx[1]])?;
                let rate = parse_f64(label, row, &record[idx[2]], "rate")?;
                if !(0.0..=1.0).contains(&rate) {
                    return Err(malformed(label, row, format!("rate {rate} outside [0, 1]")));
                }
                RatingObservation {
                    country,
                    source: source.into(),
                    year: Some(year),
                    raw: RawValue::Spread(rate),
                    rate,
                }
            }
            RatingSource::WikiRating => {
                let grade = record[idx[1]].to_string();
                let index = grades.index_of(&grade).ok_or_else(|| IngestError::UnknownGrade {
                    path: label.to_string(),
                    row,
                    grade: grade.clone(),
                })?;
                RatingObservation {
                    country,
                    source: source.into(),
                    year: None,
                    raw: RawValue::Grade(grade),
                    rate: grades.rate(index).expect("index from table"),
                }
            }
            RatingSource::Credendo => {
                let field = &record[idx[1]];
                let score: i64 = field
                    .parse()
                    .map_err(|_| malformed(label, row, format!("score {field:?} is not an integer")))?;
                let rate = credendo_to_rate(score, grades).map_err(|e| malformed(label, row, e.to_string()))?;
                RatingObservation {
                    country,
                    source: source.into(),
                    year: None,
                    raw: RawValue::Score(score as u8),
                    rate,
                }
            }
        };
        if !seen.insert((country, observation.year)) {
            return Err(malformed(label, row, format!("duplicate entry for {country}")));
        }
        out.push(observation);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HazardSource {
    Wri,
    /// Copied from `donor`, or a literal score when `donor` is `None`.
    NeighborOverride {
        donor: Option<Iso3>,
    },
}

impl fmt::Display for HazardSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HazardSource::Wri => f.write_str("WRI"),
            HazardSource::NeighborOverride { donor: Some(d) } => write!(f, "NEIGHBOR_OVERRIDE:{d}"),
            HazardSource::NeighborOverride { donor: None } => f.write_str("NEIGHBOR_OVERRIDE:LITERAL"),
        }
    }
}

/// A natural-hazard index value on the 0–100 scale.
#[derive(Debug, Clone, PartialEq)]
pub struct HazardScore {
    pub country: Iso3,
    pub wri: f64,
    pub year: i32,
    pub source: HazardSource,
}

pub fn parse_wri(path: &Path, registry: &CountryRegistry) -> Result<Vec<HazardScore>, IngestError> {
    let label = path.display().to_string();
    let file = std::fs::File::open(path).map_err(io_error(&label))?;
    parse_wri_reader(file, &label, registry)
}

/// Parse `iso3,year,score` rows.
pub fn parse_wri_reader<R: Read>(
    input: R,
    label: &str,
    registry: &CountryRegistry,
) -> Result<Vec<HazardScore>, IngestError> {
    let (idx, rows) = read_table(input, label, &["iso3", "year", "score"])?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for record in &rows {
        let row = crate::csvio::line_of(record);
        let country = parse_country(registry, label, row, &record[idx[0]])?;
        let year = parse_year(label, row, &record[idx[1]])?;
        let wri = parse_f64(label, row, &record[idx[2]], "score")?;
        if !(0.0..=100.0).contains(&wri) {
            return Err(malformed(label, row, format!("score {wri} outside [0, 100]")));
        }
        if !seen.insert((country, year)) {
            return Err(malformed(label, row, format!("duplicate entry for {country} {year}")));
        }
        out.push(HazardScore {
            country,
            wri,
            year,
            source: HazardSource::Wri,
        });
    }
    Ok(out)
}
