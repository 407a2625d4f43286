use std::collections::BTreeMap;
use std::fmt;

use crate::country::{CountryRegistry, Iso3};
use crate::ratecalc::{EconomicRateSeries, YearWindow};

use super::overrides::{Override, OverrideTarget};
use super::sources::{EconomicSource, HazardScore, HazardSource, RatingObservation};
use super::IngestError;

/// Which cascade step produced a country's economic series.
#[derive(Debug, Clone, PartialEq)]
pub enum EconomicProvenance {
    Source(EconomicSource),
    OverrideDonor(Iso3),
    OverrideLiteral(f64),
    OverrideWorst,
}

impl EconomicProvenance {
    pub fn source(&self) -> EconomicSource {
        match self {
            EconomicProvenance::Source(s) => *s,
            _ => EconomicSource::Override,
        }
    }
}

impl fmt::Display for EconomicProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EconomicProvenance::Source(s) => write!(f, "{s}"),
            EconomicProvenance::OverrideDonor(d) => write!(f, "OVERRIDE:{d}"),
            EconomicProvenance::OverrideLiteral(v) => write!(f, "OVERRIDE:{}", crate::csvio::fmt_f64(*v)),
            EconomicProvenance::OverrideWorst => f.write_str("OVERRIDE:WORST"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedCountry {
    pub country: Iso3,
    pub economic: EconomicRateSeries,
    pub economic_provenance: EconomicProvenance,
    pub hazard: HazardScore,
}

impl ResolvedCountry {
    /// `WRI:<year>`, `NEIGHBOR_OVERRIDE:<donor>` or `NEIGHBOR_OVERRIDE:LITERAL`.
    pub fn hazard_provenance(&self) -> String {
        match self.hazard.source {
            HazardSource::Wri => format!("WRI:{}", self.hazard.year),
            ref other => other.to_string(),
        }
    }
}

/// One economic series and one hazard score for every registry country.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedRates {
    pub window: YearWindow,
    pub countries: BTreeMap<Iso3, ResolvedCountry>,
}

impl ResolvedRates {
    pub fn len(&self) -> usize {
        self.countries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.countries.is_empty()
    }

    pub fn get(&self, code: Iso3) -> Option<&ResolvedCountry> {
        self.countries.get(&code)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ResolvedCountry> {
        self.countries.values()
    }
}

/// Dated observations grouped into one series per country.
pub fn annual_series(observations: &[RatingObservation], source: EconomicSource) -> BTreeMap<Iso3, EconomicRateSeries> {
    let mut grouped: BTreeMap<Iso3, BTreeMap<i32, f64>> = BTreeMap::new();
    for obs in observations.iter().filter(|o| o.source == source) {
        if let Some(year) = obs.year {
            grouped.entry(obs.country).or_default().insert(year, obs.rate);
        }
    }
    grouped
        .into_iter()
        .map(|(code, samples)| (code, EconomicRateSeries::annual(code, samples)))
        .collect()
}

fn undated(observations: &[RatingObservation], source: EconomicSource) -> BTreeMap<Iso3, f64> {
    observations
        .iter()
        .filter(|o| o.source == source && o.year.is_none())
        .map(|o| (o.country, o.rate))
        .collect()
}

/// Highest dated Damodaran rate in the latest year with data, not after `end_year`.
fn worst_rate(dated: &BTreeMap<Iso3, EconomicRateSeries>, end_year: i32) -> Option<f64> {
    let latest = dated
        .values()
        .filter_map(|s| match &s.samples {
            crate::ratecalc::RateSamples::Annual(map) => map.range(..=end_year).next_back().map(|(y, _)| *y),
            crate::ratecalc::RateSamples::Undated(_) => None,
        })
        .max()?;
    dated
        .values()
        .filter_map(|s| s.in_year(latest))
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
}

/// Run the source cascade for every registry country.
///
/// Economic: Damodaran (with at least one sample in `window`), then
/// WikiRating, then Credendo, then the override file. Hazard: the latest
/// index score not after the window end, then the override file. Donor
/// overrides copy whatever the donor resolved to, so chains are followed;
/// anything left over (no source, no usable override, cycles) is reported
/// in one error listing every such country.
pub fn resolve_rates(
    registry: &CountryRegistry,
    observations: &[RatingObservation],
    hazard: &[HazardScore],
    overrides: &[Override],
    window: YearWindow,
) -> Result<ResolvedRates, IngestError> {
    let damodaran = annual_series(observations, EconomicSource::Damodaran);
    let wiki = undated(observations, EconomicSource::WikiRating);
    let credendo = undated(observations, EconomicSource::Credendo);

    let mut economic: BTreeMap<Iso3, (EconomicRateSeries, EconomicProvenance)> = BTreeMap::new();
    for code in registry.codes() {
        let resolved = if let Some(series) = damodaran.get(&code).filter(|s| s.has_data_in(window)) {
            Some((series.clone(), EconomicProvenance::Source(EconomicSource::Damodaran)))
        } else if let Some(&rate) = wiki.get(&code) {
            Some((
                EconomicRateSeries::undated(code, rate),
                EconomicProvenance::Source(EconomicSource::WikiRating),
            ))
        } else {
            credendo.get(&code).map(|&rate| {
                (
                    EconomicRateSeries::undated(code, rate),
                    EconomicProvenance::Source(EconomicSource::Credendo),
                )
            })
        };
        if let Some(value) = resolved {
            economic.insert(code, value);
        }
    }

    let mut hazards: BTreeMap<Iso3, HazardScore> = BTreeMap::new();
    for score in hazard.iter().filter(|s| s.year <= window.end_year) {
        let newer = hazards.get(&score.country).is_none_or(|held| score.year > held.year);
        if newer {
            hazards.insert(score.country, score.clone());
        }
    }

    let worst = worst_rate(&damodaran, window.end_year);
    let mut pending_econ: Vec<&Override> = Vec::new();
    let mut pending_hazard: Vec<&Override> = Vec::new();
    for ov in overrides {
        if ov.scope.covers_economic() && !economic.contains_key(&ov.country) {
            match ov.target {
                OverrideTarget::Literal(rate) => {
                    economic.insert(
                        ov.country,
                        (
                            EconomicRateSeries::undated(ov.country, rate),
                            EconomicProvenance::OverrideLiteral(rate),
                        ),
                    );
                }
                OverrideTarget::Worst => {
                    if let Some(rate) = worst {
                        economic.insert(
                            ov.country,
                            (
                                EconomicRateSeries::undated(ov.country, rate),
                                EconomicProvenance::OverrideWorst,
                            ),
                        );
                    }
                }
                OverrideTarget::Donor(_) => pending_econ.push(ov),
            }
        }
        if ov.scope.covers_hazard() && !hazards.contains_key(&ov.country) {
            match ov.target {
                OverrideTarget::Literal(wri) => {
                    hazards.insert(
                        ov.country,
                        HazardScore {
                            country: ov.country,
                            wri,
                            year: window.end_year,
                            source: HazardSource::NeighborOverride { donor: None },
                        },
                    );
                }
                OverrideTarget::Donor(_) => pending_hazard.push(ov),
                OverrideTarget::Worst => {}
            }
        }
    }

    // Donor chains: repeat until a pass makes no progress.
    loop {
        let mut progressed = false;
        pending_econ.retain(|ov| {
            let OverrideTarget::Donor(donor) = ov.target else {
                return false;
            };
            match economic.get(&donor) {
                Some((series, _)) => {
                    let mut copy = series.clone();
                    copy.country = ov.country;
                    economic.insert(ov.country, (copy, EconomicProvenance::OverrideDonor(donor)));
                    progressed = true;
                    false
                }
                None => true,
            }
        });
        pending_hazard.retain(|ov| {
            let OverrideTarget::Donor(donor) = ov.target else {
                return false;
            };
            match hazards.get(&donor) {
                Some(score) => {
                    let copy = HazardScore {
                        country: ov.country,
                        wri: score.wri,
                        year: score.year,
                        source: HazardSource::NeighborOverride { donor: Some(donor) },
                    };
                    hazards.insert(ov.country, copy);
                    progressed = true;
                    false
                }
                None => true,
            }
        });
        if !progressed {
            break;
        }
    }

    let unresolved: Vec<Iso3> = registry
        .codes()
        .filter(|c| !economic.contains_key(c) || !hazards.contains_key(c))
        .collect();
    if !unresolved.is_empty() {
        return Err(IngestError::UnresolvedCountries(unresolved));
    }

    let countries = registry
        .codes()
        .map(|code| {
            let (series, provenance) = economic.remove(&code).expect("checked above");
            let hazard = hazards.remove(&code).expect("checked above");
            (
                code,
                ResolvedCountry {
                    country: code,
                    economic: series,
                    economic_provenance: provenance,
                    hazard,
                },
            )
        })
        .collect();
    Ok(ResolvedRates { window, countries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingestion::overrides::OverrideScope;
    use crate::ingestion::sources::RawValue;
    use crate::ratecalc::RateSamples;

    fn c(code: &str) -> Iso3 {
        Iso3::new(code).unwrap()
    }

    fn registry() -> CountryRegistry {
        CountryRegistry::from_csv_str(
            "iso3,iso2,name\nARG,AR,Argentina\nCOK,CK,Cook Islands\nFJI,FJ,Fiji\nNZL,NZ,New Zealand\nSAU,SA,Saudi Arabia\nTUV,TV,Tuvalu\n",
        )
        .unwrap()
    }

    fn obs(code: &str, source: EconomicSource, year: Option<i32>, rate: f64) -> RatingObservation {
        RatingObservation {
            country: c(code),
            source,
            year,
            raw: RawValue::Literal(rate),
            rate,
        }
    }

    fn wri(code: &str, year: i32, score: f64) -> HazardScore {
        HazardScore {
            country: c(code),
            wri: score,
            year,
            source: HazardSource::Wri,
        }
    }

    fn ov(code: &str, target: OverrideTarget, scope: OverrideScope) -> Override {
        Override {
            country: c(code),
            target,
            scope,
        }
    }

    fn window() -> YearWindow {
        YearWindow::new(2024, 10).unwrap()
    }

    fn base_inputs() -> (Vec<RatingObservation>, Vec<HazardScore>) {
        let observations = vec![
            obs("ARG", EconomicSource::Damodaran, Some(2021), 0.169),
            obs("ARG", EconomicSource::Credendo, None, 0.12),
            obs("SAU", EconomicSource::Damodaran, Some(2024), 0.0097),
            obs("NZL", EconomicSource::WikiRating, None, 0.0046),
            obs("FJI", EconomicSource::Credendo, None, 0.0617),
        ];
        let hazards = vec![
            wri("ARG", 2023, 4.0),
            wri("ARG", 2025, 9.0),
            wri("ARG", 2022, 3.0),
            wri("SAU", 2023, 2.0),
            wri("NZL", 2023, 3.5),
            wri("FJI", 2023, 13.5),
        ];
        (observations, hazards)
    }

    #[test]
    fn cascade_prefers_damodaran_and_latest_wri() {
        let (observations, hazards) = base_inputs();
        let overrides = vec![
            ov("COK", OverrideTarget::Donor(c("NZL")), OverrideScope::Both),
            ov("TUV", OverrideTarget::Donor(c("FJI")), OverrideScope::Both),
        ];
        let out = resolve_rates(&registry(), &observations, &hazards, &overrides, window()).unwrap();
        assert_eq!(out.len(), 6);
        let arg = out.get(c("ARG")).unwrap();
        assert_eq!(arg.economic_provenance.to_string(), "DAMODARAN");
        assert_eq!(arg.economic.in_year(2021), Some(0.169));
        // 2025 is after the window end
        assert_eq!(arg.hazard_provenance(), "WRI:2023");
        assert_eq!(arg.hazard.wri, 4.0);
        assert_eq!(out.get(c("NZL")).unwrap().economic_provenance.to_string(), "WIKIRATING");
        assert_eq!(out.get(c("FJI")).unwrap().economic_provenance.to_string(), "CREDENDO");
        let cok = out.get(c("COK")).unwrap();
        assert_eq!(cok.economic_provenance.to_string(), "OVERRIDE:NZL");
        assert_eq!(cok.economic.samples, RateSamples::Undated(0.0046));
        assert_eq!(cok.economic.country, c("COK"));
        assert_eq!(cok.hazard_provenance(), "NEIGHBOR_OVERRIDE:NZL");
        assert_eq!(cok.hazard.wri, 3.5);
    }

    #[test]
    fn stale_damodaran_series_falls_through() {
        let (mut observations, hazards) = base_inputs();
        observations.push(obs("COK", EconomicSource::Damodaran, Some(2010), 0.05));
        observations.push(obs("COK", EconomicSource::Credendo, None, 0.02));
        let overrides = vec![
            ov("COK", OverrideTarget::Donor(c("NZL")), OverrideScope::Hazard),
            ov("TUV", OverrideTarget::Donor(c("FJI")), OverrideScope::Both),
        ];
        let out = resolve_rates(&registry(), &observations, &hazards, &overrides, window()).unwrap();
        assert_eq!(out.get(c("COK")).unwrap().economic_provenance.to_string(), "CREDENDO");
    }

    #[test]
    fn chains_literals_and_worst() {
        let (observations, hazards) = base_inputs();
        let overrides = vec![
            // TUV depends on COK, which is listed after it
            ov("TUV", OverrideTarget::Donor(c("COK")), OverrideScope::Economic),
            ov("TUV", OverrideTarget::Literal(42.0), OverrideScope::Hazard),
            ov("COK", OverrideTarget::Worst, OverrideScope::Economic),
            ov("COK", OverrideTarget::Donor(c("TUV")), OverrideScope::Hazard),
        ];
        let out = resolve_rates(&registry(), &observations, &hazards, &overrides, window()).unwrap();
        let cok = out.get(c("COK")).unwrap();
        // latest Damodaran year on record is 2024, which only SAU covers
        assert_eq!(cok.economic.samples, RateSamples::Undated(0.0097));
        assert_eq!(cok.economic_provenance.to_string(), "OVERRIDE:WORST");
        assert_eq!(cok.hazard.wri, 42.0);
        let tuv = out.get(c("TUV")).unwrap();
        assert_eq!(tuv.economic_provenance.to_string(), "OVERRIDE:COK");
        assert_eq!(tuv.hazard_provenance(), "NEIGHBOR_OVERRIDE:LITERAL");
        let literal = EconomicProvenance::OverrideLiteral(0.12);
        assert_eq!(literal.to_string(), "OVERRIDE:0.120000");
    }

    #[test]
    fn lists_every_unresolved_country() {
        let (observations, hazards) = base_inputs();
        // a donor cycle resolves nothing
        let overrides = vec![
            ov("TUV", OverrideTarget::Donor(c("COK")), OverrideScope::Both),
            ov("COK", OverrideTarget::Donor(c("TUV")), OverrideScope::Both),
        ];
        match resolve_rates(&registry(), &observations, &hazards, &overrides, window()) {
            Err(IngestError::UnresolvedCountries(list)) => assert_eq!(list, vec![c("COK"), c("TUV")]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn resolution_is_deterministic() {
        let (observations, hazards) = base_inputs();
        let overrides = vec![
            ov("COK", OverrideTarget::Donor(c("NZL")), OverrideScope::Both),
            ov("TUV", OverrideTarget::Donor(c("FJI")), OverrideScope::Both),
        ];
        let a = resolve_rates(&registry(), &observations, &hazards, &overrides, window()).unwrap();
        let b = resolve_rates(&registry(), &observations, &hazards, &overrides, window()).unwrap();
        assert_eq!(a, b);
    }
}
