use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::analytics::{
    compare_schemes, join_properties, range_histogram, window_stats, yearly_stats, AnalyticsError, ComparisonRecord,
    CountryProperties, DistributionStats, DEFAULT_BIN_WIDTH,
};
use crate::country::{CountryRegistry, Iso3};
use crate::csvio::{fmt_f64, CsvOutput};
use crate::energymodel::{demand_from_potential, solve_case, LcohResult, ProfilePair, SystemCase, TechnologySet};
use crate::ingestion::{
    annual_series, parse_economic_source, parse_overrides, parse_wri, resolve_rates, EconomicSource, GradeTable,
    InflationSeries, RatingSource, RegionCostTable,
};
use crate::ratecalc::{
    compute_discount_rates, pearson_permutation_p, pearson_r, BlendWeights, DiscountRateRecord, EconomicRateSeries,
    RateSamples, YearWindow, DEFAULT_PERMUTATIONS,
};

use super::config::{RateMode, RunConfig};
use super::tables::{read_lcoh_table, read_potentials, read_rates_table};
use super::{io_error, PipelineError};

pub const RATES_FILE: &str = "discount_rates.csv";
pub const LCOH_FILE: &str = "lcoh.csv";
pub const COMPARISON_FILE: &str = "comparison.csv";
pub const GEOJSON_FILE: &str = "countries.geojson";
pub const STATS_FILE: &str = "stats.csv";
pub const RANGES_FILE: &str = "ranges.csv";
pub const RANGE_HISTOGRAM_FILE: &str = "range_histogram.csv";
pub const CORRELATION_FILE: &str = "correlation.csv";

const PERMUTATION_SEED: u64 = 0x5eed;
const AVERAGING_WINDOWS: [u32; 3] = [3, 5, 10];

fn write(config: &RunConfig, name: &str, table: &CsvOutput) -> Result<PathBuf, PipelineError> {
    let path = config.out.join(name);
    table.write_to(&path).map_err(io_error(&path))?;
    Ok(path)
}

fn grade_table(config: &RunConfig) -> Result<GradeTable, PipelineError> {
    Ok(match config.path("grades") {
        Some(path) => GradeTable::load(&path)?,
        None => GradeTable::builtin(),
    })
}

fn compute_rates(config: &RunConfig, registry: &CountryRegistry) -> Result<Vec<DiscountRateRecord>, PipelineError> {
    let grades = grade_table(config)?;
    let mut observations = Vec::new();
    for (key, source) in [
        ("damodaran", RatingSource::Damodaran),
        ("wikirating", RatingSource::WikiRating),
        ("credendo", RatingSource::Credendo),
    ] {
        if let Some(path) = config.path(key) {
            observations.extend(parse_economic_source(&path, source, registry, &grades)?);
        }
    }
    let hazard = match config.path("wri") {
        Some(path) => parse_wri(&path, registry)?,
        None => Vec::new(),
    };
    let overrides = match config.path("overrides") {
        Some(path) => parse_overrides(&path, registry)?,
        None => Vec::new(),
    };
    let window = YearWindow::new(config.end_year, config.window)?;
    let resolved = resolve_rates(registry, &observations, &hazard, &overrides, window)?;
    let weights = BlendWeights::new(config.blend_a)?;
    Ok(compute_discount_rates(&resolved, weights, config.wri_denominator)?)
}

/// Resolve, average, normalize and blend; write `discount_rates.csv`.
pub fn cmd_rates(config: &RunConfig) -> Result<Vec<DiscountRateRecord>, PipelineError> {
    let registry = CountryRegistry::builtin();
    let records = compute_rates(config, registry)?;
    let mut table = CsvOutput::new(
        &config.hash(),
        &[
            "iso3",
            "name",
            "i_economic",
            "i_hazard",
            "a",
            "b",
            "i_final",
            "econ_source",
            "hazard_source",
            "window_years",
            "samples_used",
        ],
    );
    for r in &records {
        table.row([
            r.country.to_string(),
            registry.name(r.country).to_string(),
            fmt_f64(r.i_economic),
            fmt_f64(r.i_hazard),
            fmt_f64(r.weight_a),
            fmt_f64(r.weight_b),
            fmt_f64(r.i_final),
            r.econ_source.clone(),
            r.hazard_source.clone(),
            r.window_years.to_string(),
            r.samples_used.to_string(),
        ]);
    }
    write(config, RATES_FILE, &table)?;
    Ok(records)
}

/// One country's line in `lcoh.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct LcohRow {
    pub country: Iso3,
    pub discount_rate: Option<f64>,
    pub result: Option<LcohResult>,
    /// `ok` or a short failure label.
    pub status: String,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcohOutcome {
    pub rows: Vec<LcohRow>,
    pub path: PathBuf,
}

impl LcohOutcome {
    pub fn solved(&self) -> usize {
        self.rows.iter().filter(|r| r.result.is_some()).count()
    }

    pub fn failed(&self) -> usize {
        self.rows.len() - self.solved()
    }
}

struct LcohInputs {
    rates: BTreeMap<Iso3, f64>,
    potentials: BTreeMap<Iso3, f64>,
    regions: RegionCostTable,
    profiles_dir: PathBuf,
}

fn failure(country: Iso3, rate: Option<f64>, status: &str, detail: String) -> LcohRow {
    LcohRow {
        country,
        discount_rate: rate,
        result: None,
        status: status.to_string(),
        detail: Some(detail),
    }
}

fn solve_country(config: &RunConfig, inputs: &LcohInputs, country: Iso3) -> LcohRow {
    let Some(&rate) = inputs.rates.get(&country) else {
        return failure(country, None, "missing_rate", format!("{country}: no discount rate"));
    };
    let Some(&potential) = inputs.potentials.get(&country) else {
        return failure(
            country,
            Some(rate),
            "missing_potential",
            format!("{country}: no potential"),
        );
    };
    let Some(region) = inputs.regions.costs_for(country) else {
        return failure(country, Some(rate), "missing_region", format!("{country}: no region"));
    };
    let profile_path = inputs.profiles_dir.join(format!("{country}.csv"));
    if !profile_path.is_file() {
        return failure(
            country,
            Some(rate),
            "missing_profile",
            format!("{country}: {} not found", profile_path.display()),
        );
    }
    let solved = (|| {
        let profiles = ProfilePair::load(&profile_path, config.profile_step_hours)?.aggregate(config.resolution)?;
        let demand = demand_from_potential(potential)?;
        let case = SystemCase::new(
            country,
            rate,
            profiles,
            demand,
            TechnologySet::for_country(country, region),
        )?;
        solve_case(&case)
    })();
    match solved {
        Ok(result) => LcohRow {
            country,
            discount_rate: Some(rate),
            result: Some(result),
            status: "ok".into(),
            detail: None,
        },
        Err(e) => failure(country, Some(rate), e.status(), format!("{country}: {e}")),
    }
}

/// Size and price the hydrogen system of every requested country; write
/// `lcoh.csv`. Countries that fail keep a row with an explanatory status.
pub fn cmd_lcoh(config: &RunConfig) -> Result<LcohOutcome, PipelineError> {
    let registry = CountryRegistry::builtin();
    let requested: Vec<Iso3> = config.countries.clone().unwrap_or_else(|| registry.codes().collect());
    let rates: BTreeMap<Iso3, f64> = match config.rate_mode {
        RateMode::Uniform => requested.iter().map(|&c| (c, config.uniform_rate)).collect(),
        RateMode::Rates => match config.path("rates") {
            Some(path) => read_rates_table(&path, registry)?
                .into_iter()
                .map(|(c, row)| (c, row.i_final))
                .collect(),
            None => compute_rates(config, registry)?
                .into_iter()
                .map(|r| (r.country, r.i_final))
                .collect(),
        },
    };
    let inflation = match config.path("inflation") {
        Some(path) => InflationSeries::load(&path)?,
        None => InflationSeries::default(),
    };
    let regions = RegionCostTable::load(
        &config.require_path("regions")?,
        &config.require_path("country_regions")?,
        registry,
        &inflation,
        config.base_year,
    )?;
    let inputs = LcohInputs {
        rates,
        potentials: read_potentials(&config.require_path("potentials")?, registry)?,
        regions,
        profiles_dir: config.require_path("profiles_dir")?,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| PipelineError::Config(format!("worker pool: {e}")))?;
    // par_iter keeps input order, and `requested` is sorted by iso3
    let mut rows: Vec<LcohRow> = pool.install(|| {
        requested
            .par_iter()
            .map(|&c| solve_country(config, &inputs, c))
            .collect()
    });
    rows.sort_by_key(|r| r.country);

    let mut table = CsvOutput::new(
        &config.hash(),
        &[
            "iso3",
            "lcoh_usd_per_kg",
            "cap_wind_kw",
            "cap_pv_kw",
            "cap_ely_kw",
            "cap_storage_kwh",
            "objective_usd_yr",
            "discount_rate",
            "status",
        ],
    );
    for row in &rows {
        let rate = row.discount_rate.map(fmt_f64).unwrap_or_default();
        match &row.result {
            Some(r) => table.row([
                row.country.to_string(),
                fmt_f64(r.lcoh_usd_per_kg),
                fmt_f64(r.solution.cap_wind_kw),
                fmt_f64(r.solution.cap_pv_kw),
                fmt_f64(r.solution.cap_ely_kw),
                fmt_f64(r.solution.cap_storage_kwh),
                fmt_f64(r.objective_usd_yr),
                rate,
                row.status.clone(),
            ]),
            None => {
                let mut fields = vec![row.country.to_string()];
                fields.extend(std::iter::repeat_n(String::new(), 6));
                fields.push(rate);
                fields.push(row.status.clone());
                table.row(fields);
            }
        }
    }
    let path = write(config, LCOH_FILE, &table)?;
    Ok(LcohOutcome { rows, path })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareOutcome {
    pub records: Vec<ComparisonRecord>,
    /// Fixed-width listing of the largest relative changes.
    pub top_table: String,
    pub path: PathBuf,
    pub geojson: Option<PathBuf>,
}

/// Compare two `lcoh.csv` files (baseline first); write `comparison.csv`
/// and optionally `countries.geojson`.
pub fn cmd_compare(
    config: &RunConfig,
    baseline: &Path,
    alternative: &Path,
    boundaries: Option<&Path>,
    top: usize,
) -> Result<CompareOutcome, PipelineError> {
    let registry = CountryRegistry::builtin();
    let a = read_lcoh_table(baseline, registry)?;
    let b = read_lcoh_table(alternative, registry)?;
    let solved = |t: &BTreeMap<Iso3, super::LcohTableRow>| -> BTreeMap<Iso3, f64> {
        t.values()
            .filter(|r| r.status == "ok")
            .filter_map(|r| r.lcoh_usd_per_kg.map(|v| (r.country, v)))
            .collect()
    };
    let records = compare_schemes(&solved(&a), &solved(&b))?;

    let mut table = CsvOutput::new(&config.hash(), &["iso3", "lcoh_base", "lcoh_new", "delta", "rel"]);
    let mut by_code: Vec<&ComparisonRecord> = records.iter().collect();
    by_code.sort_by_key(|r| r.country);
    for r in &by_code {
        table.row([
            r.country.to_string(),
            fmt_f64(r.lcoh_a),
            fmt_f64(r.lcoh_b),
            fmt_f64(r.delta),
            fmt_f64(r.rel),
        ]);
    }
    let path = write(config, COMPARISON_FILE, &table)?;

    let mut top_table = String::new();
    let _ = writeln!(
        top_table,
        "{:>4}  {:<4} {:<32} {:>10} {:>10} {:>10} {:>9}",
        "rank", "iso3", "name", "lcoh_base", "lcoh_new", "delta", "rel_%"
    );
    for (i, r) in records.iter().take(top).enumerate() {
        let _ = writeln!(
            top_table,
            "{:>4}  {:<4} {:<32} {:>10.2} {:>10.2} {:>10.2} {:>9.1}",
            i + 1,
            r.country,
            registry.name(r.country).chars().take(32).collect::<String>(),
            r.lcoh_a,
            r.lcoh_b,
            r.delta,
            100.0 * r.rel
        );
    }

    let geojson = match boundaries {
        Some(input) => {
            let text = std::fs::read_to_string(input).map_err(io_error(input))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| AnalyticsError::InvalidGeoJson(e.to_string()))?;
            let props: BTreeMap<Iso3, CountryProperties> = records
                .iter()
                .map(|r| {
                    (
                        r.country,
                        CountryProperties {
                            i_final: b.get(&r.country).and_then(|row| row.discount_rate),
                            lcoh: Some(r.lcoh_b),
                            rel_vs_uniform: Some(r.rel),
                        },
                    )
                })
                .collect();
            let joined = join_properties(value, &props, registry, &config.hash())?;
            let mut text = serde_json::to_string_pretty(&joined).expect("JSON values serialize");
            text.push('\n');
            let out = config.out.join(GEOJSON_FILE);
            if let Some(dir) = out.parent() {
                std::fs::create_dir_all(dir).map_err(io_error(dir))?;
            }
            std::fs::write(&out, text).map_err(io_error(&out))?;
            Some(out)
        }
        None => None,
    };
    Ok(CompareOutcome {
        records,
        top_table,
        path,
        geojson,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsOutcome {
    pub rows: Vec<(String, i32, DistributionStats)>,
    pub histogram_total: usize,
    pub correlation: Option<(f64, f64)>,
    pub written: Vec<PathBuf>,
}

fn clip_to_year(series: &EconomicRateSeries, end_year: i32) -> EconomicRateSeries {
    match &series.samples {
        RateSamples::Annual(map) => {
            EconomicRateSeries::annual(series.country, map.range(..=end_year).map(|(y, v)| (*y, *v)).collect())
        }
        RateSamples::Undated(_) => series.clone(),
    }
}

/// Yearly and window-average rate statistics, per-country ranges, and the
/// economic/hazard correlation when a rates file is configured.
pub fn cmd_stats(config: &RunConfig) -> Result<StatsOutcome, PipelineError> {
    let registry = CountryRegistry::builtin();
    let grades = grade_table(config)?;
    let observations = parse_economic_source(
        &config.require_path("damodaran")?,
        RatingSource::Damodaran,
        registry,
        &grades,
    )?;
    let series: Vec<EconomicRateSeries> = annual_series(&observations, EconomicSource::Damodaran)
        .values()
        .map(|s| clip_to_year(s, config.end_year))
        .filter(|s| !s.values().is_empty())
        .collect();
    let years: BTreeSet<i32> = observations
        .iter()
        .filter_map(|o| o.year)
        .filter(|&y| y <= config.end_year)
        .collect();

    let mut rows = Vec::new();
    for &year in &years {
        match yearly_stats(&series, year) {
            Ok(s) => rows.push(("annual".to_string(), year, s.stats)),
            Err(AnalyticsError::InsufficientData { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    for w in AVERAGING_WINDOWS {
        let window = YearWindow::new(config.end_year, w)?;
        match window_stats(&series, window) {
            Ok(s) => rows.push((format!("avg{w}"), config.end_year, s)),
            Err(AnalyticsError::InsufficientData { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let hash = config.hash();
    let mut written = Vec::new();

    let mut table = CsvOutput::new(
        &hash,
        &[
            "label", "year", "count", "mean", "median", "q1", "q3", "iqr", "std", "min", "max", "outliers",
        ],
    );
    for (label, year, s) in &rows {
        let outliers = s
            .outliers
            .iter()
            .map(|(c, v)| format!("{c}:{}", fmt_f64(*v)))
            .collect::<Vec<_>>()
            .join(";");
        table.row([
            label.clone(),
            year.to_string(),
            s.count.to_string(),
            fmt_f64(s.mean),
            fmt_f64(s.median),
            fmt_f64(s.q1),
            fmt_f64(s.q3),
            fmt_f64(s.iqr),
            fmt_f64(s.std),
            fmt_f64(s.min),
            fmt_f64(s.max),
            outliers,
        ]);
    }
    written.push(write(config, STATS_FILE, &table)?);

    let histogram = range_histogram(&series, DEFAULT_BIN_WIDTH)?;
    let mut table = CsvOutput::new(&hash, &["iso3", "min", "max", "range", "samples"]);
    for r in &histogram.ranges {
        table.row([
            r.country.to_string(),
            fmt_f64(r.min),
            fmt_f64(r.max),
            fmt_f64(r.range),
            r.samples.to_string(),
        ]);
    }
    written.push(write(config, RANGES_FILE, &table)?);
    let mut table = CsvOutput::new(&hash, &["bin_lower", "bin_upper", "count"]);
    for (k, count) in histogram.counts.iter().enumerate() {
        table.row([
            fmt_f64(k as f64 * histogram.bin_width),
            fmt_f64((k + 1) as f64 * histogram.bin_width),
            count.to_string(),
        ]);
    }
    written.push(write(config, RANGE_HISTOGRAM_FILE, &table)?);

    let correlation = match config.path("rates") {
        Some(path) => {
            let rates = read_rates_table(&path, registry)?;
            let x: Vec<f64> = rates.values().map(|r| r.i_economic).collect();
            let y: Vec<f64> = rates.values().map(|r| r.i_hazard).collect();
            let p = pearson_r(&x, &y)?;
            let perm = pearson_permutation_p(&x, &y, DEFAULT_PERMUTATIONS, PERMUTATION_SEED)?;
            let mut table = CsvOutput::new(&hash, &["n", "r", "p_value", "p_value_permutation", "permutations"]);
            table.row([
                p.n.to_string(),
                fmt_f64(p.r),
                format!("{:.6e}", p.p_value),
                format!("{:.6e}", perm),
                DEFAULT_PERMUTATIONS.to_string(),
            ]);
            written.push(write(config, CORRELATION_FILE, &table)?);
            Some((p.r, p.p_value))
        }
        None => None,
    };
    Ok(StatsOutcome {
        rows,
        histogram_total: histogram.counted(),
        correlation,
        written,
    })
}
