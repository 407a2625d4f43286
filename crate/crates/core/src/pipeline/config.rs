use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::country::{CountryRegistry, Iso3};
use crate::energymodel::Resolution;
use crate::ingestion::BASE_YEAR;
use crate::ratecalc::{WriDenominator, DEFAULT_ECONOMIC_WEIGHT};

use super::PipelineError;

pub const DEFAULT_END_YEAR: i32 = 2024;
pub const DEFAULT_WINDOW: u32 = 10;
pub const DEFAULT_UNIFORM_RATE: f64 = 0.08;

/// Where `cmd_lcoh` takes its discount rates from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RateMode {
    /// Country-specific rates (a rates file, or computed from the sources).
    #[default]
    Rates,
    /// One rate for every country.
    Uniform,
}

impl FromStr for RateMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rates" => Ok(RateMode::Rates),
            "uniform" => Ok(RateMode::Uniform),
            other => Err(format!("rate_mode must be 'rates' or 'uniform', got {other:?}")),
        }
    }
}

impl fmt::Display for RateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RateMode::Rates => "rates",
            RateMode::Uniform => "uniform",
        })
    }
}

/// Keys naming input files, resolved against the data directory.
pub const PATH_KEYS: [&str; 12] = [
    "damodaran",
    "wikirating",
    "credendo",
    "wri",
    "overrides",
    "grades",
    "regions",
    "country_regions",
    "inflation",
    "potentials",
    "profiles_dir",
    "rates",
];

/// Keys that do not influence results and stay out of the config hash.
const UNHASHED_KEYS: [&str; 2] = ["out", "jobs"];

/// A run configuration.
///
/// The file format is one `key = value` pair per line; blank lines and
/// lines starting with `#` are ignored. Command-line flags override file
/// values through [`RunConfig::set`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    paths: BTreeMap<String, String>,
    pub end_year: i32,
    pub window: u32,
    pub blend_a: f64,
    pub uniform_rate: f64,
    pub rate_mode: RateMode,
    pub resolution: Resolution,
    pub wri_denominator: WriDenominator,
    pub base_year: i32,
    /// Duration of one profile step, hours.
    pub profile_step_hours: f64,
    pub countries: Option<Vec<Iso3>>,
    pub out: PathBuf,
    pub jobs: usize,
    /// Root for relative input paths.
    pub data_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            paths: BTreeMap::new(),
            end_year: DEFAULT_END_YEAR,
            window: DEFAULT_WINDOW,
            blend_a: DEFAULT_ECONOMIC_WEIGHT,
            uniform_rate: DEFAULT_UNIFORM_RATE,
            rate_mode: RateMode::Rates,
            resolution: Resolution::Native,
            wri_denominator: WriDenominator::Observed,
            base_year: BASE_YEAR,
            profile_step_hours: 1.0,
            countries: None,
            out: PathBuf::from("out"),
            jobs: 1,
            data_dir: PathBuf::from("."),
        }
    }
}

fn invalid(key: &str, value: &str, why: impl fmt::Display) -> PipelineError {
    PipelineError::Config(format!("{key} = {value:?}: {why}"))
}

impl RunConfig {
    /// Read a config file. Relative input paths resolve against `data_dir`
    /// when given, otherwise against the file's directory.
    pub fn load(path: &Path, data_dir: Option<PathBuf>) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base = data_dir.unwrap_or_else(|| path.parent().map(Path::to_path_buf).unwrap_or_default());
        let mut config = Self::parse(&text)?;
        config.data_dir = if base.as_os_str().is_empty() {
            PathBuf::from(".")
        } else {
            base
        };
        Ok(config)
    }

    pub fn parse(text: &str) -> Result<Self, PipelineError> {
        let mut config = RunConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| PipelineError::Config(format!("line {}: expected key = value", n + 1)))?;
            config.set(key.trim(), value.trim())?;
        }
        Ok(config)
    }

    /// Set one option from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), PipelineError> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T, PipelineError>
        where
            T::Err: fmt::Display,
        {
            value.parse::<T>().map_err(|e| invalid(key, value, e))
        }
        match key {
            k if PATH_KEYS.contains(&k) => {
                self.paths.insert(k.to_string(), value.to_string());
            }
            "end_year" => self.end_year = num(key, value)?,
            "window" => {
                self.window = num(key, value)?;
                if self.window == 0 {
                    return Err(invalid(key, value, "must be at least 1"));
                }
            }
            "blend_a" => {
                self.blend_a = num(key, value)?;
                if !(0.0..=1.0).contains(&self.blend_a) {
                    return Err(invalid(key, value, "must lie in [0, 1]"));
                }
            }
            "uniform_rate" => {
                self.uniform_rate = num(key, value)?;
                if !(self.uniform_rate >= 0.0) || !self.uniform_rate.is_finite() {
                    return Err(invalid(key, value, "must be non-negative"));
                }
            }
            "rate_mode" => self.rate_mode = value.parse().map_err(|e| invalid(key, value, e))?,
            "resolution" => self.resolution = value.parse().map_err(|e| invalid(key, value, e))?,
            "wri_denominator" => self.wri_denominator = value.parse().map_err(|e| invalid(key, value, e))?,
            "base_year" => self.base_year = num(key, value)?,
            "profile_step_hours" => {
                self.profile_step_hours = num(key, value)?;
                if !(self.profile_step_hours > 0.0) || !self.profile_step_hours.is_finite() {
                    return Err(invalid(key, value, "must be positive"));
                }
            }
            "countries" => {
                let registry = CountryRegistry::builtin();
                let mut codes = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| registry.normalize(s).map_err(|e| invalid(key, value, e)))
                    .collect::<Result<Vec<_>, _>>()?;
                codes.sort();
                codes.dedup();
                self.countries = Some(codes);
            }
            "out" => self.out = PathBuf::from(value),
            "jobs" => {
                self.jobs = num(key, value)?;
                if self.jobs == 0 {
                    return Err(invalid(key, value, "must be at least 1"));
                }
            }
            other => return Err(PipelineError::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// The configured path for `key`, resolved against the data directory.
    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.paths.get(key).map(|p| {
            let p = Path::new(p);
            if p.is_absolute() {
                p.to_path_buf()
            } else {
                self.data_dir.join(p)
            }
        })
    }

    pub fn require_path(&self, key: &str) -> Result<PathBuf, PipelineError> {
        self.path(key)
            .ok_or_else(|| PipelineError::Config(format!("no {key} file configured")))
    }

    /// Effective settings as sorted `key=value` pairs. Paths appear as
    /// written, so the listing does not depend on where the data lives.
    pub fn effective(&self) -> BTreeMap<String, String> {
        let mut map: BTreeMap<String, String> = self.paths.clone();
        map.insert("end_year".into(), self.end_year.to_string());
        map.insert("window".into(), self.window.to_string());
        map.insert("blend_a".into(), self.blend_a.to_string());
        map.insert("uniform_rate".into(), self.uniform_rate.to_string());
        map.insert("rate_mode".into(), self.rate_mode.to_string());
        map.insert("resolution".into(), self.resolution.to_string());
        map.insert("wri_denominator".into(), self.wri_denominator.to_string());
        map.insert("base_year".into(), self.base_year.to_string());
        map.insert("profile_step_hours".into(), self.profile_step_hours.to_string());
        if let Some(codes) = &self.countries {
            map.insert(
                "countries".into(),
                codes.iter().map(Iso3::as_str).collect::<Vec<_>>().join(","),
            );
        }
        map.insert("out".into(), self.out.display().to_string());
        map.insert("jobs".into(), self.jobs.to_string());
        map
    }

    /// SHA-256 over the effective settings that influence results.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        for (k, v) in self.effective() {
            if UNHASHED_KEYS.contains(&k.as_str()) {
                continue;
            }
            hasher.update(format!("{k}={v}\n").as_bytes());
        }
        hex::encode(hasher.finalize())
    }
}
