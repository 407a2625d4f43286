use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use super::params::Technology;
use super::ModelError;

const HOURS_PER_WEEK: f64 = 168.0;

/// Per-step capacity factors of one generator.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityFactorProfile {
    pub technology: Technology,
    values: Vec<f64>,
}

impl CapacityFactorProfile {
    pub fn new(technology: Technology, values: Vec<f64>) -> Result<Self, ModelError> {
        if values.is_empty() {
            return Err(ModelError::InvalidCase("empty capacity-factor profile".into()));
        }
        if let Some((step, v)) = values.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
            return Err(ModelError::InvalidCase(format!(
                "{technology} capacity factor {v} at step {step} outside [0, 1]"
            )));
        }
        Ok(CapacityFactorProfile { technology, values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Wind and PV profiles sharing one time grid. The profile stands for a
/// representative period that repeats through the year.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePair {
    pub wind: CapacityFactorProfile,
    pub pv: CapacityFactorProfile,
    /// Duration of one step in hours.
    pub step_hours: f64,
}

impl ProfilePair {
    pub fn new(wind: Vec<f64>, pv: Vec<f64>, step_hours: f64) -> Result<Self, ModelError> {
        if wind.len() != pv.len() {
            return Err(ModelError::InvalidCase(format!(
                "wind profile has {} steps, pv profile {}",
                wind.len(),
                pv.len()
            )));
        }
        if !(step_hours > 0.0) || !step_hours.is_finite() {
            return Err(ModelError::InvalidCase(format!("step duration {step_hours} h")));
        }
        Ok(ProfilePair {
            wind: CapacityFactorProfile::new(Technology::Wind, wind)?,
            pv: CapacityFactorProfile::new(Technology::Pv, pv)?,
            step_hours,
        })
    }

    pub fn len(&self) -> usize {
        self.wind.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wind.is_empty()
    }

    /// Read `step,cf_wind,cf_pv` with steps numbered 0, 1, 2, ... in order.
    pub fn load(path: &Path, step_hours: f64) -> Result<Self, ModelError> {
        let label = path.display().to_string();
        let file = std::fs::File::open(path).map_err(|e| ModelError::Io {
            path: label.clone(),
            source: e,
        })?;
        Self::from_reader(file, &label, step_hours)
    }

    pub fn from_reader<R: Read>(input: R, label: &str, step_hours: f64) -> Result<Self, ModelError> {
        let bad = |row: u64, reason: String| ModelError::MalformedProfile {
            path: label.to_string(),
            row,
            reason,
        };
        let mut reader = crate::csvio::reader(input);
        let headers = reader.headers().map_err(|e| bad(1, e.to_string()))?.clone();
        let idx = crate::csvio::Columns::new(&headers)
            .require(&["step", "cf_wind", "cf_pv"])
            .map_err(|missing| bad(1, format!("missing column {missing:?}")))?;
        let (mut wind, mut pv) = (Vec::new(), Vec::new());
        for record in reader.records() {
            let record = record.map_err(|e| bad(0, e.to_string()))?;
            let row = crate::csvio::line_of(&record);
            let step: usize = record[idx[0]]
                .parse()
                .map_err(|_| bad(row, format!("step {:?} is not a non-negative integer", &record[idx[0]])))?;
            if step != wind.len() {
                return Err(bad(row, format!("expected step {}, found {step}", wind.len())));
            }
            for (column, target) in [(idx[1], &mut wind), (idx[2], &mut pv)] {
                let v: f64 = record[column]
                    .parse()
                    .map_err(|_| bad(row, format!("{:?} is not a number", &record[column])))?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(bad(row, format!("capacity factor {v} outside [0, 1]")));
                }
                target.push(v);
            }
        }
        if wind.is_empty() {
            return Err(bad(1, "no steps".into()));
        }
        Self::new(wind, pv, step_hours)
    }

    /// Re-express the profiles on a coarser grid.
    pub fn aggregate(&self, resolution: Resolution) -> Result<Self, ModelError> {
        match resolution {
            Resolution::Native => Ok(self.clone()),
            Resolution::Hours(hours) => {
                let ratio = hours as f64 / self.step_hours;
                let steps = ratio.round() as usize;
                if steps == 0 || (ratio - steps as f64).abs() > 1e-9 || !self.len().is_multiple_of(steps) {
                    return Err(ModelError::InvalidResolution(format!(
                        "{hours}h blocks do not tile {} steps of {} h",
                        self.len(),
                        self.step_hours
                    )));
                }
                let mean =
                    |v: &[f64]| -> Vec<f64> { v.chunks(steps).map(|c| c.iter().sum::<f64>() / steps as f64).collect() };
                Self::new(mean(self.wind.values()), mean(self.pv.values()), hours as f64)
            }
            Resolution::TypicalWeek => {
                let ratio = HOURS_PER_WEEK / self.step_hours;
                let per_week = ratio.round() as usize;
                if per_week == 0 || (ratio - per_week as f64).abs() > 1e-9 || self.len() < per_week {
                    return Err(ModelError::InvalidResolution(format!(
                        "{} steps of {} h do not contain a whole week",
                        self.len(),
                        self.step_hours
                    )));
                }
                let weeks = self.len() / per_week;
                let fold = |v: &[f64]| -> Vec<f64> {
                    (0..per_week)
                        .map(|k| (0..weeks).map(|w| v[w * per_week + k]).sum::<f64>() / weeks as f64)
                        .collect()
                };
                Self::new(fold(self.wind.values()), fold(self.pv.values()), self.step_hours)
            }
        }
    }
}

/// Time grid the LP is solved on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Resolution {
    /// The profile as given.
    #[default]
    Native,
    /// Means over consecutive blocks of this many hours.
    Hours(u32),
    /// One week, each hour-of-week averaged over all complete weeks.
    TypicalWeek,
}

impl FromStr for Resolution {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "native" => return Ok(Resolution::Native),
            "week" => return Ok(Resolution::TypicalWeek),
            _ => {}
        }
        s.strip_suffix('h')
            .and_then(|n| n.parse::<u32>().ok())
            .filter(|&n| n > 0)
            .map(Resolution::Hours)
            .ok_or_else(|| ModelError::InvalidResolution(format!("{s:?}; expected native, week or <N>h")))
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resolution::Native => f.write_str("native"),
            Resolution::Hours(n) => write!(f, "{n}h"),
            Resolution::TypicalWeek => f.write_str("week"),
        }
    }
}
