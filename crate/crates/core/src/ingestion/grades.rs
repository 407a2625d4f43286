use std::io::Read;
use std::path::Path;

use super::{io_error, parse_f64, read_table, IngestError};

const DEFAULT_GRADES: &str = include_str!("../../data/grades.csv");

/// Number of rating levels on the common scale.
pub const GRADE_LEVELS: usize = 21;

/// Ordered rating levels, best first, with their discount-rate values.
#[derive(Debug, Clone, PartialEq)]
pub struct GradeTable {
    entries: Vec<(String, f64)>,
}

impl GradeTable {
    pub fn new(entries: Vec<(String, f64)>) -> Result<Self, IngestError> {
        if entries.len() != GRADE_LEVELS {
            return Err(IngestError::InvalidGradeTable(format!(
                "expected {GRADE_LEVELS} entries, got {}",
                entries.len()
            )));
        }
        for pair in entries.windows(2) {
            if !(pair[1].1 > pair[0].1) {
                return Err(IngestError::InvalidGradeTable(format!(
                    "rate of {} must exceed rate of {}",
                    pair[1].0, pair[0].0
                )));
            }
        }
        if let Some((label, rate)) = entries.iter().find(|(_, r)| !(0.0..=1.0).contains(r)) {
            return Err(IngestError::InvalidGradeTable(format!(
                "rate {rate} of {label} outside [0, 1]"
            )));
        }
        let mut labels: Vec<&str> = entries.iter().map(|(l, _)| l.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != GRADE_LEVELS {
            return Err(IngestError::InvalidGradeTable("duplicate grade label".into()));
        }
        Ok(GradeTable { entries })
    }

    /// The bundled table (AAA … C).
    pub fn builtin() -> Self {
        Self::from_reader(DEFAULT_GRADES.as_bytes(), "builtin grades").expect("bundled grade table is valid")
    }

    pub fn load(path: &Path) -> Result<Self, IngestError> {
        let label = path.display().to_string();
        let file = std::fs::File::open(path).map_err(io_error(&label))?;
        Self::from_reader(file, &label)
    }

    /// Parse `grade,rate` rows, best grade first.
    pub fn from_reader<R: Read>(input: R, label: &str) -> Result<Self, IngestError> {
        let (idx, rows) = read_table(input, label, &["grade", "rate"])?;
        let mut entries = Vec::with_capacity(rows.len());
        for record in &rows {
            let row = crate::csvio::line_of(record);
            let rate = parse_f64(label, row, &record[idx[1]], "rate")?;
            entries.push((record[idx[0]].to_string(), rate));
        }
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rate(&self, index: usize) -> Option<f64> {
        self.entries.get(index).map(|(_, r)| *r)
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.entries.get(index).map(|(l, _)| l.as_str())
    }

    /// Labels match case-sensitively after trimming.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        let label = label.trim();
        self.entries.iter().position(|(l, _)| l == label)
    }

    pub fn first_rate(&self) -> f64 {
        self.entries[0].1
    }

    pub fn last_rate(&self) -> f64 {
        self.entries[GRADE_LEVELS - 1].1
    }
}
