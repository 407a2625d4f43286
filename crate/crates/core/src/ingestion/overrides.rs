use std::collections::BTreeSet;
use std::fmt;
use std::io::Read;
use std::path::Path;

use crate::country::{CountryRegistry, Iso3};

use super::{io_error, malformed, parse_country, read_table_with_optional, IngestError};

/// Which resolved value an override supplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OverrideScope {
    Economic,
    Hazard,
    Both,
}

impl OverrideScope {
    pub fn covers_economic(self) -> bool {
        matches!(self, OverrideScope::Economic | OverrideScope::Both)
    }

    pub fn covers_hazard(self) -> bool {
        matches!(self, OverrideScope::Hazard | OverrideScope::Both)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OverrideTarget {
    /// Copy the donor's resolved value.
    Donor(Iso3),
    /// A discount rate (economic scope) or a 0–100 index score (hazard scope).
    Literal(f64),
    /// The highest dated economic rate in the latest year on record.
    Worst,
}

impl fmt::Display for OverrideTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OverrideTarget::Donor(code) => write!(f, "{code}"),
            OverrideTarget::Literal(v) => write!(f, "{v:.6}"),
            OverrideTarget::Worst => f.write_str("WORST"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Override {
    pub country: Iso3,
    pub target: OverrideTarget,
    pub scope: OverrideScope,
}

pub fn parse_overrides(path: &Path, registry: &CountryRegistry) -> Result<Vec<Override>, IngestError> {
    let label = path.display().to_string();
    let file = std::fs::File::open(path).map_err(io_error(&label))?;
    parse_overrides_reader(file, &label, registry)
}

/// Parse `iso3,donor_iso3_or_rate[,scope]`. Scope is `economic`, `hazard`
/// or `both` (the default). Literal values need a single scope because
/// rates and hazard scores live on different scales.
pub fn parse_overrides_reader<R: Read>(
    input: R,
    label: &str,
    registry: &CountryRegistry,
) -> Result<Vec<Override>, IngestError> {
    let (idx, optional, rows) = read_table_with_optional(input, label, &["iso3", "donor_iso3_or_rate"], &["scope"])?;
    let mut claimed: BTreeSet<(Iso3, bool)> = BTreeSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for record in &rows {
        let row = crate::csvio::line_of(record);
        let country = parse_country(registry, label, row, &record[idx[0]])?;
        let scope = match optional[0].and_then(|i| record.get(i)).unwrap_or("") {
            "" | "both" => OverrideScope::Both,
            "economic" => OverrideScope::Economic,
            "hazard" => OverrideScope::Hazard,
            other => return Err(malformed(label, row, format!("unknown scope {other:?}"))),
        };
        let raw = &record[idx[1]];
        let target = if raw.eq_ignore_ascii_case("worst") {
            if scope != OverrideScope::Economic {
                return Err(malformed(label, row, "WORST applies only to the economic scope"));
            }
            OverrideTarget::Worst
        } else if let Ok(value) = raw.parse::<f64>() {
            let valid = match scope {
                OverrideScope::Economic => (0.0..=1.0).contains(&value),
                OverrideScope::Hazard => (0.0..=100.0).contains(&value),
                OverrideScope::Both => {
                    return Err(malformed(
                        label,
                        row,
                        "a literal override needs scope economic or hazard",
                    ))
                }
            };
            if !valid {
                return Err(malformed(label, row, format!("literal {value} out of range")));
            }
            OverrideTarget::Literal(value)
        } else {
            let donor = parse_country(registry, label, row, raw)?;
            if donor == country {
                return Err(malformed(label, row, format!("{country} names itself as donor")));
            }
            OverrideTarget::Donor(donor)
        };
        for (economic, covered) in [(true, scope.covers_economic()), (false, scope.covers_hazard())] {
            if covered && !claimed.insert((country, economic)) {
                return Err(malformed(label, row, format!("duplicate override for {country}")));
            }
        }
        out.push(Override { country, target, scope });
    }
    Ok(out)
}
