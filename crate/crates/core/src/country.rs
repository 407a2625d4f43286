//! The country universe: ISO 3166 alpha-3 codes plus a handful of disputed
//! or unassigned territories, Antarctica excluded.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

/// Number of entries in the built-in registry.
pub const COUNTRY_COUNT: usize = 254;

const BUILTIN_REGISTRY: &str = include_str!("../data/countries.csv");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountryError {
    #[error("malformed country code {0:?}")]
    Malformed(String),
    #[error("unknown country code {0:?}")]
    Unknown(String),
    #[error("invalid country registry: {0}")]
    InvalidRegistry(String),
}

/// Three uppercase ASCII letters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iso3([u8; 3]);

impl Iso3 {
    pub fn new(code: &str) -> Result<Self, CountryError> {
        let bytes = code.as_bytes();
        if bytes.len() != 3 || !bytes.iter().all(u8::is_ascii_uppercase) {
            return Err(CountryError::Malformed(code.to_string()));
        }
        Ok(Iso3([bytes[0], bytes[1], bytes[2]]))
    }

    pub fn as_str(&self) -> &str {
        // Constructed only from ASCII uppercase bytes.
        std::str::from_utf8(&self.0).expect("ascii")
    }
}

impl fmt::Debug for Iso3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

impl fmt::Display for Iso3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Iso3 {
    type Err = CountryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Iso3::new(s)
    }
}

impl TryFrom<String> for Iso3 {
    type Error = CountryError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Iso3::new(&s)
    }
}

impl From<Iso3> for String {
    fn from(code: Iso3) -> Self {
        code.as_str().to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountryCode {
    pub iso3: Iso3,
    pub name: String,
}

/// Lookup table of the country universe, ordered by alpha-3 code.
#[derive(Debug, Clone)]
pub struct CountryRegistry {
    entries: Vec<CountryCode>,
    by_iso3: HashMap<Iso3, usize>,
    by_iso2: HashMap<String, Iso3>,
}

impl CountryRegistry {
    /// The bundled 254-entry registry.
    pub fn builtin() -> &'static CountryRegistry {
        static REGISTRY: OnceLock<CountryRegistry> = OnceLock::new();
        REGISTRY.get_or_init(|| CountryRegistry::from_csv_str(BUILTIN_REGISTRY).expect("bundled registry is valid"))
    }

    /// Parse a registry from `iso3,iso2,name` CSV text. `iso2` may be empty.
    pub fn from_csv_str(text: &str) -> Result<Self, CountryError> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        let mut iso2 = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| CountryError::InvalidRegistry(e.to_string()))?;
            let code = Iso3::new(record.get(0).unwrap_or(""))?;
            let alpha2 = record.get(1).unwrap_or("").to_string();
            let name = record.get(2).unwrap_or("").to_string();
            iso2.push((alpha2, code));
            entries.push(CountryCode { iso3: code, name });
        }
        entries.sort_by_key(|c| c.iso3);
        let mut by_iso3 = HashMap::with_capacity(entries.len());
        for (idx, entry) in entries.iter().enumerate() {
            if by_iso3.insert(entry.iso3, idx).is_some() {
                return Err(CountryError::InvalidRegistry(format!("duplicate code {}", entry.iso3)));
            }
        }
        let mut by_iso2 = HashMap::new();
        for (alpha2, code) in iso2 {
            if alpha2.is_empty() {
                continue;
            }
            if alpha2.len() != 2 || by_iso2.insert(alpha2.clone(), code).is_some() {
                return Err(CountryError::InvalidRegistry(format!(
                    "bad or duplicate alpha-2 code {alpha2:?}"
                )));
            }
        }
        Ok(CountryRegistry {
            entries,
            by_iso3,
            by_iso2,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CountryCode> {
        self.entries.iter()
    }

    pub fn codes(&self) -> impl Iterator<Item = Iso3> + '_ {
        self.entries.iter().map(|c| c.iso3)
    }

    pub fn get(&self, code: Iso3) -> Option<&CountryCode> {
        self.by_iso3.get(&code).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, code: Iso3) -> bool {
        self.by_iso3.contains_key(&code)
    }

    pub fn name(&self, code: Iso3) -> &str {
        self.get(code).map(|c| c.name.as_str()).unwrap_or("")
    }

    /// Map a user-supplied alpha-3 or alpha-2 code onto a registry entry.
    pub fn normalize(&self, raw: &str) -> Result<Iso3, CountryError> {
        let code = raw.trim().to_ascii_uppercase();
        match code.len() {
            3 => {
                let iso3 = Iso3::new(&code)?;
                if self.contains(iso3) {
                    Ok(iso3)
                } else {
                    Err(CountryError::Unknown(raw.to_string()))
                }
            }
            2 => self
                .by_iso2
                .get(&code)
                .copied()
                .ok_or_else(|| CountryError::Unknown(raw.to_string())),
            _ => Err(CountryError::Malformed(raw.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_registry_has_254_entries_without_antarctica() {
        let registry = CountryRegistry::builtin();
        assert_eq!(registry.len(), COUNTRY_COUNT);
        assert!(!registry.contains(Iso3::new("ATA").unwrap()));
        assert!(registry.contains(Iso3::new("XKO").unwrap()));
        let codes: Vec<_> = registry.codes().collect();
        let mut sorted = codes.clone();
        sorted.sort();
        assert_eq!(codes, sorted);
    }

    #[test]
    fn iso3_rejects_lowercase_and_wrong_length() {
        assert!(Iso3::new("deu").is_err());
        assert!(Iso3::new("DE").is_err());
        assert!(Iso3::new("DEUT").is_err());
        assert!(Iso3::new("D3U").is_err());
        assert_eq!(Iso3::new("DEU").unwrap().as_str(), "DEU");
    }

    #[test]
    fn normalize_accepts_alpha2_and_lowercase() {
        let registry = CountryRegistry::builtin();
        let deu = Iso3::new("DEU").unwrap();
        assert_eq!(registry.normalize("DE").unwrap(), deu);
        assert_eq!(registry.normalize(" de ").unwrap(), deu);
        assert_eq!(registry.normalize("deu").unwrap(), deu);
        assert_eq!(registry.normalize("XK").unwrap(), Iso3::new("XKO").unwrap());
        assert!(matches!(registry.normalize("XYZ"), Err(CountryError::Unknown(_))));
        assert!(matches!(
            registry.normalize("XYZ-invalid"),
            Err(CountryError::Malformed(_))
        ));
    }
}
