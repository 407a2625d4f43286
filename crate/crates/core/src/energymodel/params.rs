use std::fmt;

use crate::country::Iso3;
use crate::finmath::annualize;
use crate::ingestion::RegionCosts;

use super::ModelError;

/// Lower heating value of hydrogen, kWh per kg.
pub const LHV_KWH_PER_KG: f64 = 33.33;

/// Share of a country's production potential taken as its annual demand.
pub const DEMAND_SHARE_OF_POTENTIAL: f64 = 0.25;

pub const ELECTROLYZER_CAPEX: f64 = 470.0;
pub const ELECTROLYZER_CAPEX_CHINA: f64 = 330.0;
pub const ELECTROLYZER_OPEX_FRAC: f64 = 0.03;
pub const ELECTROLYZER_EFFICIENCY: f64 = 0.7;
pub const ELECTROLYZER_LIFETIME: u32 = 10;
pub const STORAGE_CAPEX_PER_KWH: f64 = 20.0;
pub const STORAGE_OPEX_FRAC: f64 = 0.02;
pub const STORAGE_LIFETIME: u32 = 30;
pub const STORAGE_CHARGE_EFFICIENCY: f64 = 0.98;
pub const STORAGE_DISCHARGE_EFFICIENCY: f64 = 0.998;
pub const GENERATOR_LIFETIME: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Technology {
    Wind,
    Pv,
    Electrolyzer,
    Storage,
}

impl Technology {
    pub const ALL: [Technology; 4] = [
        Technology::Wind,
        Technology::Pv,
        Technology::Electrolyzer,
        Technology::Storage,
    ];
}

impl fmt::Display for Technology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Technology::Wind => "wind",
            Technology::Pv => "pv",
            Technology::Electrolyzer => "electrolyzer",
            Technology::Storage => "storage",
        })
    }
}

/// Cost and performance of one technology. Capex is per kW for generators
/// and the electrolyzer (electrical input side), per kWh of hydrogen for
/// storage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TechnologyParams {
    pub technology: Technology,
    pub capex: f64,
    pub opex_frac: f64,
    pub lifetime_years: u32,
    /// Electrolyzer: kWh H2 per kWh electricity. Storage: charge efficiency.
    pub efficiency: f64,
    /// Storage only; 1 elsewhere.
    pub discharge_efficiency: f64,
}

impl TechnologyParams {
    pub fn generator(technology: Technology, capex: f64, opex_frac: f64) -> Self {
        TechnologyParams {
            technology,
            capex,
            opex_frac,
            lifetime_years: GENERATOR_LIFETIME,
            efficiency: 1.0,
            discharge_efficiency: 1.0,
        }
    }

    pub fn electrolyzer(capex: f64) -> Self {
        TechnologyParams {
            technology: Technology::Electrolyzer,
            capex,
            opex_frac: ELECTROLYZER_OPEX_FRAC,
            lifetime_years: ELECTROLYZER_LIFETIME,
            efficiency: ELECTROLYZER_EFFICIENCY,
            discharge_efficiency: 1.0,
        }
    }

    pub fn storage() -> Self {
        TechnologyParams {
            technology: Technology::Storage,
            capex: STORAGE_CAPEX_PER_KWH,
            opex_frac: STORAGE_OPEX_FRAC,
            lifetime_years: STORAGE_LIFETIME,
            efficiency: STORAGE_CHARGE_EFFICIENCY,
            discharge_efficiency: STORAGE_DISCHARGE_EFFICIENCY,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |reason: &str| {
            Err(ModelError::InvalidParameter {
                technology: self.technology,
                reason: reason.to_string(),
            })
        };
        if !(self.capex > 0.0) || !self.capex.is_finite() {
            return bad("capex must be positive");
        }
        if !(0.0..1.0).contains(&self.opex_frac) {
            return bad("opex fraction must lie in [0, 1)");
        }
        if self.lifetime_years == 0 {
            return bad("lifetime must be at least one year");
        }
        for eff in [self.efficiency, self.discharge_efficiency] {
            if !(eff > 0.0 && eff <= 1.0) {
                return bad("efficiencies must lie in (0, 1]");
            }
        }
        Ok(())
    }

    /// Annualized capex plus fixed opex per unit of capacity, USD/yr.
    pub fn annual_cost_per_unit(&self, rate: f64) -> Result<f64, ModelError> {
        Ok(annualize(self.capex, rate, self.lifetime_years)? + self.opex_frac * self.capex)
    }
}

/// The four technologies of one system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TechnologySet {
    pub wind: TechnologyParams,
    pub pv: TechnologyParams,
    pub electrolyzer: TechnologyParams,
    pub storage: TechnologyParams,
}

impl TechnologySet {
    /// Regional generator costs with the global electrolyzer and storage
    /// parameters; China gets its own electrolyzer capex.
    pub fn for_country(country: Iso3, region: &RegionCosts) -> Self {
        let ely_capex = if country.as_str() == "CHN" {
            ELECTROLYZER_CAPEX_CHINA
        } else {
            ELECTROLYZER_CAPEX
        };
        TechnologySet {
            wind: TechnologyParams::generator(Technology::Wind, region.wind_capex_usd_per_kw, region.wind_opex_frac),
            pv: TechnologyParams::generator(Technology::Pv, region.pv_capex_usd_per_kw, region.pv_opex_frac),
            electrolyzer: TechnologyParams::electrolyzer(ely_capex),
            storage: TechnologyParams::storage(),
        }
    }

    pub fn get(&self, technology: Technology) -> &TechnologyParams {
        match technology {
            Technology::Wind => &self.wind,
            Technology::Pv => &self.pv,
            Technology::Electrolyzer => &self.electrolyzer,
            Technology::Storage => &self.storage,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for tech in Technology::ALL {
            let params = self.get(tech);
            if params.technology != tech {
                return Err(ModelError::InvalidParameter {
                    technology: tech,
                    reason: format!("slot holds {} parameters", params.technology),
                });
            }
            params.validate()?;
        }
        Ok(())
    }
}

/// Annual demand as a fixed share of production potential.
pub fn demand_from_potential(total_potential_kg: f64) -> Result<f64, ModelError> {
    if !(total_potential_kg >= 0.0) || !total_potential_kg.is_finite() {
        return Err(ModelError::NegativeInput(total_potential_kg));
    }
    Ok(DEMAND_SHARE_OF_POTENTIAL * total_potential_kg)
}
