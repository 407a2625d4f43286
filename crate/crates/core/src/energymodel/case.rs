use crate::country::Iso3;

use super::params::{TechnologySet, LHV_KWH_PER_KG};
use super::profile::ProfilePair;
use super::ModelError;

pub const HOURS_PER_YEAR: f64 = 8760.0;

/// Everything one country's sizing problem needs.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemCase {
    pub country: Iso3,
    pub discount_rate: f64,
    pub profiles: ProfilePair,
    pub annual_demand_kg: f64,
    pub technologies: TechnologySet,
    pub lhv_kwh_per_kg: f64,
}

impl SystemCase {
    pub fn new(
        country: Iso3,
        discount_rate: f64,
        profiles: ProfilePair,
        annual_demand_kg: f64,
        technologies: TechnologySet,
    ) -> Result<Self, ModelError> {
        let case = SystemCase {
            country,
            discount_rate,
            profiles,
            annual_demand_kg,
            technologies,
            lhv_kwh_per_kg: LHV_KWH_PER_KG,
        };
        case.validate()?;
        Ok(case)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.annual_demand_kg > 0.0) || !self.annual_demand_kg.is_finite() {
            return Err(ModelError::ZeroDemand);
        }
        if !(self.discount_rate >= 0.0) || !self.discount_rate.is_finite() {
            return Err(ModelError::InvalidCase(format!("discount rate {}", self.discount_rate)));
        }
        if !(self.lhv_kwh_per_kg > 0.0) {
            return Err(ModelError::InvalidCase(format!(
                "heating value {}",
                self.lhv_kwh_per_kg
            )));
        }
        self.technologies.validate()
    }

    pub fn steps(&self) -> usize {
        self.profiles.len()
    }

    pub fn step_hours(&self) -> f64 {
        self.profiles.step_hours
    }

    /// Hydrogen delivered per step, kWh (flat over the year).
    pub fn demand_per_step_kwh(&self) -> f64 {
        self.annual_demand_kg * self.lhv_kwh_per_kg * self.step_hours() / HOURS_PER_YEAR
    }

    pub fn with_discount_rate(&self, rate: f64) -> Self {
        SystemCase {
            discount_rate: rate,
            ..self.clone()
        }
    }

    pub fn with_demand(&self, annual_demand_kg: f64) -> Self {
        SystemCase {
            annual_demand_kg,
            ..self.clone()
        }
    }
}
