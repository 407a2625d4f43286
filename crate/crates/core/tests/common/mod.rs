//! Shared helpers for the integration and acceptance tests.
#![allow(dead_code)]

pub mod oracle;

use std::path::{Path, PathBuf};

use hazardrate::energymodel::{ProfilePair, SystemCase, TechnologySet};
use hazardrate::ingestion::RegionCosts;
use hazardrate::Iso3;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

/// Middle East regional costs, used for every toy case.
pub const TOY_REGION: RegionCosts = RegionCosts {
    wind_capex_usd_per_kw: 1666.0,
    pv_capex_usd_per_kw: 229.0,
    wind_opex_frac: 0.026,
    pv_opex_frac: 0.036,
};

pub const TOY_NAMES: [&str; 6] = ["toy24", "toy12_wind", "toy36_pv", "toy48", "toy24_flat", "toy16_calm"];
pub const TOY_DEMAND_KG: f64 = 1.0e6;

pub fn toy_profiles(name: &str) -> ProfilePair {
    ProfilePair::load(&fixtures().join("toy").join(format!("{name}.csv")), 1.0).unwrap()
}

pub fn toy_case(name: &str, rate: f64) -> SystemCase {
    let code = Iso3::new("SAU").unwrap();
    SystemCase::new(
        code,
        rate,
        toy_profiles(name),
        TOY_DEMAND_KG,
        TechnologySet::for_country(code, &TOY_REGION),
    )
    .unwrap()
}

/// The oracle's view of a toy case, built from raw numbers rather than the
/// library's parameter types.
pub fn toy_oracle_case(name: &str, rate: f64) -> oracle::OracleCase {
    let p = toy_profiles(name);
    oracle::OracleCase {
        cf_wind: p.wind.values().to_vec(),
        cf_pv: p.pv.values().to_vec(),
        step_hours: 1.0,
        demand_kg: TOY_DEMAND_KG,
        lhv: 33.33,
        rate,
        wind: (1666.0, 0.026, 20),
        pv: (229.0, 0.036, 20),
        electrolyzer: (470.0, 0.03, 10),
        storage: (20.0, 0.02, 30),
        ely_efficiency: 0.7,
        charge_efficiency: 0.98,
        discharge_efficiency: 0.998,
    }
}
