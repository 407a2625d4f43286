//! Re-check a dispatch against the raw case data, independently of the LP.

use super::case::SystemCase;
use super::solve::DispatchSolution;
use super::ModelError;

/// Absolute tolerance in normalized units (multiples of per-step demand).
pub const AUDIT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditReport {
    /// Largest constraint violation found, normalized units.
    pub max_violation: f64,
    /// Hydrogen produced minus hydrogen delivered over the horizon, kWh.
    pub storage_loss_kwh: f64,
}

/// Verify non-negativity, generation and electrolyzer limits, the hydrogen
/// balance, the cyclic storage recursion and the storage bound at every
/// step. Violations above `tolerance` fail with the first offending check.
pub fn audit_solution(
    case: &SystemCase,
    solution: &DispatchSolution,
    tolerance: f64,
) -> Result<AuditReport, ModelError> {
    let steps = case.steps();
    let d = case.demand_per_step_kwh();
    let dt = case.step_hours();
    let wind = case.profiles.wind.values();
    let pv = case.profiles.pv.values();
    let techs = &case.technologies;
    let eta = techs.electrolyzer.efficiency;
    let eta_ch = techs.storage.efficiency;
    let eta_dis = techs.storage.discharge_efficiency;

    for series in [
        &solution.electricity_kwh,
        &solution.hydrogen_kwh,
        &solution.charge_kwh,
        &solution.discharge_kwh,
        &solution.state_of_charge_kwh,
    ] {
        if series.len() != steps {
            return Err(ModelError::InvalidCase(format!(
                "dispatch has {} steps, case has {steps}",
                series.len()
            )));
        }
    }

    let mut worst = 0.0f64;
    let mut check = |name: &'static str, step: usize, violation: f64| -> Result<(), ModelError> {
        let violation = violation / d;
        if !(violation <= tolerance) {
            return Err(ModelError::AuditFailed {
                check: name,
                step,
                violation,
            });
        }
        worst = worst.max(violation);
        Ok(())
    };

    for (name, cap) in [
        ("wind capacity", solution.cap_wind_kw * dt),
        ("pv capacity", solution.cap_pv_kw * dt),
        ("electrolyzer capacity", solution.cap_ely_kw * dt),
        ("storage capacity", solution.cap_storage_kwh),
    ] {
        check(name, 0, -cap)?;
    }
    for t in 0..steps {
        let e = solution.electricity_kwh[t];
        let h = solution.hydrogen_kwh[t];
        let c = solution.charge_kwh[t];
        let x = solution.discharge_kwh[t];
        let soc = solution.state_of_charge_kwh[t];
        let prev = solution.state_of_charge_kwh[(t + steps - 1) % steps];
        for (name, v) in [
            ("electricity", e),
            ("charge", c),
            ("discharge", x),
            ("state of charge", soc),
        ] {
            check(name, t, -v)?;
        }
        let available = (wind[t] * solution.cap_wind_kw + pv[t] * solution.cap_pv_kw) * dt;
        check("generation limit", t, e - available)?;
        check("electrolyzer limit", t, e - solution.cap_ely_kw * dt)?;
        check("conversion", t, (h - eta * e).abs())?;
        check("hydrogen balance", t, (h - c + x - d).abs())?;
        if steps > 1 {
            check("storage recursion", t, (soc - prev - eta_ch * c + x / eta_dis).abs())?;
        } else {
            check("storage recursion", t, (eta_ch * c - x / eta_dis).abs())?;
        }
        check("storage bound", t, soc - solution.cap_storage_kwh)?;
    }
    let produced: f64 = solution.hydrogen_kwh.iter().sum();
    Ok(AuditReport {
        max_violation: worst,
        storage_loss_kwh: produced - d * steps as f64,
    })
}
