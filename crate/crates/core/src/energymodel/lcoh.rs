use crate::country::Iso3;

use super::audit::{audit_solution, AUDIT_TOLERANCE};
use super::case::SystemCase;
use super::params::Technology;
use super::problem::build_problem;
use super::solve::{cost_breakdown, solve, DispatchSolution};
use super::ModelError;

#[derive(Debug, Clone, PartialEq)]
pub struct LcohResult {
    pub country: Iso3,
    /// USD (base year) per kg of hydrogen.
    pub lcoh_usd_per_kg: f64,
    /// Annualized capex plus opex per technology, USD/yr.
    pub breakdown: [(Technology, f64); 4],
    pub objective_usd_yr: f64,
    pub solution: DispatchSolution,
}

/// Annual system cost divided by annual hydrogen delivered.
pub fn compute_lcoh(case: &SystemCase, solution: DispatchSolution) -> Result<LcohResult, ModelError> {
    if !(case.annual_demand_kg > 0.0) {
        return Err(ModelError::ZeroDemand);
    }
    let mut unit_costs = [0.0; 4];
    for tech in Technology::ALL {
        unit_costs[tech as usize] = case.technologies.get(tech).annual_cost_per_unit(case.discount_rate)?;
    }
    let breakdown = cost_breakdown(&unit_costs, &solution);
    let objective_usd_yr: f64 = breakdown.iter().map(|(_, c)| c).sum();
    Ok(LcohResult {
        country: case.country,
        lcoh_usd_per_kg: objective_usd_yr / case.annual_demand_kg,
        breakdown,
        objective_usd_yr,
        solution,
    })
}

/// Build, solve, audit and price one case.
pub fn solve_case(case: &SystemCase) -> Result<LcohResult, ModelError> {
    let problem = build_problem(case)?;
    let solution = solve(&problem)?;
    audit_solution(case, &solution, AUDIT_TOLERANCE)?;
    compute_lcoh(case, solution)
}
