use super::params::Technology;
use super::problem::SystemProblem;
use super::ModelError;

/// Optimal capacities and per-step operation in physical units.
#[derive(Debug, Clone, PartialEq)]
pub struct DispatchSolution {
    pub cap_wind_kw: f64,
    pub cap_pv_kw: f64,
    /// Electrical input rating.
    pub cap_ely_kw: f64,
    pub cap_storage_kwh: f64,
    pub electricity_kwh: Vec<f64>,
    pub hydrogen_kwh: Vec<f64>,
    pub charge_kwh: Vec<f64>,
    pub discharge_kwh: Vec<f64>,
    pub state_of_charge_kwh: Vec<f64>,
    /// Annualized capex plus opex of the installed capacities, USD/yr.
    pub objective_usd_yr: f64,
}

impl DispatchSolution {
    pub fn capacity(&self, technology: Technology) -> f64 {
        match technology {
            Technology::Wind => self.cap_wind_kw,
            Technology::Pv => self.cap_pv_kw,
            Technology::Electrolyzer => self.cap_ely_kw,
            Technology::Storage => self.cap_storage_kwh,
        }
    }
}

/// Annual cost of each technology at the given capacities, in
/// [`Technology::ALL`] order.
pub fn cost_breakdown(unit_costs: &[f64; 4], solution: &DispatchSolution) -> [(Technology, f64); 4] {
    Technology::ALL.map(|tech| (tech, unit_costs[tech as usize] * solution.capacity(tech)))
}

/// Solve the LP and convert the optimum back to kW, kWh and USD.
pub fn solve(problem: &SystemProblem) -> Result<DispatchSolution, ModelError> {
    let raw = problem.lp.solve()?;
    // Simplex round-off can leave values a hair below zero.
    let v = |i: usize| raw.values[i].max(0.0);
    let layout = problem.layout;
    let power = problem.power_unit_kw();
    let energy = problem.demand_per_step_kwh;
    let eta = problem.electrolyzer_efficiency;
    let steps = layout.steps;
    let series = |f: &dyn Fn(usize) -> usize| (0..steps).map(|t| v(f(t)) * energy).collect::<Vec<f64>>();
    let electricity_kwh = series(&|t| layout.electricity(t));
    let hydrogen_kwh = electricity_kwh.iter().map(|e| eta * e).collect();
    let mut solution = DispatchSolution {
        cap_wind_kw: v(layout.capacity(Technology::Wind)) * power,
        cap_pv_kw: v(layout.capacity(Technology::Pv)) * power,
        cap_ely_kw: v(layout.capacity(Technology::Electrolyzer)) * power,
        cap_storage_kwh: v(layout.capacity(Technology::Storage)) * energy,
        charge_kwh: series(&|t| layout.charge(t)),
        discharge_kwh: series(&|t| layout.discharge(t)),
        state_of_charge_kwh: series(&|t| layout.state_of_charge(t)),
        electricity_kwh,
        hydrogen_kwh,
        objective_usd_yr: 0.0,
    };
    solution.objective_usd_yr = cost_breakdown(&problem.unit_costs, &solution)
        .iter()
        .map(|(_, c)| c)
        .sum();
    Ok(solution)
}
