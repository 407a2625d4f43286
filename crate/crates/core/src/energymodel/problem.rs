use super::case::SystemCase;
use super::lp::{LinearProgram, Relation};
use super::params::Technology;
use super::ModelError;

const CAPACITY_VARS: usize = 4;
const VARS_PER_STEP: usize = 4;

/// Column positions in the LP.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub steps: usize,
}

impl Layout {
    pub fn capacity(&self, technology: Technology) -> usize {
        match technology {
            Technology::Wind => 0,
            Technology::Pv => 1,
            Technology::Electrolyzer => 2,
            Technology::Storage => 3,
        }
    }

    /// Electricity into the electrolyzer during step `t`.
    pub fn electricity(&self, t: usize) -> usize {
        CAPACITY_VARS + VARS_PER_STEP * t
    }

    pub fn charge(&self, t: usize) -> usize {
        self.electricity(t) + 1
    }

    pub fn discharge(&self, t: usize) -> usize {
        self.electricity(t) + 2
    }

    pub fn state_of_charge(&self, t: usize) -> usize {
        self.electricity(t) + 3
    }
}

/// The sizing LP in normalized units.
///
/// Energy per step is measured in units of the per-step demand `d` (kWh),
/// power capacities in units of `d / step_hours` (kW) and storage capacity
/// in units of `d`. Scaling demand therefore leaves the LP unchanged, and the
/// true annual cost is `d / step_hours` times the LP objective.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemProblem {
    pub lp: LinearProgram,
    pub layout: Layout,
    pub demand_per_step_kwh: f64,
    pub step_hours: f64,
    pub electrolyzer_efficiency: f64,
    /// Annualized capex plus opex per kW (per kWh for storage), USD/yr.
    pub unit_costs: [f64; 4],
}

impl SystemProblem {
    /// Physical size of one normalized power-capacity unit, kW.
    pub fn power_unit_kw(&self) -> f64 {
        self.demand_per_step_kwh / self.step_hours
    }

    pub fn unit_cost(&self, technology: Technology) -> f64 {
        self.unit_costs[self.layout.capacity(technology)]
    }
}

/// Formulate the cost-minimal sizing problem for one country.
///
/// Per step `t`:
/// - `e_t <= cf_wind_t * W + cf_pv_t * P` (curtailment is free)
/// - `e_t <= E`
/// - `eta * e_t - c_t + x_t = 1` (flat demand)
/// - `soc_t = soc_{t-1} + eta_ch * c_t - x_t / eta_dis`, cyclic over the horizon
/// - `soc_t <= S`
pub fn build_problem(case: &SystemCase) -> Result<SystemProblem, ModelError> {
    case.validate()?;
    let wind = case.profiles.wind.values();
    let pv = case.profiles.pv.values();
    if wind.iter().chain(pv).all(|&cf| cf == 0.0) {
        return Err(ModelError::InfeasibleInput(format!(
            "{}: no generation in any step but positive demand",
            case.country
        )));
    }
    let techs = &case.technologies;
    let mut unit_costs = [0.0; 4];
    for tech in Technology::ALL {
        unit_costs[tech as usize] = techs.get(tech).annual_cost_per_unit(case.discount_rate)?;
    }
    let step_hours = case.step_hours();
    let steps = case.steps();
    let layout = Layout { steps };
    let mut lp = LinearProgram::new();
    for tech in Technology::ALL {
        let cost = unit_costs[tech as usize];
        // storage is sized in energy, which carries one extra factor of step_hours
        let coef = if tech == Technology::Storage {
            cost * step_hours
        } else {
            cost
        };
        let idx = lp.add_variable(coef);
        debug_assert_eq!(idx, layout.capacity(tech));
    }
    for _ in 0..steps {
        for _ in 0..VARS_PER_STEP {
            lp.add_variable(0.0);
        }
    }

    let w = layout.capacity(Technology::Wind);
    let p = layout.capacity(Technology::Pv);
    let e_cap = layout.capacity(Technology::Electrolyzer);
    let s_cap = layout.capacity(Technology::Storage);
    let eta = techs.electrolyzer.efficiency;
    let eta_ch = techs.storage.efficiency;
    let eta_dis = techs.storage.discharge_efficiency;
    for t in 0..steps {
        let e = layout.electricity(t);
        let c = layout.charge(t);
        let x = layout.discharge(t);
        let soc = layout.state_of_charge(t);
        let prev = layout.state_of_charge((t + steps - 1) % steps);

        let mut generation = vec![(e, 1.0)];
        if wind[t] > 0.0 {
            generation.push((w, -wind[t]));
        }
        if pv[t] > 0.0 {
            generation.push((p, -pv[t]));
        }
        lp.add_constraint(generation, Relation::Le, 0.0);
        lp.add_constraint(vec![(e, 1.0), (e_cap, -1.0)], Relation::Le, 0.0);
        lp.add_constraint(vec![(e, eta), (c, -1.0), (x, 1.0)], Relation::Eq, 1.0);
        let storage_balance = if prev == soc {
            // a single-step horizon: the state of charge cancels out
            vec![(c, -eta_ch), (x, 1.0 / eta_dis)]
        } else {
            vec![(soc, 1.0), (prev, -1.0), (c, -eta_ch), (x, 1.0 / eta_dis)]
        };
        lp.add_constraint(storage_balance, Relation::Eq, 0.0);
        lp.add_constraint(vec![(soc, 1.0), (s_cap, -1.0)], Relation::Le, 0.0);
    }
    Ok(SystemProblem {
        lp,
        layout,
        demand_per_step_kwh: case.demand_per_step_kwh(),
        step_hours,
        electrolyzer_efficiency: eta,
        unit_costs,
    })
}
