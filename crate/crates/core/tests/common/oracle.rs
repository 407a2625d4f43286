//! Capacity-grid reference for the sizing LP.
//!
//! For fixed wind, PV and electrolyzer capacities, running everything flat
//! out and charging greedily is the best any dispatch can do, so the
//! smallest feasible storage follows from a bisection over a cyclic
//! simulation. The outer search is a zooming grid over the three power
//! capacities. Nothing here touches the library's LP code or finance code.

#[derive(Debug, Clone)]
pub struct OracleCase {
    pub cf_wind: Vec<f64>,
    pub cf_pv: Vec<f64>,
    pub step_hours: f64,
    pub demand_kg: f64,
    pub lhv: f64,
    pub rate: f64,
    /// (capex, opex fraction, lifetime years)
    pub wind: (f64, f64, u32),
    pub pv: (f64, f64, u32),
    pub electrolyzer: (f64, f64, u32),
    pub storage: (f64, f64, u32),
    pub ely_efficiency: f64,
    pub charge_efficiency: f64,
    pub discharge_efficiency: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleResult {
    pub cost_usd_yr: f64,
    pub lcoh_usd_per_kg: f64,
    pub wind_kw: f64,
    pub pv_kw: f64,
    pub ely_kw: f64,
    pub storage_kwh: f64,
}

const GRID_POINTS: usize = 11;
const ZOOM_LEVELS: usize = 24;
const BISECTIONS: usize = 60;

fn capital_recovery(rate: f64, years: u32) -> f64 {
    if rate == 0.0 {
        return 1.0 / years as f64;
    }
    rate / (1.0 - (1.0 + rate).powi(-(years as i32)))
}

fn yearly_cost((capex, opex, years): (f64, f64, u32), rate: f64) -> f64 {
    capex * (capital_recovery(rate, years) + opex)
}

impl OracleCase {
    fn steps(&self) -> usize {
        self.cf_wind.len()
    }

    /// Hydrogen demand per step, kWh.
    fn demand(&self) -> f64 {
        self.demand_kg * self.lhv * self.step_hours / 8760.0
    }

    fn unit_costs(&self) -> [f64; 4] {
        [
            yearly_cost(self.wind, self.rate),
            yearly_cost(self.pv, self.rate),
            yearly_cost(self.electrolyzer, self.rate),
            yearly_cost(self.storage, self.rate),
        ]
    }

    fn production(&self, wind: f64, pv: f64, ely: f64) -> Vec<f64> {
        (0..self.steps())
            .map(|t| {
                let power = (self.cf_wind[t] * wind + self.cf_pv[t] * pv).min(ely);
                self.ely_efficiency * power * self.step_hours
            })
            .collect()
    }

    /// Whether a cyclic schedule exists with storage `cap`. Iterates the
    /// end-of-cycle state from a full store down to its largest fixed point.
    fn feasible(&self, production: &[f64], cap: f64) -> bool {
        let d = self.demand();
        let tol = 1e-9 * d;
        let mut start = cap;
        for _ in 0..100_000 {
            let mut soc = start;
            let mut lowest = soc;
            let mut capped = false;
            for &h in production {
                let surplus = h - d;
                if surplus >= 0.0 {
                    soc += surplus * self.charge_efficiency;
                    if soc > cap {
                        soc = cap;
                        capped = true;
                    }
                } else {
                    soc += surplus / self.discharge_efficiency;
                }
                lowest = lowest.min(soc);
            }
            if lowest < -tol {
                return false;
            }
            if !capped {
                // the cycle map is a pure shift from here down
                return soc >= start - tol;
            }
            if (start - soc).abs() <= tol {
                return true;
            }
            start = soc;
        }
        true
    }

    fn min_storage(&self, production: &[f64]) -> Option<f64> {
        if self.feasible(production, 0.0) {
            return Some(0.0);
        }
        let mut hi = 2.0 * self.demand() * self.steps() as f64 / self.discharge_efficiency;
        if !self.feasible(production, hi) {
            return None;
        }
        let mut lo = 0.0;
        for _ in 0..BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if self.feasible(production, mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }

    fn evaluate(&self, costs: &[f64; 4], wind: f64, pv: f64, ely: f64) -> Option<(f64, f64)> {
        let storage = self.min_storage(&self.production(wind, pv, ely))?;
        Some((
            costs[0] * wind + costs[1] * pv + costs[2] * ely + costs[3] * storage,
            storage,
        ))
    }

    pub fn solve(&self) -> OracleResult {
        let costs = self.unit_costs();
        let d = self.demand();
        // electrolyzer input power that exactly meets demand when always on
        let base = d / (self.ely_efficiency * self.step_hours);
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let span = |cf: &[f64]| {
            if cf.iter().any(|&c| c > 0.0) {
                8.0 * base / mean(cf)
            } else {
                0.0
            }
        };
        let mut lo = [0.0, 0.0, base];
        let mut hi = [span(&self.cf_wind), span(&self.cf_pv), 8.0 * base];

        let mut best: Option<(f64, [f64; 3], f64)> = None;
        for _ in 0..ZOOM_LEVELS {
            let step: Vec<f64> = (0..3).map(|k| (hi[k] - lo[k]) / (GRID_POINTS - 1) as f64).collect();
            for i in 0..GRID_POINTS {
                for j in 0..GRID_POINTS {
                    for k in 0..GRID_POINTS {
                        let x = [
                            lo[0] + i as f64 * step[0],
                            lo[1] + j as f64 * step[1],
                            lo[2] + k as f64 * step[2],
                        ];
                        if let Some((cost, storage)) = self.evaluate(&costs, x[0], x[1], x[2]) {
                            if best.is_none_or(|(c, _, _)| cost < c) {
                                best = Some((cost, x, storage));
                            }
                        }
                    }
                }
            }
            let (_, x, _) = best.expect("grid contains a feasible design");
            for k in 0..3 {
                lo[k] = (x[k] - 2.0 * step[k]).max(0.0);
                hi[k] = x[k] + 2.0 * step[k];
            }
        }
        let (cost, x, storage) = best.unwrap();
        OracleResult {
            cost_usd_yr: cost,
            lcoh_usd_per_kg: cost / self.demand_kg,
            wind_kw: x[0],
            pv_kw: x[1],
            ely_kw: x[2],
            storage_kwh: storage,
        }
    }
}
