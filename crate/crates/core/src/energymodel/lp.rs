//! A minimal LP container. Variables are non-negative; the objective is
//! minimized. Solving is delegated to `microlp`, a sparse simplex.

use microlp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem, SolutionStatus, SolveOutcome};

use super::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearProgram {
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub values: Vec<f64>,
    pub objective: f64,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a variable `x >= 0` with objective coefficient `cost`; returns its index.
    pub fn add_variable(&mut self, cost: f64) -> usize {
        self.objective.push(cost);
        self.objective.len() - 1
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        debug_assert!(terms.iter().all(|(v, _)| *v < self.objective.len()));
        self.constraints.push(Constraint { terms, relation, rhs });
    }

    pub fn num_variables(&self) -> usize {
        self.objective.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn solve(&self) -> Result<LpSolution, ModelError> {
        let mut problem = Problem::new(OptimizationDirection::Minimize);
        let vars: Vec<_> = self
            .objective
            .iter()
            .map(|&c| problem.add_var(c, (0.0, f64::INFINITY)))
            .collect();
        for constraint in &self.constraints {
            let mut expr = LinearExpr::empty();
            for &(v, coef) in &constraint.terms {
                expr.add(vars[v], coef);
            }
            let op = match constraint.relation {
                Relation::Le => ComparisonOp::Le,
                Relation::Eq => ComparisonOp::Eq,
                Relation::Ge => ComparisonOp::Ge,
            };
            problem.add_constraint(expr, op, constraint.rhs);
        }
        let solution = match problem.solve() {
            Ok(SolveOutcome::Solution(s)) if s.status() == SolutionStatus::Optimal => s,
            Ok(_) => return Err(ModelError::SolverInterrupted),
            Err(microlp::Error::Infeasible) => return Err(ModelError::Infeasible),
            Err(microlp::Error::Unbounded) => return Err(ModelError::Unbounded),
            Err(other) => return Err(ModelError::Solver(other.to_string())),
        };
        let values: Vec<f64> = vars.iter().map(|&v| solution[v]).collect();
        Ok(LpSolution {
            objective: solution.objective(),
            values,
        })
    }
}
