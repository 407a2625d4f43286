//! Cost-minimal sizing of a wind + PV → electrolyzer → hydrogen storage
//! system that meets a flat hydrogen demand, and the resulting LCOH.

mod audit;
mod case;
mod lcoh;
mod lp;
mod params;
mod problem;
mod profile;
mod solve;

use std::io;

use thiserror::Error;

use crate::finmath::FinanceError;

pub use audit::{audit_solution, AuditReport, AUDIT_TOLERANCE};
pub use case::{SystemCase, HOURS_PER_YEAR};
pub use lcoh::{compute_lcoh, solve_case, LcohResult};
pub use lp::{Constraint, LinearProgram, LpSolution, Relation};
pub use params::{
    demand_from_potential, Technology, TechnologyParams, TechnologySet, DEMAND_SHARE_OF_POTENTIAL, LHV_KWH_PER_KG,
};
pub use problem::{build_problem, Layout, SystemProblem};
pub use profile::{CapacityFactorProfile, ProfilePair, Resolution};
pub use solve::{cost_breakdown, solve, DispatchSolution};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("{technology}: {reason}")]
    InvalidParameter { technology: Technology, reason: String },
    #[error("negative input {0}")]
    NegativeInput(f64),
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("infeasible input: {0}")]
    InfeasibleInput(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("solver stopped before proving optimality")]
    SolverInterrupted,
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("annual demand must be positive")]
    ZeroDemand,
    #[error("invalid resolution {0}")]
    InvalidResolution(String),
    #[error("{path}: row {row}: {reason}")]
    MalformedProfile { path: String, row: u64, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("audit failed: {check} at step {step} off by {violation:e}")]
    AuditFailed {
        check: &'static str,
        step: usize,
        violation: f64,
    },
    #[error(transparent)]
    Finance(#[from] FinanceError),
}

impl ModelError {
    /// Short machine-readable label for status columns.
    pub fn status(&self) -> &'static str {
        match self {
            ModelError::InfeasibleInput(_) | ModelError::Infeasible => "infeasible",
            ModelError::Unbounded => "unbounded",
            ModelError::ZeroDemand => "zero_demand",
            ModelError::AuditFailed { .. } => "audit_failed",
            ModelError::MalformedProfile { .. } | ModelError::Io { .. } => "profile_error",
            _ => "error",
        }
    }
}
