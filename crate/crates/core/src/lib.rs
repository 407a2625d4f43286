//! Country-specific discount rates that combine economic risk with
//! natural-hazard risk, and the levelized cost of hydrogen (LCOH) they imply
//! for a wind/PV/electrolyzer/storage system sized by linear programming.
//!
//! The crate is organised along the data flow:
//!
//! - [`ingestion`]: rating sources, techno-economic tables, and the ranked
//!   source cascade that gives every country one economic series and one
//!   hazard score.
//! - [`ratecalc`]: window averaging, hazard normalization, and the convex
//!   blend into a final discount rate.
//! - [`finmath`]: capital recovery arithmetic.
//! - [`energymodel`]: the hourly capacity-expansion LP and LCOH.
//! - [`analytics`]: yearly statistics, range histograms and LCOH comparisons.
//! - [`pipeline`]: the end-to-end commands behind the `hazardrate` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod analytics;
pub mod country;
pub mod csvio;
pub mod energymodel;
pub mod finmath;
pub mod ingestion;
pub mod pipeline;
pub mod ratecalc;

pub use country::{CountryCode, CountryRegistry, Iso3};
