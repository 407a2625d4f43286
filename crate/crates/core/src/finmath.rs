//! Capital recovery arithmetic.
//!
//! An overnight investment `I` paid back in `n` equal yearly instalments at
//! discount rate `i` costs `I * i(1+i)^n / ((1+i)^n - 1)` per year. At `i = 0`
//! the factor is the limit `1/n`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FinanceError {
    #[error("negative or non-finite discount rate {0}")]
    NegativeRate(f64),
    #[error("economic lifetime must be at least one year")]
    ZeroLifetime,
    #[error("economic lifetime {0} is not a whole number of years")]
    NonIntegerLifetime(f64),
    #[error("negative or non-finite overnight cost {0}")]
    NegativeCost(f64),
}

/// Capital recovery factor per year for rate `rate` over `years` years.
pub fn annuity_factor(rate: f64, years: u32) -> Result<f64, FinanceError> {
    if !(rate >= 0.0) || !rate.is_finite() {
        return Err(FinanceError::NegativeRate(rate));
    }
    if years == 0 {
        return Err(FinanceError::ZeroLifetime);
    }
    let n = f64::from(years);
    if rate == 0.0 {
        return Ok(1.0 / n);
    }
    // i / (1 - (1+i)^-n); expm1/ln1p keep full precision for tiny rates and
    // the single monotone denominator keeps the factor monotone in n.
    Ok(rate / -(-n * rate.ln_1p()).exp_m1())
}

/// Yearly cost of an overnight investment.
pub fn annualize(overnight_cost: f64, rate: f64, years: u32) -> Result<f64, FinanceError> {
    if !(overnight_cost >= 0.0) || !overnight_cost.is_finite() {
        return Err(FinanceError::NegativeCost(overnight_cost));
    }
    Ok(overnight_cost * annuity_factor(rate, years)?)
}

/// Accept a lifetime given as a float only when it is a positive whole number.
pub fn lifetime_from_years(years: f64) -> Result<u32, FinanceError> {
    if !years.is_finite() || years.fract() != 0.0 || years < 0.0 || years > f64::from(u32::MAX) {
        return Err(FinanceError::NonIntegerLifetime(years));
    }
    if years == 0.0 {
        return Err(FinanceError::ZeroLifetime);
    }
    Ok(years as u32)
}
