use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::function::beta::beta_reg;

use super::RateError;

/// Default number of shuffles for the permutation p-value.
pub const DEFAULT_PERMUTATIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pearson {
    pub r: f64,
    /// Two-sided p-value of `r = 0` under a Student-t null.
    pub p_value: f64,
    pub n: usize,
}

fn sample_r(x: &[f64], y: &[f64]) -> Result<f64, RateError> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(RateError::DegenerateVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

fn check_lengths(x: &[f64], y: &[f64]) -> Result<(), RateError> {
    if x.len() != y.len() {
        return Err(RateError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(RateError::TooFewSamples(x.len()));
    }
    Ok(())
}

/// Sample Pearson correlation with its parametric two-sided p-value.
///
/// `t = r sqrt((n-2)/(1-r^2))` has `n-2` degrees of freedom; the two-sided
/// tail equals the regularized incomplete beta `I_{v/(v+t^2)}(v/2, 1/2)`.
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<Pearson, RateError> {
    check_lengths(x, y)?;
    let r = sample_r(x, y)?;
    let dof = (x.len() - 2) as f64;
    let p_value = if r.abs() >= 1.0 {
        0.0
    } else {
        let t2 = r * r * dof / (1.0 - r * r);
        beta_reg(dof / 2.0, 0.5, dof / (dof + t2)).clamp(0.0, 1.0)
    };
    Ok(Pearson { r, p_value, n: x.len() })
}

/// Two-sided permutation p-value for the same statistic: the share of
/// shuffles of `y` whose |r| reaches the observed |r|, with the usual +1
/// correction. Deterministic for a given seed.
pub fn pearson_permutation_p(x: &[f64], y: &[f64], shuffles: usize, seed: u64) -> Result<f64, RateError> {
    check_lengths(x, y)?;
    let observed = sample_r(x, y)?.abs();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shuffled = y.to_vec();
    let mut extreme = 0usize;
    for _ in 0..shuffles {
        shuffled.shuffle(&mut rng);
        if sample_r(x, &shuffled)?.abs() >= observed - 1e-12 {
            extreme += 1;
        }
    }
    Ok((extreme + 1) as f64 / (shuffles + 1) as f64)
}
