//! Tail bounds for sums of independent 0/1 trials, used to size the
//! statistical tolerances of the sampler suites.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailSide {
    /// `P(S >= (1+beta) * lambda) <= exp(-beta^2 * lambda / 3)`.
    Upper,
    /// `P(S <= (1-beta) * lambda) <= exp(-beta^2 * lambda / 2)`.
    Lower,
}

/// The exponential tail bound for the given deviation `beta` in `[0,1]` and
/// rate `lambda >= 0`.
pub fn chernoff_tail(beta: f64, lambda: f64, side: TailSide) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) || beta.is_nan() {
        return Err(Error::BadProbability(beta));
    }
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::BadProbability(lambda));
    }
    let denom = match side {
        TailSide::Upper => 3.0,
        TailSide::Lower => 2.0,
    };
    Ok((-beta * beta * lambda / denom).exp())
}
