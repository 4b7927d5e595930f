use super::{check_condition_iv, CheckSettings, ConcavityIndex, Grid};
use crate::catalog::DistributionSpec;
use crate::error::{Error, Result};
use crate::numerics::try_bisect_boundary;
use serde::{Deserialize, Serialize};

/// Mixture families with a separation parameter δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum MixtureFamily {
    NormalMixture,
    TMixture { r: f64 },
}

impl MixtureFamily {
    pub fn with_delta(self, delta: f64) -> Result<DistributionSpec> {
        match self {
            MixtureFamily::NormalMixture => DistributionSpec::normal_mixture(delta),
            MixtureFamily::TMixture { r } => DistributionSpec::t_mixture(r, delta),
        }
    }
}

fn widen_hint(err: Error, what: &str) -> Error {
    match err {
        Error::BracketInvalid { lo, hi, reason } => {
            let hint = if reason.contains("lower end") {
                format!("check already fails at {what} = {lo}; move lo down")
            } else if reason.contains("upper end") {
                format!("check still passes at {what} = {hi}; move hi up")
            } else {
                reason
            };
            Error::BracketInvalid { lo, hi, reason: hint }
        }
        other => other,
    }
}

/// Largest `s` in `[lo, hi]` at which condition (iv) holds on the grid,
/// located by bisection to width `tol`. Returns `hi` when the check passes
/// there; bisection relies on the check being monotone in `s`.
pub fn max_s(d: &DistributionSpec, lo: f64, hi: f64, tol: f64, settings: &CheckSettings) -> Result<f64> {
    let grid = Grid::quantile_spaced(d, settings.grid_points, settings.eps)?;
    let passes = |s: f64| -> Result<bool> {
        let idx = ConcavityIndex::to_index(s)?;
        Ok(check_condition_iv(d, idx, &grid, settings.tol)?.passed())
    };
    if !(lo < hi) {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            reason: "need lo < hi".into(),
        });
    }
    if passes(hi)? {
        return Ok(hi);
    }
    if !hi.is_finite() {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            reason: "check fails at s = inf; give a finite hi".into(),
        });
    }
    try_bisect_boundary(passes, lo, hi, tol).map_err(|e| widen_hint(e, "s"))
}

/// Mixture separation δ in `[lo, hi]` where condition (iv) at index `idx`
/// stops holding. Each δ gets its own quantile grid.
pub fn delta_threshold(
    family: MixtureFamily,
    idx: ConcavityIndex,
    lo: f64,
    hi: f64,
    tol: f64,
    settings: &CheckSettings,
) -> Result<f64> {
    let passes = |delta: f64| -> Result<bool> {
        let d = family.with_delta(delta)?;
        let grid = Grid::quantile_spaced(&d, settings.grid_points, settings.eps)?;
        Ok(check_condition_iv(&d, idx, &grid, settings.tol)?.passed())
    };
    try_bisect_boundary(passes, lo, hi, tol).map_err(|e| widen_hint(e, "delta"))
}
