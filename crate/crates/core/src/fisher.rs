//! Location Fisher information `I_f = ∫ (f'/f)² f` and the Hardy-type
//! integrals `∫ (f/F)² dF`, `∫ (f/(1-F))² dF`.
//!
//! Divergent integrals are reported as `f64::INFINITY`.

use crate::catalog::DistributionSpec;
use crate::error::{Error, Result};
use crate::numerics::{gamma, integrate_adaptive};
use crate::shape::{check_condition_iv, CheckSettings, ConcavityIndex, Grid, Witness};
use serde::{Deserialize, Serialize};

/// Values above this are treated as divergent.
pub const DIVERGENCE_CEILING: f64 = 1e12;

/// Tail masses cut off in turn when the full integral does not converge.
const REFINEMENTS: [f64; 5] = [1e-3, 1e-6, 1e-9, 1e-12, 1e-15];

fn integrate_over_support<G>(d: &DistributionSpec, g: G, rel_tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let support = d.support();
    match integrate_adaptive(&g, support.lo, support.hi, rel_tol) {
        Ok(r) if r.value > DIVERGENCE_CEILING => Ok(f64::INFINITY),
        Ok(r) => Ok(r.value),
        Err(Error::QuadratureFailed { .. }) => endpoint_refinement(d, &g, rel_tol),
        Err(e) => Err(e),
    }
}

/// Integrates over quantile-truncated ranges with shrinking tail mass. The
/// integral is declared divergent when the last three estimates each grow
/// by more than 10%, or when one exceeds the ceiling.
fn endpoint_refinement<G>(d: &DistributionSpec, g: &G, rel_tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let mut estimates: Vec<f64> = Vec::with_capacity(REFINEMENTS.len());
    let mut last = (0.0, 0.0, 0);
    for &eta in &REFINEMENTS {
        let lo = d.quantile(eta)?;
        let hi = d.upper_quantile(eta)?;
        match integrate_adaptive(g, lo, hi, rel_tol) {
            Ok(r) => {
                if r.value > DIVERGENCE_CEILING {
                    return Ok(f64::INFINITY);
                }
                last = (r.value, r.abs_error_estimate, r.subdivisions);
                estimates.push(r.value);
            }
            Err(Error::QuadratureFailed {
                estimate,
                abs_error,
                subdivisions,
            }) => {
                if estimate > DIVERGENCE_CEILING {
                    return Ok(f64::INFINITY);
                }
                last = (estimate, abs_error, subdivisions);
                estimates.push(estimate);
            }
            Err(e) => return Err(e),
        }
    }
    let growing = estimates.windows(2).rev().take(3).all(|w| w[1] > 1.1 * w[0]);
    if growing && estimates.len() >= 4 {
        return Ok(f64::INFINITY);
    }
    Err(Error::QuadratureFailed {
        estimate: last.0,
        abs_error: last.1,
        subdivisions: last.2,
    })
}

/// `∫ (f'/f)² f` over `J(F)`, built from the analytic score.
pub fn fisher_info(d: &DistributionSpec, rel_tol: f64) -> Result<f64> {
    let g = |x: f64| {
        let ln_f = d.log_pdf(x);
        if ln_f == f64::NEG_INFINITY {
            return 0.0;
        }
        match d.score(x) {
            Ok(0.0) => 0.0,
            Ok(sc) => (2.0 * sc.abs().ln() + ln_f).exp(),
            Err(_) => f64::NAN,
        }
    };
    integrate_over_support(d, g, rel_tol)
}

/// `(∫ (f/F)² f, ∫ (f/(1-F))² f)` over `J(F)`.
pub fn hardy_integrals(d: &DistributionSpec, rel_tol: f64) -> Result<(f64, f64)> {
    let left = |x: f64| {
        let ln_f = d.log_pdf(x);
        if ln_f == f64::NEG_INFINITY {
            return 0.0;
        }
        let cdf = d.cdf(x);
        // F underflows only far in a tail where f is negligible as well
        if cdf == 0.0 {
            return 0.0;
        }
        (3.0 * ln_f - 2.0 * cdf.ln()).exp()
    };
    let right = |x: f64| {
        let ln_f = d.log_pdf(x);
        if ln_f == f64::NEG_INFINITY {
            return 0.0;
        }
        let sf = d.sf(x);
        if sf == 0.0 {
            return 0.0;
        }
        (3.0 * ln_f - 2.0 * sf.ln()).exp()
    };
    Ok((
        integrate_over_support(d, left, rel_tol)?,
        integrate_over_support(d, right, rel_tol)?,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FisherReport {
    #[serde(rename = "I_f", with = "crate::real")]
    pub i_f: f64,
    #[serde(with = "crate::real")]
    pub hardy_left: f64,
    #[serde(with = "crate::real")]
    pub hardy_right: f64,
    /// `I_f`, the left end of the chain.
    #[serde(with = "crate::real")]
    pub chain_lo: f64,
    /// `(2/(1+s)²) max(hardy_left, hardy_right)`.
    #[serde(with = "crate::real")]
    pub chain_hi: f64,
    /// `(8/(1+s)²) I_f`.
    #[serde(with = "crate::real")]
    pub chain_top: f64,
    #[serde(with = "crate::real")]
    pub s: f64,
    pub s_star: f64,
    /// Both chain inequalities hold up to `10 · rel_tol` relative slack.
    pub holds: bool,
    /// `I_f` diverges, and with it every integral of the chain.
    pub all_infinite: bool,
    pub rel_tol: f64,
}

/// Fisher information, Hardy integrals and the chain
/// `I_f ≤ (2/(1+s)²) max(hardy) ≤ (8/(1+s)²) I_f`.
///
/// Refuses with [`Error::Precondition`] when condition (iv) fails at `s` on
/// the grid described by `settings`.
pub fn check_fisher_chain(
    d: &DistributionSpec,
    idx: ConcavityIndex,
    rel_tol: f64,
    settings: &CheckSettings,
) -> Result<FisherReport> {
    let grid = Grid::quantile_spaced(d, settings.grid_points, settings.eps)?;
    let cert = check_condition_iv(d, idx, &grid, settings.tol)?;
    if !cert.passed() {
        let at = match cert.witness {
            Some(Witness::Point { x }) | Some(Witness::Pair { x, .. }) => x,
            None => f64::NAN,
        };
        return Err(Error::Precondition(format!(
            "{d} does not satisfy condition (iv) at s = {}: violated at x = {at} (margin {})",
            idx.s, cert.margin
        )));
    }

    let i_f = fisher_info(d, rel_tol)?;
    let (hardy_left, hardy_right) = hardy_integrals(d, rel_tol)?;
    let factor = if idx.is_infinite() { 0.0 } else { 1.0 / ((1.0 + idx.s) * (1.0 + idx.s)) };
    let hardy_max = hardy_left.max(hardy_right);
    let chain_hi = if factor == 0.0 { 0.0 } else { 2.0 * factor * hardy_max };
    let chain_top = if factor == 0.0 { 0.0 } else { 8.0 * factor * i_f };
    let all_infinite = i_f.is_infinite();
    let slack = 1.0 + 10.0 * rel_tol;
    let holds = if all_infinite {
        chain_hi.is_infinite() || factor == 0.0
    } else {
        i_f <= chain_hi * slack && chain_hi <= chain_top * slack
    };
    Ok(FisherReport {
        i_f,
        hardy_left,
        hardy_right,
        chain_lo: i_f,
        chain_hi,
        chain_top,
        s: idx.s,
        s_star: idx.s_star,
        holds,
        all_infinite,
        rel_tol,
    })
}

/// `(r/2) Γ(r/2 - 1) Γ((r+3)/2) / Γ(r/2 + 1)²`, the published closed form
/// for the spherical-power family. It does not equal the integral; see
/// [`fisher_exact_spherical`].
pub fn fisher_closed_form_spherical(r: f64) -> Result<f64> {
    if !(r > 2.0) || !r.is_finite() {
        return Err(Error::Domain(format!("formula diverges for r <= 2 (got r = {r})")));
    }
    let g = gamma(r / 2.0 + 1.0);
    Ok(r / 2.0 * gamma(r / 2.0 - 1.0) * gamma((r + 3.0) / 2.0) / (g * g))
}

/// Exact `I_f` of `C_r (1 - x²/r)^{r/2}`:
/// `(r/2) Γ(r/2 - 1) Γ((r+3)/2) / (Γ(r/2 + 1) Γ((r+1)/2)) = (r+1)/(r-2)`.
pub fn fisher_exact_spherical(r: f64) -> Result<f64> {
    if !(r > 2.0) || !r.is_finite() {
        return Err(Error::Domain(format!("Fisher information is infinite for r <= 2 (got r = {r})")));
    }
    Ok((r + 1.0) / (r - 2.0))
}
