//! Explicit bounds implied by bi-s*-concavity: the convex upper transform
//! `F_U`, the concave lower transform `F_L`, their derivatives, the corridor
//! for `f'`, and the two-sided band for `F(x + t)`.
//!
//! With `c = 1 - s*`:
//!
//! ```text
//! F_U = (1 - (1-F)^{s*}) / s*        (-ln(1-F) at s* = 0)
//! F_L = (F^{s*} - (1 - s*)) / s*     (1 + ln F at s* = 0)
//! F_U' = f / (1-F)^c,   F_L' = f / F^c
//! ```
//!
//! The same expressions serve both signs of `s*`. They are evaluated as
//! `expm1(s* ln ·) / s*`, which is accurate near `s* = 0` and overflows to
//! `+inf` rather than producing NaN where a bound becomes vacuous.

use crate::catalog::DistributionSpec;
use crate::error::{Error, Result};
use crate::shape::{ConcavityIndex, Grid};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

fn inside(d: &DistributionSpec, x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::NanValue { x });
    }
    let (cdf, sf) = d.cdf_sf(x);
    if !(cdf > 0.0 && sf > 0.0) {
        return Err(Error::Domain(format!("x = {x} is outside J(F) for {d}")));
    }
    Ok((cdf, sf))
}

/// `(p^{s*} - 1)/s*` via `ln p`, with the `s* = 0` limit `ln p`.
fn box_cox(ln_p: f64, s_star: f64) -> f64 {
    if s_star == 0.0 {
        ln_p
    } else {
        (s_star * ln_p).exp_m1() / s_star
    }
}

/// Convex upper bound `F_U(x)`; may exceed 1 and is `+inf` where vacuous.
pub fn f_upper(d: &DistributionSpec, idx: ConcavityIndex, x: f64) -> Result<f64> {
    let (_, sf) = inside(d, x)?;
    Ok(-box_cox(sf.ln(), idx.s_star))
}

/// Concave lower bound `F_L(x)`; may be negative.
pub fn f_lower(d: &DistributionSpec, idx: ConcavityIndex, x: f64) -> Result<f64> {
    let (cdf, _) = inside(d, x)?;
    Ok(1.0 + box_cox(cdf.ln(), idx.s_star))
}

/// `F_U'(x) = f/(1-F)^{1-s*}`.
pub fn fu_prime(d: &DistributionSpec, idx: ConcavityIndex, x: f64) -> Result<f64> {
    let (_, sf) = inside(d, x)?;
    Ok((d.log_pdf(x) - idx.one_minus_star() * sf.ln()).exp())
}

/// `F_L'(x) = f/F^{1-s*}`.
pub fn fl_prime(d: &DistributionSpec, idx: ConcavityIndex, x: f64) -> Result<f64> {
    let (cdf, _) = inside(d, x)?;
    Ok((d.log_pdf(x) - idx.one_minus_star() * cdf.ln()).exp())
}

/// `(-(1-s*) f²/(1-F), (1-s*) f²/F)`.
pub fn fprime_corridor(d: &DistributionSpec, idx: ConcavityIndex, x: f64) -> Result<(f64, f64)> {
    let (cdf, sf) = inside(d, x)?;
    let ln_f = d.log_pdf(x);
    if ln_f == f64::NEG_INFINITY {
        return Err(Error::ZeroDensity { x });
    }
    let c = idx.one_minus_star();
    Ok((-c * (2.0 * ln_f - sf.ln()).exp(), c * (2.0 * ln_f - cdf.ln()).exp()))
}

/// Bounds on `F(x + t)` from the tangent lines of `F^{s*}` and `(1-F)^{s*}`
/// at `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    #[serde(with = "crate::real")]
    pub lower: f64,
    #[serde(with = "crate::real")]
    pub upper: f64,
    /// The lower bound is outside its domain (s > 0, `x + t ≥ sup J`) or
    /// infinite; `lower` then carries the trivial bound 0 or `-inf`.
    pub lower_vacuous: bool,
    /// Same for the upper bound (`x + t ≤ inf J` for s > 0); the trivial
    /// bound is 1.
    pub upper_vacuous: bool,
}

/// `u^{1/s*}` for `u = 1 + z`, returned as a logarithm; `(·)₊` clips at 0.
fn ln_pow_plus(z: f64, s_star: f64) -> f64 {
    if s_star == 0.0 {
        return z;
    }
    let u = 1.0 + z;
    if u <= 0.0 {
        return if s_star < 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    z.ln_1p() / s_star
}

/// `F(x)(1 + s* f t/F)₊^{1/s*}` and `1 - (1-F)(1 - s* f t/(1-F))₊^{1/s*}`,
/// with the exponential forms at `s* = 0`.
pub fn pointwise_band(d: &DistributionSpec, idx: ConcavityIndex, x: f64, t: f64) -> Result<Band> {
    let (cdf, sf) = inside(d, x)?;
    if t.is_nan() {
        return Err(Error::Domain("t must not be NaN".into()));
    }
    let ln_f = d.log_pdf(x);
    let s_star = idx.s_star;
    let (lo_j, hi_j) = {
        let s = d.support();
        (s.lo, s.hi)
    };

    let mut upper_vacuous = false;
    let upper = if idx.s > 0.0 && x + t <= lo_j {
        upper_vacuous = true;
        1.0
    } else if t == 0.0 {
        cdf
    } else {
        let ratio = (ln_f - cdf.ln()).exp();
        let z = if s_star == 0.0 { ratio * t } else { s_star * ratio * t };
        (cdf.ln() + ln_pow_plus(z, s_star)).exp()
    };
    if !upper.is_finite() {
        upper_vacuous = true;
    }

    let mut lower_vacuous = false;
    let lower = if idx.s > 0.0 && x + t >= hi_j {
        lower_vacuous = true;
        0.0
    } else if t == 0.0 {
        cdf
    } else {
        let ratio = (ln_f - sf.ln()).exp();
        let z = if s_star == 0.0 { -ratio * t } else { -s_star * ratio * t };
        1.0 - (sf.ln() + ln_pow_plus(z, s_star)).exp()
    };
    if !lower.is_finite() {
        lower_vacuous = true;
    }

    Ok(Band {
        lower,
        upper,
        lower_vacuous,
        upper_vacuous,
    })
}

/// One row of the envelope table.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeRow {
    pub x: f64,
    pub F: f64,
    #[serde(with = "crate::real")]
    pub F_L: f64,
    #[serde(with = "crate::real")]
    pub F_U: f64,
    pub f: f64,
    #[serde(with = "crate::real")]
    pub FL_prime: f64,
    #[serde(with = "crate::real")]
    pub FU_prime: f64,
    #[serde(with = "crate::real")]
    pub f_prime: f64,
    #[serde(with = "crate::real")]
    pub fp_lo: f64,
    #[serde(with = "crate::real")]
    pub fp_hi: f64,
}

impl EnvelopeRow {
    /// `min(F_U, 1)`, the form drawn in plots.
    pub fn f_upper_clamped(&self) -> f64 {
        self.F_U.min(1.0)
    }
}

pub const CSV_HEADER: &str = "x,F,F_L,F_U,f,FL_prime,FU_prime,f_prime,fp_lo,fp_hi";

/// One row per grid point.
pub fn emit_envelope_table(d: &DistributionSpec, idx: ConcavityIndex, grid: &Grid) -> Result<Vec<EnvelopeRow>> {
    grid.points
        .iter()
        .map(|&x| {
            let (fp_lo, fp_hi) = fprime_corridor(d, idx, x)?;
            Ok(EnvelopeRow {
                x,
                F: d.cdf(x),
                F_L: f_lower(d, idx, x)?,
                F_U: f_upper(d, idx, x)?,
                f: d.pdf(x),
                FL_prime: fl_prime(d, idx, x)?,
                FU_prime: fu_prime(d, idx, x)?,
                f_prime: d.pdf_deriv(x)?,
                fp_lo,
                fp_hi,
            })
        })
        .collect()
}

fn fmt_real(out: &mut String, v: f64) {
    if v.is_finite() {
        let _ = write!(out, "{v:.16e}");
    } else if v.is_nan() {
        out.push_str("nan");
    } else if v > 0.0 {
        out.push_str("inf");
    } else {
        out.push_str("-inf");
    }
}

/// CSV with the fixed header, 17 significant digits, `\n` line ends.
pub fn envelope_csv(rows: &[EnvelopeRow]) -> String {
    let mut out = String::with_capacity(64 + rows.len() * 240);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let cols = [r.x, r.F, r.F_L, r.F_U, r.f, r.FL_prime, r.FU_prime, r.f_prime, r.fp_lo, r.fp_hi];
        for (i, v) in cols.into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            fmt_real(&mut out, v);
        }
        out.push('\n');
    }
    out
}

/// Smallest normalised chord-slope increment `(m_{i+1} - m_i)/max(|m_i|, |m_{i+1}|, 1e-300)`
/// over consecutive grid triples; non-negative up to rounding for a convex
/// sequence. Returns `None` when any value is non-finite.
pub fn min_convexity_slack(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || ys.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let slopes: Vec<f64> = xs.windows(2).zip(ys.windows(2)).map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0])).collect();
    Some(
        slopes
            .windows(2)
            .map(|m| (m[1] - m[0]) / m[0].abs().max(m[1].abs()).max(1e-300))
            .fold(f64::INFINITY, f64::min),
    )
}
