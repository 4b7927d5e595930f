use super::{ConcavityIndex, Grid};
use crate::catalog::DistributionSpec;
use crate::error::{Error, Result};
use crate::numerics::maximize_scalar;
use serde::{Deserialize, Serialize};

/// Everything the pointwise formulas need at one abscissa.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PointState {
    pub cdf: f64,
    pub sf: f64,
    pub ln_f: f64,
    /// f'/f
    pub score: f64,
}

impl PointState {
    pub(crate) fn at(d: &DistributionSpec, x: f64) -> Result<Self> {
        if x.is_nan() {
            return Err(Error::NanValue { x });
        }
        let (cdf, sf) = d.cdf_sf(x);
        if !(cdf > 0.0 && sf > 0.0) {
            return Err(Error::Domain(format!("x = {x} is outside J(F) for {d}")));
        }
        let ln_f = d.log_pdf(x);
        if ln_f == f64::NEG_INFINITY {
            return Err(Error::ZeroDensity { x });
        }
        let score = d.score(x)?;
        Ok(Self { cdf, sf, ln_f, score })
    }

    pub(crate) fn min_tail(&self) -> f64 {
        self.cdf.min(self.sf)
    }

    /// `weight · f'/f²` evaluated as `score · exp(ln weight - ln f)`.
    fn scaled(&self, ln_weight: f64) -> f64 {
        if self.score == 0.0 {
            return 0.0;
        }
        self.score * (ln_weight - self.ln_f).exp()
    }
}

/// `F(1-F) f'/f²`.
pub fn cr(d: &DistributionSpec, x: f64) -> Result<f64> {
    let p = PointState::at(d, x)?;
    Ok(p.scaled(p.cdf.ln() + p.sf.ln()))
}

/// `min{F, 1-F} f'/f²`.
pub fn cr_min(d: &DistributionSpec, x: f64) -> Result<f64> {
    let p = PointState::at(d, x)?;
    Ok(p.scaled(p.min_tail().ln()))
}

/// `(1-F) f'/f²`.
pub fn cr_right(d: &DistributionSpec, x: f64) -> Result<f64> {
    let p = PointState::at(d, x)?;
    Ok(p.scaled(p.sf.ln()))
}

/// `F f'/f²`.
pub fn cr_left(d: &DistributionSpec, x: f64) -> Result<f64> {
    let p = PointState::at(d, x)?;
    Ok(p.scaled(p.cdf.ln()))
}

/// `(ln h̃, ln h)` with `h̃ = f/(1-F)^{1-s*}` and `h = f/F^{1-s*}`.
pub fn log_hazards(d: &DistributionSpec, idx: ConcavityIndex, x: f64) -> Result<(f64, f64)> {
    let (cdf, sf) = d.cdf_sf(x);
    if !(cdf > 0.0 && sf > 0.0) {
        return Err(Error::Domain(format!("x = {x} is outside J(F) for {d}")));
    }
    let ln_f = d.log_pdf(x);
    let c = idx.one_minus_star();
    Ok((ln_f - c * sf.ln(), ln_f - c * cdf.ln()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CRReport {
    /// `sup |F(1-F) f'/f²|`.
    #[serde(with = "crate::real")]
    pub gamma: f64,
    /// `sup |min{F, 1-F} f'/f²|`.
    #[serde(with = "crate::real")]
    pub gamma_tilde: f64,
    #[serde(with = "crate::real")]
    pub argmax_gamma: f64,
    #[serde(with = "crate::real")]
    pub argmax_gamma_tilde: f64,
    /// `1/(1+s)`.
    #[serde(with = "crate::real")]
    pub theoretical_cap: f64,
    #[serde(with = "crate::real")]
    pub s: f64,
    pub s_star: f64,
    pub grid_points: usize,
    pub eps: f64,
    /// True when a supremum sat at a grid end and the search continued
    /// into the tail beyond the grid.
    pub tail_extended: bool,
}

struct Sup {
    value: f64,
    at: f64,
    grid_index: usize,
}

fn grid_sup<F>(grid: &Grid, objective: F) -> Result<Sup>
where
    F: Fn(f64) -> Result<f64>,
{
    let pts = &grid.points;
    let mut best = Sup {
        value: f64::NEG_INFINITY,
        at: pts[0],
        grid_index: 0,
    };
    for (i, &x) in pts.iter().enumerate() {
        let v = objective(x)?;
        if v.is_nan() {
            return Err(Error::NanValue { x });
        }
        if v > best.value {
            best = Sup { value: v, at: x, grid_index: i };
        }
    }

    let i = best.grid_index;
    let lo = pts[i.saturating_sub(1)];
    let hi = pts[(i + 1).min(pts.len() - 1)];
    if lo < hi {
        let tol = 1e-12 * (hi - lo).max(f64::MIN_POSITIVE);
        let r = maximize_scalar(|x| objective(x).unwrap_or(f64::NEG_INFINITY), lo, hi, 9, tol)?;
        if r.value > best.value {
            best.value = r.value;
            best.at = r.location;
        }
    }
    Ok(best)
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// Continues a supremum search past the grid end, parametrising the tail by
/// `u = ln(tail mass)` down to the deepest mass whose quantile is finite.
fn tail_sup<F>(d: &DistributionSpec, grid: &Grid, side: Side, objective: &F) -> Option<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let locate = |mass: f64| -> Option<f64> {
        let x = match side {
            Side::Left => d.quantile(mass),
            Side::Right => d.upper_quantile(mass),
        }
        .ok()?;
        x.is_finite().then_some(x)
    };
    let value = |mass: f64| -> Option<(f64, f64)> {
        let x = locate(mass)?;
        let v = objective(x).ok()?;
        v.is_finite().then_some((x, v))
    };

    let end = match side {
        Side::Left => grid.points[0],
        Side::Right => *grid.points.last()?,
    };
    let top_mass = match side {
        Side::Left => d.cdf(end),
        Side::Right => d.sf(end),
    };
    if !(top_mass > 0.0) {
        return None;
    }
    let floor = (-300..=-20)
        .step_by(10)
        .map(|k| 10f64.powi(k))
        .find(|&m| m < top_mass && value(m).is_some())?;
    let (lo, hi) = (floor.ln(), top_mass.ln());
    if !(lo < hi) {
        return None;
    }
    let r = maximize_scalar(
        |u| value(u.exp()).map_or(f64::NEG_INFINITY, |(_, v)| v),
        lo,
        hi,
        64,
        1e-6,
    )
    .ok()?;
    let x = locate(r.location.exp())?;
    r.value.is_finite().then_some((x, r.value))
}

/// γ and γ̃ over the grid, refined by golden-section search around the best
/// grid point. Nothing beyond the grid ends is examined.
pub fn cr_report_on_grid(d: &DistributionSpec, idx: ConcavityIndex, grid: &Grid) -> Result<CRReport> {
    let g = grid_sup(grid, |x| cr(d, x).map(f64::abs))?;
    let gt = grid_sup(grid, |x| cr_min(d, x).map(f64::abs))?;
    Ok(CRReport {
        gamma: g.value,
        gamma_tilde: gt.value,
        argmax_gamma: g.at,
        argmax_gamma_tilde: gt.at,
        theoretical_cap: idx.gamma_cap(),
        s: idx.s,
        s_star: idx.s_star,
        grid_points: grid.count,
        eps: grid.eps,
        tail_extended: false,
    })
}

/// Like [`cr_report_on_grid`], but when a supremum sits at a grid end the
/// search continues into that tail, since γ for heavy- or light-tailed laws
/// (Cauchy, Pareto, normal) is approached only in the limit.
pub fn cr_report(d: &DistributionSpec, idx: ConcavityIndex, grid: &Grid) -> Result<CRReport> {
    let mut report = cr_report_on_grid(d, idx, grid)?;
    let last = grid.points.len() - 1;

    let objectives: [(&dyn Fn(f64) -> Result<f64>, bool); 2] = [
        (&|x| cr(d, x).map(f64::abs), true),
        (&|x| cr_min(d, x).map(f64::abs), false),
    ];
    for (objective, is_gamma) in objectives {
        let sup = grid_sup(grid, objective)?;
        if sup.grid_index != 0 && sup.grid_index != last {
            continue;
        }
        for side in [Side::Left, Side::Right] {
            if let Some((x, v)) = tail_sup(d, grid, side, &objective) {
                let (val, arg) = if is_gamma {
                    (&mut report.gamma, &mut report.argmax_gamma)
                } else {
                    (&mut report.gamma_tilde, &mut report.argmax_gamma_tilde)
                };
                if v > *val {
                    *val = v;
                    *arg = x;
                    report.tail_extended = true;
                }
            }
        }
    }
    Ok(report)
}
