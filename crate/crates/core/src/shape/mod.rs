//! Bi-s*-concavity: index conversion, Csörgő–Révész functions, the three
//! checkers and the threshold searches built on them.
//!
//! Throughout, `c = 1 - s* = 1/(1+s)` is the constant that appears in every
//! bound. It is computed from `s` directly so that it stays accurate for
//! large `s` and is exactly zero at `s = ∞`.

mod checks;
mod cr;
mod search;

pub use checks::{check_all, check_condition_iii, check_condition_iv, check_midpoint, generalized_mean};
pub use cr::{cr, cr_left, cr_min, cr_report, cr_report_on_grid, cr_right, log_hazards, CRReport};
pub use search::{delta_threshold, max_s, MixtureFamily};

use crate::catalog::DistributionSpec;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default number of grid points.
pub const DEFAULT_GRID_POINTS: usize = 2000;
/// Default quantile mass excluded from each tail.
pub const DEFAULT_EPS: f64 = 1e-8;
/// Default relative slack of every checker.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Grid size, truncation and checker slack used by the searches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckSettings {
    pub grid_points: usize,
    pub eps: f64,
    pub tol: f64,
}

impl Default for CheckSettings {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            eps: DEFAULT_EPS,
            tol: DEFAULT_TOL,
        }
    }
}

/// The pair `(s, s*)` with `s* = s/(1+s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcavityIndex {
    #[serde(with = "crate::real")]
    pub s: f64,
    pub s_star: f64,
}

impl ConcavityIndex {
    /// `s` in `(-1, ∞]`.
    pub fn to_index(s: f64) -> Result<Self> {
        if s.is_nan() || s <= -1.0 {
            return Err(Error::Domain(format!("s = {s} is outside the supported range s > -1")));
        }
        let s_star = if s == f64::INFINITY { 1.0 } else { s / (1.0 + s) };
        Ok(Self { s, s_star })
    }

    /// `s*` in `(-∞, 1]`.
    pub fn from_star(s_star: f64) -> Result<Self> {
        if s_star.is_nan() || s_star > 1.0 || s_star == f64::NEG_INFINITY {
            return Err(Error::Domain(format!(
                "s* = {s_star} is outside the supported range -inf < s* <= 1"
            )));
        }
        let s = if s_star == 1.0 { f64::INFINITY } else { s_star / (1.0 - s_star) };
        Ok(Self { s, s_star })
    }

    /// `1 - s* = 1/(1+s)`; zero at `s = ∞`.
    pub fn one_minus_star(&self) -> f64 {
        if self.s == f64::INFINITY {
            0.0
        } else {
            1.0 / (1.0 + self.s)
        }
    }

    /// Upper bound `1/(1+s)` on γ over the bi-s*-concave class.
    pub fn gamma_cap(&self) -> f64 {
        self.one_minus_star()
    }

    pub fn is_infinite(&self) -> bool {
        self.s == f64::INFINITY
    }
}

/// Ordered evaluation points strictly inside `J(F)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub points: Vec<f64>,
    /// Quantile mass left out of each tail (zero for explicit point sets).
    pub eps: f64,
    pub count: usize,
}

impl Grid {
    /// Points `quantile(p_i)` with `p_i` equispaced in `[eps, 1 - eps]`.
    ///
    /// Upper-half points are located through the survival function so both
    /// tails are resolved to the same relative precision.
    pub fn quantile_spaced(d: &DistributionSpec, n: usize, eps: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("grid needs at least 3 points, got {n}")));
        }
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::Domain(format!("eps must lie in (0, 0.5), got {eps}")));
        }
        let span = 1.0 - 2.0 * eps;
        let last = (n - 1) as f64;
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            let x = if 2 * i < n {
                let mut x = d.quantile(eps + span * (i as f64 / last))?;
                if i == 0 {
                    while d.cdf(x) < eps {
                        x = x.next_up();
                    }
                }
                x
            } else {
                let mut x = d.upper_quantile(eps + span * ((n - 1 - i) as f64 / last))?;
                if i == n - 1 {
                    while d.sf(x) < eps {
                        x = x.next_down();
                    }
                }
                x
            };
            if points.last().is_none_or(|&p| x > p) {
                points.push(x);
            }
        }
        let count = points.len();
        Ok(Self { points, eps, count })
    }

    /// The default grid: 2000 points, `eps = 1e-8`.
    pub fn default_for(d: &DistributionSpec) -> Result<Self> {
        Self::quantile_spaced(d, DEFAULT_GRID_POINTS, DEFAULT_EPS)
    }

    /// An explicit, strictly increasing point set.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Domain("grid needs at least 2 points".into()));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("grid points must be finite".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("grid points must be strictly increasing".into()));
        }
        let count = points.len();
        Ok(Self { points, eps: 0.0, count })
    }

    /// Equispaced points on `[lo, hi]`.
    pub fn linspace(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 || !(lo < hi) {
            return Err(Error::Domain(format!("linspace needs n >= 2 and lo < hi, got {n} on [{lo}, {hi}]")));
        }
        let step = (hi - lo) / (n - 1) as f64;
        let points = (0..n).map(|i| if i + 1 == n { hi } else { lo + step * i as f64 }).collect();
        Self::from_points(points)
    }
}

/// Which characterisation a certificate tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `-(1-s*) f²/(1-F) ≤ f' ≤ (1-s*) f²/F`.
    DerivIneqIv,
    /// Monotone s*-hazard and reverse s*-hazard.
    HazardMonoIii,
    /// Midpoint inequality with the generalized mean.
    MidpointDef,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::DerivIneqIv => "deriv_ineq_iv",
            Condition::HazardMonoIii => "hazard_mono_iii",
            Condition::MidpointDef => "midpoint_def",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Pair { x: f64, y: f64 },
    Point { x: f64 },
}

/// Outcome of one checker on one grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub condition: Condition,
    /// Smallest offending abscissa (or pair) when the check fails.
    pub witness: Option<Witness>,
    /// Worst signed slack; negative means the inequality is violated.
    #[serde(with = "crate::real")]
    pub margin: f64,
    /// Where the worst slack was found.
    pub worst: Option<Witness>,
    pub grid: Grid,
    pub tolerance: f64,
    #[serde(with = "crate::real")]
    pub s: f64,
    pub s_star: f64,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
