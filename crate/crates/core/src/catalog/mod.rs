//! Example distribution families with analytic density, density slope,
//! distribution and survival functions, and quantiles.
//!
//! Survival functions are evaluated directly (never as `1 - cdf`) so that
//! the upper tail keeps full relative precision; every shape check in this
//! crate depends on that.

mod parse;

pub use parse::parse_spec;

use crate::error::{Error, Result};
use crate::numerics::special::{erfc, ibeta_xy, ln_beta, ln_gamma};
use serde::{Deserialize, Serialize, Serializer};
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

/// A family tag with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    StudentT { r: f64 },
    /// Density proportional to `x^{b/2-1} / (a + b x)^{(a+b)/2}`: `b` is the
    /// numerator and `a` the denominator degrees of freedom.
    FDist { a: f64, b: f64 },
    Pareto { a: f64, b: f64 },
    /// `C_r (1 - x²/r)^{r/2}` on `[-√r, √r]`.
    SphericalPower { r: f64 },
    Normal { mu: f64, sigma: f64 },
    Uniform { lo: f64, hi: f64 },
    /// `½ N(-δ, 1) + ½ N(δ, 1)`.
    NormalMixture { delta: f64 },
    /// `½ t_r(· - δ) + ½ t_r(· + δ)`.
    TMixture { r: f64, delta: f64 },
}

/// Validated, immutable distribution description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    family: Family,
}

/// `J(F)`, the open interval where `0 < F < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Support {
    #[serde(with = "crate::real")]
    pub lo: f64,
    #[serde(with = "crate::real")]
    pub hi: f64,
}

impl Support {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

/// Largest `s` for which the family's density is known to be s-concave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaxKnownS {
    /// May be `f64::INFINITY` (uniform).
    Known(f64),
    Unknown,
}

impl MaxKnownS {
    pub fn value(self) -> Option<f64> {
        match self {
            MaxKnownS::Known(v) => Some(v),
            MaxKnownS::Unknown => None,
        }
    }
}

impl Serialize for MaxKnownS {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MaxKnownS::Known(v) => crate::real::serialize(v, ser),
            MaxKnownS::Unknown => ser.serialize_str("unknown"),
        }
    }
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Constraint(format!("{name} must be > 0")))
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Constraint(format!("{name} must be finite")))
    }
}

impl DistributionSpec {
    pub fn student_t(r: f64) -> Result<Self> {
        let r = positive("r", r)?;
        Ok(Self { family: Family::StudentT { r } })
    }

    pub fn f_dist(a: f64, b: f64) -> Result<Self> {
        let a = positive("a", a)?;
        let b = positive("b", b)?;
        Ok(Self { family: Family::FDist { a, b } })
    }

    pub fn pareto(a: f64, b: f64) -> Result<Self> {
        let a = positive("a", a)?;
        let b = positive("b", b)?;
        Ok(Self { family: Family::Pareto { a, b } })
    }

    pub fn spherical_power(r: f64) -> Result<Self> {
        let r = positive("r", r)?;
        Ok(Self { family: Family::SphericalPower { r } })
    }

    pub fn normal(mu: f64, sigma: f64) -> Result<Self> {
        let mu = finite("mu", mu)?;
        let sigma = positive("sigma", sigma)?;
        Ok(Self { family: Family::Normal { mu, sigma } })
    }

    pub fn standard_normal() -> Self {
        Self {
            family: Family::Normal { mu: 0.0, sigma: 1.0 },
        }
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        let lo = finite("lo", lo)?;
        let hi = finite("hi", hi)?;
        if !(lo < hi) {
            return Err(Error::Constraint("lo must be < hi".into()));
        }
        Ok(Self { family: Family::Uniform { lo, hi } })
    }

    pub fn normal_mixture(delta: f64) -> Result<Self> {
        let delta = positive("delta", delta)?;
        Ok(Self { family: Family::NormalMixture { delta } })
    }

    pub fn t_mixture(r: f64, delta: f64) -> Result<Self> {
        let r = positive("r", r)?;
        let delta = positive("delta", delta)?;
        Ok(Self { family: Family::TMixture { r, delta } })
    }

    /// Re-validates a family value.
    pub fn from_family(family: Family) -> Result<Self> {
        match family {
            Family::StudentT { r } => Self::student_t(r),
            Family::FDist { a, b } => Self::f_dist(a, b),
            Family::Pareto { a, b } => Self::pareto(a, b),
            Family::SphericalPower { r } => Self::spherical_power(r),
            Family::Normal { mu, sigma } => Self::normal(mu, sigma),
            Family::Uniform { lo, hi } => Self::uniform(lo, hi),
            Family::NormalMixture { delta } => Self::normal_mixture(delta),
            Family::TMixture { r, delta } => Self::t_mixture(r, delta),
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn support(&self) -> Support {
        let (lo, hi) = match self.family {
            Family::FDist { .. } => (0.0, f64::INFINITY),
            Family::Pareto { b, .. } => (b, f64::INFINITY),
            Family::SphericalPower { r } => (-r.sqrt(), r.sqrt()),
            Family::Uniform { lo, hi } => (lo, hi),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        };
        Support { lo, hi }
    }

    pub fn max_known_s(&self) -> MaxKnownS {
        match self.family {
            Family::StudentT { r } => MaxKnownS::Known(-1.0 / (1.0 + r)),
            Family::FDist { a, b } if a >= 2.0 && b >= 2.0 => MaxKnownS::Known(-1.0 / (1.0 + a / 2.0)),
            Family::FDist { .. } => MaxKnownS::Unknown,
            Family::Pareto { a, .. } => MaxKnownS::Known(-1.0 / (1.0 + a)),
            Family::SphericalPower { r } => MaxKnownS::Known(2.0 / r),
            Family::Normal { .. } => MaxKnownS::Known(0.0),
            Family::Uniform { .. } => MaxKnownS::Known(f64::INFINITY),
            Family::NormalMixture { .. } | Family::TMixture { .. } => MaxKnownS::Unknown,
        }
    }

    /// Normalising constant of the density, where the family has one.
    pub fn normalizing_constant(&self) -> Option<f64> {
        match self.family {
            Family::StudentT { r } => Some(t_ln_const(r).exp()),
            Family::FDist { a, b } => Some(f_ln_const(a, b).exp()),
            Family::Pareto { a, b } => Some(a * b.powf(a)),
            Family::SphericalPower { r } => Some(gpow_ln_const(r).exp()),
            Family::Normal { sigma, .. } => Some(1.0 / (sigma * (2.0 * PI).sqrt())),
            Family::Uniform { lo, hi } => Some(1.0 / (hi - lo)),
            Family::NormalMixture { .. } | Family::TMixture { .. } => None,
        }
    }

    /// ln f(x); `-inf` outside the support.
    pub fn log_pdf(&self, x: f64) -> f64 {
        match self.family {
            Family::StudentT { r } => t_log_pdf(r, x),
            Family::FDist { a, b } => {
                if x < 0.0 {
                    return f64::NEG_INFINITY;
                }
                if x == 0.0 {
                    return if b == 2.0 {
                        f_ln_const(a, b) - (a + b) / 2.0 * a.ln()
                    } else if b > 2.0 {
                        f64::NEG_INFINITY
                    } else {
                        f64::INFINITY
                    };
                }
                f_ln_const(a, b) + (b / 2.0 - 1.0) * x.ln() - (a + b) / 2.0 * ln_a_plus_bx(a, b, x)
            }
            Family::Pareto { a, b } => {
                if x < b {
                    f64::NEG_INFINITY
                } else {
                    (a / b).ln() - (a + 1.0) * (x / b).ln()
                }
            }
            Family::SphericalPower { r } => {
                let q = gpow_one_minus(r, x);
                if q <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    gpow_ln_const(r) + r / 2.0 * q.ln()
                }
            }
            Family::Normal { mu, sigma } => normal_log_pdf((x - mu) / sigma) - sigma.ln(),
            Family::Uniform { lo, hi } => {
                if x < lo || x > hi {
                    f64::NEG_INFINITY
                } else {
                    -(hi - lo).ln()
                }
            }
            Family::NormalMixture { delta } => {
                mixture_log(normal_log_pdf(x + delta), normal_log_pdf(x - delta))
            }
            Family::TMixture { r, delta } => mixture_log(t_log_pdf(r, x + delta), t_log_pdf(r, x - delta)),
        }
    }

    /// Density f(x); zero outside the support.
    pub fn pdf(&self, x: f64) -> f64 {
        match self.family {
            Family::NormalMixture { delta } => {
                0.5 * (normal_log_pdf(x + delta).exp() + normal_log_pdf(x - delta).exp())
            }
            Family::TMixture { r, delta } => 0.5 * (t_log_pdf(r, x + delta).exp() + t_log_pdf(r, x - delta).exp()),
            _ => self.log_pdf(x).exp(),
        }
    }

    fn check_differentiable(&self, x: f64) -> Result<()> {
        if x.is_nan() {
            return Err(Error::NanValue { x });
        }
        match self.family {
            Family::Pareto { b, .. } if x == b => Err(Error::NonDifferentiable { x }),
            Family::Uniform { lo, hi } if x == lo || x == hi => Err(Error::NonDifferentiable { x }),
            Family::FDist { b, .. } if x == 0.0 && b <= 4.0 => Err(Error::NonDifferentiable { x }),
            _ => Ok(()),
        }
    }

    /// Score `f'(x) / f(x)` at a point where `f(x) > 0`.
    ///
    /// For mixtures the components are weighted in log space, so the value
    /// stays finite even where both component densities underflow.
    pub fn score(&self, x: f64) -> Result<f64> {
        self.check_differentiable(x)?;
        let s = match self.family {
            Family::StudentT { r } => t_score(r, x),
            Family::FDist { a, b } => {
                if x <= 0.0 {
                    return Err(Error::ZeroDensity { x });
                }
                (b / 2.0 - 1.0) / x - (a + b) / 2.0 / (x + a / b)
            }
            Family::Pareto { a, b } => {
                if x < b {
                    return Err(Error::ZeroDensity { x });
                }
                -(a + 1.0) / x
            }
            Family::SphericalPower { r } => {
                let q = gpow_one_minus(r, x);
                if q <= 0.0 {
                    return Err(Error::ZeroDensity { x });
                }
                -x / q
            }
            Family::Normal { mu, sigma } => -(x - mu) / (sigma * sigma),
            Family::Uniform { lo, hi } => {
                if x < lo || x > hi {
                    return Err(Error::ZeroDensity { x });
                }
                0.0
            }
            Family::NormalMixture { delta } => mixture_score(
                normal_log_pdf(x + delta),
                -(x + delta),
                normal_log_pdf(x - delta),
                -(x - delta),
            ),
            Family::TMixture { r, delta } => mixture_score(
                t_log_pdf(r, x + delta),
                t_score(r, x + delta),
                t_log_pdf(r, x - delta),
                t_score(r, x - delta),
            ),
        };
        Ok(s)
    }

    /// Analytic derivative f'(x).
    ///
    /// Errors at points where the density has a jump (Pareto at `x = b`,
    /// uniform at its ends). At the ends of the spherical-power support the
    /// one-sided limit is returned (possibly infinite).
    pub fn pdf_deriv(&self, x: f64) -> Result<f64> {
        self.check_differentiable(x)?;
        match self.family {
            Family::NormalMixture { delta } => {
                let (u, v) = (x + delta, x - delta);
                Ok(0.5 * (-u * normal_log_pdf(u).exp() - v * normal_log_pdf(v).exp()))
            }
            Family::TMixture { r, delta } => {
                let (u, v) = (x + delta, x - delta);
                Ok(0.5 * (t_score(r, u) * t_log_pdf(r, u).exp() + t_score(r, v) * t_log_pdf(r, v).exp()))
            }
            Family::SphericalPower { r } => {
                let q = gpow_one_minus(r, x);
                if q < 0.0 {
                    return Ok(0.0);
                }
                if q == 0.0 {
                    let c = gpow_ln_const(r).exp();
                    return Ok(if r > 2.0 {
                        0.0
                    } else if r == 2.0 {
                        -x * c
                    } else {
                        -x.signum() * f64::INFINITY
                    });
                }
                Ok(-x * gpow_ln_const(r).exp() * q.powf(r / 2.0 - 1.0))
            }
            _ => {
                let f = self.pdf(x);
                if f == 0.0 {
                    return Ok(0.0);
                }
                Ok(self.score(x)? * f)
            }
        }
    }

    /// Distribution function F(x).
    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_sf(x).0
    }

    /// Survival function 1 - F(x), computed without cancellation.
    pub fn sf(&self, x: f64) -> f64 {
        self.cdf_sf(x).1
    }

    /// `(F(x), 1 - F(x))`, each evaluated on its accurate side.
    pub fn cdf_sf(&self, x: f64) -> (f64, f64) {
        if x.is_nan() {
            return (f64::NAN, f64::NAN);
        }
        match self.family {
            Family::StudentT { r } => t_cdf_sf(r, x),
            Family::FDist { a, b } => {
                if x <= 0.0 {
                    return (0.0, 1.0);
                }
                if x == f64::INFINITY {
                    return (1.0, 0.0);
                }
                // u = bx/(a+bx), v = a/(a+bx)
                let ratio = a / (b * x);
                let u = 1.0 / (1.0 + ratio);
                let v = ratio / (1.0 + ratio);
                (ibeta_xy(b / 2.0, a / 2.0, u, v), ibeta_xy(a / 2.0, b / 2.0, v, u))
            }
            Family::Pareto { a, b } => {
                if x <= b {
                    return (0.0, 1.0);
                }
                let l = -a * (x / b).ln();
                (-l.exp_m1(), l.exp())
            }
            Family::SphericalPower { r } => {
                let root = r.sqrt();
                if x <= -root {
                    return (0.0, 1.0);
                }
                if x >= root {
                    return (1.0, 0.0);
                }
                let k = r / 2.0 + 1.0;
                let u = 0.5 * (1.0 + x / root);
                let v = 0.5 * (1.0 - x / root);
                (ibeta_xy(k, k, u, v), ibeta_xy(k, k, v, u))
            }
            Family::Normal { mu, sigma } => normal_cdf_sf((x - mu) / sigma),
            Family::Uniform { lo, hi } => {
                if x <= lo {
                    (0.0, 1.0)
                } else if x >= hi {
                    (1.0, 0.0)
                } else {
                    ((x - lo) / (hi - lo), (hi - x) / (hi - lo))
                }
            }
            Family::NormalMixture { delta } => {
                let (f1, s1) = normal_cdf_sf(x + delta);
                let (f2, s2) = normal_cdf_sf(x - delta);
                (0.5 * (f1 + f2), 0.5 * (s1 + s2))
            }
            Family::TMixture { r, delta } => {
                let (f1, s1) = t_cdf_sf(r, x + delta);
                let (f2, s2) = t_cdf_sf(r, x - delta);
                (0.5 * (f1 + f2), 0.5 * (s1 + s2))
            }
        }
    }

    /// Inverse of the distribution function, `p` in `(0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("quantile needs p in (0, 1), got {p}")));
        }
        if p <= 0.5 {
            self.solve_tail(p, Tail::Lower)
        } else {
            self.solve_tail(1.0 - p, Tail::Upper)
        }
    }

    /// Inverse of the survival function: the `x` with `1 - F(x) = q`.
    /// Use this instead of `quantile(1 - q)` when `q` is tiny.
    pub fn upper_quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!("upper quantile needs q in (0, 1), got {q}")));
        }
        if q <= 0.5 {
            self.solve_tail(q, Tail::Upper)
        } else {
            self.solve_tail(1.0 - q, Tail::Lower)
        }
    }

    fn reference_point(&self) -> (f64, f64) {
        match self.family {
            Family::Normal { mu, sigma } => (mu, sigma),
            Family::FDist { .. } => (1.0, 1.0),
            Family::Pareto { b, .. } => (b, b),
            Family::NormalMixture { delta } | Family::TMixture { delta, .. } => (0.0, 1.0 + delta),
            _ => (0.0, 1.0),
        }
    }

    /// Monotone bisection for `F(x) = mass` (lower tail) or
    /// `1 - F(x) = mass` (upper tail).
    fn solve_tail(&self, mass: f64, tail: Tail) -> Result<f64> {
        const LIMIT: f64 = 1e300;
        // g is increasing in x; target mass on the chosen side.
        let g = |x: f64| -> f64 {
            let (c, s) = self.cdf_sf(x);
            match tail {
                Tail::Lower => c,
                Tail::Upper => -s,
            }
        };
        let target = match tail {
            Tail::Lower => mass,
            Tail::Upper => -mass,
        };
        let support = self.support();
        let (center, scale) = self.reference_point();

        let mut lo = if support.lo.is_finite() { support.lo } else { center - scale };
        let mut step = scale;
        while g(lo) >= target {
            if !support.lo.is_finite() {
                step *= 2.0;
                lo = center - step;
                if lo < -LIMIT {
                    return Err(Error::Domain(format!("quantile for tail mass {mass} is not representable")));
                }
            } else {
                break;
            }
        }
        let mut hi = if support.hi.is_finite() { support.hi } else { center + scale };
        let mut step = scale;
        while g(hi) < target {
            if !support.hi.is_finite() {
                step *= 2.0;
                hi = center + step;
                if hi > LIMIT {
                    return Err(Error::Domain(format!("quantile for tail mass {mass} is not representable")));
                }
            } else {
                break;
            }
        }
        if lo > hi {
            std::mem::swap(&mut lo, &mut hi);
        }
        // Narrow an initial bracket that straddles the reference point.
        if support.lo.is_finite() || lo < center {
            let c = center.clamp(lo, hi);
            if c > lo && c < hi {
                if g(c) >= target {
                    hi = c;
                } else {
                    lo = c;
                }
            }
        }

        for _ in 0..200 {
            let mid = if lo > 0.0 && hi / lo > 4.0 {
                (lo * hi).sqrt()
            } else if hi < 0.0 && lo / hi > 4.0 {
                -(lo * hi).sqrt()
            } else {
                0.5 * (lo + hi)
            };
            if !(mid > lo && mid < hi) {
                break;
            }
            let v = g(mid);
            if v == target {
                return Ok(mid);
            }
            if v < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // pick the endpoint whose value is closer to the target
        let (glo, ghi) = (g(lo), g(hi));
        let x = if (glo - target).abs() <= (ghi - target).abs() { lo } else { hi };
        if support.contains(x) {
            Ok(x)
        } else if x <= support.lo {
            Ok(hi)
        } else {
            Ok(lo)
        }
    }
}

#[derive(Clone, Copy)]
enum Tail {
    Lower,
    Upper,
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::StudentT { r } => write!(f, "t:r={r}"),
            Family::FDist { a, b } => write!(f, "fdist:a={a},b={b}"),
            Family::Pareto { a, b } => write!(f, "pareto:a={a},b={b}"),
            Family::SphericalPower { r } => write!(f, "gpow:r={r}"),
            Family::Normal { mu, sigma } => write!(f, "normal:mu={mu},sigma={sigma}"),
            Family::Uniform { lo, hi } => write!(f, "uniform:lo={lo},hi={hi}"),
            Family::NormalMixture { delta } => write!(f, "normmix:delta={delta}"),
            Family::TMixture { r, delta } => write!(f, "tmix:r={r},delta={delta}"),
        }
    }
}

impl Serialize for DistributionSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

// ---------------------------------------------------------------------------
// family kernels

fn t_ln_const(r: f64) -> f64 {
    ln_gamma((r + 1.0) / 2.0) - ln_gamma(r / 2.0) - 0.5 * (r * PI).ln()
}

/// ln(1 + x²/r) without overflow for huge |x|.
fn ln1p_sq_over(x: f64, r: f64) -> f64 {
    if x.abs() < 1e150 {
        (x * x / r).ln_1p()
    } else {
        2.0 * x.abs().ln() - r.ln()
    }
}

fn t_log_pdf(r: f64, x: f64) -> f64 {
    t_ln_const(r) - (r + 1.0) / 2.0 * ln1p_sq_over(x, r)
}

fn t_score(r: f64, x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        -(r + 1.0) / (x + r / x)
    }
}

fn t_cdf_sf(r: f64, x: f64) -> (f64, f64) {
    if x == f64::INFINITY {
        return (1.0, 0.0);
    }
    if x == f64::NEG_INFINITY {
        return (0.0, 1.0);
    }
    let ax = x.abs();
    if ax * ax < r {
        let x2 = ax * ax;
        let z = x2 / (r + x2);
        let w = r / (r + x2);
        let half = 0.5 * ibeta_xy(0.5, r / 2.0, z, w);
        let sign = if x < 0.0 { -1.0 } else { 1.0 };
        (0.5 + sign * half, 0.5 - sign * half)
    } else {
        // w = r/(r+x²), z = x²/(r+x²), written to survive |x| near f64::MAX
        let ratio = (r / ax) / ax;
        let tail = if ratio < 1e-100 {
            // leading term of I_w(a, b) = w^a / (a B(a, b)) (1 + O(w)); w may
            // underflow here while the tail mass itself does not
            let a = r / 2.0;
            let ln_w = r.ln() - 2.0 * ax.ln();
            0.5 * (a * ln_w - a.ln() - ln_beta(a, 0.5)).exp()
        } else {
            let w = ratio / (1.0 + ratio);
            let z = 1.0 / (1.0 + ratio);
            0.5 * ibeta_xy(r / 2.0, 0.5, w, z)
        };
        if x < 0.0 {
            (tail, 1.0 - tail)
        } else {
            (1.0 - tail, tail)
        }
    }
}

fn f_ln_const(a: f64, b: f64) -> f64 {
    a / 2.0 * a.ln() + b / 2.0 * b.ln() - ln_beta(a / 2.0, b / 2.0)
}

fn ln_a_plus_bx(a: f64, b: f64, x: f64) -> f64 {
    if x > 1.0 {
        x.ln() + (b + a / x).ln()
    } else {
        (a + b * x).ln()
    }
}

fn gpow_ln_const(r: f64) -> f64 {
    ln_gamma((3.0 + r) / 2.0) - 0.5 * (PI * r).ln() - ln_gamma(1.0 + r / 2.0)
}

/// 1 - x²/r as a product, accurate near the support ends.
fn gpow_one_minus(r: f64, x: f64) -> f64 {
    let u = x / r.sqrt();
    (1.0 - u) * (1.0 + u)
}

fn normal_log_pdf(z: f64) -> f64 {
    -0.5 * z * z - 0.5 * (2.0 * PI).ln()
}

fn normal_cdf_sf(z: f64) -> (f64, f64) {
    (0.5 * erfc(-z * FRAC_1_SQRT_2), 0.5 * erfc(z * FRAC_1_SQRT_2))
}

fn mixture_log(l1: f64, l2: f64) -> f64 {
    let m = l1.max(l2);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + (0.5 * ((l1 - m).exp() + (l2 - m).exp())).ln()
}

fn mixture_score(l1: f64, s1: f64, l2: f64, s2: f64) -> f64 {
    let m = l1.max(l2);
    let w1 = (l1 - m).exp();
    let w2 = (l2 - m).exp();
    (w1 * s1 + w2 * s2) / (w1 + w2)
}
