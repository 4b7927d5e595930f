use super::cr::PointState;
use super::{Certificate, ConcavityIndex, Condition, Grid, Verdict, Witness};
use crate::catalog::DistributionSpec;
use crate::error::{Error, Result};

/// Pair budget of the midpoint checker for grids above 200 points.
const PAIR_BUDGET: usize = 20_000;
/// Extra pairs against a point outside `J(F)` (s > 0 only).
const OUTSIDE_PAIRS: usize = 200;

/// Normalised slack of condition (iv) at one point: both sides of
/// `-c f²/(1-F) ≤ f' ≤ c f²/F` divided by `c f² / min{F, 1-F}`.
/// At `c = 0` the condition reads `f' = 0` and the slack is
/// `-|min{F, 1-F} f'/f²|`.
pub(crate) fn iv_slack(p: &PointState, c: f64) -> f64 {
    let m = p.min_tail();
    let qm = if p.score == 0.0 {
        0.0
    } else {
        p.score * (m.ln() - p.ln_f).exp()
    };
    if c == 0.0 {
        return -qm.abs();
    }
    let lower = qm / c + m / p.sf;
    let upper = m / p.cdf - qm / c;
    lower.min(upper)
}

struct Tracker {
    margin: f64,
    worst: Option<Witness>,
    first_bad: Option<(Witness, f64, f64)>,
    tol: f64,
}

impl Tracker {
    fn new(tol: f64) -> Self {
        Self {
            margin: f64::INFINITY,
            worst: None,
            first_bad: None,
            tol,
        }
    }

    fn record(&mut self, slack: f64, w: Witness) -> Result<()> {
        let (x, y) = match w {
            Witness::Point { x } => (x, f64::NEG_INFINITY),
            Witness::Pair { x, y } => (x, y),
        };
        if slack.is_nan() {
            return Err(Error::NanValue { x });
        }
        if slack < self.margin {
            self.margin = slack;
            self.worst = Some(w);
        }
        if slack < -self.tol {
            let smaller = match self.first_bad {
                None => true,
                Some((_, bx, by)) => (x, y) < (bx, by),
            };
            if smaller {
                self.first_bad = Some((w, x, y));
            }
        }
        Ok(())
    }

    fn finish(self, condition: Condition, grid: &Grid, idx: ConcavityIndex) -> Certificate {
        let verdict = if self.first_bad.is_some() { Verdict::Fail } else { Verdict::Pass };
        Certificate {
            verdict,
            condition,
            witness: self.first_bad.map(|(w, _, _)| w),
            margin: if self.margin.is_finite() { self.margin } else { 0.0 },
            worst: self.worst,
            grid: grid.clone(),
            tolerance: self.tol,
            s: idx.s,
            s_star: idx.s_star,
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance must be finite and >= 0, got {tol}")))
    }
}

/// Derivative inequality `-(1-s*) f²/(1-F) ≤ f' ≤ (1-s*) f²/F` at every grid
/// point, with relative slack `tol`.
pub fn check_condition_iv(d: &DistributionSpec, idx: ConcavityIndex, grid: &Grid, tol: f64) -> Result<Certificate> {
    check_tol(tol)?;
    let c = idx.one_minus_star();
    let mut t = Tracker::new(tol);
    for &x in &grid.points {
        let p = PointState::at(d, x)?;
        t.record(iv_slack(&p, c), Witness::Point { x })?;
    }
    Ok(t.finish(Condition::DerivIneqIv, grid, idx))
}

/// `f/(1-F)^{1-s*}` non-decreasing and `f/F^{1-s*}` non-increasing across
/// consecutive grid points, each up to relative slack `tol`.
pub fn check_condition_iii(d: &DistributionSpec, idx: ConcavityIndex, grid: &Grid, tol: f64) -> Result<Certificate> {
    check_tol(tol)?;
    let c = idx.one_minus_star();
    let mut hazards = Vec::with_capacity(grid.points.len());
    for &x in &grid.points {
        let p = PointState::at(d, x)?;
        hazards.push((p.ln_f - c * p.sf.ln(), p.ln_f - c * p.cdf.ln()));
    }
    let mut t = Tracker::new(tol);
    for (i, w) in hazards.windows(2).enumerate() {
        let (up, down) = ((w[1].0 - w[0].0).exp_m1(), (w[0].1 - w[1].1).exp_m1());
        let pair = Witness::Pair {
            x: grid.points[i],
            y: grid.points[i + 1],
        };
        t.record(up.min(down), pair)?;
    }
    Ok(t.finish(Condition::HazardMonoIii, grid, idx))
}

/// `ln M_t(a, b; θ)` from `la = ln a`, `lb = ln b`.
fn ln_power_mean(la: f64, lb: f64, theta: f64, t: f64) -> f64 {
    if la == lb {
        return la;
    }
    if t == f64::INFINITY {
        return la.max(lb);
    }
    if t == f64::NEG_INFINITY {
        return la.min(lb);
    }
    if t == 0.0 {
        if la == f64::NEG_INFINITY || lb == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        return (1.0 - theta) * la + theta * lb;
    }
    if t < 0.0 && (la == f64::NEG_INFINITY || lb == f64::NEG_INFINITY) {
        return f64::NEG_INFINITY;
    }
    let (ta, tb) = (t * la, t * lb);
    if ta.abs() < 1.0 && tb.abs() < 1.0 {
        // small exponents: M^t = 1 + (1-θ)(e^{ta}-1) + θ(e^{tb}-1)
        let w = (1.0 - theta) * ta.exp_m1() + theta * tb.exp_m1();
        return w.ln_1p() / t;
    }
    let (pa, pb) = ((1.0 - theta).ln() + ta, theta.ln() + tb);
    let m = pa.max(pb);
    (m + ((pa - m).exp() + (pb - m).exp()).ln()) / t
}

/// Generalized mean `M_t(a, b; θ)`: `((1-θ)a^t + θb^t)^{1/t}`, the weighted
/// geometric mean at `t = 0`, `max` at `t = ∞` and `min` at `t = -∞`.
/// For `t ≤ 0` a zero argument gives 0.
pub fn generalized_mean(a: f64, b: f64, theta: f64, t: f64) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0) {
        return Err(Error::Domain(format!("generalized mean needs a, b >= 0, got {a}, {b}")));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!("theta must lie in (0, 1), got {theta}")));
    }
    if t.is_nan() {
        return Err(Error::Domain("order t must not be NaN".into()));
    }
    if t == f64::INFINITY {
        return Ok(a.max(b));
    }
    if t == f64::NEG_INFINITY {
        return Ok(a.min(b));
    }
    Ok(ln_power_mean(a.ln(), b.ln(), theta, t).exp())
}

fn midpoint_pairs(n: usize) -> Vec<(usize, usize)> {
    if n <= 200 {
        return (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    }
    let gaps: Vec<usize> = std::iter::successors(Some(1usize), |g| Some(g * 2)).take_while(|&g| g < n).collect();
    let total: usize = gaps.iter().map(|g| n - g).sum();
    if total <= PAIR_BUDGET {
        return gaps.iter().flat_map(|&g| (0..n - g).map(move |i| (i, i + g))).collect();
    }
    // evenly spaced subsample inside each gap stratum
    let per_gap = PAIR_BUDGET / gaps.len();
    let mut out = Vec::with_capacity(PAIR_BUDGET);
    for &g in &gaps {
        let avail = n - g;
        let take = per_gap.min(avail);
        for k in 0..take {
            let i = if take == 1 { 0 } else { k * (avail - 1) / (take - 1) };
            out.push((i, i + g));
        }
    }
    out
}

/// Midpoint form of the definition: for grid pairs `(x, y)`,
/// `F((x+y)/2) ≥ M_{s*}(F(x), F(y); ½)` and the same for `1 - F`, compared
/// in log space with relative slack `tol`.
///
/// Pairs: all of them for grids of at most 200 points, otherwise every pair
/// at index gap 1, 2, 4, … (thinned evenly within each gap if that exceeds
/// 20000 pairs). For `s > 0` the concavity domain extends past `J(F)`, so
/// when `J(F)` has a finite end the grid is also paired with one point
/// beyond it.
pub fn check_midpoint(d: &DistributionSpec, idx: ConcavityIndex, grid: &Grid, tol: f64) -> Result<Certificate> {
    check_tol(tol)?;
    let pts = &grid.points;
    if pts.len() < 3 {
        return Err(Error::Domain("midpoint check needs at least 3 grid points".into()));
    }
    let t_star = idx.s_star;
    let logs: Vec<(f64, f64)> = pts
        .iter()
        .map(|&x| {
            let (c, s) = d.cdf_sf(x);
            (c.ln(), s.ln())
        })
        .collect();

    let mut tr = Tracker::new(tol);
    let mut test_pair = |x: f64, lx: (f64, f64), y: f64, ly: (f64, f64), which: (bool, bool)| -> Result<()> {
        let m = 0.5 * (x + y);
        let (cm, sm) = d.cdf_sf(m);
        let mut slack = f64::INFINITY;
        if which.0 {
            slack = slack.min((cm.ln() - ln_power_mean(lx.0, ly.0, 0.5, t_star)).exp_m1());
        }
        if which.1 {
            slack = slack.min((sm.ln() - ln_power_mean(lx.1, ly.1, 0.5, t_star)).exp_m1());
        }
        tr.record(slack, Witness::Pair { x, y })
    };

    for (i, j) in midpoint_pairs(pts.len()) {
        test_pair(pts[i], logs[i], pts[j], logs[j], (true, true))?;
    }

    if idx.s > 0.0 {
        let support = d.support();
        let n = pts.len();
        let stride = n.div_ceil(OUTSIDE_PAIRS).max(1);
        let width = pts[n - 1] - pts[0];
        if support.hi.is_finite() {
            let z = support.hi + width;
            for i in (0..n).step_by(stride) {
                test_pair(pts[i], logs[i], z, (0.0, f64::NEG_INFINITY), (true, false))?;
            }
        }
        if support.lo.is_finite() {
            let z = support.lo - width;
            for i in (0..n).step_by(stride) {
                test_pair(z, (f64::NEG_INFINITY, 0.0), pts[i], logs[i], (false, true))?;
            }
        }
    }
    Ok(tr.finish(Condition::MidpointDef, grid, idx))
}

/// Conditions (iv), (iii) and the midpoint test, in that order.
pub fn check_all(d: &DistributionSpec, idx: ConcavityIndex, grid: &Grid, tol: f64) -> Result<Vec<Certificate>> {
    Ok(vec![
        check_condition_iv(d, idx, grid, tol)?,
        check_condition_iii(d, idx, grid, tol)?,
        check_midpoint(d, idx, grid, tol)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_mean_examples() {
        assert!((generalized_mean(4.0, 9.0, 0.5, 0.0).unwrap() - 6.0).abs() < 1e-14);
        assert!((generalized_mean(4.0, 9.0, 0.5, 1.0).unwrap() - 6.5).abs() < 1e-14);
        assert!((generalized_mean(2.0, 2.0, 0.3, -1.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(generalized_mean(2.0, 5.0, 0.3, f64::INFINITY).unwrap(), 5.0);
        assert_eq!(generalized_mean(2.0, 5.0, 0.3, f64::NEG_INFINITY).unwrap(), 2.0);
        assert_eq!(generalized_mean(0.0, 5.0, 0.3, -2.0).unwrap(), 0.0);
        assert_eq!(generalized_mean(0.0, 5.0, 0.3, 0.0).unwrap(), 0.0);
        // harmonic mean of 2 and 6 with equal weights is 3
        assert!((generalized_mean(2.0, 6.0, 0.5, -1.0).unwrap() - 3.0).abs() < 1e-14);
        assert!(generalized_mean(-1.0, 1.0, 0.5, 1.0).is_err());
        assert!(generalized_mean(1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn generalized_mean_continuous_at_zero() {
        for &(a, b, th) in &[(0.3, 7.0, 0.5), (1e-6, 0.9, 0.2), (5.0, 5.5, 0.9)] {
            let g = generalized_mean(a, b, th, 0.0).unwrap();
            // M_t - M_0 ≈ t θ(1-θ) ln²(b/a) M_0 / 2, so |t| ≤ 1e-11 keeps the
            // true difference below the 1e-10 target
            for &t in &[1e-11, -1e-11, 1e-12, -1e-12, 1e-15] {
                let v = generalized_mean(a, b, th, t).unwrap();
                assert!((v - g).abs() <= 1e-10 * g.max(1.0), "t = {t}: {v} vs {g}");
            }
        }
    }

    #[test]
    fn generalized_mean_large_order() {
        // direct evaluation is fine here and serves as the oracle
        let (a, b, th, t) = (3.0f64, 8.0f64, 0.25, 7.0);
        let direct = ((1.0 - th) * a.powf(t) + th * b.powf(t)).powf(1.0 / t);
        assert!((generalized_mean(a, b, th, t).unwrap() / direct - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pair_schedule() {
        assert_eq!(midpoint_pairs(4).len(), 6);
        let p = midpoint_pairs(2000);
        assert!(p.len() <= PAIR_BUDGET);
        assert!(p.contains(&(0, 1)) && p.contains(&(0, 1024)));
        let big = midpoint_pairs(10_000);
        assert!(big.len() <= PAIR_BUDGET);
        assert_eq!(midpoint_pairs(10_000), big);
    }

    fn idx(s: f64) -> ConcavityIndex {
        ConcavityIndex::to_index(s).unwrap()
    }

    #[test]
    fn pareto_sits_on_the_boundary() {
        let d = DistributionSpec::pareto(2.0, 1.0).unwrap();
        let g = Grid::default_for(&d).unwrap();
        let c = check_condition_iv(&d, idx(-1.0 / 3.0), &g, 1e-9).unwrap();
        assert!(c.passed());
        assert!(c.margin.abs() <= 1e-8, "{}", c.margin);
    }

    #[test]
    fn uniform_at_infinity() {
        let d = DistributionSpec::uniform(0.0, 1.0).unwrap();
        let g = Grid::default_for(&d).unwrap();
        for c in check_all(&d, idx(f64::INFINITY), &g, 1e-9).unwrap() {
            assert!(c.passed(), "{:?} {}", c.condition, c.margin);
        }
        let m = check_midpoint(&d, idx(1.0), &g, 1e-9).unwrap();
        assert!(m.passed());
    }

    #[test]
    fn cauchy_fails_above_its_index() {
        let d = DistributionSpec::student_t(1.0).unwrap();
        let g = Grid::default_for(&d).unwrap();
        let c = check_condition_iv(&d, idx(0.5), &g, 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(c.witness.is_some());
        assert!(c.margin < -1e-9);
        for c in check_all(&d, idx(-0.5), &g, 1e-9).unwrap() {
            assert!(c.passed(), "{:?} {}", c.condition, c.margin);
        }
    }

    #[test]
    fn normal_mixture_edges() {
        let pass = DistributionSpec::normal_mixture(1.34).unwrap();
        let fail = DistributionSpec::normal_mixture(1.35).unwrap();
        for c in check_all(&pass, idx(0.0), &Grid::default_for(&pass).unwrap(), 1e-9).unwrap() {
            assert!(c.passed(), "{:?} {}", c.condition, c.margin);
        }
        for c in check_all(&fail, idx(0.0), &Grid::default_for(&fail).unwrap(), 1e-9).unwrap() {
            assert!(!c.passed(), "{:?} {}", c.condition, c.margin);
        }
    }

    #[test]
    fn witness_is_smallest_offender() {
        let d = DistributionSpec::student_t(1.0).unwrap();
        let g = Grid::quantile_spaced(&d, 300, 1e-6).unwrap();
        let c = check_condition_iv(&d, idx(0.5), &g, 1e-9).unwrap();
        let Some(Witness::Point { x }) = c.witness else { panic!() };
        let p = g.points.iter().position(|&p| p == x).unwrap();
        let cst = idx(0.5).one_minus_star();
        for &y in &g.points[..p] {
            assert!(iv_slack(&PointState::at(&d, y).unwrap(), cst) >= -1e-9);
        }
    }
}
