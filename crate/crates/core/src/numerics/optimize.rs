use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketResult {
    pub location: f64,
    pub value: f64,
    pub bracket_width: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximises `objective` on `[lo, hi]`.
///
/// The objective is scanned on `seed_points` equispaced abscissas; the best
/// seed (ties go to the smaller abscissa) and its two neighbours form the
/// bracket that golden-section search shrinks to width `tol`. The result is
/// never worse than the best seed.
pub fn maximize_scalar<F>(mut objective: F, lo: f64, hi: f64, seed_points: usize, tol: f64) -> Result<BracketResult>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::Domain(format!("maximize_scalar needs lo < hi, got [{lo}, {hi}]")));
    }
    if seed_points < 2 {
        return Err(Error::Domain("maximize_scalar needs at least 2 seed points".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }

    let mut eval = |x: f64| -> Result<f64> {
        let v = objective(x);
        if v.is_nan() {
            Err(Error::NanValue { x })
        } else {
            Ok(v)
        }
    };

    let step = (hi - lo) / (seed_points - 1) as f64;
    let seed_at = |i: usize| if i + 1 == seed_points { hi } else { lo + step * i as f64 };

    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..seed_points {
        let v = eval(seed_at(i))?;
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let mut best_x = seed_at(best_i);

    let mut a = seed_at(best_i.saturating_sub(1));
    let mut b = seed_at((best_i + 1).min(seed_points - 1));

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    while (b - a) > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d)?;
        }
        // stop once the bracket no longer shrinks in floating point
        if !(c > a && d < b) {
            break;
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v > best_v || (v == best_v && x < best_x) {
            best_v = v;
            best_x = x;
        }
    }

    Ok(BracketResult {
        location: best_x,
        value: best_v,
        bracket_width: b - a,
    })
}
