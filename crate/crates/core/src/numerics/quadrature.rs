//! Adaptive Gauss–Kronrod quadrature (7-point Gauss embedded in 15-point Kronrod).

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Maximum number of intervals kept by the adaptive scheme.
pub const MAX_SUBDIVISIONS: usize = 2000;

/// Absolute error floor added to the relative tolerance.
pub const ABS_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub subdivisions: usize,
}

// Kronrod abscissae on [0, 1]; odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; ties broken by position so the heap order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One application of the 15-point rule on `[a, b]` in the transformed
/// coordinate. Returns (kronrod estimate, error estimate).
fn gk15<F>(g: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = g(center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = g(center - dx)?;
        let f2 = g(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();

    // QUADPACK error rescaling.
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((value, err))
}

/// Integrates `integrand` over `(lo, hi)`; either end may be infinite.
///
/// Infinite ranges are mapped onto a bounded interval with `x = t / (1 - t^2)`
/// (`t` in `(-1, 1)` for the whole line, `(0, 1)` or `(-1, 0)` for a half
/// line). The rule never evaluates the integrand at the interval ends, so
/// integrable endpoint singularities are fine.
pub fn integrate_adaptive<F>(mut integrand: F, lo: f64, hi: f64, rel_tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    if lo.is_nan() || hi.is_nan() || !(lo < hi) {
        return Err(Error::Domain(format!("integration range must satisfy lo < hi, got [{lo}, {hi}]")));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::Domain(format!("rel_tol must be > 0, got {rel_tol}")));
    }

    let mut eval = |x: f64, jac: f64| -> Result<f64> {
        let v = integrand(x);
        if v.is_nan() {
            return Err(Error::NanValue { x });
        }
        Ok(v * jac)
    };

    let mapped = |t: f64| {
        let d = 1.0 - t * t;
        (t / d, (1.0 + t * t) / (d * d))
    };

    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => adapt(&mut |x| eval(x, 1.0), lo, hi, rel_tol),
        (false, false) => adapt(
            &mut |t| {
                let (x, j) = mapped(t);
                eval(x, j)
            },
            -1.0,
            1.0,
            rel_tol,
        ),
        (true, false) => adapt(
            &mut |t| {
                let (x, j) = mapped(t);
                eval(lo + x, j)
            },
            0.0,
            1.0,
            rel_tol,
        ),
        (false, true) => adapt(
            &mut |t| {
                let (x, j) = mapped(t);
                eval(hi + x, j)
            },
            -1.0,
            0.0,
            rel_tol,
        ),
    }
}

fn adapt<F>(g: &mut F, a: f64, b: f64, rel_tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (v0, e0) = gk15(g, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value: v0, error: e0 });
    let mut total = v0;
    let mut total_err = e0;
    // Segments too short to split any further; they still count in the sum.
    let mut frozen_value = 0.0;
    let mut frozen_err = 0.0;

    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::QuadratureFailed {
                estimate: total,
                abs_error: total_err,
                subdivisions: heap.len(),
            });
        }
        if total_err <= (rel_tol * total.abs()).max(ABS_FLOOR) {
            break;
        }
        let count = heap.len() + usize::from(frozen_err > 0.0 || frozen_value != 0.0);
        if count >= MAX_SUBDIVISIONS {
            return Err(Error::QuadratureFailed {
                estimate: total,
                abs_error: total_err,
                subdivisions: count,
            });
        }
        let Some(seg) = heap.pop() else {
            return Err(Error::QuadratureFailed {
                estimate: total,
                abs_error: total_err,
                subdivisions: count,
            });
        };
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) || (seg.b - seg.a) <= 4.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) {
            frozen_value += seg.value;
            frozen_err += seg.error;
            // Error stuck in unsplittable segments can no longer shrink.
            if heap.is_empty() || frozen_err > (rel_tol * total.abs()).max(ABS_FLOOR) {
                return Err(Error::QuadratureFailed {
                    estimate: total,
                    abs_error: total_err,
                    subdivisions: count,
                });
            }
            continue;
        }
        let (v1, e1) = gk15(g, seg.a, mid)?;
        let (v2, e2) = gk15(g, mid, seg.b)?;
        heap.push(Segment { a: seg.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: seg.b, value: v2, error: e2 });

        // Re-sum rather than update incrementally to avoid drift.
        total = frozen_value + heap.iter().map(|s| s.value).sum::<f64>();
        total_err = frozen_err + heap.iter().map(|s| s.error).sum::<f64>();
    }

    let subdivisions = heap.len() + usize::from(frozen_err > 0.0 || frozen_value != 0.0);
    Ok(QuadratureResult {
        value: total,
        abs_error_estimate: total_err,
        subdivisions: subdivisions.max(1),
    })
}
