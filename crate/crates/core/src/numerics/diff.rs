/// Fourth-order central difference of `f` at `x`.
///
/// The step is `scale * max(1, |x|) * eps^(1/5)`; pass `scale < 1` to keep
/// the stencil away from a nearby support boundary.
pub fn central_difference<F>(f: F, x: f64, scale: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let h = scale * x.abs().max(1.0) * f64::EPSILON.powf(0.2);
    // make x ± h exactly representable offsets
    let h = (x + h) - x;
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial() {
        assert!((central_difference(|x| x * x, 3.0, 1.0) - 6.0).abs() < 1e-9);
        assert!((central_difference(|x| x * x * x, -2.0, 1.0) - 12.0).abs() < 1e-8);
    }

    #[test]
    fn cauchy_critical_point() {
        let d = central_difference(|x| 1.0 / (PI * (1.0 + x * x)), 0.0, 1.0);
        assert!(d.abs() < 1e-10);
    }

    #[test]
    fn pareto_density_slope() {
        // f(x) = a b^a x^{-(a+1)}, a = 2, b = 1: f'(2) = -(a+1)/x · f(2) = -3/2 · 1/4
        let f = |x: f64| if x >= 1.0 { 2.0 * x.powi(-3) } else { 0.0 };
        let d = central_difference(f, 2.0, 1.0);
        assert!((d - (-0.375)).abs() < 1e-9, "{d}");
    }
}
