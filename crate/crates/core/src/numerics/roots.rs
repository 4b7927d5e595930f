use crate::error::{Error, Result};

/// Locates the boundary of a monotone predicate: `predicate(lo)` must hold,
/// `predicate(hi)` must not. Returns the midpoint of a final bracket of
/// width at most `tol`.
pub fn bisect_boundary<P>(mut predicate: P, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    P: FnMut(f64) -> bool,
{
    try_bisect_boundary(|x| Ok(predicate(x)), lo, hi, tol)
}

/// Fallible variant of [`bisect_boundary`]; predicate errors abort the search.
pub fn try_bisect_boundary<P>(mut predicate: P, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    P: FnMut(f64) -> Result<bool>,
{
    if !(lo < hi) {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            reason: "need lo < hi".into(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    if !predicate(lo)? {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            reason: "predicate is false at the lower end".into(),
        });
    }
    if predicate(hi)? {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            reason: "predicate is true at the upper end".into(),
        });
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let m = 0.5 * (a + b);
        if !(m > a && m < b) {
            break;
        }
        if predicate(m)? {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_function() {
        let m = bisect_boundary(|x| x < 0.5, 0.0, 1.0, 1e-6).unwrap();
        assert!((m - 0.5).abs() <= 1e-6);
        assert!(m - 1e-6 < 0.5 && m + 1e-6 >= 0.5);
    }

    #[test]
    fn invalid_brackets() {
        let e = bisect_boundary(|x| x < 0.5, 0.6, 1.0, 1e-6).unwrap_err();
        assert!(matches!(e, Error::BracketInvalid { .. }));
        let e = bisect_boundary(|x| x < 5.0, 0.0, 1.0, 1e-6).unwrap_err();
        assert!(e.to_string().contains("bracket invalid"));
    }

    #[test]
    fn predicate_error_propagates() {
        let e = try_bisect_boundary(|x| if x > 0.7 { Err(Error::NanValue { x }) } else { Ok(x < 0.3) }, 0.0, 0.6, 1e-6);
        assert!(e.is_ok());
        let e = try_bisect_boundary(|x| if x > 0.7 { Err(Error::NanValue { x }) } else { Ok(true) }, 0.0, 1.0, 1e-6);
        assert!(matches!(e, Err(Error::NanValue { .. })));
    }
}
