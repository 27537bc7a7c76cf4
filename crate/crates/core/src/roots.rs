//! Bracketing root finders.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_BISECTIONS: usize = 4096;

/// Bisection on `[lo, hi]` where `f` changes sign. Iterates until the midpoint
/// no longer separates the endpoints, i.e. to full working precision.
pub fn bisect<T, F>(mut f: F, mut lo: T, mut hi: T) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let f_lo = f(lo)?;
    if f_lo == T::zero() {
        return Ok(lo);
    }
    let f_hi = f(hi)?;
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket("endpoint values share a sign"));
    }
    let lo_negative = f_lo < T::zero();
    for _ in 0..MAX_BISECTIONS {
        let mid = lo + (hi - lo) * T::half();
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if (f_mid < T::zero()) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * T::half())
}

/// Finds `hi > start` with `f(hi) >= 0` for an increasing-sign function that is
/// negative at `start`, doubling from `start + 1`. Gives up past `cap`, at
/// which point the caller receives `Ok(None)`.
pub fn expand_upper<T, F>(mut f: F, start: T, cap: T) -> Result<Option<(T, T)>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let mut lo = start;
    let mut hi = start + T::one();
    loop {
        if hi >= cap {
            hi = cap;
        }
        if f(hi)? >= T::zero() {
            return Ok(Some((lo, hi)));
        }
        if hi >= cap {
            return Ok(None);
        }
        lo = hi;
        hi *= T::two();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt_two() {
        let r = bisect(|x: f64| Ok(x * x - 2.0), 0.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn bisect_decreasing_function() {
        let r = bisect(|x: f64| Ok(1.0 - x), 0.0, 3.0).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bisect_rejects_same_sign() {
        assert!(matches!(
            bisect(|x: f64| Ok(x * x + 1.0), -1.0, 1.0),
            Err(Error::NoBracket(_))
        ));
    }

    #[test]
    fn expand_finds_bracket_or_gives_up() {
        let (lo, hi) = expand_upper(|x: f64| Ok(x - 37.0), 0.0, 1e3).unwrap().unwrap();
        assert!(lo < 37.0 && hi >= 37.0);
        assert!(expand_upper(|x: f64| Ok(x - 37.0), 0.0, 20.0).unwrap().is_none());
    }
}
