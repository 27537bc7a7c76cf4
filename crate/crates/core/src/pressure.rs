//! Pressure laws and the perturbation strength.
//!
//! The default law is `p(rho) = int_0^rho q'(s)/s ds` with `q'(s) = s^2 e^s`,
//! whose closed form is `(rho - 1) e^rho + 1` and whose derivative is
//! `rho e^rho`. The scaled pressure entering the flux is `eps * p(rho)`.

use crate::error::{Error, Result};
use crate::quadrature::adaptive_gauss_kronrod;
use crate::scalar::Real;

/// Strength of the pressure perturbation.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Epsilon<T>(T);

impl<T: Real> Epsilon<T> {
    pub fn new(value: T) -> Result<Self> {
        if value > T::zero() && value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::Domain {
                what: "epsilon must be positive and finite",
                value: value.to_f64_lossy(),
            })
        }
    }

    /// The formal pressureless limit `eps = 0`.
    pub fn zero() -> Self {
        Self(T::zero())
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    #[inline]
    pub fn sqrt(self) -> T {
        self.0.sqrt()
    }

    #[inline]
    pub fn ln(self) -> T {
        self.0.ln()
    }
}

/// Checks that a list of perturbation strengths is strictly decreasing.
pub fn strictly_decreasing<T: Real>(eps: &[Epsilon<T>]) -> bool {
    eps.windows(2).all(|w| w[1].value() < w[0].value())
}

/// A barotropic pressure law with `p(0) = 0` and both `p` and `p'` increasing.
pub trait PressureLaw<T: Real>: Send + Sync {
    fn name(&self) -> &str;

    fn p(&self, rho: T) -> Result<T>;

    fn p_prime(&self, rho: T) -> Result<T>;

    /// `ln p(rho)`, finite past the overflow bound of `p` itself.
    fn log_p(&self, rho: T) -> Result<T> {
        Ok(self.p(rho)?.ln())
    }

    /// `sqrt(p'(rho) rho)`, the characteristic speed offset at `eps = 1`.
    fn sound_speed(&self, rho: T) -> Result<T> {
        Ok((self.p_prime(rho)? * rho).sqrt())
    }

    /// `int_a^b sqrt(p'(s)/s) ds`, the rarefaction integral at `eps = 1`.
    ///
    /// The default uses an open rule because `p'(s)/s` may be singular at 0.
    fn rarefaction_integral(&self, a: T, b: T) -> Result<T> {
        check_density(a)?;
        check_density(b)?;
        if a == b {
            return Ok(T::zero());
        }
        let integrand = |s: T| match self.p_prime(s) {
            Ok(dp) => (dp / s).sqrt(),
            Err(_) => T::nan(),
        };
        let v = adaptive_gauss_kronrod(integrand, a, b, T::c(1e-13).max(T::epsilon()));
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain {
                what: "rarefaction integral is not finite",
                value: b.to_f64_lossy(),
            })
        }
    }
}

pub(crate) fn check_density<T: Real>(rho: T) -> Result<()> {
    if rho >= T::zero() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "density must be non-negative",
            value: rho.to_f64_lossy(),
        })
    }
}

fn check_overflow<T: Real>(rho: T) -> Result<()> {
    if rho > T::rho_overflow() {
        Err(Error::OverflowAtVanishingEpsilon {
            rho: rho.to_f64_lossy(),
            bound: T::rho_overflow().to_f64_lossy(),
        })
    } else {
        Ok(())
    }
}

/// The default law `p(rho) = (rho - 1) e^rho + 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExpLaw;

impl<T: Real> PressureLaw<T> for ExpLaw {
    fn name(&self) -> &str {
        "exp"
    }

    fn p(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        check_overflow(rho)?;
        if rho < T::half() {
            // sum_{k>=0} rho^(k+2) / (k! (k+2)); avoids cancellation near 0
            let mut term = rho * rho;
            let mut sum = T::zero();
            let mut k = 0usize;
            loop {
                let contrib = term / T::c((k + 2) as f64);
                sum += contrib;
                if contrib <= sum * T::epsilon() || k > 60 {
                    break;
                }
                k += 1;
                term = term * rho / T::c(k as f64);
            }
            Ok(sum)
        } else {
            Ok((rho - T::one()) * rho.exp() + T::one())
        }
    }

    fn p_prime(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        check_overflow(rho)?;
        Ok(rho * rho.exp())
    }

    fn log_p(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        if rho <= T::rho_overflow() {
            Ok(self.p(rho)?.ln())
        } else {
            // ln((rho-1) e^rho + 1) = rho + ln(rho-1) + ln(1 + e^-rho/(rho-1))
            let rm1 = rho - T::one();
            Ok(rho + rm1.ln() + ((-rho).exp() / rm1).ln_1p())
        }
    }

    fn sound_speed(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        // rho e^{rho/2}: finite well past the bound on e^rho
        Ok(rho * (rho * T::half()).exp())
    }

    fn rarefaction_integral(&self, a: T, b: T) -> Result<T> {
        check_density(a)?;
        check_density(b)?;
        // sqrt(p'(s)/s) = e^{s/2}
        Ok(T::two() * ((b * T::half()).exp() - (a * T::half()).exp()))
    }
}

/// Convenience wrapper: `p(rho)` for the default law in `f64`.
pub fn p_eval(rho: f64) -> Result<f64> {
    PressureLaw::<f64>::p(&ExpLaw, rho)
}

/// Convenience wrapper: `p'(rho)` for the default law in `f64`.
pub fn p_prime_eval(rho: f64) -> Result<f64> {
    PressureLaw::<f64>::p_prime(&ExpLaw, rho)
}

/// Convenience wrapper: `ln p(rho)` for the default law in `f64`.
pub fn log_p(rho: f64) -> Result<f64> {
    PressureLaw::<f64>::log_p(&ExpLaw, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_simpson;
    use std::f64::consts::E;

    #[test]
    fn p_examples() {
        assert_eq!(p_eval(0.0).unwrap(), 0.0);
        assert!((p_eval(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((p_eval(2.0).unwrap() - (E * E + 1.0)).abs() < 1e-14);
    }

    #[test]
    fn p_against_quadrature_oracle() {
        for &rho in &[1.0, 2.0, 0.3, 5.0] {
            let q = adaptive_simpson(|s: f64| s * s.exp(), 0.0, rho, 1e-13);
            assert!((p_eval(rho).unwrap() - q).abs() <= 1e-10 * (1.0 + q.abs()));
        }
    }

    #[test]
    fn series_branch_meets_closed_form() {
        let below = p_eval(0.5 - 1e-12).unwrap();
        let above = p_eval(0.5).unwrap();
        assert!((below - above).abs() < 1e-12);
        // leading behaviour rho^2/2
        let tiny = p_eval(1e-8).unwrap();
        assert!((tiny / 0.5e-16 - 1.0).abs() < 1e-7);
    }

    #[test]
    fn p_prime_examples_and_finite_difference() {
        assert_eq!(p_prime_eval(0.0).unwrap(), 0.0);
        for &(rho, expected) in &[(1.0, E), (2.0, 2.0 * E * E)] {
            let h = 1e-6;
            let fd = (p_eval(rho + h).unwrap() - p_eval(rho - h).unwrap()) / (2.0 * h);
            assert!((p_prime_eval(rho).unwrap() - expected).abs() < 1e-13);
            assert!((fd - expected).abs() < 1e-8 * expected.max(1.0) * 10.0);
        }
    }

    #[test]
    fn negative_density_is_domain_error() {
        assert!(matches!(p_eval(-0.1), Err(Error::Domain { .. })));
        assert!(matches!(p_prime_eval(-1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn overflow_guard() {
        assert!(p_eval(700.0).unwrap().is_finite());
        assert!(matches!(p_eval(700.5), Err(Error::OverflowAtVanishingEpsilon { .. })));
    }

    #[test]
    fn log_p_continuous_across_overflow_bound() {
        let inside = log_p(700.0).unwrap();
        let outside = log_p(700.0 + 1e-9).unwrap();
        assert!((inside - outside).abs() < 1e-8);
        assert!((log_p(2.0).unwrap() - (E * E + 1.0).ln()).abs() < 1e-14);
        assert!(log_p(5000.0).unwrap().is_finite());
    }

    #[test]
    fn epsilon_validation() {
        assert!(Epsilon::new(0.0).is_err());
        assert!(Epsilon::new(-1e-3).is_err());
        assert!(Epsilon::new(f64::INFINITY).is_err());
        let list: Vec<_> = [0.1, 0.01, 0.001].iter().map(|&e| Epsilon::new(e).unwrap()).collect();
        assert!(strictly_decreasing(&list));
        assert!(!strictly_decreasing(&[list[1], list[0]]));
    }

    #[test]
    fn generic_rarefaction_integral_matches_closed_form() {
        struct Plain;
        impl PressureLaw<f64> for Plain {
            fn name(&self) -> &str {
                "plain"
            }
            fn p(&self, rho: f64) -> Result<f64> {
                ExpLaw.p(rho)
            }
            fn p_prime(&self, rho: f64) -> Result<f64> {
                ExpLaw.p_prime(rho)
            }
        }
        for &(a, b) in &[(0.0, 1.0), (0.5, 3.0), (0.0, 10.0), (0.0, 0.0), (2.0, 0.0)] {
            let generic = Plain.rarefaction_integral(a, b).unwrap();
            let closed = PressureLaw::<f64>::rarefaction_integral(&ExpLaw, a, b).unwrap();
            assert!((generic - closed).abs() < 1e-8, "{a} {b}");
        }
    }

    #[test]
    fn single_precision_law() {
        let v: f32 = ExpLaw.p(2.0f32).unwrap();
        assert!((v - (E * E + 1.0) as f32).abs() < 1e-5);
        assert!(matches!(
            PressureLaw::<f32>::p(&ExpLaw, 80.0),
            Err(Error::OverflowAtVanishingEpsilon { .. })
        ));
    }
}
