//! Entropy pair `η = u²/2 + eps e^rho`, `q = u³/3 + eps rho u e^rho` for the
//! default pressure law, shock entropy production and its limit.
//!
//! `eps e^rho` is always evaluated as `exp(ln eps + rho)`, which stays finite
//! at the large intermediate densities of small `eps`.

use crate::error::{Error, Result};
use crate::limit::epsilon_sweep;
use crate::pressure::Epsilon;
use crate::scalar::Real;
use crate::solver::RiemannData;
use crate::waves::{Family, ShockJump, State};

/// `eps e^rho`, zero when `eps = 0`.
pub fn eps_exp<T: Real>(rho: T, eps: Epsilon<T>) -> Result<T> {
    if rho < T::zero() {
        return Err(Error::Domain {
            what: "density must be non-negative",
            value: rho.to_f64_lossy(),
        });
    }
    if eps.value() == T::zero() {
        return Ok(T::zero());
    }
    let v = (eps.ln() + rho).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::OverflowAtVanishingEpsilon {
            rho: rho.to_f64_lossy(),
            bound: T::rho_overflow().to_f64_lossy(),
        })
    }
}

pub fn eta<T: Real>(u: T, rho: T, eps: Epsilon<T>) -> Result<T> {
    Ok(u * u * T::half() + eps_exp(rho, eps)?)
}

pub fn q_flux<T: Real>(u: T, rho: T, eps: Epsilon<T>) -> Result<T> {
    Ok(u * u * u / T::c(3.0) + rho * u * eps_exp(rho, eps)?)
}

/// Largest component of `Dη·Df - Dq` at `(u, rho)`, all derivatives by
/// central differences with step `h`. `f = (u²/2 + eps p(rho), rho u)`.
pub fn compatibility_residual<T: Real>(u: T, rho: T, eps: Epsilon<T>, h: T) -> Result<T> {
    let p = |r: T| -> Result<T> {
        // p(rho) = (rho - 1) e^rho + 1
        Ok((r - T::one()) * r.exp() + T::one())
    };
    let two_h = T::two() * h;
    let d = |f: &dyn Fn(T, T) -> Result<T>| -> Result<(T, T)> {
        Ok((
            (f(u + h, rho)? - f(u - h, rho)?) / two_h,
            (f(u, rho + h)? - f(u, rho - h)?) / two_h,
        ))
    };
    let (eta_u, eta_rho) = d(&|a, b| eta(a, b, eps))?;
    let (q_u, q_rho) = d(&|a, b| q_flux(a, b, eps))?;
    let (f1_u, f1_rho) = d(&|a, b| Ok(a * a * T::half() + eps.value() * p(b)?))?;
    let (f2_u, f2_rho) = d(&|a, b| Ok(a * b))?;
    let r_u = eta_u * f1_u + eta_rho * f2_u - q_u;
    let r_rho = eta_u * f1_rho + eta_rho * f2_rho - q_rho;
    Ok(r_u.abs().max(r_rho.abs()))
}

/// Eigenvalues `(min, max)` of the finite-difference Hessian of `η`.
pub fn hessian_eigenvalues<T: Real>(u: T, rho: T, eps: Epsilon<T>, h: T) -> Result<(T, T)> {
    let f = |a: T, b: T| eta(a, b, eps);
    let f0 = f(u, rho)?;
    let h2 = h * h;
    let huu = (f(u + h, rho)? - T::two() * f0 + f(u - h, rho)?) / h2;
    let hrr = (f(u, rho + h)? - T::two() * f0 + f(u, rho - h)?) / h2;
    let hur = (f(u + h, rho + h)? - f(u + h, rho - h)? - f(u - h, rho + h)? + f(u - h, rho - h)?) / (T::c(4.0) * h2);
    let mean = (huu + hrr) * T::half();
    let rad = (((huu - hrr) * T::half()).powi(2) + hur * hur).sqrt();
    Ok((mean - rad, mean + rad))
}

/// `-s (η_r - η_l) + (q_r - q_l)`; non-positive for admissible shocks.
pub fn entropy_production_shock<T: Real>(jump: &ShockJump<T>, eps: Epsilon<T>) -> Result<T> {
    let (l, r) = (jump.left, jump.right);
    let d_eta = eta(r.u, r.rho, eps)? - eta(l.u, l.rho, eps)?;
    let d_q = q_flux(r.u, r.rho, eps)? - q_flux(l.u, l.rho, eps)?;
    Ok(-jump.speed * d_eta + d_q)
}

/// Total production rate of the delta-shock limit,
/// `(u_l + u_r)/4 (u_l² - u_r²) + (u_r³ - u_l³)/3 = -(u_l - u_r)³/12`.
pub fn entropy_production_total_limit<T: Real>(data: &RiemannData<T>) -> T {
    let (ul, ur) = (data.left.u, data.right.u);
    (ul + ur) / T::c(4.0) * (ul * ul - ur * ur) + (ur * ur * ur - ul * ul * ul) / T::c(3.0)
}

/// One row of the entropy convergence table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyRecord<T> {
    pub eps: T,
    pub production_1: T,
    pub production_2: T,
    pub total: T,
    /// `eps e^{rho*} (s2 - s1)`
    pub cross_term: T,
    pub limit: T,
    pub total_error: T,
}

pub fn entropy_limit_sweep<T: Real>(data: &RiemannData<T>, eps_list: &[Epsilon<T>]) -> Result<Vec<EntropyRecord<T>>> {
    let limit = entropy_production_total_limit(data);
    let records = epsilon_sweep(data, eps_list)?;
    records
        .iter()
        .zip(eps_list)
        .map(|(rec, &eps)| {
            let star = State::new(rec.u_star, rec.rho_star);
            let j1 = ShockJump {
                left: data.left,
                right: star,
                speed: rec.s1,
                family: Family::One,
            };
            let j2 = ShockJump {
                left: star,
                right: data.right,
                speed: rec.s2,
                family: Family::Two,
            };
            let p1 = entropy_production_shock(&j1, eps)?;
            let p2 = entropy_production_shock(&j2, eps)?;
            let total = p1 + p2;
            Ok(EntropyRecord {
                eps: eps.value(),
                production_1: p1,
                production_2: p2,
                total,
                cross_term: eps_exp(rec.rho_star, eps)? * (rec.s2 - rec.s1),
                limit,
                total_error: (total - limit).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waves::Model;

    fn e(v: f64) -> Epsilon<f64> {
        Epsilon::new(v).unwrap()
    }

    #[test]
    fn pair_examples() {
        assert_eq!(eta(0.0, 0.0, e(1.0)).unwrap(), 1.0);
        assert_eq!(q_flux(1.0, 0.0, Epsilon::zero()).unwrap(), 1.0 / 3.0);
        assert!(compatibility_residual(0.7, 1.3, e(0.1), 1e-5).unwrap() <= 1e-8);
    }

    #[test]
    fn eps_exp_uses_log_domain() {
        let v = eps_exp(700.0, e(1e-300)).unwrap();
        assert!((v / (700.0f64 - 300.0 * 10f64.ln()).exp() - 1.0).abs() < 1e-12);
        assert!(eps_exp(800.0, e(1.0)).is_err());
    }

    #[test]
    fn hessian_positive_on_grid() {
        for eps in [1.0, 0.1, 0.01] {
            for i in 0..=12 {
                for j in 0..=10 {
                    let u = -3.0 + 0.5 * i as f64;
                    let rho = 0.1 + 0.49 * j as f64;
                    let (lo, _) = hessian_eigenvalues(u, rho, e(eps), 1e-4).unwrap();
                    assert!(lo > 0.0, "u={u} rho={rho} eps={eps}");
                }
            }
        }
    }

    #[test]
    fn shock_production_signs() {
        let m = Model::exp(e(0.01));
        let d = RiemannData::from_values(1.0, 1.0, -1.0, 1.0).unwrap();
        let fan = m.solve(&d).unwrap();
        for j in fan.shocks() {
            assert!(entropy_production_shock(j, e(0.01)).unwrap() < 0.0);
            let reversed = ShockJump {
                left: j.right,
                right: j.left,
                ..*j
            };
            assert!(entropy_production_shock(&reversed, e(0.01)).unwrap() > 0.0);
        }
        let s = State::new(0.3, 1.2);
        let zero = ShockJump {
            left: s,
            right: s,
            speed: 0.7,
            family: Family::One,
        };
        assert_eq!(entropy_production_shock(&zero, e(0.01)).unwrap(), 0.0);
    }

    #[test]
    fn total_limit_examples() {
        let f = |ul: f64, ur: f64| entropy_production_total_limit(&RiemannData::from_values(ul, 1.0, ur, 1.0).unwrap());
        assert!((f(1.0, -1.0) + 2.0 / 3.0).abs() < 1e-15);
        assert!((f(2.0, 0.0) + 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(f(0.4, 0.4), 0.0);
        let (ul, ur) = (1.7f64, -0.3f64);
        assert!((f(ul, ur) + (ul - ur).powi(3) / 12.0).abs() < 1e-14);
    }

    #[test]
    fn sweep_total_converges() {
        let d = RiemannData::from_values(1.0, 1.0, -1.0, 1.0).unwrap();
        let eps: Vec<_> = [1e-1, 1e-4, 1e-20, 1e-300].iter().map(|&v| e(v)).collect();
        let recs = entropy_limit_sweep(&d, &eps).unwrap();
        for w in recs.windows(2) {
            assert!(w[1].cross_term.abs() < w[0].cross_term.abs());
            assert!(w[1].total_error < w[0].total_error);
        }
        let last = recs.last().unwrap();
        assert!(last.total_error < 0.01 * (2.0 / 3.0));
        assert!(last.production_1 <= 0.0 && last.production_2 <= 0.0);
    }
}
