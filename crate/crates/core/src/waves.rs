//! Elementary waves of the perturbed system
//!
//! ```text
//! u_t + (u^2/2 + eps p(rho))_x = 0
//! rho_t + (rho u)_x = 0
//! ```
//!
//! Characteristic speeds are `u -/+ sqrt(eps p'(rho) rho)`. Both fields are
//! genuinely nonlinear. Shock branches are found by bisection on the Hugoniot
//! residual, which changes sign exactly once on `[rho_anchor, inf)`.

use crate::error::{Error, Result};
use crate::pressure::{check_density, Epsilon, ExpLaw, PressureLaw};
use crate::roots::{bisect, expand_upper};
use crate::scalar::Real;

/// Velocity and density of a constant state.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State<T> {
    pub u: T,
    pub rho: T,
}

impl<T: Real> State<T> {
    pub fn new(u: T, rho: T) -> Self {
        Self { u, rho }
    }

    /// Vacuum state carrying velocity `u`.
    pub fn vacuum(u: T) -> Self {
        Self { u, rho: T::zero() }
    }
}

/// Characteristic family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    One,
    Two,
}

impl Family {
    pub fn index(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two => 2,
        }
    }
}

/// A discontinuity between two constant states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockJump<T> {
    pub left: State<T>,
    pub right: State<T>,
    pub speed: T,
    pub family: Family,
}

/// Shock speed from the mass equation, `[rho u] / [rho]`.
pub fn shock_speed<T: Real>(left: State<T>, right: State<T>) -> Result<T> {
    if left.rho == right.rho {
        return Err(Error::DegenerateJump {
            rho: left.rho.to_f64_lossy(),
        });
    }
    Ok((right.rho * right.u - left.rho * left.u) / (right.rho - left.rho))
}

/// The perturbed system at a fixed `eps` with a given pressure law.
#[derive(Debug, Clone, Copy)]
pub struct Model<T, P = ExpLaw> {
    law: P,
    eps: Epsilon<T>,
}

impl<T: Real> Model<T, ExpLaw> {
    /// Model with the default exponential pressure law.
    pub fn exp(eps: Epsilon<T>) -> Self {
        Self { law: ExpLaw, eps }
    }
}

impl<T: Real, P: PressureLaw<T>> Model<T, P> {
    pub fn new(law: P, eps: Epsilon<T>) -> Self {
        Self { law, eps }
    }

    pub fn law(&self) -> &P {
        &self.law
    }

    pub fn eps(&self) -> Epsilon<T> {
        self.eps
    }

    /// Scaled pressure `eps p(rho)`.
    pub fn eps_p(&self, rho: T) -> Result<T> {
        if self.eps.value() == T::zero() {
            check_density(rho)?;
            return Ok(T::zero());
        }
        Ok(self.eps.value() * self.law.p(rho)?)
    }

    /// Flux `(u^2/2 + eps p(rho), rho u)`.
    pub fn flux(&self, s: State<T>) -> Result<(T, T)> {
        Ok((s.u * s.u * T::half() + self.eps_p(s.rho)?, s.rho * s.u))
    }

    fn char_offset(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        if rho == T::zero() || self.eps.value() == T::zero() {
            return Ok(T::zero());
        }
        Ok(self.eps.sqrt() * self.law.sound_speed(rho)?)
    }

    fn positive(rho: T) -> Result<()> {
        if rho > T::zero() {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "density must be positive",
                value: rho.to_f64_lossy(),
            })
        }
    }

    pub fn lambda1(&self, u: T, rho: T) -> Result<T> {
        Self::positive(rho)?;
        Ok(u - self.char_offset(rho)?)
    }

    pub fn lambda2(&self, u: T, rho: T) -> Result<T> {
        Self::positive(rho)?;
        Ok(u + self.char_offset(rho)?)
    }

    /// Characteristic speed of `family`; at vacuum both speeds equal `u`.
    pub fn lambda(&self, family: Family, s: State<T>) -> Result<T> {
        let c = self.char_offset(s.rho)?;
        Ok(match family {
            Family::One => s.u - c,
            Family::Two => s.u + c,
        })
    }

    /// `(u - ubar)^2 (rho + rhobar)/2 - eps (rho - rhobar)(p(rho) - p(rhobar))`,
    /// zero exactly on the Hugoniot locus of `left`.
    pub fn hugoniot_residual(&self, left: State<T>, cand: State<T>) -> Result<T> {
        Self::positive(left.rho)?;
        Self::positive(cand.rho)?;
        let du = cand.u - left.u;
        let kinetic = du * du * (cand.rho + left.rho) * T::half();
        if self.eps.value() == T::zero() || cand.rho == left.rho {
            return Ok(kinetic);
        }
        let dp = self.eps_p(cand.rho)? - self.eps_p(left.rho)?;
        Ok(kinetic - (cand.rho - left.rho) * dp)
    }

    /// The density `rho >= anchor.rho` on the Hugoniot locus of `anchor` at
    /// velocity distance `|du|`.
    pub fn hugoniot_branch(&self, anchor: State<T>, du: T) -> Result<T> {
        Self::positive(anchor.rho)?;
        if du == T::zero() {
            return Ok(anchor.rho);
        }
        let u = anchor.u + du.abs();
        let g = |rho: T| -> Result<T> { Ok(-self.hugoniot_residual(anchor, State::new(u, rho))?) };
        let overflow = || Error::OverflowAtVanishingEpsilon {
            rho: T::rho_overflow().to_f64_lossy(),
            bound: T::rho_overflow().to_f64_lossy(),
        };
        if anchor.rho >= T::rho_overflow() {
            return Err(overflow());
        }
        let (lo, hi) = expand_upper(g, anchor.rho, T::rho_overflow())?.ok_or_else(overflow)?;
        bisect(g, lo, hi)
    }

    /// Velocity distance `|u - anchor.u|` to the Hugoniot locus of `anchor` at
    /// density `rho`: `sqrt(2 eps (rho - rhobar)(p(rho) - p(rhobar)) / (rho + rhobar))`.
    pub fn hugoniot_velocity_gap(&self, anchor: State<T>, rho: T) -> Result<T> {
        Self::positive(anchor.rho)?;
        Self::positive(rho)?;
        if rho == anchor.rho || self.eps.value() == T::zero() {
            return Ok(T::zero());
        }
        let dp = self.eps_p(rho)? - self.eps_p(anchor.rho)?;
        Ok((T::two() * (rho - anchor.rho) * dp / (rho + anchor.rho)).sqrt())
    }

    /// Density behind an admissible 1-shock from `left` at velocity `u <= left.u`.
    /// Decreasing in `u`.
    pub fn shock1_rho_of_u(&self, left: State<T>, u: T) -> Result<T> {
        if u > left.u {
            return Err(Error::Domain {
                what: "1-shock requires u <= u_left",
                value: u.to_f64_lossy(),
            });
        }
        self.hugoniot_branch(left, left.u - u)
    }

    /// Density ahead of an admissible 2-shock into `right` at velocity
    /// `u >= right.u`. Increasing in `u`.
    pub fn shock2_rho_of_u(&self, right: State<T>, u: T) -> Result<T> {
        if u < right.u {
            return Err(Error::Domain {
                what: "2-shock requires u >= u_right",
                value: u.to_f64_lossy(),
            });
        }
        self.hugoniot_branch(right, u - right.u)
    }

    /// Shock speed from the velocity equation,
    /// `(u_l + u_r)/2 + eps (p_r - p_l)/(u_r - u_l)`.
    pub fn shock_speed_velocity_form(&self, left: State<T>, right: State<T>) -> Result<T> {
        if left.u == right.u {
            return Err(Error::DegenerateJump {
                rho: left.rho.to_f64_lossy(),
            });
        }
        let dp = self.eps_p(right.rho)? - self.eps_p(left.rho)?;
        Ok((left.u + right.u) * T::half() + dp / (right.u - left.u))
    }

    /// Builds a jump, taking the speed from the mass equation when the
    /// densities differ and from the velocity equation otherwise.
    pub fn shock_jump(&self, left: State<T>, right: State<T>, family: Family) -> Result<ShockJump<T>> {
        let speed = match shock_speed(left, right) {
            Ok(s) => s,
            Err(Error::DegenerateJump { .. }) => self.shock_speed_velocity_form(left, right)?,
            Err(e) => return Err(e),
        };
        Ok(ShockJump {
            left,
            right,
            speed,
            family,
        })
    }

    /// Residuals `(mass, velocity)` of the two Rankine-Hugoniot equations.
    pub fn rh_residuals(&self, jump: &ShockJump<T>) -> Result<(T, T)> {
        let (l, r, s) = (jump.left, jump.right, jump.speed);
        let mass = s * (r.rho - l.rho) - (r.rho * r.u - l.rho * l.u);
        let vel = s * (r.u - l.u) - ((r.u * r.u - l.u * l.u) * T::half() + self.eps_p(r.rho)? - self.eps_p(l.rho)?);
        Ok((mass, vel))
    }

    /// Strict Lax inequalities for the declared family.
    pub fn lax_admissible(&self, jump: &ShockJump<T>) -> bool {
        let check = || -> Result<bool> {
            let (l, r, s) = (jump.left, jump.right, jump.speed);
            Ok(match jump.family {
                Family::One => {
                    s < self.lambda1(l.u, l.rho)? && self.lambda1(r.u, r.rho)? < s && s < self.lambda2(r.u, r.rho)?
                }
                Family::Two => {
                    self.lambda2(r.u, r.rho)? < s && s < self.lambda2(l.u, l.rho)? && self.lambda1(l.u, l.rho)? < s
                }
            })
        };
        check().unwrap_or(false)
    }

    /// Velocity on the rarefaction curve of `family` through `anchor`.
    /// Family 1 is defined for `0 <= rho <= anchor.rho`, family 2 for
    /// `rho >= anchor.rho`.
    pub fn rarefaction_u_of_rho(&self, anchor: State<T>, family: Family, rho: T) -> Result<T> {
        check_density(rho)?;
        let in_branch = match family {
            Family::One => rho <= anchor.rho,
            Family::Two => rho >= anchor.rho,
        };
        if !in_branch {
            return Err(Error::Domain {
                what: "density outside the rarefaction branch",
                value: rho.to_f64_lossy(),
            });
        }
        if self.eps.value() == T::zero() {
            return Ok(anchor.u);
        }
        let sq = self.eps.sqrt();
        Ok(match family {
            Family::One => anchor.u + sq * self.law.rarefaction_integral(rho, anchor.rho)?,
            Family::Two => anchor.u + sq * self.law.rarefaction_integral(anchor.rho, rho)?,
        })
    }

    pub fn rarefaction1_u_of_rho(&self, anchor: State<T>, rho: T) -> Result<T> {
        self.rarefaction_u_of_rho(anchor, Family::One, rho)
    }

    pub fn rarefaction2_u_of_rho(&self, anchor: State<T>, rho: T) -> Result<T> {
        self.rarefaction_u_of_rho(anchor, Family::Two, rho)
    }

    /// Point on the rarefaction curve of `family` through `anchor` at density `rho`.
    pub fn rarefaction_state(&self, anchor: State<T>, family: Family, rho: T) -> Result<State<T>> {
        Ok(State::new(self.rarefaction_u_of_rho(anchor, family, rho)?, rho))
    }

    /// State inside a centred rarefaction fan that starts at `anchor` (its
    /// left edge) and ends at density `end_rho`, at similarity speed `xi`.
    pub fn rarefaction_fan_state(&self, anchor: State<T>, family: Family, end_rho: T, xi: T) -> Result<State<T>> {
        let end = self.rarefaction_state(anchor, family, end_rho)?;
        let head = self.lambda(family, anchor)?;
        let tail = self.lambda(family, end)?;
        if xi == head {
            return Ok(anchor);
        }
        if xi == tail {
            return Ok(end);
        }
        if xi < head.min(tail) || xi > head.max(tail) {
            return Err(Error::Domain {
                what: "similarity speed outside the rarefaction fan",
                value: xi.to_f64_lossy(),
            });
        }
        let rho = bisect(
            |rho| Ok(self.lambda(family, self.rarefaction_state(anchor, family, rho)?)? - xi),
            anchor.rho,
            end_rho,
        )?;
        self.rarefaction_state(anchor, family, rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_simpson;
    use std::f64::consts::E;

    fn model(eps: f64) -> Model<f64> {
        Model::exp(Epsilon::new(eps).unwrap())
    }

    /// Independent oracle: plain bisection on the Hugoniot equation written out
    /// from the closed-form pressure.
    fn oracle_branch(rho_bar: f64, du: f64, eps: f64) -> f64 {
        let p = |r: f64| (r - 1.0) * r.exp() + 1.0;
        let g = |r: f64| eps * (r - rho_bar) * (p(r) - p(rho_bar)) - du * du * (r + rho_bar) / 2.0;
        let (mut lo, mut hi) = (rho_bar, 32.0f64.max(rho_bar + 1.0));
        while g(hi) < 0.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if g(m) < 0.0 {
                lo = m
            } else {
                hi = m
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn lambda_examples() {
        let m = model(1.0);
        assert!((m.lambda1(0.0, 1.0).unwrap() + E.sqrt()).abs() < 1e-15);
        assert!((m.lambda2(0.0, 1.0).unwrap() - E.sqrt()).abs() < 1e-15);
        let limit = Model::<f64>::exp(Epsilon::zero());
        assert_eq!(limit.lambda1(5.0, 1.0).unwrap(), 5.0);
        assert!(m.lambda1(0.0, 0.0).is_err());
        assert_eq!(m.lambda(Family::One, State::vacuum(0.3)).unwrap(), 0.3);
    }

    #[test]
    fn hugoniot_residual_examples() {
        let m = model(0.01);
        let left = State::new(1.0, 1.0);
        assert_eq!(m.hugoniot_residual(left, left).unwrap(), 0.0);
        let rho = oracle_branch(1.0, 1.0, 0.01);
        assert!((rho - 3.553_173_357_627_150_6).abs() < 1e-12);
        assert!(m.hugoniot_residual(left, State::new(0.0, rho)).unwrap().abs() < 1e-10);
        let limit = Model::<f64>::exp(Epsilon::zero());
        assert_eq!(limit.hugoniot_residual(left, State::new(0.0, 2.0)).unwrap(), 1.5);
        assert!(m.hugoniot_residual(left, State::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn shock1_examples() {
        let left = State::new(1.0, 1.0);
        assert_eq!(model(0.01).shock1_rho_of_u(left, 1.0).unwrap(), 1.0);
        let r = model(0.01).shock1_rho_of_u(left, 0.0).unwrap();
        // mpmath reference, 40 digits: 3.5531733576271506018...
        assert!((r - 3.553_173_357_627_150_6).abs() < 1e-13);
        let r_small = model(0.001).shock1_rho_of_u(left, 0.0).unwrap();
        assert!((r_small - oracle_branch(1.0, 1.0, 0.001)).abs() < 1e-12);
        assert!(r_small > r);
        assert!(model(0.01).shock1_rho_of_u(left, 1.5).is_err());
    }

    #[test]
    fn shock2_examples() {
        assert_eq!(model(0.5).shock2_rho_of_u(State::new(0.0, 1.0), 0.0).unwrap(), 1.0);
        let mirrored = model(0.01).shock2_rho_of_u(State::new(-1.0, 1.0), 0.0).unwrap();
        let direct = model(0.01).shock1_rho_of_u(State::new(1.0, 1.0), 0.0).unwrap();
        assert_eq!(mirrored, direct);
        let right = State::new(0.0, 1.0);
        let r = model(0.01).shock2_rho_of_u(right, 1.0).unwrap();
        assert!((r - oracle_branch(1.0, 1.0, 0.01)).abs() < 1e-12);
        assert!(model(0.01).hugoniot_residual(right, State::new(1.0, r)).unwrap().abs() < 1e-10);
    }

    #[test]
    fn shock_speed_examples() {
        assert_eq!(shock_speed(State::new(0.0, 1.0), State::new(0.0, 2.0)).unwrap(), 0.0);
        assert_eq!(shock_speed(State::new(1.0, 1.0), State::new(0.0, 3.0)).unwrap(), -0.5);
        assert!(matches!(
            shock_speed(State::new(1.0, 2.0), State::new(0.0, 2.0)),
            Err(Error::DegenerateJump { .. })
        ));
        let m = model(0.01);
        let left = State::new(1.0, 1.0);
        let right = State::new(0.0, m.shock1_rho_of_u(left, 0.0).unwrap());
        let mass = shock_speed(left, right).unwrap();
        let vel = m.shock_speed_velocity_form(left, right).unwrap();
        assert!((mass - vel).abs() < 1e-8);
    }

    #[test]
    fn overflow_is_signalled() {
        let m = model(1e-320);
        assert!(matches!(
            m.shock1_rho_of_u(State::new(1.0, 1.0), -1.0),
            Err(Error::OverflowAtVanishingEpsilon { .. })
        ));
    }

    #[test]
    fn lax_examples() {
        let m = model(0.01);
        let left = State::new(1.0, 1.0);
        let right = State::new(0.2, m.shock1_rho_of_u(left, 0.2).unwrap());
        let jump = m.shock_jump(left, right, Family::One).unwrap();
        assert!(m.lax_admissible(&jump));
        let reversed = ShockJump {
            left: right,
            right: left,
            ..jump
        };
        assert!(!m.lax_admissible(&reversed));
        let zero = ShockJump {
            left,
            right: left,
            speed: m.lambda1(1.0, 1.0).unwrap(),
            family: Family::One,
        };
        assert!(!m.lax_admissible(&zero));

        let r2 = State::new(-0.5, 2.0);
        let l2 = State::new(0.3, m.shock2_rho_of_u(r2, 0.3).unwrap());
        let jump2 = m.shock_jump(l2, r2, Family::Two).unwrap();
        assert!(m.lax_admissible(&jump2));
        let (mass, vel) = m.rh_residuals(&jump2).unwrap();
        assert!(mass.abs() < 1e-12 && vel.abs() < 1e-10);
    }

    #[test]
    fn rarefaction_examples() {
        let anchor = State::new(0.0, 1.0);
        assert_eq!(model(0.3).rarefaction1_u_of_rho(anchor, 1.0).unwrap(), 0.0);
        let u = model(1.0).rarefaction1_u_of_rho(anchor, 0.0).unwrap();
        let quad = adaptive_simpson(|s: f64| (0.5 * s).exp(), 0.0, 1.0, 1e-13);
        assert!((u - quad).abs() < 1e-10);
        assert!((u - 1.297_442_541_400_256_3).abs() < 1e-12);
        let u2 = model(0.25).rarefaction2_u_of_rho(anchor, 2.0).unwrap();
        let quad2 = 0.5 * adaptive_simpson(|s: f64| (0.5 * s).exp(), 1.0, 2.0, 1e-13);
        assert!((u2 - quad2).abs() < 1e-10);
        assert!((u2 - (E - E.sqrt())).abs() < 1e-14);
        assert!(model(1.0).rarefaction1_u_of_rho(anchor, 2.0).is_err());
        assert!(model(1.0).rarefaction2_u_of_rho(anchor, 0.5).is_err());
    }

    #[test]
    fn fan_state_examples() {
        let m = model(0.1);
        let anchor = State::new(0.0, 2.0);
        let head = m.lambda(Family::One, anchor).unwrap();
        assert_eq!(m.rarefaction_fan_state(anchor, Family::One, 0.5, head).unwrap(), anchor);
        let end = m.rarefaction_state(anchor, Family::One, 0.5).unwrap();
        let tail = m.lambda(Family::One, end).unwrap();
        assert!(head < tail);
        let mut last_rho = f64::INFINITY;
        for k in 1..20 {
            let xi = head + (tail - head) * k as f64 / 20.0;
            let s = m.rarefaction_fan_state(anchor, Family::One, 0.5, xi).unwrap();
            assert!((m.lambda(Family::One, s).unwrap() - xi).abs() <= 1e-10);
            assert!(s.rho < last_rho);
            last_rho = s.rho;
        }
        assert!(m.rarefaction_fan_state(anchor, Family::One, 0.5, tail + 0.1).is_err());
    }

    #[test]
    fn fan_state_to_vacuum_edge() {
        let m = model(0.05);
        let anchor = State::new(-1.0, 1.0);
        let end = m.rarefaction_state(anchor, Family::One, 0.0).unwrap();
        let tail = m.lambda(Family::One, end).unwrap();
        assert_eq!(tail, end.u);
        let s = m.rarefaction_fan_state(anchor, Family::One, 0.0, tail - 1e-9).unwrap();
        assert!(s.rho < 1e-6);
    }
}
