//! Vanishing-pressure limits: predicted delta-shock, contact and vacuum
//! solutions, epsilon sweeps of the two-shock intermediate state, and
//! distributional pairings that measure convergence to the limit.

use crate::error::{Error, Result};
use crate::pressure::{strictly_decreasing, Epsilon, ExpLaw, PressureLaw};
use crate::roots::{bisect, expand_upper};
use crate::scalar::Real;
use crate::solver::RiemannData;
use crate::waves::{Family, Model, State};
use crate::weak::{integrate_along_line, integrate_over_support, Bump, PointMass, SelfSimilar, WeakQuadrature};

/// Point mass `w0 t δ_{x = speed t}` moving with velocity `carried_u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaShockDescriptor<T> {
    pub speed: T,
    pub weight_coefficient: T,
    pub carried_u: T,
}

/// The `eps -> 0` limit of the solution of a Riemann problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitSolution<T> {
    /// `u_l > u_r`: states separated by a delta shock.
    DeltaShock {
        left: State<T>,
        right: State<T>,
        delta: DeltaShockDescriptor<T>,
    },
    /// `u_l = u_r`: a density jump travelling with the common velocity.
    Contact { left: State<T>, right: State<T>, speed: T },
    /// `u_l < u_r`: `u = x/t`, `rho = 0` between `u_l t` and `u_r t`.
    Vacuum { left: State<T>, right: State<T> },
}

impl<T: Real> LimitSolution<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            LimitSolution::DeltaShock { .. } => "delta",
            LimitSolution::Contact { .. } => "contact",
            LimitSolution::Vacuum { .. } => "vacuum",
        }
    }

    pub fn delta(&self) -> Option<DeltaShockDescriptor<T>> {
        match *self {
            LimitSolution::DeltaShock { delta, .. } => Some(delta),
            _ => None,
        }
    }

    pub fn left(&self) -> State<T> {
        match *self {
            LimitSolution::DeltaShock { left, .. }
            | LimitSolution::Contact { left, .. }
            | LimitSolution::Vacuum { left, .. } => left,
        }
    }

    pub fn right(&self) -> State<T> {
        match *self {
            LimitSolution::DeltaShock { right, .. }
            | LimitSolution::Contact { right, .. }
            | LimitSolution::Vacuum { right, .. } => right,
        }
    }

    /// Regular part of the solution at `xi = x/t`; right-continuous at the
    /// discontinuity.
    pub fn state_xi(&self, xi: T) -> State<T> {
        match *self {
            LimitSolution::DeltaShock { left, right, delta } => {
                if xi < delta.speed {
                    left
                } else {
                    right
                }
            }
            LimitSolution::Contact { left, right, speed } => {
                if xi < speed {
                    left
                } else {
                    right
                }
            }
            LimitSolution::Vacuum { left, right } => {
                if xi < left.u {
                    left
                } else if xi < right.u {
                    State::vacuum(xi)
                } else {
                    right
                }
            }
        }
    }

    /// Largest absolute difference between two limit descriptors, over the
    /// states, speeds and delta parameters. Infinite if the kinds differ.
    pub fn max_difference(&self, other: &Self) -> T {
        if self.kind() != other.kind() {
            return T::infinity();
        }
        let d = |a: T, b: T| (a - b).abs();
        let states = [
            d(self.left().u, other.left().u),
            d(self.left().rho, other.left().rho),
            d(self.right().u, other.right().u),
            d(self.right().rho, other.right().rho),
        ];
        let extra = match (self, other) {
            (LimitSolution::DeltaShock { delta: a, .. }, LimitSolution::DeltaShock { delta: b, .. }) => [
                d(a.speed, b.speed),
                d(a.weight_coefficient, b.weight_coefficient),
                d(a.carried_u, b.carried_u),
            ],
            (LimitSolution::Contact { speed: a, .. }, LimitSolution::Contact { speed: b, .. }) => {
                [d(*a, *b), T::zero(), T::zero()]
            }
            _ => [T::zero(); 3],
        };
        states.into_iter().chain(extra).fold(T::zero(), |m, v| m.max(v))
    }
}

/// The limit solves the pressureless system, so its flux has no pressure.
impl<T: Real> SelfSimilar<T> for LimitSolution<T> {
    fn breakpoints(&self) -> Vec<T> {
        match *self {
            LimitSolution::DeltaShock { delta, .. } => vec![delta.speed],
            LimitSolution::Contact { speed, .. } => vec![speed],
            LimitSolution::Vacuum { left, right } => vec![left.u, right.u],
        }
    }

    fn state_at(&self, xi: T) -> Result<State<T>> {
        Ok(self.state_xi(xi))
    }

    fn flux(&self, s: State<T>) -> Result<(T, T)> {
        Ok((s.u * s.u * T::half(), s.rho * s.u))
    }

    fn initial(&self, x: T) -> State<T> {
        if x < T::zero() {
            self.left()
        } else {
            self.right()
        }
    }

    fn point_masses(&self) -> Vec<PointMass<T>> {
        self.delta()
            .map(|d| PointMass {
                speed: d.speed,
                weight_coefficient: d.weight_coefficient,
                carried_u: d.carried_u,
            })
            .into_iter()
            .collect()
    }
}

/// Delta-shock parameters for `u_l > u_r`:
/// speed and carried velocity `(u_l + u_r)/2`, weight `(u_l - u_r)(rho_l + rho_r)/2`.
pub fn delta_descriptor<T: Real>(data: &RiemannData<T>) -> DeltaShockDescriptor<T> {
    let (l, r) = (data.left, data.right);
    let c = (l.u + r.u) * T::half();
    DeltaShockDescriptor {
        speed: c,
        weight_coefficient: (l.u - r.u) * (l.rho + r.rho) * T::half(),
        carried_u: c,
    }
}

pub fn predicted_limit<T: Real>(data: &RiemannData<T>) -> LimitSolution<T> {
    let (left, right) = (data.left, data.right);
    if left.u > right.u {
        LimitSolution::DeltaShock {
            left,
            right,
            delta: delta_descriptor(data),
        }
    } else if left.u == right.u {
        LimitSolution::Contact {
            left,
            right,
            speed: left.u,
        }
    } else {
        LimitSolution::Vacuum { left, right }
    }
}

/// Intermediate state and shock speeds of a two-shock solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoShockState<T> {
    pub u_star: T,
    pub rho_star: T,
    /// `eps p(rho*)`, evaluated as `exp(ln eps + ln p(rho*))`.
    pub eps_p_rho_star: T,
    pub s1: T,
    pub s2: T,
    /// Whether the log-domain path was needed.
    pub log_domain: bool,
}

impl<T: Real> TwoShockState<T> {
    /// Coefficient of `t` in the mass `rho* (s2 - s1) t` of the middle state.
    pub fn d_coeff(&self) -> T {
        self.rho_star * (self.s2 - self.s1)
    }
}

impl<T: Real, P: PressureLaw<T> + Clone> Model<T, P> {
    /// `eps p(rho)` as `exp(ln eps + ln p(rho))`. May be `+inf` for huge
    /// densities but never fails on overflow of `p` itself.
    pub fn eps_p_log_domain(&self, rho: T) -> Result<T> {
        if rho == T::zero() {
            return Ok(T::zero());
        }
        Ok((self.eps().ln() + self.law().log_p(rho)?).exp())
    }

    fn log_branch(&self, anchor: State<T>, du: T) -> Result<T> {
        if du == T::zero() {
            return Ok(anchor.rho);
        }
        let e_bar = self.eps_p_log_domain(anchor.rho)?;
        let g = |rho: T| -> Result<T> {
            let e = self.eps_p_log_domain(rho)?;
            Ok((rho - anchor.rho) * (e - e_bar) - du * du * (rho + anchor.rho) * T::half())
        };
        let cap = T::max_value().ln() * T::c(16.0);
        let (lo, hi) = expand_upper(g, anchor.rho, cap)?.ok_or(Error::NoBracket(
            "log-domain Hugoniot branch has no root below the search cap",
        ))?;
        bisect(g, lo, hi)
    }

    /// Two-shock intermediate state computed entirely with `ln p`, usable
    /// when `p(rho*)` itself is not representable.
    pub fn log_domain_two_shock(&self, data: &RiemannData<T>) -> Result<TwoShockState<T>> {
        let (l, r) = (data.left, data.right);
        if !(l.u > r.u) || !(self.eps().value() > T::zero()) {
            return Err(Error::Domain {
                what: "two-shock state requires u_l > u_r and eps > 0",
                value: (l.u - r.u).to_f64_lossy(),
            });
        }
        let too_large = || Error::EpsilonTooLarge {
            eps: self.eps().value().to_f64_lossy(),
        };
        if !(self.log_branch(r, l.u - r.u)? > l.rho) || !(self.log_branch(l, l.u - r.u)? > r.rho) {
            return Err(too_large());
        }
        let gap = |u: T| -> Result<T> { Ok(self.log_branch(l, l.u - u)? - self.log_branch(r, u - r.u)?) };
        let delta = T::c(1e-12) * (l.u - r.u);
        let u_star = bisect(gap, r.u + delta, l.u - delta)?;
        let rho_star = (self.log_branch(l, l.u - u_star)? + self.log_branch(r, u_star - r.u)?) * T::half();
        self.two_shock_record(data, u_star, rho_star, true)
    }

    fn two_shock_record(
        &self,
        data: &RiemannData<T>,
        u_star: T,
        rho_star: T,
        log_domain: bool,
    ) -> Result<TwoShockState<T>> {
        let (l, r) = (data.left, data.right);
        let s1 = (rho_star * u_star - l.rho * l.u) / (rho_star - l.rho);
        let s2 = (r.rho * r.u - rho_star * u_star) / (r.rho - rho_star);
        Ok(TwoShockState {
            u_star,
            rho_star,
            eps_p_rho_star: self.eps_p_log_domain(rho_star)?,
            s1,
            s2,
            log_domain,
        })
    }

    /// Direct solve, falling back to the log domain when `p(rho)` overflows.
    pub fn two_shock_state(&self, data: &RiemannData<T>) -> Result<TwoShockState<T>> {
        match self.solve_two_shock(data) {
            Ok((star, fan)) => {
                let speeds: Vec<T> = fan.shocks().map(|j| j.speed).collect();
                let mut rec = self.two_shock_record(data, star.u_star, star.rho_star, false)?;
                rec.s1 = speeds[0];
                rec.s2 = speeds[1];
                Ok(rec)
            }
            Err(Error::OverflowAtVanishingEpsilon { .. }) => self.log_domain_two_shock(data),
            Err(e) => Err(e),
        }
    }
}

/// `ln rho*` of the two-shock intermediate state for the default law, by the
/// log-domain path.
pub fn log_domain_rho_star<T: Real>(data: &RiemannData<T>, eps: Epsilon<T>) -> Result<T> {
    Ok(Model::exp(eps).log_domain_two_shock(data)?.rho_star.ln())
}

/// One row of an epsilon sweep for `u_l > u_r` data, with errors against the
/// predicted limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord<T> {
    pub eps: T,
    pub u_star: T,
    pub rho_star: T,
    pub log_rho_star: T,
    pub eps_p_rho_star: T,
    pub s1: T,
    pub s2: T,
    pub d_eps_coeff: T,
    /// `|u* - (u_l + u_r)/2|`
    pub err_u: T,
    /// `|eps p(rho*) - (u_l - u_r)^2/8|`
    pub err_l: T,
    /// `|d_eps_coeff - w0|`
    pub err_w: T,
    /// `max_i |s_i - (u_l + u_r)/2|`
    pub err_s: T,
    pub log_domain: bool,
}

fn validate_sweep<T: Real>(data: &RiemannData<T>, eps_list: &[Epsilon<T>]) -> Result<()> {
    if eps_list.is_empty() || !strictly_decreasing(eps_list) {
        return Err(Error::Domain {
            what: "epsilon list must be non-empty and strictly decreasing",
            value: eps_list.len() as f64,
        });
    }
    if !(data.left.u > data.right.u) {
        return Err(Error::Domain {
            what: "sweep requires u_l > u_r",
            value: (data.left.u - data.right.u).to_f64_lossy(),
        });
    }
    Ok(())
}

pub fn epsilon_sweep<T: Real>(data: &RiemannData<T>, eps_list: &[Epsilon<T>]) -> Result<Vec<SweepRecord<T>>> {
    epsilon_sweep_with(ExpLaw, data, eps_list)
}

pub fn epsilon_sweep_with<T: Real, P: PressureLaw<T> + Clone>(
    law: P,
    data: &RiemannData<T>,
    eps_list: &[Epsilon<T>],
) -> Result<Vec<SweepRecord<T>>> {
    validate_sweep(data, eps_list)?;
    let (l, r) = (data.left, data.right);
    let c = (l.u + r.u) * T::half();
    let limit_l = (l.u - r.u) * (l.u - r.u) / T::c(8.0);
    let w0 = delta_descriptor(data).weight_coefficient;
    eps_list
        .iter()
        .map(|&eps| {
            let st = Model::new(law.clone(), eps).two_shock_state(data)?;
            let d = st.d_coeff();
            Ok(SweepRecord {
                eps: eps.value(),
                u_star: st.u_star,
                rho_star: st.rho_star,
                log_rho_star: st.rho_star.ln(),
                eps_p_rho_star: st.eps_p_rho_star,
                s1: st.s1,
                s2: st.s2,
                d_eps_coeff: d,
                err_u: (st.u_star - c).abs(),
                err_l: (st.eps_p_rho_star - limit_l).abs(),
                err_w: (d - w0).abs(),
                err_s: (st.s1 - c).abs().max((st.s2 - c).abs()),
                log_domain: st.log_domain,
            })
        })
        .collect()
}

/// Outer edges and vacuum interval of the two-rarefaction solution for
/// `u_l < u_r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RarefactionRecord<T> {
    pub eps: T,
    /// `lambda_1(u_l, rho_l)`
    pub head_1: T,
    /// `lambda_2(u_r, rho_r)`
    pub tail_2: T,
    pub vacuum_from: T,
    pub vacuum_to: T,
}

pub fn rarefaction_sweep<T: Real>(data: &RiemannData<T>, eps_list: &[Epsilon<T>]) -> Result<Vec<RarefactionRecord<T>>> {
    if eps_list.is_empty() || !strictly_decreasing(eps_list) {
        return Err(Error::Domain {
            what: "epsilon list must be non-empty and strictly decreasing",
            value: eps_list.len() as f64,
        });
    }
    eps_list
        .iter()
        .map(|&eps| {
            let m = Model::exp(eps);
            let fan = m.solve_two_rarefaction(data)?;
            let vac = fan
                .waves()
                .iter()
                .find(|w| w.kind() == "vacuum")
                .map(|w| w.interval())
                .expect("two-rarefaction fan contains vacuum");
            Ok(RarefactionRecord {
                eps: eps.value(),
                head_1: m.lambda(Family::One, data.left)?,
                tail_2: m.lambda(Family::Two, data.right)?,
                vacuum_from: vac.0,
                vacuum_to: vac.1,
            })
        })
        .collect()
}

/// Pairing of an indicator approximation with a test function, against the
/// pairing of its delta limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingError<T> {
    pub eps: T,
    pub approx: T,
    pub limit: T,
    pub error: T,
}

fn pairing_quadrature() -> WeakQuadrature {
    WeakQuadrature {
        order: 20,
        x_panels: 2,
        t_panels: 8,
    }
}

/// For each `eps`, compares
/// `∫∫ d_eps(t)/(a_eps(t) + b_eps(t)) χ_{(c - a_eps, c + b_eps)}(x) φ dx dt`
/// with `∫ d(t) φ(c(t), t) dt`, both over `t > 0`. Closures receive
/// `(eps, t)`.
pub fn indicator_delta_pairing<T, A, B, De, D, C>(
    a: A,
    b: B,
    d_eps: De,
    d: D,
    c: C,
    phi: &Bump<T>,
    eps_list: &[T],
) -> Result<Vec<PairingError<T>>>
where
    T: Real,
    A: Fn(T, T) -> T,
    B: Fn(T, T) -> T,
    De: Fn(T, T) -> T,
    D: Fn(T) -> T,
    C: Fn(T) -> T,
{
    let quad = pairing_quadrature();
    let gl = crate::quadrature::GaussLegendre::<T>::new(quad.order);
    let (t_lo, t_hi) = phi.t_support();
    let t_lo = t_lo.max(T::zero());
    let panels = 4 * quad.t_panels;
    let limit = if t_hi > t_lo {
        gl.composite(|t| d(t) * phi.phi(c(t), t), t_lo, t_hi, panels)
    } else {
        T::zero()
    };
    let mut out = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let mut approx = T::zero();
        if t_hi > t_lo {
            approx = gl.try_composite(
                |t| {
                    let (ae, be) = (a(eps, t), b(eps, t));
                    let width = ae + be;
                    if !(width > T::zero()) {
                        return Err(Error::Domain {
                            what: "indicator width must be positive",
                            value: width.to_f64_lossy(),
                        });
                    }
                    let Some((xa, xb)) = phi.chord(t) else {
                        return Ok(T::zero());
                    };
                    let (lo, hi) = ((c(t) - ae).max(xa), (c(t) + be).min(xb));
                    if hi <= lo {
                        return Ok(T::zero());
                    }
                    Ok(d_eps(eps, t) / width * gl.integrate(|x| phi.phi(x, t), lo, hi))
                },
                t_lo,
                t_hi,
                panels,
            )?;
        }
        out.push(PairingError {
            eps,
            approx,
            limit,
            error: (approx - limit).abs(),
        });
    }
    Ok(out)
}

/// Indicator pairing of the middle state of solver-produced two-shock
/// solutions: `a = (c - s1) t`, `b = (s2 - c) t`, `d_eps = rho* (s2 - s1) t`
/// and limit `w0 t` on `x = c t`.
pub fn solver_delta_pairing<T: Real>(
    data: &RiemannData<T>,
    eps_list: &[Epsilon<T>],
    phi: &Bump<T>,
) -> Result<Vec<PairingError<T>>> {
    let records = epsilon_sweep(data, eps_list)?;
    let delta = delta_descriptor(data);
    let c = delta.speed;
    let mut out = Vec::with_capacity(records.len());
    for rec in &records {
        let mut v = indicator_delta_pairing(
            |_, t| (c - rec.s1) * t,
            |_, t| (rec.s2 - c) * t,
            |_, t| rec.d_eps_coeff * t,
            |t| delta.weight_coefficient * t,
            |t| c * t,
            phi,
            &[rec.eps],
        )?;
        out.append(&mut v);
    }
    Ok(out)
}

/// `⟨rho, φ⟩` over `t > 0` for the limit: regular part plus `w0 t` on the line.
pub fn limit_density_pairing<T: Real>(limit: &LimitSolution<T>, phi: &Bump<T>) -> Result<T> {
    let quad = pairing_quadrature();
    let [regular] = integrate_over_support(phi, &limit.breakpoints(), quad, |x, t, p, _, _| {
        Ok([limit.state_xi(x / t).rho * p])
    })?;
    let singular = match limit.delta() {
        Some(d) => integrate_along_line(phi, d.speed, quad, |t, p, _, _| d.weight_coefficient * t * p),
        None => T::zero(),
    };
    Ok(regular + singular)
}

/// Difference between `⟨rho^eps, φ⟩` of the two-shock solution and the
/// pairing of its delta-shock limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureError<T> {
    pub eps: T,
    pub approx: T,
    pub limit: T,
    pub error: T,
}

pub fn weak_measure_error<T: Real>(data: &RiemannData<T>, eps: Epsilon<T>, phi: &Bump<T>) -> Result<MeasureError<T>> {
    let st = Model::exp(eps).two_shock_state(data)?;
    let (l, r) = (data.left, data.right);
    let rho = |xi: T| {
        if xi < st.s1 {
            l.rho
        } else if xi < st.s2 {
            st.rho_star
        } else {
            r.rho
        }
    };
    let [approx] = integrate_over_support(phi, &[st.s1, st.s2], pairing_quadrature(), |x, t, p, _, _| {
        Ok([rho(x / t) * p])
    })?;
    let limit = limit_density_pairing(&predicted_limit(data), phi)?;
    Ok(MeasureError {
        eps: eps.value(),
        approx,
        limit,
        error: (approx - limit).abs(),
    })
}
