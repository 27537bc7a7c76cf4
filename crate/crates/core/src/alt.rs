//! Closed-form Riemann solutions for the system with shifted flux
//!
//! ```text
//! u_t + ((u + eps)²/2)_x = 0,    rho_t + (rho u)_x = 0,
//! ```
//!
//! whose characteristic speeds are `u` (linearly degenerate, contacts) and
//! `u + eps`. Depending on `u_l - u_r` the solution is a contact plus a
//! 2-rarefaction, a contact plus a 2-shock, or a delta shock.

use crate::error::{Error, Result};
use crate::limit::{DeltaShockDescriptor, LimitSolution};
use crate::pressure::Epsilon;
use crate::scalar::Real;
use crate::solver::RiemannData;
use crate::waves::State;
use crate::weak::{weak_form_residual, Bump, PointMass, SelfSimilar, WeakResidual};

/// Which closed form applies to given data and `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltRegime {
    /// `u_l < u_r`
    Rarefaction,
    /// `0 <= u_l - u_r <= eps`
    SmallShock,
    /// `u_l - u_r > eps`
    Delta,
}

pub fn alt_regime<T: Real>(data: &RiemannData<T>, eps: Epsilon<T>) -> AltRegime {
    let jump = data.left.u - data.right.u;
    if jump < T::zero() {
        AltRegime::Rarefaction
    } else if jump <= eps.value() {
        AltRegime::SmallShock
    } else {
        AltRegime::Delta
    }
}

/// One segment of an alternate-model solution, in similarity speed `xi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AltWave<T> {
    Constant {
        state: State<T>,
        from: T,
        to: T,
    },
    /// Family-1 discontinuity; `u` is equal on both sides.
    Contact {
        speed: T,
        left: State<T>,
        right: State<T>,
    },
    Shock {
        speed: T,
        left: State<T>,
        right: State<T>,
    },
    /// 2-rarefaction: `u = xi - eps`, `rho = right.rho exp((xi - tail)/eps)`.
    Rarefaction {
        head: T,
        tail: T,
        left: State<T>,
        right: State<T>,
    },
    Delta {
        speed: T,
        weight_coefficient: T,
        /// `eps (rho_r - rho_l)`, the part of the weight that vanishes with `eps`.
        eps_correction: T,
        carried_u: T,
        left: State<T>,
        right: State<T>,
    },
}

impl<T: Real> AltWave<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            AltWave::Constant { .. } => "constant",
            AltWave::Contact { .. } => "contact",
            AltWave::Shock { .. } => "shock",
            AltWave::Rarefaction { .. } => "fan",
            AltWave::Delta { .. } => "delta",
        }
    }

    pub fn interval(&self) -> (T, T) {
        match *self {
            AltWave::Constant { from, to, .. } => (from, to),
            AltWave::Contact { speed, .. } | AltWave::Shock { speed, .. } | AltWave::Delta { speed, .. } => {
                (speed, speed)
            }
            AltWave::Rarefaction { head, tail, .. } => (head, tail),
        }
    }

    /// States on the left and right edge of the segment.
    pub fn edge_states(&self) -> (State<T>, State<T>) {
        match *self {
            AltWave::Constant { state, .. } => (state, state),
            AltWave::Contact { left, right, .. }
            | AltWave::Shock { left, right, .. }
            | AltWave::Rarefaction { left, right, .. }
            | AltWave::Delta { left, right, .. } => (left, right),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AltWaveFan<T> {
    eps: Epsilon<T>,
    data: RiemannData<T>,
    waves: Vec<AltWave<T>>,
}

impl<T: Real> AltWaveFan<T> {
    pub fn from_waves(eps: Epsilon<T>, data: RiemannData<T>, waves: Vec<AltWave<T>>) -> Self {
        Self { eps, data, waves }
    }

    pub fn waves(&self) -> &[AltWave<T>] {
        &self.waves
    }

    pub fn eps(&self) -> Epsilon<T> {
        self.eps
    }

    pub fn data(&self) -> &RiemannData<T> {
        &self.data
    }

    pub fn delta(&self) -> Option<DeltaShockDescriptor<T>> {
        self.waves.iter().find_map(|w| match *w {
            AltWave::Delta {
                speed,
                weight_coefficient,
                carried_u,
                ..
            } => Some(DeltaShockDescriptor {
                speed,
                weight_coefficient,
                carried_u,
            }),
            _ => None,
        })
    }

    /// Index of the segment containing `xi`; zero-width segments are skipped,
    /// so discontinuities are right-continuous.
    pub fn locate(&self, xi: T) -> usize {
        for (i, w) in self.waves.iter().enumerate() {
            match *w {
                AltWave::Constant { to, .. } if xi < to => return i,
                AltWave::Rarefaction { tail, .. } if xi < tail => return i,
                _ => {}
            }
        }
        self.waves.len() - 1
    }

    pub fn sample_xi(&self, xi: T) -> State<T> {
        match self.waves[self.locate(xi)] {
            AltWave::Constant { state, .. } => state,
            AltWave::Rarefaction { head, tail, right, .. } => {
                let xi = xi.max(head).min(tail);
                let eps = self.eps.value();
                State::new(xi - eps, right.rho * ((xi - tail) / eps).exp())
            }
            w => w.edge_states().1,
        }
    }

    pub fn sample(&self, x: T, t: T) -> Result<State<T>> {
        if !(t > T::zero()) {
            return Err(Error::Domain {
                what: "sampling time must be positive",
                value: t.to_f64_lossy(),
            });
        }
        Ok(self.sample_xi(x / t))
    }

    pub fn breakpoints(&self) -> Vec<T> {
        let mut pts = Vec::new();
        for w in &self.waves {
            let (a, b) = w.interval();
            for v in [a, b] {
                if v.is_finite() && pts.last() != Some(&v) {
                    pts.push(v);
                }
            }
        }
        pts
    }

    /// Ordering and contiguity of segments, and equal `u` across contacts.
    pub fn check_invariants(&self, tol: T) -> bool {
        let n = self.waves.len();
        if n == 0 {
            return false;
        }
        let close = |a: State<T>, b: State<T>| {
            (a.u - b.u).abs() <= tol * (T::one() + a.u.abs()) && (a.rho - b.rho).abs() <= tol * (T::one() + a.rho.abs())
        };
        if !close(self.waves[0].edge_states().0, self.data.left)
            || !close(self.waves[n - 1].edge_states().1, self.data.right)
        {
            return false;
        }
        for pair in self.waves.windows(2) {
            let (_, a_to) = pair[0].interval();
            let (b_from, _) = pair[1].interval();
            if (a_to - b_from).abs() > tol * (T::one() + a_to.abs()) {
                return false;
            }
            if !close(pair[0].edge_states().1, pair[1].edge_states().0) {
                return false;
            }
        }
        self.waves.iter().all(|w| {
            let (a, b) = w.interval();
            let contact_ok = match *w {
                AltWave::Contact { speed, left, right } => left.u == right.u && speed == left.u,
                _ => true,
            };
            a <= b && contact_ok
        })
    }
}

impl<T: Real> SelfSimilar<T> for AltWaveFan<T> {
    fn breakpoints(&self) -> Vec<T> {
        AltWaveFan::breakpoints(self)
    }

    fn state_at(&self, xi: T) -> Result<State<T>> {
        Ok(self.sample_xi(xi))
    }

    fn flux(&self, s: State<T>) -> Result<(T, T)> {
        let v = s.u + self.eps.value();
        Ok((v * v * T::half(), s.rho * s.u))
    }

    fn initial(&self, x: T) -> State<T> {
        self.data.initial(x)
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

fn constant<T: Real>(state: State<T>, from: T, to: T) -> AltWave<T> {
    AltWave::Constant { state, from, to }
}

fn require_positive<T: Real>(eps: Epsilon<T>) -> Result<T> {
    let e = eps.value();
    if e > T::zero() {
        Ok(e)
    } else {
        Err(Error::Domain {
            what: "alternate model requires eps > 0",
            value: e.to_f64_lossy(),
        })
    }
}

/// `u_l < u_r`: contact at `u_l` to `(u_l, rho_r e^{(u_l - u_r)/eps})`, then a
/// 2-rarefaction over `(u_l + eps, u_r + eps)`.
pub fn alt_solve_rarefaction<T: Real>(data: &RiemannData<T>, eps: Epsilon<T>) -> Result<AltWaveFan<T>> {
    let e = require_positive(eps)?;
    let (l, r) = (data.left, data.right);
    if !(l.u < r.u) {
        return Err(Error::Domain {
            what: "alternate rarefaction requires u_l < u_r",
            value: (l.u - r.u).to_f64_lossy(),
        });
    }
    let star = State::new(l.u, r.rho * ((l.u - r.u) / e).exp());
    let (head, tail) = (l.u + e, r.u + e);
    let waves = vec![
        constant(l, T::neg_infinity(), l.u),
        AltWave::Contact {
            speed: l.u,
            left: l,
            right: star,
        },
        constant(star, l.u, head),
        AltWave::Rarefaction {
            head,
            tail,
            left: star,
            right: r,
        },
        constant(r, tail, T::infinity()),
    ];
    Ok(AltWaveFan::from_waves(eps, *data, waves))
}

/// Orientation of the velocity jump inside the window `|u_l - u_r| <= eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowOrientation {
    /// `u_l >= u_r`: the 2-shock is Lax-admissible.
    Compressive,
    /// `u_l < u_r`: the same construction is a weak solution but its 2-shock
    /// violates the Lax inequalities.
    Expansive,
}

/// `0 <= u_l - u_r <= eps`: contact at `u_l` to
/// `(u_l, rho_r (Δ/2 + eps)/(eps - Δ/2))`, then a 2-shock at `(u_l + u_r)/2 + eps`.
pub fn alt_solve_small_shock<T: Real>(data: &RiemannData<T>, eps: Epsilon<T>) -> Result<AltWaveFan<T>> {
    alt_solve_small_shock_with(data, eps, WindowOrientation::Compressive)
}

pub fn alt_solve_small_shock_with<T: Real>(
    data: &RiemannData<T>,
    eps: Epsilon<T>,
    orientation: WindowOrientation,
) -> Result<AltWaveFan<T>> {
    let e = require_positive(eps)?;
    let (l, r) = (data.left, data.right);
    let jump = l.u - r.u;
    let denominator = e - jump * T::half();
    if denominator <= T::zero() {
        return Err(Error::DenominatorVanishing {
            denominator: denominator.to_f64_lossy(),
        });
    }
    let oriented = match orientation {
        WindowOrientation::Compressive => jump >= T::zero(),
        WindowOrientation::Expansive => jump < T::zero(),
    };
    if !oriented || jump.abs() > e {
        return Err(Error::OutsideBvWindow {
            jump: jump.to_f64_lossy(),
            eps: e.to_f64_lossy(),
        });
    }
    if jump == T::zero() {
        let waves = vec![
            constant(l, T::neg_infinity(), l.u),
            AltWave::Contact {
                speed: l.u,
                left: l,
                right: r,
            },
            constant(r, l.u, T::infinity()),
        ];
        return Ok(AltWaveFan::from_waves(eps, *data, waves));
    }
    let star = State::new(l.u, r.rho * (jump * T::half() + e) / denominator);
    let s = (l.u + r.u) * T::half() + e;
    let waves = vec![
        constant(l, T::neg_infinity(), l.u),
        AltWave::Contact {
            speed: l.u,
            left: l,
            right: star,
        },
        constant(star, l.u, s),
        AltWave::Shock {
            speed: s,
            left: star,
            right: r,
        },
        constant(r, s, T::infinity()),
    ];
    Ok(AltWaveFan::from_waves(eps, *data, waves))
}

/// `u_l - u_r > eps`: a delta shock with speed and carried velocity
/// `(u_l + u_r)/2 + eps` and weight `w0 t`,
/// `w0 = (u_l - u_r)(rho_l + rho_r)/2 + eps (rho_r - rho_l)`.
pub fn alt_solve_delta<T: Real>(data: &RiemannData<T>, eps: Epsilon<T>) -> Result<AltWaveFan<T>> {
    let e = require_positive(eps)?;
    let (l, r) = (data.left, data.right);
    let jump = l.u - r.u;
    if !(jump > e) {
        return Err(Error::InsideBvWindow {
            jump: jump.to_f64_lossy(),
            eps: e.to_f64_lossy(),
        });
    }
    let speed = (l.u + r.u) * T::half() + e;
    let eps_correction = e * (r.rho - l.rho);
    let waves = vec![
        constant(l, T::neg_infinity(), speed),
        AltWave::Delta {
            speed,
            weight_coefficient: jump * (l.rho + r.rho) * T::half() + eps_correction,
            eps_correction,
            carried_u: speed,
            left: l,
            right: r,
        },
        constant(r, speed, T::infinity()),
    ];
    Ok(AltWaveFan::from_waves(eps, *data, waves))
}

pub fn alt_solve<T: Real>(data: &RiemannData<T>, eps: Epsilon<T>) -> Result<AltWaveFan<T>> {
    match alt_regime(data, eps) {
        AltRegime::Rarefaction => alt_solve_rarefaction(data, eps),
        AltRegime::SmallShock => alt_solve_small_shock(data, eps),
        AltRegime::Delta => alt_solve_delta(data, eps),
    }
}

/// The `eps -> 0` limit of the alternate-model solutions, obtained by
/// setting `eps = 0` in their closed forms.
pub fn alt_limit<T: Real>(data: &RiemannData<T>) -> LimitSolution<T> {
    let (left, right) = (data.left, data.right);
    let jump = left.u - right.u;
    if jump < T::zero() {
        LimitSolution::Vacuum { left, right }
    } else if jump == T::zero() {
        LimitSolution::Contact {
            left,
            right,
            speed: left.u,
        }
    } else {
        let e = T::zero();
        let speed = (left.u + right.u) * T::half() + e;
        LimitSolution::DeltaShock {
            left,
            right,
            delta: DeltaShockDescriptor {
                speed,
                weight_coefficient: jump * (left.rho + right.rho) * T::half() + e * (right.rho - left.rho),
                carried_u: speed,
            },
        }
    }
}

pub fn alt_weak_residual<T: Real>(fan: &AltWaveFan<T>, phi: &Bump<T>) -> Result<WeakResidual<T>> {
    weak_form_residual(fan, phi)
}
