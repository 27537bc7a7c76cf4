//! Exact Riemann solver for the perturbed system at fixed `eps`.
//!
//! Three cases, keyed on the velocity jump:
//!
//! * `u_l > u_r`: two admissible shocks around an intermediate state found by
//!   intersecting the 1-shock and 2-shock branches;
//! * `u_l = u_r`: a rarefaction and a shock (which family rarefies depends on
//!   the density ordering), or nothing when the densities agree;
//! * `u_l < u_r`: two rarefactions separated by vacuum.

use crate::error::{Error, Result};
use crate::pressure::{Epsilon, ExpLaw, PressureLaw};
use crate::roots::bisect;
use crate::scalar::Real;
use crate::waves::{Family, Model, ShockJump, State};

/// Piecewise-constant initial data with a single jump at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannData<T> {
    pub left: State<T>,
    pub right: State<T>,
}

impl<T: Real> RiemannData<T> {
    /// Both densities must be positive and all values finite.
    pub fn new(left: State<T>, right: State<T>) -> Result<Self> {
        for s in [left, right] {
            if !(s.rho > T::zero()) || !s.rho.is_finite() {
                return Err(Error::Domain {
                    what: "Riemann data densities must be positive",
                    value: s.rho.to_f64_lossy(),
                });
            }
            if !s.u.is_finite() {
                return Err(Error::Domain {
                    what: "Riemann data velocities must be finite",
                    value: s.u.to_f64_lossy(),
                });
            }
        }
        Ok(Self { left, right })
    }

    pub fn from_values(u_l: T, rho_l: T, u_r: T, rho_r: T) -> Result<Self> {
        Self::new(State::new(u_l, rho_l), State::new(u_r, rho_r))
    }

    /// Initial state at position `x`; the right state is used at `x = 0`.
    pub fn initial(&self, x: T) -> State<T> {
        if x < T::zero() {
            self.left
        } else {
            self.right
        }
    }

    /// Swaps `(u, x) -> (-u, -x)`, which maps a solution onto the solution of
    /// the mirrored data.
    pub fn mirrored(&self) -> Self {
        Self {
            left: State::new(-self.right.u, self.right.rho),
            right: State::new(-self.left.u, self.left.rho),
        }
    }
}

/// The constant state between the two waves of a fan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntermediateState<T> {
    pub u_star: T,
    pub rho_star: T,
    pub epsilon: Epsilon<T>,
}

/// One segment of a self-similar wave fan. Intervals are in `xi = x/t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wave<T> {
    Constant {
        state: State<T>,
        from: T,
        to: T,
    },
    Shock(ShockJump<T>),
    /// Centred fan whose left edge state is `anchor` and right edge is `end`.
    Rarefaction {
        family: Family,
        anchor: State<T>,
        end: State<T>,
        head: T,
        tail: T,
    },
    /// `rho = 0` with `u = xi`.
    Vacuum {
        from: T,
        to: T,
    },
}

impl<T: Real> Wave<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            Wave::Constant { .. } => "constant",
            Wave::Shock(_) => "shock",
            Wave::Rarefaction { .. } => "fan",
            Wave::Vacuum { .. } => "vacuum",
        }
    }

    /// `(from, to)` in similarity speed; shocks have zero width.
    pub fn interval(&self) -> (T, T) {
        match *self {
            Wave::Constant { from, to, .. } | Wave::Vacuum { from, to } => (from, to),
            Wave::Shock(j) => (j.speed, j.speed),
            Wave::Rarefaction { head, tail, .. } => (head, tail),
        }
    }

    pub fn left_state(&self) -> State<T> {
        match *self {
            Wave::Constant { state, .. } => state,
            Wave::Shock(j) => j.left,
            Wave::Rarefaction { anchor, .. } => anchor,
            Wave::Vacuum { from, .. } => State::vacuum(from),
        }
    }

    pub fn right_state(&self) -> State<T> {
        match *self {
            Wave::Constant { state, .. } => state,
            Wave::Shock(j) => j.right,
            Wave::Rarefaction { end, .. } => end,
            Wave::Vacuum { to, .. } => State::vacuum(to),
        }
    }
}

/// An ordered self-similar solution of one Riemann problem. Immutable once
/// built.
#[derive(Debug, Clone)]
pub struct WaveFan<T, P = ExpLaw> {
    model: Model<T, P>,
    data: RiemannData<T>,
    waves: Vec<Wave<T>>,
}

impl<T: Real, P: PressureLaw<T>> WaveFan<T, P> {
    /// Assembles a fan from explicit segments. The segments are not checked;
    /// see [`WaveFan::check_invariants`].
    pub fn from_waves(model: Model<T, P>, data: RiemannData<T>, waves: Vec<Wave<T>>) -> Self {
        Self { model, data, waves }
    }

    pub fn waves(&self) -> &[Wave<T>] {
        &self.waves
    }

    pub fn data(&self) -> &RiemannData<T> {
        &self.data
    }

    pub fn model(&self) -> &Model<T, P> {
        &self.model
    }

    pub fn shocks(&self) -> impl Iterator<Item = &ShockJump<T>> {
        self.waves.iter().filter_map(|w| match w {
            Wave::Shock(j) => Some(j),
            _ => None,
        })
    }

    /// Similarity speeds at which the solution is not smooth.
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

    /// Index of the segment that `xi` falls into. Shock speeds belong to the
    /// segment on their right.
    pub fn locate(&self, xi: T) -> usize {
        let last = self.waves.len() - 1;
        for (i, w) in self.waves.iter().enumerate() {
            match *w {
                Wave::Shock(_) => continue,
                Wave::Constant { to, .. } | Wave::Vacuum { to, .. } if xi < to => return i,
                Wave::Rarefaction { tail, .. } if xi < tail => return i,
                _ => {}
            }
        }
        last
    }

    /// State at similarity speed `xi`.
    pub fn sample_xi(&self, xi: T) -> Result<State<T>> {
        match self.waves[self.locate(xi)] {
            Wave::Constant { state, .. } => Ok(state),
            Wave::Vacuum { .. } => Ok(State::vacuum(xi)),
            Wave::Rarefaction {
                family,
                anchor,
                end,
                head,
                tail,
            } => {
                let xi = xi.max(head.min(tail)).min(head.max(tail));
                self.model.rarefaction_fan_state(anchor, family, end.rho, xi)
            }
            Wave::Shock(j) => Ok(j.right),
        }
    }

    /// State at `(x, t)` with `t > 0`.
    pub fn sample(&self, x: T, t: T) -> Result<State<T>> {
        if !(t > T::zero()) {
            return Err(Error::Domain {
                what: "sampling time must be positive",
                value: t.to_f64_lossy(),
            });
        }
        self.sample_xi(x / t)
    }

    /// Ordering, contiguity and boundary-state matching of the segments.
    pub fn check_invariants(&self, tol: T) -> bool {
        let n = self.waves.len();
        if n == 0 {
            return false;
        }
        let close = |a: State<T>, b: State<T>| {
            (a.u - b.u).abs() <= tol * (T::one() + a.u.abs()) && (a.rho - b.rho).abs() <= tol * (T::one() + a.rho.abs())
        };
        if !close(self.waves[0].left_state(), self.data.left)
            || !close(self.waves[n - 1].right_state(), self.data.right)
        {
            return false;
        }
        if self.waves[0].interval().0 != T::neg_infinity() || self.waves[n - 1].interval().1 != T::infinity() {
            return false;
        }
        for pair in self.waves.windows(2) {
            let (_, a_to) = pair[0].interval();
            let (b_from, _) = pair[1].interval();
            if (a_to - b_from).abs() > tol * (T::one() + a_to.abs()) {
                return false;
            }
            if !close(pair[0].right_state(), pair[1].left_state()) {
                return false;
            }
        }
        self.waves.iter().all(|w| {
            let (a, b) = w.interval();
            a <= b
        })
    }
}

fn require_eps<T: Real>(eps: Epsilon<T>) -> Result<()> {
    if eps.value() > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "solver requires eps > 0",
            value: eps.value().to_f64_lossy(),
        })
    }
}

impl<T: Real, P: PressureLaw<T> + Clone> Model<T, P> {
    /// Two-shock solution for `u_l > u_r`.
    pub fn solve_two_shock(&self, data: &RiemannData<T>) -> Result<(IntermediateState<T>, WaveFan<T, P>)> {
        require_eps(self.eps())?;
        let (l, r) = (data.left, data.right);
        if !(l.u > r.u) {
            return Err(Error::Domain {
                what: "two-shock solver requires u_l > u_r",
                value: (l.u - r.u).to_f64_lossy(),
            });
        }
        let too_large = || Error::EpsilonTooLarge {
            eps: self.eps().value().to_f64_lossy(),
        };
        // sign conditions at the ends of (u_r, u_l)
        if !(self.shock2_rho_of_u(r, l.u)? > l.rho) || !(self.shock1_rho_of_u(l, r.u)? > r.rho) {
            return Err(too_large());
        }
        let gap = |u: T| -> Result<T> { Ok(self.shock1_rho_of_u(l, u)? - self.shock2_rho_of_u(r, u)?) };
        let delta = T::c(1e-12) * (l.u - r.u);
        let u_star = bisect(gap, r.u + delta, l.u - delta).map_err(|e| match e {
            Error::NoBracket(_) => too_large(),
            other => other,
        })?;
        let rho1 = self.shock1_rho_of_u(l, u_star)?;
        let rho2 = self.shock2_rho_of_u(r, u_star)?;
        let rho_star = (rho1 + rho2) * T::half();
        let star = State::new(u_star, rho_star);
        let s1 = self.shock_jump(l, star, Family::One)?;
        let s2 = self.shock_jump(star, r, Family::Two)?;
        let waves = vec![
            Wave::Constant {
                state: l,
                from: T::neg_infinity(),
                to: s1.speed,
            },
            Wave::Shock(s1),
            Wave::Constant {
                state: star,
                from: s1.speed,
                to: s2.speed,
            },
            Wave::Shock(s2),
            Wave::Constant {
                state: r,
                from: s2.speed,
                to: T::infinity(),
            },
        ];
        Ok((
            IntermediateState {
                u_star,
                rho_star,
                epsilon: self.eps(),
            },
            WaveFan::from_waves(self.clone(), *data, waves),
        ))
    }

    /// Solution for `u_l = u_r`: rarefaction plus shock, or a single constant.
    pub fn solve_equal_u(&self, data: &RiemannData<T>) -> Result<(IntermediateState<T>, WaveFan<T, P>)> {
        require_eps(self.eps())?;
        let (l, r) = (data.left, data.right);
        if l.u != r.u {
            return Err(Error::Domain {
                what: "equal-velocity solver requires u_l = u_r",
                value: (l.u - r.u).to_f64_lossy(),
            });
        }
        let inter = |s: State<T>| IntermediateState {
            u_star: s.u,
            rho_star: s.rho,
            epsilon: self.eps(),
        };
        if l.rho == r.rho {
            let waves = vec![Wave::Constant {
                state: l,
                from: T::neg_infinity(),
                to: T::infinity(),
            }];
            return Ok((inter(l), WaveFan::from_waves(self.clone(), *data, waves)));
        }
        let waves = if r.rho < l.rho {
            // 1-rarefaction from the left, then a 2-shock into the right state
            let h = |rho: T| -> Result<T> {
                Ok(self.rarefaction1_u_of_rho(l, rho)? - (r.u + self.hugoniot_velocity_gap(r, rho)?))
            };
            let rho_star = bisect(h, r.rho, l.rho)?;
            let star = State::new(self.rarefaction1_u_of_rho(l, rho_star)?, rho_star);
            let head = self.lambda(Family::One, l)?;
            let tail = self.lambda(Family::One, star)?;
            let shock = self.shock_jump(star, r, Family::Two)?;
            vec![
                Wave::Constant {
                    state: l,
                    from: T::neg_infinity(),
                    to: head,
                },
                Wave::Rarefaction {
                    family: Family::One,
                    anchor: l,
                    end: star,
                    head,
                    tail,
                },
                Wave::Constant {
                    state: star,
                    from: tail,
                    to: shock.speed,
                },
                Wave::Shock(shock),
                Wave::Constant {
                    state: r,
                    from: shock.speed,
                    to: T::infinity(),
                },
            ]
        } else {
            // 1-shock from the left, then a 2-rarefaction into the right state
            let sq = self.eps().sqrt();
            let h = |rho: T| -> Result<T> {
                let u_shock = l.u - self.hugoniot_velocity_gap(l, rho)?;
                let u_fan = r.u - sq * self.law().rarefaction_integral(rho, r.rho)?;
                Ok(u_shock - u_fan)
            };
            let rho_star = bisect(h, l.rho, r.rho)?;
            let star = State::new(l.u - self.hugoniot_velocity_gap(l, rho_star)?, rho_star);
            let shock = self.shock_jump(l, star, Family::One)?;
            let head = self.lambda(Family::Two, star)?;
            let tail = self.lambda(Family::Two, r)?;
            vec![
                Wave::Constant {
                    state: l,
                    from: T::neg_infinity(),
                    to: shock.speed,
                },
                Wave::Shock(shock),
                Wave::Constant {
                    state: star,
                    from: shock.speed,
                    to: head,
                },
                Wave::Rarefaction {
                    family: Family::Two,
                    anchor: star,
                    end: r,
                    head,
                    tail,
                },
                Wave::Constant {
                    state: r,
                    from: tail,
                    to: T::infinity(),
                },
            ]
        };
        let star = match waves[2] {
            Wave::Constant { state, .. } => state,
            _ => unreachable!("intermediate segment is constant"),
        };
        Ok((inter(star), WaveFan::from_waves(self.clone(), *data, waves)))
    }

    /// Vacuum solution for `u_l < u_r`.
    pub fn solve_two_rarefaction(&self, data: &RiemannData<T>) -> Result<WaveFan<T, P>> {
        require_eps(self.eps())?;
        let (l, r) = (data.left, data.right);
        if !(l.u < r.u) {
            return Err(Error::Domain {
                what: "two-rarefaction solver requires u_l < u_r",
                value: (l.u - r.u).to_f64_lossy(),
            });
        }
        let u1 = self.rarefaction1_u_of_rho(l, T::zero())?;
        let u2 = r.u - self.eps().sqrt() * self.law().rarefaction_integral(T::zero(), r.rho)?;
        if u1 >= u2 {
            return Err(Error::RarefactionOverlap {
                eps: self.eps().value().to_f64_lossy(),
                u1: u1.to_f64_lossy(),
                u2: u2.to_f64_lossy(),
            });
        }
        let head1 = self.lambda(Family::One, l)?;
        let tail2 = self.lambda(Family::Two, r)?;
        let waves = vec![
            Wave::Constant {
                state: l,
                from: T::neg_infinity(),
                to: head1,
            },
            Wave::Rarefaction {
                family: Family::One,
                anchor: l,
                end: State::vacuum(u1),
                head: head1,
                tail: u1,
            },
            Wave::Vacuum { from: u1, to: u2 },
            Wave::Rarefaction {
                family: Family::Two,
                anchor: State::vacuum(u2),
                end: r,
                head: u2,
                tail: tail2,
            },
            Wave::Constant {
                state: r,
                from: tail2,
                to: T::infinity(),
            },
        ];
        Ok(WaveFan::from_waves(self.clone(), *data, waves))
    }

    /// Dispatches on the sign of `u_l - u_r`.
    pub fn solve(&self, data: &RiemannData<T>) -> Result<WaveFan<T, P>> {
        let (ul, ur) = (data.left.u, data.right.u);
        if ul > ur {
            Ok(self.solve_two_shock(data)?.1)
        } else if ul == ur {
            Ok(self.solve_equal_u(data)?.1)
        } else {
            self.solve_two_rarefaction(data)
        }
    }
}
