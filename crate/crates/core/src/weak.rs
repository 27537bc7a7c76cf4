//! Weak-form residuals of self-similar solutions against compactly supported
//! bump test functions.
//!
//! For a solution `U(x/t)` with flux `F` the residual of each component is
//!
//! ```text
//! | ∫∫_{t>0} U φ_t + F(U) φ_x dx dt + ∫ U_0(x) φ(x, 0) dx |
//! ```
//!
//! plus, for the density, the pairing of any point masses `w0 t δ_{x = c t}`
//! with `φ_t + v φ_x` along their line. Integration is tensor Gauss-Legendre,
//! split in `x` at every wave line and in `t` wherever a wave line crosses
//! the boundary of the support, so every piece has a smooth integrand.

use crate::error::{Error, Result};
use crate::pressure::PressureLaw;
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;
use crate::solver::WaveFan;
use crate::waves::State;

/// Shape of a radial bump in scaled coordinates `r^2 = X^2 + T^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BumpShape {
    /// `(1 - r^2)^4` on `r < 1`.
    Polynomial,
    /// `exp(-r^2/2) - exp(-18)` on `r < 6`, shifted so it vanishes on the
    /// truncation circle.
    Gaussian,
}

/// Test function `φ(x, t)` centred at `(x0, t0)` with scales `hx`, `ht`.
/// For the Gaussian the scales are standard deviations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump<T> {
    pub shape: BumpShape,
    pub x0: T,
    pub t0: T,
    pub hx: T,
    pub ht: T,
}

impl<T: Real> Bump<T> {
    pub fn new(shape: BumpShape, x0: T, t0: T, hx: T, ht: T) -> Result<Self> {
        if !(hx > T::zero()) || !(ht > T::zero()) {
            return Err(Error::Domain {
                what: "bump scales must be positive",
                value: hx.min(ht).to_f64_lossy(),
            });
        }
        Ok(Self { shape, x0, t0, hx, ht })
    }

    pub fn polynomial(x0: T, t0: T, hx: T, ht: T) -> Result<Self> {
        Self::new(BumpShape::Polynomial, x0, t0, hx, ht)
    }

    pub fn gaussian(x0: T, t0: T, sx: T, st: T) -> Result<Self> {
        Self::new(BumpShape::Gaussian, x0, t0, sx, st)
    }

    /// Support radius in scaled coordinates.
    pub fn radius(&self) -> T {
        match self.shape {
            BumpShape::Polynomial => T::one(),
            BumpShape::Gaussian => T::c(6.0),
        }
    }

    /// `(φ, φ_x, φ_t)` at `(x, t)`.
    pub fn eval(&self, x: T, t: T) -> (T, T, T) {
        let xs = (x - self.x0) / self.hx;
        let ts = (t - self.t0) / self.ht;
        let r2 = xs * xs + ts * ts;
        let big_r = self.radius();
        if r2 >= big_r * big_r {
            return (T::zero(), T::zero(), T::zero());
        }
        match self.shape {
            BumpShape::Polynomial => {
                let s = T::one() - r2;
                let s3 = s * s * s;
                let g = -T::c(8.0) * s3;
                (s3 * s, g * xs / self.hx, g * ts / self.ht)
            }
            BumpShape::Gaussian => {
                let e = (-r2 * T::half()).exp();
                let floor = (-big_r * big_r * T::half()).exp();
                (e - floor, -e * xs / self.hx, -e * ts / self.ht)
            }
        }
    }

    pub fn phi(&self, x: T, t: T) -> T {
        self.eval(x, t).0
    }

    /// Time extent of the support.
    pub fn t_support(&self) -> (T, T) {
        let r = self.radius() * self.ht;
        (self.t0 - r, self.t0 + r)
    }

    /// `x`-interval of the support at time `t`, if any.
    pub fn chord(&self, t: T) -> Option<(T, T)> {
        let ts = (t - self.t0) / self.ht;
        let big_r = self.radius();
        let h2 = big_r * big_r - ts * ts;
        if h2 <= T::zero() {
            return None;
        }
        let half = self.hx * h2.sqrt();
        Some((self.x0 - half, self.x0 + half))
    }

    /// Times at which the line `x = speed * t` meets the support boundary.
    pub fn line_crossings(&self, speed: T) -> Vec<T> {
        // ((speed t - x0)/hx)^2 + ((t - t0)/ht)^2 = R^2
        let a = speed * speed / (self.hx * self.hx) + T::one() / (self.ht * self.ht);
        let b = -T::two() * (speed * self.x0 / (self.hx * self.hx) + self.t0 / (self.ht * self.ht));
        let big_r = self.radius();
        let c = self.x0 * self.x0 / (self.hx * self.hx) + self.t0 * self.t0 / (self.ht * self.ht) - big_r * big_r;
        let disc = b * b - T::c(4.0) * a * c;
        if disc <= T::zero() {
            return Vec::new();
        }
        let sq = disc.sqrt();
        vec![(-b - sq) / (T::two() * a), (-b + sq) / (T::two() * a)]
    }
}

/// A point mass `w0 t δ_{x = speed t}` in the density, moving with velocity
/// `carried_u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass<T> {
    pub speed: T,
    pub weight_coefficient: T,
    pub carried_u: T,
}

/// A solution of a Riemann problem for a 2x2 system in `(u, rho)` that
/// depends on `x/t` only.
pub trait SelfSimilar<T: Real> {
    /// Similarity speeds where the state may be discontinuous or kinked.
    fn breakpoints(&self) -> Vec<T>;
    fn state_at(&self, xi: T) -> Result<State<T>>;
    fn flux(&self, s: State<T>) -> Result<(T, T)>;
    fn initial(&self, x: T) -> State<T>;
    fn point_masses(&self) -> Vec<PointMass<T>> {
        Vec::new()
    }
}

impl<T: Real, P: PressureLaw<T>> SelfSimilar<T> for WaveFan<T, P> {
    fn breakpoints(&self) -> Vec<T> {
        WaveFan::breakpoints(self)
    }

    fn state_at(&self, xi: T) -> Result<State<T>> {
        self.sample_xi(xi)
    }

    fn flux(&self, s: State<T>) -> Result<(T, T)> {
        self.model().flux(s)
    }

    fn initial(&self, x: T) -> State<T> {
        self.data().initial(x)
    }
}

/// Quadrature resolution for residual evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeakQuadrature {
    pub order: usize,
    pub x_panels: usize,
    pub t_panels: usize,
}

impl Default for WeakQuadrature {
    fn default() -> Self {
        Self {
            order: 20,
            x_panels: 3,
            t_panels: 4,
        }
    }
}

/// Absolute residuals of the two conservation laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakResidual<T> {
    pub u: T,
    pub rho: T,
}

impl<T: Real> WeakResidual<T> {
    pub fn total(&self) -> T {
        self.u + self.rho
    }
}

fn sorted_cuts<T: Real>(mut cuts: Vec<T>, lo: T, hi: T) -> Vec<T> {
    cuts.retain(|c| *c > lo && *c < hi);
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite cut"));
    cuts.dedup();
    cuts
}

/// Weak-form residual with the default quadrature.
pub fn weak_form_residual<T: Real, S: SelfSimilar<T> + ?Sized>(solution: &S, phi: &Bump<T>) -> Result<WeakResidual<T>> {
    weak_form_residual_with(solution, phi, WeakQuadrature::default())
}

pub fn weak_form_residual_with<T: Real, S: SelfSimilar<T> + ?Sized>(
    solution: &S,
    phi: &Bump<T>,
    quad: WeakQuadrature,
) -> Result<WeakResidual<T>> {
    let breaks = solution.breakpoints();
    let [mut res_u, mut res_rho] = integrate_over_support(phi, &breaks, quad, |x, t, _, px, pt| {
        let s = solution.state_at(x / t)?;
        let (f1, f2) = solution.flux(s)?;
        Ok([s.u * pt + f1 * px, s.rho * pt + f2 * px])
    })?;
    for m in solution.point_masses() {
        res_rho += integrate_along_line(phi, m.speed, quad, |t, _, px, pt| {
            m.weight_coefficient * t * (pt + m.carried_u * px)
        });
    }
    let [u0, rho0] = integrate_initial_line(phi, quad, |x, p0| {
        let s = solution.initial(x);
        [s.u * p0, s.rho * p0]
    });
    res_u += u0;
    res_rho += rho0;
    Ok(WeakResidual {
        u: res_u.abs(),
        rho: res_rho.abs(),
    })
}

/// `∫∫_{t>0} f(x, t, φ, φ_x, φ_t) dx dt` over the support of `φ` for an
/// integrand that is smooth between the lines `x = ξ t`, `ξ` in `breaks`.
pub fn integrate_over_support<T, F, const N: usize>(
    phi: &Bump<T>,
    breaks: &[T],
    quad: WeakQuadrature,
    mut f: F,
) -> Result<[T; N]>
where
    T: Real,
    F: FnMut(T, T, T, T, T) -> Result<[T; N]>,
{
    let gl = GaussLegendre::<T>::new(quad.order);
    let mut acc = [T::zero(); N];
    let (t_lo, t_hi) = phi.t_support();
    let t_lo = t_lo.max(T::zero());
    if t_hi <= t_lo {
        return Ok(acc);
    }
    let mut t_cuts = Vec::new();
    for &xi in breaks {
        t_cuts.extend(phi.line_crossings(xi));
    }
    let t_cuts = sorted_cuts(t_cuts, t_lo, t_hi);
    for span in t_cuts.windows(2) {
        for (t, wt) in panel_nodes(&gl, span[0], span[1], quad.t_panels) {
            let Some((xa, xb)) = phi.chord(t) else { continue };
            let x_cuts = sorted_cuts(breaks.iter().map(|&xi| xi * t).collect(), xa, xb);
            let mut inner = [T::zero(); N];
            for piece in x_cuts.windows(2) {
                for (x, wx) in panel_nodes(&gl, piece[0], piece[1], quad.x_panels) {
                    let (p, px, pt) = phi.eval(x, t);
                    let v = f(x, t, p, px, pt)?;
                    for k in 0..N {
                        inner[k] += wx * v[k];
                    }
                }
            }
            for k in 0..N {
                acc[k] += wt * inner[k];
            }
        }
    }
    Ok(acc)
}

/// `∫_{t>0} f(t, φ, φ_x, φ_t) dt` along the line `x = speed t`.
pub fn integrate_along_line<T, F>(phi: &Bump<T>, speed: T, quad: WeakQuadrature, mut f: F) -> T
where
    T: Real,
    F: FnMut(T, T, T, T) -> T,
{
    let gl = GaussLegendre::<T>::new(quad.order);
    let cuts: Vec<T> = phi
        .line_crossings(speed)
        .into_iter()
        .map(|t| t.max(T::zero()))
        .collect();
    let mut acc = T::zero();
    if cuts.len() == 2 && cuts[1] > cuts[0] {
        for (t, wt) in panel_nodes(&gl, cuts[0], cuts[1], quad.t_panels) {
            let (p, px, pt) = phi.eval(speed * t, t);
            acc += wt * f(t, p, px, pt);
        }
    }
    acc
}

/// `∫ f(x, φ(x, 0)) dx` on the initial line, split at `x = 0`.
pub fn integrate_initial_line<T, F, const N: usize>(phi: &Bump<T>, quad: WeakQuadrature, mut f: F) -> [T; N]
where
    T: Real,
    F: FnMut(T, T) -> [T; N],
{
    let gl = GaussLegendre::<T>::new(quad.order);
    let mut acc = [T::zero(); N];
    if let Some((xa, xb)) = phi.chord(T::zero()) {
        let x_cuts = sorted_cuts(vec![T::zero()], xa, xb);
        for piece in x_cuts.windows(2) {
            for (x, wx) in panel_nodes(&gl, piece[0], piece[1], quad.x_panels) {
                let v = f(x, phi.phi(x, T::zero()));
                for k in 0..N {
                    acc[k] += wx * v[k];
                }
            }
        }
    }
    acc
}

fn panel_nodes<T: Real>(gl: &GaussLegendre<T>, a: T, b: T, panels: usize) -> Vec<(T, T)> {
    let h = (b - a) / T::c(panels as f64);
    let mut out = Vec::with_capacity(panels * gl.len());
    for k in 0..panels {
        let lo = a + h * T::c(k as f64);
        let hi = if k + 1 == panels { b } else { lo + h };
        out.extend(gl.mapped(lo, hi));
    }
    out
}

/// The fixed family of test functions used for residual checks: bumps of
/// both shapes at a few centres and scales, some touching `t = 0`.
pub fn standard_bumps<T: Real>() -> Vec<Bump<T>> {
    let c = T::c;
    vec![
        Bump::polynomial(c(0.0), c(0.5), c(0.6), c(0.3)),
        Bump::polynomial(c(0.15), c(0.2), c(0.5), c(0.4)),
        Bump::polynomial(c(-0.4), c(0.7), c(0.9), c(0.5)),
        Bump::gaussian(c(0.0), c(0.6), c(0.12), c(0.08)),
        Bump::gaussian(c(0.3), c(0.4), c(0.1), c(0.1)),
    ]
    .into_iter()
    .map(|b| b.expect("valid bump"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pressure::Epsilon;
    use crate::solver::{RiemannData, Wave};
    use crate::waves::Model;

    fn model(eps: f64) -> Model<f64> {
        Model::exp(Epsilon::new(eps).unwrap())
    }

    #[test]
    fn bump_derivatives_match_differences() {
        let h = 1e-6;
        for b in standard_bumps::<f64>() {
            let (x, t) = (b.x0 + 0.3 * b.hx, b.t0 - 0.2 * b.ht);
            let (_, px, pt) = b.eval(x, t);
            let fx = (b.phi(x + h, t) - b.phi(x - h, t)) / (2.0 * h);
            let ft = (b.phi(x, t + h) - b.phi(x, t - h)) / (2.0 * h);
            assert!((px - fx).abs() < 1e-6 * (1.0 + px.abs()), "{px} {fx}");
            assert!((pt - ft).abs() < 1e-6 * (1.0 + pt.abs()), "{pt} {ft}");
        }
    }

    #[test]
    fn bump_vanishes_outside_support() {
        let b = Bump::gaussian(0.0, 1.0, 0.1, 0.1).unwrap();
        assert_eq!(b.phi(0.61, 1.0), 0.0);
        assert!(b.phi(0.59, 1.0) >= 0.0);
        assert!(b.chord(0.39).is_none());
    }

    #[test]
    fn line_crossings_lie_on_circle() {
        let b = Bump::polynomial(0.2, 0.5, 0.6, 0.3).unwrap();
        let ts: Vec<f64> = b.line_crossings(0.7);
        assert_eq!(ts.len(), 2);
        for t in ts {
            let (xs, tt) = ((0.7 * t - 0.2) / 0.6, (t - 0.5) / 0.3);
            assert!((xs * xs + tt * tt - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_fan_has_zero_residual() {
        let m = model(0.1);
        let fan = m.solve(&RiemannData::from_values(0.4, 1.5, 0.4, 1.5).unwrap()).unwrap();
        for b in standard_bumps() {
            assert!(weak_form_residual(&fan, &b).unwrap().total() < 1e-10);
        }
    }

    #[test]
    fn two_shock_fan_is_weak_solution() {
        let m = model(0.01);
        let fan = m
            .solve(&RiemannData::from_values(1.0, 1.0, -1.0, 1.0).unwrap())
            .unwrap();
        for b in standard_bumps() {
            let r = weak_form_residual(&fan, &b).unwrap();
            assert!(r.total() <= 1e-9, "{r:?} for {b:?}");
        }
    }

    #[test]
    fn perturbed_intermediate_state_is_detected() {
        let m = model(0.01);
        let data = RiemannData::from_values(1.0, 1.0, -1.0, 1.0).unwrap();
        let fan = m.solve(&data).unwrap();
        let waves: Vec<_> = fan
            .waves()
            .iter()
            .map(|w| match *w {
                Wave::Constant { state, from, to } if from.is_finite() && to.is_finite() => Wave::Constant {
                    state: State::new(state.u + 0.1, state.rho),
                    from,
                    to,
                },
                other => other,
            })
            .collect();
        let bad = WaveFan::from_waves(m, data, waves);
        let b = Bump::gaussian(0.0, 0.6, 0.12, 0.08).unwrap();
        assert!(weak_form_residual(&bad, &b).unwrap().total() > 1e-3);
    }

    #[test]
    fn rarefaction_and_vacuum_fans_are_weak_solutions() {
        for (eps, d) in [
            (0.01, (0.0, 2.0, 0.0, 1.0)),
            (0.01, (0.0, 1.0, 0.0, 2.0)),
            (1e-3, (-1.0, 1.0, 1.0, 1.0)),
        ] {
            let m = model(eps);
            let fan = m.solve(&RiemannData::from_values(d.0, d.1, d.2, d.3).unwrap()).unwrap();
            for b in standard_bumps() {
                let r = weak_form_residual(&fan, &b).unwrap();
                assert!(r.total() <= 1e-7, "{r:?} for {d:?} {b:?}");
            }
        }
    }
}
