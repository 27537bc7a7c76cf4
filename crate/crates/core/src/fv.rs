//! First-order Lax-Friedrichs finite-volume solver, used as an independent
//! reference for the exact solutions.
//!
//! The conserved variables are `(u, rho)` with flux
//! `(u²/2 + eps p(rho), rho u)`. Boundaries use ghost cells copying the
//! boundary values, so the boundary fluxes are the physical fluxes of the
//! end cells and are accumulated to close the mass balance.

use crate::error::{Error, Result};
use crate::pressure::PressureLaw;
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;
use crate::solver::RiemannData;
use crate::waves::{Model, State};
use crate::weak::SelfSimilar;

/// Uniform grid and run length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D<T> {
    pub x_min: T,
    pub x_max: T,
    pub n_cells: usize,
    pub cfl: T,
    pub t_end: T,
}

impl<T: Real> Grid1D<T> {
    pub fn new(x_min: T, x_max: T, n_cells: usize, cfl: T, t_end: T) -> Result<Self> {
        if n_cells < 16 {
            return Err(Error::InvalidGrid("at least 16 cells are required"));
        }
        if !(cfl > T::zero() && cfl < T::one()) {
            return Err(Error::InvalidGrid("cfl must lie in (0, 1)"));
        }
        if !(x_min < T::zero() && T::zero() < x_max) {
            return Err(Error::InvalidGrid("domain must satisfy x_min < 0 < x_max"));
        }
        if !(t_end > T::zero()) || !t_end.is_finite() {
            return Err(Error::InvalidGrid("t_end must be positive and finite"));
        }
        Ok(Self {
            x_min,
            x_max,
            n_cells,
            cfl,
            t_end,
        })
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / T::c(self.n_cells as f64)
    }

    pub fn center(&self, i: usize) -> T {
        self.x_min + self.dx() * (T::c(i as f64) + T::half())
    }
}

/// Cell averages at `t_end` and run diagnostics.
#[derive(Debug, Clone)]
pub struct GridSolution<T> {
    pub grid: Grid1D<T>,
    pub u: Vec<T>,
    pub rho: Vec<T>,
    /// Time steps taken, in order.
    pub dt_history: Vec<T>,
    pub mass_initial: T,
    pub mass_final: T,
    /// Net mass that entered through the two boundaries.
    pub mass_inflow: T,
    pub u_total_initial: T,
    pub u_total_final: T,
    pub u_inflow: T,
}

impl<T: Real> GridSolution<T> {
    /// `|M(t_end) - M(0) - inflow| / M(0)` for the density.
    pub fn mass_defect(&self) -> T {
        (self.mass_final - self.mass_initial - self.mass_inflow).abs() / self.mass_initial.abs()
    }

    /// Same balance for the velocity variable, relative to its total variation
    /// scale `∫|u|`.
    pub fn u_balance_defect(&self) -> T {
        let scale: T = self.u.iter().map(|v| v.abs()).sum::<T>() * self.grid.dx();
        (self.u_total_final - self.u_total_initial - self.u_inflow).abs() / scale.max(T::epsilon())
    }

    pub fn min_density(&self) -> T {
        self.rho.iter().fold(T::infinity(), |m, &v| m.min(v))
    }

    /// Index and value of the densest cell.
    pub fn max_density(&self) -> (usize, T) {
        self.rho.iter().enumerate().fold(
            (0, T::neg_infinity()),
            |(k, m), (i, &v)| if v > m { (i, v) } else { (k, m) },
        )
    }
}

/// Compensated sum.
fn neumaier<T: Real>(values: impl Iterator<Item = T>) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn initial_average<T: Real>(data: &RiemannData<T>, a: T, b: T) -> State<T> {
    if b <= T::zero() {
        data.left
    } else if a >= T::zero() {
        data.right
    } else {
        let wl = -a / (b - a);
        let wr = T::one() - wl;
        State::new(
            wl * data.left.u + wr * data.right.u,
            wl * data.left.rho + wr * data.right.rho,
        )
    }
}

fn max_speed<T: Real, P: PressureLaw<T>>(model: &Model<T, P>, u: &[T], rho: &[T]) -> Result<T> {
    let sq = model.eps().sqrt();
    let mut m = T::zero();
    for (&ui, &ri) in u.iter().zip(rho) {
        let c = if ri > T::zero() {
            sq * model.law().sound_speed(ri)?
        } else {
            T::zero()
        };
        m = m.max(ui.abs() + c);
    }
    Ok(m)
}

pub fn lax_friedrichs_run<T: Real, P: PressureLaw<T>>(
    model: &Model<T, P>,
    data: &RiemannData<T>,
    grid: &Grid1D<T>,
) -> Result<GridSolution<T>> {
    let n = grid.n_cells;
    let dx = grid.dx();
    let mut u = Vec::with_capacity(n);
    let mut rho = Vec::with_capacity(n);
    for i in 0..n {
        let a = grid.x_min + dx * T::c(i as f64);
        let s = initial_average(data, a, a + dx);
        u.push(s.u);
        rho.push(s.rho);
    }
    let reach = grid.x_min.abs().min(grid.x_max);
    if max_speed(model, &u, &rho)? * grid.t_end >= reach {
        return Err(Error::BoundaryReached {
            t: grid.t_end.to_f64_lossy(),
        });
    }
    let (u0_left, u0_right) = (u[0], u[n - 1]);
    let (r0_left, r0_right) = (rho[0], rho[n - 1]);

    let mass_initial = neumaier(rho.iter().map(|&r| r * dx));
    let u_total_initial = neumaier(u.iter().map(|&v| v * dx));
    let mut mass_inflow = Vec::new();
    let mut u_inflow = Vec::new();
    let mut dt_history = Vec::new();
    let mut f1 = vec![T::zero(); n];
    let mut f2 = vec![T::zero(); n];
    let mut g1 = vec![T::zero(); n + 1];
    let mut g2 = vec![T::zero(); n + 1];
    let mut t = T::zero();
    let mut step = 0usize;

    while t < grid.t_end {
        let speed = max_speed(model, &u, &rho)?;
        let mut dt = if speed > T::zero() {
            grid.cfl * dx / speed
        } else {
            grid.t_end - t
        };
        if t + dt >= grid.t_end {
            dt = grid.t_end - t;
        }
        for i in 0..n {
            let (a, b) = model.flux(State::new(u[i], rho[i].max(T::zero())))?;
            f1[i] = a;
            f2[i] = b;
        }
        // interface i sits between cells i-1 and i; ghosts copy the end cells
        let k = dx / (T::two() * dt);
        g1[0] = f1[0];
        g2[0] = f2[0];
        g1[n] = f1[n - 1];
        g2[n] = f2[n - 1];
        for i in 1..n {
            g1[i] = (f1[i - 1] + f1[i]) * T::half() - k * (u[i] - u[i - 1]);
            g2[i] = (f2[i - 1] + f2[i]) * T::half() - k * (rho[i] - rho[i - 1]);
        }
        let lam = dt / dx;
        for i in 0..n {
            u[i] -= lam * (g1[i + 1] - g1[i]);
            rho[i] -= lam * (g2[i + 1] - g2[i]);
            if !u[i].is_finite() || !rho[i].is_finite() {
                return Err(Error::BlowUp { step, cell: i });
            }
        }
        mass_inflow.push(dt * (g2[0] - g2[n]));
        u_inflow.push(dt * (g1[0] - g1[n]));
        dt_history.push(dt);
        t += dt;
        step += 1;
    }

    let tol = T::c(1e-12);
    let unchanged = |v: T, v0: T| (v - v0).abs() <= tol * (T::one() + v0.abs());
    if !unchanged(u[0], u0_left)
        || !unchanged(u[n - 1], u0_right)
        || !unchanged(rho[0], r0_left)
        || !unchanged(rho[n - 1], r0_right)
    {
        return Err(Error::BoundaryReached {
            t: grid.t_end.to_f64_lossy(),
        });
    }

    Ok(GridSolution {
        grid: *grid,
        mass_final: neumaier(rho.iter().map(|&r| r * dx)),
        u_total_final: neumaier(u.iter().map(|&v| v * dx)),
        u,
        rho,
        dt_history,
        mass_initial,
        mass_inflow: neumaier(mass_inflow.into_iter()),
        u_total_initial,
        u_inflow: neumaier(u_inflow.into_iter()),
    })
}

/// L¹ distances between the cell averages and the exact solution at
/// `t_end`, with 3-point Gauss sampling per cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Error<T> {
    pub u: T,
    pub rho: T,
    /// `u` divided by `∫|u_exact|`.
    pub u_relative: T,
    /// `rho` divided by `∫|rho_exact|`.
    pub rho_relative: T,
}

pub fn compare_l1<T: Real, S: SelfSimilar<T> + ?Sized>(exact: &S, sol: &GridSolution<T>) -> Result<L1Error<T>> {
    let gl = GaussLegendre::<T>::new(3);
    let dx = sol.grid.dx();
    let t = sol.grid.t_end;
    let (mut eu, mut er, mut nu, mut nr) = (T::zero(), T::zero(), T::zero(), T::zero());
    for i in 0..sol.grid.n_cells {
        let a = sol.grid.x_min + dx * T::c(i as f64);
        for (x, w) in gl.mapped(a, a + dx) {
            let s = exact.state_at(x / t)?;
            eu += w * (sol.u[i] - s.u).abs();
            er += w * (sol.rho[i] - s.rho).abs();
            nu += w * s.u.abs();
            nr += w * s.rho.abs();
        }
    }
    Ok(L1Error {
        u: eu,
        rho: er,
        u_relative: eu / nu.max(T::min_positive_value()),
        rho_relative: er / nr.max(T::min_positive_value()),
    })
}
