//! Exact Riemann solutions of the pressure-perturbed pressureless Euler system
//!
//! ```text
//! u_t + (u²/2 + eps p(rho))_x = 0,    rho_t + (rho u)_x = 0,
//! p(rho) = (rho - 1) e^rho + 1,
//! ```
//!
//! and analysis of their `eps -> 0` limit: delta shocks for `u_l > u_r`,
//! vacuum for `u_l < u_r`. Also included are an entropy-pair check, the
//! closed-form solutions of the variant with flux `(u + eps)²/2`, and a
//! Lax-Friedrichs reference solver.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`). The `*64` aliases
//! fix the scalar to `f64`.
//!
//! ```
//! use riemann_limit::{Epsilon, Model, RiemannData};
//!
//! let data = RiemannData::from_values(1.0, 1.0, -1.0, 1.0).unwrap();
//! let model = Model::exp(Epsilon::new(0.01).unwrap());
//! let (star, fan) = model.solve_two_shock(&data).unwrap();
//! assert_eq!(star.u_star, 0.0);
//! assert_eq!(fan.shocks().count(), 2);
//! ```

// `!(a < b)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alt;
pub mod entropy;
pub mod error;
pub mod fv;
pub mod limit;
pub mod pressure;
pub mod quadrature;
pub mod roots;
pub mod scalar;
pub mod solver;
pub mod waves;
pub mod weak;

pub use alt::{
    alt_limit, alt_regime, alt_solve, alt_solve_delta, alt_solve_rarefaction, alt_solve_small_shock,
    alt_solve_small_shock_with, alt_weak_residual, AltRegime, AltWave, AltWaveFan, WindowOrientation,
};
pub use entropy::{
    entropy_limit_sweep, entropy_production_shock, entropy_production_total_limit, eta, q_flux, EntropyRecord,
};
pub use error::{Error, Result};
pub use fv::{compare_l1, lax_friedrichs_run, Grid1D, GridSolution, L1Error};
pub use limit::{
    epsilon_sweep, indicator_delta_pairing, log_domain_rho_star, predicted_limit, weak_measure_error,
    DeltaShockDescriptor, LimitSolution, SweepRecord,
};
pub use pressure::{Epsilon, ExpLaw, PressureLaw};
pub use scalar::Real;
pub use solver::{IntermediateState, RiemannData, Wave, WaveFan};
pub use waves::{Family, Model, ShockJump, State};
pub use weak::{weak_form_residual, Bump, BumpShape, SelfSimilar, WeakResidual};

pub type State64 = State<f64>;
pub type Epsilon64 = Epsilon<f64>;
pub type RiemannData64 = RiemannData<f64>;
pub type Model64 = Model<f64, ExpLaw>;
pub type WaveFan64 = WaveFan<f64, ExpLaw>;
pub type AltWaveFan64 = AltWaveFan<f64>;
pub type SweepRecord64 = SweepRecord<f64>;
pub type LimitSolution64 = LimitSolution<f64>;
pub type Grid1D64 = Grid1D<f64>;
pub type GridSolution64 = GridSolution<f64>;
