use thiserror::Error;

/// Failures raised by the solvers. Numeric payloads are carried as `f64`
/// regardless of the scalar type used for the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("density {rho} exceeds the overflow bound {bound}; use the log-domain path")]
    OverflowAtVanishingEpsilon { rho: f64, bound: f64 },

    #[error("equal densities ({rho}) on both sides of a jump; use the velocity-equation speed")]
    DegenerateJump { rho: f64 },

    #[error(
        "epsilon {eps} is too large for a two-shock solution: the 1-shock and 2-shock \
         branches do not cross on (u_r, u_l)"
    )]
    EpsilonTooLarge { eps: f64 },

    #[error(
        "epsilon {eps} is too large for a vacuum solution: rarefactions overlap \
         (u1(0) = {u1} >= u2(0) = {u2})"
    )]
    RarefactionOverlap { eps: f64, u1: f64, u2: f64 },

    #[error("small-shock denominator eps - (u_l - u_r)/2 = {denominator} is not positive")]
    DenominatorVanishing { denominator: f64 },

    #[error("u_l - u_r = {jump} is outside the bounded-variation window (0, {eps}]")]
    OutsideBvWindow { jump: f64, eps: f64 },

    #[error("u_l - u_r = {jump} does not exceed eps = {eps}; no delta shock in this regime")]
    InsideBvWindow { jump: f64, eps: f64 },

    #[error("non-finite cell value at step {step} (cell {cell})")]
    BlowUp { step: usize, cell: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),

    #[error("waves reached the domain boundary by t = {t}")]
    BoundaryReached { t: f64 },

    #[error("root finder failed to bracket: {0}")]
    NoBracket(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
