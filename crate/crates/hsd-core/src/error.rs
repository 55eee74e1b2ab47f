use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cavitation: 1 - tau2*B = {value:e} is not positive")]
    Cavitation { value: f64 },
    #[error("loss of hyperbolicity: discriminant {disc:e}, denominator {denom:e}")]
    Degeneracy { disc: f64, denom: f64 },
    #[error("wave curve: {0}")]
    CurveDomain(String),
    #[error("strength {alpha} outside window ({lo}, {hi})")]
    Strength { alpha: f64, lo: f64, hi: f64 },
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("Rankine-Hugoniot residual {residual:e} exceeds tolerance")]
    InvalidShock { residual: f64 },
    #[error("Riemann solver did not converge (last iterate {last:?}, residual {residual:e})")]
    Solver { last: (f64, f64), residual: f64 },
    #[error("boundary solver: {0}")]
    Boundary(String),
    #[error("outside the fan support: {0}")]
    OutOfDomain(String),
    #[error("front count {count} exceeds the cap at x = {x}")]
    Blowup { count: usize, x: f64 },
    #[error("event scheduling: {0}")]
    Scheduling(String),
    #[error("input: {0}")]
    Input(String),
    #[error("L1 integral diverges: profiles differ on an infinite tail")]
    DivergentIntegral,
}
