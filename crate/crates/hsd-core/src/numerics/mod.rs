//! Scalar root finders and a scalar adaptive ODE integrator.

mod ode;
mod roots;

pub use ode::{dopri5, OdeStats};
pub use roots::{brent, newton_bisect, RootError};
