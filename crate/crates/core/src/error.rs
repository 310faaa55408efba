use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the evaluation, quadrature and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("point {z} lies strictly inside the branch cut [-i{c}, i{c}]")]
    BranchCut { z: Complex64, c: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("ellipse axes must satisfy b >= a (got a = {a}, b = {b}); use the swapped evaluation")]
    AxisOrder { a: f64, b: f64 },

    #[error("particles {i} and {j} collided (distance {distance:e})")]
    Collision { i: usize, j: usize, distance: f64 },

    #[error("quadrature refinement changed the result by {delta:e} (> {tolerance:e})")]
    ToleranceNotReached { delta: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(z: Complex64, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
