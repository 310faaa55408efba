//! Explicit minimizers of anisotropic logarithmic interaction energies.
//!
//! The energy
//!
//! ```text
//! I_alpha(mu) = 1/2 ∬ W_alpha(x - y) dmu(x) dmu(y) + 1/2 ∫ |x|^2 dmu(x),
//! W_alpha(x)  = -log|x| + alpha x1^2/|x|^2,
//! ```
//!
//! is minimized for `0 <= alpha < 1` by the uniform probability measure on the
//! ellipse with semi-axes `sqrt(1 - alpha)` and `sqrt(1 + alpha)`, and for
//! `alpha >= 1` by the semicircle law on the vertical axis. This crate provides
//! the closed-form potentials behind that statement together with three
//! independent ways of checking them:
//!
//! * [`quadrature`]: brute-force integration of every convolution,
//! * [`el_checker`]: grid checks of the Euler-Lagrange conditions,
//! * [`flow_sim`]: an interacting-particle gradient flow that relaxes to the
//!   minimizer.
//!
//! [`aniso_reduce`] maps the general anisotropy `(alpha, beta, gamma)` back to
//! the single-parameter case.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aniso_reduce;
pub mod closed_form;
pub mod complex_core;
pub mod el_checker;
pub mod error;
pub mod flow_sim;
pub mod kernel;
pub mod quadrature;

pub use closed_form::{EllipseDomain, MinimizerDescriptor, MinimizerRegime, Region};
pub use complex_core::{point, ComplexPoint};
pub use error::{Error, Result};
pub use kernel::{AnisotropyStrength, GeneralAnisotropy, Regime};
