//! Pointwise interaction kernels.
//!
//! `W_alpha(x) = -1/2 log|x|^2 + alpha x1^2/|x|^2` and its general form
//! `-log|x| + (alpha x1^2 + beta x2^2 + gamma x1 x2)/|x|^2`. Vectors are
//! returned as complex numbers `g1 + i g2`.

use serde::{Deserialize, Serialize};

use crate::complex_core::{perp, ComplexPoint};
use crate::error::{ensure_finite, Error, Result};

/// Which qualitative minimizer a single-parameter kernel produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `0 <= alpha < 1`: uniform measure on an ellipse.
    Ellipse,
    /// `alpha >= 1`: semicircle law on the vertical axis.
    Wall,
    /// `alpha < 0`: handled by exchanging `x1` and `x2`.
    Swapped,
}

/// The anisotropy weight `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AnisotropyStrength(f64);

impl AnisotropyStrength {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() {
            Ok(Self(alpha))
        } else {
            Err(Error::NonFinite("alpha"))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn regime(self) -> Regime {
        if self.0 < 0.0 {
            Regime::Swapped
        } else if self.0 < 1.0 {
            Regime::Ellipse
        } else {
            Regime::Wall
        }
    }
}

/// The triple `(alpha, beta, gamma)` of the quadratic-form anisotropy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralAnisotropy {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl GeneralAnisotropy {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if alpha.is_finite() && beta.is_finite() && gamma.is_finite() {
            Ok(Self { alpha, beta, gamma })
        } else {
            Err(Error::NonFinite("anisotropy coefficients"))
        }
    }

    /// The anisotropic part `(alpha x1^2 + beta x2^2 + gamma x1 x2)/|x|^2`.
    pub fn anisotropy(&self, x: ComplexPoint) -> f64 {
        let (x1, x2) = (x.re, x.im);
        (self.alpha * x1 * x1 + self.beta * x2 * x2 + self.gamma * x1 * x2) / x.norm_sqr()
    }
}

impl From<AnisotropyStrength> for GeneralAnisotropy {
    fn from(a: AnisotropyStrength) -> Self {
        Self { alpha: a.value(), beta: 0.0, gamma: 0.0 }
    }
}

fn nonzero(x: ComplexPoint, what: &'static str) -> Result<()> {
    ensure_finite(x, what)?;
    if x.re == 0.0 && x.im == 0.0 {
        return Err(Error::Domain(format!("{what} is undefined at the origin")));
    }
    Ok(())
}

/// `W_alpha(x)`; `+inf` at the origin.
pub fn w_alpha(x: ComplexPoint, alpha: AnisotropyStrength) -> f64 {
    let r2 = x.norm_sqr();
    if r2 == 0.0 {
        return f64::INFINITY;
    }
    -0.5 * r2.ln() + alpha.value() * x.re * x.re / r2
}

/// `∇W_alpha(x) = -x/|x|^2 + 2 alpha x1 x2 x⊥/|x|^4`.
pub fn grad_w_alpha(x: ComplexPoint, alpha: AnisotropyStrength) -> Result<ComplexPoint> {
    nonzero(x, "grad W_alpha")?;
    let r2 = x.norm_sqr();
    Ok(-x / r2 + perp(x) * (2.0 * alpha.value() * x.re * x.im / (r2 * r2)))
}

/// The same gradient through the Wirtinger form
/// `2 ∂̄W = -1/z̄ + (alpha/2)/z - (alpha/2) z/z̄^2`.
pub fn grad_w_alpha_complex(z: ComplexPoint, alpha: AnisotropyStrength) -> Result<ComplexPoint> {
    nonzero(z, "grad W_alpha")?;
    let a = alpha.value();
    let zb = z.conj();
    Ok(-zb.inv() + z.inv() * (0.5 * a) - z / (zb * zb) * (0.5 * a))
}

/// `W_{alpha,beta,gamma}(x)`; `+inf` at the origin.
pub fn w_general(x: ComplexPoint, g: &GeneralAnisotropy) -> f64 {
    let r2 = x.norm_sqr();
    if r2 == 0.0 {
        return f64::INFINITY;
    }
    -0.5 * r2.ln() + g.anisotropy(x)
}

/// Anisotropic force `F = -∇V_{alpha,beta,gamma}`, always parallel to `x⊥`.
pub fn force_general(x: ComplexPoint, g: &GeneralAnisotropy) -> Result<ComplexPoint> {
    nonzero(x, "anisotropic force")?;
    let (x1, x2) = (x.re, x.im);
    let r2 = x.norm_sqr();
    let q = g.gamma * (x1 * x1 - x2 * x2) + 2.0 * (g.beta - g.alpha) * x1 * x2;
    Ok(perp(x) * (q / (r2 * r2)))
}

/// Full gradient of `W_{alpha,beta,gamma}`: Coulomb part minus the anisotropic force.
pub fn grad_w_general(x: ComplexPoint, g: &GeneralAnisotropy) -> Result<ComplexPoint> {
    let f = force_general(x, g)?;
    Ok(-x / x.norm_sqr() - f)
}

/// Density of the Fourier transform of `W_alpha` away from the origin:
/// `((1 - alpha) xi1^2 + (1 + alpha) xi2^2)/|xi|^4`.
///
/// The full transform carries an extra factor `1/(2π)`, omitted here since
/// only the sign matters.
pub fn fourier_weight(xi: ComplexPoint, alpha: AnisotropyStrength) -> Result<f64> {
    nonzero(xi, "Fourier weight")?;
    let a = alpha.value();
    let r2 = xi.norm_sqr();
    Ok(((1.0 - a) * xi.re * xi.re + (1.0 + a) * xi.im * xi.im) / (r2 * r2))
}
