//! Explicit potentials of uniform measures on ellipses.
//!
//! For `b >= a > 0` and `mu_{a,b} = chi_{Ω(a,b)}/(π a b)` this module evaluates
//! the Cauchy-type convolutions of `chi_{Ω(a,b)}`, the potential
//! `W_alpha * mu_{a,b}` and its gradient everywhere in the plane, the energy of
//! `mu_{a,b}`, and the explicit minimizer of the energy for every `alpha`.
//!
//! Notation: `lambda = (a - b)/(a + b)`, `c^2 = b^2 - a^2` and
//! `h(z) = 1/(z + sqrt(z^2 + c^2))` with the quadrant-preserving root. The
//! segment `[-ic, ic]` lies inside the ellipse, so exterior formulas never see
//! the cut; they refuse points classified as inside.
//!
//! Inputs with `a > b` are rejected by the plain evaluators and handled by the
//! `*_swapped` variants, which use `W_alpha(x1, x2) = W_{-alpha}(x2, x1) + alpha`.

use serde::{Deserialize, Serialize};

use crate::complex_core::{branch_sqrt, h_func, h_prime, point, ComplexPoint};
use crate::error::{ensure_finite, Error, Result};
use crate::kernel::AnisotropyStrength;

/// Half-width of the band `| x1^2/a^2 + x2^2/b^2 - 1 | <= eps` treated as the boundary.
pub const BOUNDARY_BAND: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Inside,
    Boundary,
    Outside,
}

/// The open region `x1^2/a^2 + x2^2/b^2 < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseDomain {
    a: f64,
    b: f64,
}

impl EllipseDomain {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite("ellipse semi-axes"));
        }
        if a <= 0.0 || b <= 0.0 {
            return Err(Error::Domain(format!("semi-axes must be positive, got ({a}, {b})")));
        }
        Ok(Self { a, b })
    }

    pub fn disk(r: f64) -> Result<Self> {
        Self::new(r, r)
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// `(a - b)/(a + b)`, in `(-1, 0]` when `b >= a`.
    #[inline]
    pub fn lambda(&self) -> f64 {
        (self.a - self.b) / (self.a + self.b)
    }

    /// `b^2 - a^2`.
    #[inline]
    pub fn c2(&self) -> f64 {
        (self.b - self.a) * (self.b + self.a)
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.a * self.b
    }

    /// Whether `b >= a`, the orientation the closed forms assume.
    pub fn is_canonical(&self) -> bool {
        self.b >= self.a
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a }
    }

    /// `x1^2/a^2 + x2^2/b^2`.
    pub fn level(&self, z: ComplexPoint) -> f64 {
        let (u, v) = (z.re / self.a, z.im / self.b);
        u * u + v * v
    }

    pub fn classify(&self, z: ComplexPoint) -> Region {
        self.classify_with_band(z, BOUNDARY_BAND)
    }

    pub fn classify_with_band(&self, z: ComplexPoint, band: f64) -> Region {
        let q = self.level(z) - 1.0;
        if q < -band {
            Region::Inside
        } else if q <= band {
            Region::Boundary
        } else {
            Region::Outside
        }
    }

    /// `(a cos θ, b sin θ)`.
    pub fn boundary_point(&self, theta: f64) -> ComplexPoint {
        point(self.a * theta.cos(), self.b * theta.sin())
    }

    /// Upper bound on the Euclidean distance from `z` to the boundary, measured
    /// along the ray through the centre.
    pub fn radial_boundary_distance(&self, z: ComplexPoint) -> f64 {
        let q = self.level(z).sqrt();
        if q == 0.0 {
            return self.a.min(self.b);
        }
        (z - z / q).norm()
    }

    fn require_canonical(&self) -> Result<()> {
        if self.is_canonical() {
            Ok(())
        } else {
            Err(Error::AxisOrder { a: self.a, b: self.b })
        }
    }

    fn h(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        h_func(z, self.c2())
    }

    fn h_prime(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        h_prime(z, self.c2())
    }
}

fn exterior_only(z: ComplexPoint, e: &EllipseDomain) -> Result<()> {
    ensure_finite(z, "evaluation point")?;
    e.require_canonical()?;
    match e.classify(z) {
        Region::Inside => {
            Err(Error::Domain(format!("exterior formula evaluated at interior point {z} of Ω({}, {})", e.a, e.b)))
        }
        _ => Ok(()),
    }
}

fn interior_side(z: ComplexPoint, e: &EllipseDomain) -> Result<bool> {
    ensure_finite(z, "evaluation point")?;
    e.require_canonical()?;
    Ok(e.classify(z) != Region::Outside)
}

#[inline]
fn swap_xy(z: ComplexPoint) -> ComplexPoint {
    point(z.im, z.re)
}

/// `(1/(π z)) * chi_{Ω(a,b)}`, the Cauchy transform of the ellipse.
pub fn cauchy_transform(z: ComplexPoint, e: &EllipseDomain) -> Result<ComplexPoint> {
    if interior_side(z, e)? {
        Ok(z.conj() - z * e.lambda())
    } else {
        Ok(e.h(z)? * (2.0 * e.a * e.b))
    }
}

/// `(1/(π z̄)) * chi_{Ω(a,b)}`.
pub fn conv_conj(z: ComplexPoint, e: &EllipseDomain) -> Result<ComplexPoint> {
    if interior_side(z, e)? {
        Ok(z - z.conj() * e.lambda())
    } else {
        Ok(e.h(z.conj())? * (2.0 * e.a * e.b))
    }
}

/// `-(1/π)(z/z̄^2) * chi_{Ω(a,b)}`.
pub fn conv_z_over_zbar2(z: ComplexPoint, e: &EllipseDomain) -> Result<ComplexPoint> {
    let lam = e.lambda();
    if interior_side(z, e)? {
        return Ok(z.conj() * (lam * lam) - z * lam);
    }
    let ab2 = 2.0 * e.a * e.b;
    let zb = z.conj();
    let hb = e.h(zb)?;
    Ok((z - zb * lam - hb * ab2) * e.h_prime(zb)? * ab2 - hb * (ab2 * lam))
}

/// Interior gradient of `W_alpha * mu_{a,b}`, a real-linear map of `z`.
pub fn grad_potential_inside(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<ComplexPoint> {
    ensure_finite(z, "evaluation point")?;
    e.require_canonical()?;
    let (al, lam, ab) = (alpha.value(), e.lambda(), e.a * e.b);
    Ok((z * (-1.0 - al * lam) + z.conj() * (lam + 0.5 * al + 0.5 * lam * lam * al)) / ab)
}

/// Exterior gradient of `W_alpha * mu_{a,b}`; defined on the boundary as well.
pub fn grad_potential_outside(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<ComplexPoint> {
    exterior_only(z, e)?;
    let (al, lam, ab) = (alpha.value(), e.lambda(), e.a * e.b);
    let zb = z.conj();
    let hb = e.h(zb)?;
    Ok(-hb * (2.0 + al * lam) + e.h(z)? * al - (zb * lam - z + hb * (2.0 * ab)) * e.h_prime(zb)? * al)
}

/// `∇(W_alpha * mu_{a,b})(z)` as `g1 + i g2`.
pub fn grad_potential(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<ComplexPoint> {
    if interior_side(z, e)? {
        grad_potential_inside(z, e, alpha)
    } else {
        grad_potential_outside(z, e, alpha)
    }
}

/// The gradient assembled from the three convolutions,
/// `(1/ab)[-conv_conj + (alpha/2) cauchy + (alpha/2) conv_z_over_zbar2]`.
pub fn grad_potential_assembled(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<ComplexPoint> {
    let half = 0.5 * alpha.value();
    let sum = -conv_conj(z, e)? + cauchy_transform(z, e)? * half + conv_z_over_zbar2(z, e)? * half;
    Ok(sum / (e.a * e.b))
}

/// The exterior logarithmic potential `H(z)`.
fn log_potential_outside(z: ComplexPoint, e: &EllipseDomain) -> Result<f64> {
    exterior_only(z, e)?;
    let c2 = e.c2();
    let w = branch_sqrt(z, c2)?;
    // -(1/c^2) Re(z w - z^2) rewritten as -Re(z h(z)); identical for c > 0, and
    // reduces to -log|z| for the disk.
    let zh = z * (z + w).inv();
    Ok(-zh.re - (w + z).norm().ln() + std::f64::consts::LN_2 + 0.5)
}

fn log_potential_inside(z: ComplexPoint, e: &EllipseDomain) -> f64 {
    let (a, b) = (e.a, e.b);
    let (x1, x2) = (z.re, z.im);
    -(b * x1 * x1 + a * x2 * x2) / (a * b * (a + b)) - ((a + b) / 2.0).ln() + 0.5
}

/// `Φ_{a,b} = -log|·| * mu_{a,b}`.
pub fn log_potential(z: ComplexPoint, e: &EllipseDomain) -> Result<f64> {
    if interior_side(z, e)? {
        Ok(log_potential_inside(z, e))
    } else {
        log_potential_outside(z, e)
    }
}

/// Interior potential: a quadratic form plus a constant.
pub fn potential_inside(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<f64> {
    ensure_finite(z, "evaluation point")?;
    e.require_canonical()?;
    let (a, b, al) = (e.a, e.b, alpha.value());
    let s = a + b;
    let (x1, x2) = (z.re, z.im);
    Ok((-a - b + al * b) / (a * s * s) * x1 * x1 - (a + b + al * a) / (b * s * s) * x2 * x2 - (s / 2.0).ln()
        + 0.5
        + al * a / s)
}

/// Exterior potential `H(z) + alpha Re(h(z) z̄ - ab h(z̄)^2 - lambda h(z̄) z̄) + alpha a/(a+b)`.
pub fn potential_outside(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<f64> {
    let hz = log_potential_outside(z, e)?;
    let (a, b, al, lam) = (e.a, e.b, alpha.value(), e.lambda());
    let zb = z.conj();
    let hb = e.h(zb)?;
    let aniso = e.h(z)? * zb - hb * hb * (a * b) - hb * zb * lam;
    Ok(hz + al * aniso.re + al * a / (a + b))
}

/// `(W_alpha * mu_{a,b})(z)`.
pub fn potential(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<f64> {
    if interior_side(z, e)? {
        potential_inside(z, e, alpha)
    } else {
        potential_outside(z, e, alpha)
    }
}

fn negated(alpha: AnisotropyStrength) -> AnisotropyStrength {
    AnisotropyStrength::new(-alpha.value()).expect("negation of a finite value is finite")
}

/// [`potential`] for any axis order; ellipses with `a > b` are evaluated in
/// exchanged coordinates.
pub fn potential_swapped(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<f64> {
    if e.is_canonical() {
        potential(z, e, alpha)
    } else {
        Ok(potential(swap_xy(z), &e.swapped(), negated(alpha))? + alpha.value())
    }
}

/// [`grad_potential`] for any axis order.
pub fn grad_potential_swapped(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<ComplexPoint> {
    if e.is_canonical() {
        grad_potential(z, e, alpha)
    } else {
        Ok(swap_xy(grad_potential(swap_xy(z), &e.swapped(), negated(alpha))?))
    }
}

fn require_ellipse_regime(alpha: AnisotropyStrength) -> Result<f64> {
    let al = alpha.value();
    if (0.0..1.0).contains(&al) {
        Ok(al)
    } else {
        Err(Error::Domain(format!("alpha must lie in [0, 1), got {al}")))
    }
}

/// The Euler-Lagrange constant `C_alpha`, transcribed directly.
pub fn c_alpha(alpha: AnisotropyStrength) -> Result<f64> {
    let al = require_ellipse_regime(alpha)?;
    let (p, q) = ((1.0 - al).sqrt(), (1.0 + al).sqrt());
    Ok(0.5 - ((p + q) / 2.0).ln() + al * p / (p + q))
}

/// The minimal energy `I_alpha(mu_alpha)`, transcribed directly.
pub fn min_energy(alpha: AnisotropyStrength) -> Result<f64> {
    let al = require_ellipse_regime(alpha)?;
    let (p, q) = ((1.0 - al).sqrt(), (1.0 + al).sqrt());
    Ok(0.375 - 0.5 * ((p + q) / 2.0).ln() + 0.5 * al * p / (p + q))
}

/// Second moments `(E[x1^2], E[x2^2]) = (a^2/4, b^2/4)` of `mu_{a,b}`.
pub fn second_moments(e: &EllipseDomain) -> (f64, f64) {
    (e.a * e.a / 4.0, e.b * e.b / 4.0)
}

/// `I_alpha(mu_{a,b})` from the interior potential and the second moments.
pub fn ellipse_energy(e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<f64> {
    e.require_canonical()?;
    let (a, b, al) = (e.a, e.b, alpha.value());
    let s = a + b;
    let k1 = (-a - b + al * b) / (a * s * s);
    let k2 = -(a + b + al * a) / (b * s * s);
    let (m1, m2) = second_moments(e);
    Ok(0.5 * (1.0 + k1) * m1 + 0.5 * (1.0 + k2) * m2 - 0.5 * (s / 2.0).ln() + 0.25 + 0.5 * al * a / s)
}

/// [`ellipse_energy`] for any axis order: `I_alpha(mu_{a,b}) = I_{-alpha}(mu_{b,a}) + alpha/2`.
pub fn ellipse_energy_swapped(e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<f64> {
    if e.is_canonical() {
        ellipse_energy(e, alpha)
    } else {
        Ok(ellipse_energy(&e.swapped(), negated(alpha))? + 0.5 * alpha.value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimizerRegime {
    Ellipse,
    Semicircle,
    SwappedEllipse,
    SwappedSemicircle,
}

/// The unique minimizer of `I_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimizerDescriptor {
    pub regime: MinimizerRegime,
    /// Support of the uniform measure in the ellipse regimes.
    pub ellipse: Option<EllipseDomain>,
    /// Unit direction of the support segment in the semicircle regimes.
    pub axis: Option<[f64; 2]>,
    /// Half-length of the support segment in the semicircle regimes.
    pub radius: Option<f64>,
}

impl MinimizerDescriptor {
    pub fn is_singular(&self) -> bool {
        self.ellipse.is_none()
    }

    /// Predicted `(E[x1^2], E[x2^2])`; the semicircle law on a segment of
    /// half-length `sqrt 2` has variance `1/2` along it.
    pub fn second_moments(&self) -> (f64, f64) {
        match (self.ellipse, self.axis) {
            (Some(e), _) => second_moments(&e),
            (None, Some([u1, u2])) => {
                let r = self.radius.unwrap_or(std::f64::consts::SQRT_2);
                let var = r * r / 4.0;
                (var * u1 * u1, var * u2 * u2)
            }
            (None, None) => unreachable!("singular minimizers always carry an axis"),
        }
    }
}

/// The minimizer of `I_alpha` for any real `alpha`.
pub fn minimizer(alpha: f64) -> Result<MinimizerDescriptor> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite("alpha"));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let d = if alpha >= 1.0 {
        MinimizerDescriptor {
            regime: MinimizerRegime::Semicircle,
            ellipse: None,
            axis: Some([0.0, 1.0]),
            radius: Some(sqrt2),
        }
    } else if alpha <= -1.0 {
        MinimizerDescriptor {
            regime: MinimizerRegime::SwappedSemicircle,
            ellipse: None,
            axis: Some([1.0, 0.0]),
            radius: Some(sqrt2),
        }
    } else {
        let e = EllipseDomain::new((1.0 - alpha).sqrt(), (1.0 + alpha).sqrt())?;
        let regime = if alpha >= 0.0 { MinimizerRegime::Ellipse } else { MinimizerRegime::SwappedEllipse };
        MinimizerDescriptor { regime, ellipse: Some(e), axis: None, radius: None }
    };
    Ok(d)
}

/// `Ω(sqrt(1 - alpha), sqrt(1 + alpha))` for `alpha` in `[0, 1)`.
pub fn minimizer_ellipse(alpha: AnisotropyStrength) -> Result<EllipseDomain> {
    let al = require_ellipse_regime(alpha)?;
    EllipseDomain::new((1.0 - al).sqrt(), (1.0 + al).sqrt())
}

/// Density of the semicircle law `(1/π) sqrt(2 - t^2)` on `(-sqrt 2, sqrt 2)`.
pub fn semicircle_density(t: f64) -> f64 {
    let s = 2.0 - t * t;
    if s > 0.0 {
        s.sqrt() / std::f64::consts::PI
    } else {
        0.0
    }
}

/// `|z^2| + |z^2 + c^2| - (a^2 + b^2)`: zero on the boundary, nonnegative outside.
pub fn foci_level(z: ComplexPoint, e: &EllipseDomain) -> Result<f64> {
    ensure_finite(z, "evaluation point")?;
    e.require_canonical()?;
    let z2 = z * z;
    Ok(z2.norm() + (z2 + e.c2()).norm() - (e.a * e.a + e.b * e.b))
}

/// `((|z^2 + 2 alpha| + |z^2| - 2)/(2 |z^2 + 2 alpha|)) Re(z̄ sqrt(z^2 + 2 alpha))`
/// outside the minimizing ellipse. It equals `Re(z̄ (∇(W_alpha * mu_alpha)(z) + z))`.
pub fn el2_integrand(z: ComplexPoint, alpha: AnisotropyStrength) -> Result<f64> {
    let al = require_ellipse_regime(alpha)?;
    let e = minimizer_ellipse(alpha)?;
    exterior_only(z, &e)?;
    let c2 = 2.0 * al;
    let z2 = z * z;
    let m = (z2 + c2).norm();
    let factor = (m + z2.norm() - 2.0) / (2.0 * m);
    let w = branch_sqrt(z, c2)?;
    Ok(factor * (z.conj() * w).re)
}
