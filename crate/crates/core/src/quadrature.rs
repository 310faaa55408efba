//! Brute-force integration of convolutions against `mu_{a,b}`.
//!
//! Nothing here uses the closed forms: each kernel is integrated pointwise
//! over the ellipse. The ellipse is mapped to the unit disk (`ξ = (a v1, b v2)`)
//! and the disk is described in polar coordinates centred at the image of the
//! evaluation point, so `z - ξ = -s (a cos ψ, b sin ψ)`. The polar Jacobian `s`
//! cancels the `1/|z - ξ|` singularities and tames the logarithm.
//!
//! * interior points: periodic midpoint rule in `ψ`, Gauss-Legendre in `t`
//!   with `s = S(ψ) t^2`;
//! * exterior points: the chords through the disk are parametrised by their
//!   offset `sin θ` from the centre, which removes the square-root behaviour at
//!   the two tangent directions; Gauss-Legendre in both `θ` and `t`.

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::closed_form::EllipseDomain;
use crate::complex_core::ComplexPoint;
use crate::error::{ensure_finite, Error, Result};
use crate::kernel::{grad_w_alpha, w_alpha, AnisotropyStrength};

/// Kernels understood by [`conv_oracle`]. All are evaluated at `w = z - ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelId {
    /// `-log|w|`, giving the logarithmic potential.
    Log,
    /// `1/w`.
    Cauchy,
    /// `1/w̄`.
    ConjCauchy,
    /// `-w/w̄^2`.
    ZOverZbar2,
    /// `W_alpha(w)`.
    WAlpha,
    /// `∇W_alpha(w)`.
    GradWAlpha,
}

impl KernelId {
    pub const ALL: [KernelId; 6] = [
        KernelId::Log,
        KernelId::Cauchy,
        KernelId::ConjCauchy,
        KernelId::ZOverZbar2,
        KernelId::WAlpha,
        KernelId::GradWAlpha,
    ];

    /// Whether the kernel is real-valued (the result then sits in `re`).
    pub fn is_scalar(self) -> bool {
        matches!(self, KernelId::Log | KernelId::WAlpha)
    }

    fn eval(self, w: Complex64, alpha: AnisotropyStrength) -> Complex64 {
        match self {
            KernelId::Log => Complex64::new(-w.norm().ln(), 0.0),
            KernelId::Cauchy => w.inv(),
            KernelId::ConjCauchy => w.conj().inv(),
            KernelId::ZOverZbar2 => {
                let wb = w.conj();
                -w / (wb * wb)
            }
            KernelId::WAlpha => Complex64::new(w_alpha(w, alpha), 0.0),
            // Nodes never coincide with z, so w != 0.
            KernelId::GradWAlpha => grad_w_alpha(w, alpha).unwrap_or_default(),
        }
    }
}

/// Node counts and sampling parameters.
///
/// Monte Carlo runs are bit-reproducible for a fixed `rng_seed` and
/// `mc_samples` (ChaCha8 stream, sequential accumulation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    pub mc_samples: usize,
    pub rng_seed: u64,
    /// When set, [`conv_oracle`] also integrates with doubled node counts and
    /// fails if the two results differ by more than this (absolute) amount.
    pub refine_tolerance: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { radial_nodes: 32, angular_nodes: 256, mc_samples: 1_000_000, rng_seed: 0x5eed, refine_tolerance: None }
    }
}

pub const MIN_NODES: usize = 16;

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radial_nodes < MIN_NODES || self.angular_nodes < MIN_NODES {
            return Err(Error::Domain(format!(
                "quadrature needs at least {MIN_NODES} nodes per direction (got {} x {})",
                self.radial_nodes, self.angular_nodes
            )));
        }
        Ok(())
    }

    pub fn refined(&self) -> Self {
        Self { radial_nodes: 2 * self.radial_nodes, angular_nodes: 2 * self.angular_nodes, ..*self }
    }
}

/// Gauss-Legendre rule moved to `(0, 1)`.
fn unit_rule(n: usize) -> Vec<(f64, f64)> {
    GaussLegendre::new(n)
        .expect("node count validated")
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect()
}

/// `(1/(π a b)) ∫_{Ω(a,b)} K(z - ξ) dξ`.
///
/// Scalar kernels return their value in the real part. Compare with the
/// closed forms via `cauchy_transform = a b · oracle(Cauchy)` and so on.
pub fn conv_oracle(
    kernel: KernelId,
    z: ComplexPoint,
    e: &EllipseDomain,
    alpha: AnisotropyStrength,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    ensure_finite(z, "quadrature point")?;
    cfg.validate()?;
    let coarse = integrate(kernel, z, e, alpha, cfg.radial_nodes, cfg.angular_nodes);
    let Some(tolerance) = cfg.refine_tolerance else {
        return Ok(coarse);
    };
    let fine_cfg = cfg.refined();
    let fine = integrate(kernel, z, e, alpha, fine_cfg.radial_nodes, fine_cfg.angular_nodes);
    let delta = (fine - coarse).norm();
    if delta > tolerance {
        return Err(Error::ToleranceNotReached { delta, tolerance });
    }
    Ok(fine)
}

fn integrate(
    kernel: KernelId,
    z: ComplexPoint,
    e: &EllipseDomain,
    alpha: AnisotropyStrength,
    radial: usize,
    angular: usize,
) -> Complex64 {
    let (a, b) = (e.a(), e.b());
    let u0 = Complex64::new(z.re / a, z.im / b);
    let d2 = u0.norm_sqr();
    let radial_rule = unit_rule(radial);
    // Kernel argument for a step s in direction ψ of the disk.
    let arg = |s: f64, dir: Complex64| Complex64::new(-s * a * dir.re, -s * b * dir.im);

    let mut total = Complex64::new(0.0, 0.0);
    if d2 <= 1.0 {
        let dpsi = std::f64::consts::TAU / angular as f64;
        for k in 0..angular {
            let psi = (k as f64 + 0.5) * dpsi;
            let dir = Complex64::from_polar(1.0, psi);
            let proj = u0.re * dir.re + u0.im * dir.im;
            let reach = -proj + (proj * proj + 1.0 - d2).max(0.0).sqrt();
            if reach <= 0.0 {
                continue;
            }
            let mut ray = Complex64::new(0.0, 0.0);
            for &(t, wt) in &radial_rule {
                let s = reach * t * t;
                // ds = 2 S t dt, polar Jacobian s.
                ray += kernel.eval(arg(s, dir), alpha) * (s * 2.0 * reach * t * wt);
            }
            total += ray * dpsi;
        }
    } else {
        let d = d2.sqrt();
        let toward_centre = (-u0).arg();
        let angular_rule = GaussLegendre::new(angular).expect("node count validated");
        for &(x, wx) in angular_rule.as_node_weight_pairs() {
            let theta = 0.5 * std::f64::consts::PI * x;
            let wtheta = 0.5 * std::f64::consts::PI * wx;
            let (p, half_chord) = theta.sin_cos();
            let foot = (d2 - p * p).sqrt();
            let psi = toward_centre + (p / d).asin();
            let dir = Complex64::from_polar(1.0, psi);
            let dpsi_dtheta = half_chord / foot;
            let near = foot - half_chord;
            let mut ray = Complex64::new(0.0, 0.0);
            for &(t, wt) in &radial_rule {
                let s = near + 2.0 * half_chord * t;
                ray += kernel.eval(arg(s, dir), alpha) * (s * 2.0 * half_chord * wt);
            }
            total += ray * (wtheta * dpsi_dtheta);
        }
    }
    total / std::f64::consts::PI
}

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub standard_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyEstimate {
    pub energy: McEstimate,
    /// `E[x1^2]` under `mu_{a,b}`.
    pub m11: McEstimate,
    /// `E[x2^2]` under `mu_{a,b}`.
    pub m22: McEstimate,
    pub samples: usize,
}

#[derive(Default)]
struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn estimate(&self) -> McEstimate {
        let var = if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 };
        McEstimate { mean: self.mean, standard_error: (var / self.n as f64).sqrt() }
    }
}

/// Uniform sample of `Ω(a, b)`.
pub fn sample_uniform<R: Rng>(rng: &mut R, e: &EllipseDomain) -> ComplexPoint {
    let r = rng.gen::<f64>().sqrt();
    let phi = rng.gen::<f64>() * std::f64::consts::TAU;
    Complex64::new(e.a() * r * phi.cos(), e.b() * r * phi.sin())
}

/// Monte Carlo estimate of `I_alpha(mu_{a,b}) = 1/2 E[W_alpha(X - Y)] + 1/2 E[|X|^2]`
/// with `X, Y` independent and uniform on the ellipse.
pub fn energy_oracle(e: &EllipseDomain, alpha: AnisotropyStrength, cfg: &QuadratureConfig) -> Result<EnergyEstimate> {
    if cfg.mc_samples < 2 {
        return Err(Error::Domain("energy_oracle needs at least two samples".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let (mut energy, mut m11, mut m22) = (Welford::default(), Welford::default(), Welford::default());
    for _ in 0..cfg.mc_samples {
        let x = sample_uniform(&mut rng, e);
        let mut y = sample_uniform(&mut rng, e);
        while y == x {
            y = sample_uniform(&mut rng, e);
        }
        energy.push(0.5 * w_alpha(x - y, alpha) + 0.25 * (x.norm_sqr() + y.norm_sqr()));
        m11.push(x.re * x.re);
        m22.push(x.im * x.im);
    }
    Ok(EnergyEstimate { energy: energy.estimate(), m11: m11.estimate(), m22: m22.estimate(), samples: cfg.mc_samples })
}
