//! Rotation of `(alpha x1^2 + beta x2^2 + gamma x1 x2)/|x|^2` to the
//! one-parameter form `b̃ y1^2/|y|^2 + const`.
//!
//! The logarithmic part of the kernel is rotation invariant, so minimisers of
//! the general energy are rotated copies of the canonical ones with strength
//! `b̃ = sqrt((beta - alpha)^2 + gamma^2)`, supported around the line `y1 = 0`.

use serde::{Deserialize, Serialize};

use crate::complex_core::{point, ComplexPoint};
use crate::error::{Error, Result};
use crate::kernel::GeneralAnisotropy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictedRegime {
    Ellipse,
    Semicircle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReductionResult {
    /// Row-major `R` with `y = R x`.
    pub rotation: [[f64; 2]; 2],
    pub effective_strength: f64,
    pub additive_constant: f64,
    pub predicted_regime: PredictedRegime,
    /// Unit direction of the line `y1 = 0` in the original coordinates.
    pub support_axis: [f64; 2],
}

impl ReductionResult {
    pub fn apply(&self, x: ComplexPoint) -> ComplexPoint {
        let r = &self.rotation;
        point(r[0][0] * x.re + r[0][1] * x.im, r[1][0] * x.re + r[1][1] * x.im)
    }

    /// Anisotropic part of the kernel rebuilt from the reduced form.
    pub fn reduced_anisotropy(&self, x: ComplexPoint) -> f64 {
        let y = self.apply(x);
        self.effective_strength * y.re * y.re / y.norm_sqr() + self.additive_constant
    }

    /// Expected ratio of the minor to the major eigenvalue of the minimiser's
    /// covariance: `(1 - b̃)/(1 + b̃)` for an ellipse, zero for a segment.
    pub fn covariance_ratio(&self) -> f64 {
        match self.predicted_regime {
            PredictedRegime::Ellipse => (1.0 - self.effective_strength) / (1.0 + self.effective_strength),
            PredictedRegime::Semicircle => 0.0,
        }
    }
}

fn regime(strength: f64) -> PredictedRegime {
    if strength >= 1.0 {
        PredictedRegime::Semicircle
    } else {
        PredictedRegime::Ellipse
    }
}

fn unit(v: [f64; 2]) -> [f64; 2] {
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

pub fn reduce(g: &GeneralAnisotropy) -> ReductionResult {
    let (alpha, beta, gamma) = (g.alpha, g.beta, g.gamma);
    let diff = beta - alpha;
    let strength = diff.hypot(gamma);
    if gamma == 0.0 {
        return if alpha >= beta {
            // alpha x1^2 + beta x2^2 = (alpha - beta) x1^2 + beta |x|^2.
            ReductionResult {
                rotation: [[1.0, 0.0], [0.0, 1.0]],
                effective_strength: strength,
                additive_constant: beta,
                predicted_regime: regime(strength),
                support_axis: [0.0, 1.0],
            }
        } else {
            // = (beta - alpha) x2^2 + alpha |x|^2, and y1 = x2.
            ReductionResult {
                rotation: [[0.0, 1.0], [-1.0, 0.0]],
                effective_strength: strength,
                additive_constant: alpha,
                predicted_regime: regime(strength),
                support_axis: [1.0, 0.0],
            }
        };
    }
    let a_tilde = diff - strength;
    let n2 = a_tilde * a_tilde + gamma * gamma;
    let n = n2.sqrt();
    ReductionResult {
        rotation: [[-a_tilde / n, gamma / n], [-gamma / n, -a_tilde / n]],
        effective_strength: strength,
        additive_constant: beta - strength * gamma * gamma / n2,
        predicted_regime: regime(strength),
        support_axis: unit([gamma, a_tilde]),
    }
}

/// Unit directions of the two lines `x2 = s x1` on which the anisotropic force
/// vanishes, for `s = (beta - alpha + b̃)/gamma` and `s = (beta - alpha - b̃)/gamma`
/// in that order. The second is the support axis of [`reduce`].
pub fn force_zero_lines(g: &GeneralAnisotropy) -> Result<[[f64; 2]; 2]> {
    if g.gamma == 0.0 {
        return Err(Error::Domain("force zero lines are the coordinate axes when gamma = 0; use reduce".into()));
    }
    let diff = g.beta - g.alpha;
    let strength = diff.hypot(g.gamma);
    // (gamma, gamma s) rescaled, which avoids dividing by a small gamma.
    Ok([unit([g.gamma, diff + strength]), unit([g.gamma, diff - strength])])
}

/// Angle in `[0°, 90°]` between two undirected lines.
pub fn line_angle_deg(u: [f64; 2], v: [f64; 2]) -> f64 {
    let dot = (u[0] * v[0] + u[1] * v[1]).abs();
    let cross = u[0] * v[1] - u[1] * v[0];
    cross.abs().atan2(dot).to_degrees()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{force_general, w_general};
    use proptest::prelude::*;

    fn g(a: f64, b: f64, c: f64) -> GeneralAnisotropy {
        GeneralAnisotropy::new(a, b, c).unwrap()
    }

    fn check_rotation(r: &ReductionResult) {
        let m = r.rotation;
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        assert!((det - 1.0).abs() < 1e-12);
        let off = m[0][0] * m[1][0] + m[0][1] * m[1][1];
        assert!(off.abs() < 1e-12);
        assert!((m[0][0].hypot(m[0][1]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_cases() {
        let r = reduce(&g(0.4, 0.1, 0.0));
        assert!((r.effective_strength - 0.3).abs() < 1e-15);
        assert_eq!(r.support_axis, [0.0, 1.0]);
        assert_eq!(r.rotation, [[1.0, 0.0], [0.0, 1.0]]);
        let r = reduce(&g(0.1, 0.4, 0.0));
        assert!((r.effective_strength - 0.3).abs() < 1e-15);
        assert_eq!(r.support_axis, [1.0, 0.0]);
        check_rotation(&r);
        let r = reduce(&g(0.0, 0.0, 0.0));
        assert_eq!(r.effective_strength, 0.0);
        assert_eq!(r.predicted_regime, PredictedRegime::Ellipse);
    }

    #[test]
    fn pure_shear_is_semicircle_on_antidiagonal() {
        let r = reduce(&g(0.0, 0.0, 1.0));
        assert!((r.effective_strength - 1.0).abs() < 1e-15);
        assert_eq!(r.predicted_regime, PredictedRegime::Semicircle);
        // x1 x2/|x|^2 is smallest on x2 = -x1.
        assert!(line_angle_deg(r.support_axis, [1.0, -1.0]) < 1e-9);
        let lines = force_zero_lines(&g(0.0, 0.0, 1.0)).unwrap();
        assert!((lines[0][1] / lines[0][0] - 1.0).abs() < 1e-12);
        assert!((lines[1][1] / lines[1][0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn moderate_case_is_ellipse() {
        let r = reduce(&g(0.0, 0.5, 0.3));
        assert!((r.effective_strength - 0.34f64.sqrt()).abs() < 1e-15);
        assert_eq!(r.predicted_regime, PredictedRegime::Ellipse);
        check_rotation(&r);
    }

    #[test]
    fn zero_lines_example() {
        let gg = g(0.2, 0.7, 0.4);
        let lines = force_zero_lines(&gg).unwrap();
        let root = (0.25f64 + 0.16).sqrt();
        assert!((lines[0][1] / lines[0][0] - (0.5 + root) / 0.4).abs() < 1e-12);
        assert!((lines[1][1] / lines[1][0] - (0.5 - root) / 0.4).abs() < 1e-12);
        for l in lines {
            for t in [0.3, -2.0, 7.0] {
                let f = force_general(point(t * l[0], t * l[1]), &gg).unwrap();
                assert!(f.norm() < 1e-12);
            }
        }
        assert!(force_zero_lines(&g(0.2, 0.7, 0.0)).is_err());
    }

    #[test]
    fn semicircle_threshold_inclusive() {
        assert_eq!(reduce(&g(0.0, 1.0, 0.0)).predicted_regime, PredictedRegime::Semicircle);
        assert_eq!(reduce(&g(0.0, 0.6, 0.8)).predicted_regime, PredictedRegime::Semicircle);
        assert_eq!(reduce(&g(0.0, 0.6, 0.79)).predicted_regime, PredictedRegime::Ellipse);
    }

    proptest! {
        #[test]
        fn reduction_reproduces_kernel(
            a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0,
            x1 in -3.0f64..3.0, x2 in -3.0f64..3.0,
        ) {
            prop_assume!(x1.hypot(x2) > 1e-3);
            let gg = g(a, b, c);
            let r = reduce(&gg);
            check_rotation(&r);
            let x = point(x1, x2);
            let y = r.apply(x);
            prop_assert!((y.norm() - x.norm()).abs() < 1e-12);
            let lhs = w_general(x, &gg);
            let rhs = -0.5 * x.norm_sqr().ln() + r.reduced_anisotropy(x);
            prop_assert!((lhs - rhs).abs() < 1e-12, "{} vs {}", lhs, rhs);
        }

        #[test]
        fn zero_lines_are_rotated_axes(a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0) {
            prop_assume!(c.abs() > 1e-3);
            let gg = g(a, b, c);
            let r = reduce(&gg);
            let lines = force_zero_lines(&gg).unwrap();
            prop_assert!((lines[0][0] * lines[1][0] + lines[0][1] * lines[1][1]).abs() < 1e-12);
            prop_assert!(line_angle_deg(lines[1], r.support_axis) < 1e-6);
            // y1 = 0 and y2 = 0 in original coordinates.
            let m = r.rotation;
            let y2_axis = [m[0][0], m[0][1]];
            prop_assert!(line_angle_deg(lines[0], y2_axis) < 1e-6);
            for l in lines {
                let f = force_general(point(l[0], l[1]), &gg).unwrap();
                prop_assert!(f.norm() < 1e-12);
            }
        }
    }
}
