//! Complex-plane helpers shared by every closed form.
//!
//! Points of the plane are identified with `z = x1 + i x2`. The one piece of
//! non-trivial arithmetic here is the branch of `sqrt(z^2 + c^2)` that is
//! asymptotic to `z` at infinity and keeps `z` and the root in the same closed
//! quadrant. Its cut is the segment `[-ic, ic]`.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

/// A point of the plane, `x1 + i x2`.
pub type ComplexPoint = Complex64;

#[inline]
pub fn point(x1: f64, x2: f64) -> ComplexPoint {
    Complex64::new(x1, x2)
}

/// `x⊥ = (x2, -x1)`, i.e. `-i z`.
#[inline]
pub fn perp(z: ComplexPoint) -> ComplexPoint {
    Complex64::new(z.im, -z.re)
}

/// True when `z` is strictly inside the cut `(-i sqrt(c2), i sqrt(c2))`.
///
/// For `c2 = 0` the cut degenerates to the origin.
pub fn on_branch_cut(z: ComplexPoint, c2: f64) -> bool {
    if c2 == 0.0 {
        return z.re == 0.0 && z.im == 0.0;
    }
    z.re == 0.0 && z.im.abs() < c2.sqrt()
}

/// Quadrant-preserving square root of `z^2 + c2`.
///
/// The principal root is computed first and negated when it points away from
/// `z`. Selecting by the sign of `Re(conj(z) w)` is equivalent to the two
/// quadrant inequalities off the cut and stays well defined when one of the
/// components of `z` or `w` rounds to zero. The endpoints `±i sqrt(c2)` are
/// accepted and return zero.
pub fn branch_sqrt(z: ComplexPoint, c2: f64) -> Result<ComplexPoint> {
    ensure_finite(z, "branch_sqrt argument")?;
    if !(c2 >= 0.0) || !c2.is_finite() {
        return Err(Error::Domain(format!("c^2 must be finite and >= 0, got {c2}")));
    }
    if c2 > 0.0 && on_branch_cut(z, c2) {
        return Err(Error::BranchCut { z, c: c2.sqrt() });
    }
    let w = (z * z + c2).sqrt();
    if (z.conj() * w).re < 0.0 {
        Ok(-w)
    } else {
        Ok(w)
    }
}

/// `h(z) = 1 / (z + sqrt(z^2 + c2))`.
///
/// Equal to `(sqrt(z^2 + c2) - z) / c2` when `c2 > 0`, and to `1/(2z)` for the
/// disk. The reciprocal form is used because it does not cancel as `c2 -> 0`.
pub fn h_func(z: ComplexPoint, c2: f64) -> Result<ComplexPoint> {
    if on_branch_cut(z, c2) {
        return Err(Error::BranchCut { z, c: c2.max(0.0).sqrt() });
    }
    let w = branch_sqrt(z, c2)?;
    Ok((z + w).inv())
}

/// `h'(z) = -h(z) / sqrt(z^2 + c2)`.
pub fn h_prime(z: ComplexPoint, c2: f64) -> Result<ComplexPoint> {
    let w = branch_sqrt(z, c2)?;
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(format!("h' is singular at the branch point {z}")));
    }
    Ok(-h_func(z, c2)? / w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn real_axis_examples() {
        assert_eq!(branch_sqrt(point(3.0, 0.0), 0.0).unwrap(), point(3.0, 0.0));
        let w = branch_sqrt(point(-2.0, 0.0), 5.0).unwrap();
        assert!((w - point(-3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn matches_polar_root_selection() {
        // Both roots of w^2 = z^2 + 2 from the polar form, keep the one in z's quadrant.
        let z = point(1.0, 1.0);
        let target = z * z + 2.0;
        let r = target.norm().sqrt();
        let theta = target.im.atan2(target.re) / 2.0;
        let roots = [point(r * theta.cos(), r * theta.sin()), point(-r * theta.cos(), -r * theta.sin())];
        let expected = roots.iter().copied().find(|w| z.re * w.re >= 0.0 && z.im * w.im >= 0.0).unwrap();
        let w = branch_sqrt(z, 2.0).unwrap();
        assert!((w - expected).norm() < 1e-15);
        assert!((w * w - target).norm() < 1e-14);
    }

    #[test]
    fn cut_handling() {
        assert!(matches!(branch_sqrt(point(0.0, 0.5), 1.0), Err(Error::BranchCut { .. })));
        assert!(matches!(branch_sqrt(point(0.0, -0.999), 1.0), Err(Error::BranchCut { .. })));
        // Endpoints are fine and give a zero root.
        assert_eq!(branch_sqrt(point(0.0, 1.0), 1.0).unwrap().norm(), 0.0);
        // Just above the cut on the imaginary axis the root is purely imaginary, same sign.
        let w = branch_sqrt(point(0.0, 2.0), 1.0).unwrap();
        assert!((w - point(0.0, 3f64.sqrt())).norm() < 1e-15);
        let w = branch_sqrt(point(0.0, -2.0), 1.0).unwrap();
        assert!((w - point(0.0, -(3f64.sqrt()))).norm() < 1e-15);
        assert!(matches!(branch_sqrt(point(f64::NAN, 0.0), 1.0), Err(Error::NonFinite(_))));
        assert!(branch_sqrt(point(1.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn h_examples() {
        let z = point(1.0, 2.0);
        let h = h_func(z, 0.0).unwrap();
        assert!((h - point(0.1, -0.2)).norm() < 1e-15);

        let h = h_func(point(10.0, 0.0), 2.0).unwrap();
        let direct = 1.0 / (10.0 + 102f64.sqrt());
        assert!(h.im == 0.0 && h.re > 0.0 && h.re < 1.0 / 20.0);
        assert!((h.re - direct).abs() < 1e-16);

        // Cut-free alternate form with c^2 = 2 alpha.
        let alpha = 0.35;
        let z = point(0.9, -1.4);
        let alt = (branch_sqrt(z, 2.0 * alpha).unwrap() - z) / (2.0 * alpha);
        assert!((h_func(z, 2.0 * alpha).unwrap() - alt).norm() < 1e-14);

        assert!(h_func(point(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn h_prime_examples() {
        assert!((h_prime(point(1.0, 0.0), 0.0).unwrap() - point(-0.5, 0.0)).norm() < 1e-15);

        // Central difference of h along the real axis, step 1e-6.
        let z = point(10.0, 0.0);
        let step = 1e-6;
        let fd = (h_func(z + step, 2.0).unwrap() - h_func(z - step, 2.0).unwrap()) / (2.0 * step);
        let d = h_prime(z, 2.0).unwrap();
        assert!(d.re < 0.0 && d.im == 0.0);
        assert!((d - fd).norm() < 1e-8);

        for r in [1e3, 1e5, 1e7] {
            let z = Complex64::from_polar(r, 0.7);
            let scaled = h_prime(z, 3.0).unwrap() * z * z;
            assert!((scaled - point(-0.5, 0.0)).norm() < 10.0 / (r * r));
        }
        assert!(h_prime(point(0.0, 1.0), 1.0).is_err());
    }

    fn off_cut_point() -> impl Strategy<Value = (ComplexPoint, f64)> {
        (-5.0f64..5.0, -5.0f64..5.0, 0.0f64..4.0)
            .prop_filter("off the cut", |&(x, y, c2)| x.abs() > 1e-6 || y.abs() > c2.sqrt() + 1e-6)
            .prop_map(|(x, y, c2)| (point(x, y), c2))
    }

    proptest! {
        #[test]
        fn squares_back_and_keeps_quadrant((z, c2) in off_cut_point()) {
            let w = branch_sqrt(z, c2).unwrap();
            let target = z * z + c2;
            prop_assert!((w * w - target).norm() <= 1e-13 * target.norm().max(1.0));
            prop_assert!(z.re * w.re >= 0.0);
            prop_assert!(z.im * w.im >= 0.0);
        }

        #[test]
        fn conjugation_symmetry((z, c2) in off_cut_point()) {
            let w = branch_sqrt(z, c2).unwrap();
            let wc = branch_sqrt(z.conj(), c2).unwrap();
            prop_assert!((wc - w.conj()).norm() <= 1e-15 * w.norm().max(1.0));
        }

        #[test]
        fn h_reciprocal_matches_difference_form((z, c2) in off_cut_point()) {
            // The difference form cancels when |z|^2 >> c2.
            prop_assume!(c2 > 0.5);
            let h = h_func(z, c2).unwrap();
            let alt = (branch_sqrt(z, c2).unwrap() - z) / c2;
            prop_assert!((h - alt).norm() <= 1e-12 * h.norm().max(1e-300) + 1e-15);
        }
    }
}
