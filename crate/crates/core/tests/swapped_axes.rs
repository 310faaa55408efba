use ellipse_law::closed_form::{ellipse_energy_swapped, grad_potential_swapped, minimizer, potential_swapped};
use ellipse_law::quadrature::{conv_oracle, energy_oracle, KernelId, QuadratureConfig};
use ellipse_law::{point, AnisotropyStrength, EllipseDomain};

#[test]
fn wide_ellipse_matches_quadrature() {
    let e = EllipseDomain::new(1.3, 0.6).unwrap();
    let cfg = QuadratureConfig::default();
    for alpha in [-0.4, 0.0, 0.6] {
        let al = AnisotropyStrength::new(alpha).unwrap();
        for z in [point(0.2, 0.1), point(-1.0, 0.3), point(2.0, 1.0), point(0.0, -1.5)] {
            let v = potential_swapped(z, &e, al).unwrap();
            let q = conv_oracle(KernelId::WAlpha, z, &e, al, &cfg).unwrap().re;
            assert!((v - q).abs() < 1e-7, "alpha {alpha}, z {z}: {v} vs {q}");
            let g = grad_potential_swapped(z, &e, al).unwrap();
            let gq = conv_oracle(KernelId::GradWAlpha, z, &e, al, &cfg).unwrap();
            assert!((g - gq).norm() < 1e-7, "alpha {alpha}, z {z}");
        }
    }
}

#[test]
fn negative_alpha_minimizer_energy() {
    let m = minimizer(-0.5).unwrap();
    let e = m.ellipse.unwrap();
    assert!(e.a() > e.b());
    let al = AnisotropyStrength::new(-0.5).unwrap();
    let exact = ellipse_energy_swapped(&e, al).unwrap();
    let cfg = QuadratureConfig { mc_samples: 300_000, rng_seed: 17, ..QuadratureConfig::default() };
    let est = energy_oracle(&e, al, &cfg).unwrap();
    assert!((est.energy.mean - exact).abs() < 3.0 * est.energy.standard_error);
    let (m11, m22) = m.second_moments();
    assert!((est.m11.mean - m11).abs() < 3.0 * est.m11.standard_error);
    assert!((est.m22.mean - m22).abs() < 3.0 * est.m22.standard_error);
}
