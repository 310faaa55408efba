//! Grid checks of the Euler-Lagrange conditions for `mu_alpha`.
//!
//! Inside the support the potential `W_alpha * mu_alpha + |z|^2/2` must be the
//! constant `C_alpha` and its gradient must vanish; outside it must not drop
//! below `C_alpha`, and its radial derivative `Re(z̄ (∇ + z))` must be
//! nonnegative. Grid nodes within [`BOUNDARY_BAND`] of the boundary are
//! skipped here and covered by [`check_c1`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{
    c_alpha, el2_integrand, grad_potential, grad_potential_inside, grad_potential_outside, minimizer_ellipse,
    potential, potential_inside, potential_outside, EllipseDomain, Region, BOUNDARY_BAND,
};
use crate::complex_core::{point, ComplexPoint};
use crate::error::{Error, Result};
use crate::kernel::AnisotropyStrength;

/// A uniform `resolution × resolution` grid on `[-extent_x, extent_x] × [-extent_y, extent_y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub extent_x: f64,
    pub extent_y: f64,
    pub resolution: usize,
}

impl GridSpec {
    pub fn square(extent: f64, resolution: usize) -> Self {
        Self { extent_x: extent, extent_y: extent, resolution }
    }

    fn validate(&self) -> Result<()> {
        if self.resolution < 2 || !(self.extent_x > 0.0) || !(self.extent_y > 0.0) {
            return Err(Error::Domain(format!("invalid grid {self:?}")));
        }
        if !self.extent_x.is_finite() || !self.extent_y.is_finite() {
            return Err(Error::NonFinite("grid extent"));
        }
        Ok(())
    }

    fn coord(extent: f64, n: usize, i: usize) -> f64 {
        -extent + 2.0 * extent * i as f64 / (n - 1) as f64
    }

    pub fn node(&self, i: usize, j: usize) -> ComplexPoint {
        point(Self::coord(self.extent_x, self.resolution, i), Self::coord(self.extent_y, self.resolution, j))
    }

    /// The larger of the two grid spacings.
    pub fn cell(&self) -> f64 {
        2.0 * self.extent_x.max(self.extent_y) / (self.resolution - 1) as f64
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        z.re.abs() <= self.extent_x && z.im.abs() <= self.extent_y
    }
}

/// A value together with the grid node where it was found.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: f64,
    pub location: ComplexPoint,
}

impl Extremum {
    fn fold(acc: Option<Self>, next: Self, better: fn(f64, f64) -> bool) -> Option<Self> {
        match acc {
            Some(cur) if !better(next.value, cur.value) => Some(cur),
            _ => Some(next),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub alpha: f64,
    pub grid_spec: GridSpec,
    pub points_checked: usize,
    pub points_in_band: usize,
    /// EL-1: `max |potential + |z|^2/2 - C_alpha|` over interior nodes.
    pub max_abs_interior_residual: Option<Extremum>,
    /// EL-1: `max |∇potential + z|` over interior nodes.
    pub max_abs_gradient_residual: Option<Extremum>,
    /// EL-2: `min (potential + |z|^2/2 - C_alpha)` over exterior nodes.
    pub min_exterior_margin: Option<Extremum>,
    /// EL-2: `min (Re(z̄ ∇potential) + |z|^2)` over exterior nodes.
    pub min_gradient_margin: Option<Extremum>,
    /// Largest gap between the gradient margin and the foci-form integrand.
    pub max_integrand_mismatch: Option<f64>,
    /// Distance from the EL-2 minimiser to the boundary, in grid cells
    /// (measured along the ray through the centre).
    pub argmin_boundary_cells: Option<f64>,
}

impl ResidualReport {
    fn empty(alpha: f64, grid_spec: GridSpec) -> Self {
        Self {
            alpha,
            grid_spec,
            points_checked: 0,
            points_in_band: 0,
            max_abs_interior_residual: None,
            max_abs_gradient_residual: None,
            min_exterior_margin: None,
            min_gradient_margin: None,
            max_integrand_mismatch: None,
            argmin_boundary_cells: None,
        }
    }

    /// Largest EL-1 residual, zero when no interior node was checked.
    pub fn interior_residual(&self) -> f64 {
        let p = self.max_abs_interior_residual.map_or(0.0, |e| e.value);
        let g = self.max_abs_gradient_residual.map_or(0.0, |e| e.value);
        p.max(g)
    }

    /// Most negative EL-2 margin, zero when no exterior node was checked.
    pub fn exterior_margin(&self) -> f64 {
        let p = self.min_exterior_margin.map_or(0.0, |e| e.value);
        let g = self.min_gradient_margin.map_or(0.0, |e| e.value);
        p.min(g).min(0.0)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.interior_residual() <= tolerance && self.exterior_margin() >= -tolerance
    }
}

struct NodeResult {
    z: ComplexPoint,
    region: Region,
    primary: f64,
    gradient: f64,
    mismatch: f64,
}

/// Evaluates every node in row-major order; rayon only splits rows, so the
/// result vector and every reduction over it are thread-count independent.
fn scan<F>(grid: &GridSpec, e: &EllipseDomain, f: F) -> Result<Vec<NodeResult>>
where
    F: Fn(ComplexPoint, Region) -> Result<Option<(f64, f64, f64)>> + Sync,
{
    let n = grid.resolution;
    let rows: Vec<Result<Vec<NodeResult>>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut row = Vec::with_capacity(n);
            for i in 0..n {
                let z = grid.node(i, j);
                let region = e.classify_with_band(z, BOUNDARY_BAND);
                if let Some((primary, gradient, mismatch)) = f(z, region)? {
                    row.push(NodeResult { z, region, primary, gradient, mismatch });
                } else if region == Region::Boundary {
                    row.push(NodeResult { z, region, primary: 0.0, gradient: 0.0, mismatch: 0.0 });
                }
            }
            Ok(row)
        })
        .collect();
    let mut out = Vec::with_capacity(n * n);
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}

/// EL-1 on the bounding box of the minimising ellipse.
pub fn check_el1(alpha: AnisotropyStrength, resolution: usize) -> Result<ResidualReport> {
    let e = minimizer_ellipse(alpha)?;
    let c = c_alpha(alpha)?;
    let grid = GridSpec { extent_x: e.a(), extent_y: e.b(), resolution };
    grid.validate()?;
    let nodes = scan(&grid, &e, |z, region| {
        if region != Region::Inside {
            return Ok(None);
        }
        let v = potential(z, &e, alpha)? + 0.5 * z.norm_sqr() - c;
        let g = grad_potential(z, &e, alpha)? + z;
        Ok(Some((v.abs(), g.norm(), 0.0)))
    })?;
    let mut report = ResidualReport::empty(alpha.value(), grid);
    let larger = |a: f64, b: f64| a > b;
    for node in &nodes {
        if node.region == Region::Boundary {
            report.points_in_band += 1;
            continue;
        }
        report.points_checked += 1;
        report.max_abs_interior_residual = Extremum::fold(
            report.max_abs_interior_residual,
            Extremum { value: node.primary, location: node.z },
            larger,
        );
        report.max_abs_gradient_residual = Extremum::fold(
            report.max_abs_gradient_residual,
            Extremum { value: node.gradient, location: node.z },
            larger,
        );
    }
    Ok(report)
}

/// EL-2 on `[-extent, extent]^2`, exterior nodes only.
pub fn check_el2(alpha: AnisotropyStrength, extent: f64, resolution: usize) -> Result<ResidualReport> {
    let e = minimizer_ellipse(alpha)?;
    let c = c_alpha(alpha)?;
    let grid = GridSpec::square(extent, resolution);
    grid.validate()?;
    let nodes = scan(&grid, &e, |z, region| {
        if region != Region::Outside {
            return Ok(None);
        }
        let v = potential(z, &e, alpha)? + 0.5 * z.norm_sqr() - c;
        let g = (z.conj() * grad_potential(z, &e, alpha)?).re + z.norm_sqr();
        let integrand = el2_integrand(z, alpha)?;
        Ok(Some((v, g, (g - integrand).abs())))
    })?;
    let mut report = ResidualReport::empty(alpha.value(), grid);
    let smaller = |a: f64, b: f64| a < b;
    let mut mismatch: Option<f64> = None;
    for node in &nodes {
        if node.region == Region::Boundary {
            report.points_in_band += 1;
            continue;
        }
        report.points_checked += 1;
        report.min_exterior_margin =
            Extremum::fold(report.min_exterior_margin, Extremum { value: node.primary, location: node.z }, smaller);
        report.min_gradient_margin =
            Extremum::fold(report.min_gradient_margin, Extremum { value: node.gradient, location: node.z }, smaller);
        mismatch = Some(mismatch.map_or(node.mismatch, |m| m.max(node.mismatch)));
    }
    report.max_integrand_mismatch = mismatch;
    report.argmin_boundary_cells =
        report.min_exterior_margin.map(|m| e.radial_boundary_distance(m.location) / grid.cell());
    Ok(report)
}

/// Interior versus exterior formulas on the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C1Report {
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub samples: usize,
    pub max_value_mismatch: f64,
    pub max_gradient_mismatch: f64,
    /// Parameter `θ` of the boundary point `(a cos θ, b sin θ)` with the largest mismatch.
    pub worst_theta: f64,
}

/// Samples `θ = 2πk/n` together with the co-vertex `θ = π/2`, where the
/// exterior formulas sit on the end of the branch cut.
pub fn check_c1(e: &EllipseDomain, alpha: AnisotropyStrength, n_boundary_samples: usize) -> Result<C1Report> {
    if n_boundary_samples == 0 {
        return Err(Error::Domain("check_c1 needs at least one boundary sample".into()));
    }
    let mut thetas: Vec<f64> =
        (0..n_boundary_samples).map(|k| std::f64::consts::TAU * k as f64 / n_boundary_samples as f64).collect();
    thetas.push(std::f64::consts::FRAC_PI_2);
    let mut report = C1Report {
        alpha: alpha.value(),
        a: e.a(),
        b: e.b(),
        samples: thetas.len(),
        max_value_mismatch: 0.0,
        max_gradient_mismatch: 0.0,
        worst_theta: 0.0,
    };
    let mut worst = -1.0;
    for theta in thetas {
        let z = e.boundary_point(theta);
        let dv = (potential_inside(z, e, alpha)? - potential_outside(z, e, alpha)?).abs();
        let dg = (grad_potential_inside(z, e, alpha)? - grad_potential_outside(z, e, alpha)?).norm();
        report.max_value_mismatch = report.max_value_mismatch.max(dv);
        report.max_gradient_mismatch = report.max_gradient_mismatch.max(dg);
        if dv.max(dg) > worst {
            worst = dv.max(dg);
            report.worst_theta = theta;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(x: f64) -> AnisotropyStrength {
        AnisotropyStrength::new(x).unwrap()
    }

    #[test]
    fn el1_examples() {
        let r = check_el1(al(0.0), 51).unwrap();
        assert!(r.interior_residual() <= 1e-12, "{r:?}");
        let r = check_el1(al(0.5), 101).unwrap();
        assert!(r.interior_residual() <= 1e-10, "{r:?}");
        assert!(r.points_checked > 7000);
        let r = check_el1(al(0.9), 101).unwrap();
        assert!(r.interior_residual() <= 1e-9, "{r:?}");
    }

    #[test]
    fn el1_is_exact_at_every_resolution() {
        for n in [11, 40, 157] {
            let r = check_el1(al(0.3), n).unwrap();
            assert!(r.interior_residual() <= 1e-9);
            let loc = r.max_abs_interior_residual.unwrap().location;
            assert!(r.grid_spec.contains(loc));
        }
    }

    #[test]
    fn el2_disk_margin_on_axis() {
        // On the real axis the disk margin is -ln R + R^2/2 - 1/2.
        let e = minimizer_ellipse(al(0.0)).unwrap();
        let c = c_alpha(al(0.0)).unwrap();
        for r in [1.5, 2.0, 5.0] {
            let z = point(r, 0.0);
            let m = potential(z, &e, al(0.0)).unwrap() + 0.5 * r * r - c;
            assert!((m - (-r.ln() + 0.5 * r * r - 0.5)).abs() < 1e-13);
        }
        let r = check_el2(al(0.0), 3.0, 61).unwrap();
        assert!(r.exterior_margin() >= -1e-12);
    }

    #[test]
    fn el2_example_and_active_boundary() {
        let r = check_el2(al(0.5), 4.0, 201).unwrap();
        assert!(r.exterior_margin() >= -1e-10, "{r:?}");
        assert!(r.argmin_boundary_cells.unwrap() <= 2.0, "{r:?}");
        assert!(r.max_integrand_mismatch.unwrap() < 1e-9);
        for alpha in [0.1, 0.7, 0.9] {
            let r = check_el2(al(alpha), 3.0, 121).unwrap();
            assert!(r.exterior_margin() >= -1e-10);
            assert!(r.argmin_boundary_cells.unwrap() <= 2.0, "{alpha}: {r:?}");
        }
    }

    #[test]
    fn far_field_margin_is_large() {
        let e = minimizer_ellipse(al(0.5)).unwrap();
        let z = point(100.0, 100.0);
        let m = potential(z, &e, al(0.5)).unwrap() + 0.5 * z.norm_sqr() - c_alpha(al(0.5)).unwrap();
        assert!(m > 0.99 * 0.5 * z.norm_sqr());
    }

    #[test]
    fn c1_examples() {
        let r = check_c1(&EllipseDomain::disk(1.0).unwrap(), al(0.0), 64).unwrap();
        assert!(r.max_value_mismatch <= 1e-13 && r.max_gradient_mismatch <= 1e-13, "{r:?}");
        let r = check_c1(&EllipseDomain::new(0.8, 1.2).unwrap(), al(0.5), 7).unwrap();
        assert_eq!(r.samples, 8);
        assert!(r.max_value_mismatch <= 1e-9 && r.max_gradient_mismatch <= 1e-9, "{r:?}");
    }

    #[test]
    fn rejects_out_of_range_alpha() {
        assert!(check_el1(al(1.0), 11).is_err());
        assert!(check_el2(al(-0.2), 2.0, 11).is_err());
        assert!(check_el1(al(0.2), 1).is_err());
    }
}
