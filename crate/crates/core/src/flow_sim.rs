//! Particle approximation of the gradient flow of `I_alpha`.
//!
//! `N` equal-mass particles move with `v_i = -(1/N) Σ_{j≠i} ∇W(x_i - x_j) - x_i`,
//! which is `-N` times the gradient of the discrete energy
//! `E_N = (1/(2N^2)) Σ_{i≠j} W(x_i - x_j) + (1/(2N)) Σ |x_i|^2`.
//! Time stepping is forward Euler; a step that brings two particles closer
//! than [`COLLISION_DISTANCE`] is retried with half the step size.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{minimizer, EllipseDomain};
use crate::complex_core::ComplexPoint;
use crate::error::{Error, Result};
use crate::kernel::{grad_w_alpha, grad_w_general, w_alpha, w_general, AnisotropyStrength, GeneralAnisotropy};
use crate::quadrature::sample_uniform;

pub const COLLISION_DISTANCE: f64 = 1e-9;
pub const MAX_HALVINGS: u32 = 20;

/// The pair kernel driving the flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interaction {
    Alpha(AnisotropyStrength),
    General(GeneralAnisotropy),
}

impl Interaction {
    fn w(&self, x: ComplexPoint) -> f64 {
        match self {
            Interaction::Alpha(a) => w_alpha(x, *a),
            Interaction::General(g) => w_general(x, g),
        }
    }

    fn grad(&self, x: ComplexPoint) -> Result<ComplexPoint> {
        match self {
            Interaction::Alpha(a) => grad_w_alpha(x, *a),
            Interaction::General(g) => grad_w_general(x, g),
        }
    }
}

impl From<AnisotropyStrength> for Interaction {
    fn from(a: AnisotropyStrength) -> Self {
        Interaction::Alpha(a)
    }
}

impl From<GeneralAnisotropy> for Interaction {
    fn from(g: GeneralAnisotropy) -> Self {
        Interaction::General(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum InitialCondition {
    UniformDisk { radius: f64 },
    Gaussian { sigma: f64 },
}

impl Default for InitialCondition {
    fn default() -> Self {
        InitialCondition::UniformDisk { radius: 2.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleEnsemble {
    pub positions: Vec<ComplexPoint>,
    pub rng_seed: u64,
    pub step_count: u64,
}

fn closest_pair(positions: &[ComplexPoint]) -> Option<(usize, usize, f64)> {
    let n = positions.len();
    let rows: Vec<Option<(usize, usize, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = positions[i];
            let mut best: Option<(usize, usize, f64)> = None;
            for (j, &xj) in positions.iter().enumerate().skip(i + 1) {
                let d2 = (xi - xj).norm_sqr();
                if best.is_none_or(|b| d2 < b.2) {
                    best = Some((i, j, d2));
                }
            }
            best
        })
        .collect();
    rows.into_iter()
        .flatten()
        .fold(None, |acc: Option<(usize, usize, f64)>, r| match acc {
            Some(a) if a.2 <= r.2 => Some(a),
            _ => Some(r),
        })
        .map(|(i, j, d2)| (i, j, d2.sqrt()))
}

fn collision_check(positions: &[ComplexPoint]) -> Result<()> {
    match closest_pair(positions) {
        Some((i, j, distance)) if !(distance >= COLLISION_DISTANCE) => Err(Error::Collision { i, j, distance }),
        _ => Ok(()),
    }
}

impl ParticleEnsemble {
    /// Checks `N >= 2`, finiteness and pairwise separation.
    pub fn new(positions: Vec<ComplexPoint>, rng_seed: u64) -> Result<Self> {
        if positions.len() < 2 {
            return Err(Error::Domain(format!("an ensemble needs at least 2 particles, got {}", positions.len())));
        }
        if positions.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("particle position"));
        }
        collision_check(&positions)?;
        Ok(Self { positions, rng_seed, step_count: 0 })
    }

    /// `n` particles drawn from `init` with a ChaCha8 stream seeded by `seed`.
    pub fn sample(n: usize, init: InitialCondition, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let positions = match init {
            InitialCondition::UniformDisk { radius } => {
                let disk = EllipseDomain::disk(radius)?;
                (0..n).map(|_| sample_uniform(&mut rng, &disk)).collect()
            }
            InitialCondition::Gaussian { sigma } => {
                let normal = Normal::new(0.0, sigma).map_err(|e| Error::Domain(format!("gaussian sigma: {e}")))?;
                (0..n).map(|_| Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng))).collect()
            }
        };
        Self::new(positions, seed)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// `v_i` for every particle, parallel over `i` with a fixed summation order in `j`.
pub fn velocity_field(ens: &ParticleEnsemble, interaction: &Interaction) -> Result<Vec<ComplexPoint>> {
    let xs = &ens.positions;
    let inv_n = 1.0 / xs.len() as f64;
    xs.par_iter()
        .enumerate()
        .map(|(i, &xi)| {
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, &xj) in xs.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d = xi - xj;
                let distance = d.norm();
                if !(distance >= COLLISION_DISTANCE) {
                    return Err(Error::Collision { i: i.min(j), j: i.max(j), distance });
                }
                sum += interaction.grad(d)?;
            }
            Ok(-sum * inv_n - xi)
        })
        .collect()
}

/// `E_N`, with the pair sum accumulated row by row in index order.
pub fn discrete_energy(ens: &ParticleEnsemble, interaction: &Interaction) -> Result<f64> {
    collision_check(&ens.positions)?;
    let xs = &ens.positions;
    let n = xs.len() as f64;
    let rows: Vec<f64> = xs
        .par_iter()
        .enumerate()
        .map(|(i, &xi)| xs.iter().skip(i + 1).map(|&xj| interaction.w(xi - xj)).sum::<f64>())
        .collect();
    let pairs: f64 = rows.iter().sum();
    let confinement: f64 = xs.iter().map(|z| z.norm_sqr()).sum();
    Ok(pairs / (n * n) + confinement / (2.0 * n))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOutcome {
    pub ensemble: ParticleEnsemble,
    /// Step size actually taken after any halvings.
    pub dt_used: f64,
    pub halvings: u32,
}

/// One forward-Euler step, halving `dt` while the proposal has a collision.
pub fn step(ens: &ParticleEnsemble, interaction: &Interaction, dt: f64) -> Result<StepOutcome> {
    if !(dt >= 0.0) || !dt.is_finite() {
        return Err(Error::Domain(format!("time step must be finite and >= 0, got {dt}")));
    }
    let v = velocity_field(ens, interaction)?;
    let mut h = dt;
    let mut halvings = 0;
    loop {
        let proposal: Vec<ComplexPoint> = ens.positions.iter().zip(&v).map(|(&x, &vi)| x + vi * h).collect();
        match collision_check(&proposal) {
            Ok(()) => {
                let ensemble =
                    ParticleEnsemble { positions: proposal, rng_seed: ens.rng_seed, step_count: ens.step_count + 1 };
                return Ok(StepOutcome { ensemble, dt_used: h, halvings });
            }
            Err(e) if halvings >= MAX_HALVINGS => return Err(e),
            Err(_) => {
                h *= 0.5;
                halvings += 1;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub m11: f64,
    pub m22: f64,
    pub m12: f64,
}

/// Second moments about the origin.
pub fn empirical_moments(ens: &ParticleEnsemble) -> Moments {
    let n = ens.positions.len() as f64;
    let (mut m11, mut m22, mut m12) = (0.0, 0.0, 0.0);
    for z in &ens.positions {
        m11 += z.re * z.re;
        m22 += z.im * z.im;
        m12 += z.re * z.im;
    }
    Moments { m11: m11 / n, m22: m22 / n, m12: m12 / n }
}

/// Eigen-decomposition of the centred empirical covariance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrincipalAxes {
    pub mean: ComplexPoint,
    /// Unit eigenvector of the larger eigenvalue.
    pub major_axis: [f64; 2],
    pub major: f64,
    pub minor: f64,
}

impl PrincipalAxes {
    pub fn eigenvalue_ratio(&self) -> f64 {
        self.minor / self.major
    }
}

pub fn principal_axes(ens: &ParticleEnsemble) -> PrincipalAxes {
    let n = ens.positions.len() as f64;
    let mean = ens.positions.iter().sum::<Complex64>() / n;
    let (mut c11, mut c22, mut c12) = (0.0, 0.0, 0.0);
    for z in &ens.positions {
        let d = z - mean;
        c11 += d.re * d.re;
        c22 += d.im * d.im;
        c12 += d.re * d.im;
    }
    let (c11, c22, c12) = (c11 / n, c22 / n, c12 / n);
    let half_trace = 0.5 * (c11 + c22);
    let radius = (0.5 * (c11 - c22)).hypot(c12);
    let angle = 0.5 * (2.0 * c12).atan2(c11 - c22);
    PrincipalAxes {
        mean,
        major_axis: [angle.cos(), angle.sin()],
        major: half_trace + radius,
        minor: half_trace - radius,
    }
}

/// Fraction of particles inside `e` scaled by `inflate`.
pub fn containment_fraction(ens: &ParticleEnsemble, e: &EllipseDomain, inflate: f64) -> Result<f64> {
    if !(inflate >= 1.0) {
        return Err(Error::Domain(format!("inflate must be >= 1, got {inflate}")));
    }
    if ens.positions.is_empty() {
        return Ok(1.0);
    }
    let inside = ens.positions.iter().filter(|&&z| e.level(z) <= inflate * inflate).count();
    Ok(inside as f64 / ens.positions.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n_particles: usize,
    pub dt: f64,
    pub t_end: f64,
    pub interaction: Interaction,
    pub init: InitialCondition,
    pub seed: u64,
    /// Keep positions every this many steps (0 keeps only the endpoints).
    pub record_every: u64,
    /// Evaluate the discrete energy every this many steps (0 disables the trace).
    pub energy_every: u64,
    /// Inflation factor for the final containment diagnostic.
    pub inflate: f64,
}

impl SimConfig {
    pub fn new(n_particles: usize, interaction: Interaction) -> Self {
        Self {
            n_particles,
            dt: 1e-3,
            t_end: 20.0,
            interaction,
            init: InitialCondition::default(),
            seed: 0,
            record_every: 0,
            energy_every: 0,
            inflate: 1.05,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() || !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::Domain(format!(
                "need dt > 0 and t_end >= 0, got dt = {}, t_end = {}",
                self.dt, self.t_end
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub step: u64,
    pub time: f64,
    pub positions: Vec<ComplexPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergySample {
    pub step: u64,
    pub time: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub moments: Moments,
    pub principal_axes: PrincipalAxes,
    pub energy: f64,
    /// Fraction inside the inflated minimising ellipse; absent when the
    /// predicted support is a segment or the kernel is not of the `alpha` form.
    pub containment: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    pub energy_trace: Vec<EnergySample>,
    pub final_ensemble: ParticleEnsemble,
    pub final_time: f64,
    pub total_halvings: u64,
    pub diagnostics: Diagnostics,
}

pub fn diagnostics(ens: &ParticleEnsemble, interaction: &Interaction, inflate: f64) -> Result<Diagnostics> {
    let containment = match interaction {
        Interaction::Alpha(a) => match minimizer(a.value())?.ellipse {
            Some(e) => Some(containment_fraction(ens, &e, inflate)?),
            None => None,
        },
        Interaction::General(_) => None,
    };
    Ok(Diagnostics {
        moments: empirical_moments(ens),
        principal_axes: principal_axes(ens),
        energy: discrete_energy(ens, interaction)?,
        containment,
    })
}

/// Integrates from a sampled initial condition up to `t_end`.
pub fn run(cfg: &SimConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let ens = ParticleEnsemble::sample(cfg.n_particles, cfg.init, cfg.seed)?;
    run_from(ens, cfg)
}

/// As [`run`], starting from a given ensemble.
pub fn run_from(mut ens: ParticleEnsemble, cfg: &SimConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let interaction = cfg.interaction;
    let mut time = 0.0;
    let mut snapshots = vec![Snapshot { step: ens.step_count, time, positions: ens.positions.clone() }];
    let mut energy_trace = Vec::new();
    if cfg.energy_every > 0 {
        energy_trace.push(EnergySample { step: ens.step_count, time, energy: discrete_energy(&ens, &interaction)? });
    }
    let mut total_halvings = 0u64;
    let mut steps = 0u64;
    // Stop within a relative hair of t_end rather than taking a sliver step.
    while time < cfg.t_end * (1.0 - 1e-12) {
        let h = cfg.dt.min(cfg.t_end - time);
        let out = step(&ens, &interaction, h)?;
        ens = out.ensemble;
        time += out.dt_used;
        total_halvings += u64::from(out.halvings);
        steps += 1;
        if cfg.record_every > 0 && steps.is_multiple_of(cfg.record_every) {
            snapshots.push(Snapshot { step: ens.step_count, time, positions: ens.positions.clone() });
        }
        if cfg.energy_every > 0 && steps.is_multiple_of(cfg.energy_every) {
            energy_trace.push(EnergySample {
                step: ens.step_count,
                time,
                energy: discrete_energy(&ens, &interaction)?,
            });
        }
    }
    if snapshots.last().map(|s| s.step) != Some(ens.step_count) {
        snapshots.push(Snapshot { step: ens.step_count, time, positions: ens.positions.clone() });
    }
    let diagnostics = diagnostics(&ens, &interaction, cfg.inflate)?;
    Ok(Trajectory { snapshots, energy_trace, final_ensemble: ens, final_time: time, total_halvings, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{min_energy, minimizer_ellipse};
    use crate::complex_core::point;
    use rand::Rng;

    fn al(x: f64) -> AnisotropyStrength {
        AnisotropyStrength::new(x).unwrap()
    }

    fn alpha(x: f64) -> Interaction {
        Interaction::Alpha(al(x))
    }

    fn ens(points: &[(f64, f64)]) -> ParticleEnsemble {
        ParticleEnsemble::new(points.iter().map(|&(x, y)| point(x, y)).collect(), 0).unwrap()
    }

    #[test]
    fn two_particle_velocity() {
        let e = ens(&[(1.0, 0.0), (-1.0, 0.0)]);
        let v = velocity_field(&e, &alpha(0.0)).unwrap();
        assert!((v[0] - point(-0.75, 0.0)).norm() < 1e-15);
        assert!((v[1] - point(0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vertical_pair_ignores_anisotropy() {
        let e = ens(&[(0.0, 0.7), (0.0, -0.4)]);
        let v0 = velocity_field(&e, &alpha(0.0)).unwrap();
        for a in [-0.9, 0.5, 3.0] {
            let v = velocity_field(&e, &alpha(a)).unwrap();
            for (x, y) in v.iter().zip(&v0) {
                assert!((x - y).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn two_particle_energy() {
        let e = ens(&[(1.0, 0.0), (-1.0, 0.0)]);
        let expected = (1.0 / 8.0) * 2.0 * (-(2f64).ln()) + 0.5;
        assert!((discrete_energy(&e, &alpha(0.0)).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn collisions_are_errors() {
        let pts = vec![point(0.3, 0.1), point(-1.0, 0.0), point(0.3, 0.1)];
        assert!(matches!(ParticleEnsemble::new(pts.clone(), 0), Err(Error::Collision { i: 0, j: 2, .. })));
        let raw = ParticleEnsemble { positions: pts, rng_seed: 0, step_count: 0 };
        assert!(matches!(velocity_field(&raw, &alpha(0.2)), Err(Error::Collision { .. })));
        assert!(matches!(discrete_energy(&raw, &alpha(0.2)), Err(Error::Collision { .. })));
        assert!(ParticleEnsemble::new(vec![point(0.0, 0.0)], 0).is_err());
    }

    #[test]
    fn velocity_is_scaled_energy_gradient() {
        let e = ParticleEnsemble::sample(100, InitialCondition::UniformDisk { radius: 1.5 }, 7).unwrap();
        for inter in [alpha(0.5), Interaction::General(GeneralAnisotropy::new(0.1, 0.5, 0.3).unwrap())] {
            let v = velocity_field(&e, &inter).unwrap();
            let n = e.len() as f64;
            let step = 1e-6;
            for i in [0, 17, 99] {
                for dir in [point(1.0, 0.0), point(0.0, 1.0)] {
                    let mut plus = e.clone();
                    plus.positions[i] += dir * step;
                    let mut minus = e.clone();
                    minus.positions[i] -= dir * step;
                    let fd = (discrete_energy(&plus, &inter).unwrap() - discrete_energy(&minus, &inter).unwrap())
                        / (2.0 * step);
                    let component = v[i].re * dir.re + v[i].im * dir.im;
                    assert!((component + n * fd).abs() < 1e-6, "{component} vs {}", -n * fd);
                }
            }
        }
    }

    #[test]
    fn zero_step_and_fixed_point() {
        let e = ParticleEnsemble::sample(20, InitialCondition::default(), 3).unwrap();
        let out = step(&e, &alpha(0.3), 0.0).unwrap();
        assert_eq!(out.ensemble.positions, e.positions);
        assert_eq!(out.ensemble.step_count, 1);
        // Two particles at distance 1 on the x1 axis balance for alpha = 0:
        // v = -(1/2)(-1/d) - d/2 = 0 at d = 1.
        let fixed = ens(&[(0.5, 0.0), (-0.5, 0.0)]);
        let out = step(&fixed, &alpha(0.0), 0.1).unwrap();
        for (a, b) in out.ensemble.positions.iter().zip(&fixed.positions) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn step_halves_on_collision() {
        // Confinement drives particle 0 onto particle 1 at exactly this dt.
        let e = ens(&[(10.0, 0.0), (5.0, 0.0), (-3.0, 0.0)]);
        let inter = alpha(0.0);
        let v = velocity_field(&e, &inter).unwrap();
        let dt = (5.0 - 10.0) / (v[0].re - v[1].re);
        assert!(dt > 0.0);
        let out = step(&e, &inter, dt).unwrap();
        assert!(out.halvings >= 1);
        assert_eq!(out.dt_used, dt / f64::from(1u32 << out.halvings));
    }

    #[test]
    fn mirror_symmetry_is_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut pts = Vec::new();
        for _ in 0..30 {
            let (x, y): (f64, f64) = (rng.gen_range(0.05..1.5), rng.gen_range(-1.5..1.5));
            pts.push(point(x, y));
            pts.push(point(-x, y));
        }
        let mut e = ParticleEnsemble::new(pts, 0).unwrap();
        for _ in 0..50 {
            e = step(&e, &alpha(0.6), 1e-2).unwrap().ensemble;
        }
        for k in 0..30 {
            let (p, q) = (e.positions[2 * k], e.positions[2 * k + 1]);
            assert!((p.re + q.re).abs() < 1e-12 && (p.im - q.im).abs() < 1e-12);
        }
    }

    #[test]
    fn moments_and_containment_examples() {
        let e = ens(&[(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]);
        let m = empirical_moments(&e);
        assert_eq!((m.m11, m.m22, m.m12), (0.5, 0.5, 0.0));
        let raw = ParticleEnsemble { positions: vec![point(0.0, 0.0); 5], rng_seed: 0, step_count: 0 };
        let m = empirical_moments(&raw);
        assert_eq!((m.m11, m.m22, m.m12), (0.0, 0.0, 0.0));
        let ell = EllipseDomain::new(0.8, 1.2).unwrap();
        assert_eq!(containment_fraction(&raw, &ell, 1.0).unwrap(), 1.0);
        assert_eq!(containment_fraction(&e, &ell, 1e6).unwrap(), 1.0);
        assert!(containment_fraction(&e, &ell, 0.5).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pts: Vec<_> = (0..100_000).map(|_| sample_uniform(&mut rng, &ell)).collect();
        let big = ParticleEnsemble { positions: pts, rng_seed: 5, step_count: 0 };
        let m = empirical_moments(&big);
        assert!((m.m11 - 0.16).abs() < 3e-3 && (m.m22 - 0.36).abs() < 6e-3 && m.m12.abs() < 3e-3);
        let axes = principal_axes(&big);
        assert!(axes.major_axis[1].abs() > 0.999);
        assert!((axes.eigenvalue_ratio() - 0.16 / 0.36).abs() < 0.03);
    }

    #[test]
    fn sampled_energy_matches_minimum() {
        let e = minimizer_ellipse(al(0.5)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pts: Vec<_> = (0..4_000).map(|_| sample_uniform(&mut rng, &e)).collect();
        let ens = ParticleEnsemble { positions: pts, rng_seed: 9, step_count: 0 };
        let en = discrete_energy(&ens, &alpha(0.5)).unwrap();
        // Self-interaction exclusion biases E_N by O(log N / N).
        assert!((en - min_energy(al(0.5)).unwrap()).abs() < 5e-3, "{en}");
    }

    #[test]
    fn run_is_deterministic_and_energy_decreases() {
        let mut cfg = SimConfig::new(80, alpha(0.5));
        cfg.t_end = 1.0;
        cfg.dt = 1e-2;
        cfg.seed = 42;
        cfg.record_every = 10;
        cfg.energy_every = 1;
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.final_ensemble.step_count, 100);
        assert_eq!(a.snapshots.len(), 11);
        assert!((a.final_time - 1.0).abs() < 1e-12);
        for w in a.energy_trace[10..].windows(2) {
            assert!(w[1].energy <= w[0].energy, "{w:?}");
        }
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = single.install(|| run(&cfg)).unwrap();
        assert_eq!(a, c);
    }
}
