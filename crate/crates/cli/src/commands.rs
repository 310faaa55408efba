use std::fs;

use ellipse_law::aniso_reduce::{self, force_zero_lines, line_angle_deg, ReductionResult};
use ellipse_law::closed_form::{
    ellipse_energy_swapped, grad_potential_swapped, min_energy, minimizer, potential_swapped, MinimizerDescriptor,
};
use ellipse_law::el_checker::{check_c1, check_el1, check_el2, C1Report, GridSpec, ResidualReport};
use ellipse_law::flow_sim::{self, EnergySample, InitialCondition, Interaction, SimConfig};
use ellipse_law::quadrature::{conv_oracle, energy_oracle, sample_uniform, KernelId, QuadratureConfig};
use ellipse_law::{point, AnisotropyStrength, ComplexPoint, EllipseDomain, GeneralAnisotropy, Region};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{num, to_json, write_with_manifest, CmdResult, Failure, ManifestBuilder};
use crate::{
    ElcheckArgs, EnergyArgs, Format, InitKind, OracleArgs, PotentialArgs, ReduceArgs, SimParams, SimulateArgs,
};

fn strength(alpha: f64) -> Result<AnisotropyStrength, Failure> {
    Ok(AnisotropyStrength::new(alpha)?)
}

fn ellipse(a: f64, b: f64, allow_swap: bool) -> Result<EllipseDomain, Failure> {
    let e = EllipseDomain::new(a, b)?;
    if !e.is_canonical() && !allow_swap {
        return Err(Failure::usage(format!("need b >= a (got a = {a}, b = {b}); pass --allow-swap to exchange axes")));
    }
    Ok(e)
}

fn region_name(r: Region) -> &'static str {
    match r {
        Region::Inside => "inside",
        Region::Boundary => "boundary",
        Region::Outside => "outside",
    }
}

#[derive(Serialize)]
struct PointValue {
    x1: f64,
    x2: f64,
    region: &'static str,
    potential: f64,
    grad1: f64,
    grad2: f64,
}

impl PointValue {
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}\n",
            num(self.x1),
            num(self.x2),
            self.region,
            num(self.potential),
            num(self.grad1),
            num(self.grad2)
        )
    }
}

const POTENTIAL_HEADER: &str = "x1,x2,region,potential,grad1,grad2\n";

fn evaluate(z: ComplexPoint, e: &EllipseDomain, alpha: AnisotropyStrength) -> Result<PointValue, Failure> {
    let v = potential_swapped(z, e, alpha)?;
    let g = grad_potential_swapped(z, e, alpha)?;
    Ok(PointValue { x1: z.re, x2: z.im, region: region_name(e.classify(z)), potential: v, grad1: g.re, grad2: g.im })
}

pub fn potential(args: &PotentialArgs) -> CmdResult {
    let manifest = ManifestBuilder::new("potential", args, None);
    let alpha = strength(args.alpha)?;
    let e = ellipse(args.a, args.b, args.allow_swap)?;
    let (values, default_format) = match (args.x, args.y, args.grid) {
        (Some(x), Some(y), _) => (vec![evaluate(point(x, y), &e, alpha)?], Format::Json),
        (_, _, Some((extent, n))) => {
            let grid = GridSpec::square(extent, n);
            let mut values = Vec::with_capacity(n * n);
            for j in 0..n {
                for i in 0..n {
                    values.push(evaluate(grid.node(i, j), &e, alpha)?);
                }
            }
            (values, Format::Csv)
        }
        _ => return Err(Failure::usage("give --x and --y, or --grid")),
    };
    let text = match args.format.unwrap_or(default_format) {
        Format::Csv => {
            let mut s = String::from(POTENTIAL_HEADER);
            values.iter().for_each(|v| s.push_str(&v.csv_row()));
            s
        }
        Format::Json if values.len() == 1 => to_json(&values[0])?,
        Format::Json => to_json(&values)?,
    };
    match &args.out {
        Some(path) => write_with_manifest(path, &text, &manifest),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ElcheckReport {
    alpha: f64,
    tolerance: f64,
    pass: bool,
    failures: Vec<String>,
    el1: ResidualReport,
    el2: ResidualReport,
    c1: C1Report,
}

pub fn elcheck(args: &ElcheckArgs) -> CmdResult {
    let manifest = ManifestBuilder::new("elcheck", args, None);
    let alpha = strength(args.alpha)?;
    let el1 = check_el1(alpha, args.interior_resolution)?;
    let el2 = check_el2(alpha, args.extent, args.resolution)?;
    let e = ellipse_law::closed_form::minimizer_ellipse(alpha)?;
    let c1 = check_c1(&e, alpha, args.boundary_samples)?;
    let tol = args.tol;
    let mut failures = Vec::new();
    if el1.interior_residual() > tol {
        failures.push(format!("interior residual {:e} exceeds {tol:e}", el1.interior_residual()));
    }
    if el2.exterior_margin() < -tol {
        failures.push(format!("exterior margin {:e} below -{tol:e}", el2.exterior_margin()));
    }
    if c1.max_value_mismatch.max(c1.max_gradient_mismatch) > tol {
        failures.push(format!(
            "boundary mismatch {:e} exceeds {tol:e}",
            c1.max_value_mismatch.max(c1.max_gradient_mismatch)
        ));
    }
    let report = ElcheckReport { alpha: args.alpha, tolerance: tol, pass: failures.is_empty(), failures, el1, el2, c1 };
    let text = to_json(&report)?;
    match &args.out {
        Some(path) => {
            write_with_manifest(path, &text, &manifest)?;
            println!(
                "elcheck alpha={} interior={:e} exterior-margin={:e} c1={:e} {}",
                args.alpha,
                report.el1.interior_residual(),
                report.el2.exterior_margin(),
                report.c1.max_value_mismatch.max(report.c1.max_gradient_mismatch),
                if report.pass { "PASS" } else { "FAIL" }
            );
        }
        None => print!("{text}"),
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::numerical(report.failures.join("; ")))
    }
}

impl SimParams {
    fn merged_over(self, base: SimParams) -> SimParams {
        SimParams {
            alpha: self.alpha.or(base.alpha),
            beta: self.beta.or(base.beta),
            gamma: self.gamma.or(base.gamma),
            n: self.n.or(base.n),
            dt: self.dt.or(base.dt),
            t_end: self.t_end.or(base.t_end),
            seed: self.seed.or(base.seed),
            init: self.init.or(base.init),
            radius: self.radius.or(base.radius),
            sigma: self.sigma.or(base.sigma),
            record_every: self.record_every.or(base.record_every),
            energy_every: self.energy_every.or(base.energy_every),
            inflate: self.inflate.or(base.inflate),
        }
    }

    fn to_config(&self) -> Result<SimConfig, Failure> {
        let alpha = self.alpha.unwrap_or(0.0);
        let interaction = if self.beta.is_some() || self.gamma.is_some() {
            Interaction::General(GeneralAnisotropy::new(alpha, self.beta.unwrap_or(0.0), self.gamma.unwrap_or(0.0))?)
        } else {
            Interaction::Alpha(strength(alpha)?)
        };
        let mut cfg = SimConfig::new(self.n.unwrap_or(500), interaction);
        cfg.dt = self.dt.unwrap_or(cfg.dt);
        cfg.t_end = self.t_end.unwrap_or(cfg.t_end);
        cfg.seed = self.seed.unwrap_or(0);
        cfg.init = match self.init.unwrap_or(InitKind::Disk) {
            InitKind::Disk => InitialCondition::UniformDisk { radius: self.radius.unwrap_or(2.0) },
            InitKind::Gaussian => InitialCondition::Gaussian { sigma: self.sigma.unwrap_or(1.0) },
        };
        cfg.record_every = self.record_every.unwrap_or(1000);
        cfg.energy_every = self.energy_every.unwrap_or(100);
        cfg.inflate = self.inflate.unwrap_or(cfg.inflate);
        Ok(cfg)
    }
}

#[derive(Serialize)]
struct AxisCollapse {
    m11: f64,
    m22: f64,
    predicted_m11: f64,
    predicted_m22: f64,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Prediction {
    Alpha {
        minimizer: MinimizerDescriptor,
        predicted_moments: (f64, f64),
        axis_collapse: Option<AxisCollapse>,
    },
    General {
        reduction: ReductionResult,
        principal_axis_deviation_deg: f64,
        eigenvalue_ratio: f64,
        predicted_eigenvalue_ratio: f64,
    },
}

#[derive(Serialize)]
struct SimSummary {
    config: SimConfig,
    steps: u64,
    final_time: f64,
    total_halvings: u64,
    diagnostics: flow_sim::Diagnostics,
    prediction: Prediction,
    /// Energy increases in the trace after its first ten samples.
    energy_increases: usize,
    energy_trace: Vec<EnergySample>,
}

pub fn simulate(args: &SimulateArgs) -> CmdResult {
    let base = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
            toml::from_str::<SimParams>(&text)
                .map_err(|e| Failure::usage(format!("invalid config {}: {e}", path.display())))?
        }
        None => SimParams::default(),
    };
    let params = args.params.clone().merged_over(base);
    let cfg = params.to_config()?;
    let manifest = ManifestBuilder::new("simulate", &params, Some(cfg.seed));
    let traj = flow_sim::run(&cfg)?;

    let d = traj.diagnostics;
    let prediction = match cfg.interaction {
        Interaction::Alpha(a) => {
            let m = minimizer(a.value())?;
            let predicted_moments = m.second_moments();
            let axis_collapse = m.is_singular().then_some(AxisCollapse {
                m11: d.moments.m11,
                m22: d.moments.m22,
                predicted_m11: predicted_moments.0,
                predicted_m22: predicted_moments.1,
            });
            Prediction::Alpha { minimizer: m, predicted_moments, axis_collapse }
        }
        Interaction::General(g) => {
            let reduction = aniso_reduce::reduce(&g);
            Prediction::General {
                reduction,
                principal_axis_deviation_deg: line_angle_deg(d.principal_axes.major_axis, reduction.support_axis),
                eigenvalue_ratio: d.principal_axes.eigenvalue_ratio(),
                predicted_eigenvalue_ratio: reduction.covariance_ratio(),
            }
        }
    };
    let energy_increases =
        traj.energy_trace.iter().skip(10).collect::<Vec<_>>().windows(2).filter(|w| w[1].energy > w[0].energy).count();

    let mut csv = String::from("step,particle_index,x1,x2\n");
    for snap in &traj.snapshots {
        for (i, z) in snap.positions.iter().enumerate() {
            csv.push_str(&format!("{},{i},{},{}\n", snap.step, num(z.re), num(z.im)));
        }
    }
    let summary = SimSummary {
        config: cfg,
        steps: traj.final_ensemble.step_count,
        final_time: traj.final_time,
        total_halvings: traj.total_halvings,
        diagnostics: d,
        prediction,
        energy_increases,
        energy_trace: traj.energy_trace,
    };
    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("snapshots.csv"), csv)?;
    fs::write(args.out.join("summary.json"), to_json(&summary)?)?;
    fs::write(args.out.join("manifest.json"), to_json(&manifest.finish())?)?;
    println!(
        "simulate: {} steps, m11={:.6} m22={:.6} m12={:.2e} energy={:.8}",
        summary.steps, d.moments.m11, d.moments.m22, d.moments.m12, d.energy
    );
    Ok(())
}

const REL_FLOOR: f64 = 1e-2;

fn read_points(path: &std::path::Path) -> Result<Vec<ComplexPoint>, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read points {}: {e}", path.display())))?;
    let mut pts = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed =
            line.split_once(',').and_then(|(x, y)| Some(point(x.trim().parse().ok()?, y.trim().parse().ok()?)));
        match parsed {
            Some(z) => pts.push(z),
            None if k == 0 => continue,
            None => return Err(Failure::usage(format!("{}:{}: expected x1,x2", path.display(), k + 1))),
        }
    }
    if pts.is_empty() {
        return Err(Failure::usage(format!("no points in {}", path.display())));
    }
    Ok(pts)
}

fn random_points(e: &EllipseDomain, n: usize, seed: u64) -> Vec<ComplexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half_box = 2.0 * e.a().max(e.b());
    let inside = n / 2;
    let mut pts: Vec<ComplexPoint> = (0..inside).map(|_| sample_uniform(&mut rng, e)).collect();
    while pts.len() < n {
        let z = point(rng.gen_range(-half_box..half_box), rng.gen_range(-half_box..half_box));
        if e.classify(z) == Region::Outside {
            pts.push(z);
        }
    }
    pts
}

#[derive(Serialize)]
struct Discrepancy {
    x1: f64,
    x2: f64,
    potential: f64,
    potential_oracle: f64,
    gradient: [f64; 2],
    gradient_oracle: [f64; 2],
    relative_error: f64,
}

#[derive(Serialize)]
struct OracleReport {
    tolerance: f64,
    relative_floor: f64,
    pass: bool,
    max_relative_error: f64,
    worst: Option<usize>,
    points: Vec<Discrepancy>,
}

pub fn oracle_compare(args: &OracleArgs) -> CmdResult {
    let manifest = ManifestBuilder::new("oracle-compare", args, args.random.map(|_| args.seed));
    let alpha = strength(args.alpha)?;
    let e = ellipse(args.a, args.b, args.allow_swap)?;
    let pts = match (&args.points, args.random) {
        (Some(path), _) => read_points(path)?,
        (None, Some(n)) if n > 0 => random_points(&e, n, args.seed),
        _ => return Err(Failure::usage("give --points FILE or --random N with N > 0")),
    };
    let qcfg = QuadratureConfig {
        radial_nodes: args.radial_nodes,
        angular_nodes: args.angular_nodes,
        ..QuadratureConfig::default()
    };
    let mut points = Vec::with_capacity(pts.len());
    for z in pts {
        let v = potential_swapped(z, &e, alpha)?;
        let g = grad_potential_swapped(z, &e, alpha)?;
        let vq = conv_oracle(KernelId::WAlpha, z, &e, alpha, &qcfg)?.re;
        let gq = conv_oracle(KernelId::GradWAlpha, z, &e, alpha, &qcfg)?;
        let rel_v = (vq - v).abs() / v.abs().max(REL_FLOOR);
        let rel_g = (gq - g).norm() / g.norm().max(REL_FLOOR);
        points.push(Discrepancy {
            x1: z.re,
            x2: z.im,
            potential: v,
            potential_oracle: vq,
            gradient: [g.re, g.im],
            gradient_oracle: [gq.re, gq.im],
            relative_error: rel_v.max(rel_g),
        });
    }
    let (worst, max_relative_error) = points.iter().enumerate().fold((None, 0.0f64), |(w, m), (k, p)| {
        if p.relative_error > m {
            (Some(k), p.relative_error)
        } else {
            (w, m)
        }
    });
    let report = OracleReport {
        tolerance: args.tol,
        relative_floor: REL_FLOOR,
        pass: max_relative_error <= args.tol,
        max_relative_error,
        worst,
        points,
    };
    let text = to_json(&report)?;
    if let Some(path) = &args.out {
        write_with_manifest(path, &text, &manifest)?
    }
    println!(
        "oracle-compare: {} points, max relative discrepancy {max_relative_error:e} (tol {:e}) {}",
        report.points.len(),
        args.tol,
        if report.pass { "PASS" } else { "FAIL" }
    );
    if report.pass {
        Ok(())
    } else {
        Err(Failure::numerical(format!("max relative discrepancy {max_relative_error:e} exceeds {:e}", args.tol)))
    }
}

#[derive(Serialize)]
struct RotationCheck {
    determinant: f64,
    orthogonality_error: f64,
}

#[derive(Serialize)]
struct ReduceReport {
    input: GeneralAnisotropy,
    #[serde(flatten)]
    reduction: ReductionResult,
    rotation_check: RotationCheck,
    force_zero_lines: Option<[[f64; 2]; 2]>,
}

pub fn reduce(args: &ReduceArgs) -> CmdResult {
    let manifest = ManifestBuilder::new("reduce", args, None);
    let g = GeneralAnisotropy::new(args.alpha, args.beta, args.gamma)?;
    let reduction = aniso_reduce::reduce(&g);
    let m = reduction.rotation;
    let rtr = [
        m[0][0] * m[0][0] + m[1][0] * m[1][0] - 1.0,
        m[0][0] * m[0][1] + m[1][0] * m[1][1],
        m[0][1] * m[0][1] + m[1][1] * m[1][1] - 1.0,
    ];
    let report = ReduceReport {
        input: g,
        reduction,
        rotation_check: RotationCheck {
            determinant: m[0][0] * m[1][1] - m[0][1] * m[1][0],
            orthogonality_error: rtr.iter().fold(0.0f64, |acc, x| acc.max(x.abs())),
        },
        force_zero_lines: force_zero_lines(&g).ok(),
    };
    let text = to_json(&report)?;
    if let Some(path) = &args.out {
        write_with_manifest(path, &text, &manifest)?;
    }
    print!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct MonteCarlo {
    samples: usize,
    seed: u64,
    mean: f64,
    standard_error: f64,
    z_score: f64,
}

#[derive(Serialize)]
struct EnergyReport {
    alpha: f64,
    a: f64,
    b: f64,
    energy: f64,
    min_energy: Option<f64>,
    monte_carlo: Option<MonteCarlo>,
    pass: bool,
}

pub fn energy(args: &EnergyArgs) -> CmdResult {
    let manifest = ManifestBuilder::new("energy", args, (args.mc_samples > 0).then_some(args.seed));
    let alpha = strength(args.alpha)?;
    let e = if args.minimizer {
        minimizer(args.alpha)?
            .ellipse
            .ok_or_else(|| Failure::usage(format!("alpha = {} has a segment-supported minimiser", args.alpha)))?
    } else {
        match (args.a, args.b) {
            (Some(a), Some(b)) => ellipse(a, b, args.allow_swap)?,
            _ => return Err(Failure::usage("give --a and --b, or --minimizer")),
        }
    };
    let energy = ellipse_energy_swapped(&e, alpha)?;
    let min_energy = if args.minimizer && (0.0..1.0).contains(&args.alpha) { Some(min_energy(alpha)?) } else { None };
    let monte_carlo = if args.mc_samples > 0 {
        let cfg = QuadratureConfig { mc_samples: args.mc_samples, rng_seed: args.seed, ..QuadratureConfig::default() };
        let est = energy_oracle(&e, alpha, &cfg)?.energy;
        Some(MonteCarlo {
            samples: args.mc_samples,
            seed: args.seed,
            mean: est.mean,
            standard_error: est.standard_error,
            z_score: (est.mean - energy) / est.standard_error,
        })
    } else {
        None
    };
    let pass = monte_carlo.as_ref().is_none_or(|m| m.z_score.abs() <= 3.0);
    let report = EnergyReport { alpha: args.alpha, a: e.a(), b: e.b(), energy, min_energy, monte_carlo, pass };
    let text = to_json(&report)?;
    if let Some(path) = &args.out {
        write_with_manifest(path, &text, &manifest)?;
    }
    print!("{text}");
    if pass {
        Ok(())
    } else {
        Err(Failure::numerical("Monte Carlo estimate differs from the closed form by more than 3 standard errors"))
    }
}
