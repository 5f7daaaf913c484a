use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rand::RngCore;
use rieszlab_core::bounds::default_window;
use rieszlab_core::estimators::{correlation_dimension, default_radii, plh_example, PlhReport};
use rieszlab_core::harmonics::{sphere_energy_sum, BASIS_VERSION};
use rieszlab_core::rng::stream_rng;
use rieszlab_core::sphere::{
    disintegration_check, mc_energy, spectrum_report, DisintegrationCheck, SpectrumReport, ValidationReport,
};
use rieszlab_core::{
    circle_bounds, energy_direct, energy_fourier, BasisCache, DimensionEstimate, DimensionReport, Manifold,
    SampleSet,
};
use serde::Serialize;

use crate::config::{CalibrateConfig, CircleDimConfig, PlhDemoConfig, RwSearchConfig, SliceCheckConfig, SphereDimConfig};
use crate::error::{CliError, Result};
use crate::output::{float, write_run, Envelope, Table};

/// Where relative config paths resolve and where reports go.
pub struct Context {
    pub base: PathBuf,
    pub out: PathBuf,
}

/// What a finished run reports back to the caller.
pub struct Outcome {
    pub summary: String,
    pub failures: Vec<String>,
}

/// Independent child seed number `index` of `seed`.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    stream_rng(seed, index).next_u64()
}

#[allow(clippy::too_many_arguments)]
fn finish<C: Serialize, R: Serialize>(
    ctx: &Context,
    command: &'static str,
    seed: u64,
    config: &C,
    report: &R,
    tables: &[Table],
    failures: Vec<String>,
    summary: String,
) -> Result<Outcome> {
    let envelope = Envelope {
        command,
        version: env!("CARGO_PKG_VERSION"),
        seed,
        config,
        report,
        invariant_failures: &failures,
    };
    write_run(&ctx.out, &envelope, tables)?;
    Ok(Outcome { summary, failures })
}

fn truncation(requested: Option<usize>, available: usize) -> Result<usize> {
    let k = requested.unwrap_or(available);
    if k == 0 || k > available {
        return Err(CliError::Config(format!(
            "truncation {k} is outside 1..={available}"
        )));
    }
    Ok(k)
}

#[derive(Serialize)]
struct CircleEnergyRow {
    t: f64,
    energy_fourier: f64,
    energy_direct: f64,
    ratio: f64,
}

#[derive(Serialize)]
struct CircleDimReport {
    dimension: DimensionReport,
    energy_factors: usize,
    energies: Vec<CircleEnergyRow>,
}

pub fn circle_dim(mut cfg: CircleDimConfig, ctx: &Context) -> Result<Outcome> {
    let input = cfg.product.resolve(&ctx.base)?;
    let k = truncation(cfg.truncation, input.freqs.len())?;
    let window = cfg.window.unwrap_or_else(|| default_window(k));
    cfg.truncation = Some(k);
    cfg.window = Some(window);
    let dimension = circle_bounds(&input.freqs, &input.moduli(), k, window)?;

    let n = cfg.energy_factors.min(k);
    let density = input.prefix(n)?.partial_product(n)?;
    let mut table = Table::new("energies", &["t", "energy_fourier", "energy_direct", "ratio"]);
    let mut energies = Vec::new();
    for &t in &cfg.t_grid {
        let ef = energy_fourier(&density, t, u64::MAX)?;
        let ed = energy_direct(&density, t, cfg.direct_grid)?;
        let ratio = ed / ef;
        table.push(vec![float(t), float(ef), float(ed), float(ratio)]);
        energies.push(CircleEnergyRow {
            t,
            energy_fourier: ef,
            energy_direct: ed,
            ratio,
        });
    }
    let summary = format!(
        "alpha0 = {:.6}, dimension lower bound = {:.6}",
        dimension.alpha0, dimension.reported_lb
    );
    let report = CircleDimReport {
        dimension,
        energy_factors: n,
        energies,
    };
    finish(ctx, "circle-dim", cfg.seed, &cfg, &report, &[table], Vec::new(), summary)
}

#[derive(Serialize)]
struct SphereEnergyRow {
    t: f64,
    energy_spectral: f64,
    energy_mc: Option<f64>,
    mc_stderr: Option<f64>,
}

#[derive(Serialize)]
struct BasesUsed {
    version: u32,
    pairs: Vec<(u32, u32)>,
}

#[derive(Serialize)]
struct SphereDimReport {
    validation: ValidationReport,
    dimension: DimensionReport,
    density_norm_sq: f64,
    spectrum: SpectrumReport,
    energies: Vec<SphereEnergyRow>,
    bases: BasesUsed,
}

pub fn sphere_dim(mut cfg: SphereDimConfig, ctx: &Context) -> Result<Outcome> {
    let triple = cfg.product.resolve(&ctx.base)?;
    let k = truncation(cfg.truncation, triple.len())?;
    let window = cfg.window.unwrap_or_else(|| default_window(k));
    cfg.truncation = Some(k);
    cfg.window = Some(window);
    let dimension = triple.bounds(k, window)?;
    let product = triple.partial_product(k)?;

    let cache_path = cfg.basis_cache.as_ref().map(|p| ctx.base.join(p));
    let mut cache = match &cache_path {
        Some(p) if p.exists() => BasisCache::load(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
        _ => BasisCache::new(),
    };
    let (decomposition, spectrum) = spectrum_report(&product, &mut cache)?;
    if let Some(p) = &cache_path {
        cache.save(p).map_err(|source| CliError::Write {
            path: p.clone(),
            source,
        })?;
    }

    let norm_sq = product.poly.norm_sqr();
    let scale = cfg.parseval_tol * norm_sq.max(1.0);
    let mut failures = Vec::new();
    if !(spectrum.parseval_error <= scale) {
        failures.push(format!("Parseval error {:e} exceeds {scale:e}", spectrum.parseval_error));
    }
    if !(spectrum.off_structure_mass <= scale) {
        failures.push(format!(
            "mass {:e} outside the signed-sum structure exceeds {scale:e}",
            spectrum.off_structure_mass
        ));
    }

    let mut table = Table::new("energies", &["t", "energy_spectral", "energy_mc", "mc_stderr"]);
    let mut energies = Vec::new();
    for (i, &t) in cfg.t_grid.iter().enumerate() {
        let spectral = sphere_energy_sum(&decomposition, t, 2)?;
        let mc = if cfg.mc_pairs > 0 {
            Some(mc_energy(&product, t, cfg.mc_pairs, child_seed(cfg.seed, i as u64))?)
        } else {
            None
        };
        let opt = |v: Option<f64>| v.map_or_else(String::new, float);
        table.push(vec![
            float(t),
            float(spectral),
            opt(mc.map(|m| m.estimate)),
            opt(mc.map(|m| m.stderr)),
        ]);
        energies.push(SphereEnergyRow {
            t,
            energy_spectral: spectral,
            energy_mc: mc.map(|m| m.estimate),
            mc_stderr: mc.map(|m| m.stderr),
        });
    }
    let mut masses = Table::new("spectrum", &["p", "q", "mass"]);
    for &(p, q, m) in &spectrum.masses {
        masses.push(vec![p.to_string(), q.to_string(), float(m)]);
    }
    let pairs: BTreeSet<(u32, u32)> = spectrum.masses.iter().map(|&(p, q, _)| (p, q)).collect();
    let summary = format!(
        "alpha0 = {:.6}, dimension lower bound = {:.6}, banded epsilon = {}",
        dimension.alpha0,
        dimension.reported_lb,
        spectrum
            .banded_epsilon
            .map_or_else(|| "none".to_string(), |e| format!("{e:.6}"))
    );
    let report = SphereDimReport {
        validation: triple.validate(),
        dimension,
        density_norm_sq: norm_sq,
        spectrum,
        energies,
        bases: BasesUsed {
            version: BASIS_VERSION,
            pairs: pairs.into_iter().collect(),
        },
    };
    finish(ctx, "sphere-dim", cfg.seed, &cfg, &report, &[table, masses], failures, summary)
}

/// Largest certified sup accepted after rescaling.
const SUP_ACCEPT: f64 = 1.0 + 1e-6;

pub fn rw_search(cfg: RwSearchConfig, ctx: &Context) -> Result<Outcome> {
    if cfg.j == 0 {
        return Err(CliError::Config("degree j must be at least 1".into()));
    }
    let cert = rieszlab_core::rw::search(cfg.j, cfg.budget, cfg.seed);
    let mut failures = Vec::new();
    if !(cert.sup_bound <= SUP_ACCEPT) {
        failures.push(format!("certified sup {} exceeds {SUP_ACCEPT}", cert.sup_bound));
    }
    let mut table = Table::new("coefficients", &["i", "re", "im", "modulus"]);
    for (i, c) in cert.coeffs.iter().enumerate() {
        table.push(vec![i.to_string(), float(c.re), float(c.im), float(c.norm())]);
    }
    std::fs::create_dir_all(&ctx.out).map_err(|source| CliError::Write {
        path: ctx.out.clone(),
        source,
    })?;
    let cert_path = ctx.out.join("certificate.json");
    cert.save(&cert_path).map_err(|source| CliError::Write {
        path: cert_path,
        source,
    })?;
    let summary = format!("j = {}, delta = {:.6}, sup bound = {:.9}", cert.j, cert.delta, cert.sup_bound);
    finish(ctx, "rw-search", cfg.seed, &cfg, &cert, &[table], failures, summary)
}

#[derive(Serialize)]
struct SliceRow {
    seed: u64,
    check: DisintegrationCheck,
    z_score: f64,
    passed: bool,
}

pub fn slice_check(mut cfg: SliceCheckConfig, ctx: &Context) -> Result<Outcome> {
    let triple = cfg.product.resolve(&ctx.base)?;
    let k = truncation(cfg.truncation, triple.len())?;
    cfg.truncation = Some(k);
    if cfg.slices < 2 {
        return Err(CliError::Config("at least two slices are needed".into()));
    }
    let mut table = Table::new(
        "slices",
        &["index", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "stderr", "z_score"],
    );
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (i, f) in cfg.test_functions.iter().enumerate() {
        let seed = child_seed(cfg.seed, i as u64);
        let check = disintegration_check(&triple, k, f, cfg.slices, seed)?;
        let z = check.z_score();
        let passed = (check.lhs - check.rhs).norm() <= cfg.exact_tol || z <= cfg.z_max;
        if !passed {
            failures.push(format!("test function {i}: |lhs - rhs| is {z:.2} standard errors"));
        }
        table.push(vec![
            i.to_string(),
            float(check.lhs.re),
            float(check.lhs.im),
            float(check.rhs.re),
            float(check.rhs.im),
            float(check.stderr),
            float(z),
        ]);
        rows.push(SliceRow {
            seed,
            check,
            z_score: z,
            passed,
        });
    }
    let summary = format!(
        "{} of {} test functions agree",
        rows.iter().filter(|r| r.passed).count(),
        rows.len()
    );
    finish(ctx, "slice-check", cfg.seed, &cfg, &rows, &[table], failures, summary)
}

pub fn plh_demo(cfg: PlhDemoConfig, ctx: &Context) -> Result<Outcome> {
    let report: PlhReport = plh_example(cfg.n, cfg.cutoff, cfg.energy_cutoff, cfg.samples, cfg.seed)?;
    let mut failures = Vec::new();
    if !report.pluriharmonic.pluriharmonic {
        failures.push(format!(
            "Fourier coefficient {:e} off the positive and negative cones",
            report.pluriharmonic.max_violation
        ));
    }
    if !(report.energy_below.increment_ratio < 1.0 && report.energy_above.increment_ratio > 1.0) {
        failures.push("energy increments do not separate the two sides of n - 1".into());
    }
    let mut table = Table::new("box_counts", &["scale", "occupied"]);
    for &(s, c) in &report.box_dimension.curve {
        table.push(vec![float(s), float(c)]);
    }
    let summary = format!(
        "n = {}, pluriharmonic = {}, box dimension = {:.4}",
        report.n, report.pluriharmonic.pluriharmonic, report.box_dimension.value
    );
    finish(ctx, "plh-demo", cfg.seed, &cfg, &report, &[table], failures, summary)
}

#[derive(Serialize)]
struct Calibration {
    manifold: Manifold,
    gate: [f64; 2],
    estimate: DimensionEstimate,
    passed: bool,
}

pub fn calibrate(cfg: CalibrateConfig, ctx: &Context) -> Result<Outcome> {
    if cfg.samples < 2 {
        return Err(CliError::Config("at least two samples are needed".into()));
    }
    let runs = [
        (
            SampleSet::uniform_circle(cfg.samples, child_seed(cfg.seed, 0)),
            cfg.circle_gate,
        ),
        (
            SampleSet::uniform_sphere(cfg.samples, child_seed(cfg.seed, 1)),
            cfg.sphere_gate,
        ),
    ];
    let mut table = Table::new("calibration", &["manifold", "dimension", "stderr", "gate_lo", "gate_hi"]);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (samples, gate) in runs {
        let manifold = samples.manifold;
        let estimate = correlation_dimension(&samples, &default_radii(manifold, cfg.radii))?;
        let passed = (gate[0]..=gate[1]).contains(&estimate.value);
        if !passed {
            failures.push(format!("{manifold:?}: dimension {} outside {gate:?}", estimate.value));
        }
        table.push(vec![
            format!("{manifold:?}"),
            float(estimate.value),
            float(estimate.stderr),
            float(gate[0]),
            float(gate[1]),
        ]);
        rows.push(Calibration {
            manifold,
            gate,
            estimate,
            passed,
        });
    }
    let summary = rows
        .iter()
        .map(|r| format!("{:?}: {:.4}", r.manifold, r.estimate.value))
        .collect::<Vec<_>>()
        .join(", ");
    finish(ctx, "calibrate", cfg.seed, &cfg, &rows, &[table], failures, summary)
}

/// Directory against which a config's relative paths resolve.
pub fn config_base(config: Option<&Path>) -> PathBuf {
    match config.and_then(Path::parent) {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}
