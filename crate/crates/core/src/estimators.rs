//! Sample-based dimension estimates and measures on the torus `T^n`.

use std::collections::HashSet;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::sample_density;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::rng::{angle, sphere_point, stream_rng};

/// The space a sample set lives on, which fixes its metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Manifold {
    /// Angles; chordal distance `2|sin(Δ/2)|`.
    Circle,
    /// Unit vectors of R⁴; Euclidean distance.
    Sphere3,
    /// Angle tuples; flat metric with each coordinate difference wrapped.
    Torus(usize),
}

impl Manifold {
    pub fn coordinate_count(&self) -> usize {
        match self {
            Manifold::Circle => 1,
            Manifold::Sphere3 => 4,
            Manifold::Torus(n) => *n,
        }
    }

    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Manifold::Circle => 2.0 * ((a[0] - b[0]) / 2.0).sin().abs(),
            Manifold::Sphere3 => a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt(),
            Manifold::Torus(_) => a
                .iter()
                .zip(b)
                .map(|(x, y)| {
                    let d = (x - y).rem_euclid(TAU);
                    let d = d.min(TAU - d);
                    d * d
                })
                .sum::<f64>()
                .sqrt(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub manifold: Manifold,
    pub points: Vec<Vec<f64>>,
    pub provenance: String,
}

impl SampleSet {
    /// Angles are reduced to `[0, 2π)`; sphere points must have unit norm
    /// within 1e-12.
    pub fn new(manifold: Manifold, points: Vec<Vec<f64>>, provenance: impl Into<String>) -> Result<Self> {
        let dim = manifold.coordinate_count();
        let mut points = points;
        for (idx, p) in points.iter_mut().enumerate() {
            if p.len() != dim || p.iter().any(|v| !v.is_finite()) {
                return Err(Error::Invalid(format!("sample {idx} is not a point of {manifold:?}")));
            }
            match manifold {
                Manifold::Sphere3 => {
                    let n = p.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if (n - 1.0).abs() > 1e-12 {
                        return Err(Error::Invalid(format!("sample {idx} has norm {n}")));
                    }
                }
                _ => p.iter_mut().for_each(|v| *v = v.rem_euclid(TAU)),
            }
        }
        Ok(Self {
            manifold,
            points,
            provenance: provenance.into(),
        })
    }

    pub fn uniform_circle(count: usize, seed: u64) -> Self {
        let mut rng = stream_rng(seed, 0);
        let points = (0..count).map(|_| vec![angle(&mut rng)]).collect();
        Self {
            manifold: Manifold::Circle,
            points,
            provenance: format!("uniform circle, seed {seed}"),
        }
    }

    pub fn uniform_sphere(count: usize, seed: u64) -> Self {
        let mut rng = stream_rng(seed, 0);
        let points = (0..count)
            .map(|_| {
                let z = sphere_point(&mut rng);
                vec![z[0].re, z[0].im, z[1].re, z[1].im]
            })
            .collect();
        Self {
            manifold: Manifold::Sphere3,
            points,
            provenance: format!("uniform S3, seed {seed}"),
        }
    }

    pub fn uniform_torus(n: usize, count: usize, seed: u64) -> Self {
        let mut rng = stream_rng(seed, 0);
        let points = (0..count)
            .map(|_| (0..n).map(|_| angle(&mut rng)).collect())
            .collect();
        Self {
            manifold: Manifold::Torus(n),
            points,
            provenance: format!("uniform T^{n}, seed {seed}"),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMethod {
    Correlation,
    Box,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub method: EstimateMethod,
    pub value: f64,
    pub stderr: f64,
    /// Smallest and largest scale entering the fit.
    pub scale_range: (f64, f64),
    /// `(scale, statistic)` pairs: correlation sums or occupied box counts.
    pub curve: Vec<(f64, f64)>,
}

/// `count` radii spaced geometrically from `lo` to `hi`.
pub fn geometric_radii(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    let ratio = (hi / lo).ln() / (count - 1) as f64;
    (0..count).map(|i| lo * (ratio * i as f64).exp()).collect()
}

/// Least-squares slope of `y` on `x` and its standard error.
fn fit_slope(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let n = x.len();
    if n < 2 {
        return Err(Error::DegenerateFit(format!("{n} usable scales")));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all scales coincide".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let ssr: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - my - slope * (a - mx);
            r * r
        })
        .sum();
    let stderr = if n > 2 { (ssr / (nf - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok((slope, stderr))
}

/// Slope of `log C(r)` against `log r`, where `C(r)` is the fraction of
/// distinct pairs closer than `r`. Radii with `C(r) = 0` are dropped.
pub fn correlation_dimension(samples: &SampleSet, radii: &[f64]) -> Result<DimensionEstimate> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::DegenerateFit("fewer than two samples".into()));
    }
    let mut sorted = radii.to_vec();
    sorted.sort_by(f64::total_cmp);
    let pts = &samples.points;
    let m = samples.manifold;
    let counts = (0..n)
        .into_par_iter()
        .fold(
            || vec![0u64; sorted.len()],
            |mut acc, i| {
                for q in &pts[i + 1..] {
                    let d = m.distance(&pts[i], q);
                    let first = sorted.partition_point(|&r| r <= d);
                    if first < acc.len() {
                        acc[first] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; sorted.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let pairs = (n * (n - 1) / 2) as f64;
    let mut running = 0u64;
    let curve: Vec<(f64, f64)> = sorted
        .iter()
        .zip(&counts)
        .map(|(&r, &c)| {
            running += c;
            (r, running as f64 / pairs)
        })
        .collect();
    let used: Vec<(f64, f64)> = curve.iter().copied().filter(|&(_, c)| c > 0.0).collect();
    if used.is_empty() {
        return Err(Error::DegenerateFit("no pair closer than the largest radius".into()));
    }
    let x: Vec<f64> = used.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = used.iter().map(|p| p.1.ln()).collect();
    let (slope, stderr) = fit_slope(&x, &y)?;
    Ok(DimensionEstimate {
        method: EstimateMethod::Correlation,
        value: slope.max(0.0),
        stderr,
        scale_range: (used[0].0, used[used.len() - 1].0),
        curve,
    })
}

/// Box side lengths for [`box_counting`]: between 4 and
/// `max(8, (N/10)^{1/d})` boxes per axis, `d` the coordinate count.
pub fn default_box_scales(manifold: Manifold, sample_count: usize, count: usize) -> Vec<f64> {
    let d = manifold.coordinate_count() as f64;
    let span = match manifold {
        Manifold::Sphere3 => 2.0,
        _ => TAU,
    };
    let most = (sample_count as f64 / 10.0).powf(1.0 / d).max(8.0);
    geometric_radii(4.0, most, count)
        .into_iter()
        .map(|boxes| span / boxes.round())
        .collect()
}

/// Slope of `log N(ε)` against `log(1/ε)`, `N(ε)` the number of occupied
/// boxes of side `ε` in the coordinate chart (angles, or R⁴ coordinates
/// shifted into `[0, 2]`).
pub fn box_counting(samples: &SampleSet, scales: &[f64]) -> Result<DimensionEstimate> {
    if samples.is_empty() {
        return Err(Error::DegenerateFit("no samples".into()));
    }
    let shift = match samples.manifold {
        Manifold::Sphere3 => 1.0,
        _ => 0.0,
    };
    let curve: Vec<(f64, f64)> = scales
        .par_iter()
        .map(|&eps| {
            let boxes: HashSet<Vec<i64>> = samples
                .points
                .iter()
                .map(|p| p.iter().map(|v| ((v + shift) / eps).floor() as i64).collect())
                .collect();
            (eps, boxes.len() as f64)
        })
        .collect();
    let x: Vec<f64> = curve.iter().map(|p| -p.0.ln()).collect();
    let y: Vec<f64> = curve.iter().map(|p| p.1.ln()).collect();
    let (slope, stderr) = fit_slope(&x, &y)?;
    let lo = scales.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scales.iter().copied().fold(0.0, f64::max);
    Ok(DimensionEstimate {
        method: EstimateMethod::Box,
        value: slope.max(0.0),
        stderr,
        scale_range: (lo, hi),
        curve,
    })
}

/// One factor of a product measure on `T^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusFactor {
    PointMass { angle: f64 },
    Lebesgue,
    /// `f dm` with `f̂(0) = 1`.
    Density { density: LaurentPoly },
}

impl TorusFactor {
    /// `∫ λ^{-k} dν(λ)`.
    pub fn fourier(&self, k: i64) -> Complex64 {
        match self {
            TorusFactor::PointMass { angle } => Complex64::from_polar(1.0, -(k as f64) * angle),
            TorusFactor::Lebesgue => Complex64::new(if k == 0 { 1.0 } else { 0.0 }, 0.0),
            TorusFactor::Density { density } => density.coeff(k),
        }
    }

    /// Frequencies in `[-cutoff, cutoff]` where the coefficient can be nonzero.
    fn support(&self, cutoff: i64) -> Vec<i64> {
        match self {
            TorusFactor::PointMass { .. } => (-cutoff..=cutoff).collect(),
            TorusFactor::Lebesgue => vec![0],
            TorusFactor::Density { density } => density
                .terms()
                .map(|(k, _)| k)
                .filter(|k| k.abs() <= cutoff)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusTerm {
    pub k: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

/// A probability measure on `T^n`, given as a product of one-dimensional
/// factors or as a trigonometric-polynomial density `Σ c_k λ^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum TorusMeasureSpec {
    Product { factors: Vec<TorusFactor> },
    Density { n: usize, terms: Vec<TorusTerm> },
}

impl TorusMeasureSpec {
    pub fn product(factors: Vec<TorusFactor>) -> Result<Self> {
        let spec = TorusMeasureSpec::Product { factors };
        spec.check_mass()?;
        Ok(spec)
    }

    pub fn density(n: usize, terms: Vec<TorusTerm>) -> Result<Self> {
        if terms.iter().any(|t| t.k.len() != n) {
            return Err(Error::Invalid(format!("density terms must have {n} indices")));
        }
        let spec = TorusMeasureSpec::Density { n, terms };
        spec.check_mass()?;
        Ok(spec)
    }

    fn check_mass(&self) -> Result<()> {
        let mass = self.fourier(&vec![0; self.dim()]);
        if (mass - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::Invalid(format!("total mass {mass} is not 1")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            TorusMeasureSpec::Product { factors } => factors.len(),
            TorusMeasureSpec::Density { n, .. } => *n,
        }
    }

    /// `μ̂(k) = ∫ λ^{-k} dμ`.
    pub fn fourier(&self, k: &[i64]) -> Complex64 {
        match self {
            TorusMeasureSpec::Product { factors } => {
                factors.iter().zip(k).map(|(f, &ki)| f.fourier(ki)).product()
            }
            TorusMeasureSpec::Density { terms, .. } => terms
                .iter()
                .filter(|t| t.k == k)
                .map(|t| Complex64::new(t.re, t.im))
                .sum(),
        }
    }

    /// Multi-indices in `[-cutoff, cutoff]^n` where `μ̂` can be nonzero.
    fn support(&self, cutoff: i64) -> Vec<Vec<i64>> {
        match self {
            TorusMeasureSpec::Product { factors } => {
                factors.iter().fold(vec![Vec::new()], |acc, f| {
                    let s = f.support(cutoff);
                    acc.into_iter()
                        .flat_map(|prefix| {
                            s.iter().map(move |&k| {
                                let mut v = prefix.clone();
                                v.push(k);
                                v
                            })
                        })
                        .collect()
                })
            }
            TorusMeasureSpec::Density { terms, .. } => {
                let mut ks: Vec<Vec<i64>> = terms
                    .iter()
                    .filter(|t| t.k.iter().all(|v| v.abs() <= cutoff))
                    .map(|t| t.k.clone())
                    .collect();
                ks.sort();
                ks.dedup();
                ks
            }
        }
    }

    /// Samples of a product measure.
    pub fn sample(&self, count: usize, seed: u64) -> Result<SampleSet> {
        let TorusMeasureSpec::Product { factors } = self else {
            return Err(Error::Invalid("sampling needs a product measure".into()));
        };
        let columns = factors
            .iter()
            .enumerate()
            .map(|(axis, f)| match f {
                TorusFactor::PointMass { angle } => Ok(vec![*angle; count]),
                TorusFactor::Lebesgue => {
                    let mut rng = stream_rng(seed, axis as u64 + 1);
                    Ok((0..count).map(|_| rng.random::<f64>() * TAU).collect())
                }
                TorusFactor::Density { density } => {
                    sample_density(density, count, seed.wrapping_add(axis as u64 + 1))
                }
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        let points = (0..count)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        SampleSet::new(Manifold::Torus(factors.len()), points, format!("torus product, seed {seed}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PluriharmonicReport {
    pub pluriharmonic: bool,
    pub cutoff: i64,
    /// Mixed-sign multi-indices examined.
    pub checked: usize,
    pub max_violation: f64,
    pub worst_index: Option<Vec<i64>>,
}

/// Coefficients at or below this modulus count as zero.
pub const FOURIER_TOL: f64 = 1e-12;

fn mixed_sign(k: &[i64]) -> bool {
    k.iter().any(|&v| v > 0) && k.iter().any(|&v| v < 0)
}

/// Scans every mixed-sign `k` with all `|k_i| ≤ cutoff`; the measure is
/// pluriharmonic when `μ̂` vanishes there.
pub fn is_pluriharmonic(spec: &TorusMeasureSpec, cutoff: i64) -> PluriharmonicReport {
    let n = spec.dim();
    let side = (2 * cutoff + 1) as usize;
    let total = side.pow(n as u32);
    let mut checked = 0;
    let mut worst: Option<(f64, Vec<i64>)> = None;
    for flat in 0..total {
        let mut rest = flat;
        let k: Vec<i64> = (0..n)
            .map(|_| {
                let v = (rest % side) as i64 - cutoff;
                rest /= side;
                v
            })
            .collect();
        if !mixed_sign(&k) {
            continue;
        }
        checked += 1;
        let v = spec.fourier(&k).norm();
        if worst.as_ref().is_none_or(|w| v > w.0) {
            worst = Some((v, k));
        }
    }
    let (max_violation, worst_index) = match worst {
        Some((v, k)) if v > 0.0 => (v, Some(k)),
        Some((v, _)) => (v, None),
        None => (0.0, None),
    };
    PluriharmonicReport {
        pluriharmonic: max_violation <= FOURIER_TOL,
        cutoff,
        checked,
        max_violation,
        worst_index,
    }
}

/// `Σ_{0 < |k| ≤ cutoff} |k|^{t-n} |μ̂(k)|²`, Euclidean `|k|`.
pub fn torus_energy(spec: &TorusMeasureSpec, t: f64, cutoff: i64) -> Result<f64> {
    let n = spec.dim();
    if !(t > 0.0 && t < n as f64) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "(0, n)",
        });
    }
    let c2 = cutoff * cutoff;
    let terms: Vec<f64> = spec
        .support(cutoff)
        .into_par_iter()
        .filter_map(|k| {
            let r2: i64 = k.iter().map(|v| v * v).sum();
            (r2 > 0 && r2 <= c2).then(|| (r2 as f64).powf(0.5 * (t - n as f64)) * spec.fourier(&k).norm_sqr())
        })
        .collect();
    Ok(terms.iter().sum())
}

/// Behaviour of the partial sums `S(c)` of [`torus_energy`] as the cutoff
/// doubles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyGrowth {
    pub t: f64,
    pub cutoff: i64,
    /// `S(c), S(2c), S(4c)`.
    pub partial_sums: [f64; 3],
    /// `(S(4c) - S(2c)) / (S(2c) - S(c))`; below 1 for convergent sums.
    pub increment_ratio: f64,
    /// `(S(2c) - S(c)) / S(2c)` and `(S(4c) - S(2c)) / S(4c)`.
    pub relative_increments: [f64; 2],
}

pub fn energy_growth(spec: &TorusMeasureSpec, t: f64, cutoff: i64) -> Result<EnergyGrowth> {
    let s = [
        torus_energy(spec, t, cutoff)?,
        torus_energy(spec, t, 2 * cutoff)?,
        torus_energy(spec, t, 4 * cutoff)?,
    ];
    Ok(EnergyGrowth {
        t,
        cutoff,
        partial_sums: s,
        increment_ratio: (s[2] - s[1]) / (s[1] - s[0]),
        relative_increments: [(s[1] - s[0]) / s[1], (s[2] - s[1]) / s[2]],
    })
}

/// `δ_1 ⊗ m^{⊗(n-1)}` on `T^n`.
pub fn plh_measure(n: usize) -> TorusMeasureSpec {
    let mut factors = vec![TorusFactor::PointMass { angle: 0.0 }];
    factors.extend(std::iter::repeat_n(TorusFactor::Lebesgue, n.saturating_sub(1)));
    TorusMeasureSpec::Product { factors }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlhReport {
    pub n: usize,
    pub measure: TorusMeasureSpec,
    pub pluriharmonic: PluriharmonicReport,
    /// Growth at `t = n - 1 - 0.2` and `t = n - 1 + 0.2`.
    pub energy_below: EnergyGrowth,
    pub energy_above: EnergyGrowth,
    pub box_dimension: DimensionEstimate,
}

/// Builds `δ_1 ⊗ m^{⊗(n-1)}` and collects the evidence for its dimension
/// `n - 1`: pluriharmonicity at `cutoff`, the energy transition at `n - 1`
/// and a box count of `samples` draws.
pub fn plh_example(n: usize, cutoff: i64, energy_cutoff: i64, samples: usize, seed: u64) -> Result<PlhReport> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            range: "[2, ∞)",
        });
    }
    let measure = plh_measure(n);
    let edge = (n - 1) as f64;
    let draws = measure.sample(samples, seed)?;
    let scales = default_box_scales(draws.manifold, samples, 8);
    Ok(PlhReport {
        n,
        pluriharmonic: is_pluriharmonic(&measure, cutoff),
        energy_below: energy_growth(&measure, edge - 0.2, energy_cutoff)?,
        energy_above: energy_growth(&measure, edge + 0.2, energy_cutoff)?,
        box_dimension: box_counting(&draws, &scales)?,
        measure,
    })
}

/// Correlation radii for calibration runs: geometric, spanning small scales
/// relative to the diameter.
pub fn default_radii(manifold: Manifold, count: usize) -> Vec<f64> {
    match manifold {
        Manifold::Circle => geometric_radii(0.01, 0.3, count),
        Manifold::Sphere3 => geometric_radii(0.1, 0.5, count),
        Manifold::Torus(n) => geometric_radii(0.01, 0.3 * (n as f64).sqrt(), count),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::alpha0;
    use crate::circle::CircleRieszSpec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn calibration_circle_and_sphere() {
        let s = SampleSet::uniform_circle(10_000, 1);
        let e = correlation_dimension(&s, &default_radii(Manifold::Circle, 10)).unwrap();
        assert!((0.95..=1.05).contains(&e.value), "{e:?}");
        let s = SampleSet::uniform_sphere(10_000, 2);
        let e = correlation_dimension(&s, &default_radii(Manifold::Sphere3, 10)).unwrap();
        assert!((2.85..=3.15).contains(&e.value), "{e:?}");
    }

    #[test]
    fn point_mass_has_dimension_zero() {
        let s = SampleSet::new(Manifold::Circle, vec![vec![1.0]; 2000], "atom").unwrap();
        let e = correlation_dimension(&s, &default_radii(Manifold::Circle, 6)).unwrap();
        assert_eq!(e.value, 0.0);
        let e = box_counting(&s, &default_box_scales(Manifold::Circle, 2000, 6)).unwrap();
        assert_eq!(e.value, 0.0);
    }

    #[test]
    fn degenerate_fits_are_reported() {
        let s = SampleSet::new(Manifold::Circle, vec![vec![0.0], vec![3.0]], "far").unwrap();
        assert!(matches!(
            correlation_dimension(&s, &[0.01, 0.1]),
            Err(Error::DegenerateFit(_))
        ));
    }

    #[test]
    fn box_counts_on_flat_sets() {
        let s = SampleSet::uniform_circle(10_000, 3);
        let e = box_counting(&s, &default_box_scales(Manifold::Circle, 10_000, 8)).unwrap();
        assert!((0.9..=1.1).contains(&e.value), "{e:?}");
        let s = SampleSet::uniform_torus(2, 10_000, 4);
        let e = box_counting(&s, &default_box_scales(Manifold::Torus(2), 10_000, 8)).unwrap();
        assert!((1.85..=2.15).contains(&e.value), "{e:?}");
        let frozen: Vec<Vec<f64>> = s.points.iter().map(|p| vec![1.0, p[1]]).collect();
        let f = SampleSet::new(Manifold::Torus(2), frozen, "circle in T2").unwrap();
        let e = box_counting(&f, &default_box_scales(Manifold::Torus(2), 10_000, 8)).unwrap();
        assert!((0.9..=1.1).contains(&e.value), "{e:?}");
    }

    #[test]
    fn sample_sets_check_the_manifold() {
        assert!(SampleSet::new(Manifold::Sphere3, vec![vec![1.0, 0.0, 0.0, 1e-5]], "x").is_err());
        assert!(SampleSet::new(Manifold::Torus(2), vec![vec![1.0]], "x").is_err());
        let s = SampleSet::new(Manifold::Circle, vec![vec![-1.0]], "x").unwrap();
        assert!((s.points[0][0] - (TAU - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn pluriharmonic_examples() {
        let r = is_pluriharmonic(&plh_measure(2), 8);
        assert!(r.pluriharmonic);
        assert_eq!(r.checked, 2 * 8 * 8);
        let mm = TorusMeasureSpec::product(vec![TorusFactor::Lebesgue, TorusFactor::Lebesgue]).unwrap();
        assert!(is_pluriharmonic(&mm, 8).pluriharmonic);
        let twisted = TorusMeasureSpec::density(
            2,
            vec![
                TorusTerm { k: vec![0, 0], re: 1.0, im: 0.0 },
                TorusTerm { k: vec![1, -1], re: 0.5, im: 0.0 },
                TorusTerm { k: vec![-1, 1], re: 0.5, im: 0.0 },
            ],
        )
        .unwrap();
        let r = is_pluriharmonic(&twisted, 4);
        assert!(!r.pluriharmonic);
        assert_eq!(r.max_violation, 0.5);
        for n in 2..=4 {
            assert!(is_pluriharmonic(&plh_measure(n), 8).pluriharmonic);
        }
    }

    #[test]
    fn fourier_of_product_factors() {
        let density = LaurentPoly::from_terms([(0, c(1.0)), (2, c(0.25)), (-2, c(0.25))]);
        let spec = TorusMeasureSpec::product(vec![
            TorusFactor::PointMass { angle: 0.5 },
            TorusFactor::Density { density },
        ])
        .unwrap();
        let v = spec.fourier(&[3, 2]);
        assert!((v - Complex64::from_polar(0.25, -1.5)).norm() < 1e-15);
        assert_eq!(spec.fourier(&[3, 1]), c(0.0));
        assert!(TorusMeasureSpec::product(vec![TorusFactor::Density {
            density: LaurentPoly::monomial(0, c(2.0))
        }])
        .is_err());
    }

    #[test]
    fn torus_energy_examples() {
        let leb = TorusMeasureSpec::product(vec![TorusFactor::Lebesgue; 3]).unwrap();
        assert_eq!(torus_energy(&leb, 1.5, 64).unwrap(), 0.0);
        let m = plh_measure(2);
        // Direct sum oracle: 2 Σ_{k=1}^{c} k^{t-2}.
        let want: f64 = 2.0 * (1..=100).map(|k| f64::from(k).powf(0.9 - 2.0)).sum::<f64>();
        assert!((torus_energy(&m, 0.9, 100).unwrap() - want).abs() < 1e-12);
        assert!(torus_energy(&m, 2.0, 10).is_err());
    }

    #[test]
    fn energy_transition_separates_dimension() {
        for n in 2..=3usize {
            let m = plh_measure(n);
            let edge = (n - 1) as f64;
            let below = energy_growth(&m, edge - 0.2, 1 << 10).unwrap();
            let above = energy_growth(&m, edge + 0.2, 1 << 10).unwrap();
            assert!(below.increment_ratio < 1.0 && above.increment_ratio > 1.0);
            // Ratios follow 2^{t-n+1}.
            assert!((below.increment_ratio - 2f64.powf(-0.2)).abs() < 1e-3);
            assert!((above.increment_ratio - 2f64.powf(0.2)).abs() < 1e-3);
            assert!(below.relative_increments[1] < below.relative_increments[0]);
            assert!(above.relative_increments[1] > 0.05);
        }
    }

    #[test]
    fn plh_examples() {
        let r = plh_example(2, 8, 1 << 10, 10_000, 1).unwrap();
        assert!(r.pluriharmonic.pluriharmonic);
        assert!((r.box_dimension.value - 1.0).abs() <= 0.15, "{:?}", r.box_dimension);
        let r = plh_example(3, 8, 1 << 10, 10_000, 2).unwrap();
        assert!((r.box_dimension.value - 2.0).abs() <= 0.2, "{:?}", r.box_dimension);
        assert!(plh_example(1, 8, 16, 10, 1).is_err());
    }

    #[test]
    fn circle_riesz_samples_respect_the_bound() {
        let freqs: Vec<u64> = (1..=6).map(|k| 3u64.pow(k)).collect();
        let spec = CircleRieszSpec::new(freqs.clone(), vec![c(0.9); 6]).unwrap();
        let pts = spec.sample(6, 10_000, 5).unwrap();
        let s = SampleSet::new(Manifold::Circle, pts.into_iter().map(|a| vec![a]).collect(), "riesz").unwrap();
        let e = correlation_dimension(&s, &default_radii(Manifold::Circle, 10)).unwrap();
        let wide: Vec<u128> = freqs.iter().map(|&j| u128::from(j)).collect();
        let a0 = alpha0(&wide, &[0.9; 6], 6, 3).unwrap();
        assert!(e.value >= 1.0 - a0 - 0.25, "{} vs {}", e.value, 1.0 - a0);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = plh_measure(3);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<TorusMeasureSpec>(&text).unwrap(), spec);
    }
}
