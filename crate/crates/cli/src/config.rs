//! JSON experiment configs. Every field has a default except the product
//! being studied; the serialized form of a parsed config is the resolved
//! config embedded in reports.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rieszlab_core::{CircleRieszSpec, MonomialPoly, RieszTriple, TripleSpec};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Reads and parses a config; a missing path parses as `{}`.
pub fn load<T: DeserializeOwned>(path: Option<&Path>) -> Result<T> {
    let Some(path) = path else {
        return serde_json::from_str("{}").map_err(|source| CliError::ParseConfig {
            path: PathBuf::from("<defaults>"),
            source,
        });
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::ParseConfig {
        path: path.to_path_buf(),
        source,
    })
}

fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    load(Some(path))
}

/// `j_k = ratio^k`, `c_k = modulus` for `k = 1..=count`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleFamily {
    pub ratio: u64,
    pub modulus: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CircleSource {
    Spec(CircleRieszSpec),
    SpecPath(PathBuf),
    Family(CircleFamily),
}

/// A circle product in the form the commands need: bounds run on the full
/// frequency list, energies on an explicit (u64) prefix.
pub struct CircleInput {
    pub freqs: Vec<u128>,
    pub coeffs: Vec<Complex64>,
}

impl CircleSource {
    pub fn resolve(&self, base: &Path) -> Result<CircleInput> {
        let spec = match self {
            Self::Spec(s) => s.clone(),
            Self::SpecPath(p) => load_json::<CircleRieszSpec>(&base.join(p))?,
            Self::Family(f) => return f.resolve(),
        };
        Ok(CircleInput {
            freqs: spec.freqs().iter().map(|&j| u128::from(j)).collect(),
            coeffs: spec.coeffs().to_vec(),
        })
    }
}

impl CircleFamily {
    fn resolve(&self) -> Result<CircleInput> {
        if self.ratio < 3 {
            return Err(CliError::Config(format!("family ratio {} is below 3", self.ratio)));
        }
        if !(self.modulus.abs() <= 1.0) {
            return Err(CliError::Config(format!("family modulus {} is outside [-1, 1]", self.modulus)));
        }
        let freqs = (1..=self.count as u32)
            .map(|k| u128::from(self.ratio).checked_pow(k))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CliError::Config(format!("{}^{} overflows", self.ratio, self.count)))?;
        Ok(CircleInput {
            freqs,
            coeffs: vec![Complex64::new(self.modulus, 0.0); self.count],
        })
    }
}

impl CircleInput {
    pub fn moduli(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm()).collect()
    }

    /// The first `n` factors as an explicit spec.
    pub fn prefix(&self, n: usize) -> Result<CircleRieszSpec> {
        let freqs = self.freqs[..n]
            .iter()
            .map(|&j| u64::try_from(j))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| CliError::Config(format!("frequencies of the first {n} factors exceed u64")))?;
        Ok(CircleRieszSpec::new(freqs, self.coeffs[..n].to_vec())?)
    }
}

/// Monomial factors on `j = 1, 3, 9, …` with a common coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereFamily {
    pub count: usize,
    pub a: [f64; 2],
}

/// Largest family size whose degrees fit the factor type.
const MAX_FAMILY: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SphereSource {
    Triple(TripleSpec),
    TriplePath(PathBuf),
    Family(SphereFamily),
}

impl SphereSource {
    pub fn resolve(&self, base: &Path) -> Result<RieszTriple> {
        let triple = match self {
            Self::Triple(spec) => spec.resolve(base)?,
            Self::TriplePath(p) => {
                let path = base.join(p);
                let spec: TripleSpec = load_json(&path)?;
                spec.resolve(path.parent().unwrap_or(base))?
            }
            Self::Family(f) => {
                if f.count > MAX_FAMILY {
                    return Err(CliError::Config(format!(
                        "family count {} exceeds {MAX_FAMILY}",
                        f.count
                    )));
                }
                RieszTriple::monomial_family(f.count, Complex64::new(f.a[0], f.a[1]))
            }
        };
        let report = triple.validate();
        if !report.valid {
            return Err(CliError::Config(format!(
                "invalid triple: {}",
                serde_json::to_string(&report.violations).unwrap_or_default()
            )));
        }
        Ok(triple)
    }
}

fn t_grid_circle() -> Vec<f64> {
    (1..=9).map(|i| f64::from(i) / 10.0).collect()
}

fn t_grid_sphere() -> Vec<f64> {
    (1..=5).map(|i| f64::from(i) / 2.0).collect()
}

const fn three() -> usize {
    3
}

const fn direct_grid() -> usize {
    1 << 12
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleDimConfig {
    pub product: CircleSource,
    /// `K` for the bounds; all factors by default.
    #[serde(default)]
    pub truncation: Option<usize>,
    #[serde(default)]
    pub window: Option<usize>,
    /// Factors multiplied out for the energy table.
    #[serde(default = "three")]
    pub energy_factors: usize,
    #[serde(default = "t_grid_circle")]
    pub t_grid: Vec<f64>,
    /// Grid size `M` of the direct energy sum.
    #[serde(default = "direct_grid")]
    pub direct_grid: usize,
    #[serde(default)]
    pub seed: u64,
}

const fn parseval_tol() -> f64 {
    1e-9
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereDimConfig {
    pub product: SphereSource,
    #[serde(default)]
    pub truncation: Option<usize>,
    #[serde(default)]
    pub window: Option<usize>,
    #[serde(default = "t_grid_sphere")]
    pub t_grid: Vec<f64>,
    /// Monte Carlo pairs per `t`; 0 skips the sampled energy.
    #[serde(default)]
    pub mc_pairs: usize,
    /// Basis cache file, read if present and rewritten after the run.
    #[serde(default)]
    pub basis_cache: Option<PathBuf>,
    /// Relative tolerance on the Parseval and spectral-structure checks.
    #[serde(default = "parseval_tol")]
    pub parseval_tol: f64,
    #[serde(default)]
    pub seed: u64,
}

const fn rw_budget() -> u64 {
    20_000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RwSearchConfig {
    pub j: u32,
    /// `δ` evaluations per start.
    #[serde(default = "rw_budget")]
    pub budget: u64,
    #[serde(default)]
    pub seed: u64,
}

const fn slices() -> usize {
    10_000
}

const fn z_max() -> f64 {
    4.0
}

const fn exact_tol() -> f64 {
    1e-12
}

fn default_test_functions() -> Vec<MonomialPoly> {
    let one = Complex64::new(1.0, 0.0);
    std::iter::once(MonomialPoly::one())
        .chain(
            [[1, 0, 1, 0], [0, 0, 1, 0], [1, 0, 0, 2], [0, 1, 0, 1], [2, 0, 0, 0]]
                .into_iter()
                .map(|e| MonomialPoly::monomial(e, one)),
        )
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceCheckConfig {
    pub product: SphereSource,
    #[serde(default)]
    pub truncation: Option<usize>,
    #[serde(default = "slices")]
    pub slices: usize,
    #[serde(default = "default_test_functions")]
    pub test_functions: Vec<MonomialPoly>,
    /// Largest accepted `|lhs - rhs| / stderr`.
    #[serde(default = "z_max")]
    pub z_max: f64,
    /// Differences below this pass regardless of the standard error.
    #[serde(default = "exact_tol")]
    pub exact_tol: f64,
    #[serde(default)]
    pub seed: u64,
}

const fn two() -> usize {
    2
}

const fn plh_cutoff() -> i64 {
    8
}

const fn energy_cutoff() -> i64 {
    1 << 10
}

const fn samples() -> usize {
    10_000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlhDemoConfig {
    #[serde(default = "two")]
    pub n: usize,
    /// `|k_i|` bound of the pluriharmonicity scan.
    #[serde(default = "plh_cutoff")]
    pub cutoff: i64,
    #[serde(default = "energy_cutoff")]
    pub energy_cutoff: i64,
    #[serde(default = "samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
}

const fn radii() -> usize {
    10
}

const fn circle_gate() -> [f64; 2] {
    [0.9, 1.1]
}

const fn sphere_gate() -> [f64; 2] {
    [2.7, 3.3]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrateConfig {
    #[serde(default = "samples")]
    pub samples: usize,
    #[serde(default = "radii")]
    pub radii: usize,
    #[serde(default = "circle_gate")]
    pub circle_gate: [f64; 2],
    #[serde(default = "sphere_gate")]
    pub sphere_gate: [f64; 2],
    #[serde(default)]
    pub seed: u64,
}
