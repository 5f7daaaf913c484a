//! Classical Riesz products on the unit circle.
//!
//! A spec holds lacunary frequencies `j₁ < j₂ < …` (ratio at least 3) and
//! coefficients `c_k` in the closed unit disk. Its N-factor partial product is
//! the trigonometric polynomial
//!
//! ```text
//! Π_{k ≤ N} (1 + (c_k λ^{j_k} + conj(c_k) λ^{-j_k}) / 2)
//! ```
//!
//! whose coefficient map is indexed so that entry `γ` multiplies `λ^γ`.
//! Lacunarity makes every frequency of the expansion a unique signed sum
//! `Σ ε_ℓ j_ℓ`, so single coefficients are available without expanding.

mod energy;

pub use energy::{energy_direct, energy_fourier};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::rng::stream_rng;

/// Grid size used by inverse-CDF sampling.
pub const SAMPLE_GRID: usize = 1 << 16;

const MODULUS_SLACK: f64 = 1e-12;

/// Checks `j_{k+1} ≥ 3 j_k` and `j_1 ≥ 1`.
pub fn check_lacunary(freqs: &[u128]) -> Result<()> {
    if let Some(&first) = freqs.first() {
        if first == 0 {
            return Err(Error::Invalid("frequencies must be positive".into()));
        }
    }
    for (i, w) in freqs.windows(2).enumerate() {
        if w[1] < w[0].saturating_mul(3) {
            return Err(Error::Lacunarity {
                index: i + 1,
                prev: w[0],
                next: w[1],
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct CircleRieszSpec {
    freqs: Vec<u64>,
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    #[serde(rename = "J")]
    j: Vec<u64>,
    c: Vec<[f64; 2]>,
}

impl TryFrom<SpecJson> for CircleRieszSpec {
    type Error = Error;

    fn try_from(s: SpecJson) -> Result<Self> {
        Self::new(
            s.j,
            s.c.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
        )
    }
}

impl From<CircleRieszSpec> for SpecJson {
    fn from(s: CircleRieszSpec) -> Self {
        SpecJson {
            j: s.freqs,
            c: s.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl CircleRieszSpec {
    pub fn new(freqs: Vec<u64>, coeffs: Vec<Complex64>) -> Result<Self> {
        if freqs.len() != coeffs.len() {
            return Err(Error::Invalid(format!(
                "{} frequencies but {} coefficients",
                freqs.len(),
                coeffs.len()
            )));
        }
        check_lacunary(&freqs.iter().map(|&j| u128::from(j)).collect::<Vec<_>>())?;
        if let Some((index, c)) = coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !(c.norm() <= 1.0 + MODULUS_SLACK))
        {
            return Err(Error::CoefficientModulus {
                index,
                modulus: c.norm(),
            });
        }
        Ok(Self { freqs, coeffs })
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    pub fn freqs(&self) -> &[u64] {
        &self.freqs
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn check_count(&self, n: usize) -> Result<()> {
        if n > self.len() {
            return Err(Error::FactorCount {
                requested: n,
                available: self.len(),
            });
        }
        Ok(())
    }

    /// The k-th factor `1 + (c λ^j + c̄ λ^{-j})/2` (0-based).
    pub fn factor(&self, k: usize) -> LaurentPoly {
        let j = self.freqs[k] as i64;
        let c = self.coeffs[k];
        LaurentPoly::from_terms([
            (0, Complex64::new(1.0, 0.0)),
            (j, c / 2.0),
            (-j, c.conj() / 2.0),
        ])
    }

    /// Expanded product of the first `n` factors.
    pub fn partial_product(&self, n: usize) -> Result<LaurentPoly> {
        self.check_count(n)?;
        Ok((0..n).fold(LaurentPoly::one(), |acc, k| &acc * &self.factor(k)))
    }

    /// Coefficient of `λ^γ` in the n-factor product, read off the unique
    /// signed representation of `γ`.
    pub fn fourier_coefficient(&self, n: usize, gamma: i64) -> Result<Complex64> {
        self.check_count(n)?;
        let Some(rep) = unique_representation(&self.freqs, n, gamma) else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        Ok(rep
            .eps
            .iter()
            .zip(&self.coeffs)
            .fold(Complex64::new(1.0, 0.0), |acc, (&e, &c)| match e {
                1 => acc * c / 2.0,
                -1 => acc * c.conj() / 2.0,
                _ => acc,
            }))
    }

    /// `count` angles in `[0, 2π)` distributed by the n-factor density, by
    /// inverse-CDF sampling on a `SAMPLE_GRID`-point grid.
    pub fn sample(&self, n: usize, count: usize, seed: u64) -> Result<Vec<f64>> {
        let density = self.partial_product(n)?;
        sample_density(&density, count, seed)
    }
}

/// Inverse-CDF sampler for a nonnegative trigonometric density.
pub fn sample_density(density: &LaurentPoly, count: usize, seed: u64) -> Result<Vec<f64>> {
    let g = SAMPLE_GRID;
    let values = density.real_grid(g);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -1e-10 {
        return Err(Error::NegativeDensity { min });
    }
    // Trapezoid masses per cell [θ_m, θ_{m+1}).
    let mut cdf = Vec::with_capacity(g + 1);
    cdf.push(0.0);
    let mut acc = 0.0;
    for m in 0..g {
        let a = values[m].max(0.0);
        let b = values[(m + 1) % g].max(0.0);
        acc += 0.5 * (a + b);
        cdf.push(acc);
    }
    let total = acc;
    let step = std::f64::consts::TAU / g as f64;
    let mut rng = stream_rng(seed, 0);
    Ok((0..count)
        .map(|_| {
            let u = rng.random::<f64>() * total;
            let cell = cdf.partition_point(|&c| c <= u).clamp(1, g) - 1;
            let width = cdf[cell + 1] - cdf[cell];
            let frac = if width > 0.0 { (u - cdf[cell]) / width } else { 0.5 };
            (cell as f64 + frac) * step
        })
        .collect())
}

/// A signed sum `γ = Σ ε_ℓ j_ℓ` with `ε_ℓ ∈ {-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedCombination {
    pub eps: Vec<i8>,
    pub gamma: i64,
}

impl SignedCombination {
    pub fn from_eps(freqs: &[u64], eps: Vec<i8>) -> Self {
        let gamma = eps
            .iter()
            .zip(freqs)
            .map(|(&e, &j)| i64::from(e) * j as i64)
            .sum();
        Self { eps, gamma }
    }

    /// Index of the last nonzero sign (the "top" frequency), if any.
    pub fn top(&self) -> Option<usize> {
        self.eps.iter().rposition(|&e| e != 0)
    }
}

/// Greedy signed representation of `γ` over the first `k` frequencies.
///
/// With ratio at least 3 the partial sums satisfy `Σ_{ℓ<m} j_ℓ < j_m / 2`, so at
/// each step at most one sign keeps the remainder reachable and the greedy
/// choice is the only possible one.
pub fn unique_representation(freqs: &[u64], k: usize, gamma: i64) -> Option<SignedCombination> {
    let freqs = &freqs[..k.min(freqs.len())];
    let reach: i128 = freqs.iter().map(|&j| j as i128).sum();
    if i128::from(gamma).abs() > reach {
        return None;
    }
    let mut eps = vec![0i8; freqs.len()];
    let mut rest = i128::from(gamma);
    for (slot, &j) in eps.iter_mut().zip(freqs).rev() {
        let j = j as i128;
        let best = [-1i8, 0, 1]
            .into_iter()
            .min_by_key(|&e| (rest - i128::from(e) * j).abs())
            .unwrap_or(0);
        *slot = best;
        rest -= i128::from(best) * j;
    }
    (rest == 0).then_some(SignedCombination { eps, gamma })
}

/// All `3^k` signed sums over the first `k` frequencies.
pub fn signed_sums(freqs: &[u64], k: usize) -> Vec<SignedCombination> {
    let mut out = vec![Vec::<i8>::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|e| {
                [-1i8, 0, 1].into_iter().map(move |s| {
                    let mut v = e.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|eps| SignedCombination::from_eps(freqs, eps))
        .collect()
}
