//! Complex spherical harmonics `H(p,q)` on S³ ⊂ C².
//!
//! `H(p,q)` is the orthogonal complement, inside the bidegree-(p,q) monomial
//! span, of `|z|²` times the bidegree-(p-1,q-1) span. Both spans split into
//! blocks by torus weight `(α₁-β₁, α₂-β₂)`: monomials of different weight are
//! exactly orthogonal under σ. Each block contributes exactly one harmonic,
//! which gives `dim H(p,q) = p + q + 1`, and that harmonic is a Jacobi
//! polynomial in `|z₁|²` with closed-form coefficients and norm.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use statrs::function::gamma::ln_gamma;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{BidegreePoly, MonomialPoly, DIM};

/// Bumped whenever the basis construction changes; stored in cache files.
pub const BASIS_VERSION: u32 = 2;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim H(p,q)` in C^n: `C(p+n-1,p) C(q+n-1,q) - C(p+n-2,p-1) C(q+n-2,q-1)`.
pub fn hpq_dimension(p: u32, q: u32, n: u32) -> usize {
    let (p, q, n) = (u64::from(p), u64::from(q), u64::from(n));
    let full = binomial(p + n - 1, p) * binomial(q + n - 1, q);
    let lower = if p > 0 && q > 0 {
        binomial(p + n - 2, p - 1) * binomial(q + n - 2, q - 1)
    } else {
        0
    };
    (full - lower) as usize
}

/// Orthonormal basis of `H(p,q)` in `L²(σ)`, n = 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HpqBasis {
    pub p: u32,
    pub q: u32,
    pub n: u32,
    pub basis: Vec<BidegreePoly>,
}

fn monomial_exps(p: u32, q: u32, w1: i64, b1: u32) -> [u32; 4] {
    let a1 = (w1 + i64::from(b1)) as u32;
    [a1, p - a1, b1, q - b1]
}

fn binomial_f64(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// The unit harmonic of one weight block, as a polynomial.
///
/// On S³ the block restricts to `phase · u^{A/2} (1-u)^{B/2} Q(u)` with
/// `u = |z₁|²` uniform, so harmonicity forces `Q` to be the shifted Jacobi
/// polynomial `P_n^{(A,B)}(1-2u)`. Its Bernstein coefficients give the
/// monomial coefficients and its norm is known in closed form.
fn block_element(p: u32, q: u32, w1: i64) -> Result<MonomialPoly> {
    let lo = (-w1).max(0) as u32;
    let hi = i64::from(q).min(i64::from(p) - w1) as u32;
    let n = hi - lo;
    let a = w1.unsigned_abs() as u32;
    let b = (i64::from(p) - w1 - i64::from(q)).unsigned_abs() as u32;
    let (nf, af, bf) = (f64::from(n), f64::from(a), f64::from(b));
    let ln_norm_sq = ln_gamma(nf + af + 1.0) + ln_gamma(nf + bf + 1.0)
        - (2.0 * nf + af + bf + 1.0).ln()
        - ln_gamma(nf + af + bf + 1.0)
        - ln_gamma(nf + 1.0);
    let scale = (-0.5 * ln_norm_sq).exp();
    if !scale.is_finite() {
        return Err(Error::RankDeficiency {
            p,
            q,
            rank: 0,
            expected: 1,
        });
    }
    Ok(MonomialPoly::from_terms((0..=n).map(|k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let x = sign * binomial_f64(n + a, n - k) * binomial_f64(n + b, k) * scale;
        (monomial_exps(p, q, w1, lo + k), Complex64::new(x, 0.0))
    })))
}

/// Builds the σ-orthonormal basis of `H(p,q)` for n = 2.
pub fn build_basis(p: u32, q: u32) -> Result<HpqBasis> {
    let basis = (-i64::from(q)..=i64::from(p))
        .map(|w1| block_element(p, q, w1).and_then(|poly| BidegreePoly::new(p, q, poly)))
        .collect::<Result<Vec<_>>>()?;
    let expected = hpq_dimension(p, q, DIM);
    if basis.len() != expected {
        return Err(Error::RankDeficiency {
            p,
            q,
            rank: basis.len(),
            expected,
        });
    }
    Ok(HpqBasis {
        p,
        q,
        n: DIM,
        basis,
    })
}

impl HpqBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `⟨f, b⟩` for each basis element.
    pub fn coefficients(&self, f: &MonomialPoly) -> Vec<Complex64> {
        self.basis
            .iter()
            .map(|b| f.sphere_inner_product(b.poly()))
            .collect()
    }

    /// Orthogonal projection of `f` onto `H(p,q)`.
    pub fn project(&self, f: &MonomialPoly) -> BidegreePoly {
        let coeffs = self.coefficients(f);
        self.combine(&coeffs)
    }

    fn combine(&self, coeffs: &[Complex64]) -> BidegreePoly {
        let poly = MonomialPoly::from_terms(
            self.basis
                .iter()
                .zip(coeffs)
                .flat_map(|(b, &c)| b.poly().terms().map(move |(e, v)| (e, v * c))),
        );
        BidegreePoly::new(self.p, self.q, poly).expect("basis elements share the bidegree")
    }

    /// `K_{p,q}(z, ζ) = Σ_b b(z) conj(b(ζ))`.
    pub fn reproducing_kernel(&self, z: [Complex64; 2], zeta: [Complex64; 2]) -> Complex64 {
        self.basis
            .iter()
            .map(|b| b.poly().evaluate(z) * b.poly().evaluate(zeta).conj())
            .sum()
    }

    /// `K_{p,q}(·, ζ)` as a polynomial.
    pub fn kernel_at(&self, zeta: [Complex64; 2]) -> BidegreePoly {
        let coeffs: Vec<Complex64> = self
            .basis
            .iter()
            .map(|b| b.poly().evaluate(zeta).conj())
            .collect();
        self.combine(&coeffs)
    }
}

/// Built bases keyed by bidegree. Construction is explicit (`prefill`/`get`)
/// and parallel across bidegrees; stored bases are never mutated.
#[derive(Clone, Debug, Default)]
pub struct BasisCache {
    bases: BTreeMap<(u32, u32), HpqBasis>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    bases: Vec<HpqBasis>,
}

impl BasisCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Builds every missing basis in `pairs`, in parallel.
    pub fn prefill(&mut self, pairs: &BTreeSet<(u32, u32)>) -> Result<()> {
        let missing: Vec<(u32, u32)> = pairs
            .iter()
            .filter(|k| !self.bases.contains_key(k))
            .copied()
            .collect();
        let built = missing
            .par_iter()
            .map(|&(p, q)| build_basis(p, q))
            .collect::<Result<Vec<_>>>()?;
        for b in built {
            self.bases.insert((b.p, b.q), b);
        }
        Ok(())
    }

    pub fn get(&mut self, p: u32, q: u32) -> Result<&HpqBasis> {
        match self.bases.entry((p, q)) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => Ok(e.insert(build_basis(p, q)?)),
        }
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let file = CacheFile {
            version: BASIS_VERSION,
            bases: self.bases.values().cloned().collect(),
        };
        std::fs::write(path, serde_json::to_string(&file)?)
    }

    /// Loads a cache file; a file written by another construction version is
    /// ignored and yields an empty cache.
    pub fn load(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: CacheFile = serde_json::from_str(&text)?;
        if file.version != BASIS_VERSION {
            return Ok(Self::default());
        }
        Ok(Self {
            bases: file.bases.into_iter().map(|b| ((b.p, b.q), b)).collect(),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralEntry {
    pub projection: BidegreePoly,
    pub norm_sq: f64,
}

/// The `H(p,q)` components of a polynomial density.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SpectralDecomposition {
    pub entries: BTreeMap<(u32, u32), SpectralEntry>,
}

impl SpectralDecomposition {
    /// Bidegrees whose component has squared norm above `tol`.
    pub fn spectrum(&self, tol: f64) -> Vec<(u32, u32)> {
        self.entries
            .iter()
            .filter(|(_, e)| e.norm_sq > tol)
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn total_norm_sq(&self) -> f64 {
        self.entries.values().map(|e| e.norm_sq).sum()
    }

    pub fn norm_sq(&self, p: u32, q: u32) -> f64 {
        self.entries.get(&(p, q)).map_or(0.0, |e| e.norm_sq)
    }

    /// `(p, q, ‖μ_{p,q}‖²)` triples for reports.
    pub fn masses(&self) -> Vec<(u32, u32, f64)> {
        self.entries.iter().map(|(&(p, q), e)| (p, q, e.norm_sq)).collect()
    }
}

fn decompose_over(
    f: &MonomialPoly,
    pairs: BTreeSet<(u32, u32)>,
    cache: &mut BasisCache,
) -> Result<SpectralDecomposition> {
    cache.prefill(&pairs)?;
    let cache = &*cache;
    let entries = pairs
        .into_par_iter()
        .map(|(p, q)| {
            let basis = &cache.bases[&(p, q)];
            let coeffs = basis.coefficients(f);
            let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
            ((p, q), SpectralEntry {
                projection: basis.combine(&coeffs),
                norm_sq,
            })
        })
        .filter(|(_, e)| e.norm_sq > 0.0)
        .collect();
    Ok(SpectralDecomposition { entries })
}

/// `H(p,q)` components of `f` over every `(p,q)` that can be nonzero: a
/// bidegree-(a,b) term lives in `⊕_ℓ H(a-ℓ, b-ℓ)`.
pub fn decompose(f: &MonomialPoly, cache: &mut BasisCache) -> Result<SpectralDecomposition> {
    let pairs: BTreeSet<(u32, u32)> = f
        .bidegrees()
        .into_iter()
        .flat_map(|(a, b)| (0..=a.min(b)).map(move |l| (a - l, b - l)))
        .collect();
    decompose_over(f, pairs, cache)
}

/// Like [`decompose`], but projects onto every `(p,q)` with `p + q ≤ deg f`.
pub fn decompose_exhaustive(f: &MonomialPoly, cache: &mut BasisCache) -> Result<SpectralDecomposition> {
    let deg = f.total_degree().unwrap_or(0);
    let pairs: BTreeSet<(u32, u32)> = if f.is_zero() {
        BTreeSet::new()
    } else {
        (0..=deg)
            .flat_map(|p| (0..=deg - p).map(move |q| (p, q)))
            .collect()
    };
    decompose_over(f, pairs, cache)
}

/// Projection of `f` onto `H(p,q)`.
pub fn project(f: &MonomialPoly, p: u32, q: u32, cache: &mut BasisCache) -> Result<BidegreePoly> {
    Ok(cache.get(p, q)?.project(f))
}

/// `‖μ_{0,0}‖² + Σ_{j≥1} j^{t-2n+1} Σ_{p+q=j} ‖μ_{p,q}‖²`.
pub fn sphere_energy_sum(d: &SpectralDecomposition, t: f64, n: u32) -> Result<f64> {
    let top = f64::from(2 * n - 1);
    if !(t > 0.0 && t < top) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "(0, 2n-1)",
        });
    }
    Ok(d.entries
        .iter()
        .map(|(&(p, q), e)| {
            let j = p + q;
            if j == 0 {
                e.norm_sq
            } else {
                f64::from(j).powf(t - top) * e.norm_sq
            }
        })
        .sum())
}

/// Outcome of checking `fg ∈ Σ_{ℓ≤L} H(p+r-ℓ, q+s-ℓ)`, `L = min(p,s) + min(q,r)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiplicationReport {
    pub window: Vec<(u32, u32)>,
    pub in_window_mass: f64,
    pub off_window_mass: f64,
    pub off_window: Vec<(u32, u32, f64)>,
}

pub fn verify_multiplication_rule(
    f: &BidegreePoly,
    g: &BidegreePoly,
    cache: &mut BasisCache,
) -> Result<MultiplicationReport> {
    let (p, q) = f.bidegree();
    let (r, s) = g.bidegree();
    let l_max = p.min(s) + q.min(r);
    let window: Vec<(u32, u32)> = (0..=l_max)
        .filter(|&l| l <= p + r && l <= q + s)
        .map(|l| (p + r - l, q + s - l))
        .collect();
    let product = f.poly() * g.poly();
    let d = decompose_exhaustive(&product, cache)?;
    let mut in_window_mass = 0.0;
    let mut off_window = Vec::new();
    for (p, q, m) in d.masses() {
        if window.contains(&(p, q)) {
            in_window_mass += m;
        } else {
            off_window.push((p, q, m));
        }
    }
    Ok(MultiplicationReport {
        window,
        in_window_mass,
        off_window_mass: off_window.iter().map(|x| x.2).sum(),
        off_window,
    })
}
