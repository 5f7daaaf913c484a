//! Riesz products on S³ ⊂ C²: `Π_k (1 + Re(a_k R_k(z)))` with `R_k`
//! holomorphic homogeneous of degree `j_k`, `sup |R_k| ≤ 1` and lacunary `j_k`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::function::beta::ln_beta;

use crate::bounds::{sphere_bounds, DimensionReport};
use crate::circle::{signed_sums, CircleRieszSpec, SignedCombination};
use crate::error::{Error, Result};
use crate::harmonics::{decompose, BasisCache, SpectralDecomposition};
use crate::poly::{complex_json, BidegreePoly, LaurentPoly, MonomialPoly, DIM};
use crate::rng::{mc_mean, mc_mean_complex, sphere_point};
use crate::rw::{sup_norm_certify, RWCertificate, DEFAULT_DEPTH};

/// Slack allowed on certified sup norms.
pub const SUP_SLACK: f64 = 1e-6;

/// One factor `1 + Re(a R(z))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereFactor {
    pub j: u32,
    #[serde(with = "complex_json")]
    pub a: Complex64,
    pub r: BidegreePoly,
    /// Certified upper bound on `sup_{S³} |R|`.
    pub sup_bound: f64,
}

/// `sup |z₁^i z₂^{j-i}| = (i^i (j-i)^{j-i} / j^j)^{1/2}`.
fn monomial_sup(i: u32, j: u32) -> f64 {
    let xlogx = |x: u32| if x == 0 { 0.0 } else { f64::from(x) * f64::from(x).ln() };
    (0.5 * (xlogx(i) + xlogx(j - i) - xlogx(j))).exp()
}

impl SphereFactor {
    /// `z₁^i z₂^{j-i}` normalized to sup norm 1, with `i = seed mod (j+1)`.
    pub fn monomial(j: u32, seed: u64, a: Complex64) -> Self {
        let i = (seed % (u64::from(j) + 1)) as u32;
        let scale = monomial_sup(i, j).recip();
        let r = BidegreePoly::new(
            j,
            0,
            MonomialPoly::monomial([i, j - i, 0, 0], Complex64::new(scale, 0.0)),
        )
        .expect("holomorphic monomial");
        Self {
            j,
            a,
            r,
            sup_bound: 1.0,
        }
    }

    /// Certifies the sup norm of an explicit degree-`j` holomorphic `R`.
    pub fn from_poly(j: u32, r: MonomialPoly, a: Complex64) -> Result<Self> {
        let r = BidegreePoly::new(j, 0, r)?;
        let coeffs = r.holomorphic_coeffs().expect("bidegree (j, 0)");
        Ok(Self {
            j,
            a,
            sup_bound: sup_norm_certify(&coeffs, DEFAULT_DEPTH),
            r,
        })
    }

    pub fn from_certificate(cert: &RWCertificate, a: Complex64) -> Self {
        Self {
            j: cert.j,
            a,
            r: cert.polynomial(),
            sup_bound: cert.sup_bound,
        }
    }

    pub fn l2_norm(&self) -> f64 {
        self.r.poly().norm_sqr().sqrt()
    }

    /// `1 + (a R + conj(a R)) / 2` as a polynomial.
    pub fn polynomial(&self) -> MonomialPoly {
        let half = self.r.poly().scale(self.a * 0.5);
        let one = MonomialPoly::one();
        &(&one + &half) + &half.conj()
    }

    /// `1 + Re(a R(z))`.
    pub fn evaluate(&self, z: [Complex64; 2]) -> f64 {
        1.0 + (self.a * self.r.poly().evaluate(z)).re
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RieszTriple {
    pub delta: f64,
    pub factors: Vec<SphereFactor>,
}

/// One way a triple fails its invariants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Delta { value: f64 },
    Degree { index: usize, expected: u32, found: (u32, u32) },
    Lacunarity { index: usize, prev: u32, next: u32 },
    Coefficient { index: usize, modulus: f64 },
    SupNorm { index: usize, bound: f64 },
    L2Norm { index: usize, value: f64, delta: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub j: u32,
    pub a_modulus: f64,
    pub l2_norm: f64,
    pub sup_bound: f64,
    /// `l2_norm / sup_bound`.
    pub delta_achieved: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub factors: Vec<FactorReport>,
    pub violations: Vec<Violation>,
}

/// A truncated product with its expanded density.
#[derive(Clone, Debug, PartialEq)]
pub struct SpherePartialProduct {
    pub k: usize,
    pub factors: Vec<SphereFactor>,
    pub poly: MonomialPoly,
}

impl SpherePartialProduct {
    /// Density from the factored form.
    pub fn evaluate(&self, z: [Complex64; 2]) -> f64 {
        self.factors.iter().map(|f| f.evaluate(z)).product()
    }

    /// Density from the expanded polynomial.
    pub fn evaluate_expanded(&self, z: [Complex64; 2]) -> Complex64 {
        self.poly.evaluate(z)
    }

    pub fn freqs(&self) -> Vec<u64> {
        self.factors.iter().map(|f| u64::from(f.j)).collect()
    }
}

impl RieszTriple {
    pub fn new(delta: f64, factors: Vec<SphereFactor>) -> Self {
        Self { delta, factors }
    }

    /// Monomial factors over `j = 1, 3, 9, 27, …` with constant coefficient
    /// `a`; `R_j` is the normalized `z₁^i z₂^{j-i}` with `i = ⌊j/2⌋`, except
    /// `R_1 = z₁` and `R_3 = z₁z₂²/sup`.
    pub fn monomial_family(count: usize, a: Complex64) -> Self {
        let factors: Vec<SphereFactor> = (0..count as u32)
            .map(|k| {
                let j = 3u32.pow(k);
                let seed = if j <= 3 { 1 } else { j / 2 };
                SphereFactor::monomial(j, u64::from(seed), a)
            })
            .collect();
        let delta = factors
            .iter()
            .map(SphereFactor::l2_norm)
            .fold(1.0, f64::min);
        Self { delta, factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn freqs(&self) -> Vec<u64> {
        self.factors.iter().map(|f| u64::from(f.j)).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if !(self.delta > 0.0 && self.delta < 1.0) {
            violations.push(Violation::Delta { value: self.delta });
        }
        let mut factors = Vec::new();
        for (index, f) in self.factors.iter().enumerate() {
            if f.r.bidegree() != (f.j, 0) {
                violations.push(Violation::Degree {
                    index,
                    expected: f.j,
                    found: f.r.bidegree(),
                });
            }
            if index > 0 {
                let prev = self.factors[index - 1].j;
                if u64::from(f.j) < 3 * u64::from(prev) {
                    violations.push(Violation::Lacunarity {
                        index,
                        prev,
                        next: f.j,
                    });
                }
            } else if f.j == 0 {
                violations.push(Violation::Lacunarity {
                    index,
                    prev: 0,
                    next: 0,
                });
            }
            let modulus = f.a.norm();
            if modulus >= 1.0 || !modulus.is_finite() {
                violations.push(Violation::Coefficient { index, modulus });
            }
            if !(f.sup_bound <= 1.0 + SUP_SLACK) {
                violations.push(Violation::SupNorm {
                    index,
                    bound: f.sup_bound,
                });
            }
            let l2 = f.l2_norm();
            if l2 < self.delta {
                violations.push(Violation::L2Norm {
                    index,
                    value: l2,
                    delta: self.delta,
                });
            }
            factors.push(FactorReport {
                j: f.j,
                a_modulus: modulus,
                l2_norm: l2,
                sup_bound: f.sup_bound,
                delta_achieved: if f.sup_bound > 0.0 { l2 / f.sup_bound } else { 0.0 },
            });
        }
        ValidationReport {
            valid: violations.is_empty(),
            factors,
            violations,
        }
    }

    pub fn partial_product(&self, k: usize) -> Result<SpherePartialProduct> {
        if k > self.factors.len() {
            return Err(Error::FactorCount {
                requested: k,
                available: self.factors.len(),
            });
        }
        let poly = self.factors[..k]
            .iter()
            .fold(MonomialPoly::one(), |acc, f| &acc * &f.polynomial());
        Ok(SpherePartialProduct {
            k,
            factors: self.factors[..k].to_vec(),
            poly,
        })
    }

    /// The `ε`-term `Π_{ε_ℓ≠0} (a_ℓ/2) R_ℓ` (or its conjugate for `ε_ℓ = -1`),
    /// which is the whole `p - q = γ` part of the partial product up to the
    /// top index of `ε`.
    pub fn gamma_term(&self, eps: &SignedCombination) -> MonomialPoly {
        eps.eps
            .iter()
            .zip(&self.factors)
            .filter(|(&e, _)| e != 0)
            .fold(MonomialPoly::one(), |acc, (&e, f)| {
                let half = f.r.poly().scale(f.a * 0.5);
                let term = if e > 0 { half } else { half.conj() };
                &acc * &term
            })
    }

    /// `Σ_{p-q=γ} ‖Π_{p,q}‖²` for the partial product ending at the top
    /// index of `ε`.
    pub fn gamma_projection_mass(&self, eps: &SignedCombination) -> f64 {
        self.gamma_term(eps).norm_sqr()
    }

    /// `Π_{ε_ℓ≠0} (|a_ℓ|/2)²`, the bound on [`Self::gamma_projection_mass`].
    pub fn gamma_mass_bound(&self, eps: &SignedCombination) -> f64 {
        eps.eps
            .iter()
            .zip(&self.factors)
            .filter(|(&e, _)| e != 0)
            .map(|(_, f)| (f.a.norm() / 2.0).powi(2))
            .product()
    }

    pub fn bounds(&self, k: usize, window: usize) -> Result<DimensionReport> {
        let freqs: Vec<u128> = self.factors.iter().map(|f| u128::from(f.j)).collect();
        let moduli: Vec<f64> = self.factors.iter().map(|f| f.a.norm()).collect();
        sphere_bounds(&freqs, &moduli, k, window, DIM)
    }

    /// Classical product on the complex line through `ξ`: `c_k = a_k R_k(ξ)`.
    pub fn slice_spec(&self, xi: [Complex64; 2]) -> Result<CircleRieszSpec> {
        let norm = (xi[0].norm_sqr() + xi[1].norm_sqr()).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::OutOfRange {
                name: "|ξ|",
                value: norm,
                range: "{1}",
            });
        }
        let coeffs = self
            .factors
            .iter()
            .map(|f| {
                let c = f.a * f.r.poly().evaluate(xi);
                // Rounding can push |c| a hair above 1 when |a| sup|R| ≈ 1.
                if c.norm() > 1.0 {
                    c / c.norm()
                } else {
                    c
                }
            })
            .collect();
        CircleRieszSpec::new(self.freqs(), coeffs)
    }
}

/// Signed sums whose top nonzero sign sits at 1-based index `k`:
/// `±j_k + Σ_{ℓ<k} ε_ℓ j_ℓ`, `2·3^{k-1}` of them.
pub fn gamma_set(freqs: &[u64], k: usize) -> Vec<SignedCombination> {
    if k == 0 || k > freqs.len() {
        return Vec::new();
    }
    [1i8, -1]
        .into_iter()
        .flat_map(|top| {
            signed_sums(freqs, k - 1).into_iter().map(move |s| {
                let mut eps = s.eps;
                eps.push(top);
                SignedCombination::from_eps(freqs, eps)
            })
        })
        .collect()
}

/// `∫∫ |x - y|^{-t} dσ(x) dσ(y) = 4^{-t/2} B(3/2 - t/2, 3/2) / B(3/2, 3/2)` on S³.
pub fn uniform_pair_energy(t: f64) -> f64 {
    (-0.5 * t * 4f64.ln() + ln_beta(1.5 - 0.5 * t, 1.5) - ln_beta(1.5, 1.5)).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
}

fn check_sphere_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t < 3.0) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "(0, 3)",
        });
    }
    Ok(())
}

fn to_real(z: [Complex64; 2]) -> [f64; 4] {
    [z[0].re, z[0].im, z[1].re, z[1].im]
}

fn to_complex(x: [f64; 4]) -> [Complex64; 2] {
    [Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3])]
}

/// Uniform unit vector orthogonal to `x` in R⁴.
fn orthogonal_direction(rng: &mut ChaCha8Rng, x: &[f64; 4]) -> [f64; 4] {
    loop {
        let mut g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let dot: f64 = g.iter().zip(x).map(|(a, b)| a * b).sum();
        for (gi, xi) in g.iter_mut().zip(x) {
            *gi -= dot * xi;
        }
        let n = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 1e-12 {
            return g.map(|v| v / n);
        }
    }
}

/// `I_t(f dσ) = ∫∫ f(x) f(y) |x - y|^{-t} dσ dσ` by importance sampling: `x`
/// uniform and `y | x` drawn with density proportional to `|x - y|^{-t}`,
/// which makes every draw `c_t f(x) f(y)` with `c_t` the uniform pair energy.
/// In R⁴, `s = |x - y|²/4` is Beta(3/2, 3/2) under σ, so the tilted law is
/// Beta(3/2 - t/2, 3/2).
pub fn mc_energy(product: &SpherePartialProduct, t: f64, pairs: usize, seed: u64) -> Result<McEstimate> {
    check_sphere_t(t)?;
    let scale = uniform_pair_energy(t);
    let tilted = Beta::new(1.5 - 0.5 * t, 1.5).map_err(|e| Error::Invalid(e.to_string()))?;
    let (estimate, stderr) = mc_mean(seed, pairs, |rng| {
        let z = sphere_point(rng);
        let x = to_real(z);
        let s: f64 = tilted.sample(rng);
        let u = 1.0 - 2.0 * s;
        let v = orthogonal_direction(rng, &x);
        let w = (1.0 - u * u).max(0.0).sqrt();
        let y: [f64; 4] = std::array::from_fn(|i| u * x[i] + w * v[i]);
        scale * product.evaluate(z) * product.evaluate(to_complex(y))
    });
    Ok(McEstimate { estimate, stderr })
}

/// Plain estimator over independent uniform pairs. Its variance is infinite
/// for `t ≥ 3/2`.
pub fn mc_energy_uniform(product: &SpherePartialProduct, t: f64, pairs: usize, seed: u64) -> Result<McEstimate> {
    check_sphere_t(t)?;
    let (estimate, stderr) = mc_mean(seed, pairs, |rng| {
        let z = sphere_point(rng);
        let w = sphere_point(rng);
        let d2 = (z[0] - w[0]).norm_sqr() + (z[1] - w[1]).norm_sqr();
        product.evaluate(z) * product.evaluate(w) * d2.powf(-0.5 * t)
    });
    Ok(McEstimate { estimate, stderr })
}

/// `f(λξ)` as a Laurent polynomial in `λ ∈ T`.
pub fn restrict_to_line(f: &MonomialPoly, xi: [Complex64; 2]) -> LaurentPoly {
    let conj = [xi[0].conj(), xi[1].conj()];
    LaurentPoly::from_terms(f.terms().map(|(e, c)| {
        let v = c
            * xi[0].powu(e[0])
            * xi[1].powu(e[1])
            * conj[0].powu(e[2])
            * conj[1].powu(e[3]);
        (i64::from(e[0] + e[1]) - i64::from(e[2] + e[3]), v)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisintegrationCheck {
    #[serde(with = "complex_json")]
    pub lhs: Complex64,
    #[serde(with = "complex_json")]
    pub rhs: Complex64,
    pub stderr: f64,
}

impl DisintegrationCheck {
    /// `|lhs - rhs|` in units of the standard error.
    pub fn z_score(&self) -> f64 {
        let d = (self.lhs - self.rhs).norm();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }
}

/// `∫ f dΠ_K` computed twice: exactly on S³, and as the average over uniform
/// `ξ` of the exact circle integrals `∫_T f(λξ) dΠ_ξ(λ)` of the slices.
pub fn disintegration_check(
    triple: &RieszTriple,
    k: usize,
    f: &MonomialPoly,
    slice_count: usize,
    seed: u64,
) -> Result<DisintegrationCheck> {
    let product = triple.partial_product(k)?;
    let lhs = product.poly.sphere_inner_product(&f.conj());
    let (rhs, stderr) = mc_mean_complex(seed, slice_count, |rng| {
        let xi = sphere_point(rng);
        let slice = triple
            .slice_spec(xi)
            .and_then(|s| s.partial_product(k))
            .expect("slices of a valid triple are valid circle products");
        restrict_to_line(f, xi).pair(&slice)
    });
    Ok(DisintegrationCheck { lhs, rhs, stderr })
}

/// Spectral consistency of a partial product.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// `|Σ ‖μ_{p,q}‖² - ‖density‖²|`.
    pub parseval_error: f64,
    /// Mass at `(p, q)` whose `p - q` is neither 0 nor in any `Γ_k`.
    pub off_structure_mass: f64,
    /// `min |p/q - 1|` over the spectrum with `q > 0`, `(p,q) ≠ (0,0)`.
    pub banded_epsilon: Option<f64>,
    /// `(p, q, ‖μ_{p,q}‖²)`.
    pub masses: Vec<(u32, u32, f64)>,
}

/// Mass below this is treated as absent from the spectrum.
pub const SPECTRUM_TOL: f64 = 1e-20;

pub fn banded_epsilon(d: &SpectralDecomposition) -> Option<f64> {
    d.spectrum(SPECTRUM_TOL)
        .into_iter()
        .filter(|&(p, q)| q > 0 && (p, q) != (0, 0))
        .map(|(p, q)| (f64::from(p) / f64::from(q) - 1.0).abs())
        .reduce(f64::min)
}

pub fn spectrum_report(
    product: &SpherePartialProduct,
    cache: &mut BasisCache,
) -> Result<(SpectralDecomposition, SpectrumReport)> {
    let d = decompose(&product.poly, cache)?;
    let freqs = product.freqs();
    let allowed: BTreeSet<i64> = std::iter::once(0)
        .chain((1..=product.k).flat_map(|k| gamma_set(&freqs, k).into_iter().map(|s| s.gamma)))
        .collect();
    let masses = d.masses();
    let off_structure_mass = masses
        .iter()
        .filter(|(p, q, _)| !allowed.contains(&(i64::from(*p) - i64::from(*q))))
        .map(|m| m.2)
        .sum();
    let report = SpectrumReport {
        parseval_error: (d.total_norm_sq() - product.poly.norm_sqr()).abs(),
        off_structure_mass,
        banded_epsilon: banded_epsilon(&d),
        masses,
    };
    Ok((d, report))
}

/// How a factor's `R` is given in a triple file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RSource {
    Poly(MonomialPoly),
    MonomialSeed(u64),
    RwCertificate(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorSpec {
    pub j: u32,
    #[serde(with = "complex_json")]
    pub a: Complex64,
    #[serde(rename = "R")]
    pub r: RSource,
}

/// Triple file: `{"delta": …, "factors": [{"j": …, "a": [re, im], "R": …}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleSpec {
    pub delta: f64,
    pub factors: Vec<FactorSpec>,
}

impl TripleSpec {
    /// Builds the triple; certificate paths are relative to `base`.
    pub fn resolve(&self, base: &Path) -> Result<RieszTriple> {
        let factors = self
            .factors
            .iter()
            .map(|f| match &f.r {
                RSource::Poly(p) => SphereFactor::from_poly(f.j, p.clone(), f.a),
                RSource::MonomialSeed(s) => Ok(SphereFactor::monomial(f.j, *s, f.a)),
                RSource::RwCertificate(path) => {
                    let cert = RWCertificate::load(&base.join(path))
                        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                    if cert.j != f.j {
                        return Err(Error::Invalid(format!(
                            "certificate {} has degree {}, factor needs {}",
                            path.display(),
                            cert.j,
                            f.j
                        )));
                    }
                    Ok(SphereFactor::from_certificate(&cert, f.a))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RieszTriple::new(self.delta, factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::{decompose_exhaustive, sphere_energy_sum};
    use crate::rng::stream_rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn two_factor(a: f64) -> RieszTriple {
        RieszTriple::monomial_family(2, c(a))
    }

    #[test]
    fn monomial_family_is_valid() {
        let t = RieszTriple::monomial_family(4, c(0.9));
        let r = t.validate();
        assert!(r.valid, "{r:?}");
        assert_eq!(t.freqs(), vec![1, 3, 9, 27]);
        // R_3 = z₁z₂² / (2/(3√3)) has L² norm 3/4.
        assert!((t.factors[1].l2_norm() - 0.75).abs() < 1e-12);
        assert!((t.factors[0].l2_norm() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn monomial_sup_matches_certification() {
        for (i, j) in [(1u32, 3u32), (2, 5), (0, 4), (4, 9)] {
            let f = SphereFactor::monomial(j, u64::from(i), c(0.5));
            let coeffs = f.r.holomorphic_coeffs().unwrap();
            let cert = sup_norm_certify(&coeffs, DEFAULT_DEPTH);
            assert!((1.0 - 1e-12..=1.0 + 1e-6).contains(&cert), "({i},{j}): {cert}");
        }
    }

    #[test]
    fn validation_reports_each_violation() {
        let mut t = RieszTriple::monomial_family(2, c(0.5));
        t.factors[1] = SphereFactor::monomial(2, 1, c(0.5));
        let r = t.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Lacunarity { index: 1, .. })));

        let t = RieszTriple::monomial_family(2, c(1.0));
        let r = t.validate();
        assert_eq!(
            r.violations.iter().filter(|v| matches!(v, Violation::Coefficient { .. })).count(),
            2
        );

        let mut t = RieszTriple::monomial_family(2, c(0.5));
        t.delta = 0.8;
        let r = t.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::L2Norm { index: 0, .. })));

        let mut t = RieszTriple::monomial_family(1, c(0.5));
        t.factors[0].sup_bound = 1.1;
        assert!(matches!(t.validate().violations[0], Violation::SupNorm { .. }));
    }

    #[test]
    fn one_factor_product() {
        let t = RieszTriple::monomial_family(1, c(0.6));
        let p = t.partial_product(1).unwrap();
        assert!((p.poly.mean() - c(1.0)).norm() < 1e-15);
        assert!((p.poly.norm_sqr() - (1.0 + 0.36 / 4.0)).abs() < 1e-15);
        let p0 = t.partial_product(0).unwrap();
        assert_eq!(p0.poly, MonomialPoly::one());
        assert!(matches!(t.partial_product(2), Err(Error::FactorCount { .. })));
    }

    #[test]
    fn expanded_matches_factored() {
        let t = RieszTriple::monomial_family(3, Complex64::new(0.5, 0.6));
        let p = t.partial_product(3).unwrap();
        let mut rng = stream_rng(1, 0);
        for _ in 0..100 {
            let z = sphere_point(&mut rng);
            let e = p.evaluate_expanded(z);
            assert!((e.re - p.evaluate(z)).abs() < 1e-9 && e.im.abs() < 1e-9);
            assert!(p.evaluate(z) >= -1e-9);
        }
        assert!((p.poly.mean() - c(1.0)).norm() < 1e-10);
        assert_eq!(p.poly.conj(), p.poly);
    }

    #[test]
    fn gamma_sets() {
        let g: Vec<i64> = gamma_set(&[3, 9], 1).iter().map(|s| s.gamma).collect();
        assert_eq!(g, vec![3, -3]);
        let mut g: Vec<i64> = gamma_set(&[3, 9], 2).iter().map(|s| s.gamma).collect();
        g.sort();
        assert_eq!(g, vec![-12, -9, -6, 6, 9, 12]);
        let freqs = [3, 9, 27, 81];
        let g = gamma_set(&freqs, 4);
        let distinct: BTreeSet<i64> = g.iter().map(|s| s.gamma).collect();
        assert_eq!(g.len(), 54);
        assert_eq!(distinct.len(), 54);
        let lower: u64 = freqs[..3].iter().sum();
        for s in g {
            let m = s.gamma.unsigned_abs();
            assert!(m >= 81 - lower && m <= 81 + lower && m >= 81 / 2);
        }
    }

    #[test]
    fn gamma_masses() {
        let t = RieszTriple::monomial_family(1, c(0.6));
        let eps = SignedCombination::from_eps(&[1], vec![1]);
        assert!((t.gamma_projection_mass(&eps) - 0.09 * 0.5).abs() < 1e-15);

        let z = RieszTriple::monomial_family(1, c(0.0));
        assert_eq!(z.gamma_projection_mass(&eps), 0.0);

        // Two monomial factors: ‖(a/2)² z₁ · z̄₁ z̄₂² / s‖² from exact moments.
        let t = two_factor(0.8);
        let eps = SignedCombination::from_eps(&[1, 3], vec![1, -1]);
        let s = 2.0 / (3.0 * 3f64.sqrt());
        let explicit = MonomialPoly::monomial([1, 0, 1, 2], c(0.16 / s));
        assert!((t.gamma_projection_mass(&eps) - explicit.norm_sqr()).abs() < 1e-15);
    }

    #[test]
    fn gamma_masses_match_decomposition_and_bound() {
        let t = RieszTriple::monomial_family(3, Complex64::new(0.7, 0.3));
        let freqs = t.freqs();
        let mut cache = BasisCache::new();
        for k in 1..=3 {
            let p = t.partial_product(k).unwrap();
            let d = decompose(&p.poly, &mut cache).unwrap();
            for eps in gamma_set(&freqs, k) {
                let mass = t.gamma_projection_mass(&eps);
                let spectral: f64 = d
                    .masses()
                    .iter()
                    .filter(|(p, q, _)| i64::from(*p) - i64::from(*q) == eps.gamma)
                    .map(|m| m.2)
                    .sum();
                assert!((mass - spectral).abs() < 1e-9);
                assert!(mass <= t.gamma_mass_bound(&eps) + 1e-12);
            }
        }
    }

    #[test]
    fn spectrum_structure_and_banding() {
        let t = RieszTriple::monomial_family(3, c(0.9));
        let mut cache = BasisCache::new();
        let p = t.partial_product(3).unwrap();
        let (_, r) = spectrum_report(&p, &mut cache).unwrap();
        assert!(r.off_structure_mass < 1e-10);
        assert!(r.parseval_error < 1e-9);
        let eps = r.banded_epsilon.unwrap();
        assert!(eps > 0.0);
        // The exhaustive decomposition finds nothing the structural one missed.
        let d = decompose_exhaustive(&p.poly, &mut cache).unwrap();
        assert!((d.total_norm_sq() - p.poly.norm_sqr()).abs() < 1e-9);
        assert!(banded_epsilon(&d).unwrap() >= eps - 1e-12);
    }

    #[test]
    fn bounds_examples() {
        let t = RieszTriple::monomial_family(3, c(0.0));
        let r = t.bounds(3, 2).unwrap();
        assert_eq!(r.reported_lb, 3.0);
        let t = RieszTriple::monomial_family(3, c(0.99));
        assert!(t.bounds(3, 2).unwrap().reported_lb >= 2.0);
    }

    #[test]
    fn uniform_pair_energy_oracle() {
        assert!((uniform_pair_energy(1.0) - 8.0 / (3.0 * std::f64::consts::PI)).abs() < 1e-14);
        assert!((uniform_pair_energy(1e-12) - 1.0).abs() < 1e-10);
        let one = RieszTriple::monomial_family(0, c(0.0)).partial_product(0).unwrap();
        let fast = mc_energy(&one, 1.0, 10_000, 3).unwrap();
        assert!((fast.estimate - uniform_pair_energy(1.0)).abs() < 1e-12);
        let slow = mc_energy_uniform(&one, 1.0, 1_000_000, 4).unwrap();
        assert!((slow.estimate - fast.estimate).abs() < 3.0 * slow.stderr, "{slow:?}");
        let tiny = mc_energy(&one, 1e-6, 1000, 5).unwrap();
        assert!((tiny.estimate - 1.0).abs() < 1e-5);
        assert!(mc_energy(&one, 3.0, 10, 1).is_err());
    }

    #[test]
    fn importance_sampling_agrees_with_uniform_pairs() {
        let p = two_factor(0.9).partial_product(2).unwrap();
        let a = mc_energy(&p, 1.0, 200_000, 7).unwrap();
        let b = mc_energy_uniform(&p, 1.0, 2_000_000, 8).unwrap();
        let se = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!((a.estimate - b.estimate).abs() < 4.0 * se, "{a:?} {b:?}");
        assert_eq!(mc_energy(&p, 1.0, 5000, 7).unwrap(), mc_energy(&p, 1.0, 5000, 7).unwrap());
    }

    #[test]
    fn sphere_energy_sum_matches_gamma_spectrum_sum() {
        let t = two_factor(0.8);
        let p = t.partial_product(2).unwrap();
        let mut cache = BasisCache::new();
        let d = decompose(&p.poly, &mut cache).unwrap();
        let tt = 1.7;
        let got = sphere_energy_sum(&d, tt, 2).unwrap();
        // Each ε-term is a single monomial of bidegree (a,b); its masses in
        // H(a-ℓ, b-ℓ) come from projecting that monomial alone.
        let mut oracle = 1.0;
        for k in 1..=2 {
            for eps in gamma_set(&t.freqs(), k) {
                let term = t.gamma_term(&eps);
                let dd = decompose(&term, &mut cache).unwrap();
                oracle += dd
                    .masses()
                    .iter()
                    .map(|&(p, q, m)| f64::from(p + q).powf(tt - 3.0) * m)
                    .sum::<f64>();
            }
        }
        assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
    }

    #[test]
    fn slice_examples() {
        let t = RieszTriple::monomial_family(2, c(0.7));
        let s = t.slice_spec([c(1.0), c(0.0)]).unwrap();
        assert!((s.coeffs()[0] - c(0.7)).norm() < 1e-15);
        // R_3 = z₁z₂² vanishes at (1, 0).
        assert_eq!(s.coeffs()[1], c(0.0));
        assert!(t.slice_spec([c(1.0), c(0.1)]).is_err());

        let mut rng = stream_rng(2, 0);
        let xi = sphere_point(&mut rng);
        let psi = 0.4;
        let rot = Complex64::from_polar(1.0, psi);
        let a = t.slice_spec(xi).unwrap();
        let b = t.slice_spec([xi[0] * rot, xi[1] * rot]).unwrap();
        for (k, f) in t.factors.iter().enumerate() {
            let want = a.coeffs()[k] * Complex64::from_polar(1.0, f64::from(f.j) * psi);
            assert!((b.coeffs()[k] - want).norm() < 1e-12);
            assert!(a.coeffs()[k].norm() <= f.a.norm() + 1e-15);
        }
        let pa = a.partial_product(2).unwrap();
        let pb = b.partial_product(2).unwrap();
        for i in 0..64 {
            let th = f64::from(i) * 0.1;
            assert!((pb.evaluate_angle(th) - pa.evaluate_angle(th + psi)).norm() < 1e-12);
        }
    }

    #[test]
    fn disintegration_constant() {
        let t = two_factor(0.8);
        let r = disintegration_check(&t, 2, &MonomialPoly::one(), 1000, 1).unwrap();
        assert!((r.lhs - c(1.0)).norm() < 1e-12);
        assert!((r.rhs - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn disintegration_monomials() {
        let t = two_factor(0.8);
        let cases = [[1, 0, 1, 0], [0, 0, 1, 0], [1, 0, 0, 2], [0, 1, 0, 1], [2, 0, 0, 0]];
        for e in cases {
            let f = MonomialPoly::monomial(e, c(1.0));
            let r = disintegration_check(&t, 2, &f, 10_000, 11).unwrap();
            assert!(r.z_score() <= 4.0, "{e:?}: {r:?}");
        }
        // z₁z̄₁: lhs from exact moments.
        let f = MonomialPoly::monomial([1, 0, 1, 0], c(1.0));
        let r = disintegration_check(&t, 2, &f, 100, 1).unwrap();
        let p = t.partial_product(2).unwrap();
        assert!((r.lhs - (&p.poly * &f).mean()).norm() < 1e-14);
        // z₁² is orthogonal to the density.
        let f = MonomialPoly::monomial([2, 0, 0, 0], c(1.0));
        let r = disintegration_check(&t, 2, &f, 10_000, 12).unwrap();
        assert!(r.lhs.norm() < 1e-15);
    }

    #[test]
    fn triple_json() {
        let text = r#"{"delta":0.7,"factors":[
            {"j":1,"a":[0.5,0.0],"R":{"monomial_seed":1}},
            {"j":3,"a":[0.0,0.5],"R":{"poly":[{"exponents":[1,2,0,0],"re":2.598076211353316,"im":0.0}]}}]}"#;
        let spec: TripleSpec = serde_json::from_str(text).unwrap();
        let t = spec.resolve(Path::new(".")).unwrap();
        assert!(t.validate().valid, "{:?}", t.validate());
        let back: TripleSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        let bad = r#"{"delta":0.7,"factors":[{"j":2,"a":[0.5,0.0],"R":{"poly":[{"exponents":[1,0,0,0],"re":1.0,"im":0.0}]}}]}"#;
        let spec: TripleSpec = serde_json::from_str(bad).unwrap();
        assert!(spec.resolve(Path::new(".")).is_err());
    }
}
