use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PRUNE_TOL;

/// Trigonometric polynomial `Σ c(k) λ^k` on the unit circle, stored sparsely.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Complex64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(k: i64, c: Complex64) -> Self {
        Self::from_terms([(k, c)])
    }

    /// Builds from `(frequency, coefficient)` pairs; repeated frequencies add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, Complex64)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut p = Self { coeffs };
        p.prune();
        p
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| c.norm() > PRUNE_TOL);
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    /// Terms in increasing frequency order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs_frequency(&self) -> i64 {
        self.coeffs.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c * s)))
    }

    /// Pointwise complex conjugate on T: `Σ conj(c(k)) λ^{-k}`.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (-k, c.conj())))
    }

    /// Real-valued on T iff `c(-k) = conj(c(k))` for every k.
    pub fn is_real(&self, tol: f64) -> bool {
        self.terms()
            .all(|(k, c)| (self.coeff(-k) - c.conj()).norm() <= tol)
    }

    pub fn evaluate(&self, lambda: Complex64) -> Complex64 {
        self.terms().map(|(k, c)| c * lambda.powi(k as i32)).sum()
    }

    /// Value at `λ = e^{iθ}`, with each phase formed directly from `kθ`.
    pub fn evaluate_angle(&self, theta: f64) -> Complex64 {
        self.terms()
            .map(|(k, c)| c * Complex64::from_polar(1.0, k as f64 * theta))
            .sum()
    }

    /// Values on the uniform grid `θ_m = 2πm/size`, real parts only.
    pub fn real_grid(&self, size: usize) -> Vec<f64> {
        let step = std::f64::consts::TAU / size as f64;
        (0..size)
            .map(|m| self.evaluate_angle(step * m as f64).re)
            .collect()
    }

    /// Parseval inner product `⟨f, g⟩ = ∫ f ḡ dm = Σ c_f(k) conj(c_g(k))`.
    pub fn inner_product(&self, other: &Self) -> Complex64 {
        self.terms()
            .map(|(k, c)| c * other.coeff(k).conj())
            .sum()
    }

    /// Bilinear pairing `∫ f g dm = Σ c_f(k) c_g(-k)`.
    pub fn pair(&self, other: &Self) -> Complex64 {
        self.terms().map(|(k, c)| c * other.coeff(-k)).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &rhs.coeffs {
                *out.entry(a + b).or_default() += ca * cb;
            }
        }
        let mut p = LaurentPoly { coeffs: out };
        p.prune();
        p
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().chain(rhs.terms()))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().chain(rhs.terms().map(|(k, c)| (k, -c))))
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentRecord {
    exponents: i64,
    re: f64,
    im: f64,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let records: Vec<LaurentRecord> = self
            .terms()
            .map(|(k, c)| LaurentRecord {
                exponents: k,
                re: c.re,
                im: c.im,
            })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<LaurentRecord>::deserialize(d)?;
        Ok(Self::from_terms(
            records
                .into_iter()
                .map(|r| (r.exponents, Complex64::new(r.re, r.im))),
        ))
    }
}
