use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PRUNE_TOL;
use crate::error::{Error, Result};

/// Exponent quadruple `(α₁, α₂, β₁, β₂)` of `z₁^α₁ z₂^α₂ z̄₁^β₁ z̄₂^β₂`.
pub type Exponents = [u32; 4];

/// Complex dimension of the ambient space for all polynomial machinery.
pub const DIM: u32 = 2;

/// `∫_{S^{2n-1}} z^α z̄^β dσ`: zero unless `α = β`, else `(n-1)! α! / (n-1+|α|)!`.
///
/// Evaluated as a product of ratios `m / (n-1+s+m)` that never leave `(0, 1]`,
/// so it neither overflows nor loses relative precision at high degree.
pub fn sphere_moment(alpha: &[u32], beta: &[u32], n: u32) -> f64 {
    if alpha != beta {
        return 0.0;
    }
    let mut acc = 1.0;
    let mut done = n - 1;
    for &a in alpha {
        for m in 1..=a {
            acc *= f64::from(m) / f64::from(done + m);
        }
        done += a;
    }
    acc
}

/// Sparse polynomial in `z₁, z₂, z̄₁, z̄₂` with complex coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MonomialPoly {
    coeffs: BTreeMap<Exponents, Complex64>,
}

impl MonomialPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn monomial(e: Exponents, c: Complex64) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn z1() -> Self {
        Self::monomial([1, 0, 0, 0], Complex64::new(1.0, 0.0))
    }

    pub fn z2() -> Self {
        Self::monomial([0, 1, 0, 0], Complex64::new(1.0, 0.0))
    }

    /// `|z|² = z₁z̄₁ + z₂z̄₂`.
    pub fn norm_squared_form() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::from_terms([([1, 0, 1, 0], one), ([0, 1, 0, 1], one)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Complex64)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            *coeffs.entry(e).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut p = Self { coeffs };
        p.prune();
        p
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| c.norm() > PRUNE_TOL);
    }

    pub fn coeff(&self, e: &Exponents) -> Complex64 {
        self.coeffs.get(e).copied().unwrap_or_default()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, Complex64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
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

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * s)))
    }

    /// Pointwise conjugate: `z^α z̄^β ↦ z^β z̄^α` with conjugated coefficients.
    pub fn conj(&self) -> Self {
        Self::from_terms(
            self.terms()
                .map(|([a1, a2, b1, b2], c)| ([b1, b2, a1, a2], c.conj())),
        )
    }

    /// Distinct bidegrees `(|α|, |β|)` present.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self.terms().map(|(e, _)| bidegree(&e)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms().map(|(e, _)| e.iter().sum()).max()
    }

    pub fn is_bidegree(&self, p: u32, q: u32) -> bool {
        self.terms().all(|(e, _)| bidegree(&e) == (p, q))
    }

    pub fn evaluate(&self, z: [Complex64; 2]) -> Complex64 {
        let max = self
            .terms()
            .flat_map(|(e, _)| e)
            .max()
            .unwrap_or(0) as usize;
        let base = [z[0], z[1], z[0].conj(), z[1].conj()];
        let powers: Vec<Vec<Complex64>> = base
            .iter()
            .map(|&b| {
                let mut v = Vec::with_capacity(max + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=max {
                    v.push(acc);
                    acc *= b;
                }
                v
            })
            .collect();
        self.terms()
            .map(|(e, c)| {
                c * powers[0][e[0] as usize]
                    * powers[1][e[1] as usize]
                    * powers[2][e[2] as usize]
                    * powers[3][e[3] as usize]
            })
            .sum()
    }

    /// `⟨f, g⟩ = ∫_{S³} f ḡ dσ`, exact up to rounding.
    pub fn sphere_inner_product(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                // f-term · conj(g-term) = z^{αa+βb} z̄^{βa+αb}
                let hol = [ea[0] + eb[2], ea[1] + eb[3]];
                let anti = [ea[2] + eb[0], ea[3] + eb[1]];
                if hol == anti {
                    acc += ca * cb.conj() * sphere_moment(&hol, &anti, DIM);
                }
            }
        }
        acc
    }

    /// `‖f‖²_{L²(σ)}`.
    pub fn norm_sqr(&self) -> f64 {
        self.sphere_inner_product(self).re
    }

    /// Mean `∫ f dσ`.
    pub fn mean(&self) -> Complex64 {
        self.terms()
            .map(|(e, c)| c * sphere_moment(&e[..2], &e[2..], DIM))
            .sum()
    }

    /// `f(Uz)` for a linear map `U` of C² (rows give the new coordinates).
    pub fn compose_linear(&self, u: [[Complex64; 2]; 2]) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let lin = |row: [Complex64; 2], conj: bool| {
            if conj {
                Self::from_terms([([0, 0, 1, 0], row[0].conj()), ([0, 0, 0, 1], row[1].conj())])
            } else {
                Self::from_terms([([1, 0, 0, 0], row[0]), ([0, 1, 0, 0], row[1])])
            }
        };
        let forms = [lin(u[0], false), lin(u[1], false), lin(u[0], true), lin(u[1], true)];
        let mut cache: Vec<Vec<Self>> = vec![vec![Self::constant(one)]; 4];
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            let mut term = Self::constant(c);
            for (slot, &k) in e.iter().enumerate() {
                while cache[slot].len() <= k as usize {
                    let next = &cache[slot][cache[slot].len() - 1] * &forms[slot];
                    cache[slot].push(next);
                }
                term = &term * &cache[slot][k as usize];
            }
            out = &out + &term;
        }
        out
    }
}

pub fn bidegree(e: &Exponents) -> (u32, u32) {
    (e[0] + e[1], e[2] + e[3])
}

impl Mul for &MonomialPoly {
    type Output = MonomialPoly;

    fn mul(self, rhs: &MonomialPoly) -> MonomialPoly {
        let mut out: BTreeMap<Exponents, Complex64> = BTreeMap::new();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                *out.entry(e).or_default() += ca * cb;
            }
        }
        let mut p = MonomialPoly { coeffs: out };
        p.prune();
        p
    }
}

impl Add for &MonomialPoly {
    type Output = MonomialPoly;

    fn add(self, rhs: &MonomialPoly) -> MonomialPoly {
        MonomialPoly::from_terms(self.terms().chain(rhs.terms()))
    }
}

impl Sub for &MonomialPoly {
    type Output = MonomialPoly;

    fn sub(self, rhs: &MonomialPoly) -> MonomialPoly {
        MonomialPoly::from_terms(self.terms().chain(rhs.terms().map(|(e, c)| (e, -c))))
    }
}

/// A polynomial all of whose terms have bidegree exactly `(p, q)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BidegreePoly {
    p: u32,
    q: u32,
    poly: MonomialPoly,
}

impl BidegreePoly {
    pub fn new(p: u32, q: u32, poly: MonomialPoly) -> Result<Self> {
        if !poly.is_bidegree(p, q) {
            return Err(Error::Bidegree { p, q });
        }
        Ok(Self { p, q, poly })
    }

    pub fn zero(p: u32, q: u32) -> Self {
        Self {
            p,
            q,
            poly: MonomialPoly::zero(),
        }
    }

    /// Holomorphic `Σ c_i z₁^i z₂^{j-i}` of bidegree `(j, 0)`.
    pub fn holomorphic(coeffs: &[Complex64]) -> Self {
        let j = coeffs.len().saturating_sub(1) as u32;
        let poly = MonomialPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| ([i as u32, j - i as u32, 0, 0], c)),
        );
        Self { p: j, q: 0, poly }
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn poly(&self) -> &MonomialPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MonomialPoly {
        self.poly
    }

    /// Coefficients `c_i` of `z₁^i z₂^{j-i}` when the bidegree is `(j, 0)`.
    pub fn holomorphic_coeffs(&self) -> Option<Vec<Complex64>> {
        if self.q != 0 {
            return None;
        }
        let j = self.p;
        Some((0..=j).map(|i| self.poly.coeff(&[i, j - i, 0, 0])).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialRecord {
    exponents: Exponents,
    re: f64,
    im: f64,
}

impl Serialize for MonomialPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<MonomialRecord> = self
            .terms()
            .map(|(e, c)| MonomialRecord {
                exponents: e,
                re: c.re,
                im: c.im,
            })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<MonomialRecord>::deserialize(d)?;
        Ok(Self::from_terms(
            records
                .into_iter()
                .map(|r| (r.exponents, Complex64::new(r.re, r.im))),
        ))
    }
}
