//! Dimension lower bounds for Riesz products from their coefficient moduli.
//!
//! The deficit `α₀` is a limsup over k of
//!
//! ```text
//! (log(|a_k|²/2) + Σ_{ℓ<k} log(1 + |a_ℓ|²/2)) / log j_k
//! ```
//!
//! clamped below at 0. Finite data only allow a surrogate: the maximum of the
//! sequence over a trailing window of indices. Terms with `a_k = 0` (or with
//! `log j_k = 0`, which only happens for `j_1 = 1`) are `-∞` and are skipped.

use serde::{Deserialize, Serialize};

use crate::circle::check_lacunary;
use crate::error::{Error, Result};

/// Default trailing window: the last half of the available indices.
pub fn default_window(k: usize) -> usize {
    k.div_ceil(2).max(1)
}

fn check_inputs(freqs: &[u128], moduli: &[f64], k: usize, window: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::OutOfRange {
            name: "K",
            value: k as f64,
            range: "[2, ∞)",
        });
    }
    if freqs.len() < k || moduli.len() < k {
        return Err(Error::FactorCount {
            requested: k,
            available: freqs.len().min(moduli.len()),
        });
    }
    if window == 0 || window > k {
        return Err(Error::EmptyWindow { k, window });
    }
    check_lacunary(&freqs[..k])?;
    if let Some((index, &m)) = moduli[..k]
        .iter()
        .enumerate()
        .find(|(_, &m)| !(0.0..=1.0).contains(&m))
    {
        return Err(Error::CoefficientModulus { index, modulus: m });
    }
    Ok(())
}

/// Finite-K values of the sequence whose limsup defines `α₀` (1-based k in
/// `1..=K`); `None` marks `-∞` terms.
pub fn alpha_sequence(freqs: &[u128], moduli: &[f64], k: usize) -> Vec<Option<f64>> {
    let mut prefix = 0.0;
    let mut out = Vec::with_capacity(k);
    for idx in 0..k {
        let a2 = moduli[idx] * moduli[idx];
        let log_j = (freqs[idx] as f64).ln();
        let term = if a2 > 0.0 && log_j > 0.0 {
            Some(((a2 / 2.0).ln() + prefix) / log_j)
        } else {
            None
        };
        out.push(term);
        prefix += (1.0 + a2 / 2.0).ln();
    }
    out
}

/// Trailing-window surrogate for `α₀`.
pub fn alpha0(freqs: &[u128], moduli: &[f64], k: usize, window: usize) -> Result<f64> {
    check_inputs(freqs, moduli, k, window)?;
    let seq = alpha_sequence(freqs, moduli, k);
    Ok(seq[k - window..]
        .iter()
        .flatten()
        .fold(0.0, |acc: f64, &v| acc.max(v)))
}

/// Trailing-window surrogate for `limsup Σ_{ℓ<k} |a_ℓ|² / (2 log j_k)`, the
/// deficit in the simplified Hausdorff bound.
pub fn simplified_deficit(freqs: &[u128], moduli: &[f64], k: usize, window: usize) -> Result<f64> {
    check_inputs(freqs, moduli, k, window)?;
    let mut prefix = 0.0;
    let mut best = 0.0f64;
    for idx in 0..k {
        let log_j = (freqs[idx] as f64).ln();
        if idx >= k - window && log_j > 0.0 {
            best = best.max(prefix / (2.0 * log_j));
        }
        prefix += moduli[idx] * moduli[idx];
    }
    Ok(best)
}

/// Lower bounds for a Riesz product in the sphere of C^n (or the circle,
/// where the ambient dimension `2n - 1` is 1).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    /// Real dimension of the ambient sphere (`2n - 1`; 1 for the circle).
    pub ambient_dim: u32,
    pub alpha0: f64,
    pub energy_dim_lb: f64,
    pub hausdorff_lb: f64,
    /// `ambient_dim - limsup Σ|a_ℓ|²/(2 log j_k)`.
    pub simplified_bound: f64,
    /// Spectral-gap floor `2n - 2` for sphere products; absent on the circle.
    pub spectral_floor: Option<f64>,
    /// Largest of the available lower bounds.
    pub reported_lb: f64,
    pub truncation: usize,
    pub window: usize,
}

/// Bounds for the classical product on the circle.
pub fn circle_bounds(freqs: &[u128], moduli: &[f64], k: usize, window: usize) -> Result<DimensionReport> {
    let alpha0 = alpha0(freqs, moduli, k, window)?;
    let simplified = 1.0 - simplified_deficit(freqs, moduli, k, window)?;
    Ok(DimensionReport {
        ambient_dim: 1,
        alpha0,
        energy_dim_lb: 1.0 - alpha0,
        hausdorff_lb: 1.0 - alpha0,
        simplified_bound: simplified,
        spectral_floor: None,
        reported_lb: (1.0 - alpha0).max(simplified),
        truncation: k,
        window,
    })
}

/// Bounds for a product on the sphere of C^n.
pub fn sphere_bounds(
    freqs: &[u128],
    moduli: &[f64],
    k: usize,
    window: usize,
    n: u32,
) -> Result<DimensionReport> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: f64::from(n),
            range: "[2, ∞)",
        });
    }
    let ambient = f64::from(2 * n - 1);
    let alpha0 = alpha0(freqs, moduli, k, window)?;
    let simplified = ambient - simplified_deficit(freqs, moduli, k, window)?;
    let floor = f64::from(2 * n - 2);
    Ok(DimensionReport {
        ambient_dim: 2 * n - 1,
        alpha0,
        energy_dim_lb: ambient - alpha0,
        hausdorff_lb: ambient - alpha0,
        simplified_bound: simplified,
        spectral_floor: Some(floor),
        reported_lb: (ambient - alpha0).max(simplified).max(floor),
        truncation: k,
        window,
    })
}

/// `j_k = ratio^k` for `k = 1..=count`.
pub fn geometric_freqs(ratio: u128, count: usize) -> Vec<u128> {
    (1..=count as u32).map(|k| ratio.pow(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const LIMIT: f64 = 0.369_070_246_428_542_9; // ln(3/2)/ln 3

    #[test]
    fn closed_form_limit_constant() {
        assert!((1.5f64.ln() / 3f64.ln() - LIMIT).abs() < 1e-15);
    }

    /// For a ≡ 1, j_k = 3^k the k-th term is ln(3/2)/ln 3 - 1/k exactly, which
    /// increases in k; the trailing max is the K-th term.
    #[test]
    fn boundary_family_matches_closed_form() {
        let j = geometric_freqs(3, 50);
        let a = vec![1.0; 50];
        let v = alpha0(&j, &a, 50, 10).unwrap();
        assert!((v - (LIMIT - 1.0 / 50.0)).abs() < 1e-12, "{v}");
        let seq = alpha_sequence(&j, &a, 50);
        for (idx, term) in seq.iter().enumerate() {
            let k = (idx + 1) as f64;
            assert!((term.unwrap() - (LIMIT - 1.0 / k)).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_family_converges_to_limit() {
        // 3^k overflows u128 beyond k = 80; the exact term formula gives the rest.
        let j = geometric_freqs(3, 80);
        let v = alpha0(&j, &vec![1.0; 80], 80, 10).unwrap();
        assert!((v - LIMIT).abs() < 0.0126);
    }

    #[test]
    fn decaying_coefficients_give_zero() {
        let j = geometric_freqs(3, 50);
        let a: Vec<f64> = (1..=50).map(|k| 0.5f64.powi(k)).collect();
        assert_eq!(alpha0(&j, &a, 50, 10).unwrap(), 0.0);
    }

    #[test]
    fn zero_coefficients_give_zero() {
        let j = geometric_freqs(3, 10);
        assert_eq!(alpha0(&j, &[0.0; 10], 10, 5).unwrap(), 0.0);
        assert_eq!(simplified_deficit(&j, &[0.0; 10], 10, 5).unwrap(), 0.0);
    }

    #[test]
    fn simplified_closed_forms() {
        let j = geometric_freqs(3, 50);
        // (k-1)/(2k ln 3) at k = 50.
        let v = simplified_deficit(&j, &[1.0; 50], 50, 10).unwrap();
        assert!((v - 49.0 / (100.0 * 3f64.ln())).abs() < 1e-12);
        let v = simplified_deficit(&j, &[0.5; 50], 50, 10).unwrap();
        assert!((v - 0.25 * 49.0 / (100.0 * 3f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn input_errors() {
        let j = geometric_freqs(3, 5);
        assert!(matches!(alpha0(&j, &[0.5; 5], 5, 0), Err(Error::EmptyWindow { .. })));
        assert!(matches!(alpha0(&j, &[0.5; 5], 5, 6), Err(Error::EmptyWindow { .. })));
        assert!(matches!(alpha0(&j, &[0.5; 5], 1, 1), Err(Error::OutOfRange { .. })));
        assert!(matches!(alpha0(&j, &[0.5; 5], 6, 2), Err(Error::FactorCount { .. })));
        assert!(matches!(alpha0(&[3, 5], &[0.5; 2], 2, 1), Err(Error::Lacunarity { .. })));
        assert!(matches!(
            alpha0(&j, &[0.5, 1.5, 0.5, 0.5, 0.5], 5, 2),
            Err(Error::CoefficientModulus { .. })
        ));
    }

    #[test]
    fn sphere_report_floors() {
        let j = geometric_freqs(3, 10);
        let r = sphere_bounds(&j, &[0.0; 10], 10, 5, 2).unwrap();
        assert_eq!(r.energy_dim_lb, 3.0);
        assert_eq!(r.reported_lb, 3.0);
        let r = sphere_bounds(&j, &[1.0; 10], 10, 5, 2).unwrap();
        assert!(r.reported_lb >= 2.0);
        assert!(r.simplified_bound <= r.hausdorff_lb + 1e-12);
    }

    #[test]
    fn window_starting_at_unit_frequency() {
        // j_1 = 1 has log j_1 = 0; that term is skipped.
        let r = alpha0(&[1, 3, 9], &[0.9, 0.9, 0.9], 3, 3).unwrap();
        assert!(r.is_finite());
    }

    proptest! {
        #[test]
        fn alpha0_never_exceeds_simplified(a in prop::collection::vec(0.0f64..=1.0, 12), w in 1usize..=12) {
            let j = geometric_freqs(3, 12);
            let alpha = alpha0(&j, &a, 12, w).unwrap();
            let simple = simplified_deficit(&j, &a, 12, w).unwrap();
            prop_assert!(alpha <= simple + 1e-9);
            prop_assert!(alpha >= 0.0);
        }
    }
}
