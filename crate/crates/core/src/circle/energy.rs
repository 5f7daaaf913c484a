use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "(0, 1)",
        });
    }
    Ok(())
}

/// Fourier side of the circle t-energy:
/// `|μ̂(0)|² + Σ_{0<|k|≤cutoff} |k|^{t-1} |μ̂(k)|²`.
pub fn energy_fourier(coeffs: &LaurentPoly, t: f64, cutoff: u64) -> Result<f64> {
    check_t(t)?;
    Ok(coeffs
        .terms()
        .filter(|(k, _)| k.unsigned_abs() <= cutoff)
        .map(|(k, c)| {
            if k == 0 {
                c.norm_sqr()
            } else {
                (k.unsigned_abs() as f64).powf(t - 1.0) * c.norm_sqr()
            }
        })
        .sum())
}

/// Off-diagonal Riemann sum of `∫∫ f(λ) f(w) |λ - w|^{-t} dm dm` on an
/// `m`-point grid, with the chordal distance `|λ - w| = 2 sin(π|a-b|/m)`.
pub fn energy_direct(density: &LaurentPoly, t: f64, m: usize) -> Result<f64> {
    check_t(t)?;
    if m < 2 {
        return Err(Error::OutOfRange {
            name: "grid size",
            value: m as f64,
            range: "[2, ∞)",
        });
    }
    if !density.is_real(1e-12) {
        return Err(Error::Invalid("density is not real-valued".into()));
    }
    let f = density.real_grid(m);
    let min = f.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -1e-10 {
        return Err(Error::NegativeDensity { min });
    }
    let kernel: Vec<f64> = (0..m)
        .map(|d| {
            if d == 0 {
                0.0
            } else {
                (2.0 * (std::f64::consts::PI * d as f64 / m as f64).sin()).powf(-t)
            }
        })
        .collect();
    let block = m.div_ceil(64);
    let partial: Vec<f64> = (0..m)
        .collect::<Vec<_>>()
        .par_chunks(block)
        .map(|rows| {
            rows.iter()
                .map(|&a| {
                    let row: f64 = (1..m).map(|d| f[(a + d) % m] * kernel[d]).sum();
                    f[a] * row
                })
                .sum::<f64>()
        })
        .collect();
    Ok(partial.iter().sum::<f64>() / (m as f64 * m as f64))
}
