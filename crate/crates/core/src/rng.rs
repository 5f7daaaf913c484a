//! Seeded random streams and uniform sampling on the spheres used here.
//!
//! Every random quantity in the crate is drawn from a ChaCha stream selected by
//! `(seed, stream)`. Parallel loops split work into a fixed number of streams,
//! so results do not depend on the thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Number of independent streams used by parallel Monte Carlo loops.
pub const MC_STREAMS: u64 = 64;

/// Counter-based splitter: the same seed with distinct `stream` ids yields
/// non-overlapping ChaCha keystreams.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point of S³ ⊂ C² via a normalized 4-dimensional Gaussian.
pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R) -> [Complex64; 2] {
    loop {
        let g: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return [
                Complex64::new(g[0] / norm, g[1] / norm),
                Complex64::new(g[2] / norm, g[3] / norm),
            ];
        }
    }
}

/// Uniform angle in `[0, 2π)`.
pub fn angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>() * std::f64::consts::TAU
}

/// Mean and standard error of a complex statistic over `total` draws. Draws
/// are split across [`MC_STREAMS`] streams and reduced in stream order.
pub fn mc_mean_complex<F>(seed: u64, total: usize, sample: F) -> (Complex64, f64)
where
    F: Fn(&mut ChaCha8Rng) -> Complex64 + Sync,
{
    let counts = split_counts(total, MC_STREAMS);
    let partial: Vec<(Complex64, f64)> = counts
        .par_iter()
        .enumerate()
        .map(|(stream, &count)| {
            let mut rng = stream_rng(seed, stream as u64);
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let v = sample(&mut rng);
                sum += v;
                sum_sq += v.norm_sqr();
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partial
        .iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(a, b), (s, q)| (a + s, b + q));
    let n = total.max(1) as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean.norm_sqr()).max(0.0) * n / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// Real-valued [`mc_mean_complex`].
pub fn mc_mean<F>(seed: u64, total: usize, sample: F) -> (f64, f64)
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let (mean, stderr) = mc_mean_complex(seed, total, |rng| Complex64::new(sample(rng), 0.0));
    (mean.re, stderr)
}

/// Splits `total` items into `streams` near-equal chunk sizes (first chunks larger).
pub(crate) fn split_counts(total: usize, streams: u64) -> Vec<usize> {
    let s = streams as usize;
    (0..s)
        .map(|i| total / s + usize::from(i < total % s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_points_have_unit_norm() {
        let mut rng = stream_rng(7, 0);
        for _ in 0..1000 {
            let z = sphere_point(&mut rng);
            let n = z[0].norm_sqr() + z[1].norm_sqr();
            assert!((n - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn streams_differ_and_repeat() {
        let a: u64 = stream_rng(1, 0).random();
        let b: u64 = stream_rng(1, 1).random();
        let c: u64 = stream_rng(1, 0).random();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn mc_mean_is_thread_independent_and_calibrated() {
        let f = |rng: &mut ChaCha8Rng| rng.random::<f64>();
        let (m, se) = mc_mean(3, 100_000, f);
        assert!((m - 0.5).abs() < 4.0 * se);
        assert!((se - (1.0f64 / 12.0 / 100_000.0).sqrt()).abs() < 1e-4);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        assert_eq!(pool.install(|| mc_mean(3, 100_000, f)), (m, se));
    }

    #[test]
    fn split_counts_sums() {
        let parts = split_counts(1003, 64);
        assert_eq!(parts.iter().sum::<usize>(), 1003);
        assert_eq!(parts.len(), 64);
    }
}
