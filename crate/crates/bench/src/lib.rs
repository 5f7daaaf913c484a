//! Fixtures shared by the benchmarks.

use rieszlab_core::{CircleRieszSpec, Complex64, RieszTriple};

/// `j_k = 3^k`, `c_k = 0.9` for `k = 1..=n`.
pub fn circle_family(n: u32) -> CircleRieszSpec {
    let freqs = (1..=n).map(|k| 3u64.pow(k)).collect();
    CircleRieszSpec::new(freqs, vec![Complex64::new(0.9, 0.0); n as usize]).expect("lacunary family")
}

/// Monomial sphere factors on `j = 1, 3, 9, …`.
pub fn sphere_family(count: usize) -> RieszTriple {
    RieszTriple::monomial_family(count, Complex64::new(0.9, 0.0))
}
