//! Finite-truncation shadows of the energy estimates: energies of partial
//! products stay bounded in the truncation when `t` sits below the proven
//! dimension bound, and the spectral and direct energies stay comparable.

use rieszlab_core::bounds::{alpha0, default_window, geometric_freqs};
use rieszlab_core::harmonics::{decompose, sphere_energy_sum};
use rieszlab_core::sphere::mc_energy;
use rieszlab_core::{energy_direct, energy_fourier, BasisCache, CircleRieszSpec, Complex64, RieszTriple};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn circle_energy_bounded_below_the_dimension_bound() {
    let freqs: Vec<u64> = (1..=8).map(|k| 3u64.pow(k)).collect();
    let wide = geometric_freqs(3, 8);
    let a0 = alpha0(&wide, &[0.9; 8], 8, default_window(8)).unwrap();
    let t = 1.0 - (a0 + 0.1);
    let spec = CircleRieszSpec::new(freqs, vec![c(0.9); 8]).unwrap();
    let values: Vec<f64> = (1..=8)
        .map(|n| energy_fourier(&spec.partial_product(n).unwrap(), t, u64::MAX).unwrap())
        .collect();
    let sup = values.iter().copied().fold(0.0, f64::max);
    assert!(sup <= 2.0 * values[2], "{values:?}");
}

#[test]
fn sphere_energy_bounded_below_the_dimension_bound() {
    let triple = RieszTriple::monomial_family(4, c(0.9));
    let wide: Vec<u128> = triple.freqs().iter().map(|&j| u128::from(j)).collect();
    let a0 = alpha0(&wide, &[0.9; 4], 4, default_window(4)).unwrap();
    let t = 3.0 - (a0 + 0.05);
    let mut cache = BasisCache::new();
    let values: Vec<f64> = (1..=4)
        .map(|k| {
            let p = triple.partial_product(k).unwrap();
            sphere_energy_sum(&decompose(&p.poly, &mut cache).unwrap(), t, 2).unwrap()
        })
        .collect();
    let sup = values.iter().copied().fold(0.0, f64::max);
    assert!(sup <= 2.0 * values[1], "{values:?}");
}

#[test]
fn circle_direct_and_fourier_energies_are_comparable() {
    let spec = CircleRieszSpec::new(vec![3, 9, 27], vec![c(0.8); 3]).unwrap();
    let p = spec.partial_product(3).unwrap();
    let ratios: Vec<f64> = (2..=8)
        .map(|i| {
            let t = f64::from(i) / 10.0;
            energy_direct(&p, t, 1 << 12).unwrap() / energy_fourier(&p, t, u64::MAX).unwrap()
        })
        .collect();
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    assert!(lo >= 0.1 && hi <= 10.0 && hi / lo < 20.0, "{ratios:?}");
}

#[test]
fn sphere_mc_and_spectral_energies_are_comparable() {
    let triple = RieszTriple::monomial_family(2, c(0.9));
    let p = triple.partial_product(2).unwrap();
    let mut cache = BasisCache::new();
    let d = decompose(&p.poly, &mut cache).unwrap();
    for i in 1..=5 {
        let t = 0.5 * f64::from(i);
        let mc = mc_energy(&p, t, 1_000_000, 17).unwrap();
        let spectral = sphere_energy_sum(&d, t, 2).unwrap();
        let ratio = mc.estimate / spectral;
        assert!((0.1..=10.0).contains(&ratio), "t={t}: ratio {ratio}");
        assert!(mc.stderr < 0.05 * mc.estimate);
    }
}
