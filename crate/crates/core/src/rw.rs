//! Ryll–Wojtaszczyk candidates for n = 2: homogeneous holomorphic
//! `R(z) = Σ_i c_i z₁^i z₂^{j-i}` with `sup_{S³} |R| = 1` and large `‖R‖_{L²(σ)}`.
//!
//! `|R|` is invariant under the global phase, so its supremum over S³ is the
//! supremum over `z = (cos θ e^{iφ}, sin θ)`, `(θ, φ) ∈ [0, π/2] × [0, 2π)`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::Path;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::{complex_json, sphere_moment, BidegreePoly, DIM};
use crate::rng::stream_rng;

/// Maximum number of refinement levels used by default.
pub const DEFAULT_DEPTH: u32 = 24;
/// Relative slack at which a cell is no longer subdivided.
const CELL_TOL: f64 = 1e-7;
/// Refinement stops early once this many cells survive a level.
const CELL_CAP: usize = 1 << 22;
/// Random complex Gaussian starts per search, besides the structured ones.
const RANDOM_STARTS: u64 = 4;

/// `‖Σ c_i z₁^i z₂^{j-i}‖_{L²(σ)}`, using `‖z₁^i z₂^{j-i}‖² = i!(j-i)!/(j+1)!`.
pub fn l2_norm(coeffs: &[Complex64]) -> f64 {
    let j = coeffs.len().saturating_sub(1) as u32;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let e = [i as u32, j - i as u32];
            c.norm_sqr() * sphere_moment(&e, &e, DIM)
        })
        .sum::<f64>()
        .sqrt()
}

struct Evaluator<'a> {
    coeffs: &'a [Complex64],
    j: usize,
}

impl Evaluator<'_> {
    fn powers(x: f64, j: usize) -> Vec<f64> {
        let mut p = vec![1.0; j + 1];
        for k in 1..=j {
            p[k] = p[k - 1] * x;
        }
        p
    }

    fn value(&self, theta: f64, phi: f64) -> Complex64 {
        let (s, c) = theta.sin_cos();
        let (cp, sp) = (Self::powers(c, self.j), Self::powers(s, self.j));
        let step = Complex64::from_polar(1.0, phi);
        let mut rot = Complex64::new(1.0, 0.0);
        let mut out = Complex64::new(0.0, 0.0);
        for (i, &a) in self.coeffs.iter().enumerate() {
            out += a * rot * (cp[i] * sp[self.j - i]);
            rot *= step;
        }
        out
    }

    /// `(R, ∂_θ R, ∂_φ R)` at `(θ, φ)`.
    fn with_gradient(&self, theta: f64, phi: f64) -> (Complex64, Complex64, Complex64) {
        let j = self.j;
        let (s, c) = theta.sin_cos();
        let (cp, sp) = (Self::powers(c, j), Self::powers(s, j));
        let step = Complex64::from_polar(1.0, phi);
        let mut rot = Complex64::new(1.0, 0.0);
        let (mut r, mut rt, mut rp) = (Complex64::default(), Complex64::default(), Complex64::default());
        for (i, &a) in self.coeffs.iter().enumerate() {
            let base = a * rot;
            let f = cp[i] * sp[j - i];
            let mut df = 0.0;
            if i > 0 {
                df -= i as f64 * cp[i - 1] * sp[j - i] * s;
            }
            if i < j {
                df += (j - i) as f64 * cp[i] * c * sp[j - i - 1];
            }
            r += base * f;
            rt += base * df;
            rp += base * Complex64::new(0.0, i as f64) * f;
            rot *= step;
        }
        (r, rt, rp)
    }
}

/// Certified bracket on `sup_{S³} |R|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupBracket {
    /// Largest `|R|` actually evaluated.
    pub attained: f64,
    /// Rigorous upper bound.
    pub upper: f64,
    /// `(θ, φ)` where `attained` was evaluated.
    pub argmax: (f64, f64),
}

/// `max |cos^a θ sin^b θ|` over `[lo, hi]`, an interval of width below π/2
/// around `[0, π/2]`. `|cos|` and `|sin|` are mirror-symmetric about 0 and π/2,
/// so the interval is first folded into `[0, π/2]`; there the function is
/// unimodal with its peak at `tan² θ = b/a`.
fn power_envelope(a: u32, b: u32, lo: f64, hi: f64) -> f64 {
    let (lo, hi) = if lo < 0.0 {
        (0.0, (-lo).max(hi).min(FRAC_PI_2))
    } else if hi > FRAC_PI_2 {
        (lo.min(PI - hi).max(0.0), FRAC_PI_2)
    } else {
        (lo, hi)
    };
    let g = |t: f64| t.cos().abs().powi(a as i32) * t.sin().abs().powi(b as i32);
    let peak = match (a, b) {
        (0, 0) => return 1.0,
        (0, _) => FRAC_PI_2,
        (_, 0) => 0.0,
        _ => (f64::from(b) / f64::from(a)).sqrt().atan(),
    };
    if (lo..=hi).contains(&peak) {
        g(peak)
    } else {
        g(lo).max(g(hi))
    }
}

/// Bounds on `|∂²_θ R|`, `|∂_θ∂_φ R|`, `|∂²_φ R|` over `θ ∈ [lo, hi]`, from
/// the exact expansion of the derivatives of `cos^i θ sin^{j-i} θ`.
fn hessian_bounds(mags: &[f64], lo: f64, hi: f64) -> (f64, f64, f64) {
    let j = mags.len() as u32 - 1;
    let env = |a: i64, b: i64, w: f64| {
        if w == 0.0 {
            0.0
        } else {
            w * power_envelope(a as u32, b as u32, lo, hi)
        }
    };
    let (mut tt, mut tp, mut pp) = (0.0, 0.0, 0.0);
    for (i, &m) in mags.iter().enumerate() {
        if m == 0.0 {
            continue;
        }
        let (ii, mm) = (i as i64, i64::from(j) - i as i64);
        let (fi, fm) = (ii as f64, mm as f64);
        tt += m
            * (env(ii - 2, mm + 2, fi * (fi - 1.0))
                + env(ii, mm, fi * (fm + 1.0) + fm * (fi + 1.0))
                + env(ii + 2, mm - 2, fm * (fm - 1.0)));
        tp += m * fi * (env(ii - 1, mm + 1, fi) + env(ii + 1, mm - 1, fm));
        pp += m * env(ii, mm, fi * fi);
    }
    (tt, tp, pp)
}

/// Branch and bound over `(θ, φ)` cells. A cell of half-widths `(h_θ, h_φ)`
/// is bounded by the largest corner value of the first-order expansion at its
/// center plus the Taylor remainder `½ (M_θθ h_θ² + 2 M_θφ h_θ h_φ + M_φφ h_φ²)`,
/// with the `M` bounding second derivatives on the cell. Starts from a `(64j)²`
/// grid and subdivides at most `depth` times.
pub fn sup_norm_bracket(coeffs: &[Complex64], depth: u32) -> SupBracket {
    let j = coeffs.len().saturating_sub(1);
    let ev = Evaluator { coeffs, j };
    let mass: f64 = coeffs.iter().map(|c| c.norm()).sum();
    if j == 0 || mass == 0.0 {
        let v = coeffs.first().map_or(0.0, |c| c.norm());
        return SupBracket {
            attained: v,
            upper: v,
            argmax: (0.0, 0.0),
        };
    }
    let mags: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
    let n = 64 * j;
    let (mut ht, mut hp) = (FRAC_PI_2 / n as f64 / 2.0, TAU / n as f64 / 2.0);
    let mut cells: Vec<(f64, f64)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| ((2 * a + 1) as f64 * ht, (2 * b + 1) as f64 * hp))
        .collect();
    let mut best = SupBracket {
        attained: 0.0,
        upper: 0.0,
        argmax: (0.0, 0.0),
    };
    let mut discarded_max = 0.0f64;
    for level in 0..=depth {
        let scored: Vec<(f64, f64)> = cells
            .par_iter()
            .map(|&(t, p)| {
                let (r, rt, rp) = ev.with_gradient(t, p);
                let (mtt, mtp, mpp) = hessian_bounds(&mags, t - ht, t + ht);
                let remainder = 0.5 * (mtt * ht * ht + 2.0 * mtp * ht * hp + mpp * hp * hp);
                let lin = [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]
                    .iter()
                    .map(|&(st, sp)| (r + rt * (st * ht) + rp * (sp * hp)).norm())
                    .fold(0.0, f64::max);
                (r.norm(), lin + remainder)
            })
            .collect();
        for (&(v, _), &cell) in scored.iter().zip(&cells) {
            if v > best.attained {
                best.attained = v;
                best.argmax = cell;
            }
        }
        let threshold = best.attained * (1.0 + CELL_TOL);
        let mut survivors = Vec::new();
        let mut surviving_max = 0.0f64;
        for (&(_, u), &cell) in scored.iter().zip(&cells) {
            if u > threshold {
                survivors.push(cell);
                surviving_max = surviving_max.max(u);
            } else {
                discarded_max = discarded_max.max(u);
            }
        }
        if survivors.is_empty() {
            break;
        }
        if level == depth || survivors.len() > CELL_CAP / 4 {
            discarded_max = discarded_max.max(surviving_max);
            break;
        }
        ht /= 2.0;
        hp /= 2.0;
        cells = survivors
            .iter()
            .flat_map(|&(t, p)| {
                [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]
                    .map(|(st, sp)| (t + st * ht, p + sp * hp))
            })
            .collect();
    }
    best.upper = discarded_max.max(best.attained);
    best
}

/// Certified upper bound on `sup_{S³} |R|`.
pub fn sup_norm_certify(coeffs: &[Complex64], depth: u32) -> f64 {
    sup_norm_bracket(coeffs, depth).upper
}

/// `‖R‖₂ / sup|R|`, with the certified upper bound in the denominator.
pub fn delta(coeffs: &[Complex64]) -> f64 {
    let sup = sup_norm_certify(coeffs, DEFAULT_DEPTH);
    if sup == 0.0 {
        0.0
    } else {
        l2_norm(coeffs) / sup
    }
}

/// Cheap sup estimate for the search loop: a `(8j+8)²` grid followed by
/// compass refinement around the best grid points.
fn sup_estimate(coeffs: &[Complex64]) -> f64 {
    let j = coeffs.len() - 1;
    let ev = Evaluator { coeffs, j };
    let n = 8 * j + 8;
    let (dt, dp) = (FRAC_PI_2 / n as f64, TAU / n as f64);
    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity((n + 1) * n);
    for a in 0..=n {
        for b in 0..n {
            let (t, p) = (a as f64 * dt, b as f64 * dp);
            grid.push((ev.value(t, p).norm(), t, p));
        }
    }
    grid.sort_by(|x, y| y.0.total_cmp(&x.0));
    grid.iter()
        .take(4)
        .map(|&(mut v, mut t, mut p)| {
            let (mut st, mut sp) = (dt, dp);
            for _ in 0..40 {
                let mut moved = false;
                for (u, w) in [(st, 0.0), (-st, 0.0), (0.0, sp), (0.0, -sp)] {
                    let cand = ev.value(t + u, p + w).norm();
                    if cand > v {
                        v = cand;
                        t += u;
                        p += w;
                        moved = true;
                        break;
                    }
                }
                if !moved {
                    st /= 2.0;
                    sp /= 2.0;
                }
            }
            v
        })
        .fold(0.0, f64::max)
}

fn estimated_delta(coeffs: &[Complex64]) -> f64 {
    let sup = sup_estimate(coeffs);
    if sup == 0.0 {
        0.0
    } else {
        l2_norm(coeffs) / sup
    }
}

/// Rotates `coeffs` so the first coefficient of (near-)maximal modulus is real
/// and positive. Rotated copies of the same vector map to the same output up
/// to rounding.
pub fn canonical_phase(coeffs: &[Complex64]) -> Vec<Complex64> {
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return coeffs.to_vec();
    }
    let lead = coeffs
        .iter()
        .find(|c| c.norm() >= max * (1.0 - 1e-9))
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    let rot = lead.conj() / lead.norm();
    coeffs.iter().map(|c| c * rot).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchMeta {
    pub iterations: u64,
    pub starts: usize,
    pub refinement_depth: u32,
}

/// A rescaled candidate with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RWCertificate {
    pub j: u32,
    #[serde(with = "complex_json::vec")]
    pub coeffs: Vec<Complex64>,
    pub l2_norm: f64,
    /// Certified upper bound on `sup |R|` for the stored coefficients.
    pub sup_bound: f64,
    /// `l2_norm / sup_bound`.
    pub delta: f64,
    pub seed: u64,
    pub search_meta: SearchMeta,
}

impl RWCertificate {
    /// Certifies `coeffs`, then rescales them so the largest attained value
    /// of `|R|` is 1.
    pub fn certify(coeffs: &[Complex64], seed: u64, meta: SearchMeta) -> Self {
        let canon = canonical_phase(coeffs);
        let attained = sup_norm_bracket(&canon, meta.refinement_depth).attained;
        let scaled: Vec<Complex64> = if attained > 0.0 {
            canon.iter().map(|c| c / attained).collect()
        } else {
            canon
        };
        let sup_bound = sup_norm_certify(&scaled, meta.refinement_depth);
        let l2 = l2_norm(&scaled);
        Self {
            j: scaled.len().saturating_sub(1) as u32,
            delta: if sup_bound > 0.0 { l2 / sup_bound } else { 0.0 },
            l2_norm: l2,
            sup_bound,
            coeffs: scaled,
            seed,
            search_meta: meta,
        }
    }

    pub fn polynomial(&self) -> BidegreePoly {
        BidegreePoly::holomorphic(&self.coeffs)
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)
    }
}

fn binomial_profile(j: usize, alternate: bool) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(j + 1);
    let mut b = 1.0f64;
    for i in 0..=j {
        let sign = if alternate && i % 2 == 1 { -1.0 } else { 1.0 };
        out.push(Complex64::new(sign * b.sqrt(), 0.0));
        b = b * (j - i) as f64 / (i + 1) as f64;
    }
    out
}

/// The structured and random starting points used by [`search`].
pub fn search_starts(j: u32, seed: u64) -> Vec<Vec<Complex64>> {
    let j = j as usize;
    let mut central = vec![Complex64::new(0.0, 0.0); j + 1];
    central[j / 2] = Complex64::new(1.0, 0.0);
    let mut starts = vec![binomial_profile(j, false), binomial_profile(j, true), central];
    for s in 0..RANDOM_STARTS {
        let mut rng = stream_rng(seed, s);
        starts.push(
            (0..=j)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect(),
        );
    }
    starts
}

/// Coordinate ascent on the estimated `δ` from one start. Returns the final
/// coefficients and the number of `δ` evaluations.
fn ascend(start: &[Complex64], budget: u64) -> (Vec<Complex64>, u64) {
    let j = start.len() - 1;
    let mut cur = canonical_phase(start);
    let mut value = estimated_delta(&cur);
    let mut step = 0.25 * cur.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut evals = 1u64;
    let mut improved_in_sweep = false;
    let mut i = 0usize;
    let dirs = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ];
    while evals < budget && step > 1e-9 {
        for d in dirs {
            let mut trial = cur.clone();
            trial[i] += d * step;
            let v = estimated_delta(&trial);
            evals += 1;
            if v > value + 1e-15 {
                cur = trial;
                value = v;
                improved_in_sweep = true;
                break;
            }
        }
        i += 1;
        if i > j {
            i = 0;
            if !improved_in_sweep {
                step *= 0.5;
            }
            improved_in_sweep = false;
        }
    }
    (cur, evals)
}

fn lexicographic(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Multi-start search from explicit starts. `budget` bounds the number of
/// `δ` evaluations per start; exhaustion returns the best point found.
pub fn search_from(starts: &[Vec<Complex64>], budget: u64, seed: u64) -> RWCertificate {
    let runs: Vec<(RWCertificate, u64)> = starts
        .par_iter()
        .map(|s| {
            let (coeffs, evals) = ascend(s, budget);
            let meta = SearchMeta {
                iterations: evals,
                starts: starts.len(),
                refinement_depth: DEFAULT_DEPTH,
            };
            (RWCertificate::certify(&coeffs, seed, meta), evals)
        })
        .collect();
    let total: u64 = runs.iter().map(|r| r.1).sum();
    let mut best = runs
        .into_iter()
        .map(|r| r.0)
        .reduce(|a, b| {
            if (b.delta - a.delta).abs() <= 1e-12 * a.delta.max(1.0) {
                if lexicographic(&b.coeffs, &a.coeffs).is_lt() {
                    b
                } else {
                    a
                }
            } else if b.delta > a.delta {
                b
            } else {
                a
            }
        })
        .expect("at least one start");
    best.search_meta.iterations = total;
    best
}

/// Searches degree-`j` candidates for the largest certified `δ`.
pub fn search(j: u32, budget: u64, seed: u64) -> RWCertificate {
    let j = j.max(1);
    search_from(&search_starts(j, seed), budget, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dense_max(coeffs: &[Complex64], n: usize) -> f64 {
        let ev = Evaluator {
            coeffs,
            j: coeffs.len() - 1,
        };
        let mut best = 0.0f64;
        for a in 0..=n {
            for b in 0..n {
                let t = FRAC_PI_2 * a as f64 / n as f64;
                let p = TAU * b as f64 / n as f64;
                best = best.max(ev.value(t, p).norm());
            }
        }
        best
    }

    #[test]
    fn power_envelope_matches_dense_scan() {
        for (a, b) in [(0, 0), (3, 0), (0, 2), (2, 5), (7, 1)] {
            for (lo, hi) in [(-0.01, 0.02), (0.3, 0.5), (1.5, 1.6), (0.0, FRAC_PI_2)] {
                let scan = (0..=2000)
                    .map(|k| lo + (hi - lo) * f64::from(k) / 2000.0)
                    .map(|t: f64| t.cos().abs().powi(a) * t.sin().abs().powi(b))
                    .fold(0.0, f64::max);
                let env = power_envelope(a as u32, b as u32, lo, hi);
                assert!(env >= scan - 1e-15 && env <= scan + 1e-5, "({a},{b}) [{lo},{hi}]");
            }
        }
    }

    #[test]
    fn l2_examples() {
        assert!((l2_norm(&[c(0.0, 0.0), c(1.0, 0.0)]) - 0.5f64.sqrt()).abs() < 1e-15);
        let two_z1z2 = [c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)];
        assert!((l2_norm(&two_z1z2) - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        for j in 1..=20 {
            assert!((l2_norm(&binomial_profile(j, false)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn l2_matches_inner_product() {
        let coeffs = [c(0.3, -0.2), c(1.0, 0.5), c(-0.7, 0.0), c(0.1, 0.9)];
        let p = BidegreePoly::holomorphic(&coeffs);
        let direct = p.poly().sphere_inner_product(p.poly()).re.sqrt();
        assert!((l2_norm(&coeffs) - direct).abs() < 1e-12);
    }

    #[test]
    fn sup_examples() {
        let z1 = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = sup_norm_bracket(&z1, DEFAULT_DEPTH);
        assert!(b.upper >= 1.0 && b.upper <= 1.0 + 1e-6, "{b:?}");
        let two_z1z2 = [c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)];
        let b = sup_norm_bracket(&two_z1z2, DEFAULT_DEPTH);
        assert!(b.upper >= 1.0 && b.upper <= 1.0 + 1e-6, "{b:?}");
    }

    #[test]
    fn binomial_profile_matches_dense_sampling() {
        let coeffs = binomial_profile(4, false);
        let b = sup_norm_bracket(&coeffs, DEFAULT_DEPTH);
        let dense = dense_max(&coeffs, 1000);
        assert!((b.upper - dense).abs() < 1e-4, "{} vs {dense}", b.upper);
        assert!(b.upper >= dense);
    }

    #[test]
    fn bracket_is_tight_for_random_coefficients() {
        let mut rng = stream_rng(5, 0);
        for j in [3usize, 7, 12, 16] {
            let coeffs: Vec<Complex64> = (0..=j)
                .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let b = sup_norm_bracket(&coeffs, DEFAULT_DEPTH);
            assert!(b.upper <= b.attained * (1.0 + 1e-6), "j={j}: {b:?}");
            assert!(b.upper >= dense_max(&coeffs, 256));
        }
    }

    #[test]
    fn delta_is_phase_invariant_and_at_most_one() {
        let coeffs = [c(0.3, -0.2), c(1.0, 0.5), c(-0.7, 0.0)];
        let d = delta(&coeffs);
        let rot = Complex64::from_polar(1.0, 1.234);
        let rotated: Vec<Complex64> = coeffs.iter().map(|x| x * rot).collect();
        assert!((delta(&rotated) - d).abs() < 1e-12);
        assert!(d <= 1.0);
    }

    #[test]
    fn search_degree_one() {
        let cert = search(1, 200, 1);
        assert!((cert.delta - 0.5f64.sqrt()).abs() < 1e-3, "{}", cert.delta);
    }

    #[test]
    fn search_degree_two() {
        let cert = search(2, 400, 1);
        assert!(cert.delta >= 0.8164, "{}", cert.delta);
        assert!(cert.delta <= 1.0);
    }

    #[test]
    fn certificates_recertify_after_rescale() {
        for j in [1, 2, 5] {
            let cert = search(j, 200, 9);
            let again = sup_norm_bracket(&cert.coeffs, DEFAULT_DEPTH);
            assert!(again.upper <= 1.0 + 1e-6 && again.upper >= 1.0 - 1e-9, "{again:?}");
            assert!((l2_norm(&cert.coeffs) - cert.l2_norm).abs() < 1e-12);
        }
    }

    #[test]
    fn search_is_deterministic_and_phase_blind() {
        let a = search(3, 150, 4);
        let b = search(3, 150, 4);
        assert_eq!(a, b);
        let rot = Complex64::from_polar(1.0, 0.77);
        let rotated: Vec<Vec<Complex64>> = search_starts(3, 4)
            .into_iter()
            .map(|s| s.into_iter().map(|x| x * rot).collect())
            .collect();
        let r = search_from(&rotated, 150, 4);
        assert!((r.delta - a.delta).abs() < 1e-9);
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = search(2, 50, 3);
        let text = serde_json::to_string(&cert).unwrap();
        let back: RWCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["j", "coeffs", "l2_norm", "sup_bound", "delta", "seed"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
