//! Riesz products on the circle and on the unit sphere of C², with the
//! spherical-harmonic machinery, dimension bounds and empirical estimators
//! needed to study them.

// `!(x <= bound)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod circle;
pub mod error;
pub mod estimators;
pub mod harmonics;
pub mod poly;
pub mod rng;
pub mod rw;
pub mod sphere;

pub use bounds::{alpha0, circle_bounds, simplified_deficit, sphere_bounds, DimensionReport};
pub use circle::{energy_direct, energy_fourier, CircleRieszSpec, SignedCombination};
pub use error::{Error, Result};
pub use estimators::{DimensionEstimate, Manifold, SampleSet, TorusMeasureSpec};
pub use harmonics::{BasisCache, HpqBasis, SpectralDecomposition};
pub use num_complex::Complex64;
pub use poly::{BidegreePoly, LaurentPoly, MonomialPoly};
pub use rw::RWCertificate;
pub use sphere::{RieszTriple, SphereFactor, SpherePartialProduct, TripleSpec};
