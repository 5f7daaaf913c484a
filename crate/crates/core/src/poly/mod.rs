//! Sparse polynomial arithmetic on the circle and on C².

mod laurent;
mod monomial;

pub use laurent::LaurentPoly;
pub use monomial::{bidegree, sphere_moment, BidegreePoly, Exponents, MonomialPoly, DIM};

/// Coefficients at or below this modulus are dropped after arithmetic.
pub const PRUNE_TOL: f64 = 1e-15;

/// Serde adapters writing complex numbers as `[re, im]`.
pub(crate) mod complex_json {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
            let pairs = Vec::<[f64; 2]>::deserialize(d)?;
            Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
        }
    }
}
