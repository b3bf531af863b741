//! Laurent polynomials in `y` and algebraic terms `N(y)·D(y)^{−m/2}` with
//! `D(y) = 1 − σy⁴`.
//!
//! Everything here is generic over a [`Coefficient`] field so the same code
//! runs in double precision and in exact dyadic arithmetic.

mod algebraic;
mod coefficient;
mod laurent;

pub use algebraic::{at_add, at_diff, at_mul, lp_diff, lp_mul, AlgebraicSum, AlgebraicTerm, Sigma};
pub use coefficient::{Coefficient, ExactComplex, CANONICAL_DROP};
pub(crate) use coefficient::rational_to_f64;
pub use laurent::LaurentPoly;

use crate::{Error, Result};

/// Gamma function on the positive real axis.
pub fn gamma_fn(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("gamma_fn requires z > 0, got {z}")));
    }
    Ok(statrs::function::gamma::gamma(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_reference_values() {
        let cases = [
            (0.5, std::f64::consts::PI.sqrt()),
            (1.0, 1.0),
            (0.25, 3.625_609_908_221_908),
            (0.75, 1.225_416_702_465_178),
        ];
        for (z, want) in cases {
            let got = gamma_fn(z).unwrap();
            assert!((got - want).abs() < 1e-12 * want, "gamma({z}) = {got}");
        }
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        for z in [0.0, -1.5, f64::NAN] {
            assert!(matches!(gamma_fn(z), Err(Error::Domain(_))));
        }
    }
}
