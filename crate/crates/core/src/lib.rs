//! Spectra of the PT-symmetric quartic `H = p² − g x⁴ + a/x²` and its
//! Hermitian partner `h = p² + 4g x⁴ + b x`.
//!
//! Two independent routes are provided:
//!
//! * [`aee`]: the asymptotic energy expansion of the quantum action
//!   variable, `J(E) = Σ b_k E^{−(k−3)/4}`, with the coefficients `b_k`
//!   obtained from the Riccati recurrence and contour integrals around a
//!   pair of branch points;
//! * [`spectra`]: direct shooting for `ψ″ = (V − E)ψ/ℏ²` along a complex
//!   contour joining two decay sectors.
//!
//! [`equivalence`] ties them together: the parameter map between the two
//! Hamiltonians, the coefficient identity, the isospectrality and
//! PT-transition scans, and the zero-energy supersymmetry checks.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aee;
pub mod equivalence;
mod error;
pub mod seriesalg;
pub mod spectra;

pub use error::{Error, Result};
pub use num_complex::Complex64;
