//! Asymptotic energy expansion of the quantum action variable.
//!
//! For `V(x) = A x⁴ + B x + C/x²` the rescaling `x = y (E/|A|)^{1/4}` turns
//! the Riccati equation for the quantum momentum into a recurrence for
//! functions `a_k(y)` built from `D(y) = 1 − σy⁴`, `σ = sign A`. Their
//! integrals around two roots of `D` give
//!
//! ```text
//! J(E) = Σ_k b_k E^{−(k−3)/4},    b_k = (1/λ)(1/2π)∮ a_k dy,    λ = |A|^{1/4}
//! ```
//!
//! and `J(E) = nℏ` quantizes the energy.

mod contour;
mod golden;
mod potential;
mod recurrence;
pub mod reduction;
mod series;

pub use contour::{contour_integral, contour_integral_sum, BranchContour, TrackedContour, DEFAULT_POINTS, MIN_POINTS};
pub use golden::{
    closed_form_hermitian, closed_form_pt, golden_validate, relative_deviation, Family, GoldenReport, GoldenRow,
    GOLDEN_ORDERS,
};
pub use potential::PotentialSpec;
pub use recurrence::{build_coefficients, build_coefficients_exact, build_coefficients_in};
pub use series::{action_series, action_series_quadrature, j_eval, solve_quantization, ActionSeries, JValue};

/// Truncation order for identity checks.
pub const IDENTITY_ORDER: usize = 60;
/// Truncation order matching the printed coefficient set.
pub const PRINTED_ORDER: usize = 24;
