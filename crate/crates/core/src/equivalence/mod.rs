//! Equivalence between `H = p² − g x⁴ + a/x²` on a PT-symmetric contour and
//! the Hermitian `h = p² + 4g x⁴ + b x`, and the checks built on it.

mod identity;
mod isospectral;
mod pair;
mod susy;
mod transition;

pub use identity::{
    b6_slope, coefficient_identity_check, coefficient_identity_check_broken, identity_deviation, BrokenIdentityReport,
    IdentityReport, IdentityRow,
};
pub use isospectral::{isospectrality_check, IsospectralReport, IsospectralRow};
pub use pair::{classify, hermitian_partner, inverse_map, partner_b, EquivalencePair, Regime, COALESCENCE_A};
pub use susy::{
    decay_angles, ground_level, phi_one, phi_two, sample_points, susy_check, susy_spec_one, susy_spec_two, w_closed_form, Jet2,
    SusyReport,
};
pub use transition::{pt_transition_scan, SweepResult, TransitionOptions, DEFAULT_A_RANGE, DEFAULT_STEPS, TRACKED};
