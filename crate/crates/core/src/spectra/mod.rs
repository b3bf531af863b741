//! Direct eigenvalues by two-sided shooting along complex contours.

mod ode;
mod path;
mod scan;
mod shoot;

pub use ode::{dormand_prince, RkOptions, RkStats};
pub use path::{decay_sector, ContourPath, Legs, Ray, CHORD_DEPTH, LINE_HALF_LENGTH, ORIGIN_CLEARANCE, RAY_RADIUS};
pub use scan::{scan_spectrum, ScanOptions, ScanResult, SWEEP_POINTS};
pub use shoot::{
    find_eigenvalue, find_eigenvalue_deflated, integrate_along, integrate_schrodinger, secant, matching, matching_function, BoundarySolution, Direction, EigenResult,
    Matching, SECANT_MAX, SECANT_TOL,
};
