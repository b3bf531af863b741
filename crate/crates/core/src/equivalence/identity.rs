use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::pair::hermitian_partner;
use crate::aee::{action_series, BranchContour, PotentialSpec};
use crate::seriesalg::gamma_fn;
use crate::Result;

/// Floor of the relative deviation denominator; below it a coefficient is a
/// structural zero.
pub const ZERO_FLOOR: f64 = 1e-30;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityRow {
    pub k: usize,
    pub b: Complex64,
    pub beta: Complex64,
    pub rel_dev: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub g: f64,
    pub a: f64,
    pub b_linear: Complex64,
    pub hbar: f64,
    pub k_max: usize,
    pub rows: Vec<IdentityRow>,
    pub max_rel_dev: f64,
}

/// `|b_k − β_k| / max(|b_k|, 10⁻³⁰)`, zero when both vanish.
pub fn identity_deviation(b: Complex64, beta: Complex64) -> f64 {
    let d = (b - beta).norm();
    if d == 0.0 {
        0.0
    } else {
        d / b.norm().max(ZERO_FLOOR)
    }
}

fn compare(h: &PotentialSpec, p: &PotentialSpec, k_max: usize) -> Result<Vec<IdentityRow>> {
    let bs = action_series(h, k_max, &BranchContour::default_for(h.sigma()))?;
    let betas = action_series(p, k_max, &BranchContour::default_for(p.sigma()))?;
    Ok((0..=k_max)
        .map(|k| IdentityRow {
            k,
            b: bs.b(k),
            beta: betas.b(k),
            rel_dev: identity_deviation(bs.b(k), betas.b(k)),
        })
        .collect())
}

/// Compares `b_k` of `H` with `β_k` of its partner `h` for `k ≤ K`.
pub fn coefficient_identity_check(g: f64, a: f64, hbar: f64, k_max: usize) -> Result<IdentityReport> {
    let pair = hermitian_partner(g, a, hbar)?;
    let rows = compare(&pair.big_h_spec, &pair.h_spec, k_max)?;
    let max_rel_dev = rows.iter().map(|r| r.rel_dev).fold(0.0, f64::max);
    Ok(IdentityReport {
        g,
        a,
        b_linear: pair.b,
        hbar,
        k_max,
        rows,
        max_rel_dev,
    })
}

/// Result of comparing `H` at `a + Δa` against the partner of `H` at `a`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrokenIdentityReport {
    pub report: IdentityReport,
    pub delta_a: f64,
    pub observed_delta_b6: Complex64,
    pub predicted_delta_b6: f64,
}

/// `∂b_6/∂a = g^{1/4} Γ(3/4) / (√(2π) Γ(1/4))`.
pub fn b6_slope(g: f64) -> f64 {
    let q = gamma_fn(0.25).expect("positive argument");
    let t = gamma_fn(0.75).expect("positive argument");
    g.powf(0.25) * t / ((2.0 * PI).sqrt() * q)
}

/// Identity check with the parameter relation deliberately violated by
/// `delta_a`; the sixth coefficient then differs by a known amount.
pub fn coefficient_identity_check_broken(g: f64, a: f64, delta_a: f64, hbar: f64, k_max: usize) -> Result<BrokenIdentityReport> {
    let pair = hermitian_partner(g, a, hbar)?;
    let shifted = PotentialSpec::pt_quartic(g, a + delta_a, hbar)?;
    let rows = compare(&shifted, &pair.h_spec, k_max)?;
    let max_rel_dev = rows.iter().map(|r| r.rel_dev).fold(0.0, f64::max);
    let observed = if k_max >= 6 { rows[6].b - rows[6].beta } else { Complex64::new(0.0, 0.0) };
    Ok(BrokenIdentityReport {
        report: IdentityReport {
            g,
            a: a + delta_a,
            b_linear: pair.b,
            hbar,
            k_max,
            rows,
            max_rel_dev,
        },
        delta_a,
        observed_delta_b6: observed,
        predicted_delta_b6: b6_slope(g) * delta_a,
    })
}
