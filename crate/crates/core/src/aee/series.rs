use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::contour::BranchContour;
use super::potential::PotentialSpec;
use super::recurrence::{build_coefficients, build_coefficients_exact};
use super::reduction::{reduce_sum, MasterTable};
use crate::{Error, Result};

/// Coefficients of `J(E) = Σ_{k≤K} b_k E^{−(k−3)/4}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ActionSeries {
    pub coeffs: Vec<Complex64>,
    pub k_max: usize,
    pub spec: PotentialSpec,
}

impl ActionSeries {
    /// Copy truncated at a lower order.
    pub fn truncated(&self, k_max: usize) -> Self {
        let k = k_max.min(self.k_max);
        ActionSeries {
            coeffs: self.coeffs[..=k].to_vec(),
            k_max: k,
            spec: self.spec,
        }
    }

    pub fn b(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }
}

/// `b_k = (1/λ)(1/2π)∮ a_k dy`.
///
/// The recurrence runs in exact arithmetic and every `a_k` is reduced to
/// master integrals before any rounding, so high orders keep full relative
/// precision and identically vanishing coefficients come out as exact zeros.
pub fn action_series(spec: &PotentialSpec, k_max: usize, contour: &BranchContour) -> Result<ActionSeries> {
    let tracked = contour.track(spec.sigma())?;
    let masters = MasterTable::compute(&tracked);
    let a = build_coefficients_exact(spec, k_max)?;
    let lam = spec.lambda();
    let coeffs = a
        .par_iter()
        .map(|ak| reduce_sum(ak).evaluate(&masters) / lam)
        .collect();
    Ok(ActionSeries {
        coeffs,
        k_max,
        spec: *spec,
    })
}

/// Same coefficients by direct trapezoid quadrature of the floating-point
/// recurrence output. Accurate at low orders only; kept as a cross-check.
pub fn action_series_quadrature(spec: &PotentialSpec, k_max: usize, contour: &BranchContour) -> Result<ActionSeries> {
    let tracked = contour.track(spec.sigma())?;
    let a = build_coefficients(spec, k_max)?;
    let lam = spec.lambda();
    let coeffs = a
        .par_iter()
        .map(|ak| tracked.integrate(|y, s| ak.eval_with_root(y, s)) / lam)
        .collect();
    Ok(ActionSeries {
        coeffs,
        k_max,
        spec: *spec,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JValue {
    pub j: f64,
    pub dj_de: f64,
}

/// Truncated `J(E)` and its derivative on the positive energy axis.
pub fn j_eval(series: &ActionSeries, e: f64) -> Result<JValue> {
    if !(e > 0.0) || !e.is_finite() {
        return Err(Error::Domain(format!("J(E) is defined for E > 0 only, got {e}")));
    }
    let mut j = 0.0;
    let mut dj = 0.0;
    for (k, b) in series.coeffs.iter().enumerate() {
        if b.re == 0.0 {
            continue;
        }
        let p = -(k as f64 - 3.0) / 4.0;
        let term = b.re * e.powf(p);
        j += term;
        dj += p * term / e;
    }
    Ok(JValue { j, dj_de: dj })
}

const NEWTON_MAX: usize = 100;
const NEWTON_TOL: f64 = 1e-12;

/// Solves `J(E) = nℏ` by Newton iteration from `((n + ½)ℏ/b_0)^{4/3}`.
///
/// If an iterate leaves the positive axis the root is bracketed on
/// `[E_init/10, 10 E_init]` and bisected instead.
pub fn solve_quantization(series: &ActionSeries, n: usize) -> Result<f64> {
    let hbar = series.spec.hbar;
    let b0 = series.coeffs[0].re;
    if !(b0 > 0.0) {
        return Err(Error::Domain("leading action coefficient must be positive".into()));
    }
    let target = n as f64 * hbar;
    let e_init = ((n as f64 + 0.5) * hbar / b0).powf(4.0 / 3.0);
    let mut e = e_init;
    for _ in 0..NEWTON_MAX {
        let v = j_eval(series, e)?;
        let step = (v.j - target) / v.dj_de;
        let next = e - step;
        if !(next > 0.0) || !next.is_finite() {
            return bisect(series, target, e_init / 10.0, 10.0 * e_init);
        }
        e = next;
        if (step / e).abs() < NEWTON_TOL {
            return Ok(e);
        }
    }
    Err(Error::NonConvergence {
        solver: "quantization Newton",
        iterations: NEWTON_MAX,
        last: format!("{e}"),
    })
}

fn bisect(series: &ActionSeries, target: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let f = |e: f64| j_eval(series, e).map(|v| v.j - target);
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo * fhi > 0.0 {
        return Err(Error::NonConvergence {
            solver: "quantization bisection",
            iterations: 0,
            last: format!("no sign change on [{lo}, {hi}]"),
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo) < NEWTON_TOL * mid {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn only_b0(b0: f64) -> ActionSeries {
        ActionSeries {
            coeffs: vec![Complex64::new(b0, 0.0)],
            k_max: 0,
            spec: PotentialSpec::pt_quartic(1.0, 0.0, 1.0).unwrap(),
        }
    }

    #[test]
    fn leading_power() {
        let v = j_eval(&only_b0(1.0), 16.0).unwrap();
        assert!((v.j - 8.0).abs() < 1e-14);
        assert!((v.dj_de - 0.375).abs() < 1e-14);
        assert!(matches!(j_eval(&only_b0(1.0), 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn leading_order_quantization_is_closed_form() {
        // with b_0 alone, J = nℏ has E = (n/b_0)^{4/3}
        let e = solve_quantization(&only_b0(0.5), 3).unwrap();
        assert!((e - 6f64.powf(4.0 / 3.0)).abs() < 1e-10);
    }
}
