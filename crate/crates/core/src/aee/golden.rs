use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::contour::BranchContour;
use super::potential::PotentialSpec;
use super::series::action_series;
use crate::seriesalg::gamma_fn;
use crate::{Error, Result};

/// Orders with printed closed forms.
pub const GOLDEN_ORDERS: [usize; 6] = [0, 3, 6, 12, 18, 24];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Family {
    /// `p² − g x⁴ + a/x²`
    PtQuartic { g: f64, a: f64 },
    /// `p² + α x⁴ + b x`
    HermitianQuartic { alpha: f64, b: Complex64 },
}

impl Family {
    pub fn of(spec: &PotentialSpec) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        if spec.quartic < 0.0 && spec.linear == zero && spec.invsq.im == 0.0 {
            Ok(Family::PtQuartic {
                g: -spec.quartic,
                a: spec.invsq.re,
            })
        } else if spec.quartic > 0.0 && spec.invsq == zero {
            Ok(Family::HermitianQuartic {
                alpha: spec.quartic,
                b: spec.linear,
            })
        } else {
            Err(Error::Domain("no closed forms for this potential".into()))
        }
    }
}

struct Gammas {
    quarter: f64,
    three_quarter: f64,
}

fn gammas() -> Gammas {
    Gammas {
        quarter: gamma_fn(0.25).expect("positive argument"),
        three_quarter: gamma_fn(0.75).expect("positive argument"),
    }
}

/// Printed closed form of `b_k` for `p² − g x⁴ + a/x²`.
pub fn closed_form_pt(g: f64, a: f64, hbar: f64, k: usize) -> Option<f64> {
    let Gammas { quarter: q, three_quarter: t } = gammas();
    let s2p = (2.0 * PI).sqrt();
    let h2 = hbar * hbar;
    let v = match k {
        0 => q / (3.0 * g.powf(0.25) * s2p * t),
        3 => -hbar / 2.0,
        6 => g.powf(0.25) * (4.0 * a - h2) * t / (4.0 * s2p * q),
        12 => g.powf(0.75) * (80.0 * a * a - 200.0 * a * h2 - 11.0 * h2 * h2) * q / (1536.0 * s2p * t),
        18 => {
            -77.0 * g.powf(1.25) * (192.0 * a.powi(3) - 1296.0 * a * a * h2 + 1860.0 * a * h2 * h2 + 61.0 * h2.powi(3)) * t
                / (30720.0 * s2p * q)
        }
        24 => {
            -1105.0
                * g.powf(1.75)
                * (256.0 * a.powi(4) - 3328.0 * a.powi(3) * h2 + 14432.0 * a * a * h2 * h2 - 17360.0 * a * h2.powi(3)
                    + 353.0 * h2.powi(4))
                * q
                / (3670016.0 * s2p * t)
        }
        _ => return None,
    };
    Some(v)
}

/// Printed closed form of `β_k` for `p² + α x⁴ + b x`.
pub fn closed_form_hermitian(alpha: f64, b: Complex64, hbar: f64, k: usize) -> Option<Complex64> {
    let Gammas { quarter: q, three_quarter: t } = gammas();
    let sp = PI.sqrt();
    let h2 = hbar * hbar;
    let b2 = b * b;
    let v = match k {
        0 => Complex64::from(q / (3.0 * sp * alpha.powf(0.25) * t)),
        3 => Complex64::from(-hbar / 2.0),
        6 => -(2.0 * h2 * alpha - b2) * t / (8.0 * sp * alpha.powf(0.75) * q),
        12 => (44.0 * h2 * h2 * alpha * alpha - 60.0 * h2 * alpha * b2 + 5.0 * b2 * b2) * q / (6144.0 * sp * alpha.powf(1.25) * t),
        18 => {
            77.0 * (488.0 * h2.powi(3) * alpha.powi(3) - 636.0 * h2 * h2 * alpha * alpha * b2 + 90.0 * h2 * alpha * b2 * b2
                - 3.0 * b2.powi(3))
                * t
                / (245760.0 * sp * alpha.powf(1.75) * q)
        }
        24 => {
            -1105.0
                * (5648.0 * h2.powi(4) * alpha.powi(4) - 6304.0 * h2.powi(3) * alpha.powi(3) * b2
                    + 1064.0 * h2 * h2 * alpha * alpha * b2 * b2
                    - 56.0 * h2 * alpha * b2.powi(3)
                    + b2.powi(4))
                * q
                / (58720256.0 * sp * alpha.powf(2.25) * t)
        }
        _ => return None,
    };
    Some(v)
}

fn closed_form(spec: &PotentialSpec, k: usize) -> Result<Option<Complex64>> {
    Ok(match Family::of(spec)? {
        Family::PtQuartic { g, a } => closed_form_pt(g, a, spec.hbar, k).map(Complex64::from),
        Family::HermitianQuartic { alpha, b } => closed_form_hermitian(alpha, b, spec.hbar, k),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoldenRow {
    pub k: usize,
    pub computed: Complex64,
    pub closed_form: Complex64,
    pub rel_dev: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoldenReport {
    pub family: Family,
    pub rows: Vec<GoldenRow>,
}

impl GoldenReport {
    pub fn max_rel_dev(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_dev).fold(0.0, f64::max)
    }

    pub fn row(&self, k: usize) -> Option<&GoldenRow> {
        self.rows.iter().find(|r| r.k == k)
    }
}

/// Relative deviation with a floor for coefficients that vanish at special
/// parameter values.
pub fn relative_deviation(computed: Complex64, reference: Complex64) -> f64 {
    (computed - reference).norm() / reference.norm().max(1e-12)
}

/// Compares computed coefficients with the printed closed forms.
pub fn golden_validate(spec: &PotentialSpec) -> Result<GoldenReport> {
    let family = Family::of(spec)?;
    let series = action_series(spec, 24, &BranchContour::default_for(spec.sigma()))?;
    let mut rows = Vec::new();
    for k in GOLDEN_ORDERS {
        let reference = closed_form(spec, k)?.expect("golden order");
        let computed = series.b(k);
        rows.push(GoldenRow {
            k,
            computed,
            closed_form: reference,
            rel_dev: relative_deviation(computed, reference),
        });
    }
    Ok(GoldenReport { family, rows })
}
