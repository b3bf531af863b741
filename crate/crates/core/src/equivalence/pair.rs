use num_complex::Complex64;
use serde::Serialize;

use crate::aee::PotentialSpec;
use crate::{Error, Result};

/// Coalescence threshold `A` in units of `ℏ²` used for regime labels.
pub const COALESCENCE_A: f64 = -2.76;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `a ≥ −ℏ²/4`: real `b`, Hermitian partner.
    HermitianPartner,
    /// `A ≤ a < −ℏ²/4`: imaginary `b`, spectrum still real.
    PtPartner,
    /// `a < A`: complex-conjugate pairs.
    Broken,
}

/// `H = p² − g x⁴ + a/x²` and `h = p² + 4g x⁴ + b x` related by
/// `a = (b² − 4gℏ²)/(16g)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EquivalencePair {
    pub g: f64,
    pub a: f64,
    pub b: Complex64,
    pub hbar: f64,
    pub h_spec: PotentialSpec,
    pub big_h_spec: PotentialSpec,
    pub regime: Regime,
}

pub fn classify(a: f64, hbar: f64) -> Regime {
    let h2 = hbar * hbar;
    if a >= -h2 / 4.0 {
        Regime::HermitianPartner
    } else if a >= COALESCENCE_A * h2 {
        Regime::PtPartner
    } else {
        Regime::Broken
    }
}

/// Principal `b = √(16ga + 4gℏ²)`: positive real or positive imaginary.
pub fn partner_b(g: f64, a: f64, hbar: f64) -> Complex64 {
    let disc = 16.0 * g * a + 4.0 * g * hbar * hbar;
    if disc >= 0.0 {
        Complex64::new(disc.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-disc).sqrt())
    }
}

/// `a = (b² − 4gℏ²)/(16g)`; the imaginary part vanishes for admissible `b`.
pub fn inverse_map(g: f64, b: Complex64, hbar: f64) -> Complex64 {
    (b * b - 4.0 * g * hbar * hbar) / (16.0 * g)
}

pub fn hermitian_partner(g: f64, a: f64, hbar: f64) -> Result<EquivalencePair> {
    if !(g > 0.0) {
        return Err(Error::Domain(format!("g must be positive, got {g}")));
    }
    let b = partner_b(g, a, hbar);
    Ok(EquivalencePair {
        g,
        a,
        b,
        hbar,
        big_h_spec: PotentialSpec::pt_quartic(g, a, hbar)?,
        h_spec: PotentialSpec::hermitian_quartic(4.0 * g, b, hbar)?,
        regime: classify(a, hbar),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_captions() {
        let p = hermitian_partner(1.0, 6.0, 1.0).unwrap();
        assert_eq!(p.b, Complex64::new(10.0, 0.0));
        assert_eq!(p.regime, Regime::HermitianPartner);
        assert_eq!(p.h_spec.quartic, 4.0);
        let p = hermitian_partner(1.0, -0.5, 1.0).unwrap();
        assert_eq!(p.b, Complex64::new(0.0, 2.0));
        assert_eq!(p.regime, Regime::PtPartner);
        assert_eq!(hermitian_partner(1.0, 0.0, 1.0).unwrap().b, Complex64::new(2.0, 0.0));
        assert_eq!(classify(-3.0, 1.0), Regime::Broken);
    }

    #[test]
    fn regime_boundary_is_exact() {
        assert_eq!(partner_b(1.0, -0.25, 1.0), Complex64::new(0.0, 0.0));
        assert_eq!(classify(-0.25, 1.0), Regime::HermitianPartner);
        assert!(partner_b(1.0, -0.25 - 1e-12, 1.0).re == 0.0);
    }
}
