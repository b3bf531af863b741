use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::seriesalg::Sigma;
use crate::{Error, Result};

/// `V(x) = A x⁴ + B x + C/x²` together with `ℏ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub quartic: f64,
    pub linear: Complex64,
    pub invsq: Complex64,
    pub hbar: f64,
}

impl PotentialSpec {
    pub fn new(quartic: f64, linear: Complex64, invsq: Complex64, hbar: f64) -> Result<Self> {
        if quartic == 0.0 || !quartic.is_finite() {
            return Err(Error::Domain(format!("quartic coupling must be nonzero, got {quartic}")));
        }
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
        }
        if !(linear.re.is_finite() && linear.im.is_finite() && invsq.re.is_finite() && invsq.im.is_finite()) {
            return Err(Error::Domain("couplings must be finite".into()));
        }
        Ok(PotentialSpec {
            quartic,
            linear,
            invsq,
            hbar,
        })
    }

    /// `p² − g x⁴ + a/x²`.
    pub fn pt_quartic(g: f64, a: f64, hbar: f64) -> Result<Self> {
        if !(g > 0.0) {
            return Err(Error::Domain(format!("g must be positive, got {g}")));
        }
        Self::new(-g, Complex64::new(0.0, 0.0), Complex64::new(a, 0.0), hbar)
    }

    /// `p² + α x⁴ + b x`.
    pub fn hermitian_quartic(alpha: f64, b: Complex64, hbar: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        Self::new(alpha, b, Complex64::new(0.0, 0.0), hbar)
    }

    pub fn sigma(&self) -> Sigma {
        Sigma::from_sign(self.quartic)
    }

    /// `|A|^{1/4}`.
    pub fn lambda(&self) -> f64 {
        self.quartic.abs().powf(0.25)
    }

    pub fn has_invsq(&self) -> bool {
        self.invsq != Complex64::new(0.0, 0.0)
    }

    pub fn potential(&self, x: Complex64) -> Complex64 {
        let mut v = self.quartic * x.powi(4) + self.linear * x;
        if self.has_invsq() {
            v += self.invsq / (x * x);
        }
        v
    }
}
