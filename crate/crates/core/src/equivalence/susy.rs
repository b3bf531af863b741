use std::f64::consts::PI;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use serde::Serialize;

use crate::aee::PotentialSpec;
use crate::spectra::{find_eigenvalue, integrate_along, matching, secant, ContourPath, RkOptions};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Value with first and second derivative, propagated exactly by the
/// arithmetic below.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub v: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl Jet2 {
    pub fn variable(x: Complex64) -> Self {
        Jet2 {
            v: x,
            d1: Complex64::new(1.0, 0.0),
            d2: Complex64::new(0.0, 0.0),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Jet2 {
            v: c,
            d1: Complex64::new(0.0, 0.0),
            d2: Complex64::new(0.0, 0.0),
        }
    }

    pub fn scale(self, c: Complex64) -> Self {
        Jet2 {
            v: self.v * c,
            d1: self.d1 * c,
            d2: self.d2 * c,
        }
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        Jet2 {
            v: e,
            d1: e * self.d1,
            d2: e * (self.d2 + self.d1 * self.d1),
        }
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        Jet2 {
            v: r,
            d1: -self.d1 * r * r,
            d2: (2.0 * self.d1 * self.d1 * r - self.d2) * r * r,
        }
    }

    /// `W = −Φ′/Φ` and `W′` for this jet taken as `Φ`.
    pub fn superpotential(self) -> (Complex64, Complex64) {
        let l = self.d1 / self.v;
        (-l, -(self.d2 / self.v - l * l))
    }
}

impl Add for Jet2 {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Jet2 {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

impl Mul for Jet2 {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Jet2 {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

/// `Φ₁ = ix·exp(ix³/3)`, zero mode of `p² − x⁴ + 4ix`.
pub fn phi_one(x: Complex64) -> Jet2 {
    let t = Jet2::variable(x);
    let cube = t * t * t;
    t.scale(I) * cube.scale(I / 3.0).exp()
}

/// `Φ₂ = (ix)⁻¹·exp(−ix³/3)`, zero mode of `p² − x⁴ + 2/x²`.
pub fn phi_two(x: Complex64) -> Jet2 {
    let t = Jet2::variable(x);
    let cube = t * t * t;
    t.scale(I).recip() * cube.scale(-I / 3.0).exp()
}

pub fn susy_spec_one() -> Result<PotentialSpec> {
    PotentialSpec::new(-1.0, Complex64::new(0.0, 4.0), Complex64::new(0.0, 0.0), 1.0)
}

pub fn susy_spec_two() -> Result<PotentialSpec> {
    PotentialSpec::new(-1.0, Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0), 1.0)
}

/// Closed-form `W` of the first partner, `−(1 + ix³)/x`.
pub fn w_closed_form(x: Complex64) -> Complex64 {
    -(1.0 + I * x * x * x) / x
}

/// Points spread along both legs of a path, excluding the far ends.
pub fn sample_points(path: &ContourPath, n: usize) -> Vec<Complex64> {
    let v = path.vertices();
    let lengths: Vec<f64> = v.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let total: f64 = lengths.iter().sum();
    (0..n)
        .map(|i| {
            // stay away from the ray ends where Φ underflows
            let mut s = total * (0.15 + 0.7 * (i as f64 + 0.5) / n as f64);
            for (k, len) in lengths.iter().enumerate() {
                if s <= *len {
                    return v[k] + (v[k + 1] - v[k]) * (s / len);
                }
                s -= len;
            }
            v[v.len() - 1]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SusyReport {
    pub samples: usize,
    /// Largest `|−Φ″ + VΦ| / (|Φ″| + |VΦ|)` over both partners.
    pub zero_mode_residual: f64,
    /// Largest relative error of `W` against its closed form.
    pub superpotential_dev: f64,
    /// Largest relative error of `W² ∓ W′` against the two potentials.
    pub partner_potential_dev: f64,
    /// `W(2i)`, expected `4.5i`.
    pub w_at_2i: Complex64,
    /// Shot ground-state energies of the two partners; both should vanish.
    pub ground_energies: [Complex64; 2],
    /// Order of the zero of the matching ratio at each ground state. The
    /// first partner's zero mode has vanishing `∫Φ₁² dx` along its contour,
    /// so its level is a two-by-two Jordan block.
    pub ground_multiplicities: [u32; 2],
    /// Largest relative mismatch of integrated log-derivatives against `Φ′/Φ`.
    pub integrated_log_derivative_dev: f64,
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (a.norm() + b.norm()).max(f64::MIN_POSITIVE)
}

/// Verifies that `W = −Φ′/Φ` factorizes both partner Hamiltonians, and that
/// shooting reproduces the zero modes.
pub fn susy_check(samples: usize, opts: &RkOptions) -> Result<SusyReport> {
    let spec1 = susy_spec_one()?;
    let spec2 = susy_spec_two()?;
    let lower = ContourPath::default_contour(&spec2);
    let upper = lower.mirrored();

    let mut zero_res: f64 = 0.0;
    let mut w_dev: f64 = 0.0;
    let mut v_dev: f64 = 0.0;
    for (sign, phi, spec, path) in [(1.0, phi_one as fn(Complex64) -> Jet2, &spec1, &upper), (-1.0, phi_two, &spec2, &lower)] {
        for x in sample_points(path, samples) {
            let j = phi(x);
            let v = spec.potential(x);
            zero_res = zero_res.max(rel(j.d2, v * j.v));
            let (w, dw) = j.superpotential();
            // the second partner's superpotential is minus the first one
            let (w1, dw1) = (sign * w, sign * dw);
            w_dev = w_dev.max(rel(w1, w_closed_form(x)));
            v_dev = v_dev.max(rel(w1 * w1 - dw1, spec1.potential(x)));
            v_dev = v_dev.max(rel(w1 * w1 + dw1, spec2.potential(x)));
        }
    }
    let w_at_2i = phi_one(Complex64::new(0.0, 2.0)).superpotential().0;

    let seed = Complex64::new(0.3, 0.0);
    let (e1, m1) = ground_level(&spec1, &upper, seed, opts)?;
    let (e2, m2) = ground_level(&spec2, &lower, seed, opts)?;

    let mut ld_dev: f64 = 0.0;
    for (phi, spec, path) in [(phi_one as fn(Complex64) -> Jet2, &spec1, &upper), (phi_two, &spec2, &lower)] {
        let legs = path.legs();
        for leg in [legs.from_entry, legs.from_exit] {
            for stop in 1..leg.len() {
                // end at the middle and at the end of each segment
                for t in [0.5, 1.0] {
                    let mut pts = leg[..stop].to_vec();
                    pts.push(leg[stop - 1] + (leg[stop] - leg[stop - 1]) * t);
                    let sol = integrate_along(spec, Complex64::new(0.0, 0.0), &pts, opts)?;
                    let j = phi(pts[pts.len() - 1]);
                    let exact = j.d1 / j.v;
                    // Φ₂′ vanishes at −i, so the scale is floored rather than relative
                    ld_dev = ld_dev.max((sol.log_derivative() - exact).norm() / exact.norm().max(1.0));
                }
            }
        }
    }

    Ok(SusyReport {
        samples,
        zero_mode_residual: zero_res,
        superpotential_dev: w_dev,
        partner_potential_dev: v_dev,
        w_at_2i,
        ground_energies: [e1, e2],
        ground_multiplicities: [m1, m2],
        integrated_log_derivative_dev: ld_dev,
    })
}

fn central_difference<F>(f: &mut F, e: Complex64, d: f64) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    Ok((f(e + d)? - f(e - d)?) / (2.0 * d))
}

/// Eigenvalue near `seed` together with the order of the zero of the
/// matching ratio there. A double zero limits plain secant iteration to
/// about `√ε`, so those are refined on the derivative instead.
pub fn ground_level(spec: &PotentialSpec, path: &ContourPath, seed: Complex64, opts: &RkOptions) -> Result<(Complex64, u32)> {
    path.validate(spec)?;
    let ratio = |e: Complex64| matching(spec, e, path, opts).map(|m| m.ratio);
    // F/F′ has a simple zero whatever the order of the zero of F
    let newton_step = |e: Complex64| -> Result<Complex64> {
        let mut f = |e: Complex64| matching(spec, e, path, opts).map(|m| m.ratio);
        let d = central_difference(&mut f, e, 1e-4)?;
        Ok(f(e)? / d)
    };
    let (coarse, _) = secant(newton_step, seed, seed + 1e-3, 1e-6, 60)?;
    let d = 1e-2 * coarse.norm().max(1.0);
    let order = ((ratio(coarse + 2.0 * d)?.norm() / ratio(coarse + d)?.norm()).log2()).round();
    match order as i64 {
        1 => Ok((find_eigenvalue(spec, path, coarse, opts)?.energy, 1)),
        2 => {
            let slope = |e: Complex64| {
                let mut f = |e: Complex64| matching(spec, e, path, opts).map(|m| m.ratio);
                central_difference(&mut f, e, 1e-5)
            };
            let (e, _) = secant(slope, coarse, coarse + 1e-4, 1e-10, 60)?;
            Ok((e, 2))
        }
        other => Err(Error::Unsupported(format!("zero of order {other} near {coarse}"))),
    }
}

/// Angles at which `Φ₁` and `Φ₂` decay, for reference: `Φ₁` on
/// `π/6 + 2πk/3`-type upper sectors and `Φ₂` on their mirror images.
pub fn decay_angles() -> ([f64; 2], [f64; 2]) {
    ([PI / 6.0, 5.0 * PI / 6.0], [-PI / 6.0, -5.0 * PI / 6.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_matches_hand_derivatives() {
        let x = Complex64::new(0.7, -0.4);
        let j = (Jet2::variable(x) * Jet2::variable(x)).recip();
        // d/dx x⁻² = −2x⁻³, d²/dx² = 6x⁻⁴
        assert!((j.d1 + 2.0 / (x * x * x)).norm() < 1e-13);
        assert!((j.d2 - 6.0 / (x * x * x * x)).norm() < 1e-12);
        let e = Jet2::variable(x).scale(I).exp();
        assert!((e.d2 + (I * x).exp()).norm() < 1e-13);
    }

    #[test]
    fn superpotential_at_two_i() {
        let (w, _) = phi_one(Complex64::new(0.0, 2.0)).superpotential();
        assert!((w - Complex64::new(0.0, 4.5)).norm() < 1e-14);
        assert!((w_closed_form(Complex64::new(0.0, 2.0)) - w).norm() < 1e-14);
    }

    #[test]
    fn zero_modes_decay_on_their_contours() {
        for th in decay_angles().0 {
            let x = Complex64::from_polar(5.0, th);
            assert!(phi_one(x).v.norm() < 1e-10);
        }
        for th in decay_angles().1 {
            let x = Complex64::from_polar(5.0, th);
            assert!(phi_two(x).v.norm() < 1e-10);
        }
    }
}
