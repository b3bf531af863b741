use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::seriesalg::{AlgebraicSum, AlgebraicTerm, Sigma};
use crate::{Error, Result};

pub const DEFAULT_POINTS: usize = 4096;
pub const MIN_POINTS: usize = 256;

/// Closed ellipse in the `y`-plane around two roots of `D(y) = 1 − σy⁴`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchContour {
    pub center: Complex64,
    pub semi_axes: (f64, f64),
    pub rotation: f64,
    pub n_points: usize,
}

/// The two roots of `D` the contour must enclose, followed by the two it
/// must exclude.
fn roots(sigma: Sigma) -> ([Complex64; 2], [Complex64; 2]) {
    let e = |t: f64| Complex64::from_polar(1.0, t);
    match sigma {
        Sigma::Minus => ([e(PI / 4.0), e(3.0 * PI / 4.0)], [e(-PI / 4.0), e(-3.0 * PI / 4.0)]),
        Sigma::Plus => ([e(0.0), e(PI)], [e(PI / 2.0), e(-PI / 2.0)]),
    }
}

impl BranchContour {
    pub fn new(center: Complex64, semi_axes: (f64, f64), rotation: f64, n_points: usize) -> Self {
        BranchContour {
            center,
            semi_axes,
            rotation,
            n_points,
        }
    }

    pub fn default_for(sigma: Sigma) -> Self {
        match sigma {
            Sigma::Minus => Self::new(Complex64::new(0.0, FRAC_1_SQRT_2), (1.05, 0.35), 0.0, DEFAULT_POINTS),
            Sigma::Plus => Self::new(Complex64::new(0.0, 0.0), (1.3, 0.4), 0.0, DEFAULT_POINTS),
        }
    }

    pub fn with_points(mut self, n_points: usize) -> Self {
        self.n_points = n_points;
        self
    }

    fn inside(&self, p: Complex64) -> bool {
        let q = (p - self.center) * Complex64::from_polar(1.0, -self.rotation);
        let (a, b) = self.semi_axes;
        (q.re / a).powi(2) + (q.im / b).powi(2) < 1.0
    }

    /// Checks the enclosure rules for the given weight.
    pub fn validate(&self, sigma: Sigma) -> Result<()> {
        if self.n_points < MIN_POINTS {
            return Err(Error::InvalidContour(format!(
                "n_points = {} is below the minimum {MIN_POINTS}",
                self.n_points
            )));
        }
        let (a, b) = self.semi_axes;
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::InvalidContour("semi-axes must be positive".into()));
        }
        let (enclosed, excluded) = roots(sigma);
        if let Some(p) = enclosed.iter().find(|p| !self.inside(**p)) {
            return Err(Error::InvalidContour(format!("branch point {p} is not enclosed")));
        }
        if let Some(p) = excluded.iter().find(|p| self.inside(**p)) {
            return Err(Error::InvalidContour(format!("branch point {p} must lie outside")));
        }
        if sigma == Sigma::Minus && self.inside(Complex64::new(0.0, 0.0)) {
            return Err(Error::InvalidContour("the origin must lie outside".into()));
        }
        Ok(())
    }

    /// Samples the contour and continues `√D` along it.
    pub fn track(&self, sigma: Sigma) -> Result<TrackedContour> {
        self.validate(sigma)?;
        let n = self.n_points;
        let (a, b) = self.semi_axes;
        let rot = Complex64::from_polar(1.0, self.rotation);
        // start at the point of maximal real part
        let t0 = (-b * self.rotation.sin()).atan2(a * self.rotation.cos());
        let mut y = Vec::with_capacity(n);
        let mut dy = Vec::with_capacity(n);
        for j in 0..n {
            let t = t0 + 2.0 * PI * j as f64 / n as f64;
            y.push(self.center + rot * Complex64::new(a * t.cos(), b * t.sin()));
            dy.push(rot * Complex64::new(-a * t.sin(), b * t.cos()));
        }
        let mut root = Vec::with_capacity(n);
        let mut prev = sigma.weight_at(y[0]).sqrt();
        root.push(prev);
        for &p in &y[1..] {
            let s = continue_root(sigma.weight_at(p).sqrt(), prev, p)?;
            root.push(s);
            prev = s;
        }
        // one more step returns to the start; the branch must close
        let back = continue_root(sigma.weight_at(y[0]).sqrt(), prev, y[0])?;
        if (back - root[0]).norm() > (back + root[0]).norm() {
            return Err(Error::ContourTooClose(
                "square root changes sign around the contour".into(),
            ));
        }
        let mut tracked = TrackedContour { sigma, y, dy, root };
        // global sign: the k = 0 integral is positive
        if tracked.integrate_root_power(1, 0).re < 0.0 {
            tracked.root.iter_mut().for_each(|s| *s = -*s);
        }
        Ok(tracked)
    }
}

/// Picks the sign of `s` continuous with `prev`, refusing ambiguous steps.
fn continue_root(s: Complex64, prev: Complex64, at: Complex64) -> Result<Complex64> {
    let same = (s - prev).norm();
    let flip = (s + prev).norm();
    if same.min(flip) > 0.5 * same.max(flip) {
        return Err(Error::ContourTooClose(format!(
            "branch of the square root is ambiguous near y = {at}"
        )));
    }
    Ok(if same <= flip { s } else { -s })
}

/// Sample points of a branch contour with a continuous branch of `√D`.
#[derive(Clone, Debug)]
pub struct TrackedContour {
    pub sigma: Sigma,
    pub y: Vec<Complex64>,
    /// `dy/dt` at each sample.
    pub dy: Vec<Complex64>,
    pub root: Vec<Complex64>,
}

impl TrackedContour {
    /// `(1/2π)∮ f dy` by the periodic trapezoid rule.
    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        let n = self.y.len() as f64;
        self.y
            .iter()
            .zip(&self.dy)
            .zip(&self.root)
            .map(|((&y, &dy), &s)| f(y, s) * dy)
            .sum::<Complex64>()
            / n
    }

    /// `(1/2π)∮ y^j D^{m/2} dy` on the tracked branch.
    pub fn integrate_root_power(&self, m: i32, j: i32) -> Complex64 {
        self.integrate(|y, s| y.powi(j) * s.powi(m))
    }
}

/// `(1/2π)∮ term dy` over the contour.
pub fn contour_integral(term: &AlgebraicTerm, contour: &BranchContour) -> Result<Complex64> {
    let tracked = contour.track(term.sigma)?;
    Ok(tracked.integrate(|y, s| term.eval_with_root(y, s)))
}

pub fn contour_integral_sum(sum: &AlgebraicSum, contour: &BranchContour) -> Result<Complex64> {
    let tracked = contour.track(sum.sigma())?;
    Ok(tracked.integrate(|y, s| sum.eval_with_root(y, s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seriesalg::LaurentPoly;

    #[test]
    fn defaults_are_valid() {
        for s in [Sigma::Plus, Sigma::Minus] {
            BranchContour::default_for(s).validate(s).unwrap();
        }
    }

    #[test]
    fn rejects_bad_contours() {
        let small = BranchContour::default_for(Sigma::Minus).with_points(128);
        assert!(matches!(small.validate(Sigma::Minus), Err(Error::InvalidContour(_))));
        let big = BranchContour::new(Complex64::new(0.0, 0.0), (1.5, 1.5), 0.0, 512);
        assert!(big.validate(Sigma::Minus).is_err());
        // legal enclosure but crossing the branch cut structure at a root
        let grazing = BranchContour::new(Complex64::new(0.0, FRAC_1_SQRT_2), (FRAC_1_SQRT_2 + 1e-9, 0.35), 0.0, 512);
        assert!(grazing.track(Sigma::Minus).is_err());
    }

    #[test]
    fn entire_integrand_vanishes() {
        let term = AlgebraicTerm::new(LaurentPoly::monomial(2, Complex64::new(1.0, 0.0)), 0, Sigma::Minus);
        let v = contour_integral(&term, &BranchContour::default_for(Sigma::Minus)).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn trapezoid_converges() {
        let term = AlgebraicTerm::<Complex64>::sqrt_weight(Sigma::Minus);
        let c = BranchContour::default_for(Sigma::Minus);
        let a = contour_integral(&term, &c).unwrap();
        let b = contour_integral(&term, &c.with_points(2 * DEFAULT_POINTS)).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
        assert!(a.re > 0.0 && a.im.abs() < 1e-13);
    }
}
