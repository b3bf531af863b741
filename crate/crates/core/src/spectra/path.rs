use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::aee::PotentialSpec;
use crate::seriesalg::Sigma;
use crate::{Error, Result};

/// Closest approach to the origin allowed when the potential has `C/x²`.
pub const ORIGIN_CLEARANCE: f64 = 0.05;
/// Ray radius in units of `(ℏ²/|A|)^{1/6}`.
pub const RAY_RADIUS: f64 = 7.0;
/// Half-length of the real segment for a positive quartic, in units of
/// `(ℏ²/g)^{1/6}` with `A = 4g`.
pub const LINE_HALF_LENGTH: f64 = 6.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub angle: f64,
    pub radius: f64,
}

impl Ray {
    pub fn endpoint(&self) -> Complex64 {
        Complex64::from_polar(self.radius, self.angle)
    }
}

/// Piecewise-linear path from the entry ray end through `waypoints` to the
/// exit ray end.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourPath {
    pub entry_ray: Ray,
    pub exit_ray: Ray,
    pub waypoints: Vec<Complex64>,
    pub match_point: Complex64,
}

fn length_unit(spec: &PotentialSpec, g: f64) -> f64 {
    (spec.hbar * spec.hbar / g).powf(1.0 / 6.0)
}

fn effective_g(spec: &PotentialSpec) -> f64 {
    match spec.sigma() {
        Sigma::Minus => -spec.quartic,
        Sigma::Plus => spec.quartic / 4.0,
    }
}

/// Depth of the chord below the origin used at low energies, in units of
/// `(ℏ²/g)^{1/6}`.
pub const CHORD_DEPTH: f64 = 1.0;

impl ContourPath {
    /// Lower PT-symmetric wedge pair for a negative quartic, the real line
    /// for a positive one.
    pub fn default_contour(spec: &PotentialSpec) -> Self {
        match spec.sigma() {
            Sigma::Minus => {
                let l0 = length_unit(spec, effective_g(spec));
                Self::wedge_pair(RAY_RADIUS * l0, CHORD_DEPTH * l0)
            }
            Sigma::Plus => {
                let l0 = length_unit(spec, effective_g(spec));
                Self::real_line(LINE_HALF_LENGTH * l0)
            }
        }
    }

    /// Default path adapted to an energy scale: the chord is moved deeper for
    /// highly excited states so the matching region stays in the classically
    /// allowed zone, and the rays are lengthened if needed.
    pub fn contour_for_energy(spec: &PotentialSpec, energy: f64) -> Self {
        let g = effective_g(spec);
        let l0 = length_unit(spec, g);
        let turning = (energy.abs() / g).powf(0.25) / l0;
        match spec.sigma() {
            Sigma::Minus => {
                let radius = RAY_RADIUS.max(2.0 * turning);
                let depth = CHORD_DEPTH.max(0.7 * turning).min(0.35 * radius);
                Self::wedge_pair(radius * l0, depth * l0)
            }
            Sigma::Plus => Self::real_line(LINE_HALF_LENGTH.max(3.0 * turning) * l0),
        }
    }

    /// Rays at `−5π/6` and `−π/6` joined by a horizontal chord at `Im x = −depth`.
    pub fn wedge_pair(radius: f64, depth: f64) -> Self {
        let left = -5.0 * PI / 6.0;
        let right = -PI / 6.0;
        // sin(π/6) = 1/2, so the chord meets the rays at radius 2·depth
        let r = 2.0 * depth;
        ContourPath {
            entry_ray: Ray { angle: left, radius },
            exit_ray: Ray { angle: right, radius },
            waypoints: vec![Complex64::from_polar(r, left), Complex64::from_polar(r, right)],
            match_point: Complex64::new(0.0, -depth),
        }
    }

    pub fn real_line(half_length: f64) -> Self {
        ContourPath {
            entry_ray: Ray { angle: PI, radius: half_length },
            exit_ray: Ray { angle: 0.0, radius: half_length },
            waypoints: vec![],
            match_point: Complex64::new(0.0, 0.0),
        }
    }

    /// Reflection `x → x̄`, turning the lower wedge pair into the upper one.
    pub fn mirrored(&self) -> Self {
        ContourPath {
            entry_ray: Ray {
                angle: -self.entry_ray.angle,
                radius: self.entry_ray.radius,
            },
            exit_ray: Ray {
                angle: -self.exit_ray.angle,
                radius: self.exit_ray.radius,
            },
            waypoints: self.waypoints.iter().map(|w| w.conj()).collect(),
            match_point: self.match_point.conj(),
        }
    }

    /// Same path with every waypoint displaced; the match point moves with
    /// the segment it lies on.
    pub fn perturbed(&self, shifts: &[Complex64]) -> Self {
        let mut out = self.clone();
        let legs = self.legs();
        for (w, s) in out.waypoints.iter_mut().zip(shifts) {
            *w += *s;
        }
        // keep the match point at the same relative position on its segment
        let vertices = self.vertices();
        let new_vertices = out.vertices();
        let seg = legs.match_segment;
        let (a, b) = (vertices[seg], vertices[seg + 1]);
        let t = if (b - a).norm() > 0.0 { ((self.match_point - a) / (b - a)).re } else { 0.0 };
        out.match_point = new_vertices[seg] + (new_vertices[seg + 1] - new_vertices[seg]) * t;
        out
    }

    pub fn vertices(&self) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(self.waypoints.len() + 2);
        v.push(self.entry_ray.endpoint());
        v.extend_from_slice(&self.waypoints);
        v.push(self.exit_ray.endpoint());
        v
    }

    /// The two directed legs ending at the match point.
    pub fn legs(&self) -> Legs {
        let v = self.vertices();
        let mut best = (f64::INFINITY, 0);
        for i in 0..v.len() - 1 {
            let d = distance_to_segment(self.match_point, v[i], v[i + 1]);
            if d < best.0 {
                best = (d, i);
            }
        }
        let seg = best.1;
        let mut from_entry: Vec<Complex64> = v[..=seg].to_vec();
        from_entry.push(self.match_point);
        let mut from_exit: Vec<Complex64> = v[seg + 1..].iter().rev().copied().collect();
        from_exit.push(self.match_point);
        dedup_points(&mut from_entry);
        dedup_points(&mut from_exit);
        Legs {
            from_entry,
            from_exit,
            match_segment: seg,
            match_distance: best.0,
        }
    }

    /// Checks the path against the potential's sector structure.
    pub fn validate(&self, spec: &PotentialSpec) -> Result<()> {
        let v = self.vertices();
        let scale = v.iter().map(|p| p.norm()).fold(1.0, f64::max);
        let legs = self.legs();
        if legs.match_distance > 1e-12 * scale {
            return Err(Error::InvalidContour("match point is not on the path".into()));
        }
        if spec.has_invsq() {
            let closest = v
                .windows(2)
                .map(|w| distance_to_segment(Complex64::new(0.0, 0.0), w[0], w[1]))
                .fold(f64::INFINITY, f64::min);
            if closest < ORIGIN_CLEARANCE {
                return Err(Error::InvalidContour(format!(
                    "path passes within {closest:.3} of the origin"
                )));
            }
        }
        let entry = decay_sector(spec, self.entry_ray.angle);
        let exit = decay_sector(spec, self.exit_ray.angle);
        match (entry, exit) {
            (Some(a), Some(b)) if a != b => Ok(()),
            (Some(_), Some(_)) => Err(Error::InvalidContour("both rays end in the same sector".into())),
            _ => Err(Error::InvalidContour("ray angle is not strictly inside a decay sector".into())),
        }
    }
}

/// Index of the decay sector containing the direction `theta`, if any.
///
/// Solutions behave like `exp(±√A x³/(3ℏ))`, so the six sectors have
/// opening `π/3` and are centred where `√A x³` is real.
pub fn decay_sector(spec: &PotentialSpec, theta: f64) -> Option<i32> {
    let offset = match spec.sigma() {
        Sigma::Plus => 0.0,
        Sigma::Minus => -PI / 6.0,
    };
    let width = PI / 3.0;
    let k = ((theta - offset) / width).round();
    let centre = offset + k * width;
    if (theta - centre).abs() < PI / 6.0 - 1e-9 {
        Some((k as i32).rem_euclid(6))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Legs {
    pub from_entry: Vec<Complex64>,
    pub from_exit: Vec<Complex64>,
    pub match_segment: usize,
    pub match_distance: f64,
}

fn dedup_points(p: &mut Vec<Complex64>) {
    p.dedup_by(|a, b| (*a - *b).norm() < 1e-14 * (1.0 + b.norm()));
}

fn distance_to_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}
