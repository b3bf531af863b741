use num_complex::Complex64;
use serde::Serialize;

use super::ode::{dormand_prince, RkOptions, RkStats};
use super::path::ContourPath;
use crate::aee::PotentialSpec;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    FromEntry,
    FromExit,
}

/// `(ψ, ψ′)` at the match point. The true solution is
/// `exp(log_scale)·(psi, dpsi)`; only ratios are meaningful.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundarySolution {
    pub psi: Complex64,
    pub dpsi: Complex64,
    pub log_scale: f64,
    pub stats: RkStats,
}

impl BoundarySolution {
    pub fn log_derivative(&self) -> Complex64 {
        self.dpsi / self.psi
    }
}

const RENORMALIZE_ABOVE: f64 = 1e10;

/// Ratio `|Re κu| / |κ|` below which the asymptotic branch is undecidable.
const BRANCH_AMBIGUITY: f64 = 1e-8;

/// Integrates `ψ″ = (V − E)ψ/ℏ²` along one leg of the path, starting from
/// the solution that decays towards the ray end.
pub fn integrate_schrodinger(
    spec: &PotentialSpec,
    energy: Complex64,
    path: &ContourPath,
    direction: Direction,
    opts: &RkOptions,
) -> Result<BoundarySolution> {
    let legs = path.legs();
    let pts = match direction {
        Direction::FromEntry => legs.from_entry,
        Direction::FromExit => legs.from_exit,
    };
    integrate_along(spec, energy, &pts, opts)
}

/// Integrates along an explicit polyline whose first point is the
/// asymptotic end.
pub fn integrate_along(
    spec: &PotentialSpec,
    energy: Complex64,
    pts: &[Complex64],
    opts: &RkOptions,
) -> Result<BoundarySolution> {
    if pts.len() < 2 {
        return Err(Error::Path("a leg needs at least two points".into()));
    }
    let hbar2 = spec.hbar * spec.hbar;
    let x0 = pts[0];
    let u = (pts[1] - x0) / (pts[1] - x0).norm();
    let mut kappa = ((spec.potential(x0) - energy) / hbar2).sqrt();
    let re = (kappa * u).re;
    if re.abs() <= BRANCH_AMBIGUITY * kappa.norm() {
        return Err(Error::TurningPointOnPath(format!("{x0}")));
    }
    if re < 0.0 {
        kappa = -kappa;
    }

    let mut y = [Complex64::new(1.0, 0.0), kappa];
    let mut log_scale = 0.0;
    let mut stats = RkStats::default();
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let d = b - a;
        let len = d.norm();
        if len == 0.0 {
            continue;
        }
        let local_k = |t: f64| -> f64 {
            let x = a + d * t;
            ((spec.potential(x) - energy) / hbar2).norm().sqrt().max(1.0)
        };
        let rhs = |t: f64, y: &[Complex64; 2]| -> [Complex64; 2] {
            let x = a + d * t;
            let q = (spec.potential(x) - energy) / hbar2;
            [y[1] * d, q * y[0] * d]
        };
        // error measured in the norm |ψ| + |ψ′|/κ so nodes of ψ do not stall the step
        let scale = |t: f64, y: &[Complex64; 2], z: &[Complex64; 2]| -> [f64; 2] {
            let k = local_k(t);
            let m = (y[0].norm() + y[1].norm() / k).max(z[0].norm() + z[1].norm() / k);
            [m, m * k]
        };
        let mut growth = 0.0;
        let rescale = |y: &[Complex64; 2]| -> f64 {
            let n = y[0].norm().max(y[1].norm());
            if n > RENORMALIZE_ABOVE {
                growth += n.ln();
                1.0 / n
            } else {
                1.0
            }
        };
        let h0 = (0.05 / (local_k(0.0) * len)).min(0.1);
        let (out, st) = dormand_prince(rhs, scale, rescale, 0.0, 1.0, y, h0, opts)?;
        y = out;
        log_scale += growth;
        stats += st;
        if !(y[0].re.is_finite() && y[0].im.is_finite() && y[1].re.is_finite() && y[1].im.is_finite()) {
            return Err(Error::Path(format!("solution overflowed on segment {a} -> {b}")));
        }
    }
    Ok(BoundarySolution {
        psi: y[0],
        dpsi: y[1],
        log_scale,
        stats,
    })
}

/// Two-sided shooting data at the match point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matching {
    /// `(ψ_L ψ′_R − ψ_R ψ′_L)` over the sum of the moduli of every product
    /// in it and in the ratio denominator, so it stays bounded by one and
    /// well defined where `ψ′` vanishes at the match point.
    pub w: Complex64,
    /// `(ψ_L ψ′_R − ψ_R ψ′_L)/(k ψ_L ψ_R + ψ′_L ψ′_R/k)`, analytic in `E`.
    pub ratio: Complex64,
    pub left: BoundarySolution,
    pub right: BoundarySolution,
}

/// Scale `k` of the ratio denominator. Its phase `π/4` keeps the pole off
/// eigenvalues whose log-derivative at the match point is real or purely
/// imaginary, which covers PT-symmetric and real eigenfunctions; with
/// `k → 0` or `∞` the pole would sit on any level with a stationary or
/// vanishing eigenfunction there.
fn ratio_scale(spec: &PotentialSpec, path: &ContourPath) -> Complex64 {
    let v = spec.potential(path.match_point).norm().max(1.0);
    Complex64::from_polar(v.sqrt() / spec.hbar, std::f64::consts::FRAC_PI_4)
}

pub fn matching(spec: &PotentialSpec, energy: Complex64, path: &ContourPath, opts: &RkOptions) -> Result<Matching> {
    let left = integrate_schrodinger(spec, energy, path, Direction::FromEntry, opts)?;
    let right = integrate_schrodinger(spec, energy, path, Direction::FromExit, opts)?;
    // ψ′ on the exit leg is the derivative with respect to x, as on the entry
    // leg, since both legs are parameterized by x itself
    let p = left.psi * right.dpsi;
    let q = right.psi * left.dpsi;
    let k = ratio_scale(spec, path);
    let s = k * left.psi * right.psi;
    let t = left.dpsi * right.dpsi / k;
    Ok(Matching {
        w: (p - q) / (p.norm() + q.norm() + s.norm() + t.norm()),
        ratio: (p - q) / (s + t),
        left,
        right,
    })
}

/// Normalized Wronskian mismatch; zero at eigenvalues.
pub fn matching_function(spec: &PotentialSpec, energy: Complex64, path: &ContourPath, opts: &RkOptions) -> Result<Complex64> {
    matching(spec, energy, path, opts).map(|m| m.w)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenResult {
    pub n: Option<usize>,
    pub energy: Complex64,
    pub residual: f64,
    pub contour: ContourPath,
    pub iterations: usize,
    pub rk_steps: usize,
}

pub const SECANT_MAX: usize = 60;
pub const SECANT_TOL: f64 = 1e-10;

/// Complex secant iteration for a root of `f` from the two starting points.
/// Returns the root and the iteration count.
pub fn secant<F>(mut f: F, mut e0: Complex64, mut e1: Complex64, tol: f64, max_iter: usize) -> Result<(Complex64, usize)>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut f0 = f(e0)?;
    let mut f1 = f(e1)?;
    for it in 1..=max_iter {
        let denom = f1 - f0;
        if denom.norm() == 0.0 {
            break;
        }
        let e2 = e1 - f1 * (e1 - e0) / denom;
        if !(e2.re.is_finite() && e2.im.is_finite()) {
            break;
        }
        let done = (e2 - e1).norm() < tol * e2.norm().max(1.0);
        e0 = e1;
        f0 = f1;
        e1 = e2;
        if done {
            return Ok((e1, it));
        }
        f1 = f(e1)?;
    }
    Err(Error::NonConvergence {
        solver: "complex secant",
        iterations: max_iter,
        last: format!("{e1}"),
    })
}

fn result_at(spec: &PotentialSpec, path: &ContourPath, energy: Complex64, iterations: usize, steps: usize, opts: &RkOptions) -> Result<EigenResult> {
    let m = matching(spec, energy, path, opts)?;
    Ok(EigenResult {
        n: None,
        energy,
        residual: m.w.norm(),
        contour: path.clone(),
        iterations,
        rk_steps: steps + m.left.stats.accepted + m.right.stats.accepted,
    })
}

fn initial_offset(seed: Complex64) -> Complex64 {
    Complex64::new(1e-3 * seed.norm().max(1.0), 0.0)
}

/// Complex secant iteration on the analytic matching ratio; converged when
/// `|ΔE| < 1e−10·max(1, |E|)`.
pub fn find_eigenvalue(spec: &PotentialSpec, path: &ContourPath, seed: Complex64, opts: &RkOptions) -> Result<EigenResult> {
    path.validate(spec)?;
    let mut steps = 0usize;
    let f = |e: Complex64| -> Result<Complex64> {
        let m = matching(spec, e, path, opts)?;
        steps += m.left.stats.accepted + m.right.stats.accepted;
        Ok(m.ratio)
    };
    let (e, it) = secant(f, seed, seed + initial_offset(seed), SECANT_TOL, SECANT_MAX)?;
    result_at(spec, path, e, it, steps, opts)
}

/// Like [`find_eigenvalue`], but with the roots in `known` divided out of
/// the matching ratio so the iteration cannot return to them.
pub fn find_eigenvalue_deflated(
    spec: &PotentialSpec,
    path: &ContourPath,
    seed: Complex64,
    known: &[Complex64],
    opts: &RkOptions,
) -> Result<EigenResult> {
    path.validate(spec)?;
    let mut steps = 0usize;
    let f = |e: Complex64| -> Result<Complex64> {
        let m = matching(spec, e, path, opts)?;
        steps += m.left.stats.accepted + m.right.stats.accepted;
        Ok(known.iter().fold(m.ratio, |acc, r| acc / (e - r)))
    };
    let (e, it) = secant(f, seed, seed + initial_offset(seed), SECANT_TOL, SECANT_MAX)?;
    result_at(spec, path, e, it, steps, opts)
}
