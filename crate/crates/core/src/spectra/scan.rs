use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::ode::RkOptions;
use super::path::ContourPath;
use super::shoot::{find_eigenvalue, matching, EigenResult};
use crate::aee::{action_series, solve_quantization, BranchContour, PotentialSpec, PRINTED_ORDER};
use crate::seriesalg::Sigma;
use crate::Result;

pub const SWEEP_POINTS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    pub rk: RkOptions,
    pub sweep_points: usize,
    /// Truncation order of the action series used for seeds.
    pub seed_order: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            rk: RkOptions::default(),
            sweep_points: SWEEP_POINTS,
            seed_order: PRINTED_ORDER,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub levels: Vec<EigenResult>,
    pub warnings: Vec<String>,
}

impl ScanResult {
    pub fn energies(&self) -> Vec<Complex64> {
        self.levels.iter().map(|r| r.energy).collect()
    }

    pub fn is_complete(&self, n_max: usize) -> bool {
        self.levels.len() > n_max
    }
}

fn energy_unit(spec: &PotentialSpec) -> f64 {
    let g = match spec.sigma() {
        Sigma::Minus => -spec.quartic,
        Sigma::Plus => spec.quartic / 4.0,
    };
    spec.hbar.powf(4.0 / 3.0) * g.powf(1.0 / 3.0)
}

fn same_root(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-6 * a.norm().max(1.0)
}

/// Lowest `n_max + 1` eigenvalues sorted by real part.
///
/// Seeds are the asymptotic values `E_J(n)` for `n ≥ 2` plus the roots
/// bracketed by a real-energy sweep of the matching function below
/// `E_J(2)`, which catches low and negative levels the expansion misses.
pub fn scan_spectrum(
    spec: &PotentialSpec,
    path: Option<&ContourPath>,
    n_max: usize,
    seeds: Option<&[Complex64]>,
    opts: &ScanOptions,
) -> Result<ScanResult> {
    let mut warnings = Vec::new();
    let path_for = |e: f64| match path {
        Some(p) => p.clone(),
        None => ContourPath::contour_for_energy(spec, e),
    };
    let low_path = match path {
        Some(p) => p.clone(),
        None => ContourPath::default_contour(spec),
    };
    low_path.validate(spec)?;

    let mut candidates: Vec<Complex64> = Vec::new();
    let mut sweep_top = 10.0 * energy_unit(spec);
    match seeds {
        Some(s) => candidates.extend_from_slice(s),
        None => match action_series(spec, opts.seed_order, &BranchContour::default_for(spec.sigma())) {
            Ok(series) => {
                for n in 2..=n_max + 1 {
                    match solve_quantization(&series, n) {
                        Ok(e) => {
                            if n == 2 {
                                sweep_top = e;
                            }
                            candidates.push(Complex64::new(e, 0.0));
                        }
                        Err(err) => warnings.push(format!("no asymptotic seed for n = {n}: {err}")),
                    }
                }
            }
            Err(err) => warnings.push(format!("asymptotic seeds unavailable: {err}")),
        },
    }

    let mut found: Vec<EigenResult> = Vec::new();
    if seeds.is_none() && opts.sweep_points >= 2 {
        let lo = -10.0 * energy_unit(spec);
        found.extend(sweep(spec, &low_path, lo, sweep_top, opts));
    }

    let seeded: Vec<Result<EigenResult>> = candidates
        .par_iter()
        .map(|&e| find_eigenvalue(spec, &path_for(e.re), e, &opts.rk))
        .collect();
    for (seed, r) in candidates.iter().zip(seeded) {
        match r {
            Ok(r) => found.push(r),
            Err(err) => warnings.push(format!("seed {seed} failed: {err}")),
        }
    }

    found.sort_by(|a, b| a.energy.re.total_cmp(&b.energy.re));
    let mut levels: Vec<EigenResult> = Vec::new();
    for r in found {
        if let Some(prev) = levels.iter().find(|p| same_root(p.energy, r.energy)) {
            if seeds.is_some() || (prev.energy - r.energy).norm() > 1e-8 * r.energy.norm().max(1.0) {
                warnings.push(format!("root collision near {}", r.energy));
            }
            continue;
        }
        levels.push(r);
    }
    levels.truncate(n_max + 1);
    for (n, r) in levels.iter_mut().enumerate() {
        r.n = Some(n);
    }
    if levels.len() < n_max + 1 {
        warnings.push(format!(
            "incomplete scan: {} of {} levels found",
            levels.len(),
            n_max + 1
        ));
    }
    Ok(ScanResult { levels, warnings })
}

/// Real roots found from sign changes of the phase-adjusted normalized
/// Wronskian, which unlike the analytic ratio has no poles.
fn sweep(spec: &PotentialSpec, path: &ContourPath, lo: f64, hi: f64, opts: &ScanOptions) -> Vec<EigenResult> {
    let n = opts.sweep_points;
    let grid: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let values: Vec<Option<Complex64>> = grid
        .par_iter()
        .map(|&e| matching(spec, Complex64::new(e, 0.0), path, &opts.rk).ok().map(|m| m.w))
        .collect();
    // on a PT-symmetric or real path it has a fixed phase for real E
    let axis: Complex64 = values.iter().flatten().map(|v| v * v).sum();
    let rot = Complex64::from_polar(1.0, -0.5 * axis.arg());
    let proj: Vec<Option<f64>> = values.iter().map(|v| v.map(|v| (v * rot).re)).collect();
    let spacing = (hi - lo) / (n - 1) as f64;

    let brackets: Vec<(f64, f64, f64, f64)> = (0..n - 1)
        .filter_map(|i| match (proj[i], proj[i + 1]) {
            (Some(a), Some(b)) if a * b <= 0.0 && !(a == 0.0 && b == 0.0) => Some((grid[i], grid[i + 1], a, b)),
            _ => None,
        })
        .collect();
    brackets
        .par_iter()
        .filter_map(|&(e0, e1, f0, f1)| {
            let t = if f0 != f1 { f0 / (f0 - f1) } else { 0.5 };
            let seed = Complex64::new(e0 + t * (e1 - e0), 0.0);
            let r = find_eigenvalue(spec, path, seed, &opts.rk).ok()?;
            // sign changes through a pole converge elsewhere or not at all
            let inside = r.energy.re > e0 - spacing && r.energy.re < e1 + spacing;
            (inside && r.residual < 1e-6).then_some(r)
        })
        .collect()
}
