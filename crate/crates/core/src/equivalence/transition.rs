use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::pair::{hermitian_partner, partner_b};
use crate::aee::PotentialSpec;
use crate::spectra::{find_eigenvalue, find_eigenvalue_deflated, scan_spectrum, secant, ContourPath, ScanOptions};
use crate::{Error, Result};

/// Number of tracked levels.
pub const TRACKED: usize = 6;
/// Sweep interval in units of `ℏ²`, wide enough to show the merger and the
/// ground-state zero as interior points.
pub const DEFAULT_A_RANGE: (f64, f64) = (-4.0, 3.0);
pub const DEFAULT_STEPS: usize = 141;
const PAIRS: usize = TRACKED / 2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionOptions {
    pub scan: ScanOptions,
    /// Sweep points at which the `H` side is solved as a cross-check.
    pub h_side_samples: usize,
    /// Interval, in units of `ℏ²`, on which all tracked levels are expected real.
    pub real_window: (f64, f64),
}

impl Default for TransitionOptions {
    fn default() -> Self {
        TransitionOptions {
            scan: ScanOptions::default(),
            h_side_samples: 10,
            real_window: (-2.7, 2.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    /// Increasing.
    pub a_values: Vec<f64>,
    /// Six lowest levels per `a`, sorted by real part.
    pub eigenvalues: Vec<Vec<Complex64>>,
    /// Where the two lowest levels merge, refined between grid points.
    pub coalescence_a: Option<f64>,
    /// Grid spacing, the error bar on the bracket that located the merger.
    pub resolution: f64,
    /// Where the ground-state energy changes sign.
    pub zero_crossing_a: Option<f64>,
    pub real_window: (f64, f64),
    pub max_imag_in_window: f64,
    pub all_real_in_window: bool,
    /// Whether every tracked level is positive strictly between the merger
    /// and the ground-state zero.
    pub positive_between: bool,
    /// Largest `|E_0 − Ē_1|` relative to `|E_0|` past the merger.
    pub conjugate_pair_dev: Option<f64>,
    /// Largest deviation of `H`-side levels solved on the bent contour.
    pub h_side_max_dev: Option<f64>,
    pub flags: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
struct PairState {
    a: f64,
    c: Complex64,
    q: Complex64,
}

fn h_spec(g: f64, a: f64, hbar: f64) -> Result<PotentialSpec> {
    PotentialSpec::hermitian_quartic(4.0 * g, partner_b(g, a, hbar), hbar)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-6 * a.norm().max(1.0)
}

/// Both members of one pair near the predicted centre `c` and squared gap `q`.
fn solve_pair(spec: &PotentialSpec, c: Complex64, q: Complex64, opts: &ScanOptions) -> Result<(Complex64, Complex64)> {
    let half = 0.5 * q.sqrt();
    let path = ContourPath::contour_for_energy(spec, c.norm() + half.norm());
    let lo = find_eigenvalue(spec, &path, c - half, &opts.rk)?.energy;
    let hi = match find_eigenvalue(spec, &path, c + half, &opts.rk) {
        Ok(r) if !close(r.energy, lo) => r.energy,
        _ => find_eigenvalue_deflated(spec, &path, c + half, &[lo], &opts.rk)?.energy,
    };
    Ok(order_pair(lo, hi))
}

fn order_pair(x: Complex64, y: Complex64) -> (Complex64, Complex64) {
    if (x.re, x.im) <= (y.re, y.im) {
        (x, y)
    } else {
        (y, x)
    }
}

fn predict(hist: &[PairState], a: f64) -> (Complex64, Complex64) {
    match hist {
        [.., p, l] => {
            let t = (a - l.a) / (l.a - p.a);
            (l.c + (l.c - p.c) * t, l.q + (l.q - p.q) * t)
        }
        [l] => (l.c, l.q),
        [] => unreachable!("tracking starts from a solved point"),
    }
}

/// Accepts a step when the new centre stays well inside the spacing to the
/// neighbouring pairs.
fn plausible(pred_c: Complex64, c: Complex64, spacing: f64) -> bool {
    (c - pred_c).norm() < 0.25 * spacing
}

/// Advances one pair from its history to `a`, halving the step when the
/// prediction is not confirmed.
fn advance(g: f64, hbar: f64, hist: &[PairState], a: f64, spacing: f64, opts: &ScanOptions, depth: u32) -> Result<Vec<PairState>> {
    let spec = h_spec(g, a, hbar)?;
    let (c, q) = predict(hist, a);
    if let Ok((lo, hi)) = solve_pair(&spec, c, q, opts) {
        let cn = 0.5 * (lo + hi);
        if plausible(c, cn, spacing) {
            return Ok(vec![PairState {
                a,
                c: cn,
                q: (hi - lo) * (hi - lo),
            }]);
        }
    }
    if depth == 0 {
        return Err(Error::NonConvergence {
            solver: "level tracking",
            iterations: 0,
            last: format!("lost pair at a = {a}"),
        });
    }
    let last = hist[hist.len() - 1];
    let mid = 0.5 * (last.a + a);
    let mut first = advance(g, hbar, hist, mid, spacing, opts, depth - 1)?;
    let mut extended = hist.to_vec();
    extended.extend_from_slice(&first);
    let second = advance(g, hbar, &extended, a, spacing, opts, depth - 1)?;
    first.extend(second);
    Ok(first)
}

fn pair_levels(s: &PairState) -> (Complex64, Complex64) {
    let half = 0.5 * s.q.sqrt();
    order_pair(s.c - half, s.c + half)
}

/// Tracks the six lowest levels of `h` (equivalently `H`) while `a` is
/// lowered from `a_range.1` to `a_range.0` in `steps` points.
pub fn pt_transition_scan(g: f64, hbar: f64, a_range: (f64, f64), steps: usize, opts: &TransitionOptions) -> Result<SweepResult> {
    let (a_min, a_max) = a_range;
    if !(a_max > a_min) || steps < 3 {
        return Err(Error::Domain("need a_max > a_min and at least three steps".into()));
    }
    let start = hermitian_partner(g, a_max, hbar)?;
    if start.b.im != 0.0 {
        return Err(Error::Domain("the sweep must start where the partner is Hermitian".into()));
    }
    let scan = scan_spectrum(&start.h_spec, None, TRACKED - 1, None, &opts.scan)?;
    if scan.levels.len() < TRACKED {
        return Err(Error::NonConvergence {
            solver: "initial spectrum",
            iterations: 0,
            last: scan.warnings.join("; "),
        });
    }
    let e0: Vec<Complex64> = scan.energies();
    let mut flags = Vec::new();

    let da = (a_max - a_min) / (steps - 1) as f64;
    let grid: Vec<f64> = (0..steps).map(|i| a_max - da * i as f64).collect();

    // pairs are independent; each is followed down the whole grid
    let tracks: Vec<Result<Vec<PairState>>> = (0..PAIRS)
        .into_par_iter()
        .map(|p| {
            let (lo, hi) = (e0[2 * p], e0[2 * p + 1]);
            let spacing = if p + 1 < PAIRS {
                (e0[2 * p + 2] - hi).norm().min((hi - lo).norm().max(1.0))
            } else {
                (hi - lo).norm().max(1.0)
            };
            let mut hist = vec![PairState {
                a: a_max,
                c: 0.5 * (lo + hi),
                q: (hi - lo) * (hi - lo),
            }];
            let mut on_grid = vec![hist[0]];
            for &a in &grid[1..] {
                let window = &hist[hist.len().saturating_sub(2)..];
                let new = advance(g, hbar, window, a, spacing, &opts.scan, 5)?;
                hist.extend_from_slice(&new);
                on_grid.push(*new.last().expect("nonempty advance"));
            }
            Ok(on_grid)
        })
        .collect();
    let mut pairs: Vec<Vec<PairState>> = Vec::with_capacity(PAIRS);
    for t in tracks {
        pairs.push(t?);
    }

    // ascending order of a from here on
    let mut a_values: Vec<f64> = grid.clone();
    a_values.reverse();
    pairs.iter_mut().for_each(|p| p.reverse());
    let eigenvalues: Vec<Vec<Complex64>> = (0..steps)
        .map(|i| {
            let mut row: Vec<Complex64> = pairs
                .iter()
                .flat_map(|p| {
                    let (x, y) = pair_levels(&p[i]);
                    [x, y]
                })
                .collect();
            row.sort_by(|x, y| (x.re, x.im).partial_cmp(&(y.re, y.im)).expect("finite energies"));
            row
        })
        .collect();

    let coalescence_a = locate_coalescence(g, hbar, &pairs[0], &opts.scan, &mut flags);
    let zero_crossing_a = locate_zero(g, hbar, &pairs[0], &opts.scan, &mut flags);

    let h2 = hbar * hbar;
    let window = (opts.real_window.0 * h2, opts.real_window.1 * h2);
    let mut max_imag: f64 = 0.0;
    let mut all_real = true;
    for (a, row) in a_values.iter().zip(&eigenvalues) {
        if *a > window.0 && *a < window.1 {
            for e in row {
                max_imag = max_imag.max(e.im.abs());
                if e.im.abs() >= 1e-7 * e.re.abs().max(1.0) {
                    all_real = false;
                }
            }
        }
    }
    let positive_between = match (coalescence_a, zero_crossing_a) {
        (Some(lo), Some(hi)) => a_values
            .iter()
            .zip(&eigenvalues)
            .filter(|(a, _)| **a > lo && **a < hi)
            .all(|(_, row)| row.iter().all(|e| e.re > 0.0)),
        _ => false,
    };
    let conjugate_pair_dev = coalescence_a.and_then(|ac| {
        let devs: Vec<f64> = pairs[0]
            .iter()
            .filter(|s| s.a < ac && s.q.re < 0.0)
            .map(|s| {
                let (x, y) = pair_levels(s);
                (x - y.conj()).norm() / x.norm().max(1.0)
            })
            .collect();
        (!devs.is_empty()).then(|| devs.into_iter().fold(0.0, f64::max))
    });
    let h_side_max_dev = h_side_check(g, hbar, &a_values, &eigenvalues, opts, &mut flags);

    Ok(SweepResult {
        a_values,
        eigenvalues,
        coalescence_a,
        resolution: da,
        zero_crossing_a,
        real_window: window,
        max_imag_in_window: max_imag,
        all_real_in_window: all_real,
        positive_between,
        conjugate_pair_dev,
        h_side_max_dev,
        flags,
    })
}

/// Squared gap of the lowest pair at `a`, seeded by interpolation.
fn gap_squared_at(g: f64, hbar: f64, track: &[PairState], a: f64, opts: &ScanOptions) -> Result<Complex64> {
    let (c, q) = interpolate(track, a);
    let spec = h_spec(g, a, hbar)?;
    let (lo, hi) = solve_pair(&spec, c, q, opts)?;
    Ok((hi - lo) * (hi - lo))
}

fn interpolate(track: &[PairState], a: f64) -> (Complex64, Complex64) {
    let i = track
        .windows(2)
        .position(|w| w[0].a <= a && a <= w[1].a)
        .unwrap_or(0);
    let (p, l) = (track[i], track[i + 1]);
    let t = (a - p.a) / (l.a - p.a);
    (p.c + (l.c - p.c) * t, p.q + (l.q - p.q) * t)
}

fn locate_coalescence(g: f64, hbar: f64, track: &[PairState], opts: &ScanOptions, flags: &mut Vec<String>) -> Option<f64> {
    // highest a at which the squared gap turns negative, scanning downward
    let i = (1..track.len()).rev().find(|&i| track[i].q.re > 0.0 && track[i - 1].q.re <= 0.0)?;
    let (lo, hi) = (track[i - 1], track[i]);
    let guess = lo.a + (hi.a - lo.a) * (-lo.q.re) / (hi.q.re - lo.q.re);
    let f = |a: Complex64| gap_squared_at(g, hbar, track, a.re, opts).map(|q| Complex64::new(q.re, 0.0));
    let step = 0.1 * (hi.a - lo.a);
    match secant(f, Complex64::new(guess, 0.0), Complex64::new(guess + step, 0.0), 1e-7, 20) {
        Ok((a, _)) if a.re >= lo.a - (hi.a - lo.a) && a.re <= hi.a + (hi.a - lo.a) => Some(a.re),
        _ => {
            flags.push("coalescence refinement failed; reporting the interpolated value".into());
            Some(guess)
        }
    }
}

fn locate_zero(g: f64, hbar: f64, track: &[PairState], opts: &ScanOptions, flags: &mut Vec<String>) -> Option<f64> {
    let e0 = |s: &PairState| pair_levels(s).0.re;
    let i = (1..track.len()).find(|&i| track[i - 1].q.re > 0.0 && e0(&track[i - 1]) * e0(&track[i]) <= 0.0 && e0(&track[i]) != 0.0)?;
    let (lo, hi) = (track[i - 1], track[i]);
    let guess = lo.a + (hi.a - lo.a) * e0(&lo) / (e0(&lo) - e0(&hi));
    let f = |a: Complex64| -> Result<Complex64> {
        let (c, q) = interpolate(track, a.re);
        let spec = h_spec(g, a.re, hbar)?;
        let (x, _) = solve_pair(&spec, c, q, opts)?;
        Ok(Complex64::new(x.re, 0.0))
    };
    let step = 0.05 * (hi.a - lo.a);
    match secant(f, Complex64::new(guess, 0.0), Complex64::new(guess + step, 0.0), 1e-11, 30) {
        Ok((a, _)) => Some(a.re),
        Err(err) => {
            flags.push(format!("ground-state zero refinement failed: {err}"));
            Some(guess)
        }
    }
}

/// Solves `H` itself on its bent contour at evenly spaced sweep points
/// and compares with the tracked levels.
fn h_side_check(
    g: f64,
    hbar: f64,
    a_values: &[f64],
    eigenvalues: &[Vec<Complex64>],
    opts: &TransitionOptions,
    flags: &mut Vec<String>,
) -> Option<f64> {
    let n = opts.h_side_samples.min(a_values.len());
    if n == 0 {
        return None;
    }
    let picks: Vec<usize> = (0..n)
        .map(|i| if n == 1 { 0 } else { i * (a_values.len() - 1) / (n - 1) })
        .collect();
    let devs: Vec<std::result::Result<f64, String>> = picks
        .par_iter()
        .map(|&i| {
            let spec = PotentialSpec::pt_quartic(g, a_values[i], hbar).map_err(|e| e.to_string())?;
            let mut worst: f64 = 0.0;
            for &e in &eigenvalues[i] {
                let path = ContourPath::contour_for_energy(&spec, e.norm());
                let r = find_eigenvalue(&spec, &path, e, &opts.scan.rk)
                    .map_err(|err| format!("H side at a = {}: {err}", a_values[i]))?;
                worst = worst.max((r.energy - e).norm() / e.norm().max(1.0));
            }
            Ok(worst)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for d in devs {
        match d {
            Ok(d) => worst = worst.max(d),
            Err(msg) => flags.push(msg),
        }
    }
    Some(worst)
}
