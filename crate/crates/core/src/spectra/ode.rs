//! Dormand–Prince 5(4) for complex systems on a real parameter interval.

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RkOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Smallest admissible step as a fraction of the interval.
    pub min_step: f64,
}

impl Default for RkOptions {
    fn default() -> Self {
        RkOptions {
            rtol: 1e-12,
            atol: 0.0,
            max_steps: 2_000_000,
            min_step: 1e-14,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RkStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

impl std::ops::AddAssign for RkStats {
    fn add_assign(&mut self, o: Self) {
        self.accepted += o.accepted;
        self.rejected += o.rejected;
        self.evaluations += o.evaluations;
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `y′ = f(t, y)` from `t0` to `t1`.
///
/// `scale(t, y, y_new)` returns the per-component error scale before the
/// tolerances are applied, so callers can measure error against a norm that
/// suits their solution. After each accepted step `rescale` may return a
/// factor by which the state is multiplied; this is only consistent for
/// linear homogeneous systems.
#[allow(clippy::too_many_arguments)]
pub fn dormand_prince<const N: usize, F, S, R>(
    mut f: F,
    scale: S,
    mut rescale: R,
    t0: f64,
    t1: f64,
    y0: [Complex64; N],
    h0: f64,
    opts: &RkOptions,
) -> Result<([Complex64; N], RkStats)>
where
    F: FnMut(f64, &[Complex64; N]) -> [Complex64; N],
    S: Fn(f64, &[Complex64; N], &[Complex64; N]) -> [f64; N],
    R: FnMut(&[Complex64; N]) -> f64,
{
    let span = t1 - t0;
    let dir = span.signum();
    let h_min = opts.min_step * span.abs();
    let mut stats = RkStats::default();
    let mut t = t0;
    let mut y = y0;
    let mut h = h0.abs().min(span.abs()) * dir;
    let mut k = [[Complex64::new(0.0, 0.0); N]; 7];
    k[0] = f(t, &y);
    stats.evaluations += 1;

    while (t1 - t) * dir > 0.0 {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(Error::Path(format!("step budget exhausted at t = {t}")));
        }
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        for s in 1..7 {
            let mut ys = y;
            for (i, v) in ys.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, kj) in k.iter().enumerate().take(s) {
                    if A[s][j] != 0.0 {
                        acc += kj[i] * A[s][j];
                    }
                }
                *v += acc * h;
            }
            k[s] = f(t + C[s] * h, &ys);
            stats.evaluations += 1;
        }
        let mut y_new = y;
        let mut err = [Complex64::new(0.0, 0.0); N];
        for i in 0..N {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut e = Complex64::new(0.0, 0.0);
            for s in 0..6 {
                acc += k[s][i] * A[6][s];
            }
            for s in 0..7 {
                e += k[s][i] * E[s];
            }
            y_new[i] += acc * h;
            err[i] = e * h;
        }
        let sc = scale(t + h, &y, &y_new);
        let mut ratio: f64 = 0.0;
        for i in 0..N {
            let tol = opts.atol + opts.rtol * sc[i];
            let r = if tol > 0.0 { err[i].norm() / tol } else if err[i].norm() > 0.0 { f64::INFINITY } else { 0.0 };
            ratio = ratio.max(r);
        }
        if !ratio.is_finite() && y_new.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            ratio = f64::INFINITY;
        }
        if ratio <= 1.0 {
            t += h;
            y = y_new;
            k[0] = k[6];
            stats.accepted += 1;
            let c = rescale(&y);
            if c != 1.0 {
                y.iter_mut().for_each(|v| *v *= c);
                k[0].iter_mut().for_each(|v| *v *= c);
            }
            let grow = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).min(5.0) };
            h *= grow.max(0.2);
        } else {
            stats.rejected += 1;
            let shrink = if ratio.is_finite() { (0.9 * ratio.powf(-0.2)).max(0.1) } else { 0.1 };
            h *= shrink;
            if h.abs() < h_min {
                return Err(Error::Path(format!("step size underflow at t = {t}")));
            }
        }
    }
    Ok((y, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_scale(_: f64, y: &[Complex64; 2], z: &[Complex64; 2]) -> [f64; 2] {
        [y[0].norm().max(z[0].norm()), y[1].norm().max(z[1].norm())]
    }

    #[test]
    fn exponential_growth() {
        let lam = Complex64::new(0.5, 2.0);
        let (y, stats) = dormand_prince(
            |_, y: &[Complex64; 1]| [lam * y[0]],
            |_, y, z| [y[0].norm().max(z[0].norm())],
            |_| 1.0,
            0.0,
            3.0,
            [Complex64::new(1.0, 0.0)],
            0.01,
            &RkOptions::default(),
        )
        .unwrap();
        let exact = (lam * 3.0).exp();
        assert!((y[0] - exact).norm() < 1e-10 * exact.norm());
        assert!(stats.accepted > 0);
    }

    #[test]
    fn harmonic_oscillator_period() {
        let (y, _) = dormand_prince(
            |_, y: &[Complex64; 2]| [y[1], -y[0]],
            rel_scale,
            |_| 1.0,
            0.0,
            2.0 * std::f64::consts::PI,
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            0.1,
            &RkOptions {
                atol: 1e-14,
                ..RkOptions::default()
            },
        )
        .unwrap();
        assert!((y[0] - 1.0).norm() < 1e-10);
        assert!(y[1].norm() < 1e-10);
    }

    #[test]
    fn backward_integration_and_rescaling() {
        let mut total = 1.0;
        let (y, _) = dormand_prince(
            |_, y: &[Complex64; 1]| [-y[0]],
            |_, y, z| [y[0].norm().max(z[0].norm())],
            |y| {
                if y[0].norm() > 10.0 {
                    total *= y[0].norm();
                    1.0 / y[0].norm()
                } else {
                    1.0
                }
            },
            5.0,
            0.0,
            [Complex64::new(1.0, 0.0)],
            0.1,
            &RkOptions::default(),
        )
        .unwrap();
        let got = y[0].norm() * total;
        assert!((got - 5f64.exp()).abs() < 1e-9 * 5f64.exp());
    }
}
