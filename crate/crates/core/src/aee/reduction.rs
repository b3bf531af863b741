//! Exact reduction of contour moments to a handful of master integrals.
//!
//! With `I(j, n) = ∮ yʲ D^{−n} dy` and `D = 1 − σy⁴`, integrating
//! `d(y^{j+1} D^{−n})` around a closed contour gives
//!
//! ```text
//! (j + 1) I(j, n) + 4σn I(j + 4, n + 1) = 0
//! I(j, n + 1) = (4n − j − 1)/(4n) · I(j, n)            (n ≠ 0)
//! I(j + 4, n) = σ(j + 1)/(j + 5 − 4n) · I(j, n)
//! ```
//!
//! Half-integer powers reduce to `∮ yʲ D^{1/2}` with `j ∈ {−1, 0, 1, 2}`
//! (`j = 3` is an exact derivative). Integer powers reduce to
//! `∮ yʲ D^{−1}` with `j ∈ {−1, …, 3}`, and nonnegative powers of `D` to
//! `∮ y^{−1}`. The reduction coefficients are rational, so applied to exact
//! recurrence output they produce exact zeros wherever the integral
//! vanishes identically.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::contour::TrackedContour;
use crate::seriesalg::{rational_to_f64, AlgebraicSum, AlgebraicTerm, ExactComplex, LaurentPoly, Sigma};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Master {
    /// `∮ yʲ D^{1/2} dy`
    Half(i32),
    /// `∮ yʲ D^{−1} dy`
    Inverse(i32),
    /// `∮ y^{−1} dy`
    Pole,
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Reduces one monomial `yʲ D^{−m/2}` to a rational multiple of a master.
/// `None` means the integral vanishes exactly.
fn reduce_monomial(j: i32, m: i32, sigma: Sigma) -> Option<(Master, BigRational)> {
    let s = sigma.value();
    let (j, m) = (j as i64, m as i64);
    let mut rho = BigRational::one();
    if m % 2 != 0 {
        debug_assert!(m >= -1);
        let mut mm = m;
        while mm > -1 {
            rho *= ratio(2 * mm - j - 5, 2 * mm - 4);
            mm -= 2;
        }
        let mut jj = j;
        while jj >= 4 {
            rho *= ratio(s * (jj - 3), jj + 3);
            jj -= 4;
        }
        while jj <= -2 {
            rho *= ratio(s * (jj + 7), jj + 1);
            jj += 4;
        }
        if jj == 3 || rho.is_zero() {
            return None;
        }
        Some((Master::Half(jj as i32), rho))
    } else if m >= 2 {
        let mut mm = m;
        while mm > 2 {
            rho *= ratio(2 * mm - j - 5, 2 * mm - 4);
            mm -= 2;
        }
        let mut jj = j;
        while jj >= 4 {
            rho *= ratio(s, 1);
            jj -= 4;
        }
        while jj <= -2 {
            rho *= ratio(s, 1);
            jj += 4;
        }
        if rho.is_zero() {
            return None;
        }
        Some((Master::Inverse(jj as i32), rho))
    } else {
        debug_assert!(false, "nonpositive even powers are expanded before reduction");
        None
    }
}

/// Rational combination of master integrals.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Reduced {
    coeffs: BTreeMap<Master, (BigRational, BigRational)>,
}

impl Reduced {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn masters(&self) -> impl Iterator<Item = &Master> {
        self.coeffs.keys()
    }

    fn accumulate(&mut self, master: Master, c: &ExactComplex, rho: &BigRational) {
        let (re, im) = c.to_rationals();
        let entry = self
            .coeffs
            .entry(master)
            .or_insert_with(|| (BigRational::zero(), BigRational::zero()));
        entry.0 += re * rho;
        entry.1 += im * rho;
        if entry.0.is_zero() && entry.1.is_zero() {
            self.coeffs.remove(&master);
        }
    }

    /// Numerical value given the master integrals.
    pub fn evaluate(&self, masters: &MasterTable) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(m, (re, im))| Complex64::new(rational_to_f64(re), rational_to_f64(im)) * masters.get(*m))
            .sum()
    }
}

pub fn reduce_term(term: &AlgebraicTerm<ExactComplex>, out: &mut Reduced) {
    let sigma = term.sigma;
    let m = term.m;
    if m % 2 != 0 {
        // D^{k+1/2} with k ≥ 0 is written as D^k · D^{1/2}
        let t = if m < -1 { term.padded_to(-1).expect("odd padding") } else { term.clone() };
        for (j, c) in t.num.terms() {
            if let Some((master, rho)) = reduce_monomial(j, t.m, sigma) {
                out.accumulate(master, c, &rho);
            }
        }
    } else if m >= 2 {
        for (j, c) in term.num.terms() {
            if let Some((master, rho)) = reduce_monomial(j, m, sigma) {
                out.accumulate(master, c, &rho);
            }
        }
    } else {
        let expanded: LaurentPoly<ExactComplex> = term.padded_to(0).expect("even padding").num;
        if let Some(c) = expanded.coeff(-1) {
            out.accumulate(Master::Pole, c, &BigRational::one());
        }
    }
}

pub fn reduce_sum(sum: &AlgebraicSum<ExactComplex>) -> Reduced {
    let mut out = Reduced::default();
    for t in sum.terms() {
        reduce_term(t, &mut out);
    }
    out
}

/// Numerical master integrals `(1/2π)∮ … dy` on a tracked contour.
#[derive(Clone, Debug)]
pub struct MasterTable {
    values: BTreeMap<Master, Complex64>,
}

/// Masters below this fraction of the largest one vanish by symmetry of the
/// contour and are set to zero exactly.
const SYMMETRY_ZERO: f64 = 1e-13;

impl MasterTable {
    pub fn compute(contour: &TrackedContour) -> Self {
        let sigma = contour.sigma;
        let mut values = BTreeMap::new();
        for j in -1..=2 {
            values.insert(Master::Half(j), contour.integrate_root_power(1, j));
        }
        for j in -1..=3 {
            values.insert(Master::Inverse(j), contour.integrate(|y, _| y.powi(j) / sigma.weight_at(y)));
        }
        values.insert(Master::Pole, contour.integrate(|y, _| 1.0 / y));
        let scale = values.values().map(|v| v.norm()).fold(0.0, f64::max);
        for v in values.values_mut() {
            if v.norm() < SYMMETRY_ZERO * scale {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        MasterTable { values }
    }

    pub fn get(&self, m: Master) -> Complex64 {
        self.values[&m]
    }
}
