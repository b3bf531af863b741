use std::fmt;

use num_complex::Complex64;

use super::coefficient::Coefficient;
use super::laurent::LaurentPoly;
use crate::{Error, Result};

/// Sign selecting the weight `D(y) = 1 − σ y⁴`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sigma {
    Plus,
    Minus,
}

impl Sigma {
    pub fn from_sign(x: f64) -> Self {
        if x > 0.0 {
            Sigma::Plus
        } else {
            Sigma::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sigma::Plus => 1,
            Sigma::Minus => -1,
        }
    }

    /// `D(y)` as a Laurent polynomial.
    pub fn weight<T: Coefficient>(self) -> LaurentPoly<T> {
        LaurentPoly::from_terms([(0, T::one()), (4, T::from_int(-self.value()))])
    }

    pub fn weight_at(self, y: Complex64) -> Complex64 {
        1.0 - self.value() as f64 * y.powi(4)
    }
}

/// `num(y) · D(y)^{−m/2}`.
#[derive(Clone, PartialEq)]
pub struct AlgebraicTerm<T = Complex64> {
    pub num: LaurentPoly<T>,
    pub m: i32,
    pub sigma: Sigma,
}

fn weight_power<T: Coefficient>(sigma: Sigma, p: u32) -> LaurentPoly<T> {
    let d = sigma.weight::<T>();
    (0..p).fold(LaurentPoly::one(), |acc, _| acc.mul(&d))
}

impl<T: Coefficient> AlgebraicTerm<T> {
    pub fn new(num: LaurentPoly<T>, m: i32, sigma: Sigma) -> Self {
        AlgebraicTerm { num, m, sigma }
    }

    pub fn zero(sigma: Sigma) -> Self {
        Self::new(LaurentPoly::zero(), 0, sigma)
    }

    /// `D^{1/2}`.
    pub fn sqrt_weight(sigma: Sigma) -> Self {
        Self::new(LaurentPoly::one(), -1, sigma)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.num.scale(c), self.m, self.sigma)
    }

    /// Same value written over the denominator `D^{target/2}`.
    pub fn padded_to(&self, target: i32) -> Result<Self> {
        let diff = target - self.m;
        if diff < 0 || diff % 2 != 0 {
            return Err(Error::Domain(format!(
                "cannot pad m = {} to m = {}",
                self.m, target
            )));
        }
        let num = self.num.mul(&weight_power(self.sigma, (diff / 2) as u32));
        Ok(Self::new(num, target, self.sigma))
    }

    pub fn to_complex64(&self) -> AlgebraicTerm<Complex64> {
        AlgebraicTerm::new(self.num.to_complex64(), self.m, self.sigma)
    }
}

impl AlgebraicTerm<Complex64> {
    /// Value with a caller-supplied branch of `√D(y)`.
    pub fn eval_with_root(&self, y: Complex64, sqrt_d: Complex64) -> Complex64 {
        let n = self.num.eval(y);
        if self.m % 2 == 0 {
            n * (sqrt_d * sqrt_d).powi(-self.m / 2)
        } else {
            n * sqrt_d.powi(-self.m)
        }
    }

    /// Value on the principal branch of `√D(y)`.
    pub fn eval(&self, y: Complex64) -> Complex64 {
        self.eval_with_root(y, self.sigma.weight_at(y).sqrt())
    }
}

impl<T: Coefficient> fmt::Debug for AlgebraicTerm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] D^(-{}/2), sigma={:?}", self.num, self.m, self.sigma)
    }
}

fn check_sigma(a: Sigma, b: Sigma) -> Result<()> {
    if a != b {
        return Err(Error::Domain("sigma mismatch between algebraic terms".into()));
    }
    Ok(())
}

pub fn lp_mul<T: Coefficient>(p: &LaurentPoly<T>, q: &LaurentPoly<T>) -> LaurentPoly<T> {
    p.mul(q)
}

pub fn lp_diff<T: Coefficient>(p: &LaurentPoly<T>) -> LaurentPoly<T> {
    p.derivative()
}

pub fn at_mul<T: Coefficient>(u: &AlgebraicTerm<T>, v: &AlgebraicTerm<T>) -> Result<AlgebraicTerm<T>> {
    check_sigma(u.sigma, v.sigma)?;
    Ok(AlgebraicTerm::new(u.num.mul(&v.num), u.m + v.m, u.sigma))
}

/// Derivative in `y`; the result carries `m + 2`.
pub fn at_diff<T: Coefficient>(u: &AlgebraicTerm<T>) -> AlgebraicTerm<T> {
    let sigma = u.sigma;
    // −(m/2)·num·D′ with D′ = −4σy³
    let chain = u
        .num
        .shift(3)
        .mul_int(2 * sigma.value() * u.m as i64);
    let num = u.num.derivative().mul(&sigma.weight()).add(&chain);
    AlgebraicTerm::new(num, u.m + 2, sigma)
}

/// Sum over the common denominator `D^{max(m)/2}`.
pub fn at_add<T: Coefficient>(u: &AlgebraicTerm<T>, v: &AlgebraicTerm<T>) -> Result<AlgebraicTerm<T>> {
    check_sigma(u.sigma, v.sigma)?;
    if v.is_zero() {
        return Ok(u.clone());
    }
    if u.is_zero() {
        return Ok(v.clone());
    }
    if (u.m - v.m) % 2 != 0 {
        return Err(Error::Domain(format!(
            "terms with m = {} and m = {} differ by an odd count",
            u.m, v.m
        )));
    }
    let m = u.m.max(v.m);
    let a = u.padded_to(m)?;
    let b = v.padded_to(m)?;
    Ok(AlgebraicTerm::new(a.num.add(&b.num), m, u.sigma))
}

/// Sum of algebraic terms with distinct `m` parity.
///
/// A linear `y`-term in the potential feeds the recurrence a source with the
/// opposite parity of `m`, so a single [`AlgebraicTerm`] cannot hold every
/// coefficient. At most one term per parity is kept.
#[derive(Clone, PartialEq)]
pub struct AlgebraicSum<T = Complex64> {
    terms: Vec<AlgebraicTerm<T>>,
    sigma: Sigma,
}

impl<T: Coefficient> AlgebraicSum<T> {
    pub fn zero(sigma: Sigma) -> Self {
        AlgebraicSum {
            terms: Vec::new(),
            sigma,
        }
    }

    pub fn from_term(term: AlgebraicTerm<T>) -> Self {
        let sigma = term.sigma;
        let mut s = Self::zero(sigma);
        if !term.is_zero() {
            s.terms.push(term);
        }
        s
    }

    pub fn sigma(&self) -> Sigma {
        self.sigma
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms ordered by increasing `m`.
    pub fn terms(&self) -> &[AlgebraicTerm<T>] {
        &self.terms
    }

    /// Largest `m` among the nonzero terms.
    pub fn max_m(&self) -> Option<i32> {
        self.terms.iter().map(|t| t.m).max()
    }

    /// The single term, if the sum has at most one.
    pub fn as_single(&self) -> Option<AlgebraicTerm<T>> {
        match self.terms.len() {
            0 => Some(AlgebraicTerm::zero(self.sigma)),
            1 => Some(self.terms[0].clone()),
            _ => None,
        }
    }

    pub fn add_term(&self, t: &AlgebraicTerm<T>) -> Result<Self> {
        check_sigma(self.sigma, t.sigma)?;
        if t.is_zero() {
            return Ok(self.clone());
        }
        let mut terms = self.terms.clone();
        match terms.iter().position(|s| (s.m - t.m) % 2 == 0) {
            Some(i) => {
                let merged = at_add(&terms[i], t)?;
                if merged.is_zero() {
                    terms.remove(i);
                } else {
                    terms[i] = merged;
                }
            }
            None => terms.push(t.clone()),
        }
        terms.sort_by_key(|s| s.m);
        Ok(AlgebraicSum {
            terms,
            sigma: self.sigma,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        other.terms.iter().try_fold(self.clone(), |acc, t| acc.add_term(t))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_sigma(self.sigma, other.sigma)?;
        let mut out = Self::zero(self.sigma);
        for u in &self.terms {
            for v in &other.terms {
                out = out.add_term(&at_mul(u, v)?)?;
            }
        }
        Ok(out)
    }

    pub fn mul_term(&self, t: &AlgebraicTerm<T>) -> Result<Self> {
        self.mul(&Self::from_term(t.clone()))
    }

    pub fn diff(&self) -> Self {
        let mut out = Self::zero(self.sigma);
        for t in &self.terms {
            let d = at_diff(t);
            if !d.is_zero() {
                // parities are preserved by differentiation, so no merging occurs
                out.terms.push(d);
            }
        }
        out.terms.sort_by_key(|s| s.m);
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        AlgebraicSum {
            terms: self
                .terms
                .iter()
                .map(|t| t.scale(c))
                .filter(|t| !t.is_zero())
                .collect(),
            sigma: self.sigma,
        }
    }

    pub fn to_complex64(&self) -> AlgebraicSum<Complex64> {
        AlgebraicSum {
            terms: self.terms.iter().map(|t| t.to_complex64()).collect(),
            sigma: self.sigma,
        }
    }
}

impl AlgebraicSum<Complex64> {
    pub fn eval_with_root(&self, y: Complex64, sqrt_d: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.eval_with_root(y, sqrt_d))
            .sum()
    }

    pub fn eval(&self, y: Complex64) -> Complex64 {
        self.eval_with_root(y, self.sigma.weight_at(y).sqrt())
    }
}

impl<T: Coefficient> fmt::Debug for AlgebraicSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.terms).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(terms: &[(i32, Complex64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn square_of_root_weight() {
        let a0 = AlgebraicTerm::<Complex64>::sqrt_weight(Sigma::Minus);
        let sq = at_mul(&a0, &a0).unwrap();
        assert_eq!(sq.m, -2);
        assert_eq!(sq.num, LaurentPoly::one());
    }

    #[test]
    fn identity_and_sigma_mismatch() {
        let u = AlgebraicTerm::new(poly(&[(1, z(2.0, 1.0))]), 3, Sigma::Minus);
        let one = AlgebraicTerm::new(LaurentPoly::one(), 0, Sigma::Minus);
        assert_eq!(at_mul(&u, &one).unwrap(), u);
        let other = AlgebraicTerm::new(LaurentPoly::one(), 0, Sigma::Plus);
        assert!(matches!(at_mul(&u, &other), Err(Error::Domain(_))));
        assert!(matches!(at_add(&u, &other), Err(Error::Domain(_))));
    }

    #[test]
    fn third_order_square() {
        let hh = z(0.0, -1.0);
        let a3 = AlgebraicTerm::new(poly(&[(3, -hh)]), 2, Sigma::Minus);
        let sq = at_mul(&a3, &a3).unwrap();
        assert_eq!(sq.m, 4);
        assert_eq!(sq.num, poly(&[(6, hh * hh)]));
    }

    #[test]
    fn derivative_of_root_weight() {
        // d/dy √(1+y⁴) = 2y³/√(1+y⁴)
        let d = at_diff(&AlgebraicTerm::<Complex64>::sqrt_weight(Sigma::Minus));
        assert_eq!(d.m, 1);
        assert_eq!(d.num, poly(&[(3, z(2.0, 0.0))]));
        let c = AlgebraicTerm::new(poly(&[(0, z(3.0, 0.0))]), 0, Sigma::Minus);
        let dc = at_diff(&c);
        assert!(dc.is_zero());
        assert_eq!(dc.m, 2);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let hh = z(0.0, -1.0);
        let a3 = AlgebraicTerm::new(poly(&[(3, -hh)]), 2, Sigma::Minus);
        let d = at_diff(&a3);
        let y = z(0.3, 0.1);
        let h = 1e-5;
        let fd = (a3.eval(y + h) - a3.eval(y - h)) / (2.0 * h);
        assert!(rel(d.eval(y), fd) < 1e-8);
    }

    #[test]
    fn padding_definition() {
        let u = AlgebraicTerm::new(LaurentPoly::one(), 0, Sigma::Minus);
        let v = AlgebraicTerm::new(LaurentPoly::one(), 2, Sigma::Minus);
        let s = at_add(&u, &v).unwrap();
        assert_eq!(s.m, 2);
        assert_eq!(s.num, poly(&[(0, z(2.0, 0.0)), (4, z(1.0, 0.0))]));
        assert_eq!(at_add(&u, &AlgebraicTerm::zero(Sigma::Minus)).unwrap(), u);
        let w = AlgebraicTerm::new(LaurentPoly::one(), 1, Sigma::Minus);
        assert!(matches!(at_add(&u, &w), Err(Error::Domain(_))));
    }

    #[test]
    fn sixth_order_bracket() {
        // a_3² + ĥ a_3′ collapses to one m = 4 term
        let hh = z(0.0, -1.3);
        let sigma = Sigma::Minus;
        let a3 = AlgebraicTerm::new(poly(&[(3, -hh)]), 2, sigma);
        let bracket = at_add(&at_mul(&a3, &a3).unwrap(), &at_diff(&a3).scale(&hh)).unwrap();
        assert_eq!(bracket.m, 4);
        // hand expansion: ĥ²y⁶ − ĥ²(3y²(1+y⁴) − 4y⁶) = ĥ²(−3y² + 2y⁶)
        assert_eq!(bracket.num.len(), 2);
        let h2 = hh * hh;
        assert!(rel(*bracket.num.coeff(2).unwrap(), -3.0 * h2) < 1e-15);
        assert!(rel(*bracket.num.coeff(6).unwrap(), 2.0 * h2) < 1e-15);
    }

    #[test]
    fn mixed_parity_sum() {
        let sigma = Sigma::Plus;
        let u = AlgebraicTerm::new(poly(&[(1, z(1.0, 0.0))]), 1, sigma);
        let v = AlgebraicTerm::new(poly(&[(3, z(2.0, 0.0))]), 2, sigma);
        let s = AlgebraicSum::from_term(u.clone()).add_term(&v).unwrap();
        assert_eq!(s.terms().len(), 2);
        assert_eq!(s.max_m(), Some(2));
        let y = z(0.4, 0.7);
        assert!(rel(s.eval(y), u.eval(y) + v.eval(y)) < 1e-14);
        let cancelled = s.add_term(&u.scale(&z(-1.0, 0.0))).unwrap();
        assert_eq!(cancelled.terms().len(), 1);
        let sq = s.mul(&s).unwrap();
        assert!(rel(sq.eval(y), s.eval(y) * s.eval(y)) < 1e-13);
    }
}
