use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::coefficient::{Coefficient, CANONICAL_DROP};

/// Finite Laurent polynomial `Σ c_j y^j` over a coefficient field.
///
/// Stored in canonical form: no coefficient is zero (for floating
/// coefficients, none is below [`CANONICAL_DROP`] times the largest one).
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<T = Complex64> {
    coeffs: BTreeMap<i32, T>,
}

impl<T: Coefficient> LaurentPoly<T> {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i32, c: T) -> Self {
        Self::from_terms([(exp, c)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, T)>,
    {
        let mut coeffs: BTreeMap<i32, T> = BTreeMap::new();
        for (e, c) in terms {
            match coeffs.get_mut(&e) {
                Some(existing) => *existing = existing.add(&c),
                None => {
                    coeffs.insert(e, c);
                }
            }
        }
        Self::canonical(coeffs)
    }

    fn canonical(mut coeffs: BTreeMap<i32, T>) -> Self {
        if T::EXACT {
            coeffs.retain(|_, c| !c.is_zero());
        } else {
            let max = coeffs.values().map(|c| c.magnitude()).fold(0.0, f64::max);
            let floor = CANONICAL_DROP * max;
            coeffs.retain(|_, c| !c.is_zero() && c.magnitude() > floor);
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> Option<&T> {
        self.coeffs.get(&exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &T)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            match coeffs.get_mut(e) {
                Some(existing) => *existing = existing.add(c),
                None => {
                    coeffs.insert(*e, c.clone());
                }
            }
        }
        Self::canonical(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::canonical(self.coeffs.iter().map(|(e, v)| (*e, v.mul(c))).collect())
    }

    pub fn mul_int(&self, n: i64) -> Self {
        Self::canonical(self.coeffs.iter().map(|(e, v)| (*e, v.mul_int(n))).collect())
    }

    pub fn halve(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v.halve())).collect(),
        }
    }

    /// Multiplies by `y^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Exact convolution of the coefficient maps.
    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<i32, T> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let prod = ca.mul(cb);
                match coeffs.get_mut(&(ea + eb)) {
                    Some(existing) => *existing = existing.add(&prod),
                    None => {
                        coeffs.insert(ea + eb, prod);
                    }
                }
            }
        }
        Self::canonical(coeffs)
    }

    /// Power-rule derivative in `y`.
    pub fn derivative(&self) -> Self {
        Self::canonical(
            self.coeffs
                .iter()
                .filter(|(e, _)| **e != 0)
                .map(|(e, c)| (e - 1, c.mul_int(*e as i64)))
                .collect(),
        )
    }

    /// The same polynomial with every coefficient converted to `Complex64`.
    pub fn to_complex64(&self) -> LaurentPoly<Complex64> {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(e, c)| (*e, c.to_complex64())))
    }
}

impl LaurentPoly<Complex64> {
    pub fn eval(&self, y: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(e, c)| c * y.powi(*e))
            .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v)
    }
}

impl<T: Coefficient> fmt::Debug for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?}) y^{}", c.to_complex64(), e)?;
        }
        Ok(())
    }
}
