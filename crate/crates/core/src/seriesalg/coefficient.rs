use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

/// Drop threshold used by the canonical form of floating coefficients,
/// relative to the largest coefficient magnitude of the same polynomial.
pub const CANONICAL_DROP: f64 = 1e-14;

/// Coefficient field for [`LaurentPoly`](super::LaurentPoly).
///
/// Two implementations exist: `Complex64` for fast numerical work and
/// [`ExactComplex`] for the recurrence that feeds the action series, where
/// rounding would otherwise swamp the high-order coefficients.
pub trait Coefficient: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// Whether the canonical form drops only exact zeros.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// Image of a double-precision value; exact for [`ExactComplex`].
    fn from_c64(z: Complex64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_int(&self, n: i64) -> Self;
    fn halve(&self) -> Self;
    /// Approximate modulus, used by the floating drop rule.
    fn magnitude(&self) -> f64;
    fn to_complex64(&self) -> Complex64;
}

impl Coefficient for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_int(&self, n: i64) -> Self {
        self * n as f64
    }
    fn halve(&self) -> Self {
        self * 0.5
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex64(&self) -> Complex64 {
        *self
    }
}

/// Exact Gaussian dyadic rational `(re + i·im)·2^exp`.
///
/// Every double is a dyadic rational, and the Riccati recurrence only ever
/// multiplies, adds, differentiates and halves, so this type carries the
/// whole recurrence without rounding once the parameters are bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactComplex {
    re: BigInt,
    im: BigInt,
    exp: i64,
}

impl ExactComplex {
    /// Exact image of a double-precision complex number.
    pub fn from_complex64(z: Complex64) -> Self {
        let (re_m, re_e) = decode(z.re);
        let (im_m, im_e) = decode(z.im);
        let e = re_e.min(im_e);
        let out = ExactComplex {
            re: re_m << (re_e - e) as usize,
            im: im_m << (im_e - e) as usize,
            exp: e,
        };
        out.normalized()
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_complex64(Complex64::new(x, 0.0))
    }

    /// Real and imaginary parts as exact rationals.
    pub fn to_rationals(&self) -> (BigRational, BigRational) {
        let scale = |m: &BigInt| -> BigRational {
            if self.exp >= 0 {
                BigRational::from_integer(m << self.exp as usize)
            } else {
                BigRational::new(m.clone(), BigInt::one() << (-self.exp) as usize)
            }
        };
        (scale(&self.re), scale(&self.im))
    }

    fn normalized(mut self) -> Self {
        if self.re.is_zero() && self.im.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = match (self.re.trailing_zeros(), self.im.trailing_zeros()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => 0,
        };
        if tz > 0 {
            self.re >>= tz as usize;
            self.im >>= tz as usize;
            self.exp += tz as i64;
        }
        self
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        let sa = (self.exp - e) as usize;
        let sb = (other.exp - e) as usize;
        (
            &self.re << sa,
            &self.im << sa,
            &other.re << sb,
            &other.im << sb,
            e,
        )
    }
}

fn decode(x: f64) -> (BigInt, i64) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let (mantissa, exponent, sign) = Float::integer_decode(x);
    (BigInt::from(mantissa) * sign as i64, exponent as i64)
}

/// `m · 2^e` as a double, without overflowing intermediate conversions.
pub(crate) fn bigint_ldexp(m: &BigInt, e: i64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let bits = m.bits() as i64;
    let (mant, shift) = if bits > 64 {
        ((m >> (bits - 64) as usize).to_f64().unwrap_or(0.0), bits - 64)
    } else {
        (m.to_f64().unwrap_or(0.0), 0)
    };
    ldexp(mant, e + shift)
}

pub(crate) fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

/// Nearest double to an exact rational, robust to huge numerators and
/// denominators.
pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    let (n, d) = (q.numer(), q.denom());
    if n.is_zero() {
        return 0.0;
    }
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // Scale the numerator so the integer quotient carries ~64 significant bits.
    let shift = 64 - (nb - db);
    let scaled = if shift >= 0 {
        (n.abs() << shift as usize) / d
    } else {
        (n.abs() >> (-shift) as usize) / d
    };
    let mag = bigint_ldexp(&scaled, -shift);
    if n.is_negative() {
        -mag
    } else {
        mag
    }
}

impl Coefficient for ExactComplex {
    const EXACT: bool = true;

    fn zero() -> Self {
        ExactComplex {
            re: BigInt::zero(),
            im: BigInt::zero(),
            exp: 0,
        }
    }
    fn one() -> Self {
        ExactComplex {
            re: BigInt::one(),
            im: BigInt::zero(),
            exp: 0,
        }
    }
    fn from_int(n: i64) -> Self {
        ExactComplex {
            re: BigInt::from(n),
            im: BigInt::zero(),
            exp: 0,
        }
        .normalized()
    }
    fn from_c64(z: Complex64) -> Self {
        Self::from_complex64(z)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (ar, ai, br, bi, e) = self.aligned(other);
        ExactComplex {
            re: ar + br,
            im: ai + bi,
            exp: e,
        }
        .normalized()
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        ExactComplex {
            re,
            im,
            exp: self.exp + other.exp,
        }
        .normalized()
    }
    fn neg(&self) -> Self {
        ExactComplex {
            re: -&self.re,
            im: -&self.im,
            exp: self.exp,
        }
    }
    fn mul_int(&self, n: i64) -> Self {
        ExactComplex {
            re: &self.re * n,
            im: &self.im * n,
            exp: self.exp,
        }
        .normalized()
    }
    fn halve(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ExactComplex {
            re: self.re.clone(),
            im: self.im.clone(),
            exp: self.exp - 1,
        }
    }
    fn magnitude(&self) -> f64 {
        self.to_complex64().norm()
    }
    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            bigint_ldexp(&self.re, self.exp),
            bigint_ldexp(&self.im, self.exp),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_roundtrip_of_doubles() {
        for &(re, im) in &[(0.3, -1.7), (1e-300, 4.0), (-2.5e200, 0.0), (0.0, 0.0)] {
            let z = Complex64::new(re, im);
            assert_eq!(ExactComplex::from_complex64(z).to_complex64(), z);
        }
    }

    #[test]
    fn exact_arithmetic_has_no_rounding() {
        // 0.1 is not representable, but (0.1·3 − 0.1·2 − 0.1) is exactly zero
        // in the dyadic image of 0.1.
        let a = ExactComplex::from_f64(0.1);
        let r = a.mul_int(3).sub(&a.mul_int(2)).sub(&a);
        assert!(r.is_zero());
        let i = ExactComplex::from_complex64(Complex64::new(0.0, 1.0));
        assert_eq!(i.mul(&i), ExactComplex::from_int(-1));
        assert_eq!(ExactComplex::from_int(3).halve().mul_int(2), ExactComplex::from_int(3));
    }

    #[test]
    fn rational_conversion_handles_large_operands() {
        let big = BigInt::from(3) << 2000usize;
        let q = BigRational::new(big.clone() + 1, big);
        assert!((rational_to_f64(&q) - 1.0).abs() < 1e-15);
        let q = BigRational::new(BigInt::from(-7), BigInt::from(3));
        assert!((rational_to_f64(&q) + 7.0 / 3.0).abs() < 1e-15);
    }
}
