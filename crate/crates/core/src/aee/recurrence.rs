use num_complex::Complex64;

use super::potential::PotentialSpec;
use crate::seriesalg::{AlgebraicSum, AlgebraicTerm, Coefficient, ExactComplex, LaurentPoly};
use crate::{Error, Result};

/// Riccati recurrence coefficients `a_0..a_K` in the rescaled variable `y`.
///
/// With `D = 1 − σy⁴`, `λ = |A|^{1/4}` and `ĥ = −iℏλ`:
///
/// ```text
/// a_0 = D^{1/2}
/// a_k = −(1/(2a_0)) [ Σ_{i=1}^{k−1} a_i a_{k−i} + ĥ a′_{k−3} + (B/λ) y δ_{k3} + Cλ² y⁻² δ_{k6} ]
/// ```
///
/// For `B = 0` each `a_k` is a single term with `m = k − 1`. A nonzero `B`
/// adds a second term with `m = k − 2`.
pub fn build_coefficients_in<T: Coefficient>(spec: &PotentialSpec, k_max: usize) -> Result<Vec<AlgebraicSum<T>>> {
    let sigma = spec.sigma();
    if sigma.value() > 0 && spec.has_invsq() {
        return Err(Error::Unsupported(
            "an inverse-square term with a positive quartic would put the origin inside the branch contour".into(),
        ));
    }
    let lam = spec.lambda();
    let hh = T::from_c64(Complex64::new(0.0, -spec.hbar * lam));
    let linear = T::from_c64(spec.linear / lam);
    let invsq = T::from_c64(spec.invsq * (lam * lam));
    let inv_a0 = AlgebraicTerm::new(LaurentPoly::one(), 1, sigma);

    let mut a: Vec<AlgebraicSum<T>> = Vec::with_capacity(k_max + 1);
    a.push(AlgebraicSum::from_term(AlgebraicTerm::sqrt_weight(sigma)));
    for k in 1..=k_max {
        let mut bracket = AlgebraicSum::zero(sigma);
        // the convolution is symmetric, so each unordered pair is added twice
        for i in 1..=(k - 1) / 2 {
            if a[i].is_zero() || a[k - i].is_zero() {
                continue;
            }
            let p = a[i].mul(&a[k - i])?;
            bracket = bracket.add(&p.add(&p)?)?;
        }
        if k % 2 == 0 && !a[k / 2].is_zero() {
            bracket = bracket.add(&a[k / 2].mul(&a[k / 2])?)?;
        }
        if k >= 3 && !a[k - 3].is_zero() {
            bracket = bracket.add(&a[k - 3].diff().scale(&hh))?;
        }
        if k == 3 && !linear.is_zero() {
            bracket = bracket.add_term(&AlgebraicTerm::new(LaurentPoly::monomial(1, linear.clone()), 0, sigma))?;
        }
        if k == 6 && !invsq.is_zero() {
            bracket = bracket.add_term(&AlgebraicTerm::new(LaurentPoly::monomial(-2, invsq.clone()), 0, sigma))?;
        }
        let ak = bracket.mul_term(&inv_a0)?.scale(&T::one().halve().neg());
        a.push(ak);
    }
    Ok(a)
}

/// Double-precision coefficients.
pub fn build_coefficients(spec: &PotentialSpec, k_max: usize) -> Result<Vec<AlgebraicSum>> {
    build_coefficients_in::<Complex64>(spec, k_max)
}

/// Coefficients in exact dyadic arithmetic on the double-precision
/// parameter values.
pub fn build_coefficients_exact(spec: &PotentialSpec, k_max: usize) -> Result<Vec<AlgebraicSum<ExactComplex>>> {
    build_coefficients_in::<ExactComplex>(spec, k_max)
}
