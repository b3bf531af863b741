use isospectral::aee::{build_coefficients, PotentialSpec};
use isospectral::seriesalg::{at_add, at_diff, at_mul, AlgebraicTerm, Coefficient, ExactComplex, LaurentPoly, Sigma};
use isospectral::Complex64;
use proptest::prelude::*;

fn exact_poly() -> impl Strategy<Value = LaurentPoly<ExactComplex>> {
    prop::collection::vec((-4i32..=6, -9i64..=9, -9i64..=9), 0..5).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(e, re, im)| {
            let c = ExactComplex::from_complex64(Complex64::new(re as f64, im as f64));
            (e, c)
        }))
    })
}

fn float_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i32..=5, -2.0f64..2.0, -2.0f64..2.0), 1..5)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, re, im)| (e, Complex64::new(re, im)))))
}

fn sigma() -> impl Strategy<Value = Sigma> {
    prop_oneof![Just(Sigma::Plus), Just(Sigma::Minus)]
}

/// A point at least 0.2 from every root of `D` and from the origin, off the
/// principal branch cut of the square root.
fn safe_point(s: Sigma) -> impl Strategy<Value = Complex64> {
    (0.3f64..1.6, -3.1f64..3.1).prop_filter_map("too close to a branch point", move |(r, th)| {
        let y = Complex64::from_polar(r, th);
        let d = s.weight_at(y);
        let near_root = (0..4).any(|k| {
            let root = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * if s == Sigma::Plus { 2.0 * k as f64 } else { 2.0 * k as f64 + 1.0 });
            (y - root).norm() < 0.2
        });
        (!near_root && d.re > -0.9 * d.norm() + 0.05).then_some(y)
    })
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

proptest! {
    #[test]
    fn ring_axioms_hold_exactly(p in exact_poly(), q in exact_poly(), r in exact_poly()) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn leibniz_rule_holds_exactly(p in exact_poly(), q in exact_poly()) {
        let lhs = p.mul(&q).derivative();
        let rhs = p.derivative().mul(&q).add(&p.mul(&q.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_bounds(p in exact_poly(), q in exact_poly()) {
        if let (Some(a), Some(b)) = (p.max_exp(), q.max_exp()) {
            // Gaussian integers have no zero divisors, so extreme terms survive
            prop_assert_eq!(p.mul(&q).max_exp(), Some(a + b));
            prop_assert_eq!(p.mul(&q).min_exp(), Some(p.min_exp().unwrap() + q.min_exp().unwrap()));
        }
        let d = p.derivative();
        if let (Some(hi), Some(dhi)) = (p.max_exp(), d.max_exp()) {
            prop_assert!(dhi < hi);
            prop_assert!(d.min_exp().unwrap() >= p.min_exp().unwrap() - 1);
        }
    }

    #[test]
    fn canonical_form_has_no_zero_coefficients(p in exact_poly(), q in exact_poly()) {
        for s in [p.add(&q), p.mul(&q), p.sub(&q).derivative()] {
            prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
        }
    }

    #[test]
    fn at_diff_matches_central_differences(s in sigma(), num in float_poly(), m in -3i32..6,
                                           pts in prop::collection::vec((0.3f64..1.6, -3.1f64..3.1), 5)) {
        let t = AlgebraicTerm::new(num, m, s);
        let dt = at_diff(&t);
        let mut checked = 0;
        for (r, th) in pts {
            let y = Complex64::from_polar(r, th);
            let d = s.weight_at(y);
            // stay clear of the roots of D and of the cut of the principal root
            if d.norm() < 0.2 || (d.re < 0.0 && d.im.abs() < 0.2) {
                continue;
            }
            let h = 1e-5;
            let fd = (t.eval(y + h) - t.eval(y - h)) / (2.0 * h);
            let exact = dt.eval(y);
            if exact.norm() < 1e-6 {
                continue;
            }
            prop_assert!(rel(fd, exact) < 1e-6, "y={y} fd={fd} exact={exact}");
            checked += 1;
        }
        prop_assume!(checked > 0);
    }

    #[test]
    fn add_and_mul_agree_with_pointwise_values(s in sigma(), p in float_poly(), q in float_poly(), m in -2i32..4, dm in 0i32..3) {
        let u = AlgebraicTerm::new(p, m, s);
        let v = AlgebraicTerm::new(q, m + 2 * dm, s);
        let y = Complex64::new(0.45, 0.3);
        prop_assert!(rel(at_mul(&u, &v).unwrap().eval(y), u.eval(y) * v.eval(y)) < 1e-12);
        prop_assert!((at_add(&u, &v).unwrap().eval(y) - (u.eval(y) + v.eval(y))).norm() < 1e-12 * (u.eval(y).norm() + v.eval(y).norm()));
    }

    #[test]
    fn odd_separation_is_rejected(s in sigma(), p in float_poly(), m in -2i32..4) {
        let u = AlgebraicTerm::new(p.clone(), m, s);
        let v = AlgebraicTerm::new(p, m + 1, s);
        prop_assert!(at_add(&u, &v).is_err());
    }
}

/// Truncated Taylor series around a point, used to evaluate the recurrence
/// numerically without any algebraic representation of `a_k`.
#[derive(Clone, Debug)]
struct Jet(Vec<Complex64>);

const ORDER: usize = 10;

impl Jet {
    fn constant(c: Complex64) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); ORDER + 1];
        v[0] = c;
        Jet(v)
    }
    fn variable(y0: Complex64) -> Self {
        let mut j = Jet::constant(y0);
        j.0[1] = Complex64::new(1.0, 0.0);
        j
    }
    fn add(&self, o: &Jet) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
    fn scale(&self, c: Complex64) -> Jet {
        Jet(self.0.iter().map(|a| a * c).collect())
    }
    fn mul(&self, o: &Jet) -> Jet {
        let mut v = vec![Complex64::new(0.0, 0.0); ORDER + 1];
        for i in 0..=ORDER {
            for j in 0..=ORDER - i {
                v[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(v)
    }
    fn recip(&self) -> Jet {
        let mut v = vec![Complex64::new(0.0, 0.0); ORDER + 1];
        v[0] = 1.0 / self.0[0];
        for n in 1..=ORDER {
            let s: Complex64 = (1..=n).map(|i| self.0[i] * v[n - i]).sum();
            v[n] = -s * v[0];
        }
        Jet(v)
    }
    fn sqrt(&self) -> Jet {
        let mut v = vec![Complex64::new(0.0, 0.0); ORDER + 1];
        v[0] = self.0[0].sqrt();
        for n in 1..=ORDER {
            let s: Complex64 = (1..n).map(|i| v[i] * v[n - i]).sum();
            v[n] = (self.0[n] - s) / (2.0 * v[0]);
        }
        Jet(v)
    }
    fn derivative(&self) -> Jet {
        let mut v: Vec<Complex64> = (1..=ORDER).map(|i| self.0[i] * i as f64).collect();
        v.push(Complex64::new(0.0, 0.0));
        Jet(v)
    }
}

fn recurrence_by_jets(spec: &PotentialSpec, y0: Complex64, k_max: usize) -> Vec<Complex64> {
    let lam = spec.lambda();
    let sigma = spec.quartic.signum();
    let y = Jet::variable(y0);
    let y2 = y.mul(&y);
    let d = Jet::constant(Complex64::new(1.0, 0.0)).add(&y2.mul(&y2).scale(Complex64::new(-sigma, 0.0)));
    let a0 = d.sqrt();
    let inv = a0.recip();
    let hh = Complex64::new(0.0, -spec.hbar * lam);
    let mut a = vec![a0];
    for k in 1..=k_max {
        let mut br = Jet::constant(Complex64::new(0.0, 0.0));
        for i in 1..k {
            br = br.add(&a[i].mul(&a[k - i]));
        }
        if k >= 3 {
            br = br.add(&a[k - 3].derivative().scale(hh));
        }
        if k == 3 {
            br = br.add(&y.scale(spec.linear / lam));
        }
        if k == 6 {
            br = br.add(&y2.recip().scale(spec.invsq * lam * lam));
        }
        a.push(br.mul(&inv).scale(Complex64::new(-0.5, 0.0)));
    }
    a.iter().map(|j| j.0[0]).collect()
}

fn family() -> impl Strategy<Value = PotentialSpec> {
    prop_oneof![
        (0.3f64..3.0, -3.0f64..8.0, 0.5f64..2.0).prop_map(|(g, a, h)| PotentialSpec::pt_quartic(g, a, h).unwrap()),
        (0.3f64..3.0, -3.0f64..8.0, -3.0f64..3.0, 0.5f64..2.0)
            .prop_map(|(al, br, bi, h)| PotentialSpec::hermitian_quartic(al, Complex64::new(br, bi), h).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_matches_direct_evaluation(spec in family(), y0 in safe_point(Sigma::Minus), flip in any::<bool>()) {
        // the sampled point is safe for σ = −1; for σ = +1 rotate it by π/4
        let y0 = if spec.quartic > 0.0 { y0 * Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4) } else { y0 };
        let y0 = if flip { y0.conj() } else { y0 };
        let s = spec.sigma();
        let d = s.weight_at(y0);
        prop_assume!(d.norm() > 0.05 && !(d.re < 0.0 && d.im.abs() < 0.05));
        let k_max = 18;
        let oracle = recurrence_by_jets(&spec, y0, k_max);
        let built = build_coefficients(&spec, k_max).unwrap();
        for k in 0..=k_max {
            let v = built[k].eval(y0);
            let scale = oracle[k].norm().max(v.norm());
            if scale == 0.0 {
                continue;
            }
            prop_assert!((v - oracle[k]).norm() < 1e-10 * scale, "k={k} built={v} oracle={}", oracle[k]);
        }
    }
}
