mod common;

use common::rel;
use isospectral::aee::PotentialSpec;
use isospectral::spectra::{find_eigenvalue, scan_spectrum, ContourPath, RkOptions, ScanOptions};
use isospectral::{Complex64, Error};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn quartic_ground_state_matches_its_hermitian_partner() {
    // p² − x⁴ on the wedge pair against p² + 4x⁴ − 2x on the real line
    let big_h = PotentialSpec::new(-1.0, c(0.0, 0.0), c(0.0, 0.0), 1.0).unwrap();
    let h = PotentialSpec::hermitian_quartic(4.0, c(-2.0, 0.0), 1.0).unwrap();
    let opts = ScanOptions::default();
    let e1 = scan_spectrum(&big_h, None, 0, None, &opts).unwrap();
    let e2 = scan_spectrum(&h, None, 0, None, &opts).unwrap();
    assert!(e1.is_complete(0) && e2.is_complete(0));
    let (a, b) = (e1.levels[0].energy, e2.levels[0].energy);
    assert!(rel(a, b) < 1e-9, "{a} vs {b}");
    assert!(a.im.abs() < 1e-7);
}

#[test]
fn quartic_scaling_on_the_real_line() {
    // rescaling x shows E_n(α) = α^{1/3} E_n(1) at ℏ = 1
    let opts = ScanOptions::default();
    let e1 = scan_spectrum(&PotentialSpec::hermitian_quartic(1.0, c(0.0, 0.0), 1.0).unwrap(), None, 2, None, &opts).unwrap();
    let e8 = scan_spectrum(&PotentialSpec::hermitian_quartic(8.0, c(0.0, 0.0), 1.0).unwrap(), None, 2, None, &opts).unwrap();
    for n in 0..=2 {
        assert!(rel(e8.levels[n].energy, e1.levels[n].energy * 2.0) < 1e-9);
    }
    // the pure quartic ground state, a standard reference value
    assert!((e1.levels[0].energy.re - 1.0603620904841828).abs() < 1e-9);
}

#[test]
fn unbroken_levels_are_real() {
    let opts = ScanOptions::default();
    for a in [-2.5, 0.5, 3.0] {
        let spec = PotentialSpec::pt_quartic(1.0, a, 1.0).unwrap();
        let r = scan_spectrum(&spec, None, 5, None, &opts).unwrap();
        assert!(r.is_complete(5), "{:?}", r.warnings);
        for l in &r.levels {
            assert!(l.energy.im.abs() < 1e-7 * l.energy.re.abs().max(1.0), "a={a} {}", l.energy);
        }
        assert!(r.levels.windows(2).all(|w| w[0].energy.re < w[1].energy.re));
    }
}

#[test]
fn broken_levels_come_in_conjugate_pairs() {
    let spec = PotentialSpec::pt_quartic(1.0, -3.5, 1.0).unwrap();
    let rk = RkOptions::default();
    let path = ContourPath::contour_for_energy(&spec, 5.5);
    let up = find_eigenvalue(&spec, &path, c(5.4, 1.3), &rk).unwrap().energy;
    let down = find_eigenvalue(&spec, &path, c(5.4, -1.3), &rk).unwrap().energy;
    assert!(up.im > 0.5);
    assert!((up - down.conj()).norm() < 1e-8 * up.norm(), "{up} {down}");
}

#[test]
fn turning_point_at_a_ray_end_is_reported() {
    // V − E vanishes at x = ±1.5 for p² + x⁴ with E = 1.5⁴
    let spec = PotentialSpec::hermitian_quartic(1.0, c(0.0, 0.0), 1.0).unwrap();
    let path = ContourPath::real_line(1.5);
    let err = find_eigenvalue(&spec, &path, c(1.5f64.powi(4), 0.0), &RkOptions::default()).unwrap_err();
    assert!(matches!(err, Error::TurningPointOnPath(_)), "{err:?}");
}

#[test]
fn invalid_paths_are_rejected() {
    let spec = PotentialSpec::pt_quartic(1.0, 6.0, 1.0).unwrap();
    // the real line leaves the decay sectors of −x⁴ and crosses the origin
    let err = find_eigenvalue(&spec, &ContourPath::real_line(6.0), c(10.0, 0.0), &RkOptions::default());
    assert!(err.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn eigenvalues_are_stable_under_contour_deformation(dx in -0.3f64..0.3, dy in -0.25f64..0.25, ex in -0.3f64..0.3, ey in -0.25f64..0.25) {
        let spec = PotentialSpec::pt_quartic(1.0, 6.0, 1.0).unwrap();
        let rk = RkOptions::default();
        for seed in [-2.4558, 10.93, 33.21] {
            let path = ContourPath::contour_for_energy(&spec, f64::abs(seed));
            let moved = path.perturbed(&[c(dx, dy), c(ex, ey)]);
            prop_assume!(moved.validate(&spec).is_ok());
            let e0 = find_eigenvalue(&spec, &path, c(seed, 0.0), &rk).unwrap().energy;
            let e1 = find_eigenvalue(&spec, &moved, c(seed, 0.0), &rk).unwrap().energy;
            prop_assert!(rel(e1, e0) < 1e-8, "{e0} {e1}");
        }
    }
}
