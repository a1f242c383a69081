use ghflow::{limit_point, FlowError, FlowOptions, FlowState, NumericFamily, DEFAULT_LIMIT_EPSILON};
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn hyperbola() -> NumericFamily {
    let family = degen::builtin("hyperbola").unwrap().family().unwrap();
    NumericFamily::from_family(&family).unwrap()
}

fn no_generators() -> NumericFamily {
    let family = degen::builtin("sl2").unwrap().family().unwrap();
    NumericFamily::from_family(&family).unwrap()
}

#[test]
fn regular_starts_land_on_the_zero_fiber() {
    let fam = hyperbola();
    let start = FlowState::new(vec![c(2.0), c(0.5)], 1.0);
    let opts = FlowOptions::default();
    let limit = limit_point(&fam, &start, DEFAULT_LIMIT_EPSILON, &opts).unwrap();

    // Conservation forces |z1|^2 - |z2|^2 = 15/4 with z2 -> 0.
    assert!((limit.z[0].norm_sqr() - 15.0 / 4.0).abs() < 1e-6);
    assert!(limit.z[1].norm() < 1e-6);
    assert!(limit.error_estimate < 1e-5);
    assert!(limit.residual <= limit.error_estimate + 1e-8);

    let psi_start = fam.psi(&start.z);
    let psi_limit = fam.psi(&limit.z);
    for (a, b) in psi_limit.iter().zip(&psi_start) {
        assert!((a - b).abs() < 1e-5);
    }
}

#[test]
fn rotated_starts_land_with_the_same_moment_image() {
    let fam = hyperbola();
    let z1 = Complex64::from_polar(2.0, std::f64::consts::FRAC_PI_3);
    let z2 = c(1.0) / z1;
    let start = FlowState::new(vec![z1, z2], 1.0);
    let opts = FlowOptions::default();
    let limit = limit_point(&fam, &start, DEFAULT_LIMIT_EPSILON, &opts).unwrap();
    assert!((limit.z[0].norm_sqr() - 15.0 / 4.0).abs() < 1e-5);
    assert!(limit.z[1].norm() < 1e-6);
    let psi_start = fam.psi(&start.z);
    let psi_limit = fam.psi(&limit.z);
    for (a, b) in psi_limit.iter().zip(&psi_start) {
        assert!((a - b).abs() < 1e-5);
    }
}

#[test]
fn the_symmetric_start_collapses_to_the_singular_origin() {
    let fam = hyperbola();
    let start = FlowState::new(vec![c(1.0), c(1.0)], 1.0);
    let opts = FlowOptions::default();
    let limit = limit_point(&fam, &start, DEFAULT_LIMIT_EPSILON, &opts).unwrap();

    // Convergence toward the cone point goes like sqrt(t), so the
    // extrapolation is honest about its resolution: the limit is the origin
    // only to within the reported error, which is far looser here than for
    // regular starts.
    assert!(limit.error_estimate < 1e-2);
    assert!(limit.error_estimate > 1e-4);
    for zi in &limit.z {
        assert!(zi.norm() <= limit.error_estimate + 1e-2);
        assert!(zi.norm() < 1e-2);
    }
    assert!(limit.residual <= limit.error_estimate);
}

#[test]
fn families_without_generators_translate_in_the_parameter_only() {
    let fam = no_generators();
    let z = vec![Complex64::new(0.3, 0.4), c(-2.0)];
    let start = FlowState::new(z.clone(), 1.0);
    let opts = FlowOptions::default();
    let limit = limit_point(&fam, &start, DEFAULT_LIMIT_EPSILON, &opts).unwrap();
    for (a, b) in limit.z.iter().zip(&z) {
        assert!((a - b).norm() < 1e-12);
    }
    assert!(limit.error_estimate < 1e-12);
    assert_eq!(limit.residual, 0.0);
}

#[test]
fn extrapolation_requires_room_below_the_start() {
    let fam = hyperbola();
    let start = FlowState::new(vec![c(2.0), c(0.5)], 0.5e-3);
    let opts = FlowOptions::default();
    assert!(matches!(
        limit_point(&fam, &start, DEFAULT_LIMIT_EPSILON, &opts),
        Err(FlowError::InvalidTimes(_))
    ));
}
