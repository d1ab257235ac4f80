//! Monte Carlo estimates checked against the exact volume and distance paths.

use cutgeom::ball::{ball_distance_finite, slab_volume_exact, BallSlabSpec};
use cutgeom::cube::{diag_cut_distance, diag_cut_threshold, halfspace_cube_volume, CubeConfig, CubeCutSpec, NormalVector};
use cutgeom::mc::{estimate_halfspace_volume, estimate_set_distance, Body, Halfspace, McConfig, McTarget};
use cutgeom::specfun::irwin_hall_cdf;
use cutgeom::ToleranceConfig;

fn mc(seed: u64, samples: usize) -> McConfig {
    McConfig { seed, samples, workers: 4 }
}

#[test]
fn irwin_hall_against_sampling() {
    let cut = CubeCutSpec::diagonal(10, 4.0).unwrap();
    let est = estimate_halfspace_volume(&McTarget::CubeCut(cut), &mc(1, 1_000_000)).unwrap();
    assert!(est.contains(irwin_hall_cdf(10, 4.0).unwrap(), 3.0));
}

#[test]
fn ball_slab_against_sampling() {
    let tol = ToleranceConfig::default();
    for n in [3, 10, 50] {
        let slab = BallSlabSpec::new(n, 0.2).unwrap();
        let exact = slab_volume_exact(n, 0.2, &tol).unwrap().value;
        let est = estimate_halfspace_volume(&McTarget::BallSlab(slab), &mc(n as u64, 400_000)).unwrap();
        assert!(est.contains(exact, 3.0), "n={n}: {} vs {exact}", est.mean);
    }
    // 3-ball zone π(R²d - d³/3) at d = 0.1, mpmath.
    let slab = BallSlabSpec::new(3, 0.1).unwrap();
    let est = estimate_halfspace_volume(&McTarget::BallSlab(slab), &mc(77, 1_000_000)).unwrap();
    assert!(est.contains(0.119_852_199_000_038_63, 3.0));
}

#[test]
fn confidence_interval_coverage() {
    let exact = irwin_hall_cdf(5, 2.0).unwrap();
    let cut = CubeCutSpec::diagonal(5, 2.0).unwrap();
    let covered = (0..100)
        .filter(|&seed| {
            let est = estimate_halfspace_volume(&McTarget::CubeCut(cut.clone()), &mc(seed, 20_000)).unwrap();
            est.ci95_low <= exact && exact <= est.ci95_high
        })
        .count();
    assert!(covered >= 90, "covered {covered} of 100");
}

#[test]
fn reduction_preserves_volume_under_sampling() {
    let normal = NormalVector::from_direction(&[0.4, 0.0, 0.9, 0.3]).unwrap();
    let cut = CubeCutSpec::new(normal, 0.7).unwrap();
    let exact = halfspace_cube_volume(&cut, &CubeConfig::default()).unwrap().value;
    let est = estimate_halfspace_volume(&McTarget::CubeCut(cut), &mc(4, 500_000)).unwrap();
    assert!(est.contains(exact, 3.0));
}

#[test]
fn diagonal_set_distance_is_an_upper_bound() {
    let n = 5;
    let eps = 0.2;
    let tol = ToleranceConfig::default();
    let a = diag_cut_threshold(n, eps, &tol).unwrap();
    let lower = Halfspace::new(vec![1.0; n], a);
    let upper = Halfspace::new(vec![-1.0; n], a - n as f64);
    let est = estimate_set_distance(Body::Cube, n, &lower, &upper, &mc(9, 100_000)).unwrap();
    let exact = diag_cut_distance(n, eps, &tol).unwrap();
    assert!(est.distance >= exact - 1e-12 && est.distance <= exact + 0.2, "{} vs {exact}", est.distance);
    assert!(est.accepted_a > 0 && est.accepted_b > 0);
}

#[test]
fn ball_set_distance_is_an_upper_bound() {
    let n = 4;
    let eps = 0.25;
    let exact = ball_distance_finite(eps, n, &ToleranceConfig::default()).unwrap();
    let h = 0.5 * exact;
    let mut e1 = vec![0.0; n];
    e1[0] = 1.0;
    let cap_a = Halfspace::new(e1.iter().map(|v| -v).collect(), -h);
    let cap_b = Halfspace::new(e1, -h);
    let est = estimate_set_distance(Body::Ball, n, &cap_a, &cap_b, &mc(3, 40_000)).unwrap();
    assert!(est.distance >= exact - 1e-12);
    // Each cap holds about eps of the samples.
    let frac = est.accepted_a as f64 / est.samples as f64;
    assert!((frac - eps).abs() < 0.01);
}

#[test]
fn set_distance_shrinks_with_budget() {
    let n = 3;
    let tol = ToleranceConfig::default();
    let a = diag_cut_threshold(n, 0.15, &tol).unwrap();
    let lower = Halfspace::new(vec![1.0; n], a);
    let upper = Halfspace::new(vec![-1.0; n], a - n as f64);
    let mean = |samples: usize| {
        (0..20)
            .map(|seed| estimate_set_distance(Body::Cube, n, &lower, &upper, &mc(seed, samples)).unwrap().distance)
            .sum::<f64>()
            / 20.0
    };
    let (small, medium, large) = (mean(500), mean(2_000), mean(8_000));
    assert!(small >= medium && medium >= large, "{small} {medium} {large}");
}

#[test]
fn estimates_are_independent_of_workers() {
    let normal = NormalVector::from_direction(&[0.2, 0.5, 0.1]).unwrap();
    let target = McTarget::CubeCut(CubeCutSpec::new(normal, 0.3).unwrap());
    let base = estimate_halfspace_volume(&target, &McConfig { seed: 5, samples: 100_003, workers: 1 }).unwrap();
    for workers in [2, 8] {
        let other = estimate_halfspace_volume(&target, &McConfig { seed: 5, samples: 100_003, workers }).unwrap();
        assert_eq!(base, other);
    }
    let lower = Halfspace::new(vec![1.0, 1.0], 0.5);
    let upper = Halfspace::new(vec![-1.0, -1.0], -1.5);
    let d1 = estimate_set_distance(Body::Cube, 2, &lower, &upper, &McConfig { seed: 8, samples: 50_000, workers: 1 }).unwrap();
    let d8 = estimate_set_distance(Body::Cube, 2, &lower, &upper, &McConfig { seed: 8, samples: 50_000, workers: 8 }).unwrap();
    assert_eq!(d1, d8);
}
