use std::f64::consts::TAU;

use proptest::prelude::*;
use vortex_cd::observables::{
    circular_dichroism, linear_grid, rate_asymmetry, scan_profile, ObservableKind, ProfileRequest,
};
use vortex_cd::paraxial::{paraxial_a_lambda, paraxial_cd};
use vortex_cd::{Helicity, RadialProfile64, SpinPair, TransitionSpec};

fn cd(mbar: i32, l: u32, t: f64, b: f64) -> f64 {
    circular_dichroism(mbar, TransitionSpec::new(l).unwrap(), t, b).unwrap()
}

fn asym(mbar: i32, l: u32, t: f64, b: f64) -> f64 {
    rate_asymmetry(mbar, TransitionSpec::new(l).unwrap(), t, b).unwrap()
}

#[test]
fn vortex_centre_values() {
    assert!((cd(1, 2, 0.1, 0.0) - 1.0).abs() < 1e-6);
    assert!((asym(1, 2, 0.01, 0.0) + 0.2).abs() < 2e-3);
    assert_eq!(asym(1, 1, 0.2, 0.0), -1.0);
    // the dipole asymmetry at the centre is -1 for every mbar >= 1
    assert_eq!(asym(2, 1, 0.2, 0.0), -1.0);
    assert_eq!(asym(4, 1, 0.2, 0.0), -1.0);
}

#[test]
fn zero_cd_cases() {
    let grid = linear_grid(0.0, 2.0, 400).unwrap();
    for t in [0.05, 0.1, 0.5, 1.0] {
        for &b in grid.iter().step_by(7) {
            for mbar in -4..=4 {
                assert!(cd(mbar, 1, t, b).abs() < 1e-12);
            }
            for l in 1..=3 {
                assert!(cd(0, l, t, b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn paraxial_convergence() {
    for l in 1..=3 {
        for mbar in 1..=4 {
            for i in 0..25 {
                let x = 10.0 * f64::from(i) / 24.0;
                let b = x / TAU;
                let a_ref: f64 = paraxial_a_lambda(mbar, l, x).unwrap();
                let c_ref: f64 = paraxial_cd(mbar, l, x).unwrap();
                assert!((asym(mbar, l, 0.01, b) - a_ref).abs() < 1e-3);
                assert!((cd(mbar, l, 0.01, b) - c_ref).abs() < 1e-3);
            }
        }
    }
}

#[test]
fn pitch_angle_plateau() {
    let b = 0.25;
    for l in 2..=3 {
        for mbar in 1..=3 {
            let reference: f64 = paraxial_cd(mbar, l, TAU * b).unwrap();
            for i in 1..=50 {
                let t = 0.005 * f64::from(i);
                assert!((cd(mbar, l, t, b) - reference).abs() < 0.02, "mbar={mbar} l={l} t={t}");
            }
        }
    }
}

#[test]
fn cd_dies_off_beyond_a_wavelength() {
    for l in 2..=3 {
        for mbar in 1..=3 {
            for i in 0..=50 {
                let b = 1.5 + 0.01 * f64::from(i);
                assert!(cd(mbar, l, 0.1, b).abs() < 0.05);
            }
        }
    }
}

#[test]
fn aperture_average_tends_to_zero() {
    // flux-weighted average of the local CD over a growing disc
    let pair = SpinPair::new(1, 0.1, 1.0).unwrap();
    let tr = TransitionSpec::E2;
    let avg = |radius: f64| {
        let n = 4000;
        let (mut num, mut den) = (0.0, 0.0);
        for i in 1..=n {
            let b = radius * f64::from(i) / f64::from(n);
            let w = b * vortex_cd::beam::flux(&pair.plus, b).unwrap();
            num += w * pair.circular_dichroism(tr, b).unwrap();
            den += w;
        }
        num / den
    };
    let (near, far) = (avg(1.0), avg(20.0));
    assert!(far.abs() < near.abs());
    assert!(far.abs() < 0.02, "{far}");
}

#[test]
fn profile_scan_preserves_grid_order_and_round_trips() {
    let grid = linear_grid(0.0, 2.0, 64).unwrap();
    let req = ProfileRequest::pair(ObservableKind::Cd, 2, TransitionSpec::E3, 0.2);
    let p = scan_profile(&req, &grid).unwrap();
    for (pt, &b) in p.points.iter().zip(&grid) {
        assert_eq!(pt.b, b);
        assert_eq!(pt.value, Some(cd(2, 3, 0.2, b)));
    }
    let s = serde_json::to_string(&p).unwrap();
    let back: RadialProfile64 = serde_json::from_str(&s).unwrap();
    assert_eq!(back, p);
}

#[test]
fn single_beam_scans() {
    let grid = linear_grid(0.0, 1.0, 11).unwrap();
    let mut req = ProfileRequest::pair(ObservableKind::SigmaRatio, 1, TransitionSpec::E2, 0.1);
    assert!(scan_profile(&req, &grid).is_err());
    req.helicity = Some(Helicity::Plus);
    let p = scan_profile(&req, &grid).unwrap();
    assert_eq!(p.points[0].value, None);
    assert!(p.points[1..].iter().all(|pt| pt.value.is_some_and(|v| v > 0.0)));
    req.kind = ObservableKind::Flux;
    req.transition = None;
    assert!(scan_profile(&req, &grid).unwrap().points[0].value == Some(0.0));
    assert!(scan_profile(&req, &[0.3, 0.1]).is_err());
    assert!(scan_profile(&req, &[]).is_err());
}

#[test]
fn single_precision_pair() {
    let v32: f32 = circular_dichroism(1, TransitionSpec::E2, 0.1f32, 0.3f32).unwrap();
    let v64 = cd(1, 2, 0.1, 0.3);
    assert!((f64::from(v32) - v64).abs() < 1e-4);
}

proptest! {
    #[test]
    fn bounded(mbar in -6i32..=6, l in 1u32..=4, t in 0.01f64..1.5, b in 0.0f64..4.0) {
        prop_assert!(cd(mbar, l, t, b).abs() <= 1.0);
        prop_assert!(asym(mbar, l, t, b).abs() <= 1.0);
    }

    #[test]
    fn antisymmetric_under_mirror(mbar in 1i32..=8, l in 1u32..=4, t in 0.01f64..1.5, b in 0.0f64..4.0) {
        prop_assert!((cd(mbar, l, t, b) + cd(-mbar, l, t, b)).abs() < 1e-12);
        prop_assert!((asym(mbar, l, t, b) + asym(-mbar, l, t, b)).abs() < 1e-12);
    }
}
