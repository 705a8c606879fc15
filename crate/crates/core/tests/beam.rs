use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use vortex_cd::beam::{berry_phase, flux, to_cartesian, vector_potential, CylPoint};
use vortex_cd::{BeamSpec, BeamSpec32, Helicity};

fn hel(s: bool) -> Helicity {
    if s {
        Helicity::Plus
    } else {
        Helicity::Minus
    }
}

// J_n by its power series, summed in f64; adequate for x < 10
fn j_series(n: i32, x: f64) -> f64 {
    let m = n.unsigned_abs() as i32;
    let mut term = (0.5 * x).powi(m) / (1..=m).map(f64::from).product::<f64>();
    let mut sum = term;
    for k in 1..80 {
        term *= -(0.25 * x * x) / (f64::from(k) * f64::from(k + m));
        sum += term;
    }
    if n < 0 && m % 2 == 1 {
        -sum
    } else {
        sum
    }
}

#[test]
fn closed_form_flux() {
    let (t, mbar) = (0.4f64, 2);
    for lam in [1, -1] {
        let bm = BeamSpec::unit(mbar, Helicity::from_sign(lam).unwrap(), t).unwrap();
        let (omega, kappa) = (TAU, TAU * t.sin());
        let mg = mbar + lam;
        for &r in &[0.0, 0.05, 0.3, 0.9, 1.6] {
            let x = kappa * r;
            let want = t.cos() * kappa * omega * omega / TAU
                * ((t / 2.0).cos().powi(4) * j_series(mg - lam, x).powi(2)
                    + (t / 2.0).sin().powi(4) * j_series(mg + lam, x).powi(2)
                    + t.sin().powi(2) / 2.0 * j_series(mg, x).powi(2));
            let got = flux(&bm, r).unwrap();
            assert!((got - want).abs() <= 1e-13 * want.abs().max(1e-300), "r={r}: {got} vs {want}");
        }
    }
}

#[test]
fn kinematics_and_validation() {
    let bm = BeamSpec::new(-3, Helicity::Minus, 0.3, 0.5).unwrap();
    let k = bm.kinematics();
    assert!((k.omega - 4.0 * PI).abs() < 1e-15);
    assert!((k.kappa - 4.0 * PI * 0.3f64.sin()).abs() < 1e-14);
    assert!((k.k_z - 4.0 * PI * 0.3f64.cos()).abs() < 1e-14);
    assert_eq!(k.m_gamma, -4);
    assert!(BeamSpec::unit(1, Helicity::Plus, 0.0).is_err());
    assert!(BeamSpec::unit(1, Helicity::Plus, PI / 2.0).is_err());
    assert!(BeamSpec::new(1, Helicity::Plus, 0.1, -1.0).is_err());
    assert!(BeamSpec::unit(49, Helicity::Plus, 0.1).is_err());
    assert!(flux(&bm, -0.1).is_err());
}

#[test]
fn berry_phase_value() {
    let bm = BeamSpec::unit(1, Helicity::Plus, 0.1).unwrap();
    assert!((berry_phase::<f64>(&bm) - 0.031_389_755_322_205_774).abs() < 1e-15);
}

#[test]
fn small_rho_power_law() {
    for mbar in -3..=3 {
        for lam in [1, -1] {
            let bm = BeamSpec::unit(mbar, Helicity::from_sign(lam).unwrap(), 0.2).unwrap();
            let mg = bm.m_gamma();
            let order = (mg - lam).abs().min((mg + lam).abs()).min(mg.abs());
            let (r0, r1) = (1e-6f64, 1e-4);
            let slope = (flux(&bm, r1).unwrap() / flux(&bm, r0).unwrap()).ln() / (r1 / r0).ln();
            assert!((slope - f64::from(2 * order)).abs() < 0.01 * f64::from(2 * order).max(1.0));
        }
    }
}

#[test]
fn single_precision_tracks_double() {
    let b64 = BeamSpec::unit(1, Helicity::Minus, 0.3).unwrap();
    let b32: BeamSpec32 = BeamSpec::unit(1, Helicity::Minus, 0.3f32).unwrap();
    for &r in &[0.0, 0.2, 0.7, 1.4] {
        let (a, b) = (flux(&b64, r).unwrap(), flux(&b32, r as f32).unwrap());
        assert!((f64::from(b) - a).abs() < 1e-5 * a.max(1.0));
    }
}

proptest! {
    #[test]
    fn flux_is_nonnegative(mbar in -20i32..=20, s: bool, t in 0.01f64..1.5, r in 0.0f64..30.0) {
        let bm = BeamSpec::unit(mbar, hel(s), t).unwrap();
        prop_assert!(flux(&bm, r).unwrap() >= 0.0);
    }

    #[test]
    fn flux_matches_field_intensity(mbar in -6i32..=6, s: bool, t in 0.01f64..1.5, r in 0.0f64..5.0,
                                    phi in 0.0f64..TAU, z in -3.0f64..3.0) {
        let bm = BeamSpec::unit(mbar, hel(s), t).unwrap();
        let a = vector_potential(&bm, &CylPoint::new(r, phi, z, 0.25).unwrap());
        let e = to_cartesian(&a);
        let f = flux(&bm, r).unwrap();
        let want = t.cos() * TAU * TAU * e.norm_sqr();
        prop_assert!((f - want).abs() <= 1e-12 * f.max(1e-12));
    }

    #[test]
    fn component_moduli_ignore_azimuth(mbar in -6i32..=6, s: bool, t in 0.01f64..1.5, r in 0.0f64..5.0,
                                       phi in 0.0f64..TAU) {
        let bm = BeamSpec::unit(mbar, hel(s), t).unwrap();
        let a = vector_potential(&bm, &CylPoint::on_axis_plane(r).unwrap());
        let b = vector_potential(&bm, &CylPoint::new(r, phi, 0.0, 0.0).unwrap());
        prop_assert!((a.a_plus.norm() - b.a_plus.norm()).abs() < 1e-14);
        prop_assert!((a.a_minus.norm() - b.a_minus.norm()).abs() < 1e-14);
        prop_assert!((a.a_zero.norm() - b.a_zero.norm()).abs() < 1e-14);
    }

    #[test]
    fn flux_mirror_symmetry(mbar in -20i32..=20, s: bool, t in 0.01f64..1.5, r in 0.0f64..10.0) {
        let bm = BeamSpec::unit(mbar, hel(s), t).unwrap();
        let f = flux(&bm, r).unwrap();
        let g = flux(&bm.mirrored(), r).unwrap();
        prop_assert!((f - g).abs() <= 1e-14 * f.max(1.0));
    }
}
