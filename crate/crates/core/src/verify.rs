//! Named invariant and oracle checks over the whole library.
//!
//! Every check reports the worst deviation it measured against its
//! tolerance, so a failing run says by how much it failed.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::absorption::{cross_section, rate, TransitionSpec};
use crate::beam::{flux, to_cartesian, vector_potential, BeamSpec, CylPoint, Helicity};
use crate::observables::{circular_dichroism, linear_grid, rate_asymmetry};
use crate::paraxial::{formula, numeric_limit, paraxial_a_lambda, paraxial_cd, table, FormulaKind};
use crate::polarization::{stokes_profile, PolarizationState};
use crate::specfun::{jn, small_d};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
}

type Check = (&'static str, fn() -> Result<(f64, f64, String)>);

/// The registered checks, in report order.
pub const CHECKS: &[Check] = &[
    ("bessel_parity", bessel_parity),
    ("bessel_recurrence", bessel_recurrence),
    ("wigner_orthogonality", wigner_orthogonality),
    ("wigner_small_angle", wigner_small_angle),
    ("flux_nonnegative", flux_nonnegative),
    ("flux_field_identity", flux_field_identity),
    ("flux_azimuthal_symmetry", flux_azimuthal_symmetry),
    ("flux_mirror", flux_mirror),
    ("flux_small_rho_power", flux_small_rho_power),
    ("rate_mirror", rate_mirror),
    ("rate_selection_at_centre", rate_selection_at_centre),
    ("rate_bound", rate_bound),
    ("dipole_flux_tracking", dipole_flux_tracking),
    ("cd_exact_zeros", cd_exact_zeros),
    ("spin_observable_bounds", spin_observable_bounds),
    ("mirror_parity", mirror_parity),
    ("cd_vortex_centre", cd_vortex_centre),
    ("asymmetry_vortex_centre", asymmetry_vortex_centre),
    ("cd_die_off", cd_die_off),
    ("pitch_angle_plateau", pitch_angle_plateau),
    ("paraxial_dipole_reduction", paraxial_dipole_reduction),
    ("paraxial_bounds", paraxial_bounds),
    ("paraxial_asymptotics", paraxial_asymptotics),
    ("paraxial_oracle", paraxial_oracle),
    ("paraxial_richardson", paraxial_richardson),
    ("polarization_dipole_invariance", polarization_dipole_invariance),
    ("polarization_circularization", polarization_circularization),
    ("polarization_coherence", polarization_coherence),
    ("polarization_calibration", polarization_calibration),
    ("polarization_centre_stability", polarization_centre_stability),
];

pub fn run(name: &'static str, check: fn() -> Result<(f64, f64, String)>) -> CheckOutcome {
    match check() {
        Ok((worst, tolerance, detail)) => CheckOutcome {
            name,
            passed: worst <= tolerance,
            worst,
            tolerance,
            detail,
        },
        Err(e) => CheckOutcome {
            name,
            passed: false,
            worst: f64::NAN,
            tolerance: f64::NAN,
            detail: format!("error: {e}"),
        },
    }
}

/// Runs every check. Checks run in parallel; results keep registration order.
pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS.par_iter().map(|&(n, c)| run(n, c)).collect()
}

fn beam(mbar: i32, hel: Helicity, theta: f64) -> Result<BeamSpec<f64>> {
    BeamSpec::unit(mbar, hel, theta)
}

fn worst_of<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    it.into_iter().try_fold(0.0f64, |acc, v| Ok(acc.max(v?)))
}

fn bessel_parity() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for n in 0..=64 {
        for &x in &[0.01, 0.7, 3.3, 17.0, 58.0, 140.0] {
            let (a, b) = (jn::<f64>(n, x), jn::<f64>(-n, x));
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max((b - sign * a).abs());
        }
    }
    Ok((worst, 1e-14, "|J_-n - (-1)^n J_n|, 0 <= n <= 64".into()))
}

fn bessel_recurrence() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for n in -40..40 {
        for &x in &[0.2, 1.5, 9.0, 33.0, 80.0] {
            let lhs = jn::<f64>(n - 1, x) + jn::<f64>(n + 1, x);
            let rhs = 2.0 * f64::from(n) / x * jn::<f64>(n, x);
            worst = worst.max((lhs - rhs).abs() / jn::<f64>(n, x).abs().max(1.0));
        }
    }
    Ok((worst, 1e-10, "J_(n-1) + J_(n+1) = (2n/x) J_n".into()))
}

fn wigner_orthogonality() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for l in 1..=6 {
        for &t in &[0.0, 0.01, 0.4, 1.1, 2.5, std::f64::consts::PI] {
            for m1 in -l..=l {
                for m2 in -l..=l {
                    let s: f64 = (-l..=l).map(|m| small_d(l, m, m1, t) * small_d(l, m, m2, t)).sum();
                    let want = if m1 == m2 { 1.0 } else { 0.0 };
                    worst = worst.max((s - want).abs());
                    let sym = small_d(l, m1, m2, t) - small_d(l, m2, m1, t) * if (m1 - m2) % 2 == 0 { 1.0 } else { -1.0 };
                    worst = worst.max(sym.abs());
                }
            }
        }
    }
    Ok((worst, 1e-12, "sum_m d_m,m1 d_m,m2 = delta, d_m1m2 = (-1)^(m1-m2) d_m2m1, l <= 6".into()))
}

fn wigner_small_angle() -> Result<(f64, f64, String)> {
    let t = 1e-3;
    let cases = [
        (2, 2, 1, t),
        (2, 1, 1, 1.0),
        (2, 0, -1, 1.5f64.sqrt() * t),
        (1, 1, 1, 1.0),
        (1, 0, 1, t / 2f64.sqrt()),
    ];
    let worst = cases
        .iter()
        .map(|&(l, m, mp, want)| (small_d(l, m, mp, t).abs() / want - 1.0).abs())
        .fold(0.0, f64::max);
    Ok((worst, 1e-5, "leading small-angle magnitudes at theta = 1e-3".into()))
}

fn flux_grid() -> Vec<f64> {
    (0..=120).map(|i| f64::from(i) * 0.025).collect()
}

fn flux_nonnegative() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for mbar in -4..=4 {
        for hel in [Helicity::Plus, Helicity::Minus] {
            let bm = beam(mbar, hel, 0.3)?;
            for &r in &flux_grid() {
                worst = worst.max(-flux(&bm, r)?);
            }
        }
    }
    Ok((worst, 0.0, "f(rho) >= 0".into()))
}

fn flux_field_identity() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for mbar in [-3, 0, 1, 4] {
        for hel in [Helicity::Plus, Helicity::Minus] {
            let bm = beam(mbar, hel, 0.4)?;
            let w = bm.omega();
            for &r in &flux_grid() {
                let a = vector_potential(&bm, &CylPoint::new(r, 0.9, 0.3, 0.1)?);
                let e = to_cartesian(&a);
                let want = bm.theta_k().cos() * w * w * a.norm_sqr();
                let f = flux(&bm, r)?;
                worst = worst.max((f - want).abs() / f.abs().max(1e-300).max(1e-12));
                worst = worst.max((e.norm_sqr() - a.norm_sqr()).abs());
            }
        }
    }
    Ok((worst, 1e-12, "f = cos(theta) omega^2 |A|^2 and |E_cart| = |A_hel|".into()))
}

fn flux_azimuthal_symmetry() -> Result<(f64, f64, String)> {
    let bm = beam(2, Helicity::Minus, 0.2)?;
    let mut worst = 0.0f64;
    for &r in &flux_grid() {
        let base = vector_potential(&bm, &CylPoint::new(r, 0.0, 0.0, 0.0)?).norm_sqr();
        for &phi in &[0.5, 2.0, 4.1] {
            let v = vector_potential(&bm, &CylPoint::new(r, phi, 1.3, 0.7)?).norm_sqr();
            worst = worst.max((v - base).abs());
        }
    }
    Ok((worst, 1e-14, "|A|^2 independent of phi, z and t".into()))
}

fn flux_mirror() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for mbar in -4..=4 {
        for hel in [Helicity::Plus, Helicity::Minus] {
            let a = beam(mbar, hel, 0.25)?;
            let b = a.mirrored();
            for &r in &flux_grid() {
                worst = worst.max((flux(&a, r)? - flux(&b, r)?).abs());
            }
        }
    }
    Ok((worst, 1e-13, "f(mbar, L) = f(-mbar, -L)".into()))
}

fn flux_small_rho_power() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for mbar in -3..=3 {
        for hel in [Helicity::Plus, Helicity::Minus] {
            let bm = beam(mbar, hel, 0.3)?;
            let mg = bm.m_gamma();
            let lam = hel.sign();
            let order = (mg - lam).abs().min((mg + lam).abs()).min(mg.abs());
            let (r0, r1) = (1e-6, 1e-4);
            let slope = (flux(&bm, r1)? / flux(&bm, r0)?).ln() / (r1 / r0).ln();
            let want = f64::from(2 * order);
            worst = worst.max((slope - want).abs() / want.max(1.0));
        }
    }
    Ok((worst, 1e-2, "log-log slope of f over rho in [1e-6, 1e-4] vs 2 min|n|".into()))
}

fn rate_mirror() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for l in 1..=3 {
        let tr = TransitionSpec::new(l)?;
        for mbar in -4..=4 {
            for hel in [Helicity::Plus, Helicity::Minus] {
                let a = beam(mbar, hel, 0.35)?;
                let b = a.mirrored();
                for &r in &flux_grid() {
                    let (x, y) = (rate(&a, tr, r)?, rate(&b, tr, r)?);
                    if x != y {
                        worst = worst.max((x - y).abs() / x.abs().max(y.abs()));
                    }
                }
            }
        }
    }
    Ok((worst, 1e-13, "Gamma(mbar, L) = Gamma(-mbar, -L), relative".into()))
}

fn rate_selection_at_centre() -> Result<(f64, f64, String)> {
    let mut wrong = 0;
    for l in 1..=3u32 {
        let tr = TransitionSpec::new(l)?;
        for mbar in -5..=5 {
            for hel in [Helicity::Plus, Helicity::Minus] {
                let bm = beam(mbar, hel, 0.2)?;
                let on = rate(&bm, tr, 0.0)? > 0.0;
                if on != (bm.m_gamma().unsigned_abs() <= l) {
                    wrong += 1;
                }
            }
        }
    }
    Ok((f64::from(wrong), 0.0, "Gamma(0) > 0 iff |m_gamma| <= l_f (count of violations)".into()))
}

fn rate_bound() -> Result<(f64, f64, String)> {
    let mut worst = f64::NEG_INFINITY;
    for l in 1..=3 {
        let tr = TransitionSpec::new(l)?;
        for mbar in -3..=3 {
            for hel in [Helicity::Plus, Helicity::Minus] {
                let bm = beam(mbar, hel, 0.5)?;
                let cap = bm.kappa() / std::f64::consts::TAU;
                for &b in &flux_grid() {
                    worst = worst.max(rate(&bm, tr, b)? / cap - 1.0);
                }
            }
        }
    }
    Ok((worst.max(0.0), 1e-14, "Gamma(b) <= kappa / 2pi".into()))
}

fn dipole_flux_tracking() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for mbar in -4..=4 {
        for hel in [Helicity::Plus, Helicity::Minus] {
            for &t in &[0.05, 0.1, 0.5] {
                let bm = beam(mbar, hel, t)?;
                for &b in &linear_grid(0.0, 2.0, 101)? {
                    let s = cross_section(&bm, TransitionSpec::E1, b)?;
                    worst = worst.max((s * t.cos() - 1.0).abs());
                }
            }
        }
    }
    Ok((worst, 1e-12, "E1: sigma / sigma_pw = 1 / cos(theta_k)".into()))
}

fn cd_exact_zeros() -> Result<(f64, f64, String)> {
    let grid = linear_grid(0.0, 2.0, 400)?;
    let mut cases = Vec::new();
    for mbar in -4..=4 {
        cases.push((mbar, 1));
    }
    cases.extend([(0, 2), (0, 3)]);
    let worst = cases
        .par_iter()
        .map(|&(mbar, l)| {
            let tr = TransitionSpec::new(l)?;
            let mut w = 0.0f64;
            for &t in &[0.05f64, 0.1, 0.5, 1.0] {
                for &b in &grid {
                    w = w.max(circular_dichroism(mbar, tr, t, b)?.abs());
                }
            }
            Ok(w)
        })
        .collect::<Vec<_>>();
    Ok((worst_of(worst)?, 1e-12, "CD = 0 for l_f = 1 and for mbar = 0".into()))
}

fn spin_observable_bounds() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for l in 1..=3 {
        let tr = TransitionSpec::new(l)?;
        for mbar in -3..=3 {
            for &b in &flux_grid() {
                worst = worst.max(circular_dichroism(mbar, tr, 0.3, b)?.abs() - 1.0);
                worst = worst.max(rate_asymmetry(mbar, tr, 0.3, b)?.abs() - 1.0);
            }
        }
    }
    Ok((worst, 1e-15, "|CD| <= 1 and |A| <= 1".into()))
}

fn mirror_parity() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for l in 1..=3 {
        let tr = TransitionSpec::new(l)?;
        for mbar in 1..=4 {
            for &b in &flux_grid() {
                let cd = circular_dichroism(mbar, tr, 0.1, b)? + circular_dichroism(-mbar, tr, 0.1, b)?;
                let a = rate_asymmetry(mbar, tr, 0.1, b)? + rate_asymmetry(-mbar, tr, 0.1, b)?;
                worst = worst.max(cd.abs()).max(a.abs());
            }
        }
    }
    Ok((worst, 1e-12, "CD(mbar) = -CD(-mbar), A(mbar) = -A(-mbar)".into()))
}

fn cd_vortex_centre() -> Result<(f64, f64, String)> {
    let v: f64 = circular_dichroism(1, TransitionSpec::E2, 0.1, 0.0)?;
    Ok(((v - 1.0).abs(), 1e-6, format!("CD(mbar=1, E2, theta=0.1, b=0) = {v}")))
}

fn asymmetry_vortex_centre() -> Result<(f64, f64, String)> {
    let v: f64 = rate_asymmetry(1, TransitionSpec::E2, 0.01, 0.0)?;
    Ok(((v + 0.2).abs(), 2e-3, format!("A(mbar=1, E2, theta=0.01, b=0) = {v}")))
}

fn cd_die_off() -> Result<(f64, f64, String)> {
    let grid = linear_grid(1.5, 2.0, 101)?;
    let worst = worst_of(grid.iter().map(|&b| circular_dichroism(1, TransitionSpec::E2, 0.1, b).map(f64::abs)))?;
    Ok((worst, 0.05, "|CD(mbar=1, E2, theta=0.1)| for b in [1.5, 2]".into()))
}

fn pitch_angle_plateau() -> Result<(f64, f64, String)> {
    let b = 0.25;
    let x = std::f64::consts::TAU * b;
    let mut worst = 0.0f64;
    for l in 2..=3 {
        let tr = TransitionSpec::new(l)?;
        for mbar in 1..=3 {
            let reference = paraxial_cd(mbar, l, x)?;
            for i in 1..=250 {
                let t = 0.001 * f64::from(i);
                worst = worst.max((circular_dichroism(mbar, tr, t, b)? - reference).abs());
            }
        }
    }
    Ok((worst, 0.02, "|CD(theta) - CD_paraxial| at b = 0.25, theta in (0, 0.25], l_f in {2, 3}".into()))
}

fn paraxial_dipole_reduction() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for i in 0..=200 {
        let x = 0.05 * f64::from(i);
        worst = worst.max((paraxial_a_lambda(1, 1, x)? + 1.0 / (1.0 + x * x)).abs());
    }
    Ok((worst, 1e-14, "general dipole formula at mbar = 1 equals -1/(1+x^2)".into()))
}

fn paraxial_bounds() -> Result<(f64, f64, String)> {
    let mut worst = 0.0f64;
    for f in table() {
        for i in 0..=1000 {
            let x = 0.05 * f64::from(i);
            worst = worst.max(f.eval(x).abs() - 1.0);
        }
    }
    Ok((worst, 1e-15, "every paraxial formula in [-1, 1] on x in [0, 50]".into()))
}

fn paraxial_asymptotics() -> Result<(f64, f64, String)> {
    let worst = table().iter().map(|f| f.eval(1e3f64).abs()).fold(0.0, f64::max);
    Ok((worst, 1e-4, "|formula(x = 1000)|".into()))
}

fn oracle_pairs() -> Vec<(FormulaKind, i32, u32)> {
    let mut out = Vec::new();
    for l in 2..=3 {
        for mbar in 1..=4 {
            out.push((FormulaKind::Cd, mbar, l));
            out.push((FormulaKind::ALambda, mbar, l));
        }
    }
    for mbar in 1..=4 {
        out.push((FormulaKind::ALambda, mbar, 1));
    }
    out
}

fn paraxial_sweep(theta: Option<f64>) -> Result<f64> {
    let nodes = linear_grid(0.0, 10.0, 25)?;
    let parts = oracle_pairs()
        .par_iter()
        .map(|&(kind, mbar, l)| {
            let f = formula(kind, mbar, l)?;
            let tr = TransitionSpec::new(l)?;
            let mut w = 0.0f64;
            for &x in &nodes {
                let b = x / std::f64::consts::TAU;
                let v = match (theta, kind) {
                    (None, _) => numeric_limit(kind, mbar, l, x)?,
                    (Some(t), FormulaKind::Cd) => circular_dichroism(mbar, tr, t, b)?,
                    (Some(t), FormulaKind::ALambda) => rate_asymmetry(mbar, tr, t, b)?,
                };
                w = w.max((v - f.eval(x)).abs());
            }
            Ok(w)
        })
        .collect::<Vec<_>>();
    worst_of(parts)
}

fn paraxial_oracle() -> Result<(f64, f64, String)> {
    Ok((paraxial_sweep(Some(0.01))?, 1e-3, "numeric at theta = 0.01 vs closed forms, 25 nodes on [0, 10]".into()))
}

fn paraxial_richardson() -> Result<(f64, f64, String)> {
    Ok((paraxial_sweep(None)?, 1e-6, "theta^2-extrapolated numeric limit vs closed forms".into()))
}

fn stokes_ratios(state: &PolarizationState<f64>, grid: &[f64]) -> Result<Vec<Option<[f64; 3]>>> {
    Ok(stokes_profile(state, grid)?.iter().map(|p| p.stokes.normalized()).collect())
}

fn polarization_dipole_invariance() -> Result<(f64, f64, String)> {
    let grid = linear_grid(0.0, 1.5, 151)?;
    let s = PolarizationState::balanced(1, 0.1, TransitionSpec::E1)?;
    let base = stokes_ratios(&s, &grid)?;
    let mut worst = 0.0f64;
    for z in [0.01, 0.1, 0.2, 1.0] {
        for (a, b) in base.iter().zip(stokes_ratios(&s.at_depth(z)?, &grid)?) {
            if let (Some(a), Some(b)) = (a, b) {
                for k in 0..3 {
                    worst = worst.max((a[k] - b[k]).abs());
                }
            }
        }
    }
    Ok((worst, 1e-12, "S_i/S0 unchanged with depth in an E1 medium".into()))
}

fn polarization_circularization() -> Result<(f64, f64, String)> {
    let s = PolarizationState::balanced(1, 0.1, TransitionSpec::E2)?;
    let mut prev = f64::NEG_INFINITY;
    let mut drop = 0.0f64;
    let mut last = 0.0;
    for z in [0.0, 0.01, 0.1, 0.2] {
        let v = stokes_ratios(&s.at_depth(z)?, &[1e-3])?[0].map_or(f64::NAN, |r| r[2].abs());
        drop = drop.max(prev - v);
        prev = v;
        last = v;
    }
    let shortfall = (0.9 - last).max(0.0);
    Ok((
        drop.max(shortfall),
        0.0,
        format!("|S3/S0| at b = 1e-3 non-decreasing in z, reaches {last:.6} at z = 0.2 (> 0.9)"),
    ))
}

fn polarization_coherence() -> Result<(f64, f64, String)> {
    let grid = linear_grid(0.0, 2.0, 201)?;
    let mut worst = 0.0f64;
    for (l, c_minus) in [(2, Complex::new(0.6, 0.2)), (3, Complex::new(0.7, 0.0))] {
        let s = PolarizationState::new(1, 0.1f64, Complex::new(0.5, 0.0), c_minus, TransitionSpec::new(l)?)?;
        for z in [0.0, 0.01, 0.1, 0.2] {
            for p in stokes_profile(&s.at_depth(z)?, &grid)? {
                if let Some(d) = p.stokes.degree_of_polarization() {
                    worst = worst.max((d - 1.0).abs());
                }
            }
        }
    }
    Ok((worst, 1e-12, "S1^2 + S2^2 + S3^2 = S0^2".into()))
}

fn polarization_calibration() -> Result<(f64, f64, String)> {
    let s = PolarizationState::new(1, 0.01, Complex::new(1.0, 0.0), Complex::new(0.0, 0.0), TransitionSpec::E2)?;
    let grid = linear_grid(0.05, 1.0, 20)?;
    let worst = stokes_ratios(&s, &grid)?
        .iter()
        .map(|r| r.map_or(f64::INFINITY, |r| (r[2] - 1.0).abs()))
        .fold(0.0, f64::max);
    Ok((worst, 1e-3, "pure Lambda = +1 state has S3/S0 = +1".into()))
}

fn polarization_centre_stability() -> Result<(f64, f64, String)> {
    let s = PolarizationState::balanced(1, 0.1, TransitionSpec::E2)?;
    let r = stokes_ratios(&s, &[1e-4, 1e-5, 1e-6])?;
    let s3: Vec<f64> = r.iter().map(|v| v.map_or(f64::NAN, |v| v[2])).collect();
    let worst = (s3[0] - s3[2]).abs().max((s3[1] - s3[2]).abs());
    Ok((
        worst,
        1e-6,
        format!("S3/S0 at z = 0 as b -> 0 converges to {:.6e}", s3[2]),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        let all = run_all();
        assert_eq!(all.len(), CHECKS.len());
        for c in &all {
            assert!(c.passed, "{}: worst {} > {} ({})", c.name, c.worst, c.tolerance, c.detail);
        }
    }
}
