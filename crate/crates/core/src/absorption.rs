//! Photoexcitation of an atom from an `s` state (`l_i = m_i = 0`) into a
//! state of orbital angular momentum `l_f` by a Bessel-mode photon whose
//! axis passes at impact parameter `b` from the nucleus.
//!
//! The amplitude factorizes as
//! `|M(m_f)| = sqrt(kappa/2pi) |J_{m_f - m_gamma}(kappa b)| |d^{l_f}_{m_f Lambda}(theta_k)| |M_pw|`.
//! The plane-wave matrix element `M_pw` and the energy-conserving delta
//! function are common to both helicities and cancel in every ratio this
//! crate reports, so both are set to one. Rates are therefore in arbitrary
//! units; cross sections are quoted relative to the plane-wave cross
//! section of the same transition.

use serde::{Deserialize, Serialize};

use crate::beam::BeamSpec;
use crate::error::{domain, Error, Result};
use crate::expansion::BesselSquareSum;
use crate::scalar::Real;
use crate::specfun::{jn, small_d};

/// Largest supported final-state multipolarity.
pub const MAX_MULTIPOLARITY: u32 = 8;

/// Final-state orbital angular momentum `l_f` (1 = E1, 2 = E2, 3 = E3, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct TransitionSpec {
    l_f: u32,
}

impl TransitionSpec {
    pub const E1: Self = Self { l_f: 1 };
    pub const E2: Self = Self { l_f: 2 };
    pub const E3: Self = Self { l_f: 3 };

    pub fn new(l_f: u32) -> Result<Self> {
        if !(1..=MAX_MULTIPOLARITY).contains(&l_f) {
            return Err(domain(format!(
                "l_f must satisfy 1 <= l_f <= {MAX_MULTIPOLARITY}, got {l_f}"
            )));
        }
        Ok(Self { l_f })
    }

    #[inline]
    pub fn l_f(&self) -> u32 {
        self.l_f
    }

    /// Allowed final magnetic quantum numbers `-l_f..=l_f`.
    pub fn m_f_range(&self) -> std::ops::RangeInclusive<i32> {
        let l = self.l_f as i32;
        -l..=l
    }
}

impl TryFrom<u32> for TransitionSpec {
    type Error = Error;

    fn try_from(l_f: u32) -> Result<Self> {
        Self::new(l_f)
    }
}

impl From<TransitionSpec> for u32 {
    fn from(t: TransitionSpec) -> u32 {
        t.l_f
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeResult<T> {
    pub m_f: i32,
    pub magnitude: T,
}

fn check_b<T: Real>(b: T) -> Result<()> {
    if b >= T::zero() && b.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("impact parameter must be finite and non-negative, got {b}")))
    }
}

/// `|M_{m_f}(b)|` with `|M_pw| = 1`.
pub fn amplitude<T: Real>(
    beam: &BeamSpec<T>,
    tr: TransitionSpec,
    m_f: i32,
    b: T,
) -> Result<AmplitudeResult<T>> {
    check_b(b)?;
    if !tr.m_f_range().contains(&m_f) {
        return Err(domain(format!(
            "|m_f| must not exceed l_f = {}, got m_f = {m_f}",
            tr.l_f
        )));
    }
    let kappa = beam.kappa();
    let d = small_d(tr.l_f as i32, m_f, beam.helicity().sign(), beam.theta_k());
    let j = jn(m_f - beam.m_gamma(), kappa * b);
    let magnitude = (kappa / T::TAU()).sqrt() * j.abs() * d.abs();
    Ok(AmplitudeResult { m_f, magnitude })
}

/// `Gamma(b) = sum_{m_f} |M_{m_f}(b)|^2` as a sum of squared Bessel
/// functions of `kappa b`.
pub(crate) fn rate_series<T: Real>(beam: &BeamSpec<T>, tr: TransitionSpec) -> BesselSquareSum<T> {
    let kappa = beam.kappa();
    let pref = kappa / T::TAU();
    let lam = beam.helicity().sign();
    let mg = beam.m_gamma();
    let mut s = BesselSquareSum::new(kappa);
    for m_f in tr.m_f_range() {
        let d = small_d(tr.l_f as i32, m_f, lam, beam.theta_k());
        s.push(pref * d * d, m_f - mg);
    }
    s
}

/// Excitation rate summed over final magnetic substates (arbitrary units).
pub fn rate<T: Real>(beam: &BeamSpec<T>, tr: TransitionSpec, b: T) -> Result<T> {
    check_b(b)?;
    Ok(rate_series(beam, tr).eval(b))
}

/// Cross section `sigma(b) = Gamma(b) / f(b)` against the unintegrated local
/// flux, in units of the plane-wave cross section of the same transition
/// (the `omega^2` relating `|E|^2` to `|A|^2` is absorbed into that unit).
///
/// At the beam axis the ratio is taken as the `b -> 0` limit. Where the
/// flux vanishes while the rate does not, the cross section diverges and
/// [`Error::Singular`] is returned.
pub fn cross_section<T: Real>(beam: &BeamSpec<T>, tr: TransitionSpec, b: T) -> Result<T> {
    check_b(b)?;
    let omega = beam.omega();
    let rate = rate_series(beam, tr);
    let flux = beam.flux_series();
    let (g, f) = (rate.eval(b), flux.eval(b));
    if f > T::zero() {
        return Ok(omega * omega * g / f);
    }
    let singular = Error::Singular {
        b: b.to_f64().unwrap_or(f64::NAN),
        what: "cross section (local flux vanishes)",
    };
    let Some(fl) = flux.leading() else {
        return Err(singular);
    };
    match rate.leading() {
        None => Ok(T::zero()),
        Some(gl) if gl.power > fl.power => Ok(T::zero()),
        Some(gl) if gl.power == fl.power => Ok(omega * omega * gl.coef / fl.coef),
        Some(_) => Err(singular),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam::{flux, Helicity};

    fn beam(mbar: i32, lam: i32, theta: f64) -> BeamSpec<f64> {
        BeamSpec::unit(mbar, Helicity::from_sign(lam).unwrap(), theta).unwrap()
    }

    #[test]
    fn only_matching_m_f_survives_on_axis() {
        let b = beam(1, 1, 0.3);
        for m_f in -2..=2 {
            let a = amplitude(&b, TransitionSpec::E2, m_f, 0.0).unwrap();
            if m_f == 2 {
                assert!(a.magnitude > 0.0);
            } else {
                assert_eq!(a.magnitude, 0.0);
            }
        }
    }

    #[test]
    fn on_axis_amplitudes_at_small_pitch() {
        let t = 1e-3;
        let b = beam(1, 1, t);
        let norm = (b.kappa() / std::f64::consts::TAU).sqrt();
        let a = amplitude(&b, TransitionSpec::E2, 2, 0.0).unwrap().magnitude / norm;
        assert!((a / t - 1.0).abs() < 1e-5);

        let b = beam(1, -1, t);
        let norm = (b.kappa() / std::f64::consts::TAU).sqrt();
        let a = amplitude(&b, TransitionSpec::E2, 0, 0.0).unwrap().magnitude / norm;
        assert!((a / t / 1.5f64.sqrt() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn rate_on_axis() {
        let t = 0.2;
        let b = beam(1, 1, t);
        let d = small_d(2, 2, 1, t);
        let want = b.kappa() / std::f64::consts::TAU * d * d;
        assert!((rate(&b, TransitionSpec::E2, 0.0).unwrap() - want).abs() < 1e-15);
        assert_eq!(rate(&beam(3, 1, t), TransitionSpec::E2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn dipole_cross_section_is_flat() {
        for (mbar, lam) in [(0, 1), (1, 1), (1, -1), (3, -1), (-2, 1)] {
            let bm = beam(mbar, lam, 0.4);
            for &b in &[0.0, 0.05, 0.3, 0.77, 1.9] {
                let s = cross_section(&bm, TransitionSpec::E1, b).unwrap();
                assert!((s * 0.4f64.cos() - 1.0).abs() < 1e-12, "mbar={mbar} b={b}: {s}");
            }
        }
    }

    #[test]
    fn quadrupole_cross_section_diverges_at_vortex_centre() {
        let bm = beam(1, 1, 0.1);
        assert!(matches!(
            cross_section(&bm, TransitionSpec::E2, 0.0),
            Err(Error::Singular { .. })
        ));
        let near = cross_section(&bm, TransitionSpec::E2, 1e-4).unwrap();
        let far = cross_section(&bm, TransitionSpec::E2, 1e-2).unwrap();
        assert!(near > far && near > 1e6);
        assert!(flux(&bm, 0.0).unwrap() == 0.0);
    }

    #[test]
    fn zero_charge_cross_sections_agree_between_helicities() {
        for &b in &[0.0, 0.1, 0.45, 1.3] {
            let p = cross_section(&beam(0, 1, 0.2), TransitionSpec::E2, b).unwrap();
            let m = cross_section(&beam(0, -1, 0.2), TransitionSpec::E2, b).unwrap();
            assert!((p - m).abs() < 1e-12 * p);
        }
    }

    #[test]
    fn errors() {
        let b = beam(1, 1, 0.1);
        assert!(amplitude(&b, TransitionSpec::E1, 2, 0.0).is_err());
        assert!(rate(&b, TransitionSpec::E1, -1.0).is_err());
        assert!(TransitionSpec::new(0).is_err());
        assert!(TransitionSpec::new(9).is_err());
    }
}
