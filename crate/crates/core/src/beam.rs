//! Bessel-mode twisted photons: kinematics, coordinate-space vector
//! potential and the local energy flux.
//!
//! Natural units `c = hbar = 1`. Lengths (wavelength, radial distance,
//! impact parameter) share one arbitrary unit, conventionally the
//! wavelength itself.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::expansion::BesselSquareSum;
use crate::scalar::Real;
use crate::specfun::jn;

/// Largest supported `|mbar|`. Keeps every Bessel order reached by the
/// absorption sums (`|mbar| + 1 + l_f`) inside the special-function range.
pub const MAX_TOPOLOGICAL_CHARGE: i32 = 48;

/// Helicity `Lambda` of the plane waves composing the beam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    #[inline]
    pub fn sign(self) -> i32 {
        match self {
            Helicity::Plus => 1,
            Helicity::Minus => -1,
        }
    }

    pub fn from_sign(s: i32) -> Result<Self> {
        match s {
            1 => Ok(Helicity::Plus),
            -1 => Ok(Helicity::Minus),
            _ => Err(domain(format!("helicity must be +1 or -1, got {s}"))),
        }
    }

    #[inline]
    pub fn flipped(self) -> Self {
        match self {
            Helicity::Plus => Helicity::Minus,
            Helicity::Minus => Helicity::Plus,
        }
    }
}

/// One Bessel mode `|kappa, m_gamma, k_z, Lambda>`, parametrized by its
/// topological charge `mbar` (so `m_gamma = mbar + Lambda`), helicity,
/// pitch angle and wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec<T> {
    mbar: i32,
    helicity: Helicity,
    theta_k: T,
    wavelength: T,
}

/// Derived wave-vector quantities of a [`BeamSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics<T> {
    pub omega: T,
    pub kappa: T,
    pub k_z: T,
    pub m_gamma: i32,
}

impl<T: Real> BeamSpec<T> {
    pub fn new(mbar: i32, helicity: Helicity, theta_k: T, wavelength: T) -> Result<Self> {
        if mbar.abs() > MAX_TOPOLOGICAL_CHARGE {
            return Err(domain(format!(
                "|mbar| must not exceed {MAX_TOPOLOGICAL_CHARGE}, got {mbar}"
            )));
        }
        if !(theta_k > T::zero() && theta_k < T::FRAC_PI_2()) {
            return Err(domain(format!(
                "pitch angle must satisfy 0 < theta_k < pi/2, got {theta_k}"
            )));
        }
        if !(wavelength > T::zero() && wavelength.is_finite()) {
            return Err(domain(format!("wavelength must be positive, got {wavelength}")));
        }
        Ok(Self {
            mbar,
            helicity,
            theta_k,
            wavelength,
        })
    }

    /// Same beam with `wavelength = 1`.
    pub fn unit(mbar: i32, helicity: Helicity, theta_k: T) -> Result<Self> {
        Self::new(mbar, helicity, theta_k, T::one())
    }

    pub fn mbar(&self) -> i32 {
        self.mbar
    }

    pub fn helicity(&self) -> Helicity {
        self.helicity
    }

    pub fn theta_k(&self) -> T {
        self.theta_k
    }

    pub fn wavelength(&self) -> T {
        self.wavelength
    }

    /// Total angular-momentum projection `m_gamma = mbar + Lambda`.
    pub fn m_gamma(&self) -> i32 {
        self.mbar + self.helicity.sign()
    }

    pub fn omega(&self) -> T {
        T::TAU() / self.wavelength
    }

    pub fn kappa(&self) -> T {
        self.omega() * self.theta_k.sin()
    }

    pub fn kinematics(&self) -> Kinematics<T> {
        kinematics(self)
    }

    /// Parity image: `(mbar, Lambda) -> (-mbar, -Lambda)`.
    pub fn mirrored(&self) -> Self {
        Self {
            mbar: -self.mbar,
            helicity: self.helicity.flipped(),
            ..*self
        }
    }

    /// Flux as a weighted sum of squared Bessel functions of `kappa * rho`.
    pub(crate) fn flux_series(&self) -> BesselSquareSum<T> {
        let kin = self.kinematics();
        let lam = self.helicity.sign();
        let (sh, ch) = (self.theta_k * T::lit(0.5)).sin_cos();
        let pref = self.theta_k.cos() * kin.kappa * kin.omega * kin.omega / T::TAU();
        let st = self.theta_k.sin();
        let mut s = BesselSquareSum::new(kin.kappa);
        s.push(pref * ch.powi(4), kin.m_gamma - lam);
        s.push(pref * sh.powi(4), kin.m_gamma + lam);
        s.push(pref * st * st * T::lit(0.5), kin.m_gamma);
        s
    }
}

pub fn kinematics<T: Real>(spec: &BeamSpec<T>) -> Kinematics<T> {
    let omega = spec.omega();
    let (s, c) = spec.theta_k.sin_cos();
    Kinematics {
        omega,
        kappa: omega * s,
        k_z: omega * c,
        m_gamma: spec.m_gamma(),
    }
}

/// Cylindrical space-time point `(rho, phi, z, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylPoint<T> {
    pub rho: T,
    pub phi: T,
    pub z: T,
    pub t: T,
}

impl<T: Real> CylPoint<T> {
    pub fn new(rho: T, phi: T, z: T, t: T) -> Result<Self> {
        if !(rho >= T::zero()) {
            return Err(domain(format!("rho must be non-negative, got {rho}")));
        }
        Ok(Self { rho, phi, z, t })
    }

    /// Point at distance `rho` on the x axis, `z = t = 0`.
    pub fn on_axis_plane(rho: T) -> Result<Self> {
        Self::new(rho, T::zero(), T::zero(), T::zero())
    }
}

/// Components of the vector potential in the helicity basis.
///
/// `a_plus` multiplies `eta_Lambda`, `a_minus` multiplies `eta_{-Lambda}` and
/// `a_zero` multiplies `eta_0`; `helicity` records `Lambda` so the basis is
/// unambiguous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldAmps<T> {
    pub a_plus: Complex<T>,
    pub a_minus: Complex<T>,
    pub a_zero: Complex<T>,
    pub helicity: Helicity,
}

impl<T: Real> FieldAmps<T> {
    /// Coefficients of `(eta_{+1}, eta_{-1})` after resolving the helicity
    /// labels.
    pub fn spherical(&self) -> (Complex<T>, Complex<T>) {
        match self.helicity {
            Helicity::Plus => (self.a_plus, self.a_minus),
            Helicity::Minus => (self.a_minus, self.a_plus),
        }
    }

    pub fn norm_sqr(&self) -> T {
        self.a_plus.norm_sqr() + self.a_minus.norm_sqr() + self.a_zero.norm_sqr()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            a_plus: self.a_plus * c,
            a_minus: self.a_minus * c,
            a_zero: self.a_zero * c,
            helicity: self.helicity,
        }
    }
}

/// Cartesian components `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianField<T> {
    pub x: Complex<T>,
    pub y: Complex<T>,
    pub z: Complex<T>,
}

impl<T: Real> std::ops::Add for CartesianField<T> {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            x: self.x + o.x,
            y: self.y + o.y,
            z: self.z + o.z,
        }
    }
}

impl<T: Real> CartesianField<T> {
    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            x: self.x * c,
            y: self.y * c,
            z: self.z * c,
        }
    }

    pub fn norm_sqr(&self) -> T {
        self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }
}

/// `i^k` for integer `k`.
fn i_pow<T: Real>(k: i32) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    match k.rem_euclid(4) {
        0 => Complex::new(o, z),
        1 => Complex::new(z, o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, -o),
    }
}

/// Coordinate-space vector potential of the mode at `p`, in the helicity
/// basis, including the common factor `sqrt(kappa/2pi) e^{-i(omega t - k_z z)}`
/// and the azimuthal phases.
pub fn vector_potential<T: Real>(spec: &BeamSpec<T>, p: &CylPoint<T>) -> FieldAmps<T> {
    let kin = spec.kinematics();
    let lam = spec.helicity.sign();
    let mg = kin.m_gamma;
    let arg = kin.kappa * p.rho;
    let (sh, ch) = (spec.theta_k * T::lit(0.5)).sin_cos();

    let norm = (kin.kappa / T::TAU()).sqrt();
    let common = Complex::from_polar(norm, kin.k_z * p.z - kin.omega * p.t);
    let azimuth = |k: i32| Complex::from_polar(T::one(), T::int(i64::from(k)) * p.phi);

    let a_zero = common
        * azimuth(mg)
        * (T::int(i64::from(lam)) * T::FRAC_1_SQRT_2() * spec.theta_k.sin() * jn(mg, arg));
    let a_plus = common * i_pow::<T>(-lam) * azimuth(mg - lam) * (ch * ch * jn(mg - lam, arg));
    let a_minus = common * i_pow::<T>(lam) * azimuth(mg + lam) * (sh * sh * jn(mg + lam, arg));

    FieldAmps {
        a_plus,
        a_minus,
        a_zero,
        helicity: spec.helicity,
    }
}

/// Helicity basis to Cartesian components with
/// `eta_{+-1} = (-+1, -i, 0)/sqrt(2)` and `eta_0 = (0, 0, 1)`.
///
/// The common factor `i omega` relating `E` to `A` is omitted.
pub fn to_cartesian<T: Real>(f: &FieldAmps<T>) -> CartesianField<T> {
    let (cp, cm) = f.spherical();
    let h = T::FRAC_1_SQRT_2();
    let minus_i = Complex::new(T::zero(), -T::one());
    CartesianField {
        x: (cm - cp) * h,
        y: minus_i * (cp + cm) * h,
        z: f.a_zero,
    }
}

/// Local energy flux
/// `f(rho) = cos(theta_k) kappa omega^2 / 2pi
///   [cos^4(theta_k/2) J^2_{m-L} + sin^4(theta_k/2) J^2_{m+L} + sin^2(theta_k)/2 J^2_m]`
/// with Bessel arguments `kappa rho`.
pub fn flux<T: Real>(spec: &BeamSpec<T>, rho: T) -> Result<T> {
    if !(rho >= T::zero() && rho.is_finite()) {
        return Err(domain(format!("rho must be finite and non-negative, got {rho}")));
    }
    Ok(spec.flux_series().eval(rho))
}

/// Berry phase `2 pi (1 - cos theta_k)`.
pub fn berry_phase<T: Real>(spec: &BeamSpec<T>) -> T {
    T::TAU() * (T::one() - spec.theta_k.cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn beam(mbar: i32, lam: i32, theta: f64) -> BeamSpec<f64> {
        BeamSpec::unit(mbar, Helicity::from_sign(lam).unwrap(), theta).unwrap()
    }

    #[test]
    fn kinematics_definitions() {
        let k = beam(1, 1, 0.1).kinematics();
        assert_eq!(k.omega, 2.0 * PI);
        assert!((k.kappa - 2.0 * PI * 0.1f64.sin()).abs() < 1e-15);
        assert_eq!(k.m_gamma, 2);

        let b = BeamSpec::new(0, Helicity::Minus, PI / 4.0, 2.0).unwrap();
        let k = b.kinematics();
        assert!((k.omega - PI).abs() < 1e-15);
        assert!((k.kappa - k.k_z).abs() < 1e-15);
        assert!((k.kappa - PI / 2f64.sqrt()).abs() < 1e-15);
        assert!((k.omega.powi(2) - k.kappa.powi(2) - k.k_z.powi(2)).abs() < 1e-14 * k.omega.powi(2));

        let k = beam(0, 1, 1e-9).kinematics();
        assert!(k.kappa < 1e-8);
        assert!((k.k_z - k.omega).abs() < 1e-15);
    }

    #[test]
    fn spec_validation() {
        assert!(BeamSpec::unit(0, Helicity::Plus, 0.0).is_err());
        assert!(BeamSpec::unit(0, Helicity::Plus, PI / 2.0).is_err());
        assert!(BeamSpec::new(0, Helicity::Plus, 0.1, -1.0).is_err());
        assert!(BeamSpec::unit(49, Helicity::Plus, 0.1).is_err());
        assert!(Helicity::from_sign(0).is_err());
        assert!(CylPoint::new(-1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn field_on_axis() {
        let origin = CylPoint::on_axis_plane(0.0).unwrap();
        let f = vector_potential(&beam(0, 1, 0.1), &origin);
        assert!(f.a_plus.norm() > 0.0);
        assert_eq!(f.a_minus.norm(), 0.0);
        assert_eq!(f.a_zero.norm(), 0.0);

        let f = vector_potential(&beam(1, 1, 0.1), &origin);
        assert_eq!(f.norm_sqr(), 0.0);
    }

    #[test]
    fn field_magnitude_off_axis() {
        let b = beam(1, 1, 0.1);
        let rho = 0.25;
        let f = vector_potential(&b, &CylPoint::on_axis_plane(rho).unwrap());
        let kappa = b.kappa();
        let want = (kappa / (2.0 * PI)).sqrt() * 0.05f64.cos().powi(2) * jn(1, kappa * rho);
        assert!((f.a_plus.norm() - want.abs()).abs() < 1e-15);
    }

    #[test]
    fn cartesian_basis() {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let e = to_cartesian(&FieldAmps {
            a_plus: one,
            a_minus: zero,
            a_zero: zero,
            helicity: Helicity::Plus,
        });
        assert!((e.x - Complex::new(-h, 0.0)).norm() < 1e-15);
        assert!((e.y - Complex::new(0.0, -h)).norm() < 1e-15);

        let e = to_cartesian(&FieldAmps {
            a_plus: zero,
            a_minus: zero,
            a_zero: one,
            helicity: Helicity::Minus,
        });
        assert_eq!((e.x, e.y, e.z), (zero, zero, one));

        let e = to_cartesian(&FieldAmps {
            a_plus: one,
            a_minus: one,
            a_zero: zero,
            helicity: Helicity::Minus,
        });
        assert!(e.x.norm() < 1e-15);
        assert!((e.y - Complex::new(0.0, -2f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn flux_at_axis() {
        let t = 0.1f64;
        let b = beam(0, 1, t);
        let k = b.kinematics();
        let pref = t.cos() * k.kappa * k.omega * k.omega / (2.0 * PI);
        assert!((flux(&b, 0.0).unwrap() - pref * (t / 2.0).cos().powi(4)).abs() < 1e-12 * pref);

        let b = beam(1, -1, t);
        assert!((flux(&b, 0.0).unwrap() - pref * t.sin().powi(2) / 2.0).abs() < 1e-12 * pref);

        assert_eq!(flux(&beam(1, 1, t), 0.0).unwrap(), 0.0);
        assert!(flux(&beam(1, 1, t), -0.1).is_err());
    }

    #[test]
    fn berry_phase_values() {
        assert!(berry_phase(&beam(0, 1, 1e-12)) < 1e-20);
        assert!((berry_phase(&beam(0, 1, PI / 2.0 - 1e-12)) - 2.0 * PI).abs() < 1e-10);
        assert!((berry_phase(&beam(0, 1, 0.1)) - 0.031_389_755_322_205_774).abs() < 1e-14);
    }
}
