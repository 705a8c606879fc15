//! Absorption of twisted (Bessel-mode) photons by atoms: local energy flux,
//! multipole photoexcitation rates and cross sections, circular dichroism,
//! spin asymmetries, polarization evolution in an absorbing medium, and the
//! closed-form paraxial expressions used to check them.
//!
//! Lengths are in units of the wavelength unless a [`beam::BeamSpec`] carries
//! another one; `c = hbar = 1`, so `omega = k = 2 pi / lambda`.

// Negated comparisons are used on purpose: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod absorption;
pub mod beam;
pub mod error;
pub mod expansion;
pub mod observables;
pub mod paraxial;
pub mod polarization;
pub mod scalar;
pub mod specfun;
pub mod verify;

pub use absorption::TransitionSpec;
pub use beam::{BeamSpec, Helicity};
pub use error::{Error, Result};
pub use observables::SpinPair;
pub use polarization::{PolarizationState, StokesVector};
pub use scalar::{Field, Real};

pub type BeamSpec64 = BeamSpec<f64>;
pub type BeamSpec32 = BeamSpec<f32>;
pub type SpinPair64 = SpinPair<f64>;
pub type SpinPair32 = SpinPair<f32>;
pub type PolarizationState64 = PolarizationState<f64>;
pub type PolarizationState32 = PolarizationState<f32>;
pub type RadialProfile64 = observables::RadialProfile<f64>;
pub type StokesVector64 = StokesVector<f64>;
