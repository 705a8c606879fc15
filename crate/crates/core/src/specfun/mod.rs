//! Special functions: integer-order Bessel `J_n` and Wigner small-d.

mod bessel;
mod wigner;

pub use bessel::{bessel_j, BesselOrder, MAX_BESSEL_ORDER};
pub use wigner::{wigner_d, WignerIndex, MAX_WIGNER_L};

pub(crate) use bessel::jn;
pub(crate) use wigner::small_d;
