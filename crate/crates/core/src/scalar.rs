//! Scalar abstractions.
//!
//! The numerical core is written once over [`Real`] and instantiated for
//! `f32` and `f64`. The paraxial rational formulas only need field
//! arithmetic, so they are generic over [`Field`], which also admits exact
//! rationals such as `num_rational::Ratio<i64>`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// Floating-point scalar used by the special functions and the physics.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    /// Converts a small integer exactly.
    #[inline]
    fn int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Minimal field arithmetic needed to evaluate integer-coefficient
/// rational functions exactly.
pub trait Field: Num + Clone + FromPrimitive + PartialOrd + Debug {}

impl<T> Field for T where T: Num + Clone + FromPrimitive + PartialOrd + Debug {}
