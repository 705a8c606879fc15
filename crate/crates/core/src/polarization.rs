//! Polarization of a two-helicity superposition propagating through an
//! absorbing atomic medium.
//!
//! A state `c_- |mbar, Lambda=-1> + c_+ |mbar, Lambda=+1>` is attenuated
//! helicity by helicity: `c_(z) = c_(0) exp(-z r(b) / 2)` with `z` in
//! plane-wave attenuation lengths and `r(b) = sigma(b) / sigma_pw` the local
//! twisted-to-plane-wave cross-section ratio of the medium's dominant
//! transition. Stokes parameters are formed from the transverse fields
//! only; the sign of `S3` is fixed so that a paraxial `Lambda = +1` mode has
//! `S3 / S0 -> +1`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::absorption::{cross_section, TransitionSpec};
use crate::beam::{to_cartesian, vector_potential, BeamSpec, CartesianField, CylPoint, Helicity};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Local attenuation ratio `r(b) = sigma(b) / sigma_pw`.
///
/// Electric-dipole absorption returns `1 / cos(theta_k)` for every helicity
/// and impact parameter. Divergent points (a node of the local flux with a
/// non-vanishing rate) yield [`Error::Singular`].
pub fn attenuation_ratio<T: Real>(beam: &BeamSpec<T>, tr: TransitionSpec, b: T) -> Result<T> {
    if tr.l_f() == 1 {
        if !(b >= T::zero() && b.is_finite()) {
            return Err(domain(format!("impact parameter must be finite and non-negative, got {b}")));
        }
        return Ok(beam.theta_k().cos().recip());
    }
    cross_section(beam, tr, b)
}

/// Superposition of the two helicity modes of one topological charge.
///
/// `c_plus`/`c_minus` are the coefficients at the medium entrance and `z`
/// the propagation depth in units of `1/mu_pw`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationState<T> {
    pub mbar: i32,
    pub theta_k: T,
    pub wavelength: T,
    pub c_plus: Complex<T>,
    pub c_minus: Complex<T>,
    pub z: T,
    pub l_f_medium: TransitionSpec,
}

impl<T: Real> PolarizationState<T> {
    pub fn new(
        mbar: i32,
        theta_k: T,
        c_plus: Complex<T>,
        c_minus: Complex<T>,
        l_f_medium: TransitionSpec,
    ) -> Result<Self> {
        if c_plus.norm_sqr() == T::zero() && c_minus.norm_sqr() == T::zero() {
            return Err(domain("c_plus and c_minus must not both vanish"));
        }
        // validates mbar and theta_k
        BeamSpec::unit(mbar, Helicity::Plus, theta_k)?;
        Ok(Self {
            mbar,
            theta_k,
            wavelength: T::one(),
            c_plus,
            c_minus,
            z: T::zero(),
            l_f_medium,
        })
    }

    /// Equal real coefficients `1/sqrt(2)`: linear polarization at entrance.
    pub fn balanced(mbar: i32, theta_k: T, l_f_medium: TransitionSpec) -> Result<Self> {
        let c = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        Self::new(mbar, theta_k, c, c, l_f_medium)
    }

    pub fn at_depth(mut self, z: T) -> Result<Self> {
        if !(z >= T::zero() && z.is_finite()) {
            return Err(domain(format!("propagation depth must be non-negative, got {z}")));
        }
        self.z = z;
        Ok(self)
    }

    pub fn beams(&self) -> Result<(BeamSpec<T>, BeamSpec<T>)> {
        Ok((
            BeamSpec::new(self.mbar, Helicity::Plus, self.theta_k, self.wavelength)?,
            BeamSpec::new(self.mbar, Helicity::Minus, self.theta_k, self.wavelength)?,
        ))
    }

    /// Coefficients at depth `self.z` for impact parameter `b` (absolute
    /// length).
    pub fn local_coefficients(&self, b: T) -> Result<(Complex<T>, Complex<T>)> {
        let (plus, minus) = self.beams()?;
        Ok((
            attenuate(self.c_plus, &plus, self.l_f_medium, b, self.z)?,
            attenuate(self.c_minus, &minus, self.l_f_medium, b, self.z)?,
        ))
    }
}

fn attenuate<T: Real>(
    c: Complex<T>,
    beam: &BeamSpec<T>,
    tr: TransitionSpec,
    b: T,
    z: T,
) -> Result<Complex<T>> {
    if z == T::zero() {
        return Ok(c);
    }
    match attenuation_ratio(beam, tr, b) {
        Ok(r) => Ok(c * (-z * r * T::lit(0.5)).exp()),
        Err(Error::Singular { .. }) => Ok(Complex::new(T::zero(), T::zero())),
        Err(e) => Err(e),
    }
}

/// Propagates `state` by a further distance `z` at impact parameter `b`.
///
/// The returned state carries the local coefficients for this `b` and the
/// accumulated depth. Electric-dipole media attenuate both helicities
/// identically, so their ratio is preserved.
pub fn evolve<T: Real>(state: &PolarizationState<T>, b: T, z: T) -> Result<PolarizationState<T>> {
    if !(z >= T::zero() && z.is_finite()) {
        return Err(domain(format!("propagation distance must be non-negative, got {z}")));
    }
    let step = PolarizationState { z, ..*state };
    let (c_plus, c_minus) = step.local_coefficients(b)?;
    Ok(PolarizationState {
        c_plus,
        c_minus,
        z: state.z + z,
        ..*state
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesVector<T> {
    pub s0: T,
    pub s1: T,
    pub s2: T,
    pub s3: T,
}

impl<T: Real> StokesVector<T> {
    /// From transverse field components.
    pub fn from_transverse(ex: Complex<T>, ey: Complex<T>) -> Self {
        let (ix, iy) = (ex.norm_sqr(), ey.norm_sqr());
        let cross = ex.conj() * ey;
        let two = T::lit(2.0);
        Self {
            s0: ix + iy,
            s1: ix - iy,
            s2: two * cross.re,
            s3: two * cross.im,
        }
    }

    /// `(S1, S2, S3) / S0`, or `None` at a field node.
    pub fn normalized(&self) -> Option<[T; 3]> {
        if self.s0 > T::zero() {
            Some([self.s1 / self.s0, self.s2 / self.s0, self.s3 / self.s0])
        } else {
            None
        }
    }

    pub fn degree_of_polarization(&self) -> Option<T> {
        self.normalized()
            .map(|[a, b, c]| (a * a + b * b + c * c).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesPoint<T> {
    /// Impact parameter in wavelengths.
    pub b: T,
    pub stokes: StokesVector<T>,
}

/// Transverse field of the superposition at distance `b` from the axis,
/// along `phi = 0`.
pub fn superposed_field<T: Real>(state: &PolarizationState<T>, b: T) -> Result<CartesianField<T>> {
    let (plus, minus) = state.beams()?;
    let (cp, cm) = state.local_coefficients(b)?;
    let p = CylPoint::on_axis_plane(b)?;
    let ep = to_cartesian(&vector_potential(&plus, &p));
    let em = to_cartesian(&vector_potential(&minus, &p));
    Ok(ep.scale(cp) + em.scale(cm))
}

/// Stokes parameters of the state at depth `state.z` over `b_grid` (in
/// wavelengths). `state` must carry entrance coefficients.
pub fn stokes_profile<T: Real>(state: &PolarizationState<T>, b_grid: &[T]) -> Result<Vec<StokesPoint<T>>> {
    if b_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    b_grid
        .par_iter()
        .map(|&bl| {
            let e = superposed_field(state, bl * state.wavelength)?;
            Ok(StokesPoint {
                b: bl,
                stokes: StokesVector::from_transverse(e.x, e.y),
            })
        })
        .collect()
}
