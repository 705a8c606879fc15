//! Spin-dependent observables at fixed topological charge: circular
//! dichroism of the cross sections and the asymmetry of the excitation
//! rates, together with radial profile scans.
//!
//! Both compare the two beams of a [`SpinPair`]: `(mbar, Lambda = +1)` with
//! `m_gamma = mbar + 1` and `(mbar, Lambda = -1)` with `m_gamma = mbar - 1`,
//! sharing `omega` and `theta_k`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::absorption::{rate_series, TransitionSpec};
use crate::beam::{BeamSpec, Helicity};
use crate::error::{domain, Error, Result};
use crate::expansion::normalized_difference;
use crate::polarization::attenuation_ratio;
use crate::scalar::Real;

/// The two helicity states of one topological charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinPair<T> {
    pub plus: BeamSpec<T>,
    pub minus: BeamSpec<T>,
}

impl<T: Real> SpinPair<T> {
    pub fn new(mbar: i32, theta_k: T, wavelength: T) -> Result<Self> {
        Ok(Self {
            plus: BeamSpec::new(mbar, Helicity::Plus, theta_k, wavelength)?,
            minus: BeamSpec::new(mbar, Helicity::Minus, theta_k, wavelength)?,
        })
    }

    fn check_b(b: T) -> Result<()> {
        if b >= T::zero() && b.is_finite() {
            Ok(())
        } else {
            Err(domain(format!("impact parameter must be finite and non-negative, got {b}")))
        }
    }

    /// Circular dichroism `(sigma_+ - sigma_-) / (sigma_+ + sigma_-)`.
    ///
    /// Evaluated as `(G_+ f_- - G_- f_+) / (G_+ f_- + G_- f_+)`, which equals
    /// the cross-section form wherever both cross sections are finite and
    /// stays finite at flux nodes. When both products vanish (on axis) the
    /// limit is taken from the leading small-`b` terms.
    pub fn circular_dichroism(&self, tr: TransitionSpec, b: T) -> Result<T> {
        Self::check_b(b)?;
        let (gp, gm) = (rate_series(&self.plus, tr), rate_series(&self.minus, tr));
        let (fp, fm) = (self.plus.flux_series(), self.minus.flux_series());
        let p = gp.eval(b) * fm.eval(b);
        let q = gm.eval(b) * fp.eval(b);
        let lead = |g: Option<_>, f: Option<_>| Some(crate::expansion::Leading::times(g?, f?));
        normalized_difference(
            p,
            q,
            lead(gp.leading(), fm.leading()),
            lead(gm.leading(), fp.leading()),
        )
        .ok_or(Error::Undefined {
            b: b.to_f64().unwrap_or(f64::NAN),
            what: "circular dichroism",
        })
    }

    /// Rate asymmetry `(G_+ - G_-) / (G_+ + G_-)`.
    pub fn rate_asymmetry(&self, tr: TransitionSpec, b: T) -> Result<T> {
        Self::check_b(b)?;
        let (gp, gm) = (rate_series(&self.plus, tr), rate_series(&self.minus, tr));
        normalized_difference(gp.eval(b), gm.eval(b), gp.leading(), gm.leading()).ok_or(
            Error::Undefined {
                b: b.to_f64().unwrap_or(f64::NAN),
                what: "rate asymmetry",
            },
        )
    }
}

/// Circular dichroism at impact parameter `b` (in wavelengths).
pub fn circular_dichroism<T: Real>(mbar: i32, tr: TransitionSpec, theta_k: T, b: T) -> Result<T> {
    SpinPair::new(mbar, theta_k, T::one())?.circular_dichroism(tr, b)
}

/// Photon-spin asymmetry of the excitation rate at `b` (in wavelengths).
pub fn rate_asymmetry<T: Real>(mbar: i32, tr: TransitionSpec, theta_k: T, b: T) -> Result<T> {
    SpinPair::new(mbar, theta_k, T::one())?.rate_asymmetry(tr, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableKind {
    Cd,
    ALambda,
    Flux,
    Rate,
    SigmaRatio,
}

impl ObservableKind {
    /// Whether the observable belongs to a single beam (and so needs a
    /// helicity) rather than to a [`SpinPair`].
    pub fn single_beam(self) -> bool {
        matches!(self, Self::Flux | Self::Rate | Self::SigmaRatio)
    }

    pub fn needs_transition(self) -> bool {
        !matches!(self, Self::Flux)
    }
}

/// What to scan. `helicity` is used by single-beam observables only and
/// `transition` by everything except the flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRequest<T> {
    pub kind: ObservableKind,
    pub mbar: i32,
    pub helicity: Option<Helicity>,
    pub transition: Option<TransitionSpec>,
    pub theta_k: T,
    pub wavelength: T,
}

impl<T: Real> ProfileRequest<T> {
    pub fn pair(kind: ObservableKind, mbar: i32, tr: TransitionSpec, theta_k: T) -> Self {
        Self {
            kind,
            mbar,
            helicity: None,
            transition: Some(tr),
            theta_k,
            wavelength: T::one(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint<T> {
    /// Impact parameter in wavelengths.
    pub b: T,
    /// `None` at singular or undefined points.
    pub value: Option<T>,
}

/// An observable sampled against impact parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile<T> {
    pub kind: ObservableKind,
    pub mbar: i32,
    pub helicity: Option<Helicity>,
    pub l_f: Option<u32>,
    pub theta_k: T,
    pub wavelength: T,
    pub points: Vec<ProfilePoint<T>>,
}

/// `n` equally spaced points from `start` to `end` inclusive.
pub fn linear_grid<T: Real>(start: T, end: T, n: usize) -> Result<Vec<T>> {
    if n < 2 {
        return Err(domain(format!("grid needs at least 2 points, got {n}")));
    }
    if !(start < end) {
        return Err(domain(format!("grid requires start < end, got [{start}, {end}]")));
    }
    let step = (end - start) / T::int((n - 1) as i64);
    Ok((0..n)
        .map(|i| if i + 1 == n { end } else { start + step * T::int(i as i64) })
        .collect())
}

enum Evaluator<T> {
    Pair(SpinPair<T>, TransitionSpec, bool),
    Single(BeamSpec<T>, Option<TransitionSpec>, ObservableKind),
}

/// Evaluates the requested observable on `b_grid` (in wavelengths).
///
/// Grid points are evaluated in parallel; the output order is that of the
/// grid. Singular points carry `value: None`.
pub fn scan_profile<T: Real>(req: &ProfileRequest<T>, b_grid: &[T]) -> Result<RadialProfile<T>> {
    if b_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if !(b_grid[0] >= T::zero()) || b_grid.iter().any(|b| !b.is_finite()) {
        return Err(domain("impact parameters must be finite and non-negative"));
    }
    if b_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(domain("impact-parameter grid must be strictly increasing"));
    }
    let tr = if req.kind.needs_transition() {
        Some(req.transition.ok_or_else(|| domain(format!("{:?} requires l_f", req.kind)))?)
    } else {
        None
    };
    let eval = if req.kind.single_beam() {
        let hel = req
            .helicity
            .ok_or_else(|| domain(format!("{:?} requires a helicity", req.kind)))?;
        Evaluator::Single(
            BeamSpec::new(req.mbar, hel, req.theta_k, req.wavelength)?,
            tr,
            req.kind,
        )
    } else {
        let pair = SpinPair::new(req.mbar, req.theta_k, req.wavelength)?;
        Evaluator::Pair(pair, tr.expect("pair observables carry l_f"), req.kind == ObservableKind::Cd)
    };
    let lambda = req.wavelength;

    let points = b_grid
        .par_iter()
        .map(|&bl| {
            let b = bl * lambda;
            let value = match &eval {
                Evaluator::Pair(pair, tr, true) => pair.circular_dichroism(*tr, b),
                Evaluator::Pair(pair, tr, false) => pair.rate_asymmetry(*tr, b),
                Evaluator::Single(beam, _, ObservableKind::Flux) => crate::beam::flux(beam, b),
                Evaluator::Single(beam, Some(tr), ObservableKind::Rate) => {
                    crate::absorption::rate(beam, *tr, b)
                }
                Evaluator::Single(beam, Some(tr), _) => attenuation_ratio(beam, *tr, b),
                Evaluator::Single(..) => unreachable!("transition checked above"),
            };
            match value {
                Ok(v) => Ok(ProfilePoint { b: bl, value: Some(v) }),
                Err(Error::Singular { .. } | Error::Undefined { .. }) => {
                    Ok(ProfilePoint { b: bl, value: None })
                }
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(RadialProfile {
        kind: req.kind,
        mbar: req.mbar,
        helicity: if req.kind.single_beam() { req.helicity } else { None },
        l_f: tr.map(|t| t.l_f()),
        theta_k: req.theta_k,
        wavelength: req.wavelength,
        points,
    })
}
