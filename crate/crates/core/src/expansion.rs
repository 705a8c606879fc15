//! Weighted sums of squared Bessel functions and their small-argument
//! behavior.
//!
//! Both the local energy flux and the `m_f`-summed excitation rate have the
//! form `sum_i w_i J^2_{n_i}(kappa b)` with `w_i >= 0`. Near the beam axis each
//! term behaves as `w_i ((kappa/2)^|n| / |n|!)^2 b^(2|n|)`, so the leading
//! power and coefficient are known in closed form. Ratios of such sums are
//! evaluated from these leading terms where the direct values vanish.

use crate::scalar::Real;
use crate::specfun::jn;

#[derive(Debug, Clone, PartialEq)]
pub struct BesselSquareSum<T> {
    kappa: T,
    terms: Vec<(T, i32)>,
}

/// `coef * b^power`, the first non-vanishing term as `b -> 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leading<T> {
    pub power: u32,
    pub coef: T,
}

impl<T: Real> Leading<T> {
    pub fn times(self, other: Self) -> Self {
        Self {
            power: self.power + other.power,
            coef: self.coef * other.coef,
        }
    }
}

impl<T: Real> BesselSquareSum<T> {
    pub fn new(kappa: T) -> Self {
        Self {
            kappa,
            terms: Vec::new(),
        }
    }

    /// Adds `weight * J_order^2(kappa b)`. Zero weights are dropped.
    pub fn push(&mut self, weight: T, order: i32) {
        debug_assert!(weight >= T::zero());
        if weight > T::zero() {
            self.terms.push((weight, order));
        }
    }

    pub fn eval(&self, b: T) -> T {
        let arg = self.kappa * b;
        self.terms.iter().fold(T::zero(), |acc, &(w, n)| {
            let j = jn(n, arg);
            acc + w * j * j
        })
    }

    /// `None` when every weight is zero, i.e. the sum vanishes identically.
    pub fn leading(&self) -> Option<Leading<T>> {
        let lowest = self.terms.iter().map(|&(_, n)| n.unsigned_abs()).min()?;
        let half_kappa = self.kappa * T::lit(0.5);
        let mut scale = T::one();
        for k in 1..=lowest {
            scale = scale * half_kappa / T::int(i64::from(k));
        }
        let coef = self
            .terms
            .iter()
            .filter(|&&(_, n)| n.unsigned_abs() == lowest)
            .fold(T::zero(), |acc, &(w, _)| acc + w * scale * scale);
        Some(Leading {
            power: 2 * lowest,
            coef,
        })
    }
}

/// Normalized difference `(p - q) / (p + q)` of two non-negative
/// quantities, falling back to their leading small-`b` behavior when the
/// direct values both vanish (at `b = 0` or through underflow).
///
/// Returns `None` when `p` and `q` vanish identically.
pub(crate) fn normalized_difference<T: Real>(
    p: T,
    q: T,
    p_lead: Option<Leading<T>>,
    q_lead: Option<Leading<T>>,
) -> Option<T> {
    let sum = p + q;
    if sum > T::zero() {
        return Some((p - q) / sum);
    }
    match (p_lead, q_lead) {
        (None, None) => None,
        (Some(_), None) => Some(T::one()),
        (None, Some(_)) => Some(-T::one()),
        (Some(a), Some(c)) => Some(if a.power < c.power {
            T::one()
        } else if a.power > c.power {
            -T::one()
        } else {
            (a.coef - c.coef) / (a.coef + c.coef)
        }),
    }
}
