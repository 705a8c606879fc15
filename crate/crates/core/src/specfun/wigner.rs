//! Wigner small-d rotation matrix elements for integer `l`.

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Largest supported `l`.
pub const MAX_WIGNER_L: u32 = 16;

/// Index triple `(l, m, m')` of `d^l_{m m'}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WignerIndex {
    l: u32,
    m: i32,
    mp: i32,
}

impl WignerIndex {
    pub fn new(l: u32, m: i32, mp: i32) -> Result<Self> {
        if l > MAX_WIGNER_L {
            return Err(domain(format!("Wigner l = {l} exceeds {MAX_WIGNER_L}")));
        }
        let li = l as i32;
        if m.abs() > li || mp.abs() > li {
            return Err(domain(format!(
                "Wigner indices require |m|, |m'| <= l; got l={l}, m={m}, m'={mp}"
            )));
        }
        Ok(Self { l, m, mp })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn mp(&self) -> i32 {
        self.mp
    }
}

/// `d^l_{m m'}(theta)` in the Wigner (Sakurai / Edmonds) convention:
///
/// ```text
/// d^l_{m m'}(t) = sum_s (-1)^(m - m' + s) sqrt((l+m)!(l-m)!(l+m')!(l-m')!)
///                 / ((l+m'-s)! s! (m-m'+s)! (l-m-s)!)
///                 * cos(t/2)^(2l+m'-m-2s) * sin(t/2)^(m-m'+2s)
/// ```
///
/// With this convention `d^1_{1,0}(t) = -sin(t)/sqrt(2)`.
pub fn wigner_d<T: Real>(idx: WignerIndex, theta: T) -> Result<T> {
    if !(theta >= T::zero() && theta <= T::PI()) {
        return Err(domain(format!("Wigner angle must lie in [0, pi], got {theta}")));
    }
    Ok(small_d(idx.l as i32, idx.m, idx.mp, theta))
}

pub(crate) fn small_d<T: Real>(l: i32, m: i32, mp: i32, theta: T) -> T {
    // Rewritten with binomials so every coefficient is an exact integer:
    // d = sqrt((l+m)!(l-m)! / ((l+m')!(l-m')!))
    //     * sum_s (-1)^(m-m'+s) C(l+m', s) C(l-m', l-m-s) cos^.. sin^..
    let half = theta * T::lit(0.5);
    let (s, c) = half.sin_cos();
    let s_lo = 0.max(mp - m);
    let s_hi = (l + mp).min(l - m);
    let mut sum = T::zero();
    for k in s_lo..=s_hi {
        let coef = binomial(l + mp, k) * binomial(l - mp, l - m - k);
        let mut term = T::lit(coef) * c.powi(2 * l + mp - m - 2 * k) * s.powi(m - mp + 2 * k);
        if (m - mp + k).rem_euclid(2) == 1 {
            term = -term;
        }
        sum = sum + term;
    }
    if m == mp {
        sum
    } else {
        let ratio = fact(l + m) as f64 * fact(l - m) as f64
            / (fact(l + mp) as f64 * fact(l - mp) as f64);
        T::lit(ratio.sqrt()) * sum
    }
}

/// Exact for `n <= 34`, which covers `2 * MAX_WIGNER_L`.
fn fact(n: i32) -> u128 {
    debug_assert!((0..=34).contains(&n));
    (2..=n as u128).product()
}

fn binomial(n: i32, k: i32) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as f64
}
