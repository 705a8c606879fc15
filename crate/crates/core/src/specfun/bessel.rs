//! Integer-order Bessel functions of the first kind.
//!
//! Three evaluation regimes are used for `J_n(x)`, `n >= 0`, `x >= 0`:
//!
//! * ascending power series while its terms decrease monotonically
//!   (`(x/2)^2 <= n + 1`), so no cancellation occurs;
//! * Hankel's asymptotic expansion once `x` dominates `n^2`;
//! * Miller's backward recurrence in between, normalized with the
//!   sum rule `J_0^2 + 2 sum_k J_k^2 = 1` (all terms positive) and signed
//!   with `J_0 + 2 sum_k J_2k = 1`.
//!
//! Negative orders use `J_{-n} = (-1)^n J_n`.

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Largest supported `|n|`.
pub const MAX_BESSEL_ORDER: i32 = 64;

/// Validated Bessel order, `|n| <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BesselOrder(i32);

impl BesselOrder {
    pub fn new(n: i32) -> Result<Self> {
        if n.abs() > MAX_BESSEL_ORDER {
            return Err(domain(format!(
                "Bessel order {n} outside supported range |n| <= {MAX_BESSEL_ORDER}"
            )));
        }
        Ok(Self(n))
    }

    #[inline]
    pub fn get(self) -> i32 {
        self.0
    }
}

impl TryFrom<i32> for BesselOrder {
    type Error = crate::Error;

    fn try_from(n: i32) -> Result<Self> {
        Self::new(n)
    }
}

/// `J_n(x)` for integer `n`.
///
/// Negative `x` is accepted through `J_n(-x) = (-1)^n J_n(x)`, although every
/// argument produced by this crate is a non-negative radial distance.
pub fn bessel_j<T: Real>(order: BesselOrder, x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(domain(format!("Bessel argument must be finite, got {x}")));
    }
    Ok(jn(order.get(), x))
}

/// Unchecked evaluation for orders already known to be in range.
pub(crate) fn jn<T: Real>(n: i32, x: T) -> T {
    debug_assert!(n.abs() <= MAX_BESSEL_ORDER);
    let m = n.unsigned_abs();
    let odd = m % 2 == 1;
    let mut flip = n < 0 && odd;
    let ax = if x < T::zero() {
        if odd {
            flip = !flip;
        }
        -x
    } else {
        x
    };
    let v = jn_nonneg(m, ax);
    if flip {
        -v
    } else {
        v
    }
}

fn jn_nonneg<T: Real>(n: u32, x: T) -> T {
    if x == T::zero() {
        return if n == 0 { T::one() } else { T::zero() };
    }
    let half = x * T::lit(0.5);
    let nf = T::int(i64::from(n));
    if half * half <= nf + T::one() {
        series(n, x)
    } else if x >= asymptotic_threshold(n) {
        hankel(n, x)
    } else {
        miller(n, x)
    }
}

fn asymptotic_threshold<T: Real>(n: u32) -> T {
    let nf = f64::from(n);
    T::lit((0.5 * nf * nf).max(25.0))
}

fn series<T: Real>(n: u32, x: T) -> T {
    let half = x * T::lit(0.5);
    let mut term = T::one();
    for k in 1..=n {
        term = term * half / T::int(i64::from(k));
    }
    let q = -(half * half);
    let mut sum = term;
    for k in 1..200u32 {
        term = term * q / T::int(i64::from(k) * i64::from(k + n));
        sum = sum + term;
        if term.abs() <= sum.abs() * T::epsilon() * T::lit(0.25) {
            break;
        }
    }
    sum
}

fn miller<T: Real>(n: u32, x: T) -> T {
    let xf = x.to_f64().unwrap_or(0.0);
    let top = f64::from(n).max(xf.ceil());
    let mut start = (top + 20.0 + (40.0 * top).sqrt()) as u32;
    start += start % 2;

    let big = T::max_value().sqrt().sqrt();
    let shrink = big.recip();
    let two_over_x = T::lit(2.0) / x;

    let mut next = T::zero(); // J_{k+1}
    let mut cur = T::epsilon(); // J_k
    let mut target = T::zero();
    let mut even_sum = T::zero();
    let mut sq_sum = T::zero();

    for k in (1..=start).rev() {
        if k == n {
            target = cur;
        }
        sq_sum = sq_sum + cur * cur;
        if k % 2 == 0 {
            even_sum = even_sum + cur;
        }
        let prev = T::int(i64::from(k)) * two_over_x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > big {
            cur = cur * shrink;
            next = next * shrink;
            target = target * shrink;
            even_sum = even_sum * shrink;
            sq_sum = sq_sum * shrink * shrink;
        }
    }
    if n == 0 {
        target = cur;
    }
    let two = T::lit(2.0);
    let norm = (cur * cur + two * sq_sum).sqrt();
    let linear = cur + two * even_sum;
    let norm = if linear < T::zero() { -norm } else { norm };
    target / norm
}

fn hankel<T: Real>(n: u32, x: T) -> T {
    let mu = T::int(4 * i64::from(n) * i64::from(n));
    let eight_x = T::lit(8.0) * x;
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let mut last = T::infinity();
    for k in 1..400i64 {
        let odd = T::int(2 * k - 1);
        term = term * (mu - odd * odd) / (T::int(k) * eight_x);
        let mag = term.abs();
        if mag > last {
            break;
        }
        last = mag;
        // k odd: Q gets (-1)^((k-1)/2); k even: P gets (-1)^(k/2)
        if k % 2 == 1 {
            q = q + if (k / 2) % 2 == 0 { term } else { -term };
        } else {
            p = p + if (k / 2) % 2 == 0 { term } else { -term };
        }
        if mag <= T::epsilon() * T::lit(0.125) * (p.abs() + q.abs()) {
            break;
        }
    }
    // chi = x - (2n+1) pi/4, expanded so that cos/sin see the exact argument x.
    let (cphi, sphi) = quarter_pi_multiple::<T>(2 * n + 1);
    let (sx, cx) = x.sin_cos();
    let cos_chi = cx * cphi + sx * sphi;
    let sin_chi = sx * cphi - cx * sphi;
    (T::lit(2.0) / (T::PI() * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// `(cos(j pi/4), sin(j pi/4))` for odd `j`.
fn quarter_pi_multiple<T: Real>(j: u32) -> (T, T) {
    let h = T::FRAC_1_SQRT_2();
    match j % 8 {
        1 => (h, h),
        3 => (-h, h),
        5 => (-h, -h),
        7 => (h, -h),
        _ => unreachable!("odd multiple expected"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Power series summed with compensated f64 accumulation; independent of
    /// the regime selection above.
    fn series_oracle(n: u32, x: f64) -> f64 {
        let mut term = 1.0;
        for k in 1..=n {
            term *= x / 2.0 / f64::from(k);
        }
        let (mut sum, mut c) = (0.0f64, 0.0f64);
        for k in 0..400u32 {
            let y = term - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
            term *= -(x * x / 4.0) / (f64::from(k + 1) * f64::from(k + 1 + n));
            if term.abs() < 1e-30 * sum.abs().max(1e-300) {
                break;
            }
        }
        sum
    }

    fn j(n: i32, x: f64) -> f64 {
        bessel_j(BesselOrder::new(n).unwrap(), x).unwrap()
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(j(0, 0.0), 1.0);
        assert_eq!(j(2, 0.0), 0.0);
        assert_eq!(j(-7, 0.0), 0.0);
    }

    #[test]
    fn j1_at_one_matches_series_oracle() {
        let oracle = series_oracle(1, 1.0);
        assert!((oracle - 0.440_050_585_744_933_5).abs() < 1e-16);
        assert!((j(1, 1.0) - 0.440_050_585_744_933_5).abs() <= 1e-12 * 0.44);
    }

    #[test]
    fn negative_order_parity() {
        assert_eq!(j(-3, 2.5), -j(3, 2.5));
        assert_eq!(j(-4, 2.5), j(4, 2.5));
    }

    #[test]
    fn miller_agrees_with_series_oracle_for_small_arguments() {
        for n in 0..12u32 {
            for &x in &[2.5, 3.0, 4.5, 6.0, 7.5] {
                let expect = series_oracle(n, x);
                let got = miller(n, x);
                assert!(
                    (got - expect).abs() <= 1e-13 * expect.abs().max(1e-3),
                    "n={n} x={x}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn regimes_agree_at_the_asymptotic_boundary() {
        for n in 0..8u32 {
            let x = asymptotic_threshold::<f64>(n) + 0.37;
            let a = hankel(n, x);
            let b = miller(n, x);
            assert!((a - b).abs() < 2e-14, "n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BesselOrder::new(65).is_err());
        assert!(BesselOrder::new(-65).is_err());
        let o = BesselOrder::new(1).unwrap();
        assert!(bessel_j(o, f64::NAN).is_err());
        assert!(bessel_j(o, f64::INFINITY).is_err());
    }

    #[test]
    fn single_precision_is_usable() {
        let v: f32 = bessel_j(BesselOrder::new(1).unwrap(), 1.0f32).unwrap();
        assert!((v - 0.440_050_6).abs() < 1e-6);
        let v: f32 = bessel_j(BesselOrder::new(3).unwrap(), 15.0f32).unwrap();
        assert!((f64::from(v) - j(3, 15.0)).abs() < 1e-5);
    }
}
