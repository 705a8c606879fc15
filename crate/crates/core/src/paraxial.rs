//! Closed-form spin asymmetries in the paraxial limit `theta_k -> 0`.
//!
//! Each expression is a rational function of `x = k b` with integer
//! coefficients in even powers of `x`. The quadrupole and octupole entries
//! are stored as printed (an overall integer factor times a ratio of
//! polynomials in `x^2`); the dipole rate asymmetry is generated for any
//! topological charge and the dipole circular dichroism vanishes
//! identically.

use serde::{Deserialize, Serialize};

use crate::beam::Helicity;
use crate::error::{Error, Result};
use crate::observables::{circular_dichroism, rate_asymmetry};
use crate::absorption::TransitionSpec;
use crate::beam::MAX_TOPOLOGICAL_CHARGE;
use crate::scalar::{Field, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaKind {
    Cd,
    ALambda,
}

impl FormulaKind {
    pub fn label(self) -> &'static str {
        match self {
            FormulaKind::Cd => "CD",
            FormulaKind::ALambda => "A_lambda",
        }
    }
}

/// `numerator(x) / denominator(x)`, coefficients in ascending powers of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParaxialFormula {
    pub kind: FormulaKind,
    pub mbar: i32,
    pub l_f: u32,
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
}

// (mbar, l_f, factor, numerator in x^2, denominator in x^2), ascending.
type Entry = (i32, u32, i64, &'static [i64], &'static [i64]);

const A_LAMBDA: [Entry; 8] = [
    (1, 2, -1, &[1], &[5, 1]),
    (2, 2, -2, &[9, 2], &[18, 20, 1]),
    (3, 2, -9, &[8, 18, 1], &[72, 162, 45, 1]),
    (4, 2, -8, &[144, 81, 2], &[1152, 648, 80, 1]),
    (1, 3, -1, &[1], &[11, 1]),
    (2, 3, -1, &[42, 4], &[102, 44, 1]),
    (3, 3, -9, &[80, 42, 1], &[720, 918, 99, 1]),
    (4, 3, -8, &[540, 1440, 189, 2], &[4320, 11520, 3672, 176, 1]),
];

const CD: [Entry; 8] = [
    (1, 2, 4, &[1], &[4, 6, 1]),
    (2, 2, 1, &[32, 48], &[32, 84, 24, 1]),
    (3, 2, 36, &[16, 5], &[720, 504, 54, 1]),
    (4, 2, 64, &[54, 7], &[5760, 1744, 96, 1]),
    (1, 3, 10, &[1], &[10, 12, 1]),
    (2, 3, 40, &[3, 8, 3], &[120, 320, 264, 48, 1]),
    (3, 3, 90, &[108, 64, 5], &[9720, 7200, 1746, 108, 1]),
    (4, 3, 160, &[945, 216, 7], &[159840, 57600, 6304, 192, 1]),
];

fn spread(factor: i64, coefs_u: &[i64]) -> Vec<i64> {
    let mut out = vec![0; 2 * coefs_u.len() - 1];
    for (k, &c) in coefs_u.iter().enumerate() {
        out[2 * k] = factor * c;
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn reduce(mut num: Vec<i64>, mut den: Vec<i64>) -> (Vec<i64>, Vec<i64>) {
    while num.len() > 1 && den.len() > 1 && num[0] == 0 && den[0] == 0 {
        num.remove(0);
        den.remove(0);
    }
    let g = num.iter().chain(den.iter()).fold(0, |g, &c| gcd(g, c));
    if g > 1 {
        num.iter_mut().chain(den.iter_mut()).for_each(|c| *c /= g);
    }
    (num, den)
}

fn dipole_asymmetry(mbar: i32) -> ParaxialFormula {
    let m2 = i64::from(mbar) * i64::from(mbar);
    let c0 = m2 * i64::from(mbar - 1).pow(2);
    let (num, den) = reduce(spread(-1, &[c0, 2 * m2]), spread(1, &[c0, 2 * m2, 2]));
    ParaxialFormula {
        kind: FormulaKind::ALambda,
        mbar,
        l_f: 1,
        numerator: num,
        denominator: den,
    }
}

fn unsupported(kind: FormulaKind, mbar: i32, l_f: u32) -> Error {
    Error::UnsupportedParaxial {
        kind: kind.label(),
        mbar,
        l_f,
        supported: format!(
            "l_f=1 with 1 <= mbar <= {MAX_TOPOLOGICAL_CHARGE}; l_f in {{2, 3}} with mbar in {{1, 2, 3, 4}}"
        ),
    }
}

/// The stored expression for `(kind, mbar, l_f)`.
pub fn formula(kind: FormulaKind, mbar: i32, l_f: u32) -> Result<ParaxialFormula> {
    if l_f == 1 && (1..=MAX_TOPOLOGICAL_CHARGE).contains(&mbar) {
        return Ok(match kind {
            FormulaKind::ALambda => dipole_asymmetry(mbar),
            FormulaKind::Cd => ParaxialFormula {
                kind,
                mbar,
                l_f,
                numerator: vec![0],
                denominator: vec![1],
            },
        });
    }
    let entries = match kind {
        FormulaKind::Cd => &CD,
        FormulaKind::ALambda => &A_LAMBDA,
    };
    entries
        .iter()
        .find(|e| e.0 == mbar && e.1 == l_f)
        .map(|&(mbar, l_f, factor, num, den)| ParaxialFormula {
            kind,
            mbar,
            l_f,
            numerator: spread(factor, num),
            denominator: spread(1, den),
        })
        .ok_or_else(|| unsupported(kind, mbar, l_f))
}

/// All tabulated quadrupole and octupole expressions plus the dipole ones
/// for `mbar` in `1..=4`.
pub fn table() -> Vec<ParaxialFormula> {
    let mut out = Vec::new();
    for kind in [FormulaKind::ALambda, FormulaKind::Cd] {
        for l_f in 1..=3 {
            for mbar in 1..=4 {
                out.push(formula(kind, mbar, l_f).expect("tabulated entry"));
            }
        }
    }
    out
}

fn horner<F: Field>(coefs: &[i64], x: &F) -> F {
    coefs.iter().rev().fold(F::zero(), |acc, &c| {
        acc * x.clone() + F::from_i64(c).expect("integer coefficient representable")
    })
}

impl ParaxialFormula {
    pub fn eval<F: Field>(&self, x: F) -> F {
        horner(&self.numerator, &x) / horner(&self.denominator, &x)
    }
}

pub fn paraxial_a_lambda<F: Field>(mbar: i32, l_f: u32, x: F) -> Result<F> {
    Ok(formula(FormulaKind::ALambda, mbar, l_f)?.eval(x))
}

pub fn paraxial_cd<F: Field>(mbar: i32, l_f: u32, x: F) -> Result<F> {
    Ok(formula(FormulaKind::Cd, mbar, l_f)?.eval(x))
}

/// Leading small-angle local flux of an `mbar = 1` beam, with the common
/// factor dropped: `x^2 theta^2 / 4` for `Lambda = +1` and
/// `x^2 theta^2 / 4 + theta^2 / 2` for `Lambda = -1`.
pub fn flux_expansion<T: Real>(mbar: i32, helicity: Helicity, x: T, theta_k: T) -> Result<T> {
    if mbar != 1 {
        return Err(crate::error::domain(format!(
            "leading-order flux is available for mbar = 1 only, got {mbar}"
        )));
    }
    let t2 = theta_k * theta_k;
    let base = x * x * t2 * T::lit(0.25);
    Ok(match helicity {
        Helicity::Plus => base,
        Helicity::Minus => base + t2 * T::lit(0.5),
    })
}

/// Small-angle limit of the full calculation at `x = k b`, from
/// `theta = 1e-3` and `2e-3` extrapolated in `theta^2`.
pub fn numeric_limit<T: Real>(kind: FormulaKind, mbar: i32, l_f: u32, x: T) -> Result<T> {
    numeric_limit_at(kind, mbar, l_f, x, T::lit(1e-3))
}

pub fn numeric_limit_at<T: Real>(kind: FormulaKind, mbar: i32, l_f: u32, x: T, theta: T) -> Result<T> {
    let tr = TransitionSpec::new(l_f)?;
    let b = x / T::TAU();
    let value = |t: T| match kind {
        FormulaKind::Cd => circular_dichroism(mbar, tr, t, b),
        FormulaKind::ALambda => rate_asymmetry(mbar, tr, t, b),
    };
    let (v1, v2) = (value(theta)?, value(theta + theta)?);
    Ok((T::lit(4.0) * v1 - v2) / T::lit(3.0))
}
