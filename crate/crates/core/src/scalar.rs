//! Scalar fields the geometry is generic over.
//!
//! Everything in the library works with `f64`. The left-invariant Lie group
//! example is exactly rational, so the algebraic code paths are also
//! instantiated with [`Rational`] to verify identities without rounding.

use std::fmt::{Debug, Display};

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

/// Exact rational numbers backed by 128-bit integers.
pub type Rational = Ratio<i128>;

pub trait Scalar:
    Copy + Debug + Display + PartialOrd + Signed + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    fn to_f64(self) -> f64;

    /// Square root, or `None` when it is not representable in this field
    /// (negative argument, or an irrational root of a rational).
    fn sqrt_checked(self) -> Option<Self>;

    /// `|self|` as a float, used for residual reporting.
    fn magnitude(self) -> f64 {
        self.to_f64().abs()
    }

    fn is_finite_value(self) -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn sqrt_checked(self) -> Option<Self> {
        if self < 0.0 {
            None
        } else {
            Some(self.sqrt())
        }
    }

    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    fn sqrt_checked(self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = *self.numer();
        let den = *self.denom();
        let rn = num.sqrt();
        let rd = den.sqrt();
        (rn * rn == num && rd * rd == den).then(|| Ratio::new(rn, rd))
    }
}

/// Shorthand for `T::from_i64(n)`.
#[inline]
pub fn int<T: Scalar>(n: i64) -> T {
    T::from_i64(n)
}

/// Convenience constructor for exact fractions.
pub fn ratio(num: i128, den: i128) -> Rational {
    Ratio::new(num, den)
}

/// Converts a float to the nearest rational with a bounded denominator.
///
/// Returns `None` for non-finite input. Values such as `2.0`, `0.5` or `0.1`
/// come back as `2`, `1/2` and `1/10`.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    // continued fraction expansion, denominators capped at 10^9
    const MAX_DEN: i128 = 1_000_000_000;
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > MAX_DEN {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a;
        if frac.abs() < 1e-12 || (h1 as f64 / k1 as f64 - x).abs() <= 1e-15 * x.abs().max(1.0) {
            break;
        }
        rest = 1.0 / frac;
    }
    (k1 != 0).then(|| Ratio::new(h1, k1))
}
