//! Exact arithmetic helpers: integer square roots and values of the form
//! `q * sqrt(r)` with nonnegative rationals `q`, `r`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::Rational;

/// `floor(sqrt(x))`.
pub fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut r = (x as f64).sqrt() as u128;
    // the float estimate is within a few units; settle exactly
    while r.checked_mul(r).is_none_or(|sq| sq > x) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= x) {
        r += 1;
    }
    r
}

/// Largest `m` with `m^2 * den <= num`, i.e. `floor(sqrt(num / den))`.
pub fn floor_sqrt_ratio(num: u128, den: u128) -> u128 {
    assert!(den > 0, "zero denominator");
    isqrt(num / den)
}

/// Smallest `m` with `m^2 * den >= num`, i.e. `ceil(sqrt(num / den))`.
pub fn ceil_sqrt_ratio(num: u128, den: u128) -> u128 {
    assert!(den > 0, "zero denominator");
    let target = num.div_ceil(den);
    let r = isqrt(target);
    if r * r == target {
        r
    } else {
        r + 1
    }
}

fn to_parts(q: &Rational) -> (u128, u128) {
    assert!(!q.is_negative(), "negative rational {q}");
    (*q.numer() as u128, *q.denom() as u128)
}

/// A nonnegative real `coeff * sqrt(radicand)`, compared and rounded exactly
/// through its square. Equality is equality of values.
#[derive(Clone, Copy, Debug)]
pub struct Surd {
    coeff: Rational,
    radicand: Rational,
}

impl Surd {
    pub fn new(coeff: Rational, radicand: Rational) -> Self {
        assert!(!coeff.is_negative() && !radicand.is_negative());
        Surd { coeff, radicand }
    }

    pub fn from_rational(q: Rational) -> Self {
        Surd::new(q, Rational::from_integer(1))
    }

    pub fn from_integer(i: u64) -> Self {
        Surd::from_rational(Rational::from_integer(i as i128))
    }

    pub fn coeff(&self) -> Rational {
        self.coeff
    }

    pub fn radicand(&self) -> Rational {
        self.radicand
    }

    /// The exact square `coeff^2 * radicand`.
    pub fn square(&self) -> Rational {
        self.coeff * self.coeff * self.radicand
    }

    /// Multiplies by a nonnegative rational.
    pub fn scale(&self, k: Rational) -> Surd {
        Surd::new(self.coeff * k, self.radicand)
    }

    pub fn ceil(&self) -> u64 {
        let (p, q) = to_parts(&self.square());
        ceil_sqrt_ratio(p, q) as u64
    }

    pub fn floor(&self) -> u64 {
        let (p, q) = to_parts(&self.square());
        floor_sqrt_ratio(p, q) as u64
    }

    /// Rational bracket `lo <= value <= hi` with `hi - lo <= 10^-digits`.
    pub fn bracket(&self, digits: u32) -> (Rational, Rational) {
        let scale = 10u128.pow(digits);
        let (p, q) = to_parts(&self.square());
        let lo = floor_sqrt_ratio(p * scale * scale, q);
        let hi = ceil_sqrt_ratio(p * scale * scale, q);
        (
            Rational::new(lo as i128, scale as i128),
            Rational::new(hi as i128, scale as i128),
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero() || self.radicand.is_zero()
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.square() == other.square()
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.square().cmp(&other.square())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == Rational::from_integer(1) {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn integer_roots() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(u128::MAX), (1u128 << 64) - 1);
        assert_eq!(floor_sqrt_ratio(100, 1), 10);
        assert_eq!(ceil_sqrt_ratio(101, 1), 11);
        assert_eq!(ceil_sqrt_ratio(1, 2), 1);
        assert_eq!(ceil_sqrt_ratio(0, 7), 0);
    }

    #[test]
    fn surd_rounding() {
        // 10 / sqrt(2) = 10 * sqrt(1/2) ~ 7.071
        let s = Surd::new(Rational::from_integer(10), Rational::new(1, 2));
        assert_eq!(s.ceil(), 8);
        assert_eq!(s.floor(), 7);
        let (lo, hi) = s.bracket(6);
        assert!(lo <= hi && hi - lo <= Rational::new(1, 1_000_000));
        assert!((s.to_f64() - 7.0710678).abs() < 1e-6);
        assert_eq!(Surd::from_integer(5).ceil(), 5);
    }

    #[test]
    fn ordering_by_square() {
        let twelve_root_two = Surd::new(Rational::from_integer(12), Rational::from_integer(2));
        assert!(twelve_root_two > Surd::from_integer(16));
        assert!(twelve_root_two < Surd::from_integer(17));
    }

    proptest! {
        #[test]
        fn isqrt_is_floor(x in any::<u64>()) {
            let r = isqrt(x as u128);
            prop_assert!(r * r <= x as u128);
            prop_assert!((r + 1) * (r + 1) > x as u128);
        }
    }
}
