//! Double-double arithmetic (about 106 bits of mantissa).
//!
//! Only what the extended-precision re-evaluation of Gegenbauer values needs:
//! the four field operations and `cos(pi * p / q)`.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };

    pub fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(num as f64) / Self::new(den as f64)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn mul_pow2(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Self {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    fn sin_cos_small(y: Self) -> (Self, Self) {
        // Taylor series; |y| <= 0.2 so 16 terms reach ~1e-35.
        let y2 = y * y;
        let mut term = y;
        let mut sin = y;
        let mut k = 1.0;
        for _ in 0..16 {
            term = -(term * y2) / Self::new((k + 1.0) * (k + 2.0));
            sin = sin + term;
            k += 2.0;
        }
        let mut term = Self::ONE;
        let mut cos = Self::ONE;
        let mut k = 0.0;
        for _ in 0..16 {
            term = -(term * y2) / Self::new((k + 1.0) * (k + 2.0));
            cos = cos + term;
            k += 2.0;
        }
        (sin, cos)
    }

    /// `cos(pi * p / q)` for `0 <= p/q <= 1`.
    pub fn cos_pi_ratio(p: i64, q: i64) -> Self {
        let theta = Self::PI * Self::from_ratio(p, q);
        let (mut s, mut c) = Self::sin_cos_small(theta.mul_pow2(-4));
        for _ in 0..4 {
            let s2 = (s * c).mul_pow2(1);
            let c2 = c * c - s * s;
            s = s2;
            c = c2;
        }
        c
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * Self::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Self::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::new(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_times_three_is_one() {
        let third = DoubleDouble::from_ratio(1, 3);
        let back = third * DoubleDouble::new(3.0) - DoubleDouble::ONE;
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn cos_pi_fifth_matches_golden_ratio() {
        // cos(pi/5) = (1 + sqrt 5) / 4; square it to avoid needing a dd sqrt:
        // c^2 = (3 + sqrt 5) / 8, so (8 c^2 - 3)^2 = 5.
        let c = DoubleDouble::cos_pi_ratio(1, 5);
        let t = DoubleDouble::new(8.0) * c * c - DoubleDouble::new(3.0);
        let r = t * t - DoubleDouble::new(5.0);
        assert!(r.to_f64().abs() < 1e-29, "{r:?}");
    }

    #[test]
    fn cos_known_values() {
        let half = DoubleDouble::cos_pi_ratio(1, 3) - DoubleDouble::new(0.5);
        assert!(half.to_f64().abs() < 1e-30);
        let zero = DoubleDouble::cos_pi_ratio(1, 2);
        assert!(zero.to_f64().abs() < 1e-30);
        let minus_one = DoubleDouble::cos_pi_ratio(1, 1) + DoubleDouble::ONE;
        assert!(minus_one.to_f64().abs() < 1e-30);
        for (p, q) in [(1, 7), (3, 11), (5, 6), (13, 17)] {
            let c = DoubleDouble::cos_pi_ratio(p, q).to_f64();
            let want = (std::f64::consts::PI * p as f64 / q as f64).cos();
            assert!((c - want).abs() < 4e-16);
        }
    }
}
