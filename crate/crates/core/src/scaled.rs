//! Sign and log-magnitude representation for quantities that outgrow `f64`.

use serde::{Deserialize, Serialize};

/// A real number stored as `sign * exp(log_abs)`.
///
/// `log_abs` carries no meaning when `sign == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledValue {
    pub sign: i8,
    pub log_abs: f64,
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };
    pub const ONE: ScaledValue = ScaledValue {
        sign: 1,
        log_abs: 0.0,
    };

    pub fn new(sign: i8, log_abs: f64) -> Self {
        if sign == 0 {
            Self::ZERO
        } else {
            Self {
                sign: sign.signum(),
                log_abs,
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self {
                sign: if x > 0.0 { 1 } else { -1 },
                log_abs: x.abs().ln(),
            }
        }
    }

    /// Plain value; saturates to `±inf` or `0` outside the double range.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_abs.exp()
        }
    }

    /// Plain value, or `None` if it overflows.
    pub fn try_to_f64(self) -> Option<f64> {
        let v = self.to_f64();
        v.is_finite().then_some(v)
    }

    pub fn abs(self) -> Self {
        Self {
            sign: self.sign.abs(),
            log_abs: self.log_abs,
        }
    }

    pub fn mul(self, other: Self) -> Self {
        Self::new(self.sign * other.sign, self.log_abs + other.log_abs)
    }

    /// Division; panics on division by zero.
    pub fn div(self, other: Self) -> Self {
        assert!(other.sign != 0, "ScaledValue division by zero");
        Self::new(self.sign * other.sign, self.log_abs - other.log_abs)
    }

    pub fn powf(self, e: f64) -> Self {
        assert!(self.sign >= 0, "fractional power of a negative ScaledValue");
        Self::new(self.sign, self.log_abs * e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_round_trips() {
        assert_eq!(ScaledValue::from_f64(0.0).to_f64(), 0.0);
        assert_eq!(ScaledValue::from_f64(0.0).sign, 0);
    }

    #[test]
    fn overflow_is_reported() {
        let big = ScaledValue::new(1, 1000.0);
        assert!(big.try_to_f64().is_none());
        assert_eq!(big.div(big).to_f64(), 1.0);
    }

    proptest! {
        #[test]
        fn round_trip(x in -1e300f64..1e300) {
            let back = ScaledValue::from_f64(x).to_f64();
            // exp(ln|x|) carries the absolute error of ln|x| into relative error
            let tol = 4.0 * f64::EPSILON * (1.0 + x.abs().ln().abs());
            prop_assert!((back - x).abs() <= tol * x.abs());
        }

        #[test]
        fn product_matches_plain(a in -1e100f64..1e100, b in -1e100f64..1e100) {
            let p = ScaledValue::from_f64(a).mul(ScaledValue::from_f64(b)).to_f64();
            prop_assert!((p - a * b).abs() <= 1e-13 * (a * b).abs());
        }
    }
}
