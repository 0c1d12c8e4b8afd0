//! The Gegenbauer order parameter.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for integrality predicates on inexact orders.
pub const INTEGER_TOLERANCE: f64 = 1e-12;

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Order `λ > 0` of a Gegenbauer family, kept as an exact fraction `u/v` when known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderParam {
    value: f64,
    exact_rational: Option<(i64, u64)>,
}

impl OrderParam {
    /// Exact order `u / v`, reduced to lowest terms.
    pub fn from_ratio(u: i64, v: u64) -> Result<Self> {
        if v == 0 {
            return Err(Error::InvalidOrder(format!("{u}/0")));
        }
        if u <= 0 {
            return Err(Error::InvalidOrder(format!("{u}/{v} is not positive")));
        }
        let g = gcd(u as u128, v as u128) as i64;
        let (u, v) = (u / g, v / g as u64);
        Ok(Self {
            value: u as f64 / v as f64,
            exact_rational: Some((u, v)),
        })
    }

    pub fn integer(k: i64) -> Result<Self> {
        Self::from_ratio(k, 1)
    }

    /// Inexact order, e.g. the output of a root finder.
    pub fn from_f64(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidOrder(format!("{value} is not a positive finite real")));
        }
        Ok(Self {
            value,
            exact_rational: None,
        })
    }

    /// `λ = (d - 1) / 2`, the order attached to the sphere `S^d`. Fails for `d = 1`.
    pub fn for_sphere(d: usize) -> Result<Self> {
        Self::from_ratio(d as i64 - 1, 2)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<(i64, u64)> {
        self.exact_rational
    }

    /// `λ + k`, exact when `λ` is.
    pub fn shifted(&self, k: i64) -> Result<Self> {
        match self.exact_rational {
            Some((u, v)) => Self::from_ratio(u + k * v as i64, v),
            None => Self::from_f64(self.value + k as f64),
        }
    }

    /// The integer `λ` equals, if any.
    pub fn as_integer(&self) -> Option<i64> {
        match self.exact_rational {
            Some((u, 1)) => Some(u),
            Some(_) => None,
            None => {
                let r = self.value.round();
                ((self.value - r).abs() <= INTEGER_TOLERANCE).then_some(r as i64)
            }
        }
    }

    pub fn is_odd_integer(&self) -> bool {
        self.as_integer().is_some_and(|k| k % 2 == 1)
    }

    pub fn is_one(&self) -> bool {
        self.as_integer() == Some(1)
    }
}

impl fmt::Display for OrderParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_rational {
            Some((u, 1)) => write!(f, "{u}"),
            Some((u, v)) => write!(f, "{u}/{v}"),
            None => write!(f, "{}", self.value),
        }
    }
}

impl FromStr for OrderParam {
    type Err = Error;

    /// Accepts `u/v`, integers and plain decimals; decimals with few enough digits stay exact.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot read order parameter from {s:?}"));
        if let Some((u, v)) = s.split_once('/') {
            let u: i64 = u.trim().parse().map_err(|_| bad())?;
            let v: u64 = v.trim().parse().map_err(|_| bad())?;
            return Self::from_ratio(u, v);
        }
        if let Ok(k) = s.parse::<i64>() {
            return Self::integer(k);
        }
        let value: f64 = s.parse().map_err(|_| bad())?;
        if let Some((int, frac)) = s.split_once('.') {
            let digits = int.trim_start_matches('+').len() + frac.len();
            if frac.chars().all(|c| c.is_ascii_digit()) && digits <= 15 && !frac.is_empty() {
                let scale = 10u64.pow(frac.len() as u32);
                let joined = format!("{}{}", int.trim_start_matches('+'), frac);
                if let Ok(num) = joined.parse::<i64>() {
                    return Self::from_ratio(num, scale);
                }
            }
        }
        Self::from_f64(value)
    }
}
