//! Nearest-integer distances, the phase gap, the divisibility obstruction,
//! continued fractions and rational-angle recognition.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::order::{gcd, OrderParam, INTEGER_TOLERANCE};

/// An angle `θ = π p / q` with `0 < p < q` coprime; it stands for `x = cos θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalAngle {
    p: i64,
    q: i64,
}

impl RationalAngle {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p <= 0 || q <= p || gcd(p as u128, q as u128) != 1 {
            return Err(Error::InvalidAngle { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn theta(&self) -> f64 {
        PI * self.p as f64 / self.q as f64
    }

    pub fn x(&self) -> f64 {
        self.x_extended().to_f64()
    }

    pub fn x_extended(&self) -> DoubleDouble {
        DoubleDouble::cos_pi_ratio(self.p, self.q)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// `min_m |x - m|`.
pub fn dist_to_nearest_int(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Exact phase gap as a reduced fraction `num / den`, when `λ` is rational.
pub fn phase_gap_exact(angle: &RationalAngle, lambda: &OrderParam) -> Option<(i128, i128)> {
    let (u, v) = lambda.exact()?;
    let (p, q) = (angle.p as i128, angle.q as i128);
    let (u, v) = (u as i128, v as i128);
    // (n + u/v) p/q - (u/v + 1)/2 = [2p(nv + u) - q(u + v)] / (2vq)
    let den = 2 * v * q;
    let best = (1..=q)
        .map(|n| {
            let r = (2 * p * (n * v + u) - q * (u + v)).rem_euclid(den);
            r.min(den - r)
        })
        .min()
        .expect("q >= 2");
    let g = gcd(best as u128, den as u128).max(1) as i128;
    Some((best / g, den / g))
}

/// Phase gap in floating point; values within [`INTEGER_TOLERANCE`] of zero snap to zero.
pub fn phase_gap_float(angle: &RationalAngle, lambda: &OrderParam) -> f64 {
    let lam = lambda.value();
    let ratio = angle.p as f64 / angle.q as f64;
    let gap = (1..=angle.q)
        .map(|n| dist_to_nearest_int((n as f64 + lam) * ratio - (lam + 1.0) / 2.0))
        .fold(f64::INFINITY, f64::min);
    if gap <= INTEGER_TOLERANCE {
        0.0
    } else {
        gap
    }
}

/// `X = min_{1<=n<=q} ||(n + λ) p/q - (λ + 1)/2||`, exact when `λ` is rational.
pub fn phase_gap(angle: &RationalAngle, lambda: &OrderParam) -> f64 {
    match phase_gap_exact(angle, lambda) {
        Some((num, den)) => num as f64 / den as f64,
        None => phase_gap_float(angle, lambda),
    }
}

/// Smallest `1 <= n <= q` such that `λ(2p - q) + 2np - q` is an integer divisible by `2q`.
///
/// `None` means the divisibility condition on `(angle, λ)` holds.
pub fn divisibility_obstruction(angle: &RationalAngle, lambda: &OrderParam) -> Option<i64> {
    let (p, q) = (angle.p, angle.q);
    let k: i128 = match lambda.exact() {
        Some((u, v)) => {
            let t = u as i128 * (2 * p - q) as i128;
            if t % v as i128 != 0 {
                return None;
            }
            t / v as i128
        }
        None => {
            let y = lambda.value() * (2 * p - q) as f64;
            let r = y.round();
            if (y - r).abs() > INTEGER_TOLERANCE {
                return None;
            }
            r as i128
        }
    };
    (1..=q).find(|&n| (k + (2 * n * p - q) as i128).rem_euclid(2 * q as i128) == 0)
}

/// Partial quotients `a_1, a_2, ...` of some `α ∈ (0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub terms: Vec<u64>,
    pub value_is_rational: bool,
}

impl ContinuedFraction {
    /// Convergents `p_k / q_k`, one per term.
    pub fn convergents(&self) -> Vec<(u64, u64)> {
        let (mut h0, mut h1) = (0u64, 1u64);
        let (mut k0, mut k1) = (1u64, 0u64);
        self.terms
            .iter()
            .map(|&a| {
                let h = a * h0 + h1;
                let k = a * k0 + k1;
                (h1, h0) = (h0, h);
                (k1, k0) = (k0, k);
                (h, k)
            })
            .collect()
    }

    pub fn max_partial_quotient(&self) -> u64 {
        self.terms.iter().copied().max().unwrap_or(0)
    }
}

/// Largest convergent denominator from which another partial quotient is
/// still trustworthy in double precision.
const RELIABLE_DENOMINATOR: f64 = 8.0e6;

pub fn continued_fraction(alpha: f64, depth: usize) -> Result<ContinuedFraction> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("continued fraction input {alpha} not in (0, 1)")));
    }
    let mut terms = Vec::with_capacity(depth);
    let mut frac = alpha;
    let (mut h0, mut h1) = (0.0f64, 1.0f64);
    let (mut k0, mut k1) = (1.0f64, 0.0f64);
    while terms.len() < depth {
        if k0 > RELIABLE_DENOMINATOR {
            return Err(Error::PrecisionExhausted {
                partial: ContinuedFraction {
                    terms,
                    value_is_rational: false,
                },
            });
        }
        let x = 1.0 / frac;
        let a = x.floor();
        terms.push(a as u64);
        frac = x - a;
        let h = a * h0 + h1;
        let k = a * k0 + k1;
        (h1, h0) = (h0, h);
        (k1, k0) = (k0, k);
        if (alpha - h / k).abs() <= 4.0 * f64::EPSILON * alpha || frac == 0.0 {
            // [.., a, 1] and [.., a + 1] are the same number
            if terms.len() >= 2 && terms.last() == Some(&1) {
                terms.pop();
                *terms.last_mut().expect("non-empty") += 1;
            }
            return Ok(ContinuedFraction {
                terms,
                value_is_rational: true,
            });
        }
    }
    Ok(ContinuedFraction {
        terms,
        value_is_rational: false,
    })
}

/// Finds reduced `p/q` with `q <= q_max` and `|x - cos(πp/q)| <= tol`.
///
/// Walks the Stern–Brocot path of `arccos(x)/π`, so candidates are the
/// convergents and intermediate fractions in increasing denominator.
/// `None` is a failure to recognise, not a proof of irrationality.
pub fn recognize_rational_angle(x: f64, q_max: u64, tol: f64) -> Option<RationalAngle> {
    if !(x > -1.0 && x < 1.0) {
        return None;
    }
    let alpha = x.acos() / PI;
    let q_max = q_max as i64;
    let (mut lp, mut lq) = (0i64, 1i64);
    let (mut up, mut uq) = (1i64, 1i64);
    loop {
        let (mp, mq) = (lp + up, lq + uq);
        if mq > q_max {
            return None;
        }
        if (x - (PI * mp as f64 / mq as f64).cos()).abs() <= tol {
            return RationalAngle::new(mp, mq).ok();
        }
        let m = mp as f64 / mq as f64;
        if alpha < m {
            (up, uq) = (mp, mq);
        } else if alpha > m {
            (lp, lq) = (mp, mq);
        } else {
            return None;
        }
    }
}
