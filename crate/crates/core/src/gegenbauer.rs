//! Gegenbauer (ultraspherical) polynomials `C_n^λ`.
//!
//! Values come from the three-term recurrence
//!
//! ```text
//! C_0 = 1,  C_1 = 2λx,
//! n C_n = (n + λ - 1) 2x C_{n-1} - (n + 2λ - 2) C_{n-2}.
//! ```
//!
//! The recurrence runs on a mantissa with a shared binary exponent that is
//! renormalised whenever `|C_n|` passes `2^512`, so magnitudes of order
//! `n^{2λ-1}` never overflow the running state. Gamma-function ratios
//! (norms, `C_n^λ(1)`, Rodrigues constants) are formed in the log domain.

use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::order::OrderParam;
use crate::scaled::ScaledValue;

const RESCALE_UP: f64 = 1.340_780_792_994_259_7e154; // 2^512
const RESCALE_DOWN: f64 = 7.458_340_731_200_207e-155; // 2^-512

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Streaming evaluation of `C_0^λ(x), C_1^λ(x), ...`.
#[derive(Debug, Clone)]
pub struct GegenbauerIter {
    lambda: f64,
    two_x: f64,
    n: u64,
    prev: f64,
    curr: f64,
    exp2: i64,
}

impl GegenbauerIter {
    pub fn new(lambda: &OrderParam, x: f64) -> Self {
        Self {
            lambda: lambda.value(),
            two_x: 2.0 * x,
            n: 0,
            prev: 0.0,
            curr: 1.0,
            exp2: 0,
        }
    }

    fn value(&self) -> ScaledValue {
        if self.curr == 0.0 {
            ScaledValue::ZERO
        } else {
            ScaledValue::new(
                if self.curr > 0.0 { 1 } else { -1 },
                self.curr.abs().ln() + self.exp2 as f64 * LN_2,
            )
        }
    }

    fn advance(&mut self) {
        let n = (self.n + 1) as f64;
        let lam = self.lambda;
        let next = if self.n == 0 {
            lam * self.two_x
        } else {
            ((n + lam - 1.0) * self.two_x * self.curr - (n + 2.0 * lam - 2.0) * self.prev) / n
        };
        self.prev = self.curr;
        self.curr = next;
        self.n += 1;
        if self.curr.abs() > RESCALE_UP {
            self.curr *= RESCALE_DOWN;
            self.prev *= RESCALE_DOWN;
            self.exp2 += 512;
        }
    }
}

impl Iterator for GegenbauerIter {
    /// `(n, C_n^λ(x))`
    type Item = (u64, ScaledValue);

    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.n, self.value());
        self.advance();
        Some(out)
    }
}

/// `C_n^λ(x)` as sign and log-magnitude.
pub fn gegenbauer_eval_scaled(n: u64, lambda: &OrderParam, x: f64) -> ScaledValue {
    let mut it = GegenbauerIter::new(lambda, x);
    for _ in 0..n {
        it.advance();
    }
    it.value()
}

/// `C_n^λ(x)` by the three-term recurrence.
pub fn gegenbauer_eval(n: u64, lambda: &OrderParam, x: f64) -> Result<f64> {
    gegenbauer_eval_scaled(n, lambda, x)
        .try_to_f64()
        .ok_or(Error::MagnitudeOutOfRange)
}

/// `C_n^λ(x)` in double-double arithmetic, for tie-breaking near roots.
pub fn gegenbauer_eval_extended(n: u64, lambda: &OrderParam, x: DoubleDouble) -> DoubleDouble {
    let lam = match lambda.exact() {
        Some((u, v)) => DoubleDouble::from_ratio(u, v as i64),
        None => DoubleDouble::new(lambda.value()),
    };
    let two_x = x.mul_pow2(1);
    if n == 0 {
        return DoubleDouble::ONE;
    }
    let mut prev = DoubleDouble::ONE;
    let mut curr = lam * two_x;
    let one = DoubleDouble::ONE;
    let two = DoubleDouble::new(2.0);
    for k in 2..=n {
        let kd = DoubleDouble::new(k as f64);
        let a = (kd + lam - one) * two_x * curr;
        let b = (kd + two * lam - two) * prev;
        let next = (a - b) / kd;
        prev = curr;
        curr = next;
    }
    curr
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SequenceEntry {
    pub n: u64,
    pub value: f64,
    /// `value / n^{λ-1}` for `n >= 1`; equal to `value` at `n = 0`.
    pub scaled: f64,
}

/// `C_0^λ(x), ..., C_{n_max}^λ(x)` with the scaled column of the growth envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GegenSequence {
    pub lambda: OrderParam,
    pub x: f64,
    pub values: Vec<SequenceEntry>,
}

/// `C_n^λ(x) / n^{λ-1}` from a scaled value.
pub fn scale_by_envelope(n: u64, lambda: f64, c: ScaledValue) -> f64 {
    if n == 0 {
        return c.to_f64();
    }
    ScaledValue::new(c.sign, c.log_abs - (lambda - 1.0) * (n as f64).ln()).to_f64()
}

pub fn gegenbauer_sequence(n_max: u64, lambda: &OrderParam, x: f64) -> Result<GegenSequence> {
    if n_max == 0 {
        return Err(Error::Domain("sequence length n_max must be at least 1".into()));
    }
    let lam = lambda.value();
    let values = GegenbauerIter::new(lambda, x)
        .take(n_max as usize + 1)
        .map(|(n, c)| {
            let value = c.try_to_f64().ok_or(Error::MagnitudeOutOfRange)?;
            Ok(SequenceEntry {
                n,
                value,
                scaled: scale_by_envelope(n, lam, c),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GegenSequence {
        lambda: *lambda,
        x,
        values,
    })
}

/// `C_n^λ(1) = Γ(n + 2λ) / (Γ(2λ) n!)`.
pub fn gegenbauer_at_one(n: u64, lambda: &OrderParam) -> ScaledValue {
    if n == 0 {
        return ScaledValue::ONE;
    }
    let two_lam = 2.0 * lambda.value();
    let n = n as f64;
    ScaledValue::new(1, ln_gamma(n + two_lam) - ln_gamma(two_lam) - ln_gamma(n + 1.0))
}

/// `∫_{-1}^{1} C_n^λ(x)^2 (1 - x^2)^{λ - 1/2} dx`.
pub fn squared_norm(n: u64, lambda: &OrderParam) -> f64 {
    let lam = lambda.value();
    let n = n as f64;
    let log = PI.ln() + (1.0 - 2.0 * lam) * LN_2 - 2.0 * ln_gamma(lam) + ln_gamma(n + 2.0 * lam)
        - ln_gamma(n + 1.0)
        - (n + lam).ln();
    log.exp()
}

/// Rodrigues constant `a_n^λ`, so that
/// `C_n^λ(t) = a_n^λ (1 - t^2)^{1/2 - λ} d^n/dt^n (1 - t^2)^{n + λ - 1/2}`.
pub fn rodrigues_constant(n: u64, lambda: &OrderParam) -> ScaledValue {
    if n == 0 {
        return ScaledValue::ONE;
    }
    let lam = lambda.value();
    let nf = n as f64;
    let log = -nf * LN_2 - ln_gamma(nf + 1.0) + ln_gamma(lam + 0.5) + ln_gamma(nf + 2.0 * lam)
        - ln_gamma(2.0 * lam)
        - ln_gamma(lam + nf + 0.5);
    ScaledValue::new(if n % 2 == 0 { 1 } else { -1 }, log)
}

/// Large-`n` description of `C_n^λ(cos θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KtEnvelope {
    /// `n^{λ-1} / (2^{λ-1} Γ(λ) sin^λ θ) · cos((n + λ)θ - λπ/2)`
    pub main: f64,
    /// The modulus bound of `main`: the same expression without the cosine.
    pub amplitude: f64,
    /// `n^{λ-2} / sin^{λ+1} θ`; the residual is at most an unknown `c_λ` times this.
    pub error_bound_shape: f64,
}

pub fn kt_envelope(n: u64, lambda: &OrderParam, theta: f64) -> Result<KtEnvelope> {
    let s = theta.sin();
    let nf = n as f64;
    if !(nf * s >= 1.0) {
        return Err(Error::AsymptoticRegimeNotReached(nf * s));
    }
    let lam = lambda.value();
    let amplitude = envelope_log(nf, lam, s).exp();
    let phase = (nf + lam) * theta - lam * PI / 2.0;
    Ok(KtEnvelope {
        main: amplitude * phase.cos(),
        amplitude,
        error_bound_shape: ((lam - 2.0) * nf.ln() - (lam + 1.0) * s.ln()).exp(),
    })
}

/// `ln( n^{λ-1} / (2^{λ-1} Γ(λ) sin^λ θ) )`
pub(crate) fn envelope_log(n: f64, lam: f64, sin_theta: f64) -> f64 {
    (lam - 1.0) * n.ln() - (lam - 1.0) * LN_2 - ln_gamma(lam) - lam * sin_theta.ln()
}

/// Empirical `c_λ`: the largest `|C_n - main| / shape` over `burn_in`.
pub fn fit_kt_constant(
    lambda: &OrderParam,
    theta: f64,
    burn_in: std::ops::RangeInclusive<u64>,
) -> Result<f64> {
    let x = theta.cos();
    let (lo, hi) = (*burn_in.start(), *burn_in.end());
    let mut best: f64 = 0.0;
    for (n, c) in GegenbauerIter::new(lambda, x).take(hi as usize + 1) {
        if n < lo {
            continue;
        }
        let env = kt_envelope(n, lambda, theta)?;
        let c = c.try_to_f64().ok_or(Error::MagnitudeOutOfRange)?;
        best = best.max((c - env.main).abs() / env.error_bound_shape);
    }
    Ok(best)
}
