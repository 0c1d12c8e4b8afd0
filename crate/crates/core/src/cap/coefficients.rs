use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{CapSpec, DiscrepancyReport, Method};
use crate::error::{Error, Result};
use crate::gegenbauer::{gegenbauer_at_one, gegenbauer_eval_scaled, ln_gamma, rodrigues_constant, GegenbauerIter};
use crate::order::OrderParam;
use crate::scaled::ScaledValue;

/// `∫_α^1 C_n^λ(t) (1 - t²)^{λ - 1/2} dt`, in closed form:
/// `-(a_n^λ / a_{n-1}^{λ+1}) (1 - α²)^{λ + 1/2} C_{n-1}^{λ+1}(α)`.
pub fn cap_integral_closed(n: u64, lambda: &OrderParam, alpha: f64) -> f64 {
    cap_integral_scaled(n, lambda, alpha, gegenbauer_eval_scaled(n - 1, &lambda.shifted(1).expect("λ + 1 > 0"), alpha))
        .to_f64()
}

fn cap_integral_scaled(n: u64, lambda: &OrderParam, alpha: f64, c_shifted: ScaledValue) -> ScaledValue {
    assert!(n >= 1, "cap integral needs n >= 1");
    if alpha >= 1.0 {
        return ScaledValue::ZERO;
    }
    let lam = lambda.value();
    let ratio = rodrigues_constant(n, lambda).div(rodrigues_constant(n - 1, &lambda.shifted(1).expect("λ + 1 > 0")));
    let weight = ScaledValue::new(1, (lam + 0.5) * (1.0 - alpha * alpha).ln());
    ScaledValue::new(-ratio.sign, ratio.log_abs).mul(weight).mul(c_shifted)
}

fn coefficient_prefactor(lam: f64) -> f64 {
    ln_gamma(lam + 1.0) - ln_gamma(lam + 0.5) - 0.5 * PI.ln()
}

/// `f̂_t(n, λ)` for the cap indicator `1_{[t, 1]}` on `S^d`.
///
/// For `d = 1` the order-zero limit is used: `f̂_t(n) = sin(nφ) / (nπ)` with
/// `φ = arccos t`, paired with the kernel `2 cos(nθ)` (see [`zonal_at_one`]).
pub fn cap_coefficient(n: u64, cap: &CapSpec) -> f64 {
    assert!(n >= 1, "coefficients start at n = 1");
    if cap.d == 1 {
        return circle_coefficient(n, cap.t);
    }
    let lambda = cap.lambda().expect("d >= 2");
    let shifted = gegenbauer_eval_scaled(n - 1, &cap.lambda_plus(), cap.t);
    coefficient_from_parts(n, &lambda, cap.t, shifted)
}

fn circle_coefficient(n: u64, t: f64) -> f64 {
    (n as f64 * t.acos()).sin() / (n as f64 * PI)
}

fn coefficient_from_parts(n: u64, lambda: &OrderParam, t: f64, c_shifted: ScaledValue) -> f64 {
    let integral = cap_integral_scaled(n, lambda, t, c_shifted);
    let k = ScaledValue::new(1, coefficient_prefactor(lambda.value()));
    k.mul(integral).div(gegenbauer_at_one(n, lambda)).to_f64()
}

/// Mode weight `Z_n(1)` of the zonal kernel: `((n+λ)/λ) C_n^λ(1)`, or `2` on the circle.
pub fn zonal_at_one(n: u64, d: usize) -> f64 {
    if d == 1 {
        return 2.0;
    }
    let lambda = OrderParam::for_sphere(d).expect("d >= 2");
    let lam = lambda.value();
    ScaledValue::new(1, ((n as f64 + lam) / lam).ln())
        .mul(gegenbauer_at_one(n, &lambda))
        .to_f64()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub cap: CapSpec,
    /// `(n, f̂_t(n, λ))` for `n = 1..=n_max`.
    pub entries: Vec<(u64, f64)>,
}

/// `f̂_t(1, λ), ..., f̂_t(n_max, λ)` in one pass of the `C^{λ+1}` recurrence.
pub fn coefficient_table(cap: &CapSpec, n_max: u64) -> CoefficientTable {
    let entries = if cap.d == 1 {
        (1..=n_max).map(|n| (n, circle_coefficient(n, cap.t))).collect()
    } else {
        let lambda = cap.lambda().expect("d >= 2");
        GegenbauerIter::new(&cap.lambda_plus(), cap.t)
            .take(n_max as usize)
            .map(|(m, c)| (m + 1, coefficient_from_parts(m + 1, &lambda, cap.t, c)))
            .collect()
    };
    CoefficientTable { cap: *cap, entries }
}

/// `min_{1 <= k <= K} f̂_t(k, λ)²` with `K = ceil(κ N^{1/d})`.
///
/// `κ` stands in for the unspecified dimensional constant of the mode range.
pub fn bilyk_dai_floor(cap: &CapSpec, n_points: u64, kappa: f64) -> Result<DiscrepancyReport> {
    if n_points < 1 {
        return Err(Error::Domain("floor needs at least one point".into()));
    }
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    let k = ((kappa * (n_points as f64).powf(1.0 / cap.d as f64)).ceil() as u64).max(1);
    let value = coefficient_table(cap, k)
        .entries
        .iter()
        .map(|&(_, f)| f * f)
        .fold(f64::INFINITY, f64::min);
    Ok(DiscrepancyReport {
        method: Method::Floor { k },
        value,
        stderr: None,
        truncation_tail: None,
        cap: *cap,
        n_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::cap_measure;
    use crate::gegenbauer::gegenbauer_eval;
    use crate::quadrature::GaussLegendre;
    use crate::stats::loglog_slope;
    use proptest::prelude::*;

    fn lam(s: &str) -> OrderParam {
        s.parse().unwrap()
    }

    /// `∫_α^1 C_n^λ(t)(1-t²)^{λ-1/2} dt` with `t = cos φ`, so the integrand
    /// becomes `C_n^λ(cos φ) sin^{2λ} φ` on `[0, arccos α]`.
    fn by_quadrature(n: u64, l: &OrderParam, alpha: f64) -> f64 {
        let q = GaussLegendre::new(120);
        let two_lam = 2.0 * l.value();
        q.integrate(0.0, alpha.acos(), |p| {
            gegenbauer_eval(n, l, p.cos()).unwrap() * p.sin().powf(two_lam)
        })
    }

    #[test]
    fn hand_integral() {
        assert!((cap_integral_closed(1, &lam("1/2"), 0.5) - 0.375).abs() < 1e-15);
        assert_eq!(cap_integral_closed(3, &lam("3/2"), 1.0), 0.0);
        assert!(cap_integral_closed(3, &lam("3/2"), 1.0 - 1e-12).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for l in ["1/2", "1", "3/2", "2", "5/2"].map(lam) {
            for alpha in [-0.9, -0.5, 0.0, 0.5, 0.9] {
                for n in 1..=30 {
                    let closed = cap_integral_closed(n, &l, alpha);
                    let quad = by_quadrature(n, &l, alpha);
                    // exact zeros (odd integrands at α = 0) need a rounding floor
                    let floor = 1e-14 * gegenbauer_at_one(n, &l).to_f64();
                    assert!(
                        (closed - quad).abs() <= 1e-10 * quad.abs() + floor,
                        "n={n} λ={l} α={alpha}: {closed} vs {quad}"
                    );
                }
            }
        }
    }

    #[test]
    fn rodrigues_ratio_simplifies() {
        // -a_n^λ / a_{n-1}^{λ+1} = 2λ / (n (n + 2λ))
        for l in ["1/2", "4/3", "7/2"].map(lam) {
            let lv = l.value();
            for n in [1u64, 2, 7, 40, 300] {
                let r = rodrigues_constant(n, &l).div(rodrigues_constant(n - 1, &l.shifted(1).unwrap()));
                let want = 2.0 * lv / (n as f64 * (n as f64 + 2.0 * lv));
                assert_eq!(r.sign, -1);
                assert!((r.log_abs.exp() - want).abs() < 1e-11 * want);
            }
        }
    }

    #[test]
    fn first_coefficient_on_two_sphere() {
        let cap = CapSpec::new(2, 0.5).unwrap();
        assert!((cap_coefficient(1, &cap) - 0.1875).abs() < 1e-15);
    }

    #[test]
    fn table_agrees_with_single_coefficients() {
        for d in [1, 2, 3, 4, 6] {
            let cap = CapSpec::new(d, 0.3).unwrap();
            let table = coefficient_table(&cap, 60);
            assert_eq!(table.entries.len(), 60);
            for &(n, f) in &table.entries {
                let g = cap_coefficient(n, &cap);
                assert!((f - g).abs() <= 1e-13 * g.abs().max(1e-16), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn parseval_for_the_cap_indicator() {
        // Σ_{n>=1} f̂² Z_n(1) = σ - σ², with a tail of order 1/n
        for (d, t) in [(1, 0.2), (2, 0.5), (3, -0.4), (4, 0.7)] {
            let cap = CapSpec::new(d, t).unwrap();
            let s = cap_measure(d, t);
            let sum: f64 = coefficient_table(&cap, 20_000)
                .entries
                .iter()
                .map(|&(n, f)| f * f * zonal_at_one(n, d))
                .sum();
            let gap = s * (1.0 - s) - sum;
            assert!(gap >= -1e-12 && gap < 2e-4, "d={d}: gap {gap}");
        }
    }

    #[test]
    fn circle_coefficients_are_the_zero_order_limit() {
        let t = 0.3;
        let l = OrderParam::from_f64(1e-7).unwrap();
        for n in [1u64, 2, 5, 9] {
            let shifted = gegenbauer_eval_scaled(n - 1, &l.shifted(1).unwrap(), t);
            let small = coefficient_from_parts(n, &l, t, shifted);
            let limit = circle_coefficient(n, t);
            assert!((small - limit).abs() < 1e-6, "n={n}: {small} vs {limit}");
        }
    }

    #[test]
    fn decay_law_on_two_sphere() {
        let cap = CapSpec::new(2, 0.5).unwrap();
        let scaled: Vec<f64> = coefficient_table(&cap, 2000)
            .entries
            .iter()
            .filter(|(n, _)| *n >= 10)
            .map(|&(n, f)| f.abs() * (n as f64).powf(1.5))
            .collect();
        let lo = scaled.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = scaled.iter().copied().fold(0.0, f64::max);
        assert!(lo > 0.0 && hi / lo < 50.0, "{lo} {hi}");
    }

    #[test]
    fn floor_slopes() {
        let cap = CapSpec::new(2, 0.5).unwrap();
        let ns = [1e2, 1e3, 1e4, 1e5, 1e6];
        let vals: Vec<f64> = ns
            .iter()
            .map(|&n| bilyk_dai_floor(&cap, n as u64, 1.0).unwrap().value)
            .collect();
        assert!((loglog_slope(&ns, &vals) + 1.5).abs() < 0.05);
        assert!(vals.windows(2).all(|w| w[1] <= w[0]));
        let golden = ((5f64.sqrt() - 1.0) / 2.0 * PI).cos();
        let circle = CapSpec::new(1, golden).unwrap();
        let vals: Vec<f64> = ns
            .iter()
            .map(|&n| bilyk_dai_floor(&circle, n as u64, 1.0).unwrap().value)
            .collect();
        assert!((loglog_slope(&ns, &vals) + 4.0).abs() < 0.1);
    }

    #[test]
    fn floor_rejects_bad_input() {
        let cap = CapSpec::new(2, 0.5).unwrap();
        assert!(bilyk_dai_floor(&cap, 0, 1.0).is_err());
        assert!(bilyk_dai_floor(&cap, 10, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn floor_is_monotone_in_n(t in -0.95f64..0.95, kappa in 0.2f64..3.0, d in 1usize..5, a in 1u64..5000, b in 1u64..5000) {
            let cap = CapSpec::new(d, t).unwrap();
            let (lo, hi) = (a.min(b), a.max(b));
            prop_assert!(bilyk_dai_floor(&cap, hi, kappa).unwrap().value <= bilyk_dai_floor(&cap, lo, kappa).unwrap().value);
        }
    }
}
