//! Finite certification of gegenbadly approximable numbers.
//!
//! A number `x = cos(πp/q)` is certified for order `λ` by
//!
//! 1. rejecting odd integer orders,
//! 2. checking the divisibility condition (equivalently, a positive phase gap `X`),
//! 3. bounding the index `N = (π/2) λ|1-λ| |cot(πp/q)| / X` past which the
//!    sequence can no longer vanish, and
//! 4. scanning `C_1^λ(x), ..., C_N^λ(x)` for zeros.
//!
//! A clean scan yields the constant `c_x`: the smaller of the scanned
//! `min |C_n^λ(x)| / n^{λ-1}` and the limiting infimum
//! `sin(πX) / (2^{λ-1} Γ(λ) sin^λ θ)` of the same ratio.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::diophantine::{divisibility_obstruction, phase_gap, recognize_rational_angle, RationalAngle};
use crate::error::{Error, Result};
use crate::gegenbauer::{
    gegenbauer_eval_extended, gegenbauer_eval_scaled, ln_gamma, scale_by_envelope, GegenbauerIter,
};
use crate::order::OrderParam;

/// Every certificate scans at least this many terms.
pub const MIN_SCAN: u64 = 32;
/// Thresholds beyond this are not scanned; the verdict is inconclusive.
pub const MAX_SCAN: u64 = 50_000_000;
/// Zero tolerance relative to the asymptotic envelope of `|C_n^λ(cos θ)|`.
pub const ZERO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    GegenbadlyApproximable,
    FailsOddLambda,
    #[serde(rename = "fails_condition_i")]
    FailsConditionI,
    #[serde(rename = "fails_condition_ii")]
    FailsConditionII { witness: i64 },
    RootBelowThreshold { root: u64, value: f64 },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_failure(&self) -> bool {
        !matches!(self, Verdict::GegenbadlyApproximable | Verdict::Inconclusive { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// `None` when the input could not be matched to a rational angle.
    pub angle: Option<RationalAngle>,
    pub x: f64,
    pub lambda: OrderParam,
    pub verdict: Verdict,
    pub phase_gap_x: f64,
    /// `None` when the phase gap vanishes.
    pub n_threshold: Option<f64>,
    /// The threshold used `|cot|` because `p/q >= 1/2`.
    pub threshold_abs_extension: bool,
    pub checked_up_to: u64,
    pub empirical_c: f64,
    /// Where the scanned minimum occurred.
    pub empirical_argmin: u64,
    /// Infimum of the scaled sequence as `n → ∞`; zero without a phase gap.
    pub asymptotic_floor: f64,
    /// Zero tolerance on `|C_n| / n^{λ-1}`.
    pub zero_tolerance_used: f64,
}

impl Certificate {
    /// Checks the internal consistency rules every emitted certificate obeys.
    pub fn validate(&self) -> std::result::Result<(), String> {
        match &self.verdict {
            Verdict::GegenbadlyApproximable => {
                let n = self.n_threshold.ok_or("certified without a threshold")?;
                if !(self.phase_gap_x > 0.0) {
                    return Err("certified with a zero phase gap".into());
                }
                if !(self.empirical_c > 0.0) {
                    return Err("certified with a zero constant".into());
                }
                if (self.checked_up_to as f64) < n.ceil() {
                    return Err("scan stopped before the threshold".into());
                }
                if self.empirical_c > self.asymptotic_floor {
                    return Err("constant exceeds the limiting infimum".into());
                }
            }
            Verdict::RootBelowThreshold { root, value } => {
                let n = self.n_threshold.ok_or("root verdict without a threshold")?;
                if (*root as f64) > n.ceil() {
                    return Err(format!("root {root} beyond threshold {n}"));
                }
                let scaled = value.abs() / (*root as f64).powf(self.lambda.value() - 1.0);
                if !(scaled < self.zero_tolerance_used) {
                    return Err(format!("root value {value} above the zero tolerance"));
                }
            }
            Verdict::FailsConditionII { .. } => {
                if self.phase_gap_x != 0.0 {
                    return Err("obstructed but the phase gap is positive".into());
                }
            }
            _ => {}
        }
        if self.empirical_c < 0.0 {
            return Err("negative empirical constant".into());
        }
        Ok(())
    }
}

/// `N_{x,λ}` and whether the `|cot|` extension for `p/q >= 1/2` was used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdBound {
    pub value: f64,
    pub abs_extension: bool,
}

/// `(π/2) λ |1 - λ| |cot(πp/q)| / X`; zero when `λ = 1`.
pub fn n_threshold(angle: &RationalAngle, lambda: &OrderParam) -> Result<ThresholdBound> {
    let abs_extension = 2 * angle.p() >= angle.q();
    if lambda.is_one() {
        return Ok(ThresholdBound {
            value: 0.0,
            abs_extension,
        });
    }
    let gap = phase_gap(angle, lambda);
    if gap == 0.0 {
        return Err(Error::NoThreshold);
    }
    let lam = lambda.value();
    let theta = angle.theta();
    let cot = (theta.cos() / theta.sin()).abs();
    Ok(ThresholdBound {
        value: PI / 2.0 * lam * (1.0 - lam).abs() * cot / gap,
        abs_extension,
    })
}

/// Minimum of `|C_n^λ(x)| / n^{λ-1}` over `1 <= n <= n_max` and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanMin {
    pub min_scaled: f64,
    pub argmin_n: u64,
}

pub fn scan_sequence_min(x: f64, lambda: &OrderParam, n_max: u64) -> ScanMin {
    let lam = lambda.value();
    GegenbauerIter::new(lambda, x)
        .skip(1)
        .take(n_max as usize)
        .map(|(n, c)| (n, scale_by_envelope(n, lam, c).abs()))
        .fold(
            ScanMin {
                min_scaled: f64::INFINITY,
                argmin_n: 0,
            },
            |best, (n, s)| {
                if s < best.min_scaled {
                    ScanMin {
                        min_scaled: s,
                        argmin_n: n,
                    }
                } else {
                    best
                }
            },
        )
}

/// `1 / (2^{λ-1} Γ(λ) sin^λ θ)`, the amplitude of `C_n^λ(cos θ) / n^{λ-1}`.
fn envelope_amplitude(lambda: f64, theta: f64) -> f64 {
    (-lambda * theta.sin().ln() - (lambda - 1.0) * LN_2 - ln_gamma(lambda)).exp()
}

fn zero_tolerance_scaled(lambda: f64, theta: f64) -> f64 {
    ZERO_TOLERANCE * envelope_amplitude(lambda, theta)
}

struct Scan {
    up_to: u64,
    min: ScanMin,
    root: Option<(u64, f64)>,
}

/// Scans `1..=up_to`, stopping at the first confirmed zero.
fn scan_for_roots(angle: &RationalAngle, lambda: &OrderParam, up_to: u64, tol: f64) -> Scan {
    let lam = lambda.value();
    let mut min = ScanMin {
        min_scaled: f64::INFINITY,
        argmin_n: 0,
    };
    for (n, c) in GegenbauerIter::new(lambda, angle.x()).skip(1).take(up_to as usize) {
        let s = scale_by_envelope(n, lam, c).abs();
        if s < min.min_scaled {
            min = ScanMin {
                min_scaled: s,
                argmin_n: n,
            };
        }
        if s < tol {
            let precise = gegenbauer_eval_extended(n, lambda, angle.x_extended()).to_f64();
            if precise.abs() / (n as f64).powf(lam - 1.0) < tol {
                return Scan {
                    up_to: n,
                    min,
                    root: Some((n, precise)),
                };
            }
        }
    }
    Scan {
        up_to,
        min,
        root: None,
    }
}

/// Runs the full decision pipeline for `x = cos(πp/q)` and order `λ`.
pub fn certify(angle: &RationalAngle, lambda: &OrderParam, n_max_override: Option<u64>) -> Certificate {
    let lam = lambda.value();
    let tol = zero_tolerance_scaled(lam, angle.theta());
    let floor_scan = MIN_SCAN.max(n_max_override.unwrap_or(0));
    let mut cert = Certificate {
        angle: Some(*angle),
        x: angle.x(),
        lambda: *lambda,
        verdict: Verdict::Inconclusive {
            reason: String::new(),
        },
        phase_gap_x: phase_gap(angle, lambda),
        n_threshold: None,
        threshold_abs_extension: 2 * angle.p() >= angle.q(),
        checked_up_to: 0,
        empirical_c: 0.0,
        empirical_argmin: 0,
        asymptotic_floor: 0.0,
        zero_tolerance_used: tol,
    };
    let early = if lambda.is_odd_integer() && !lambda.is_one() {
        Some(Verdict::FailsOddLambda)
    } else {
        divisibility_obstruction(angle, lambda).map(|witness| Verdict::FailsConditionII { witness })
    };
    if let Some(verdict) = early {
        // diagnostic scan only; the verdict is already decided
        let min = scan_sequence_min(cert.x, lambda, floor_scan);
        cert.verdict = verdict;
        cert.checked_up_to = floor_scan;
        cert.empirical_c = min.min_scaled;
        cert.empirical_argmin = min.argmin_n;
        return cert;
    }
    let bound = match n_threshold(angle, lambda) {
        Ok(b) => b,
        Err(e) => {
            cert.verdict = Verdict::Inconclusive { reason: e.to_string() };
            return cert;
        }
    };
    cert.n_threshold = Some(bound.value);
    cert.asymptotic_floor = envelope_amplitude(lam, angle.theta()) * (PI * cert.phase_gap_x).sin();
    let needed = bound.value.ceil() as u64;
    if bound.value.ceil() > MAX_SCAN as f64 {
        cert.verdict = Verdict::Inconclusive {
            reason: format!("threshold {} exceeds the scan limit {MAX_SCAN}", bound.value),
        };
        return cert;
    }
    let scan = scan_for_roots(angle, lambda, needed.max(floor_scan), tol);
    cert.checked_up_to = scan.up_to;
    cert.empirical_c = scan.min.min_scaled.min(cert.asymptotic_floor);
    cert.empirical_argmin = scan.min.argmin_n;
    cert.verdict = match scan.root {
        Some((root, value)) if root <= needed => Verdict::RootBelowThreshold { root, value },
        Some((root, _)) => Verdict::Inconclusive {
            reason: format!("zero at n = {root}, beyond the threshold {}", bound.value),
        },
        None => Verdict::GegenbadlyApproximable,
    };
    cert
}

/// Certifies a real `x`, first trying to write it as `cos(πp/q)` with `q <= q_max`.
pub fn certify_real(x: f64, lambda: &OrderParam, q_max: u64, n_max_override: Option<u64>) -> Certificate {
    if let Some(angle) = recognize_rational_angle(x, q_max, 1e-12) {
        return certify(&angle, lambda, n_max_override);
    }
    let n = MIN_SCAN.max(n_max_override.unwrap_or(0));
    let min = scan_sequence_min(x, lambda, n);
    Certificate {
        angle: None,
        x,
        lambda: *lambda,
        verdict: Verdict::FailsConditionI,
        phase_gap_x: 0.0,
        n_threshold: None,
        threshold_abs_extension: false,
        checked_up_to: n,
        empirical_c: min.min_scaled,
        empirical_argmin: min.argmin_n,
        asymptotic_floor: 0.0,
        zero_tolerance_used: zero_tolerance_scaled(lambda.value(), x.acos()),
    }
}

/// Outcome of classifying `x` from its exactly known square `r = x²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// `arccos(√r)` is a rational multiple of π and `x` is certified for `lambda`.
    InVaronaSet {
        x_squared: (i64, i64),
        angle: RationalAngle,
        lambda: OrderParam,
        certificate: Box<Certificate>,
    },
    /// `x = 0`: the divisibility condition fails for every order.
    Obstructed {
        x_squared: (i64, i64),
        angle: RationalAngle,
        witnesses: Vec<(OrderParam, i64)>,
    },
    /// `x = ±1` lies outside `(-1, 1)`.
    BoundaryExcluded { x_squared: (i64, i64) },
    NotRationalAngle { x_squared: (i64, i64) },
}

/// Classifies `x` with `x² = num / den`.
pub fn classify_quadratic(num: i64, den: i64) -> Result<Classification> {
    if den <= 0 || num < 0 || num > den {
        return Err(Error::Domain(format!("x^2 = {num}/{den} is not in [0, 1]")));
    }
    let g = crate::order::gcd(num as u128, den as u128).max(1) as i64;
    let r = (num / g, den / g);
    let certified = |p: i64, q: i64, l: &str| -> Result<Classification> {
        let angle = RationalAngle::new(p, q)?;
        let lambda: OrderParam = l.parse()?;
        Ok(Classification::InVaronaSet {
            x_squared: r,
            angle,
            lambda,
            certificate: Box::new(certify(&angle, &lambda, None)),
        })
    };
    match r {
        (0, 1) => {
            let angle = RationalAngle::new(1, 2)?;
            let witnesses = ["1/2", "1", "4/3", "3/2", "2", "5/2"]
                .iter()
                .map(|l| {
                    let l: OrderParam = l.parse().expect("literal order");
                    let w = divisibility_obstruction(&angle, &l).expect("x = 0 is always obstructed");
                    (l, w)
                })
                .collect();
            Ok(Classification::Obstructed {
                x_squared: r,
                angle,
                witnesses,
            })
        }
        (1, 4) => certified(1, 3, "3/2"),
        (1, 2) => certified(1, 4, "3/2"),
        (3, 4) => certified(1, 6, "4/3"),
        (1, 1) => Ok(Classification::BoundaryExcluded { x_squared: r }),
        _ => Ok(Classification::NotRationalAngle { x_squared: r }),
    }
}

/// Bisects `λ ↦ C_n^λ(cos πp/q)` on `[lo, hi]`.
pub fn find_lambda_root(n: u64, angle: &RationalAngle, lo: f64, hi: f64) -> Result<f64> {
    let x = angle.x();
    let f = |l: f64| -> Result<f64> {
        Ok(gegenbauer_eval_scaled(n, &OrderParam::from_f64(l)?, x).to_f64())
    };
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let (mut f_lo, f_hi) = (f(lo)?, f(hi)?);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NotBracketed { lo, hi, f_lo, f_hi });
    }
    // Runs well past the 1e-10 target, down to adjacent doubles.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gegenbauer::gegenbauer_eval;

    fn angle(p: i64, q: i64) -> RationalAngle {
        RationalAngle::new(p, q).unwrap()
    }

    fn lam(s: &str) -> OrderParam {
        s.parse().unwrap()
    }

    #[test]
    fn threshold_examples() {
        let t = n_threshold(&angle(1, 4), &lam("3/2")).unwrap();
        assert!((t.value - 3.0 * PI).abs() < 1e-12);
        assert!(!t.abs_extension);
        let t = n_threshold(&angle(1, 3), &lam("3/2")).unwrap().value;
        let want = PI / 2.0 * 0.75 / 3f64.sqrt() * 12.0;
        assert!((t - want).abs() < 1e-12 && (8.1..8.2).contains(&t));
        let t = n_threshold(&angle(1, 6), &lam("4/3")).unwrap().value;
        assert!((21.7..21.8).contains(&t), "{t}");
        assert_eq!(n_threshold(&angle(1, 2), &lam("3")), Err(Error::NoThreshold));
        assert_eq!(n_threshold(&angle(1, 3), &lam("1")).unwrap().value, 0.0);
        assert!(n_threshold(&angle(2, 3), &lam("3/2")).unwrap().abs_extension);
    }

    #[test]
    fn example_one_is_certified() {
        for (p, q) in [(1, 3), (1, 4), (2, 3), (3, 4)] {
            let c = certify(&angle(p, q), &lam("3/2"), None);
            assert_eq!(c.verdict, Verdict::GegenbadlyApproximable, "{p}/{q}");
            assert!(c.empirical_c > 0.0);
            c.validate().unwrap();
        }
        assert!(certify(&angle(1, 3), &lam("3/2"), None).checked_up_to >= 9);
        assert!(certify(&angle(1, 4), &lam("3/2"), None).checked_up_to >= 10);
        let c = certify(&angle(1, 3), &lam("3/2"), Some(500));
        assert_eq!(c.checked_up_to, 500);
    }

    #[test]
    fn sqrt_three_half_is_certified() {
        let c = certify(&angle(1, 6), &lam("4/3"), None);
        assert_eq!(c.verdict, Verdict::GegenbadlyApproximable);
        assert!(c.checked_up_to >= 22);
        c.validate().unwrap();
    }

    #[test]
    fn zero_and_odd_orders_fail() {
        let c = certify(&angle(1, 2), &lam("1"), None);
        assert_eq!(c.verdict, Verdict::FailsConditionII { witness: 1 });
        c.validate().unwrap();
        let c = certify(&angle(1, 2), &lam("3"), None);
        assert_eq!(c.verdict, Verdict::FailsOddLambda);
        let c = certify(&angle(1, 2), &lam("3/2"), None);
        assert_eq!(c.verdict, Verdict::FailsConditionII { witness: 1 });
        assert_eq!(c.empirical_c, 0.0);
        // λ = 1 always has a witness at n = q - 1
        let c = certify(&angle(2, 7), &lam("1"), None);
        assert_eq!(c.verdict, Verdict::FailsConditionII { witness: 6 });
    }

    #[test]
    fn parity_roots_show_in_scan() {
        let s = scan_sequence_min(0.0, &lam("2"), 10);
        assert_eq!(s.min_scaled, 0.0);
        assert_eq!(s.argmin_n % 2, 1);
    }

    #[test]
    fn figure_one_scan() {
        let half = scan_sequence_min(0.5, &lam("3/2"), 500);
        assert!(half.min_scaled > 0.1);
        let third = scan_sequence_min(1.0 / 3.0, &lam("3/2"), 2000);
        let early = scan_sequence_min(1.0 / 3.0, &lam("3/2"), 50);
        assert!(third.min_scaled < early.min_scaled);
    }

    #[test]
    fn lambda_star_root() {
        let a = angle(1, 5);
        let root = find_lambda_root(11, &a, 7.8, 8.0).unwrap();
        assert!((root - 7.918).abs() < 1e-3, "{root}");
        let l = OrderParam::from_f64(root).unwrap();
        let c = gegenbauer_eval(11, &l, a.x()).unwrap();
        assert!(c.abs() < 1e-8, "{c}");
        assert!(c.abs() <= 1e-9 * 11f64.powf(root - 1.0));
        let t = n_threshold(&a, &l).unwrap().value;
        assert!((t - 1570.0).abs() < 20.0, "{t}");
        let cert = certify(&a, &l, None);
        assert!(matches!(cert.verdict, Verdict::RootBelowThreshold { root: 11, .. }), "{:?}", cert.verdict);
        cert.validate().unwrap();
    }

    #[test]
    fn unbracketed_root() {
        let r = find_lambda_root(1, &angle(1, 5), 0.5, 9.0);
        assert!(matches!(r, Err(Error::NotBracketed { .. })));
    }

    #[test]
    fn classification_examples() {
        match classify_quadratic(1, 4).unwrap() {
            Classification::InVaronaSet { lambda, certificate, .. } => {
                assert_eq!(lambda, lam("3/2"));
                assert_eq!(certificate.verdict, Verdict::GegenbadlyApproximable);
            }
            other => panic!("{other:?}"),
        }
        match classify_quadratic(3, 4).unwrap() {
            Classification::InVaronaSet { lambda, angle: a, .. } => {
                assert_eq!(lambda, lam("4/3"));
                assert_eq!(a, angle(1, 6));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(classify_quadratic(0, 1).unwrap(), Classification::Obstructed { .. }));
        assert!(matches!(classify_quadratic(2, 2).unwrap(), Classification::BoundaryExcluded { .. }));
        assert!(matches!(classify_quadratic(1, 3).unwrap(), Classification::NotRationalAngle { .. }));
        assert!(classify_quadratic(5, 4).is_err());
        assert!(classify_quadratic(-1, 4).is_err());
    }

    #[test]
    fn unrecognized_real_fails_condition_one() {
        let c = certify_real(1.0 / 3.0, &lam("3/2"), 10_000, None);
        assert_eq!(c.verdict, Verdict::FailsConditionI);
        assert!(c.angle.is_none());
        let c = certify_real(0.5, &lam("3/2"), 100, None);
        assert_eq!(c.verdict, Verdict::GegenbadlyApproximable);
    }

    const ORDERS: [&str; 10] = ["1/2", "2/3", "1", "4/3", "3/2", "5/3", "2", "7/3", "5/2", "7/2"];

    fn angle_and_order() -> impl Strategy<Value = (RationalAngle, OrderParam)> {
        (2i64..=30, 1i64..30, 0usize..ORDERS.len()).prop_filter_map("coprime p < q", |(q, p, k)| {
            let a = RationalAngle::new(p, q).ok()?;
            Some((a, lam(ORDERS[k])))
        })
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn certified_constant_holds_far_past_the_scan((a, l) in angle_and_order()) {
            let c = certify(&a, &l, None);
            prop_assume!(c.verdict == Verdict::GegenbadlyApproximable);
            let n_max = 10 * (c.n_threshold.unwrap().ceil() as u64).max(MIN_SCAN);
            let far = scan_sequence_min(a.x(), &l, n_max);
            prop_assert!(far.min_scaled >= 0.99 * c.empirical_c,
                "{a} λ={l}: {} vs {}", far.min_scaled, c.empirical_c);
        }

        #[test]
        fn emitted_certificates_are_consistent((a, l) in angle_and_order(), extra in 0u64..200) {
            certify(&a, &l, Some(extra)).validate().map_err(TestCaseError::fail)?;
        }

        #[test]
        fn verdict_obstruction_and_gap_agree((a, l) in angle_and_order()) {
            let c = certify(&a, &l, None);
            let obstructed = divisibility_obstruction(&a, &l).is_some();
            prop_assert_eq!(matches!(c.verdict, Verdict::FailsConditionII { .. }), obstructed);
            prop_assert_eq!(phase_gap(&a, &l) == 0.0, obstructed);
        }
    }

    #[test]
    fn odd_orders_have_decaying_minima() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let thetas: Vec<f64> = (0..20).map(|_| rng.gen_range(0.05..0.95) * PI).collect();
        // λ = 1: U_n(cos θ) = sin((n+1)θ)/sin θ, and Dirichlet puts some
        // m <= N within 1/(N+1) of a multiple of π/θ.
        for &t in &thetas {
            let m = scan_sequence_min(t.cos(), &lam("1"), 2000).min_scaled;
            assert!(m <= PI / (2001.0 * t.sin()) * 1.000_001, "θ={t}: {m}");
        }
        // larger odd orders: the typical tenfold horizon at least halves the minimum
        for l in ["1", "3", "5"] {
            let mut ratios: Vec<f64> = thetas
                .iter()
                .map(|t| {
                    let long = scan_sequence_min(t.cos(), &lam(l), 2000).min_scaled;
                    let short = scan_sequence_min(t.cos(), &lam(l), 200).min_scaled;
                    long / short
                })
                .collect();
            ratios.sort_by(f64::total_cmp);
            let median = 0.5 * (ratios[9] + ratios[10]);
            assert!(median <= 0.5, "λ={l}: median ratio {median}");
        }
    }
}
