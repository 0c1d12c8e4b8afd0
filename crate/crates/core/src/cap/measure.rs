/// Normalised surface measure of a cap of height `t` on `S^d`.
///
/// With `φ = arccos t` this is `∫_0^φ sin^{d-1} / ∫_0^π sin^{d-1}`, using the
/// reduction `I_m = -sin^{m-1}φ cos φ / m + (m-1)/m · I_{m-2}`.
pub fn cap_measure(d: usize, t: f64) -> f64 {
    assert!(d >= 1, "sphere dimension must be at least 1");
    if t >= 1.0 {
        return 0.0;
    }
    if t <= -1.0 {
        return 1.0;
    }
    let phi = t.acos();
    (sine_power_integral(d - 1, phi) / sine_power_integral(d - 1, std::f64::consts::PI)).clamp(0.0, 1.0)
}

fn sine_power_integral(m: usize, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    let mut acc = if m % 2 == 0 { phi } else { 1.0 - c };
    let mut k = if m % 2 == 0 { 2 } else { 3 };
    while k <= m {
        let kf = k as f64;
        acc = -s.powi(k as i32 - 1) * c / kf + (kf - 1.0) / kf * acc;
        k += 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gegenbauer::ln_gamma;
    use crate::quadrature::GaussLegendre;
    use proptest::prelude::*;

    /// `Γ((d+1)/2)/(√π Γ(d/2)) ∫_t^1 (1-s²)^{d/2-1} ds`, integrated in `φ`
    /// where the integrand `sin^{d-1}` is smooth.
    fn by_quadrature(d: usize, t: f64) -> f64 {
        let df = d as f64;
        let k = (ln_gamma((df + 1.0) / 2.0) - ln_gamma(df / 2.0)).exp() / std::f64::consts::PI.sqrt();
        k * GaussLegendre::new(60).integrate(0.0, t.acos(), |p| p.sin().powi(d as i32 - 1))
    }

    #[test]
    fn endpoints_and_hemisphere() {
        for d in 1..8 {
            assert_eq!(cap_measure(d, 1.0), 0.0);
            assert_eq!(cap_measure(d, -1.0), 1.0);
            assert!((cap_measure(d, 0.0) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn two_sphere_is_linear() {
        for t in [-0.5, 0.0, 0.7] {
            assert!((cap_measure(2, t) - (1.0 - t) / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn matches_quadrature() {
        assert!((cap_measure(3, 0.5) - by_quadrature(3, 0.5)).abs() < 1e-12);
        for d in 1..9 {
            for t in [-0.9, -0.3, 0.2, 0.5, 0.95] {
                assert!((cap_measure(d, t) - by_quadrature(d, t)).abs() < 1e-12, "d={d} t={t}");
            }
        }
    }

    proptest! {
        #[test]
        fn decreasing_in_height(d in 1usize..12, a in -1.0f64..1.0, b in -1.0f64..1.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(cap_measure(d, lo) >= cap_measure(d, hi));
        }
    }
}
