use std::f64::consts::PI;

use serde::Serialize;

use super::gamma::ValueAndSlope;
use crate::error::{domain, Result};

/// Stirling-type factorial approximants `n! ≈ √((2n+c)π) nⁿ e⁻ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StirlingVariant {
    /// c = 0, the textbook `√(2πn)` form.
    Plain,
    /// c = 1/3.
    OneThird,
    /// c = 1/π, the only variant with `S_0 = √π`.
    InversePi,
}

impl StirlingVariant {
    pub const ALL: [StirlingVariant; 3] = [Self::Plain, Self::OneThird, Self::InversePi];

    pub fn constant(self) -> f64 {
        match self {
            Self::Plain => 0.0,
            Self::OneThird => 1.0 / 3.0,
            Self::InversePi => 1.0 / PI,
        }
    }
}

/// `n!` approximated by `√((2n+c)π) nⁿ e⁻ⁿ` (with `0⁰ = 1`).
pub fn stirling_factorial(n: f64, variant: StirlingVariant) -> Result<f64> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(domain("stirling_factorial", format!("n must be finite and >= 0, got {n}")));
    }
    let c = variant.constant();
    let power = if n == 0.0 { 1.0 } else { (n * n.ln() - n).exp() };
    Ok(((2.0 * n + c) * PI).sqrt() * power)
}

/// Stirling surrogate of the Gamma ratio curve,
/// `S_k = (4k + c)^{1/2} / (2k + c)`, and its exact k-derivative.
///
/// With c = 1/π, `S_0 = √π` and `S_k √k → 1`.
pub fn stirling_s(k: f64, variant: StirlingVariant) -> Result<ValueAndSlope> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(domain("stirling_s", format!("k must be finite and >= 0, got {k}")));
    }
    let c = variant.constant();
    if c == 0.0 && k == 0.0 {
        return Err(domain("stirling_s", "the plain variant is singular at k = 0"));
    }
    Ok(stirling_s_unchecked(k, c))
}

pub(crate) fn stirling_s_unchecked(k: f64, c: f64) -> ValueAndSlope {
    let root = (4.0 * k + c).sqrt();
    let den = 2.0 * k + c;
    ValueAndSlope {
        value: root / den,
        slope: 2.0 / (root * den) - 2.0 * root / (den * den),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero_is_root_pi() {
        let s = stirling_s(0.0, StirlingVariant::InversePi).unwrap();
        assert!((s.value - PI.sqrt()).abs() < 1e-15);
        assert!(stirling_s(0.0, StirlingVariant::Plain).is_err());
        assert!(stirling_s(-1.0, StirlingVariant::OneThird).is_err());
    }

    #[test]
    fn zero_factorial_approximations() {
        let third = stirling_factorial(0.0, StirlingVariant::OneThird).unwrap();
        assert!((third - (PI / 3.0).sqrt()).abs() < 1e-15);
        assert!((third - 1.02333).abs() < 1e-5);
        let inv_pi = stirling_factorial(0.0, StirlingVariant::InversePi).unwrap();
        assert!((inv_pi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_third_variant_is_accurate_for_small_n() {
        for (n, exact) in [(1.0, 1.0), (2.0, 2.0), (5.0, 120.0), (10.0, 3_628_800.0)] {
            let approx = stirling_factorial(n, StirlingVariant::OneThird).unwrap();
            assert!(((approx - exact) / exact).abs() < 5e-3, "n={n}");
        }
    }

    #[test]
    fn large_k_asymptotics() {
        let s = stirling_s(1.0e6, StirlingVariant::InversePi).unwrap();
        assert!((s.value * 1.0e3 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn slope_matches_central_difference() {
        let h = 1e-6;
        for variant in [StirlingVariant::OneThird, StirlingVariant::InversePi] {
            let c = variant.constant();
            for &k in &[0.0, 0.1, 1.0, 10.0, 1000.0] {
                let fd = (stirling_s_unchecked(k + h, c).value - stirling_s_unchecked(k - h, c).value) / (2.0 * h);
                let slope = stirling_s(k, variant).unwrap().slope;
                assert!((fd - slope).abs() < 1e-8, "{variant:?} k={k}: {fd} vs {slope}");
            }
        }
        for &k in &[0.1, 1.0, 10.0, 1000.0] {
            let fd = (stirling_s_unchecked(k + 1e-8, 0.0).value - stirling_s_unchecked(k - 1e-8, 0.0).value) / 2e-8;
            let slope = stirling_s(k, StirlingVariant::Plain).unwrap().slope;
            assert!((fd - slope).abs() < 1e-6 * slope.abs().max(1.0), "plain k={k}");
        }
    }
}
