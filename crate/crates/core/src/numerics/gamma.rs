//! Log-Gamma, digamma and the Gamma-ratio sequence behind the Fock-zone
//! Coulomb eigenvalues.
//!
//! Everything here is double precision. Small arguments are shifted into a
//! range where a convergent or asymptotic series is accurate; the shifts are
//! done with products or `ln_1p` so that no step cancels catastrophically.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{domain, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Switch-over point for the asymptotic expansions.
const ASYMPTOTIC_MIN: f64 = 10.0;

/// `B_{2j} / (2j (2j - 1))` for j = 1..=8 (Stirling series for ln Γ).
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `B_{2j} / (2j)` for j = 1..=8 (asymptotic series for ψ).
const DIGAMMA_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

const ZETA_TERMS: usize = 42;

/// `ζ(k) - 1` for k = 0..ZETA_TERMS (entries 0 and 1 unused).
fn zeta_minus_one() -> &'static [f64; ZETA_TERMS] {
    static TABLE: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; ZETA_TERMS];
        const N: usize = 30;
        let nf = N as f64;
        for (k, slot) in table.iter_mut().enumerate().skip(2) {
            let s = k as f64;
            // Euler-Maclaurin tail for sum_{n >= N} n^-s.
            let tail = nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s / 12.0 * nf.powf(-s - 1.0)
                - s * (s + 1.0) * (s + 2.0) / 720.0 * nf.powf(-s - 3.0)
                + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30_240.0 * nf.powf(-s - 5.0);
            let mut sum = tail;
            for n in (2..N).rev() {
                sum += (n as f64).powf(-s);
            }
            *slot = sum;
        }
        table
    })
}

/// ln Γ(1 + ε) for |ε| ≤ 1/2 from the zeta series.
fn ln_gamma_one_plus(eps: f64) -> f64 {
    let zeta = zeta_minus_one();
    let mut sum = 0.0;
    let mut power = eps * eps;
    for (k, z) in zeta.iter().enumerate().skip(2) {
        let term = z * power / k as f64;
        sum += if k % 2 == 0 { term } else { -term };
        power *= eps;
    }
    -eps.ln_1p() + eps * (1.0 - EULER_GAMMA) + sum
}

fn ln_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv_sq = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for c in STIRLING_COEFFS {
        series += c * power;
        power *= inv_sq;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + series
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        ln_gamma_unchecked(x + 1.0) - x.ln()
    } else if x < 1.5 {
        ln_gamma_one_plus(x - 1.0)
    } else if x < 2.5 {
        (x - 2.0).ln_1p() + ln_gamma_one_plus(x - 2.0)
    } else if x < ASYMPTOTIC_MIN {
        let mut y = x;
        let mut product = 1.0;
        while y >= 2.5 {
            y -= 1.0;
            product *= y;
        }
        product.ln() + (y - 2.0).ln_1p() + ln_gamma_one_plus(y - 2.0)
    } else {
        ln_gamma_stirling(x)
    }
}

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("log_gamma", format!("argument must be positive and finite, got {x}")));
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn digamma_unchecked(x: f64) -> f64 {
    let mut y = x;
    let mut shift = 0.0;
    while y < ASYMPTOTIC_MIN {
        shift += 1.0 / y;
        y += 1.0;
    }
    let inv_sq = 1.0 / (y * y);
    let mut series = 0.0;
    let mut power = inv_sq;
    for c in DIGAMMA_COEFFS {
        series += c * power;
        power *= inv_sq;
    }
    y.ln() - 0.5 / y - series - shift
}

/// Digamma ψ(x) = Γ'(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("digamma", format!("argument must be positive and finite, got {x}")));
    }
    Ok(digamma_unchecked(x))
}

/// ln Γ(x + 1) − ln Γ(x + ½), accurate for all x ≥ 0 including x ~ 1e12.
pub(crate) fn ln_gamma_half_gap(x: f64) -> f64 {
    let mut y = x;
    let mut correction = 0.0;
    while y < ASYMPTOTIC_MIN {
        correction += (0.5 / (y + 0.5)).ln_1p();
        y += 1.0;
    }
    let hi = y + 1.0;
    let lo = y + 0.5;
    let mut series = 0.0;
    let (mut p_hi, mut p_lo) = (1.0 / hi, 1.0 / lo);
    let (sq_hi, sq_lo) = (p_hi * p_hi, p_lo * p_lo);
    for c in STIRLING_COEFFS {
        series += c * (p_hi - p_lo);
        p_hi *= sq_hi;
        p_lo *= sq_lo;
    }
    let main = y * (0.5 / (y + 0.5)).ln_1p() + 0.5 * (y + 1.0).ln() - 0.5;
    main + series - correction
}

/// ψ(x + 1) − ψ(x + ½) without cancellation.
pub(crate) fn digamma_half_gap(x: f64) -> f64 {
    let mut y = x;
    let mut correction = 0.0;
    while y < ASYMPTOTIC_MIN {
        correction += 0.5 / ((y + 1.0) * (y + 0.5));
        y += 1.0;
    }
    let hi = y + 1.0;
    let lo = y + 0.5;
    let (sq_hi, sq_lo) = (1.0 / (hi * hi), 1.0 / (lo * lo));
    let (mut p_hi, mut p_lo) = (sq_hi, sq_lo);
    let mut series = 0.0;
    for c in DIGAMMA_COEFFS {
        series += c * (p_hi - p_lo);
        p_hi *= sq_hi;
        p_lo *= sq_lo;
    }
    let main = (0.5 / lo).ln_1p() - 0.5 / hi + 0.5 / lo;
    main - series + correction
}

/// A function value together with its derivative in the same argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValueAndSlope {
    pub value: f64,
    pub slope: f64,
}

/// `G_k = Γ(2k+1) / (2^{2k} Γ(k+1)²)` and its k-derivative.
///
/// For integer k this is `(2k)! / (4^k (k!)²)`, the central binomial
/// coefficient over `4^k`. The duplication formula turns it into
/// `Γ(k+½) / (√π Γ(k+1))`, which is what gets evaluated, so nothing overflows
/// and there is no large-log cancellation even for k around 1e12.
pub fn gamma_ratio_g(k: f64) -> Result<ValueAndSlope> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(domain("gamma_ratio_g", format!("k must be finite and >= 0, got {k}")));
    }
    Ok(gamma_ratio_g_unchecked(k))
}

pub(crate) fn gamma_ratio_g_unchecked(k: f64) -> ValueAndSlope {
    let value = (-ln_gamma_half_gap(k)).exp() / PI.sqrt();
    ValueAndSlope {
        value,
        slope: -value * digamma_half_gap(k),
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // Reference values from mpmath at 30 digits.
    const LN_GAMMA_REF: [(f64, f64); 10] = [
        (0.5, 0.572_364_942_924_700_087),
        (0.75, 0.203_280_951_431_295_371),
        (1.25, -0.098_271_836_421_813_161_5),
        (1.75, -0.084_401_121_020_485_556),
        (2.25, 0.124_871_714_892_396_594),
        (3.3, 0.987_098_577_894_734_404),
        (7.5, 7.534_364_236_758_732_955),
        (12.7, 19.233_043_179_570_086_91),
        (1234.5, 7_550.550_901_077_894_896),
        (1.0e6, 12_815_504.569_147_611_66),
    ];

    const DIGAMMA_REF: [(f64, f64); 6] = [
        (0.5, -1.963_510_026_021_423_479),
        (1.4616, -3.110_625_123_034_164_966e-5),
        (3.3, 1.034_822_489_059_621_686),
        (9.99, 2.250_700_372_831_201_122),
        (250.0, 5.519_459_584_531_046_417),
        (1.0e6, 13.815_510_057_964_190_77),
    ];

    #[test]
    fn log_gamma_matches_reference() {
        for (x, expected) in LN_GAMMA_REF {
            let got = log_gamma(x).unwrap();
            let rel = ((got - expected) / expected).abs();
            assert!(rel <= 1e-13, "ln Γ({x}) = {got}, expected {expected}, rel {rel:e}");
        }
    }

    #[test]
    fn log_gamma_trivial_points() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-15);
        let half = log_gamma(0.5).unwrap();
        assert!((half - 0.5 * PI.ln()).abs() < 1e-15);
        let eleven = log_gamma(11.0).unwrap();
        assert!((eleven - 3_628_800f64.ln()).abs() / eleven < 1e-14);
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn digamma_matches_reference() {
        for (x, expected) in DIGAMMA_REF {
            let got = digamma(x).unwrap();
            assert!((got - expected).abs() <= 1e-12, "ψ({x}) = {got}, expected {expected}");
        }
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-14);
        assert!((digamma(2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        assert!(digamma(0.0).is_err());
    }

    #[test]
    fn half_gaps_agree_with_direct_differences() {
        for &x in &[0.0, 0.3, 1.0, 4.5, 9.9, 10.0, 37.0, 500.0] {
            let hi = ln_gamma_unchecked(x + 1.0);
            let direct = hi - ln_gamma_unchecked(x + 0.5);
            let tol = 1e-14 * hi.abs().max(1.0);
            assert!((ln_gamma_half_gap(x) - direct).abs() < tol, "ln gap at {x}");
            let direct = digamma_unchecked(x + 1.0) - digamma_unchecked(x + 0.5);
            assert!((digamma_half_gap(x) - direct).abs() < 1e-13, "ψ gap at {x}");
        }
    }

    #[test]
    fn gamma_ratio_examples() {
        let g0 = gamma_ratio_g(0.0).unwrap();
        assert!((g0.value - 1.0).abs() < 1e-15);
        assert!((g0.slope + 2.0 * 2f64.ln()).abs() < 1e-13);
        let g1 = gamma_ratio_g(1.0).unwrap();
        assert!((g1.value - 0.5).abs() < 1e-15);
        assert!(gamma_ratio_g(-0.1).is_err());
    }

    #[test]
    fn gamma_ratio_slope_matches_digamma_formula() {
        for &k in &[0.5, 1.0, 5.0, 50.0, 2.0e3] {
            let g = gamma_ratio_g(k).unwrap();
            let formula = g.value
                * (2.0 * digamma(2.0 * k + 1.0).unwrap() - 2.0 * digamma(k + 1.0).unwrap() - 2.0 * 2f64.ln());
            assert!((g.slope - formula).abs() < 1e-12 * g.value.max(1e-300) + 1e-14, "k={k}");
        }
    }

    #[test]
    fn gamma_ratio_large_k_is_finite() {
        let g = gamma_ratio_g(1.0e6).unwrap();
        let asymptotic = 1.0 / (PI * 1.0e6).sqrt();
        assert!(((g.value - asymptotic) / asymptotic).abs() < 1e-6);
        assert!(g.slope < 0.0 && g.slope.is_finite());
    }
}
