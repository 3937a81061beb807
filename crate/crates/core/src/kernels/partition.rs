use num_complex::Complex64;
use serde::Serialize;

use super::flows::check_caustic;
use crate::error::{domain, Error, Result};
use crate::exactalg::rational::to_f64;
use crate::zones::{landau_energy, zone_multiplicity};
use crate::exactalg::ModelParams;
use crate::numerics::combinatorics::binomial_u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowVariant {
    Wiener,
    Schrodinger,
}

/// Zonal partition function `C(a+κ−1, a) e^{−κλτ} / (1 − e^{−2λτ})^κ` with
/// `τ = t` (Wiener) or `τ = it` (Schrödinger).
pub fn partition_zonal(a: u32, t: f64, params: &ModelParams, variant: FlowVariant) -> Result<Complex64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain("partition_zonal", format!("t must be finite and > 0, got {t}")));
    }
    let tau = match variant {
        FlowVariant::Wiener => Complex64::new(t, 0.0),
        FlowVariant::Schrodinger => {
            check_caustic(params.lambda_f64() * t)?;
            Complex64::new(0.0, t)
        }
    };
    Ok(partition_closed(a, tau, params))
}

/// The closed form at complex time `τ` with `Re τ > 0`, where it is the
/// analytic continuation linking the Wiener and Schrödinger cases.
pub fn partition_complex(a: u32, tau: Complex64, params: &ModelParams) -> Result<Complex64> {
    if !(tau.re > 0.0) || !tau.im.is_finite() || !tau.re.is_finite() {
        return Err(domain("partition_complex", format!("need finite tau with Re tau > 0, got {tau}")));
    }
    Ok(partition_closed(a, tau, params))
}

fn partition_closed(a: u32, tau: Complex64, params: &ModelParams) -> Complex64 {
    let lambda = params.lambda_f64();
    let kappa = params.kappa;
    let degeneracy = binomial_u64(u64::from(a) + u64::from(kappa) - 1, u64::from(a)) as f64;
    let one_minus = -(-tau * (2.0 * lambda)).exp_m1();
    let numerator = (-tau * (f64::from(kappa) * lambda)).exp();
    numerator / one_minus.powu(kappa) * degeneracy
}

trait ExpM1 {
    fn exp_m1(self) -> Self;
}

impl ExpM1 for Complex64 {
    /// `e^w − 1` accurate near `w = 0`.
    fn exp_m1(self) -> Complex64 {
        // e^{x+iy} − 1 = (e^x − 1)cos y + (cos y − 1) + i e^x sin y
        let (x, y) = (self.re, self.im);
        let cos_m1 = -2.0 * (0.5 * y).sin().powi(2);
        Complex64::new(x.exp_m1() * y.cos() + cos_m1, x.exp() * y.sin())
    }
}

/// `Σ_p mult_p e^{−τ h_p}` over the zone's spectrum for `Re τ > 0`, summed
/// until the geometric tail bound drops below `tail_tol` relative to the sum.
pub fn partition_spectral(a: u32, tau: Complex64, params: &ModelParams, tail_tol: f64) -> Result<Complex64> {
    if !(tau.re > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
        return Err(domain("partition_spectral", format!("need finite tau with Re tau > 0, got {tau}")));
    }
    let lambda = params.lambda_f64();
    let ratio = (-2.0 * lambda * tau.re).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut p = 0u32;
    loop {
        let energy = to_f64(&landau_energy(p, params));
        let mult = zone_multiplicity(a, p, params.kappa) as f64;
        let term = (-tau * energy).exp() * mult;
        sum += term;
        p += 1;
        // the modulus ratio q of successive terms decreases in p, so once
        // q < 1 the tail is at most next/(1 − q)
        let q = zone_multiplicity(a, p, params.kappa) as f64 / mult * ratio;
        let tail = term.norm() * q / (1.0 - q);
        if q < 1.0 && tail <= tail_tol * sum.norm() {
            return Ok(sum);
        }
        if p > 100_000_000 {
            return Err(Error::Truncation {
                terms: p as usize,
                tail_bound: tail,
            });
        }
    }
}
