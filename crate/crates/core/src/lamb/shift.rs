use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::amplitude::{sigma_closed_form, sigma_total_closed_form};
use super::constants::PhysicalConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftMode {
    EpsilonP,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambShift {
    /// `¼|σ|²`; the energy is this times `α⁵ m_ec²`.
    pub dimensionless: f64,
    pub energy_ev: f64,
    pub frequency_mhz: f64,
}

/// Energy increment `¼α⁵ m_ec² |σ|²` in eV and MHz (`ν = Δ/h`).
pub fn lamb_shift_from_sigma(sigma: Complex64, constants: &PhysicalConstants) -> LambShift {
    let dimensionless = 0.25 * sigma.norm_sqr();
    let energy_ev = dimensionless * constants.alpha.powi(5) * constants.me_c2_ev;
    LambShift {
        dimensionless,
        energy_ev,
        frequency_mhz: energy_ev / constants.h_ev_s / 1e6,
    }
}

/// `¼α⁵m_ec²(π + 1/(π(l+½)²))` or, for the total, `m_ec²α⁵/(4π(l+½)²)`.
pub fn lamb_shift(l: u32, mode: ShiftMode, constants: &PhysicalConstants) -> LambShift {
    let sigma = match mode {
        ShiftMode::EpsilonP => sigma_closed_form(l),
        ShiftMode::Total => sigma_total_closed_form(l),
    };
    lamb_shift_from_sigma(sigma, constants)
}

/// Printed bound on the first partial-fraction term for `l ≥ 1`.
pub const PARTIAL_FRACTION_BOUND: f64 = 0.03536;

/// `1/(π(l+½)²) = 1/(2π(l+1)(l+½)²) + 1/(π(l+1)(l+½))`, returned as
/// `(left side, first term, second term)`.
pub fn partial_fraction_terms(l: u32) -> (f64, f64, f64) {
    let h = f64::from(l) + 0.5;
    let l1 = f64::from(l) + 1.0;
    (1.0 / (PI * h * h), 1.0 / (2.0 * PI * l1 * h * h), 1.0 / (PI * l1 * h))
}
