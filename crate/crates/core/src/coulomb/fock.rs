use std::f64::consts::PI;

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exactalg::rational::{integer, to_f64, Rational};
use crate::exactalg::{inner_product, ExactPoly, ModelParams};
use crate::numerics::gamma::gamma_ratio_g_unchecked;

/// Largest `m` evaluated through exact rational coefficients.
pub const EXACT_COEFFICIENT_LIMIT: u32 = 30;

/// `G_m = (2m)! / (2^{2m} (m!)²)`, built by the ratio recursion `G_m = G_{m−1}(2m−1)/(2m)`.
pub fn fock_coefficient_exact(m: u32) -> Rational {
    (1..=i64::from(m)).fold(Rational::one(), |g, j| g * Rational::new((2 * j - 1).into(), (2 * j).into()))
}

/// Eigenvalue of the Fock-zone Coulomb operator on the magnetic state `m`:
/// `E_m = Q √(πλ) G_m`.
pub fn coulomb_diag_fock(m: u32, params: &ModelParams) -> f64 {
    let scale = params.coulomb * (PI * params.lambda_f64()).sqrt();
    let g = if m <= EXACT_COEFFICIENT_LIMIT {
        to_f64(&fock_coefficient_exact(m))
    } else {
        gamma_ratio_g_unchecked(f64::from(m)).value
    };
    scale * g
}

/// Checks `E_{m−1} − E_m = E_m / (2m − 1)` in exact arithmetic.
pub fn bethe_energy_identity(m: u32) -> Result<bool> {
    if m == 0 {
        return Err(domain("bethe_energy_identity", "m must be >= 1"));
    }
    let prev = fock_coefficient_exact(m - 1);
    let cur = fock_coefficient_exact(m);
    Ok(&prev - &cur == &cur / integer(2 * i64::from(m) - 1))
}

/// `|v_l|²` for the Fock state `Ψ_l`, where `v_l = (∂_z ψ_l) e^{−λr²/2}`:
/// the ratio `‖∂_z z^l‖² / ‖z^l‖²`, computed exactly.
pub fn bethe_velocity_sq(l: u32, lambda: &Rational) -> Result<Rational> {
    if l == 0 {
        return Err(domain("bethe_velocity", "l must be >= 1"));
    }
    if lambda <= &Rational::zero() {
        return Err(domain("bethe_velocity", "lambda must be > 0"));
    }
    let state = ExactPoly::unit_monomial(l, 0);
    let moved = state.d_dz();
    let num = inner_product(&moved, &moved, lambda).re;
    let den = inner_product(&state, &state, lambda).re;
    Ok(num / den)
}

/// `|v_l| = √(lλ)`.
pub fn bethe_velocity(l: u32, lambda: &Rational) -> Result<f64> {
    Ok(to_f64(&bethe_velocity_sq(l, lambda)?).sqrt())
}
