//! The interaction amplitude on the Fock zone and the resulting Lamb shift.

mod amplitude;
mod constants;
mod shift;

pub use amplitude::{
    dimensionless_energies, discrete_vs_integral, scalar_density_sigma, scalar_sigma_closed_form, sigma_b_closed_form, sigma_by_parts,
    sigma_closed_form, sigma_integral, sigma_integral_to, sigma_total_closed_form, AmplitudeResult, Density, DiscreteComparison,
    EpsilonKind,
};
pub use constants::{ConstantCheck, PhysicalConstants, ALPHA_PRINTED, ALPHA_PRINTED_UNCERTAINTY};
pub use shift::{lamb_shift, lamb_shift_from_sigma, partial_fraction_terms, LambShift, ShiftMode, PARTIAL_FRACTION_BOUND};
