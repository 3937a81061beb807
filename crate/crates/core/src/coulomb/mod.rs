//! Zonal Coulomb operators: Fock-zone spectra, matrix elements, transmissions
//! between zones, fluctuations and divergence diagnostics.

mod divergence;
mod elements;
mod fock;

pub use divergence::{log_potential_diag, trace_divergence_report, LogPotentialEntry, LogPotentialReport, PartialSums, TraceDivergenceReport};
pub use elements::{
    coulomb_matrix_element, coulomb_matrix_element_polar, fluctuation, fluctuation_kernel_oracle, transmission_matrix, zone_state,
    MatrixEntry, Potential, ZoneOperatorMatrix,
};
pub use fock::{bethe_energy_identity, bethe_velocity, bethe_velocity_sq, coulomb_diag_fock, fock_coefficient_exact, EXACT_COEFFICIENT_LIMIT};
