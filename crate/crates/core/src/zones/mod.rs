//! Quantum numbers, explicit eigenfunctions, the radial ODE and zone spectra.

pub mod eigen;
pub mod quantum;
pub mod radial;
pub mod spectrum;

pub use eigen::{eigenvalue, ito_norm_sq, ito_poly, landau_energy, laguerre_eigenfunction, EigenState};
pub use quantum::{qn_convert, MagneticSign, QnInput, QuantumNumbers};
pub use radial::{laguerre_alpha, laguerre_operator, radial_eigen_solve, radial_ode_apply, RadialEigen};
pub use spectrum::{enumerate_zone_spectrum, heat_trace, zone_multiplicity, SpectralLine};
