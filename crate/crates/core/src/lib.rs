//! Zonal spectral analysis of the Landau–Zeeman operator.
//!
//! The crate is layered bottom-up: [`numerics`] (special functions and
//! quadrature), [`exactalg`] (exact polynomial algebra in `z, z̄`), [`zones`]
//! (eigenfunctions and spectra), [`kernels`], [`coulomb`] and [`lamb`].
//! [`checks`] bundles the acceptance checks shared by tests and the CLI.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod coulomb;
pub mod error;
pub mod exactalg;
pub mod kernels;
pub mod lamb;
pub mod numerics;
pub mod zones;

pub use error::{Error, Result};
