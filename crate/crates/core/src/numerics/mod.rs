//! Special functions and numerical quadrature.

pub mod combinatorics;
pub mod gamma;
pub mod laguerre;
pub mod quadrature;
pub mod stirling;

pub use gamma::{digamma, gamma_ratio_g, log_gamma, ValueAndSlope, EULER_GAMMA};
pub use laguerre::{laguerre, laguerre_coefficients_exact, laguerre_exact, laguerre_explicit, laguerre_sequence};
pub use quadrature::{
    integrate_adaptive, integrate_dyadic, integrate_plane, integrate_plane_centered, integrate_to_cutoff,
    AdaptiveQuadrature, CutoffQuadrature, QuadValue, QuadratureResult,
};
pub use stirling::{stirling_factorial, stirling_s, StirlingVariant};
