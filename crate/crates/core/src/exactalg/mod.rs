//! Exact polynomial algebra over Gaussian rationals in `(z, z̄)`.

pub mod inner;
pub mod operator;
pub mod poly;
pub mod rational;
pub mod unipoly;

pub use inner::{gaussian_moment, gram_schmidt_zone, inner_product};
pub use operator::{apply_box_conjugated, apply_box_oracle, ModelParams, Orientation};
pub use poly::ExactPoly;
pub use rational::{parse_rational, rational_string, GaussRat, Rational};
pub use unipoly::UniPoly;
