//! The 2D Landau–Zeeman operator
//! `□_λ = 4∂∂̄ ± 2λ i D• − λ²|z|² − 4λ²` with `D• = i(z∂ − z̄∂̄)`,
//! applied to `P·e^{−λ|z|²/2}` in two independent ways.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::poly::ExactPoly;
use super::rational::{integer, to_f64, GaussRat, Rational};
use crate::error::{domain, Error, Result};

/// Sign of the magnetic term; `Plus` makes the Fock zone holomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    #[default]
    Plus,
    Minus,
}

/// Magnetic and Coulomb configuration of one invariant subspace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelParams {
    #[serde(serialize_with = "serialize_rational")]
    pub lambda: Rational,
    pub kappa: u32,
    /// Coulomb strength `Q ≥ 0`.
    pub coulomb: f64,
    pub orientation: Orientation,
    pub include_field_term: bool,
}

fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&super::rational::rational_string(r))
}

impl ModelParams {
    /// λ with κ = 1, Q = 1, orientation +, field term on.
    pub fn new(lambda: Rational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(domain("ModelParams", format!("lambda must be > 0, got {lambda}")));
        }
        Ok(Self {
            lambda,
            kappa: 1,
            coulomb: 1.0,
            orientation: Orientation::Plus,
            include_field_term: true,
        })
    }

    pub fn unit() -> Self {
        Self::new(integer(1)).expect("1 is positive")
    }

    pub fn with_kappa(mut self, kappa: u32) -> Result<Self> {
        if kappa == 0 {
            return Err(domain("ModelParams", "kappa must be >= 1"));
        }
        self.kappa = kappa;
        Ok(self)
    }

    pub fn with_coulomb(mut self, q: f64) -> Result<Self> {
        if !(q >= 0.0) || !q.is_finite() {
            return Err(domain("ModelParams", format!("Q must be finite and >= 0, got {q}")));
        }
        self.coulomb = q;
        Ok(self)
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_field_term(mut self, on: bool) -> Self {
        self.include_field_term = on;
        self
    }

    pub fn lambda_f64(&self) -> f64 {
        to_f64(&self.lambda)
    }

    /// `4κλ²` when the field term is on, else 0.
    pub fn field_constant(&self) -> Rational {
        if self.include_field_term {
            integer(4 * i64::from(self.kappa)) * &self.lambda * &self.lambda
        } else {
            Rational::zero()
        }
    }

    fn require_planar(&self, function: &'static str) -> Result<()> {
        if self.kappa != 1 {
            return Err(Error::Unsupported(format!(
                "{function} acts on a single complex variable (kappa = 1), got kappa = {}",
                self.kappa
            )));
        }
        Ok(())
    }
}

/// `Q` with `□_λ(P e^{−λ|z|²/2}) = Q e^{−λ|z|²/2}`, from the closed conjugated form
/// `Q = 4∂∂̄P − 4λ z∂P − (2λ + 4λ²)P` (orientation +; `z̄∂̄` for −).
pub fn apply_box_conjugated(p: &ExactPoly, params: &ModelParams) -> Result<ExactPoly> {
    params.require_planar("apply_box_conjugated")?;
    let lambda = GaussRat::real(params.lambda.clone());
    let laplace = p.d_dz().d_dzbar().scale(&GaussRat::from_int(4));
    let drift = match params.orientation {
        Orientation::Plus => p.d_dz().shift(1, 0),
        Orientation::Minus => p.d_dzbar().shift(0, 1),
    };
    let drift = drift.scale(&(&lambda * &GaussRat::from_int(-4)));
    let constant = GaussRat::real(integer(2) * &params.lambda + params.field_constant());
    let out = &(&laplace + &drift) - &p.scale(&constant);
    Ok(out)
}

/// `P·e^{−c z z̄}`.
#[derive(Debug, Clone, PartialEq)]
struct Gaussian {
    poly: ExactPoly,
    c: Rational,
}

impl Gaussian {
    fn d_dz(&self) -> Self {
        let c = GaussRat::real(self.c.clone());
        Self {
            poly: &self.poly.d_dz() - &self.poly.shift(0, 1).scale(&c),
            c: self.c.clone(),
        }
    }

    fn d_dzbar(&self) -> Self {
        let c = GaussRat::real(self.c.clone());
        Self {
            poly: &self.poly.d_dzbar() - &self.poly.shift(1, 0).scale(&c),
            c: self.c.clone(),
        }
    }

    fn map(&self, f: impl FnOnce(&ExactPoly) -> ExactPoly) -> Self {
        Self {
            poly: f(&self.poly),
            c: self.c.clone(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.c, other.c);
        self.map(|p| p + &other.poly)
    }
}

/// Same result as [`apply_box_conjugated`], computed by differentiating the
/// full product `P·e^{−λ|z|²/2}` and applying every term of the raw operator.
pub fn apply_box_oracle(p: &ExactPoly, params: &ModelParams) -> Result<ExactPoly> {
    params.require_planar("apply_box_oracle")?;
    let lambda = GaussRat::real(params.lambda.clone());
    let f = Gaussian {
        poly: p.clone(),
        c: &params.lambda / integer(2),
    };
    let laplace = f.d_dz().d_dzbar().map(|q| q.scale(&GaussRat::from_int(4)));
    // D•f = i(z∂f − z̄∂̄f)
    let angular = f
        .d_dz()
        .map(|q| q.shift(1, 0))
        .add(&f.d_dzbar().map(|q| -&q.shift(0, 1)))
        .map(|q| q.scale(&GaussRat::i()));
    let sign = match params.orientation {
        Orientation::Plus => 1,
        Orientation::Minus => -1,
    };
    let magnetic = angular.map(|q| q.scale(&(&(&GaussRat::from_int(2 * sign) * &lambda) * &GaussRat::i())));
    let lambda_sq = &lambda * &lambda;
    let confinement = f.map(|q| q.shift(1, 1).scale(&-&lambda_sq));
    let field = f.map(|q| q.scale(&-GaussRat::real(params.field_constant())));
    let total = laplace.add(&magnetic).add(&confinement).add(&field);
    if total.c != f.c {
        return Err(Error::Invariant("Gaussian exponent changed under the operator".into()));
    }
    Ok(total.poly)
}
