use num_traits::One;
use serde::Serialize;

use super::quantum::{MagneticSign, QuantumNumbers};
use crate::error::{Error, Result};
use crate::exactalg::rational::{integer, rational_string, to_f64, GaussRat, Rational};
use crate::exactalg::{apply_box_conjugated, ExactPoly, ModelParams, Orientation};
use crate::numerics::combinatorics::factorial;
use crate::numerics::laguerre_coefficients_exact;

/// λ-scaled Itô polynomial
/// `H_pq = Σ_s (−1)^s p!q!/(s!(p−s)!(q−s)!) λ^{−s} z^{p−s} z̄^{q−s}`.
pub fn ito_poly(p: u32, q: u32, lambda: &Rational) -> ExactPoly {
    let pf = factorial(p);
    let qf = factorial(q);
    let inv_lambda = Rational::one() / lambda;
    let mut out = ExactPoly::zero();
    let mut lambda_power = Rational::one();
    for s in 0..=p.min(q) {
        let denom = factorial(s) * factorial(p - s) * factorial(q - s);
        let mut c = Rational::new(&pf * &qf, denom) * &lambda_power;
        if s % 2 == 1 {
            c = -c;
        }
        out.add_term(p - s, q - s, GaussRat::real(c));
        lambda_power *= &inv_lambda;
    }
    out
}

/// `(−1)^n n! λ^{−n} L_n^{(l)}(λ z z̄) · z^l` (`z̄^l` on the negative branch).
pub fn laguerre_eigenfunction(n: u32, l: u32, sign: MagneticSign, lambda: &Rational) -> ExactPoly {
    let coeffs = laguerre_coefficients_exact(n as usize, &integer(i64::from(l)));
    let mut prefactor = Rational::from_integer(factorial(n)) / num_traits::pow(lambda.clone(), n as usize);
    if n % 2 == 1 {
        prefactor = -prefactor;
    }
    let mut lambda_power = Rational::one();
    let radial: Vec<Rational> = coeffs
        .iter()
        .map(|c| {
            let v = c * &prefactor * &lambda_power;
            lambda_power *= lambda;
            v
        })
        .collect();
    let r = ExactPoly::from_radial(&radial);
    match sign {
        MagneticSign::NonNegative => r.shift(l, 0),
        MagneticSign::Negative => r.shift(0, l),
    }
}

/// `‖H_pq e^{−λ|z|²/2}‖² / π = p! q! / λ^{p+q+1}`.
pub fn ito_norm_sq(p: u32, q: u32, lambda: &Rational) -> Rational {
    Rational::from_integer(factorial(p) * factorial(q)) / num_traits::pow(lambda.clone(), (p + q + 1) as usize)
}

/// Eigenvalue `−((4p + 2κ)λ + 4κλ²)` of `□_λ` on states of holomorphic degree
/// `p` (field term only when enabled).
pub fn eigenvalue(p: u32, params: &ModelParams) -> Rational {
    let landau = integer(4 * i64::from(p) + 2 * i64::from(params.kappa)) * &params.lambda;
    -(landau + params.field_constant())
}

/// Landau energy `h_p = (2p + κ)λ` of `H_Z = −½□` without the field term.
pub fn landau_energy(p: u32, params: &ModelParams) -> Rational {
    integer(2 * i64::from(p) + i64::from(params.kappa)) * &params.lambda
}

/// One planar Landau–Zeeman eigenfunction `H_pq e^{−λ|z|²/2}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenState {
    pub qn: QuantumNumbers,
    pub poly: ExactPoly,
    /// Squared norm divided by π.
    #[serde(serialize_with = "as_string")]
    pub norm_sq: Rational,
    #[serde(serialize_with = "as_string")]
    pub eigenvalue: Rational,
}

fn as_string<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

impl EigenState {
    /// The Itô state of degrees `(p, q)`. Under orientation − the operator's
    /// eigen-role passes to `q`.
    pub fn new(qn: QuantumNumbers, params: &ModelParams) -> Result<Self> {
        qn.validate()?;
        if params.kappa != 1 {
            return Err(Error::Unsupported("eigenstates are planar (kappa = 1)".into()));
        }
        let degree = match params.orientation {
            Orientation::Plus => qn.p,
            Orientation::Minus => qn.q,
        };
        Ok(Self {
            qn,
            poly: ito_poly(qn.p, qn.q, &params.lambda),
            norm_sq: ito_norm_sq(qn.p, qn.q, &params.lambda),
            eigenvalue: eigenvalue(degree, params),
        })
    }

    /// Exact check of `□_λ(poly·g) = eigenvalue·poly·g`.
    pub fn verify(&self, params: &ModelParams) -> Result<bool> {
        let image = apply_box_conjugated(&self.poly, params)?;
        Ok(image == self.poly.scale_rational(&self.eigenvalue))
    }

    /// Unit-normalized value `H_pq(z) e^{−λ|z|²/2} / √(π·norm_sq)`.
    pub fn evaluate_normalized(&self, z: num_complex::Complex64, lambda: f64) -> num_complex::Complex64 {
        let norm = (std::f64::consts::PI * to_f64(&self.norm_sq)).sqrt();
        self.poly.evaluate(z) * ((-0.5 * lambda * z.norm_sqr()).exp() / norm)
    }
}
