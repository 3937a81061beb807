//! Radial reduction: for `f = u(r²)·(angular part)` the eigen-equation becomes
//! `4t u″ + (2k + 4l̃ − 4t)u′ − (4p̃ + 3k)u = μ u`, which is `4Λ_α − (4p̃ + 3k)`
//! with the Laguerre operator `Λ_α u = t u″ + (α + 1 − t)u′`, `α = k/2 + l̃ − 1`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exactalg::rational::{integer, Rational};
use crate::exactalg::UniPoly;

fn check_k(function: &'static str, k: u32) -> Result<()> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(domain(function, format!("k must be even and >= 2, got {k}")));
    }
    Ok(())
}

/// `α = k/2 + l̃ − 1`.
pub fn laguerre_alpha(l_tilde: u32, k: u32) -> Rational {
    integer(i64::from(k / 2) + i64::from(l_tilde) - 1)
}

/// `Λ_α u = t u″ + (α + 1 − t) u′`.
pub fn laguerre_operator(u: &UniPoly, alpha: &Rational) -> UniPoly {
    let d1 = u.derivative();
    let d2 = d1.derivative();
    let shifted = d1.scale(&(alpha + integer(1)));
    &(&d2.mul_t() + &shifted) - &d1.mul_t()
}

/// `4t u″ + (2k + 4l̃ − 4t) u′ − (4p̃ + 3k) u`.
pub fn radial_ode_apply(u: &UniPoly, l_tilde: u32, p_tilde: u32, k: u32) -> Result<UniPoly> {
    check_k("radial_ode_apply", k)?;
    let d1 = u.derivative();
    let d2 = d1.derivative();
    let four = integer(4);
    let drift_const = integer(2 * i64::from(k) + 4 * i64::from(l_tilde));
    let shift = integer(4 * i64::from(p_tilde) + 3 * i64::from(k));
    let out = &(&(&d2.mul_t().scale(&four) + &d1.scale(&drift_const)) - &d1.mul_t().scale(&four)) - &u.scale(&shift);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialEigen {
    #[serde(serialize_with = "coeff_strings")]
    pub poly: UniPoly,
    pub eigenvalue: i64,
}

fn coeff_strings<S: serde::Serializer>(u: &UniPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(u.coeffs().iter().map(crate::exactalg::rational_string))
}

/// The monic degree-`n` polynomial solution of `Λ_α u = −n u` and its
/// eigenvalue `−(4n + 4p̃ + 3k)` under the radial operator.
///
/// Coefficients follow from matching powers of `t`:
/// `(j+1)(j+α+1) c_{j+1} = (j − n) c_j`, solved downward from `c_n = 1`.
pub fn radial_eigen_solve(n: u32, l_tilde: u32, p_tilde: u32, k: u32) -> Result<RadialEigen> {
    check_k("radial_eigen_solve", k)?;
    let alpha = laguerre_alpha(l_tilde, k);
    let n_us = n as usize;
    let mut coeffs = vec![Rational::zero(); n_us + 1];
    coeffs[n_us] = integer(1);
    for j in (0..n_us).rev() {
        let jr = integer(j as i64);
        let num = (&jr + integer(1)) * (&jr + &alpha + integer(1));
        coeffs[j] = &coeffs[j + 1] * num / (jr - integer(i64::from(n)));
    }
    Ok(RadialEigen {
        poly: UniPoly::new(coeffs),
        eigenvalue: -(4 * i64::from(n) + 4 * i64::from(p_tilde) + 3 * i64::from(k)),
    })
}
