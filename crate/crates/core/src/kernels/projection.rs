use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exactalg::ModelParams;
use crate::numerics::gamma::ln_gamma_unchecked;
use crate::numerics::laguerre;
use crate::zones::{EigenState, QuantumNumbers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Projection,
    WienerGlobal,
    WienerZonal,
    SchrodingerGlobal,
    SchrodingerZonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: Complex64,
    pub kind: KernelKind,
}

/// Arguments of a kernel evaluation: κ-component points and an optional time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelPoint {
    pub z: Vec<Complex64>,
    pub w: Vec<Complex64>,
    pub t: Option<f64>,
}

impl KernelPoint {
    pub fn planar(z: Complex64, w: Complex64, t: Option<f64>) -> Self {
        Self { z: vec![z], w: vec![w], t }
    }
}

pub(crate) fn check_points(function: &'static str, params: &ModelParams, z: &[Complex64], w: &[Complex64]) -> Result<()> {
    let kappa = params.kappa as usize;
    if z.len() != kappa || w.len() != kappa {
        return Err(domain(
            function,
            format!("points need {kappa} components, got {} and {}", z.len(), w.len()),
        ));
    }
    if z.iter().chain(w).any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(domain(function, "point components must be finite"));
    }
    Ok(())
}

/// `z·w̄ = Σ z_i conj(w_i)`.
pub(crate) fn hermitian(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

pub(crate) fn norm_sqr(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum()
}

/// Unit-normalized planar eigenfunction of holomorphic degree `p` in zone `a`,
/// from its Laguerre form (log-space magnitudes, safe for large `p`).
pub fn zone_eigenfunction(p: u32, a: u32, lambda: f64, z: Complex64) -> Complex64 {
    let (hi, lo) = (p.max(a), p.min(a));
    let d = hi - lo;
    let x = lambda * z.norm_sqr();
    let lag = laguerre(lo as usize, f64::from(d), x);
    let sign = if lo % 2 == 1 { -1.0 } else { 1.0 };
    let mut log_mag = 0.5 * (lambda / PI).ln() + 0.5 * (ln_gamma_unchecked(f64::from(lo) + 1.0) - ln_gamma_unchecked(f64::from(hi) + 1.0))
        - 0.5 * x;
    let phase = if d == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        let r = z.norm();
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        log_mag += f64::from(d) * (lambda.sqrt() * r).ln();
        let u = z / r;
        if p >= a {
            u.powu(d)
        } else {
            u.conj().powu(d)
        }
    };
    phase * (sign * lag * log_mag.exp())
}

/// Zonal point-spread (reproducing kernel of zone `a`):
/// `(λ/π)^κ L_a^{(κ−1)}(λ|z−w|²) exp(λ(z·w̄ − ½(|z|²+|w|²)))`.
pub fn point_spread(a: u32, params: &ModelParams, z: &[Complex64], w: &[Complex64]) -> Result<KernelValue> {
    check_points("point_spread", params, z, w)?;
    let lambda = params.lambda_f64();
    let kappa = params.kappa;
    let diff: f64 = z.iter().zip(w).map(|(a, b)| (a - b).norm_sqr()).sum();
    let lag = laguerre(a as usize, f64::from(kappa) - 1.0, lambda * diff);
    let exponent = (hermitian(z, w) - 0.5 * (norm_sqr(z) + norm_sqr(w))) * lambda;
    let value = exponent.exp() * (lag * (lambda / PI).powi(kappa as i32));
    Ok(KernelValue {
        value,
        kind: KernelKind::Projection,
    })
}

/// All compositions of `a` into `parts` non-negative integers.
pub(crate) fn compositions(a: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![a]];
    }
    (0..=a)
        .flat_map(|first| {
            compositions(a - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Truncated eigenfunction sum `Σ_{p<N} φ_{p,a}(z) conj φ_{p,a}(w)`, with the
/// φ built from exact Itô polynomials; for κ > 1 the gross zone is the sum over
/// compositions `a = a_1 + … + a_κ` of products of planar sums.
pub fn spectral_kernel_oracle(a: u32, params: &ModelParams, z: &[Complex64], w: &[Complex64], n_terms: u32) -> Result<Complex64> {
    check_points("spectral_kernel_oracle", params, z, w)?;
    if n_terms == 0 {
        return Err(domain("spectral_kernel_oracle", "truncation order must be >= 1"));
    }
    let planar = ModelParams::new(params.lambda.clone())?;
    let lambda = params.lambda_f64();
    let mut planar_sums = Vec::with_capacity(a as usize + 1);
    for ai in 0..=a {
        let states: Vec<EigenState> = (0..n_terms)
            .map(|p| EigenState::new(QuantumNumbers::from_degrees(p, ai), &planar))
            .collect::<Result<_>>()?;
        let per_component: Vec<Complex64> = z
            .iter()
            .zip(w)
            .map(|(zi, wi)| {
                states
                    .iter()
                    .map(|s| s.evaluate_normalized(*zi, lambda) * s.evaluate_normalized(*wi, lambda).conj())
                    .sum()
            })
            .collect();
        planar_sums.push(per_component);
    }
    Ok(compositions(a, params.kappa as usize)
        .iter()
        .map(|parts| {
            parts
                .iter()
                .enumerate()
                .map(|(i, &ai)| planar_sums[ai as usize][i])
                .product::<Complex64>()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn point_spread_examples() {
        let unit = ModelParams::unit();
        let origin = [c(0.0, 0.0)];
        let v = point_spread(0, &unit, &origin, &origin).unwrap().value;
        assert!((v - c(1.0 / PI, 0.0)).norm() < 1e-15);
        let params = ModelParams::new(rational(5, 2)).unwrap();
        let z = [c(0.4, -0.9)];
        let v = point_spread(1, &params, &z, &z).unwrap().value;
        assert!((v - c(2.5 / PI, 0.0)).norm() < 1e-14);
        let v = point_spread(0, &unit, &[c(1.0, 0.0)], &origin).unwrap().value;
        assert!((v - c((-0.5f64).exp() / PI, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let params = ModelParams::unit().with_kappa(2).unwrap();
        assert!(point_spread(0, &params, &[c(0.0, 0.0)], &[c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn oracle_examples() {
        let unit = ModelParams::unit();
        let origin = [c(0.0, 0.0)];
        let v = spectral_kernel_oracle(0, &unit, &origin, &origin, 1).unwrap();
        assert!((v - c(1.0 / PI, 0.0)).norm() < 1e-15);
        let z = [c(0.3, 0.0)];
        let w = [c(0.1, -0.2)];
        let v = spectral_kernel_oracle(0, &unit, &z, &w, 40).unwrap();
        assert!((v - point_spread(0, &unit, &z, &w).unwrap().value).norm() < 1e-10);
        let v = spectral_kernel_oracle(1, &unit, &origin, &origin, 40).unwrap();
        assert!((v - c(1.0 / PI, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn laguerre_form_matches_ito_states() {
        let params = ModelParams::new(rational(3, 2)).unwrap();
        for (p, a) in [(0, 0), (3, 0), (0, 2), (2, 5), (7, 3), (4, 4)] {
            let state = EigenState::new(QuantumNumbers::from_degrees(p, a), &params).unwrap();
            for z in [c(0.3, -0.7), c(-1.1, 0.2), c(0.0, 0.0)] {
                let exact = state.evaluate_normalized(z, 1.5);
                let fast = zone_eigenfunction(p, a, 1.5, z);
                assert!((exact - fast).norm() < 1e-13, "p={p} a={a} z={z}");
            }
        }
    }

    #[test]
    fn multi_particle_oracle() {
        let params = ModelParams::unit().with_kappa(2).unwrap();
        let z = [c(0.2, 0.1), c(-0.3, 0.4)];
        let w = [c(0.0, -0.5), c(0.6, 0.2)];
        for a in 0..=2 {
            let oracle = spectral_kernel_oracle(a, &params, &z, &w, 45).unwrap();
            let closed = point_spread(a, &params, &z, &w).unwrap().value;
            assert!((oracle - closed).norm() < 1e-10, "a={a}: {oracle} vs {closed}");
        }
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 1), vec![vec![3]]);
        assert_eq!(compositions(2, 2).len(), 3);
        assert_eq!(compositions(3, 3).len(), 10);
    }
}
