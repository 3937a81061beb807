use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numerics::gamma::{gamma_ratio_g_unchecked, ValueAndSlope};
use crate::numerics::stirling::stirling_s_unchecked;
use crate::numerics::{integrate_dyadic, integrate_to_cutoff, QuadValue};

/// Dimensionless energy of the interacting electron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EpsilonKind {
    /// `ε_p = 4l + 2` on the Fock zone.
    Particle { l: u32 },
    /// `ε_B = 4`.
    Field,
}

impl EpsilonKind {
    pub fn epsilon(self) -> f64 {
        match self {
            Self::Particle { l } => 4.0 * f64::from(l) + 2.0,
            Self::Field => 4.0,
        }
    }

    /// Phase coefficient `θ = ½√π ε`, so the density is `d e^{−iθE_k}`.
    pub fn theta(self) -> f64 {
        0.5 * PI.sqrt() * self.epsilon()
    }
}

/// Coulomb energy curve `E_k` on the Fock zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Density {
    /// `E_k = √π G_k` with the Gamma-function ratio `G_k`.
    ExactGamma,
    /// `S_k = (4k + 1/π)^{1/2} / (2k + 1/π)`.
    Stirling,
}

impl Density {
    pub fn energy(self, k: f64) -> ValueAndSlope {
        match self {
            Self::ExactGamma => {
                let g = gamma_ratio_g_unchecked(k);
                ValueAndSlope {
                    value: PI.sqrt() * g.value,
                    slope: PI.sqrt() * g.slope,
                }
            }
            Self::Stirling => stirling_s_unchecked(k, 1.0 / PI),
        }
    }
}

/// `(ε_p, ε_B) = (4l + 2, 4)`.
pub fn dimensionless_energies(l: u32) -> (f64, f64) {
    (EpsilonKind::Particle { l }.epsilon(), EpsilonKind::Field.epsilon())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeResult {
    pub sigma: Complex64,
    /// Quadrature error estimate plus the tail bound.
    pub abs_err: f64,
    pub epsilon_kind: EpsilonKind,
    pub density_kind: Density,
    pub zone: u32,
    pub cutoff: f64,
    pub tail_bound: f64,
}

fn fock_only(zone: u32) -> Result<()> {
    if zone != 0 {
        return Err(Error::Unsupported("amplitudes are available on the Fock zone (a = 0) only".into()));
    }
    Ok(())
}

fn check_tol(function: &'static str, tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(domain(function, format!("tol must be finite and > 0, got {tol}")));
    }
    Ok(())
}

/// `|∫_K^∞ E·θE′·(unimodular or ≤1)| ≤ θE_K²/2` since `E` decreases to 0.
fn envelope_tail(density: Density, theta: f64) -> impl Fn(f64) -> f64 {
    move |k| 0.5 * theta * density.energy(k).value.powi(2)
}

fn complex_integrand(density: Density, theta: f64) -> impl Fn(f64) -> Complex64 {
    move |k| {
        let e = density.energy(k);
        let phase = Complex64::from_polar(1.0, -theta * e.value);
        phase * Complex64::new(0.0, -theta * e.slope) * e.value
    }
}

fn assemble<T: QuadValue + Into<Complex64>>(
    value: T,
    quad_err: f64,
    cutoff: f64,
    tail_bound: f64,
    epsilon: EpsilonKind,
    density: Density,
) -> AmplitudeResult {
    AmplitudeResult {
        sigma: value.into(),
        abs_err: quad_err + tail_bound,
        epsilon_kind: epsilon,
        density_kind: density,
        zone: 0,
        cutoff,
        tail_bound,
    }
}

/// `σ = ∫₀^∞ E_k d(e^{−iθE_k}) = ∫ E_k (−iθE′_k) e^{−iθE_k} dk`.
///
/// The range is cut where the envelope tail bound drops below `tol/10`.
pub fn sigma_integral(epsilon: EpsilonKind, density: Density, zone: u32, tol: f64) -> Result<AmplitudeResult> {
    fock_only(zone)?;
    check_tol("sigma_integral", tol)?;
    let theta = epsilon.theta();
    let r = integrate_to_cutoff(complex_integrand(density, theta), 0.0, envelope_tail(density, theta), tol)?;
    let tail = r.tail_bound;
    Ok(assemble(r.result.value, r.result.abs_error_estimate - tail, r.cutoff, tail, epsilon, density))
}

/// [`sigma_integral`] with an explicit cutoff `K`; the tail beyond `K` enters
/// only through its bound.
pub fn sigma_integral_to(epsilon: EpsilonKind, density: Density, cutoff: f64, tol: f64) -> Result<AmplitudeResult> {
    check_tol("sigma_integral_to", tol)?;
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(domain("sigma_integral_to", "cutoff must be finite and > 0"));
    }
    let theta = epsilon.theta();
    let r = integrate_dyadic(complex_integrand(density, theta), 0.0, cutoff, tol)?;
    let tail = envelope_tail(density, theta)(cutoff);
    Ok(assemble(r.value, r.abs_error_estimate, cutoff, tail, epsilon, density))
}

/// `σ` after integrating by parts:
/// `−E₀e^{−iθE₀} + E₀ − ∫₀^∞ E′_k (e^{−iθE_k} − 1) dk`.
pub fn sigma_by_parts(epsilon: EpsilonKind, density: Density, tol: f64) -> Result<AmplitudeResult> {
    check_tol("sigma_by_parts", tol)?;
    let theta = epsilon.theta();
    let integrand = move |k: f64| {
        let e = density.energy(k);
        let shifted = Complex64::from_polar(1.0, -theta * e.value) - 1.0;
        shifted * e.slope
    };
    let r = integrate_to_cutoff(integrand, 0.0, envelope_tail(density, theta), tol)?;
    let e0 = density.energy(0.0).value;
    let boundary = -Complex64::from_polar(e0, -theta * e0) + e0;
    let tail = r.tail_bound;
    Ok(assemble(boundary - r.result.value, r.result.abs_error_estimate - tail, r.cutoff, tail, epsilon, density))
}

/// Scalar density: `∫₀^∞ E_k d(e^{−θE_k})`, a real number.
pub fn scalar_density_sigma(epsilon: EpsilonKind, density: Density, tol: f64) -> Result<AmplitudeResult> {
    check_tol("scalar_density_sigma", tol)?;
    let theta = epsilon.theta();
    let integrand = move |k: f64| {
        let e = density.energy(k);
        -theta * e.slope * e.value * (-theta * e.value).exp()
    };
    let r = integrate_to_cutoff(integrand, 0.0, envelope_tail(density, theta), tol)?;
    let tail = r.tail_bound;
    Ok(assemble(
        Complex64::new(r.result.value, 0.0),
        r.result.abs_error_estimate - tail,
        r.cutoff,
        tail,
        epsilon,
        density,
    ))
}

/// `√π − i/(√π(l + ½))`.
pub fn sigma_closed_form(l: u32) -> Complex64 {
    let root_pi = PI.sqrt();
    Complex64::new(root_pi, -1.0 / (root_pi * (f64::from(l) + 0.5)))
}

/// `σ_B = −√π`.
pub fn sigma_b_closed_form() -> Complex64 {
    Complex64::new(-PI.sqrt(), 0.0)
}

/// `σ_l + σ_B = −i/(√π(l + ½))`.
pub fn sigma_total_closed_form(l: u32) -> Complex64 {
    sigma_closed_form(l) + sigma_b_closed_form()
}

/// `[1 − e^{−θ√π}(1 + θ√π)] / θ`, the scalar integral for any density
/// decreasing from `√π` to 0.
pub fn scalar_sigma_closed_form(epsilon: EpsilonKind) -> f64 {
    let theta = epsilon.theta();
    let x = theta * PI.sqrt();
    -(-x).exp_m1() / theta - x * (-x).exp() / theta
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscreteComparison {
    pub discrete_sum: Complex64,
    pub integral: Complex64,
    pub gap: f64,
}

/// `Σ_{k=0}^{K} E_k (φ(k+1) − φ(k))` against `∫₀^{K+1} E dφ`, `φ = e^{−iθE}`.
pub fn discrete_vs_integral(l: u32, k_max: u32, density: Density) -> Result<DiscreteComparison> {
    if k_max < 10 {
        return Err(domain("discrete_vs_integral", format!("K must be >= 10, got {k_max}")));
    }
    let theta = EpsilonKind::Particle { l }.theta();
    let phase = |k: f64| Complex64::from_polar(1.0, -theta * density.energy(k).value);
    let discrete_sum: Complex64 = (0..=k_max)
        .map(|k| {
            let k = f64::from(k);
            (phase(k + 1.0) - phase(k)) * density.energy(k).value
        })
        .sum();
    let integral = integrate_dyadic(complex_integrand(density, theta), 0.0, f64::from(k_max) + 1.0, 1e-11)?.value;
    Ok(DiscreteComparison {
        discrete_sum,
        integral,
        gap: (discrete_sum - integral).norm(),
    })
}
