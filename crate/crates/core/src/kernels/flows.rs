//! Heat (Wiener) and Schrödinger kernels of `H_Z = −½□`, globally and per zone.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::projection::{check_points, compositions, hermitian, zone_eigenfunction, KernelKind, KernelValue};
use crate::error::{domain, Error, Result};
use crate::exactalg::ModelParams;

/// Below this `|sin λt|` the Schrödinger kernels are treated as singular.
pub const CAUSTIC_TOLERANCE: f64 = 1e-12;

/// Upper bound on terms in a zonal spectral sum before giving up.
pub const MAX_SPECTRAL_TERMS: u32 = 20_000;

/// Absolute target for zonal spectral sums, relative to `(λ/π)`.
const SPECTRAL_TOL: f64 = 1e-16;

fn check_time(function: &'static str, t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(function, format!("t must be finite and > 0, got {t}")));
    }
    Ok(())
}

pub(crate) fn check_caustic(lambda_t: f64) -> Result<()> {
    let sin_abs = lambda_t.sin().abs();
    if sin_abs < CAUSTIC_TOLERANCE {
        return Err(Error::SingularTime { lambda_t, sin_abs });
    }
    Ok(())
}

/// `ln sinh x` for x > 0 without overflow.
fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
    } else {
        x.sinh().ln()
    }
}

/// `(λ/(2π sinh λt))^κ exp(−λ(½coth(λt)|X−Y|² + i Im(z·w̄)))`.
///
/// For large λt the prefactor underflows to zero rather than producing NaN.
pub fn wiener_global(t: f64, z: &[Complex64], w: &[Complex64], params: &ModelParams) -> Result<KernelValue> {
    check_time("wiener_global", t)?;
    check_points("wiener_global", params, z, w)?;
    let lambda = params.lambda_f64();
    let lt = lambda * t;
    let kappa = f64::from(params.kappa);
    let diff: f64 = z.iter().zip(w).map(|(a, b)| (a - b).norm_sqr()).sum();
    let coth = 1.0 / lt.tanh();
    let log_mag = kappa * ((lambda / (2.0 * PI)).ln() - ln_sinh(lt)) - 0.5 * lambda * coth * diff;
    let phase = -lambda * hermitian(z, w).im;
    Ok(KernelValue {
        value: Complex64::from_polar(log_mag.exp(), phase),
        kind: KernelKind::WienerGlobal,
    })
}

/// `(λ/(2πi sin λt))^κ exp(iλ(½cot(λt)|X−Y|² − Im(z·w̄)))`.
pub fn schrodinger_global(t: f64, z: &[Complex64], w: &[Complex64], params: &ModelParams) -> Result<KernelValue> {
    check_time("schrodinger_global", t)?;
    check_points("schrodinger_global", params, z, w)?;
    let lambda = params.lambda_f64();
    let lt = lambda * t;
    check_caustic(lt)?;
    let diff: f64 = z.iter().zip(w).map(|(a, b)| (a - b).norm_sqr()).sum();
    let prefactor = Complex64::new(0.0, -lambda / (2.0 * PI * lt.sin())).powi(params.kappa as i32);
    let phase = lambda * (0.5 * diff / lt.tan() - hermitian(z, w).im);
    Ok(KernelValue {
        value: prefactor * Complex64::from_polar(1.0, phase),
        kind: KernelKind::SchrodingerGlobal,
    })
}

/// Flow time: real for Wiener, imaginary for Schrödinger (`τ = t` or `it`).
#[derive(Debug, Clone, Copy, PartialEq)]
enum Flow {
    Wiener,
    Schrodinger,
}

impl Flow {
    fn tau(self, t: f64) -> Complex64 {
        match self {
            Flow::Wiener => Complex64::new(t, 0.0),
            Flow::Schrodinger => Complex64::new(0.0, t),
        }
    }
}

/// Planar Fock-zone closed form
/// `(λe^{−λτ}/π) exp(λ(−½(|z|²+|w|²) + e^{−2λτ} z w̄))`.
fn fock_flow_planar(lambda: f64, tau: Complex64, z: Complex64, w: Complex64) -> Complex64 {
    let decay = (-tau * lambda).exp();
    let exponent = (decay * decay * z * w.conj() - 0.5 * (z.norm_sqr() + w.norm_sqr())) * lambda;
    decay * (lambda / PI) * exponent.exp()
}

/// Upper bound `√(λ/π)√(p!/a!) ρ^{p−a}/(p−a)!` on `|φ_{p,a}|`, in log form.
fn ln_eigenfunction_bound(p: u32, a: u32, lambda: f64, r: f64) -> f64 {
    use crate::numerics::gamma::ln_gamma_unchecked as lg;
    let d = f64::from(p - a);
    let rho = lambda.sqrt() * r;
    let power = if d == 0.0 { 0.0 } else if rho == 0.0 { f64::NEG_INFINITY } else { d * rho.ln() };
    0.5 * (lambda / PI).ln() + 0.5 * (lg(f64::from(p) + 1.0) - lg(f64::from(a) + 1.0)) + power - lg(d + 1.0)
}

/// `Σ_p e^{−τ h_p} φ_{p,a}(z) conj φ_{p,a}(w)` for one planar component, with
/// `h_p = (2p+1)λ`.
///
/// Past `p = a` the term bound `B_p` has ratio
/// `r_p = (p+1)ρ_zρ_w/(p+1−a)²`, decreasing in p. Once `r_p ≤ ½` the
/// remaining tail is at most `2B_{p+1}`; summation stops when that is below
/// the target.
fn zonal_flow_planar(a: u32, lambda: f64, tau: Complex64, z: Complex64, w: Complex64) -> Result<Complex64> {
    if a == 0 {
        return Ok(fock_flow_planar(lambda, tau, z, w));
    }
    let tol = SPECTRAL_TOL * lambda / PI;
    let (rz, rw) = (lambda.sqrt() * z.norm(), lambda.sqrt() * w.norm());
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..MAX_SPECTRAL_TERMS {
        let weight = (-tau * (lambda * f64::from(2 * p + 1))).exp();
        sum += weight * zone_eigenfunction(p, a, lambda, z) * zone_eigenfunction(p, a, lambda, w).conj();
        if p >= a {
            let next = p + 1;
            let ratio = f64::from(next) * rz * rw / f64::from(next - a).powi(2);
            let ln_next = ln_eigenfunction_bound(next, a, lambda, z.norm()) + ln_eigenfunction_bound(next, a, lambda, w.norm());
            let tail = 2.0 * ln_next.exp() * weight.norm();
            if ratio <= 0.5 && tail <= tol {
                return Ok(sum);
            }
        }
    }
    let tail = (ln_eigenfunction_bound(MAX_SPECTRAL_TERMS, a, lambda, z.norm())
        + ln_eigenfunction_bound(MAX_SPECTRAL_TERMS, a, lambda, w.norm()))
    .exp();
    Err(Error::Truncation {
        terms: MAX_SPECTRAL_TERMS as usize,
        tail_bound: tail,
    })
}

fn zonal_flow(a: u32, tau: Complex64, z: &[Complex64], w: &[Complex64], params: &ModelParams) -> Result<Complex64> {
    let lambda = params.lambda_f64();
    let mut planar: Vec<Vec<Complex64>> = Vec::with_capacity(a as usize + 1);
    for ai in 0..=a {
        planar.push(
            z.iter()
                .zip(w)
                .map(|(zi, wi)| zonal_flow_planar(ai, lambda, tau, *zi, *wi))
                .collect::<Result<_>>()?,
        );
    }
    Ok(compositions(a, params.kappa as usize)
        .iter()
        .map(|parts| parts.iter().enumerate().map(|(i, &ai)| planar[ai as usize][i]).product::<Complex64>())
        .sum())
}

/// Zonal heat kernel `Σ e^{−t h_p} φφ̄` over zone `a`. Closed form for a = 0,
/// certified spectral sum otherwise.
pub fn wiener_zonal(a: u32, t: f64, z: &[Complex64], w: &[Complex64], params: &ModelParams) -> Result<KernelValue> {
    check_time("wiener_zonal", t)?;
    check_points("wiener_zonal", params, z, w)?;
    Ok(KernelValue {
        value: zonal_flow(a, Flow::Wiener.tau(t), z, w, params)?,
        kind: KernelKind::WienerZonal,
    })
}

/// Zonal Schrödinger kernel `Σ e^{−i t h_p} φφ̄` over zone `a`.
pub fn schrodinger_zonal(a: u32, t: f64, z: &[Complex64], w: &[Complex64], params: &ModelParams) -> Result<KernelValue> {
    if !t.is_finite() {
        return Err(domain("schrodinger_zonal", "t must be finite"));
    }
    check_points("schrodinger_zonal", params, z, w)?;
    Ok(KernelValue {
        value: zonal_flow(a, Flow::Schrodinger.tau(t), z, w, params)?,
        kind: KernelKind::SchrodingerZonal,
    })
}

/// `∫_{|X| ≤ R} K(t, X, X) dX` for the global heat kernel. Grows like `R^{2κ}`:
/// the global flow is not trace class.
pub fn global_wiener_ball_trace(t: f64, radius: f64, params: &ModelParams) -> Result<f64> {
    if !(radius >= 0.0) {
        return Err(domain("global_wiener_ball_trace", "radius must be >= 0"));
    }
    let origin = vec![Complex64::new(0.0, 0.0); params.kappa as usize];
    let diagonal = wiener_global(t, &origin, &origin, params)?.value.re;
    // The diagonal is constant in X; the ball volume is π^κ R^{2κ}/κ!.
    let kappa = params.kappa as i32;
    let factorial: f64 = (1..=params.kappa).map(f64::from).product();
    Ok(diagonal * PI.powi(kappa) * radius.powi(2 * kappa) / factorial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::projection::point_spread;
    use crate::numerics::{integrate_plane, integrate_plane_centered};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn wiener_global_origin() {
        let v = wiener_global(1.0, &[c(0.0, 0.0)], &[c(0.0, 0.0)], &ModelParams::unit()).unwrap();
        assert!((v.value.re - 1.0 / (2.0 * PI * 1f64.sinh())).abs() < 1e-15);
        assert!((v.value.re - 0.135_427_826_275_79).abs() < 1e-14);
        let v = wiener_global(0.7, &[c(0.3, -0.4)], &[c(0.0, 0.0)], &ModelParams::unit()).unwrap();
        assert_eq!(v.value.im, 0.0);
        let v = wiener_global(1.0e4, &[c(0.0, 0.0)], &[c(0.0, 0.0)], &ModelParams::unit()).unwrap();
        assert_eq!(v.value, c(0.0, 0.0));
    }

    #[test]
    fn schrodinger_global_examples() {
        let unit = ModelParams::unit();
        let o = [c(0.0, 0.0)];
        let v = schrodinger_global(PI / 2.0, &o, &o, &unit).unwrap();
        assert!((v.value - c(0.0, -1.0 / (2.0 * PI))).norm() < 1e-15);
        assert!(matches!(schrodinger_global(PI, &o, &o, &unit), Err(Error::SingularTime { .. })));
        let x = [c(0.4, 1.1)];
        for t in [0.3, 1.0, 2.5] {
            let v = schrodinger_global(t, &x, &x, &unit).unwrap();
            assert!((v.value.norm() * 2.0 * PI * f64::sin(t).abs() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn global_kernel_is_sum_of_all_eigenstates() {
        let unit = ModelParams::unit();
        let (z, w, t) = (c(0.3, -0.2), c(-0.1, 0.4), 0.8);
        let mut sum = c(0.0, 0.0);
        for p in 0..60 {
            for a in 0..60 {
                sum += (-t * f64::from(2 * p + 1)).exp() * zone_eigenfunction(p, a, 1.0, z) * zone_eigenfunction(p, a, 1.0, w).conj();
            }
        }
        let closed = wiener_global(t, &[z], &[w], &unit).unwrap().value;
        assert!((sum - closed).norm() < 1e-12, "{sum} vs {closed}");
    }

    #[test]
    fn fock_zone_examples() {
        let unit = ModelParams::unit();
        let o = [c(0.0, 0.0)];
        let v = wiener_zonal(0, 1.0, &o, &o, &unit).unwrap().value;
        assert!((v.re - (-1f64).exp() / PI).abs() < 1e-15);
        let (z, w) = ([c(0.5, 0.2)], [c(-0.3, 0.6)]);
        let v = wiener_zonal(0, 1e-6, &z, &w, &unit).unwrap().value;
        let delta = point_spread(0, &unit, &z, &w).unwrap().value;
        assert!((v - delta).norm() / delta.norm() < 1e-4);
    }

    #[test]
    fn zone_sums_agree_with_fock_closed_form() {
        // Zone 0 through the generic spectral route.
        let (z, w) = (c(0.7, -0.1), c(0.2, 0.5));
        for tau in [c(0.4, 0.0), c(0.0, 1.3)] {
            let mut direct = c(0.0, 0.0);
            for p in 0..80 {
                direct += (-tau * f64::from(2 * p + 1)).exp() * zone_eigenfunction(p, 0, 1.0, z) * zone_eigenfunction(p, 0, 1.0, w).conj();
            }
            assert!((direct - fock_flow_planar(1.0, tau, z, w)).norm() < 1e-14);
        }
    }

    #[test]
    fn higher_zone_short_time_limit() {
        let params = ModelParams::unit();
        let (z, w) = ([c(0.5, 0.2)], [c(-0.3, 0.6)]);
        for a in 1..=2 {
            let v = wiener_zonal(a, 1e-6, &z, &w, &params).unwrap().value;
            let delta = point_spread(a, &params, &z, &w).unwrap().value;
            assert!((v - delta).norm() / delta.norm() < 1e-4, "a={a}");
        }
    }

    #[test]
    fn chapman_kolmogorov_fock() {
        let unit = ModelParams::unit();
        let (z, w) = (c(0.0, 0.0), c(0.7, 0.0));
        let composed = integrate_plane(
            |u: Complex64| {
                wiener_zonal(0, 0.5, &[z], &[u], &unit).unwrap().value * wiener_zonal(0, 0.5, &[u], &[w], &unit).unwrap().value
            },
            1e-11,
        )
        .unwrap();
        let direct = wiener_zonal(0, 1.0, &[z], &[w], &unit).unwrap().value;
        assert!((composed.value - direct).norm() < 1e-8);
    }

    #[test]
    fn chapman_kolmogorov_global() {
        let unit = ModelParams::unit();
        let (z, w) = (c(0.0, 0.0), c(0.7, 0.0));
        let composed = integrate_plane_centered(
            |u: Complex64| {
                wiener_global(0.5, &[z], &[u], &unit).unwrap().value * wiener_global(0.5, &[u], &[w], &unit).unwrap().value
            },
            0.5 * (z + w),
            1e-11,
        )
        .unwrap();
        let direct = wiener_global(1.0, &[z], &[w], &unit).unwrap().value;
        assert!((composed.value - direct).norm() < 1e-8, "{} vs {direct}", composed.value);
    }

    #[test]
    fn fock_trace_matches_partition_function() {
        let unit = ModelParams::unit();
        let trace = integrate_plane(|u: Complex64| wiener_zonal(0, 1.0, &[u], &[u], &unit).unwrap().value, 1e-12).unwrap();
        let z1 = (-1f64).exp() / (1.0 - (-2f64).exp());
        assert!((trace.value.re - z1).abs() < 1e-8);
        assert!((z1 - 0.425_459_064_119_66).abs() < 1e-14);
    }

    #[test]
    fn global_trace_grows_with_radius() {
        let unit = ModelParams::unit();
        let traces: Vec<f64> = [1.0, 2.0, 4.0, 8.0].iter().map(|&r| global_wiener_ball_trace(1.0, r, &unit).unwrap()).collect();
        for pair in traces.windows(2) {
            assert!(pair[1] >= 4.0 * pair[0] * 0.999);
        }
    }

    #[test]
    fn schrodinger_zonal_is_unitary_flow_of_fock_states() {
        let unit = ModelParams::unit();
        let (z, w) = ([c(0.3, 0.1)], [c(-0.2, 0.25)]);
        let v = schrodinger_zonal(0, 0.0, &z, &w, &unit).unwrap().value;
        let delta = point_spread(0, &unit, &z, &w).unwrap().value;
        assert!((v - delta).norm() < 1e-14);
        let v1 = schrodinger_zonal(2, 0.9, &z, &w, &unit).unwrap().value;
        let v2 = schrodinger_zonal(2, 0.9 + 2.0 * PI, &z, &w, &unit).unwrap().value;
        assert!((v1 - v2).norm() < 1e-10);
    }

    #[test]
    fn truncation_reports_far_points() {
        let unit = ModelParams::unit();
        let far = [c(1.0e3, 0.0)];
        assert!(matches!(wiener_zonal(1, 1.0, &far, &far, &unit), Err(Error::Truncation { .. })));
    }
}
