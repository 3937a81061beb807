//! Acceptance checks, one report per criterion, shared by the CLI and the
//! test suite.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coulomb::{
    bethe_energy_identity, coulomb_diag_fock, coulomb_matrix_element, coulomb_matrix_element_polar, log_potential_diag,
    trace_divergence_report, transmission_matrix, Potential,
};
use crate::error::Result;
use crate::exactalg::rational::{integer, rational, rational_string, to_f64, Rational};
use crate::exactalg::{apply_box_conjugated, apply_box_oracle, gram_schmidt_zone, ModelParams, UniPoly};
use crate::kernels::{
    partition_complex, partition_spectral, partition_zonal, point_spread, spectral_kernel_oracle, wiener_zonal, zone_eigenfunction,
    FlowVariant,
};
use crate::lamb::{
    lamb_shift, partial_fraction_terms, sigma_b_closed_form, sigma_closed_form, sigma_integral, sigma_integral_to,
    sigma_total_closed_form, Density, EpsilonKind, PhysicalConstants, ShiftMode, PARTIAL_FRACTION_BOUND,
};
use crate::numerics::{integrate_plane, integrate_plane_centered, laguerre_coefficients_exact};
use crate::zones::{
    enumerate_zone_spectrum, ito_poly, laguerre_alpha, laguerre_eigenfunction, laguerre_operator, radial_eigen_solve, radial_ode_apply,
    EigenState, MagneticSign, QuantumNumbers,
};

pub const CRITERIA: [u8; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

/// Runtime limits in seconds, where a criterion has one.
pub fn runtime_limit(id: u8) -> Option<f64> {
    match id {
        1 | 10 => Some(10.0),
        2 => Some(30.0),
        8 => Some(60.0),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

struct Tally {
    passed: bool,
    details: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            passed: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: impl Into<String>) {
        self.passed &= ok;
        self.details.push(format!("[{}] {}", if ok { "ok" } else { "FAIL" }, line.into()));
    }

    fn note(&mut self, line: impl Into<String>) {
        self.details.push(format!("[info] {}", line.into()));
    }
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "exact eigen-suite",
        2 => "zone reconstruction by Gram-Schmidt",
        3 => "Laguerre and Ito representations agree",
        4 => "radial ODE",
        5 => "partition functions",
        6 => "point-spread and flow kernels",
        7 => "zonal Coulomb spectra",
        8 => "divergence diagnostics",
        9 => "2D log-potential rejection",
        10 => "Lamb amplitude chain",
        11 => "exact-Gamma amplitude",
        _ => "unknown criterion",
    }
}

/// Runs one criterion. Computation errors count as failures and are listed in
/// the details.
pub fn run_criterion(id: u8) -> CriterionReport {
    let mut tally = Tally::new();
    let outcome = match id {
        1 => criterion_1(&mut tally),
        2 => criterion_2(&mut tally),
        3 => criterion_3(&mut tally),
        4 => criterion_4(&mut tally),
        5 => criterion_5(&mut tally),
        6 => criterion_6(&mut tally),
        7 => criterion_7(&mut tally),
        8 => criterion_8(&mut tally),
        9 => criterion_9(&mut tally),
        10 => criterion_10(&mut tally),
        11 => criterion_11(&mut tally),
        _ => {
            tally.check(false, format!("no criterion {id}"));
            Ok(())
        }
    };
    if let Err(e) = outcome {
        tally.check(false, format!("computation failed: {e}"));
    }
    CriterionReport {
        id,
        title: title(id),
        passed: tally.passed,
        details: tally.details,
    }
}

fn sample_lambdas() -> [Rational; 3] {
    [integer(1), rational(1, 2), integer(3)]
}

fn criterion_1(t: &mut Tally) -> Result<()> {
    for lambda in sample_lambdas() {
        let params = ModelParams::new(lambda.clone())?;
        let (mut count, mut failures, mut mismatches) = (0, 0, 0);
        for tau in 0..=12u32 {
            for p in 0..=tau {
                let q = tau - p;
                let poly = ito_poly(p, q, &lambda);
                let expected = -((integer(4 * i64::from(p)) + integer(2)) * &lambda + integer(4) * &lambda * &lambda);
                let conjugated = apply_box_conjugated(&poly, &params)?;
                let oracle = apply_box_oracle(&poly, &params)?;
                count += 1;
                if conjugated != poly.scale_rational(&expected) {
                    failures += 1;
                }
                if conjugated != oracle {
                    mismatches += 1;
                }
            }
        }
        t.check(
            failures == 0 && mismatches == 0,
            format!(
                "lambda={}: {count} eigen-relations, {failures} failures, {mismatches} conjugated/oracle mismatches",
                rational_string(&lambda)
            ),
        );
    }
    Ok(())
}

fn criterion_2(t: &mut Tally) -> Result<()> {
    for lambda in [integer(1), rational(1, 2)] {
        for a in 0..=4u32 {
            let j_max = a + 8;
            let basis = gram_schmidt_zone(a, j_max, &lambda)?;
            let mut bad = Vec::new();
            for (p, v) in basis.iter().enumerate() {
                let p = p as u32;
                let ito = ito_poly(p, a, &lambda);
                let ratio = &v.coeff(p, a) / &ito.coeff(p, a);
                let positive = ratio.is_real() && ratio.re > Rational::zero();
                if !positive || *v != ito.scale(&ratio) {
                    bad.push(p);
                }
            }
            t.check(
                bad.is_empty() && basis.len() == j_max as usize + 1,
                format!(
                    "lambda={}, zone {a}: {} vectors (p <= {j_max}) equal Ito up to positive scale; mismatches at p={bad:?}",
                    rational_string(&lambda),
                    basis.len()
                ),
            );
        }
    }
    Ok(())
}

fn criterion_3(t: &mut Tally) -> Result<()> {
    for lambda in sample_lambdas() {
        let (mut count, mut bad) = (0, Vec::new());
        for total in 0..=8u32 {
            for n in 0..=total {
                let l = total - n;
                for sign in [MagneticSign::NonNegative, MagneticSign::Negative] {
                    if sign == MagneticSign::Negative && l == 0 {
                        continue;
                    }
                    let qn = QuantumNumbers::from_radial(n, l, sign)?;
                    count += 1;
                    if laguerre_eigenfunction(n, l, sign, &lambda) != ito_poly(qn.p, qn.q, &lambda) {
                        bad.push((n, l, qn.m));
                    }
                }
            }
        }
        t.check(
            bad.is_empty(),
            format!("lambda={}: {count} states with n+l <= 8, mismatches {bad:?}", rational_string(&lambda)),
        );
    }
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng) -> UniPoly {
    let degree = rng.random_range(0..=8usize);
    UniPoly::new(
        (0..=degree)
            .map(|_| rational(rng.random_range(-50..=50), rng.random_range(1..=12)))
            .collect(),
    )
}

fn criterion_4(t: &mut Tally) -> Result<()> {
    let (mut solved, mut failures) = (0, Vec::new());
    for k in [2u32, 4, 6, 8] {
        for l in 0..=4u32 {
            for p in 0..=3u32 {
                for n in 0..=8u32 {
                    let sol = radial_eigen_solve(n, l, p, k)?;
                    let image = radial_ode_apply(&sol.poly, l, p, k)?;
                    let expected = -(4 * i64::from(n) + 4 * i64::from(p) + 3 * i64::from(k));
                    let laguerre = UniPoly::new(laguerre_coefficients_exact(n as usize, &laguerre_alpha(l, k)));
                    solved += 1;
                    if sol.eigenvalue != expected || image != sol.poly.scale(&integer(expected)) || sol.poly != laguerre.monic() {
                        failures.push((n, l, p, k));
                    }
                }
            }
        }
    }
    t.check(
        failures.is_empty(),
        format!("{solved} solved eigenfunctions satisfy the ODE exactly and are monic Laguerre multiples; failures {failures:?}"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut identity_failures = 0;
    for _ in 0..20 {
        let u = random_poly(&mut rng);
        let (l, p, k) = (rng.random_range(0..=5u32), rng.random_range(0..=5u32), 2 * rng.random_range(1..=4u32));
        let lhs = radial_ode_apply(&u, l, p, k)?;
        let rhs = &laguerre_operator(&u, &laguerre_alpha(l, k)).scale(&integer(4)) - &u.scale(&integer(4 * i64::from(p) + 3 * i64::from(k)));
        if lhs != rhs {
            identity_failures += 1;
        }
    }
    t.check(
        identity_failures == 0,
        format!("operator identity P = 4 Lambda_alpha - (4p + 3k) on 20 random polynomials: {identity_failures} failures"),
    );
    Ok(())
}

const LAMBDA_T: [f64; 7] = [0.1, 0.25, 0.5, 1.0, 2.0, 3.5, 5.0];

fn criterion_5(t: &mut Tally) -> Result<()> {
    for lambda in [integer(1), rational(3, 2)] {
        let lf = to_f64(&lambda);
        let (mut worst_wiener, mut worst_schrodinger, mut worst_boundary) = (0.0f64, 0.0f64, 0.0f64);
        for kappa in 1..=3u32 {
            let params = ModelParams::new(lambda.clone())?.with_kappa(kappa)?;
            for a in 0..=3u32 {
                for lt in LAMBDA_T {
                    let time = lt / lf;
                    let closed = partition_zonal(a, time, &params, FlowVariant::Wiener)?;
                    let spectral = partition_spectral(a, Complex64::new(time, 0.0), &params, 1e-15)?;
                    worst_wiener = worst_wiener.max(((spectral - closed) / closed).norm());
                    for delta_lt in [0.1, 0.03, 0.01] {
                        let tau = Complex64::new(delta_lt / lf, time);
                        let closed = partition_complex(a, tau, &params)?;
                        let spectral = partition_spectral(a, tau, &params, 1e-15)?;
                        worst_schrodinger = worst_schrodinger.max(((spectral - closed) / closed).norm());
                    }
                    let boundary = partition_zonal(a, time, &params, FlowVariant::Schrodinger)?;
                    let near = partition_complex(a, Complex64::new(1e-9 / lf, time), &params)?;
                    worst_boundary = worst_boundary.max(((near - boundary) / boundary).norm());
                }
            }
        }
        let l = rational_string(&lambda);
        t.check(
            worst_wiener <= 1e-10,
            format!("lambda={l}: Wiener spectral sums vs Z_1 closed form, worst rel {worst_wiener:.2e} (a <= 3, kappa <= 3)"),
        );
        t.check(
            worst_schrodinger <= 1e-10,
            format!("lambda={l}: Abel spectral sums at tau = delta + it vs closed form, worst rel {worst_schrodinger:.2e}"),
        );
        t.check(
            worst_boundary <= 1e-6,
            format!("lambda={l}: closed form at delta -> 0 reaches Z_i, worst rel {worst_boundary:.2e}"),
        );
    }
    let params = ModelParams::unit();
    let zone0 = enumerate_zone_spectrum(0, &params, 200);
    let zone2 = enumerate_zone_spectrum(2, &params, 200);
    t.check(zone0 == zone2, "zones 0 and 2 (kappa = 1) have identical spectra and multiplicities for p <= 200");
    Ok(())
}

fn sample_points(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.random_range(0.0..1.0f64).sqrt(), rng.random_range(0.0..2.0 * PI))
}

fn criterion_6(t: &mut Tally) -> Result<()> {
    let unit = ModelParams::unit();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for a in 0..=2u32 {
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let (z, w) = ([sample_points(&mut rng, 1.2)], [sample_points(&mut rng, 1.2)]);
            let oracle = spectral_kernel_oracle(a, &unit, &z, &w, 70)?;
            let closed = point_spread(a, &unit, &z, &w)?.value;
            worst = worst.max((oracle - closed).norm());
        }
        t.check(worst <= 1e-10, format!("zone {a}: point_spread vs 70-term spectral sum at 10 pairs, worst abs {worst:.2e}"));
    }
    let (z, w) = (Complex64::new(0.3, -0.2), Complex64::new(-0.4, 0.5));
    for a in 0..=2u32 {
        let kernel = |x: Complex64, y: Complex64| point_spread(a, &unit, &[x], &[y]).map(|k| k.value).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let composed = integrate_plane_centered(|u: Complex64| kernel(z, u) * kernel(u, w), 0.5 * (z + w), 1e-11)?;
        let idem = (composed.value - kernel(z, w)).norm();
        t.check(idem <= 1e-8, format!("zone {a}: idempotency residual {idem:.2e}"));
        let p = a + 2;
        let reproduced = integrate_plane(|u: Complex64| kernel(z, u) * zone_eigenfunction(p, a, 1.0, u), 1e-11)?;
        let repro = (reproduced.value - zone_eigenfunction(p, a, 1.0, z)).norm();
        let other = (a + 1) % 3;
        let annihilated = integrate_plane(|u: Complex64| kernel(z, u) * zone_eigenfunction(p, other, 1.0, u), 1e-11)?;
        let annih = annihilated.value.norm();
        t.check(
            repro <= 1e-8 && annih <= 1e-8,
            format!("zone {a}: reproduces phi_({p},{a}) to {repro:.2e}, annihilates phi_({p},{other}) to {annih:.2e}"),
        );
    }
    let flow = |time: f64, x: Complex64, y: Complex64| {
        wiener_zonal(0, time, &[x], &[y], &unit).map(|k| k.value).unwrap_or(Complex64::new(f64::NAN, 0.0))
    };
    let composed = integrate_plane(|u: Complex64| flow(0.5, z, u) * flow(0.5, u, w), 1e-11)?;
    let ck = (composed.value - flow(1.0, z, w)).norm();
    t.check(ck <= 1e-8, format!("zonal Wiener a=0: Chapman-Kolmogorov residual {ck:.2e} (t = 0.5 + 0.5)"));
    let trace = integrate_plane(|u: Complex64| flow(1.0, u, u), 1e-12)?;
    let z1 = partition_zonal(0, 1.0, &unit, FlowVariant::Wiener)?;
    let tr = (trace.value - z1).norm();
    t.check(tr <= 1e-8, format!("zonal Wiener a=0: numeric trace {:.12} vs Z_1 {:.12}, diff {tr:.2e}", trace.value.re, z1.re));
    for a in 0..=2u32 {
        let short = wiener_zonal(a, 1e-6, &[z], &[w], &unit)?.value;
        let delta = point_spread(a, &unit, &[z], &[w])?.value;
        let rel = (short - delta).norm() / delta.norm();
        t.check(rel <= 1e-4, format!("zone {a}: Wiener kernel at t=1e-6 vs point_spread, rel {rel:.2e}"));
    }
    Ok(())
}

fn criterion_7(t: &mut Tally) -> Result<()> {
    let params = ModelParams::unit();
    let mut worst = 0.0f64;
    for m in 0..=30u32 {
        let s = EigenState::new(QuantumNumbers::from_degrees(m, 0), &params)?;
        let quad = coulomb_matrix_element(&s, &s, &params, Potential::Coulomb3d)?;
        worst = worst.max((quad.value.re - coulomb_diag_fock(m, &params)).abs());
    }
    t.check(worst <= 1e-8, format!("Fock diagonal m <= 30: radial quadrature vs Q sqrt(pi lambda) G_m, worst abs {worst:.2e}"));
    let pairs = [(0, 0, 1, 0), (2, 0, 0, 0), (1, 1, 2, 1), (3, 1, 1, 1), (2, 2, 1, 0), (0, 1, 0, 2), (4, 0, 1, 2)];
    let mut residual = 0.0f64;
    for (p1, q1, p2, q2) in pairs {
        let s1 = EigenState::new(QuantumNumbers::from_degrees(p1, q1), &params)?;
        let s2 = EigenState::new(QuantumNumbers::from_degrees(p2, q2), &params)?;
        let analytic = coulomb_matrix_element(&s1, &s2, &params, Potential::Coulomb3d)?;
        let polar = coulomb_matrix_element_polar(&s1, &s2, &params, Potential::Coulomb3d, 1e-11)?;
        residual = residual.max(analytic.value.norm()).max(polar.value.norm());
    }
    t.check(
        residual <= 1e-10,
        format!("selection rule: {} pairs with m1 != m2, worst residual {residual:.2e} (analytic and 2D polar)", pairs.len()),
    );
    let mut conj = 0.0f64;
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let forward = transmission_matrix(a, b, -3..=5, &params, Potential::Coulomb3d)?;
        let back = transmission_matrix(b, a, -3..=5, &params, Potential::Coulomb3d)?;
        for (m, e) in &forward.entries {
            conj = conj.max((e.value - back.entries[m].value.conj()).norm());
        }
    }
    t.check(conj <= 1e-10, format!("conjugacy V(a,b) = conj V(b,a) for (a,b) in (0,1),(0,2),(1,2), m in -3..5: worst {conj:.2e}"));
    let mut exact = true;
    for m in 1..=20 {
        exact &= bethe_energy_identity(m)?;
    }
    t.check(exact, "E_(m-1) - E_m = E_m/(2m-1) holds exactly for m <= 20");
    Ok(())
}

fn criterion_8(t: &mut Tally) -> Result<()> {
    let params = ModelParams::unit();
    let report = trace_divergence_report(0, 1_000_000, 0.1, &params)?;
    t.check(
        (0.99..=1.01).contains(&report.asymptotic_ratio),
        format!("E_m sqrt(pi m)/(Q sqrt(pi lambda)) at m={}: {:.6}", report.asymptotic_m, report.asymptotic_ratio),
    );
    let row = report.rows.iter().find(|r| r.m == 10_000).expect("checkpoint 1e4");
    t.check(
        (row.sum_model_ratio - 1.0).abs() <= 0.02,
        format!(
            "sum_(m<=1e4) E_m = {:.6} vs 2Q sqrt(lambda) sqrt(M/pi) = {:.6}: ratio {:.6}",
            row.sum_e,
            row.sum_e / row.sum_model_ratio,
            row.sum_model_ratio
        ),
    );
    t.note(format!("ratio / sqrt(pi) = {:.6}; the partial sums grow like 2Q sqrt(lambda M)", row.sum_model_ratio / PI.sqrt()));
    t.check(
        report.last_increment < 1e-6 && report.tail_bound.is_finite() && report.block_increment_ratio < 1.0,
        format!(
            "sum E_m^2.1 at M=1e6: last increment {:.3e}, certified tail bound {:.3}, doubling-block increment ratio {:.4}",
            report.last_increment, report.tail_bound, report.block_increment_ratio
        ),
    );
    t.note(format!(
        "sum E_m^2 grows by {:.4} ln 2 per doubling at M=1e6 (harmonic divergence)",
        report.square_increment_over_ln2
    ));
    Ok(())
}

fn criterion_9(t: &mut Tally) -> Result<()> {
    let report = log_potential_diag(50)?;
    let worst = report
        .entries
        .iter()
        .map(|e| (e.quadrature - e.closed_form).abs())
        .fold(0.0f64, f64::max);
    t.check(worst <= 1e-8, format!("<ln r>_m by quadrature vs psi(m+1)/2 for m <= 50: worst abs {worst:.2e}"));
    let last = report.entries.last().expect("m_max >= 1");
    t.check(
        report.monotone_increasing,
        format!(
            "sequence increases monotonically from {:.6} (m=0) to {:.6} (m=50); it does not decay",
            report.entries[0].quadrature, last.quadrature
        ),
    );
    Ok(())
}

fn criterion_10(t: &mut Tally) -> Result<()> {
    const TOL: f64 = 1e-10;
    let sigma_b = sigma_integral(EpsilonKind::Field, Density::Stirling, 0, TOL)?;
    t.check(
        (sigma_b.sigma - sigma_b_closed_form()).norm() <= 1e-6,
        format!("sigma_B = {:.9} {:+.3e}i vs -sqrt(pi)", sigma_b.sigma.re, sigma_b.sigma.im),
    );
    for l in 0..=5u32 {
        let s = sigma_integral(EpsilonKind::Particle { l }, Density::Stirling, 0, TOL)?;
        let closed = sigma_closed_form(l);
        let err = (s.sigma - closed).norm();
        t.check(err <= 1e-6, format!("l={l}: sigma = {:.9} {:+.9}i, closed form diff {err:.2e}", s.sigma.re, s.sigma.im));
        let total = s.sigma + sigma_b.sigma;
        let total_err = (total - sigma_total_closed_form(l)).norm();
        t.check(
            total_err <= 1e-6 && total.re.abs() <= 1e-8,
            format!("l={l}: sigma_total = {:+.2e} {:+.9}i, diff {total_err:.2e}, real part {:.2e}", total.re, total.im, total.re.abs()),
        );
    }
    let constants = PhysicalConstants::codata2018();
    let shift = lamb_shift(0, ShiftMode::Total, &constants);
    let expected = constants.me_c2_ev * constants.alpha.powi(5) / PI;
    t.check(
        (shift.energy_ev / expected - 1.0).abs() < 1e-12 && (3.36e-6..3.38e-6).contains(&shift.energy_ev) && (810.0..815.0).contains(&shift.frequency_mhz),
        format!("Delta_total(l=0) = {:.6e} eV = {:.3} MHz (m_e c^2 alpha^5 / pi)", shift.energy_ev, shift.frequency_mhz),
    );
    t.note("observed value quoted in the source material: about 1000 MHz (not asserted)");
    let mut first_terms = Vec::new();
    for l in 1..=20u32 {
        let (lhs, first, second) = partial_fraction_terms(l);
        if (lhs - first - second).abs() > 1e-14 {
            t.check(false, format!("partial-fraction identity fails at l={l}"));
        }
        first_terms.push((l, first));
    }
    let violations: Vec<String> = first_terms
        .iter()
        .filter(|(_, f)| *f >= PARTIAL_FRACTION_BOUND)
        .map(|(l, f)| format!("l={l}: {f:.7}"))
        .collect();
    t.check(
        violations.is_empty(),
        format!("first partial-fraction term < {PARTIAL_FRACTION_BOUND} for l = 1..20; violations: {violations:?}"),
    );
    Ok(())
}

fn criterion_11(t: &mut Tally) -> Result<()> {
    let eps = EpsilonKind::Particle { l: 0 };
    let base = sigma_integral(eps, Density::ExactGamma, 0, 1e-8)?;
    t.check(
        base.abs_err <= 1e-6 && base.sigma.norm().is_finite(),
        format!(
            "exact-Gamma sigma(l=0) = {:.9} {:+.9}i, abs_err {:.2e} (cutoff {:.3e}, tail bound {:.2e})",
            base.sigma.re, base.sigma.im, base.abs_err, base.cutoff, base.tail_bound
        ),
    );
    let doubled = sigma_integral_to(eps, Density::ExactGamma, 2.0 * base.cutoff, 1e-8)?;
    let change = (doubled.sigma - base.sigma).norm();
    t.check(change <= 1e-6, format!("doubling the cutoff changes sigma by {change:.2e}"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn titles_cover_all_criteria() {
        assert!(CRITERIA.iter().all(|&id| title(id) != "unknown criterion"));
        let r = run_criterion(99);
        assert!(!r.passed);
    }

    #[test]
    fn quick_criteria_pass() {
        for id in [3, 9, 11] {
            let r = run_criterion(id);
            assert!(r.passed, "{:#?}", r);
        }
    }
}
