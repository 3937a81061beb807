use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exactalg::ModelParams;
use crate::numerics::gamma::{digamma_unchecked, gamma_ratio_g_unchecked, ln_gamma_unchecked};
use crate::numerics::AdaptiveQuadrature;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialSums {
    pub m: u64,
    pub sum_e: f64,
    pub sum_e2: f64,
    pub sum_e2eps: f64,
    /// `Σ E_m / (2Q√λ √(M/π))`.
    pub sum_model_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceDivergenceReport {
    pub a: u32,
    pub m_max: u64,
    pub epsilon: f64,
    pub rows: Vec<PartialSums>,
    /// `m` at which the asymptotic ratio is evaluated: `min(5000, M_max)`.
    pub asymptotic_m: u64,
    /// `E_m √(πm) / (Q√(πλ))`.
    pub asymptotic_ratio: f64,
    /// `(Σ_{m≤M} E_m² − Σ_{m≤M/2} E_m²) / ln 2` at `M = M_max`.
    pub square_increment_over_ln2: f64,
    /// `E_M^{2+ε}`, the last increment of the `2+ε` partial sums.
    pub last_increment: f64,
    /// Certified bound on `Σ_{m>M} E_m^{2+ε}` from `G_m < 1/√(π(m+¼))`.
    pub tail_bound: f64,
    /// Ratio of the `2+ε` increments over `(M/2, M]` and `(M/4, M/2]`.
    pub block_increment_ratio: f64,
}

fn checkpoints(m_max: u64) -> Vec<u64> {
    let mut marks: Vec<u64> = std::iter::successors(Some(100u64), |m| m.checked_mul(2))
        .take_while(|&m| m <= m_max)
        .chain(std::iter::successors(Some(100u64), |m| m.checked_mul(10)).take_while(|&m| m <= m_max))
        .chain([m_max / 4, m_max / 2, m_max])
        .collect();
    marks.sort_unstable();
    marks.dedup();
    marks
}

/// Partial sums of the zonal Coulomb spectrum and its powers, with the
/// asymptotic diagnostics of the trace and `L²` divergence.
///
/// `E_m` is accumulated in log space through `ln G_m = ln G_{m−1} + ln(1 − 1/(2m))`.
pub fn trace_divergence_report(a: u32, m_max: u64, epsilon: f64, params: &ModelParams) -> Result<TraceDivergenceReport> {
    if a != 0 {
        return Err(Error::Unsupported("closed-form zonal Coulomb spectra exist only for the Fock zone (a = 0)".into()));
    }
    if m_max < 100 {
        return Err(domain("trace_divergence_report", format!("M_max must be >= 100, got {m_max}")));
    }
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(domain("trace_divergence_report", "epsilon must be finite and > 0"));
    }
    let q = params.coulomb;
    let lambda = params.lambda_f64();
    if !(q > 0.0) {
        return Err(domain("trace_divergence_report", "Q must be > 0"));
    }
    let ln_scale = (q * (PI * lambda).sqrt()).ln();
    let power = 2.0 + epsilon;
    let marks = checkpoints(m_max);
    let mut next_mark = marks.iter().peekable();
    let mut rows = Vec::with_capacity(marks.len());
    let (mut sum_e, mut sum_e2, mut sum_p) = (0.0, 0.0, 0.0);
    let mut ln_g = 0.0;
    let mut asymptotic_ratio = f64::NAN;
    let asymptotic_m = m_max.min(5000);
    for m in 0..=m_max {
        if m > 0 {
            ln_g += (-0.5 / m as f64).ln_1p();
        }
        let ln_e = ln_scale + ln_g;
        sum_e += ln_e.exp();
        sum_e2 += (2.0 * ln_e).exp();
        sum_p += (power * ln_e).exp();
        if m == asymptotic_m {
            asymptotic_ratio = (ln_g + 0.5 * (PI * m as f64).ln()).exp();
        }
        if next_mark.peek() == Some(&&m) {
            next_mark.next();
            let model = 2.0 * q * lambda.sqrt() * (m as f64 / PI).sqrt();
            rows.push(PartialSums {
                m,
                sum_e,
                sum_e2,
                sum_e2eps: sum_p,
                sum_model_ratio: sum_e / model,
            });
        }
    }
    let row_at = |m: u64| rows.iter().find(|r| r.m == m).expect("checkpoint present");
    let (full, half, quarter) = (row_at(m_max), row_at(m_max / 2), row_at(m_max / 4));
    let e_last = q * (PI * lambda).sqrt() * gamma_ratio_g_unchecked(m_max as f64).value;
    let scale = q * lambda.sqrt();
    let tail_bound = scale.powf(power) * (m_max as f64 + 0.25).powf(1.0 - 0.5 * power) / (0.5 * power - 1.0);
    Ok(TraceDivergenceReport {
        a,
        m_max,
        epsilon,
        asymptotic_m,
        asymptotic_ratio,
        square_increment_over_ln2: (full.sum_e2 - half.sum_e2) / LN_2,
        last_increment: e_last.powf(power),
        tail_bound,
        block_increment_ratio: (full.sum_e2eps - half.sum_e2eps) / (half.sum_e2eps - quarter.sum_e2eps),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogPotentialEntry {
    pub m: u32,
    pub quadrature: f64,
    pub closed_form: f64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogPotentialReport {
    pub entries: Vec<LogPotentialEntry>,
    /// Quadrature values increase strictly in `m ≥ 1`.
    pub monotone_increasing: bool,
}

/// Normalized expectations `⟨ln r⟩_m = ∫ r^{2m+1} ln r e^{−r²} dr / ∫ r^{2m+1} e^{−r²} dr`
/// by quadrature, with the closed form `½ψ(m+1)` alongside.
pub fn log_potential_diag(m_max: u32) -> Result<LogPotentialReport> {
    if m_max < 1 {
        return Err(domain("log_potential_diag", "m_max must be >= 1"));
    }
    let quad = AdaptiveQuadrature::new(1e-13).with_rel_tol(1e-13);
    let entries = (0..=m_max)
        .map(|m| {
            let n = f64::from(m);
            let ln_norm = LN_2 - ln_gamma_unchecked(n + 1.0);
            let weight = |r: f64| {
                if r == 0.0 {
                    return 0.0;
                }
                let ln_r = r.ln();
                ((2.0 * n + 1.0) * ln_r - r * r + ln_norm).exp() * ln_r
            };
            let peak = (n + 0.5).sqrt();
            let body = quad.integrate(weight, 0.0, peak)?;
            let tail = quad.integrate(weight, peak, f64::INFINITY)?;
            Ok(LogPotentialEntry {
                m,
                quadrature: body.value + tail.value,
                closed_form: 0.5 * digamma_unchecked(n + 1.0),
                abs_err: body.abs_error_estimate + tail.abs_error_estimate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let monotone_increasing = entries.windows(2).skip(1).all(|w| w[1].quadrature > w[0].quadrature);
    Ok(LogPotentialReport {
        entries,
        monotone_increasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::EULER_GAMMA;

    #[test]
    fn asymptotic_ratio_and_divergence() {
        let unit = ModelParams::unit();
        let report = trace_divergence_report(0, 10_000, 0.1, &unit).unwrap();
        assert!((report.asymptotic_ratio - 0.999_975).abs() < 1e-5);
        assert!(report.square_increment_over_ln2 > 0.9);
        assert!(report.block_increment_ratio < 1.0);
        let mut marks = report.rows.iter().map(|r| r.m);
        assert_eq!(marks.next(), Some(100));
        assert!(report.rows.iter().any(|r| r.m == 10_000));
        let row = report.rows.iter().find(|r| r.m == 10_000).unwrap();
        // Σ_{m≤10⁴} G_m from mpmath
        assert!((row.sum_e / PI.sqrt() - 112.842_148_069_720_62).abs() < 1e-9);
    }

    #[test]
    fn log_space_sums_match_direct_terms() {
        let unit = ModelParams::unit();
        let report = trace_divergence_report(0, 400, 0.5, &unit).unwrap();
        let direct: f64 = (0..=400).map(|m| (PI.sqrt() * gamma_ratio_g_unchecked(f64::from(m)).value).powf(2.5)).sum();
        let row = report.rows.last().unwrap();
        assert_eq!(row.m, 400);
        assert!((row.sum_e2eps - direct).abs() < 1e-11 * direct);
    }

    #[test]
    fn divergence_preconditions() {
        let unit = ModelParams::unit();
        assert!(matches!(trace_divergence_report(1, 1000, 0.1, &unit), Err(Error::Unsupported(_))));
        assert!(trace_divergence_report(0, 99, 0.1, &unit).is_err());
        assert!(trace_divergence_report(0, 1000, 0.0, &unit).is_err());
    }

    #[test]
    fn log_expectations() {
        let report = log_potential_diag(50).unwrap();
        assert!((report.entries[0].closed_form + 0.5 * EULER_GAMMA).abs() < 1e-15);
        // ½ψ(11), from mpmath
        assert!((report.entries[10].closed_form - 1.175_876_294_533_360_6).abs() < 1e-14);
        for e in &report.entries {
            assert!((e.quadrature - e.closed_form).abs() < 1e-8, "m={}", e.m);
        }
        assert!(report.monotone_increasing);
    }
}
