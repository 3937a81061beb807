//! One function per subcommand, each turning a resolved [`RunConfig`] into a
//! [`Report`].

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;
use zonal::checks::{run_criterion, CRITERIA};
use zonal::coulomb::{transmission_matrix, Potential};
use zonal::exactalg::{apply_box_oracle, rational_string};
use zonal::kernels::{
    partition_spectral, partition_zonal, point_spread, schrodinger_global, schrodinger_zonal, wiener_global, wiener_zonal,
    FlowVariant,
};
use zonal::lamb::{lamb_shift_from_sigma, sigma_integral, sigma_integral_to, AmplitudeResult, Density, EpsilonKind, PhysicalConstants};
use zonal::zones::{enumerate_zone_spectrum, EigenState, QuantumNumbers, SpectralLine};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Report, Row};

/// Maps `-0.0` to `0.0` so signless zeros print the same everywhere.
fn unsigned_zero(x: f64) -> f64 {
    x + 0.0
}

impl Row for SpectralLine {
    const HEADER: &'static [&'static str] = &["p", "energy", "energy_exact", "multiplicity"];
}

pub fn spectrum(config: &RunConfig) -> Result<Report, CliError> {
    let params = config.model_params()?;
    let lines = enumerate_zone_spectrum(config.zone, &params, config.p_max.unwrap_or(10));
    Report::from_rows("spectrum", &lines)
}

#[derive(Serialize)]
struct EigenRow {
    p: u32,
    q: u32,
    eigenvalue: String,
    conjugated: bool,
    oracle: bool,
}

impl Row for EigenRow {
    const HEADER: &'static [&'static str] = &["p", "q", "eigenvalue", "conjugated", "oracle"];
}

#[derive(Serialize)]
struct EigenRecord<'a> {
    #[serde(flatten)]
    row: &'a EigenRow,
    state: &'a EigenState,
}

/// Exact eigen-relations for every `(p, q)` with `p + q ≤ max_degree`, by the
/// conjugated closed form and by the raw Gaussian-product route.
pub fn verify_eigen(config: &RunConfig, max_degree: u32) -> Result<Report, CliError> {
    config.require_planar("verify-eigen")?;
    let params = config.model_params()?;
    let mut rows = Vec::new();
    let mut states = Vec::new();
    for s in 0..=max_degree {
        for q in 0..=s {
            let state = EigenState::new(QuantumNumbers::from_degrees(s - q, q), &params)?;
            let expected = state.poly.scale_rational(&state.eigenvalue);
            rows.push(EigenRow {
                p: s - q,
                q,
                eigenvalue: rational_string(&state.eigenvalue),
                conjugated: state.verify(&params)?,
                oracle: apply_box_oracle(&state.poly, &params)? == expected,
            });
            states.push(state);
        }
    }
    let failures: Vec<String> = rows
        .iter()
        .filter(|r| !(r.conjugated && r.oracle))
        .map(|r| format!("({}, {})", r.p, r.q))
        .collect();
    let mut report = Report::from_rows("verify-eigen", &rows)?;
    let records: Vec<EigenRecord> = rows.iter().zip(&states).map(|(row, state)| EigenRecord { row, state }).collect();
    report.json_rows = serde_json::to_value(&records).map_err(|e| CliError::Encode(e.to_string()))?;
    report
        .notes
        .push(format!("checked {} eigen-relations, {} failures", rows.len(), failures.len()));
    if !failures.is_empty() {
        report.failure = Some(format!("eigen-relation failed for (p, q) in {}", failures.join(" ")));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelChoice {
    Projection,
    WienerGlobal,
    WienerZonal,
    SchrodingerGlobal,
    SchrodingerZonal,
}

/// Square grid of `n × n` points `z` with real and imaginary parts in `[min, max]`.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub n: u32,
}

impl Grid {
    fn points(self) -> impl Iterator<Item = Complex64> {
        let step = if self.n > 1 { (self.max - self.min) / f64::from(self.n - 1) } else { 0.0 };
        let coord = move |i: u32| self.min + step * f64::from(i);
        (0..self.n).flat_map(move |i| (0..self.n).map(move |j| Complex64::new(coord(i), coord(j))))
    }
}

#[derive(Serialize)]
struct KernelRow {
    #[serde(rename = "re z")]
    re_z: f64,
    #[serde(rename = "im z")]
    im_z: f64,
    #[serde(rename = "re w")]
    re_w: f64,
    #[serde(rename = "im w")]
    im_w: f64,
    t: Option<f64>,
    #[serde(rename = "re value")]
    re_value: f64,
    #[serde(rename = "im value")]
    im_value: f64,
}

impl Row for KernelRow {
    const HEADER: &'static [&'static str] = &["re z", "im z", "re w", "im w", "t", "re value", "im value"];
}

pub fn kernels(config: &RunConfig, kind: KernelChoice, t: f64, w: Complex64, grid: Grid) -> Result<Report, CliError> {
    config.require_planar("kernels")?;
    if !(grid.min.is_finite() && grid.max.is_finite() && grid.min <= grid.max) || grid.n == 0 {
        return Err(CliError::Usage("grid needs finite --grid-min <= --grid-max and --grid-n >= 1".into()));
    }
    let params = config.model_params()?;
    let a = config.zone;
    let time = (kind != KernelChoice::Projection).then_some(t);
    let rows = grid
        .points()
        .map(|z| {
            let (zs, ws) = ([z], [w]);
            let value = match kind {
                KernelChoice::Projection => point_spread(a, &params, &zs, &ws),
                KernelChoice::WienerGlobal => wiener_global(t, &zs, &ws, &params),
                KernelChoice::WienerZonal => wiener_zonal(a, t, &zs, &ws, &params),
                KernelChoice::SchrodingerGlobal => schrodinger_global(t, &zs, &ws, &params),
                KernelChoice::SchrodingerZonal => schrodinger_zonal(a, t, &zs, &ws, &params),
            }?
            .value;
            Ok(KernelRow {
                re_z: z.re,
                im_z: z.im,
                re_w: w.re,
                im_w: w.im,
                t: time,
                re_value: unsigned_zero(value.re),
                im_value: unsigned_zero(value.im),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Report::from_rows("kernels", &rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantChoice {
    Wiener,
    Schrodinger,
}

#[derive(Serialize)]
struct PartitionRow {
    zone: u32,
    kappa: u32,
    variant: &'static str,
    t: f64,
    #[serde(rename = "re Z")]
    re: f64,
    #[serde(rename = "im Z")]
    im: f64,
    #[serde(rename = "re spectral")]
    re_spectral: Option<f64>,
    #[serde(rename = "im spectral")]
    im_spectral: Option<f64>,
    rel_diff: Option<f64>,
}

impl Row for PartitionRow {
    const HEADER: &'static [&'static str] =
        &["zone", "kappa", "variant", "t", "re Z", "im Z", "re spectral", "im spectral", "rel_diff"];
}

/// Closed-form partition functions; the Wiener rows also carry the spectral
/// sum summed to relative tail `tol`.
pub fn partition(config: &RunConfig, variant: VariantChoice, times: &[f64]) -> Result<Report, CliError> {
    let params = config.model_params()?;
    if let Some(bad) = times.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(CliError::Usage(format!("partition times must be finite and > 0, got {bad}")));
    }
    let (flow, name) = match variant {
        VariantChoice::Wiener => (FlowVariant::Wiener, "wiener"),
        VariantChoice::Schrodinger => (FlowVariant::Schrodinger, "schrodinger"),
    };
    let rows = times
        .iter()
        .map(|&t| {
            let z = partition_zonal(config.zone, t, &params, flow)?;
            let spectral = match variant {
                VariantChoice::Wiener => Some(partition_spectral(config.zone, Complex64::new(t, 0.0), &params, config.tol)?),
                VariantChoice::Schrodinger => None,
            };
            Ok(PartitionRow {
                zone: config.zone,
                kappa: config.kappa,
                variant: name,
                t,
                re: unsigned_zero(z.re),
                im: unsigned_zero(z.im),
                re_spectral: spectral.map(|s| unsigned_zero(s.re)),
                im_spectral: spectral.map(|s| unsigned_zero(s.im)),
                rel_diff: spectral.map(|s| ((s - z) / z).norm()),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Report::from_rows("partition", &rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialChoice {
    /// `Q/r`
    Coulomb,
    /// `Q ln r`
    Log,
}

#[derive(Serialize)]
struct CoulombRow {
    a: u32,
    b: u32,
    m: i64,
    re: f64,
    im: f64,
    abs_err: f64,
}

impl Row for CoulombRow {
    const HEADER: &'static [&'static str] = &["a", "b", "m", "re", "im", "abs_err"];
}

/// Transmission matrix elements `⟨φ^{(b)}_m, V φ^{(a)}_m⟩` for `m` from
/// `m_min` (default: the lowest shared magnetic number) to `m_max`.
pub fn coulomb(config: &RunConfig, b: Option<u32>, m_min: Option<i64>, potential: PotentialChoice) -> Result<Report, CliError> {
    config.require_planar("coulomb")?;
    let params = config.model_params()?;
    let a = config.zone;
    let b = b.unwrap_or(a);
    let low = m_min.unwrap_or(-i64::from(a.min(b)));
    let high = i64::from(config.m_max.unwrap_or(10));
    if low > high {
        return Err(CliError::Usage(format!("empty magnetic range {low}..={high}")));
    }
    let potential = match potential {
        PotentialChoice::Coulomb => Potential::Coulomb3d,
        PotentialChoice::Log => Potential::Log2d,
    };
    let matrix = transmission_matrix(a, b, low..=high, &params, potential)?;
    let rows: Vec<CoulombRow> = matrix
        .entries
        .iter()
        .map(|(&m, entry)| CoulombRow {
            a,
            b,
            m,
            re: unsigned_zero(entry.value.re),
            im: unsigned_zero(entry.value.im),
            abs_err: entry.abs_err,
        })
        .collect();
    Report::from_rows("coulomb", &rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeChoice {
    /// The particle amplitude σ alone.
    EpsilonP,
    /// σ + σ_B.
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityChoice {
    Stirling,
    ExactGamma,
}

#[derive(Serialize)]
struct LambRow {
    l: u32,
    mode: &'static str,
    density: &'static str,
    #[serde(rename = "re σ")]
    re: f64,
    #[serde(rename = "im σ")]
    im: f64,
    #[serde(rename = "Δ_eV")]
    delta_ev: f64,
    #[serde(rename = "Δ_MHz")]
    delta_mhz: f64,
    abs_err: f64,
}

impl Row for LambRow {
    const HEADER: &'static [&'static str] = &["l", "mode", "density", "re σ", "im σ", "Δ_eV", "Δ_MHz", "abs_err"];
}

/// Quadrature amplitudes and the resulting shift. With `K` set the range is
/// cut at `K` and the remainder enters only through its certified bound.
pub fn lamb(config: &RunConfig, ls: &[u32], mode: ModeChoice, density: DensityChoice) -> Result<Report, CliError> {
    if config.zone != 0 {
        return Err(CliError::Usage("lamb amplitudes live on the Fock zone; use --zone 0".into()));
    }
    let (density, density_name) = match density {
        DensityChoice::Stirling => (Density::Stirling, "stirling"),
        DensityChoice::ExactGamma => (Density::ExactGamma, "exact_gamma"),
    };
    let amplitude = |eps: EpsilonKind| -> Result<AmplitudeResult, CliError> {
        Ok(match config.k {
            Some(k) => sigma_integral_to(eps, density, k as f64, config.tol)?,
            None => sigma_integral(eps, density, 0, config.tol)?,
        })
    };
    let constants = PhysicalConstants::codata2018();
    let rows = ls
        .iter()
        .map(|&l| {
            let particle = amplitude(EpsilonKind::Particle { l })?;
            let (sigma, abs_err, name) = match mode {
                ModeChoice::EpsilonP => (particle.sigma, particle.abs_err, "epsilon_p"),
                ModeChoice::Total => {
                    let field = amplitude(EpsilonKind::Field)?;
                    (particle.sigma + field.sigma, particle.abs_err + field.abs_err, "total")
                }
            };
            let shift = lamb_shift_from_sigma(sigma, &constants);
            Ok(LambRow {
                l,
                mode: name,
                density: density_name,
                re: unsigned_zero(sigma.re),
                im: unsigned_zero(sigma.im),
                delta_ev: shift.energy_ev,
                delta_mhz: shift.frequency_mhz,
                abs_err,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Report::from_rows("lamb", &rows)
}

#[derive(Serialize)]
struct CriterionRow {
    criterion: u8,
    title: &'static str,
    passed: bool,
    details: String,
}

impl Row for CriterionRow {
    const HEADER: &'static [&'static str] = &["criterion", "title", "passed", "details"];
}

/// Runs the acceptance checks in order. The criteria fix their own
/// parameters, so only the output options of the config apply.
pub fn report_all(criterion: Option<u8>) -> Result<Report, CliError> {
    let ids: Vec<u8> = match criterion {
        Some(id) if CRITERIA.contains(&id) => vec![id],
        Some(id) => return Err(CliError::Usage(format!("no criterion {id}; expected 1..=11"))),
        None => CRITERIA.to_vec(),
    };
    let reports: Vec<_> = ids.into_iter().map(run_criterion).collect();
    let rows: Vec<CriterionRow> = reports
        .iter()
        .map(|r| CriterionRow {
            criterion: r.id,
            title: r.title,
            passed: r.passed,
            details: r.details.join(" | "),
        })
        .collect();
    let mut report = Report::from_rows("report-all", &rows)?;
    report.json_rows = serde_json::to_value(&reports).map_err(|e| CliError::Encode(e.to_string()))?;
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
    report.notes.extend(reports.iter().map(|r| {
        format!("criterion {} {} {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.title)
    }));
    if !failed.is_empty() {
        let failing_lines: Vec<&str> = reports
            .iter()
            .flat_map(|r| r.details.iter())
            .filter(|d| d.starts_with("[FAIL]"))
            .map(String::as_str)
            .collect();
        report.failure = Some(format!("criteria {} failed: {}", failed.join(", "), failing_lines.join("; ")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Overrides;

    fn unit() -> RunConfig {
        RunConfig::resolve(Overrides::default()).unwrap()
    }

    #[test]
    fn grid_is_row_major_and_inclusive() {
        let pts: Vec<_> = Grid { min: -1.0, max: 1.0, n: 3 }.points().collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], Complex64::new(-1.0, -1.0));
        assert_eq!(pts[1], Complex64::new(-1.0, 0.0));
        assert_eq!(pts[8], Complex64::new(1.0, 1.0));
        let single: Vec<_> = Grid { min: 0.5, max: 0.5, n: 1 }.points().collect();
        assert_eq!(single, vec![Complex64::new(0.5, 0.5)]);
    }

    #[test]
    fn spectrum_rows() {
        let mut config = unit();
        config.p_max = Some(2);
        let report = spectrum(&config).unwrap();
        assert_eq!(report.csv, "p,energy,energy_exact,multiplicity\n0,1.0,1,1\n1,3.0,3,1\n2,5.0,5,1\n");
    }

    #[test]
    fn eigen_summary() {
        let report = verify_eigen(&unit(), 3).unwrap();
        assert_eq!(report.notes, vec!["checked 10 eigen-relations, 0 failures".to_string()]);
        assert!(report.failure.is_none());
    }

    #[test]
    fn coulomb_default_range_starts_at_shared_magnetic_number() {
        let mut config = unit();
        config.zone = 1;
        config.m_max = Some(1);
        let report = coulomb(&config, Some(2), None, PotentialChoice::Coulomb).unwrap();
        let ms: Vec<i64> = report.json_rows.as_array().unwrap().iter().map(|r| r["m"].as_i64().unwrap()).collect();
        assert_eq!(ms, vec![-1, 0, 1]);
    }

    #[test]
    fn unknown_criterion_is_a_usage_error() {
        assert!(matches!(report_all(Some(12)), Err(CliError::Usage(_))));
    }
}
