use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::ModelParams;
use crate::kernels::{point_spread, zone_eigenfunction};
use crate::numerics::{integrate_plane, AdaptiveQuadrature};
use crate::zones::{EigenState, QuantumNumbers};

const RADIAL_ABS_TOL: f64 = 1e-13;
const RADIAL_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Potential {
    /// `Q / r` restricted to the plane.
    #[default]
    Coulomb3d,
    /// `Q ln r`.
    Log2d,
}

impl Potential {
    pub fn value(self, r: f64, q: f64) -> f64 {
        match self {
            Self::Coulomb3d => q / r,
            Self::Log2d => q * r.ln(),
        }
    }

    /// `r·V(r)`, finite at the origin.
    fn times_r(self, r: f64, q: f64) -> f64 {
        match self {
            Self::Coulomb3d => q,
            Self::Log2d if r == 0.0 => 0.0,
            Self::Log2d => q * r * r.ln(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatrixEntry {
    pub value: Complex64,
    pub abs_err: f64,
}

fn planar(params: &ModelParams) -> Result<()> {
    if params.kappa != 1 {
        return Err(Error::Unsupported("Coulomb operators are planar (kappa = 1)".into()));
    }
    Ok(())
}

/// `⟨s₁, V s₂⟩ = ∫ conj(φ₁) V φ₂` over unit-normalized states.
///
/// Distinct magnetic numbers give 0 without integrating. Otherwise both states
/// are `R(r) e^{imθ}` with real `R`, and the element is `2π ∫₀^∞ R₁R₂ V r dr`.
pub fn coulomb_matrix_element(s1: &EigenState, s2: &EigenState, params: &ModelParams, potential: Potential) -> Result<MatrixEntry> {
    planar(params)?;
    if s1.qn.m != s2.qn.m {
        return Ok(MatrixEntry {
            value: Complex64::new(0.0, 0.0),
            abs_err: 0.0,
        });
    }
    let lambda = params.lambda_f64();
    let q = params.coulomb;
    let (p1, q1, p2, q2) = (s1.qn.p, s1.qn.q, s2.qn.p, s2.qn.q);
    let radial = |r: f64| {
        let z = Complex64::new(r, 0.0);
        zone_eigenfunction(p1, q1, lambda, z).re * zone_eigenfunction(p2, q2, lambda, z).re * potential.times_r(r, q)
    };
    let result = AdaptiveQuadrature::new(RADIAL_ABS_TOL)
        .with_rel_tol(RADIAL_REL_TOL)
        .integrate(radial, 0.0, f64::INFINITY)?;
    Ok(MatrixEntry {
        value: Complex64::new(2.0 * PI * result.value, 0.0),
        abs_err: 2.0 * PI * result.abs_error_estimate,
    })
}

/// Same element by full polar quadrature of the exact Itô states, with no use
/// of the selection rule.
pub fn coulomb_matrix_element_polar(
    s1: &EigenState,
    s2: &EigenState,
    params: &ModelParams,
    potential: Potential,
    tol: f64,
) -> Result<MatrixEntry> {
    planar(params)?;
    let lambda = params.lambda_f64();
    let q = params.coulomb;
    let result = integrate_plane(
        |u: Complex64| s1.evaluate_normalized(u, lambda).conj() * s2.evaluate_normalized(u, lambda) * potential.value(u.norm(), q),
        tol,
    )?;
    Ok(MatrixEntry {
        value: result.value,
        abs_err: result.abs_error_estimate,
    })
}

/// The zone-`a` state with magnetic number `m`, if the zone meets `M_m`.
pub fn zone_state(a: u32, m: i64, params: &ModelParams) -> Result<Option<EigenState>> {
    let p = i64::from(a) + m;
    if p < 0 {
        return Ok(None);
    }
    let p = u32::try_from(p).map_err(|_| crate::error::domain("zone_state", "degree out of range"))?;
    EigenState::new(QuantumNumbers::from_degrees(p, a), params).map(Some)
}

/// Compression of multiplication by `V` from zone `a` to zone `b`; one entry
/// per magnetic number since each zone meets `M_m` in at most one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZoneOperatorMatrix {
    pub a: u32,
    pub b: u32,
    pub potential: Potential,
    pub entries: BTreeMap<i64, MatrixEntry>,
}

/// Entries `⟨φ_m^{(b)}, V φ_m^{(a)}⟩` for `m` in the range; magnetic numbers
/// missing from either zone are omitted.
pub fn transmission_matrix(
    a: u32,
    b: u32,
    m_range: std::ops::RangeInclusive<i64>,
    params: &ModelParams,
    potential: Potential,
) -> Result<ZoneOperatorMatrix> {
    planar(params)?;
    let computed: Vec<(i64, MatrixEntry)> = m_range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| -> Result<Option<(i64, MatrixEntry)>> {
            let (Some(source), Some(target)) = (zone_state(a, m, params)?, zone_state(b, m, params)?) else {
                return Ok(None);
            };
            Ok(Some((m, coulomb_matrix_element(&target, &source, params, potential)?)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ZoneOperatorMatrix {
        a,
        b,
        potential,
        entries: computed.into_iter().collect(),
    })
}

/// Eigenvalue of `F^{(a→b→a)} = V^{(b,a)} ∘ V^{(a,b)}` on the `m` state,
/// `|V^{(a,b)}_m|²`, or `None` when either zone misses `M_m`.
pub fn fluctuation(a: u32, b: u32, m: i64, params: &ModelParams, potential: Potential) -> Result<Option<f64>> {
    let matrix = transmission_matrix(a, b, m..=m, params, potential)?;
    Ok(matrix.entries.get(&m).map(|e| e.value.norm_sqr()))
}

/// Fluctuation eigenvalue from the composed kernels: applies
/// `∫ δ^{(b)}(v, x) V(x) φ^{(a)}(x) dx` and then the reverse transmission,
/// reading each image off at one probe point.
pub fn fluctuation_kernel_oracle(a: u32, b: u32, m: i64, params: &ModelParams, potential: Potential, tol: f64) -> Result<Option<f64>> {
    planar(params)?;
    let (Some(sa), Some(sb)) = (zone_state(a, m, params)?, zone_state(b, m, params)?) else {
        return Ok(None);
    };
    let lambda = params.lambda_f64();
    let q = params.coulomb;
    let probe = Complex64::new(0.8, 0.5);
    let transmit = |zone: u32, from: &EigenState, to: &EigenState| -> Result<Complex64> {
        let image = integrate_plane(
            |x: Complex64| -> Complex64 {
                let kernel = point_spread(zone, params, &[probe], &[x]).map(|k| k.value).unwrap_or(Complex64::new(f64::NAN, 0.0));
                kernel * potential.value(x.norm(), q) * from.evaluate_normalized(x, lambda)
            },
            tol,
        )?;
        Ok(image.value / to.evaluate_normalized(probe, lambda))
    };
    let forward = transmit(b, &sa, &sb)?;
    let back = transmit(a, &sb, &sa)?;
    Ok(Some((back * forward).re))
}
