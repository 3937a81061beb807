#![allow(clippy::excessive_precision)]

//! Adaptive Gauss–Kronrod (G10/K21) quadrature over finite and semi-infinite
//! ranges, a dyadic-panel integrator for slowly decaying oscillatory
//! integrands with an explicit tail bound, and a polar plane integrator.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, QuadratureFailure, Result};

/// Scalar types the integrators can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub abs_error_estimate: f64,
    pub panels_used: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_600_525_226,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], …, XGK[9]`.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<T, F>(f: &F, a: f64, b: f64) -> Result<Panel<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut values = [T::zero(); 21];
    values[0] = f(center);
    for (j, &x) in XGK[..10].iter().enumerate() {
        values[2 * j + 1] = f(center - half * x);
        values[2 * j + 2] = f(center + half * x);
    }
    if values.iter().any(|v| !v.is_finite_value()) {
        return Err(Error::Quadrature {
            reason: QuadratureFailure::NonFinite,
            best_estimate: f64::NAN,
            error_estimate: f64::INFINITY,
        });
    }
    let mut kronrod = values[0] * WGK[10];
    let mut gauss = T::zero();
    let mut abs_sum = values[0].magnitude() * WGK[10];
    for j in 0..10 {
        let pair = values[2 * j + 1] + values[2 * j + 2];
        kronrod = kronrod + pair * WGK[j];
        abs_sum += WGK[j] * (values[2 * j + 1].magnitude() + values[2 * j + 2].magnitude());
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[10] * (values[0] - mean).magnitude();
    for j in 0..10 {
        asc += WGK[j] * ((values[2 * j + 1] - mean).magnitude() + (values[2 * j + 2] - mean).magnitude());
    }
    let scale = half.abs();
    let result_abs = abs_sum * scale;
    let result_asc = asc * scale;
    let mut error = ((kronrod - gauss) * half).magnitude();
    if result_asc != 0.0 && error != 0.0 {
        error = result_asc * (200.0 * error / result_asc).powf(1.5).min(1.0);
    }
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * result_abs);
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error,
    })
}

/// Adaptive quadrature settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveQuadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl AdaptiveQuadrature {
    pub fn new(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol: 0.0,
            max_panels: 2000,
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }

    /// Integrate `f` over `[a, b]`; `b` may be `f64::INFINITY`.
    pub fn integrate<T, F>(&self, f: F, a: f64, b: f64) -> Result<QuadratureResult<T>>
    where
        T: QuadValue,
        F: Fn(f64) -> T,
    {
        if !(self.abs_tol > 0.0 || self.rel_tol > 0.0) {
            return Err(domain("integrate_adaptive", "tolerance must be positive"));
        }
        if !a.is_finite() || b.is_nan() || b == f64::NEG_INFINITY {
            return Err(domain("integrate_adaptive", format!("unsupported range [{a}, {b}]")));
        }
        if b.is_infinite() {
            let mapped = move |s: f64| {
                let one_minus = 1.0 - s;
                f(a + s / one_minus) * (1.0 / (one_minus * one_minus))
            };
            self.integrate_finite(&mapped, 0.0, 1.0)
        } else if b < a {
            let r = self.integrate_finite(&f, b, a)?;
            Ok(QuadratureResult {
                value: r.value * -1.0,
                ..r
            })
        } else {
            self.integrate_finite(&f, a, b)
        }
    }

    fn integrate_finite<T, F>(&self, f: &F, a: f64, b: f64) -> Result<QuadratureResult<T>>
    where
        T: QuadValue,
        F: Fn(f64) -> T,
    {
        if a == b {
            return Ok(QuadratureResult {
                value: T::zero(),
                abs_error_estimate: 0.0,
                panels_used: 0,
            });
        }
        let first = gauss_kronrod(f, a, b)?;
        let mut total = first.value;
        let mut total_error = first.error;
        let mut heap = BinaryHeap::new();
        heap.push(first);
        let mut panels = 1;
        while total_error > self.abs_tol.max(self.rel_tol * total.magnitude()) {
            if panels >= self.max_panels {
                let (value, error) = fixed_order_sum(heap.into_vec());
                return Err(Error::Quadrature {
                    reason: QuadratureFailure::PanelBudget,
                    best_estimate: value.magnitude(),
                    error_estimate: error,
                });
            }
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                // Cannot split further in double precision.
                heap.push(Panel {
                    error: 0.0,
                    ..worst
                });
                total_error -= worst.error;
                continue;
            }
            let left = gauss_kronrod(f, worst.a, mid).map_err(|e| with_estimate(e, total, total_error))?;
            let right = gauss_kronrod(f, mid, worst.b).map_err(|e| with_estimate(e, total, total_error))?;
            total = total - worst.value + left.value + right.value;
            total_error += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
            panels += 1;
        }
        let (value, error) = fixed_order_sum(heap.into_vec());
        Ok(QuadratureResult {
            value,
            abs_error_estimate: error,
            panels_used: panels,
        })
    }
}

fn with_estimate<T: QuadValue>(e: Error, total: T, error: f64) -> Error {
    match e {
        Error::Quadrature { reason, .. } => Error::Quadrature {
            reason,
            best_estimate: total.magnitude(),
            error_estimate: error,
        },
        other => other,
    }
}

fn fixed_order_sum<T: QuadValue>(mut panels: Vec<Panel<T>>) -> (T, f64) {
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    panels
        .iter()
        .fold((T::zero(), 0.0), |(v, e), p| (v + p.value, e + p.error))
}

/// Integrate `f` over `[a, b]` (`b` may be infinite) to absolute tolerance `tol`.
pub fn integrate_adaptive<T, F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    AdaptiveQuadrature::new(tol).integrate(f, a, b)
}

/// Integrate over `[a, end]` split into panels `[a, a+1], [a+1, a+2], [a+2, a+4], …`.
///
/// Each panel is refined to `tol / (2 · panel count)`; the sum runs left to right.
pub fn integrate_dyadic<T, F>(f: F, a: f64, end: f64, tol: f64) -> Result<QuadratureResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    if !(end > a) {
        return Err(domain("integrate_dyadic", format!("need end > a, got [{a}, {end}]")));
    }
    let mut edges = vec![a];
    let mut width = 1.0;
    while *edges.last().unwrap() < end {
        let next = (edges.last().unwrap() + width).min(end);
        edges.push(next);
        if edges.len() > 2 {
            width *= 2.0;
        }
    }
    let per_panel = AdaptiveQuadrature::new(tol / (2.0 * (edges.len() - 1) as f64));
    let mut value = T::zero();
    let mut error = 0.0;
    let mut panels = 0;
    for w in edges.windows(2) {
        let r = per_panel.integrate(&f, w[0], w[1])?;
        value = value + r.value;
        error += r.abs_error_estimate;
        panels += r.panels_used;
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        panels_used: panels,
    })
}

/// Result of an integration truncated at a cutoff with a certified tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffQuadrature<T> {
    /// `abs_error_estimate` includes the tail bound.
    pub result: QuadratureResult<T>,
    pub cutoff: f64,
    pub tail_bound: f64,
}

/// Integrate `f` over `[a, ∞)` for slowly decaying integrands.
///
/// `tail_bound(K)` must bound `|∫_K^∞ f|`. The cutoff is the first `a + 2^j`
/// with `tail_bound ≤ tol/10`; the body is integrated by [`integrate_dyadic`].
pub fn integrate_to_cutoff<T, F, B>(f: F, a: f64, tail_bound: B, tol: f64) -> Result<CutoffQuadrature<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
    B: Fn(f64) -> f64,
{
    let mut span = 1.0;
    let mut tail = tail_bound(a + span);
    while !(tail <= tol / 10.0) {
        span *= 2.0;
        if span > 1e300 || tail.is_nan() {
            return Err(domain("integrate_to_cutoff", "tail bound never falls below tol/10"));
        }
        tail = tail_bound(a + span);
    }
    let cutoff = a + span;
    let mut result = integrate_dyadic(f, a, cutoff, 0.9 * tol)?;
    result.abs_error_estimate += tail;
    Ok(CutoffQuadrature {
        result,
        cutoff,
        tail_bound: tail,
    })
}

fn angular_average<T, F>(f: &F, center: Complex64, r: f64) -> T
where
    T: QuadValue,
    F: Fn(Complex64) -> T,
{
    const START: usize = 32;
    const MAX: usize = 2048;
    let point = |theta: f64| f(center + Complex64::from_polar(r, theta));
    let mut m = START;
    let mut sum = (0..m).fold(T::zero(), |acc, j| acc + point(2.0 * PI * j as f64 / m as f64));
    let mut estimate = sum * (1.0 / m as f64);
    while m < MAX {
        let odd = (0..m).fold(T::zero(), |acc, j| acc + point(PI * (2 * j + 1) as f64 / m as f64));
        sum = sum + odd;
        m *= 2;
        let refined = sum * (1.0 / m as f64);
        let change = (refined - estimate).magnitude();
        estimate = refined;
        if change <= 1e-15 * estimate.magnitude().max(f64::MIN_POSITIVE) || change == 0.0 {
            break;
        }
    }
    estimate
}

/// `∫_ℂ f(center + u) dA(u)` in polar coordinates about `center`.
///
/// The angular integral uses the periodic trapezoid rule with doubling; the
/// radial integral is adaptive over `[0, ∞)`.
pub fn integrate_plane_centered<T, F>(f: F, center: Complex64, tol: f64) -> Result<QuadratureResult<T>>
where
    T: QuadValue,
    F: Fn(Complex64) -> T,
{
    let radial = |r: f64| angular_average(&f, center, r) * (2.0 * PI * r);
    // Split at r = 4 so the transformed map keeps resolution where Gaussian
    // integrands live.
    let inner = integrate_adaptive(radial, 0.0, 4.0, 0.5 * tol)?;
    let outer = integrate_adaptive(radial, 4.0, f64::INFINITY, 0.5 * tol)?;
    Ok(QuadratureResult {
        value: inner.value + outer.value,
        abs_error_estimate: inner.abs_error_estimate + outer.abs_error_estimate,
        panels_used: inner.panels_used + outer.panels_used,
    })
}

/// `∫_ℂ f(u) dA(u)`.
pub fn integrate_plane<T, F>(f: F, tol: f64) -> Result<QuadratureResult<T>>
where
    T: QuadValue,
    F: Fn(Complex64) -> T,
{
    integrate_plane_centered(f, Complex64::new(0.0, 0.0), tol)
}
