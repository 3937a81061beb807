//! Generalized Laguerre polynomials `L_n^{(α)}(t)`.
//!
//! The production path is the three-term recurrence. The explicit sum
//! `Σ_i C(n+α, n−i)(−t)^i/i!` is provided in floating point and in exact
//! rational arithmetic as a cross-check.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// `L_n^{(α)}(t)` by the upward three-term recurrence.
pub fn laguerre(n: usize, alpha: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - t;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - t) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `[L_0^{(α)}(t), …, L_n^{(α)}(t)]` from one recurrence sweep.
pub fn laguerre_sequence(n: usize, alpha: f64, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(1.0 + alpha - t);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - t) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// `L_n^{(α)}(t)` from the explicit coefficient sum, in floating point.
///
/// Cancels badly for large `n·t`; use [`laguerre`] for production work.
pub fn laguerre_explicit(n: usize, alpha: f64, t: f64) -> f64 {
    // Horner on the coefficient recursion c_{i+1}/c_i = −(n−i)/((i+1)(α+i+1)).
    let mut coeff = generalized_binomial(n as f64 + alpha, n);
    let mut sum = coeff;
    let mut power = 1.0;
    for i in 0..n {
        let fi = i as f64;
        coeff *= -((n - i) as f64) / ((fi + 1.0) * (alpha + fi + 1.0));
        power *= t;
        sum += coeff * power;
    }
    sum
}

fn generalized_binomial(top: f64, k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * (top - k as f64 + j as f64) / j as f64)
}

/// Ascending coefficients of `L_n^{(α)}` in exact rational arithmetic.
pub fn laguerre_coefficients_exact(n: usize, alpha: &BigRational) -> Vec<BigRational> {
    (0..=n)
        .map(|i| {
            let mut c = BigRational::one();
            for j in 1..=(n - i) {
                c *= (alpha + BigRational::from_integer((i + j).into())) / BigRational::from_integer(j.into());
            }
            for j in 1..=i {
                c /= BigRational::from_integer(j.into());
            }
            if i % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// `L_n^{(α)}(t)` evaluated exactly.
pub fn laguerre_exact(n: usize, alpha: &BigRational, t: &BigRational) -> BigRational {
    laguerre_coefficients_exact(n, alpha)
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * t + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn rat(x: f64) -> BigRational {
        BigRational::from_float(x).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(laguerre(0, 3.7, -2.0), 1.0);
        assert_eq!(laguerre(1, 0.0, 0.25), 0.75);
        assert!((laguerre(2, 0.0, 2.0) + 1.0).abs() < 1e-15);
        assert!((laguerre_explicit(2, 0.0, 2.0) + 1.0).abs() < 1e-15);
        let exact = laguerre_exact(2, &BigRational::zero(), &rat(2.0));
        assert_eq!(exact, BigRational::from_integer((-1).into()));
    }

    #[test]
    fn exact_coefficients_of_l2_alpha1() {
        // L_2^{(1)}(t) = 3 − 3t + t²/2
        let c = laguerre_coefficients_exact(2, &BigRational::one());
        let expect: Vec<BigRational> = vec![
            BigRational::from_integer(3.into()),
            BigRational::from_integer((-3).into()),
            BigRational::new(1.into(), 2.into()),
        ];
        assert_eq!(c, expect);
    }

    #[test]
    fn sequence_matches_single_evaluations() {
        let seq = laguerre_sequence(12, 1.5, 3.25);
        for (n, v) in seq.iter().enumerate() {
            assert_eq!(*v, laguerre(n, 1.5, 3.25));
        }
    }

    #[test]
    fn recurrence_matches_exact_explicit_sum_on_grid() {
        for alpha in 0..=5 {
            let a = BigRational::from_integer(alpha.into());
            for &t in &[0.0, 0.37, 1.0, 4.2, 17.5, 55.0, 100.0] {
                let seq = laguerre_sequence(60, alpha as f64, t);
                let scale = seq.iter().fold(1.0f64, |m, v| m.max(v.abs()));
                for n in [0usize, 1, 7, 23, 41, 60] {
                    let exact = laguerre_exact(n, &a, &rat(t)).to_f64().unwrap();
                    assert!(
                        (seq[n] - exact).abs() <= 1e-12 * scale.max(exact.abs()),
                        "n={n} α={alpha} t={t}: {} vs {exact}",
                        seq[n]
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn float_explicit_sum_agrees_for_moderate_arguments(n in 0usize..20, alpha in 0.0f64..5.0, t in 0.0f64..5.0) {
            let rec = laguerre(n, alpha, t);
            let exp = laguerre_explicit(n, alpha, t);
            // Σ|c_i| t^i = L_n^{(α)}(−t) bounds the rounding in both evaluations.
            let scale = laguerre(n, alpha, -t);
            prop_assert!((rec - exp).abs() <= 1e-13 * scale);
        }

        #[test]
        fn derivative_identity(n in 1usize..30, alpha in 0.5f64..5.0, t in 0.0f64..20.0) {
            // d/dt L_n^{(α)} = −L_{n−1}^{(α+1)}, checked by central difference.
            let h = 1e-6;
            let fd = (laguerre(n, alpha, t + h) - laguerre(n, alpha, t - h)) / (2.0 * h);
            let exact = -laguerre(n - 1, alpha + 1.0, t);
            let scale = laguerre_sequence(n, alpha + 1.0, t).iter().fold(1.0f64, |m, v| m.max(v.abs()));
            prop_assert!((fd - exact).abs() <= 1e-5 * scale);
        }
    }
}
