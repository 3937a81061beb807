//! Exact inner products against the Gauss density `e^{−λ|z|²}` and the
//! Gram–Schmidt construction of zone members.

use num_traits::{One, Zero};

use super::poly::ExactPoly;
use super::rational::{GaussRat, Rational};
use crate::error::{domain, Error, Result};
use crate::numerics::combinatorics::factorial;

/// `m` with `∫_ℂ z^i z̄^j e^{−λ|z|²} dA = m·π`, i.e. `δ_ij i!/λ^{i+1}`.
pub fn gaussian_moment(i: u32, j: u32, lambda: &Rational) -> Rational {
    if i != j {
        return Rational::zero();
    }
    let power = num_traits::pow(lambda.clone(), i as usize + 1);
    Rational::from_integer(factorial(i)) / power
}

/// `⟨P e^{−λr²/2}, R e^{−λr²/2}⟩ / π`, linear in `P`, conjugate-linear in `R`.
pub fn inner_product(p: &ExactPoly, r: &ExactPoly, lambda: &Rational) -> GaussRat {
    let mut acc = GaussRat::zero();
    for (&(i1, j1), c1) in p.terms() {
        for (&(i2, j2), c2) in r.terms() {
            // z^{i1} z̄^{j1} · conj(z^{i2} z̄^{j2}) = z^{i1+j2} z̄^{j1+i2}
            if i1 + j2 == j1 + i2 {
                let m = gaussian_moment(i1 + j2, j1 + i2, lambda);
                acc += &(c1 * &c2.conj()).scale(&m);
            }
        }
    }
    acc
}

/// Zone-`a` members obtained by Gram–Schmidt inside each magnetic subspace.
///
/// Entry `p` of the result (for `p = 0..=j_max`) lies in `M_{p−a}`: the
/// monomials `z^{p−s} z̄^{a−s}`, `s = min(p,a), …, 0`, are orthogonalized in
/// increasing antiholomorphic degree and the last vector is returned. It is
/// monic in `z^p z̄^a` and orthogonal to every lower-zone member of `M_{p−a}`.
pub fn gram_schmidt_zone(a: u32, j_max: u32, lambda: &Rational) -> Result<Vec<ExactPoly>> {
    if lambda <= &Rational::zero() {
        return Err(domain("gram_schmidt_zone", "lambda must be > 0"));
    }
    (0..=j_max).map(|p| gram_schmidt_member(p, a, lambda)).collect()
}

fn gram_schmidt_member(p: u32, a: u32, lambda: &Rational) -> Result<ExactPoly> {
    let mut basis: Vec<(ExactPoly, Rational)> = Vec::new();
    for s in (0..=p.min(a)).rev() {
        let b = ExactPoly::unit_monomial(p - s, a - s);
        let mut v = b.clone();
        for (u, norm) in &basis {
            let coeff = inner_product(&b, u, lambda).scale(&(Rational::one() / norm));
            v = &v - &u.scale(&coeff);
        }
        let norm = inner_product(&v, &v, lambda);
        if norm.is_zero() || !norm.is_real() {
            return Err(Error::Invariant(format!("vanishing Gram–Schmidt pivot at z^{} zbar^{}", p - s, a - s)));
        }
        basis.push((v, norm.re));
    }
    Ok(basis.pop().expect("basis has at least one element").0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{integer, rational};

    #[test]
    fn moments() {
        assert_eq!(gaussian_moment(0, 0, &integer(1)), integer(1));
        assert_eq!(gaussian_moment(1, 1, &integer(1)), integer(1));
        assert_eq!(gaussian_moment(2, 1, &integer(1)), integer(0));
        assert_eq!(gaussian_moment(3, 3, &integer(2)), rational(6, 16));
    }

    #[test]
    fn moments_match_polar_quadrature() {
        use crate::numerics::integrate_plane;
        use num_complex::Complex64;
        for (i, j) in [(0, 0), (1, 1), (2, 2), (2, 1), (3, 0)] {
            let lambda = 1.5;
            let r = integrate_plane(
                |z: Complex64| z.powu(i) * z.conj().powu(j) * (-lambda * z.norm_sqr()).exp(),
                1e-12,
            )
            .unwrap();
            let exact = crate::exactalg::rational::to_f64(&gaussian_moment(i, j, &rational(3, 2))) * std::f64::consts::PI;
            assert!((r.value - Complex64::new(exact, 0.0)).norm() < 1e-10, "({i},{j})");
        }
    }

    #[test]
    fn inner_product_examples() {
        let one = ExactPoly::one();
        let h11 = &ExactPoly::unit_monomial(1, 1) - &one;
        let l1 = integer(1);
        assert_eq!(inner_product(&one, &one, &l1), GaussRat::one());
        assert_eq!(inner_product(&h11, &one, &l1), GaussRat::zero());
        assert_eq!(inner_product(&ExactPoly::z(), &ExactPoly::z(), &l1), GaussRat::one());
        let iz = ExactPoly::z().scale(&GaussRat::i());
        assert_eq!(inner_product(&iz, &ExactPoly::z(), &l1), GaussRat::i());
        assert_eq!(inner_product(&ExactPoly::z(), &iz, &l1), -GaussRat::i());
    }

    #[test]
    fn gram_schmidt_examples() {
        let l1 = integer(1);
        let zone0 = gram_schmidt_zone(0, 4, &l1).unwrap();
        for (p, poly) in zone0.iter().enumerate() {
            assert_eq!(*poly, ExactPoly::unit_monomial(p as u32, 0));
        }
        let zone1 = gram_schmidt_zone(1, 1, &l1).unwrap();
        assert_eq!(zone1[1], &ExactPoly::unit_monomial(1, 1) - &ExactPoly::one());
        assert_eq!(zone1[0], ExactPoly::zbar());
        let zone2 = gram_schmidt_zone(2, 2, &l1).unwrap();
        let mut expect = ExactPoly::unit_monomial(2, 2);
        expect.add_term(1, 1, GaussRat::from_int(-4));
        expect.add_term(0, 0, GaussRat::from_int(2));
        assert_eq!(zone2[2], expect);
    }

    #[test]
    fn gram_schmidt_orthogonal_to_lower_zones() {
        let lambda = rational(1, 2);
        let zones: Vec<Vec<ExactPoly>> = (0..=3).map(|a| gram_schmidt_zone(a, 5, &lambda).unwrap()).collect();
        for a in 0..=3usize {
            for b in 0..a {
                // Same magnetic number m = p − a requires p_b = p_a − a + b.
                for p in (a - b)..=5 {
                    let pb = p - (a - b);
                    assert!(inner_product(&zones[a][p], &zones[b][pb], &lambda).is_zero());
                }
            }
        }
    }
}
