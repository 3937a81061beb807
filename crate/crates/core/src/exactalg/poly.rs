use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::rational::{rational_string, GaussRat, Rational};

/// Polynomial in `z` and `z̄` with Gaussian-rational coefficients.
///
/// Keys are `(i, j)` for `z^i z̄^j`. Zero coefficients are never stored, so
/// structural equality is coefficient-wise equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactPoly {
    terms: BTreeMap<(u32, u32), GaussRat>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn monomial(i: u32, j: u32, c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// `z^i z̄^j` with coefficient 1.
    pub fn unit_monomial(i: u32, j: u32) -> Self {
        Self::monomial(i, j, GaussRat::one())
    }

    pub fn z() -> Self {
        Self::unit_monomial(1, 0)
    }

    pub fn zbar() -> Self {
        Self::unit_monomial(0, 1)
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> GaussRat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree `max(i + j)`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussRat::real(r.clone()))
    }

    /// Multiply by `z^di z̄^dj`.
    pub fn shift(&self, di: u32, dj: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|((i, j), v)| ((i + di, j + dj), v.clone())).collect(),
        }
    }

    pub fn d_dz(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c.scale(&Rational::from_integer(i.into())));
            }
        }
        out
    }

    pub fn d_dzbar(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c.scale(&Rational::from_integer(j.into())));
            }
        }
        out
    }

    /// Complex conjugate as a function: `conj(P)(z) = Σ c̄ z^j z̄^i`.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.conj())).collect(),
        }
    }

    /// `P(r²)` with `r² = z z̄` for a univariate polynomial in `t`.
    pub fn from_radial(coeffs: &[Rational]) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out.add_term(k as u32, k as u32, GaussRat::real(c.clone()));
        }
        out
    }

    /// Floating-point evaluation at `z`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_complex() * z.powu(i) * zb.powu(j))
            .sum()
    }

    /// The coefficient of the monomial ordered last (highest `(i, j)`).
    pub fn leading(&self) -> Option<(&(u32, u32), &GaussRat)> {
        self.terms.iter().next_back()
    }
}

impl<'a> Add<&'a ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &'a ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &'a ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl<'a> Mul<&'a ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &'a ExactPoly) -> ExactPoly {
        let mut out = ExactPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_real() && c.re < Rational::from_integer(0.into());
            let shown = if negative { -c } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let part = |name: &str, e: u32| match e {
                0 => None,
                1 => Some(name.to_string()),
                e => Some(format!("{name}^{e}")),
            };
            let mono: Vec<String> = [part("z", i), part("zbar", j)].into_iter().flatten().collect();
            if mono.is_empty() {
                write!(f, "{shown}")?;
            } else if shown == GaussRat::one() {
                write!(f, "{}", mono.join(" "))?;
            } else {
                write!(f, "{shown} {}", mono.join(" "))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermRecord {
    z: u32,
    zbar: u32,
    re: String,
    im: String,
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(&(i, j), c)| TermRecord {
            z: i,
            zbar: j,
            re: rational_string(&c.re),
            im: rational_string(&c.im),
        }))
    }
}
