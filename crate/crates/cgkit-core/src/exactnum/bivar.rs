//! Bivariate polynomials in the plane coordinates `(X, Y)`.

use super::scalar::{Ring, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial `sum c_(i,j) X^i Y^j` with scalar coefficients; exact zero
/// coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl BivarPoly {
    pub fn from_scalar(s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert((0, 0), s);
        }
        BivarPoly { terms }
    }

    pub fn monomial(c: Scalar, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BivarPoly { terms }
    }

    /// The coordinate `X`.
    pub fn x() -> Self {
        BivarPoly::monomial(Scalar::one(), 1, 0)
    }

    /// The coordinate `Y`.
    pub fn y() -> Self {
        BivarPoly::monomial(Scalar::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Scalar {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, s: &Scalar) -> BivarPoly {
        if s.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.mul(s))).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> BivarPoly {
        let mut acc = BivarPoly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for ((i, j), c) in &self.terms {
            let m = x.pow(*i as i64).mul(&y.pow(*j as i64));
            acc = acc.add(&c.mul(&m));
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Coefficient-wise comparison with tolerance; monomials missing on one
    /// side must be within `tol` of zero on the other.
    pub fn approx_eq(&self, rhs: &BivarPoly, tol: &str) -> bool {
        let keys: std::collections::BTreeSet<_> = self
            .terms
            .keys()
            .chain(rhs.terms.keys())
            .copied()
            .collect();
        keys.into_iter().all(|(i, j)| {
            self.coefficient(i, j).approx_eq(&rhs.coefficient(i, j), tol)
        })
    }
}

impl Ring for BivarPoly {
    fn zero() -> Self {
        BivarPoly {
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        BivarPoly::from_scalar(Scalar::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(*e).or_insert_with(Scalar::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        BivarPoly { terms }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &rhs.terms {
                let e = (i1 + i2, j1 + j2);
                let p = c1.mul(c2);
                let entry = terms.entry(e).or_insert_with(Scalar::zero);
                *entry = entry.add(&p);
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        BivarPoly { terms }
    }

    fn neg(&self) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if *i > 0 {
                write!(f, "*X^{}", i)?;
            }
            if *j > 0 {
                write!(f, "*Y^{}", j)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
