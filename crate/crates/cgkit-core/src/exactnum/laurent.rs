//! Laurent polynomials in the formal parameter `t` and limits of matrices of
//! such polynomials as `t -> 0`.

use super::matrix::Matrix;
use super::scalar::{Ring, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// A Laurent polynomial `sum c_e t^e` with scalar coefficients; exact zero
/// coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn from_scalar(s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(0, s);
        }
        LaurentPoly { terms }
    }

    /// The monomial `c * t^e`.
    pub fn monomial(c: Scalar, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn t_power(e: i64) -> Self {
        LaurentPoly::monomial(Scalar::one(), e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, e: i64) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Lowest exponent with (structurally) nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn scale(&self, s: &Scalar) -> LaurentPoly {
        if s.is_zero() {
            return LaurentPoly::from_scalar(Scalar::zero());
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.mul(s)))
                .collect(),
        }
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    /// Value at `t -> 0` with tolerance-aware divergence detection: a negative
    /// exponent whose coefficient is not zero within `tol` diverges; returns
    /// the most negative offending exponent.
    pub fn limit_at_zero(&self, tol: &str) -> Result<Scalar, i64> {
        for (e, c) in &self.terms {
            if *e >= 0 {
                break;
            }
            if !c.approx_zero(tol) {
                return Err(*e);
            }
        }
        Ok(self.coefficient(0))
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        LaurentPoly::from_scalar(Scalar::one())
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
        LaurentPoly { terms }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1 + e2;
                let p = c1.mul(c2);
                let entry = terms.entry(e).or_insert_with(Scalar::zero);
                *entry = entry.add(&p);
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        LaurentPoly { terms }
    }

    fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*t", c)?,
                _ => write!(f, "({})*t^{}", c, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of a matrix limit as `t -> 0`.
#[derive(Clone, Debug)]
pub enum LaurentLimit {
    Exists(Matrix<Scalar>),
    Diverges {
        row: usize,
        col: usize,
        exponent: i64,
    },
}

impl LaurentLimit {
    pub fn exists(&self) -> bool {
        matches!(self, LaurentLimit::Exists(_))
    }

    pub fn unwrap(self) -> Matrix<Scalar> {
        match self {
            LaurentLimit::Exists(m) => m,
            LaurentLimit::Diverges { row, col, exponent } => panic!(
                "limit diverges at entry ({}, {}) with exponent {}",
                row, col, exponent
            ),
        }
    }
}

/// Entrywise limit of a Laurent matrix as `t -> 0`; the first diverging entry
/// (row-major order) is reported with its most negative exponent.
pub fn laurent_limit_at_zero(m: &Matrix<LaurentPoly>, tol: &str) -> LaurentLimit {
    let mut out = Matrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            match m[(i, j)].limit_at_zero(tol) {
                Ok(v) => out[(i, j)] = v,
                Err(exponent) => {
                    return LaurentLimit::Diverges {
                        row: i,
                        col: j,
                        exponent,
                    }
                }
            }
        }
    }
    LaurentLimit::Exists(out)
}

/// Promote a scalar matrix to a Laurent matrix of constants.
pub fn laurent_matrix(m: &Matrix<Scalar>) -> Matrix<LaurentPoly> {
    m.map(|s| LaurentPoly::from_scalar(s.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_additivity() {
        let f = LaurentPoly::monomial(Scalar::from_int(2), -3)
            .add(&LaurentPoly::t_power(1));
        let g = LaurentPoly::monomial(Scalar::from_int(5), 2);
        let fg = f.mul(&g);
        assert_eq!(
            fg.valuation().unwrap(),
            f.valuation().unwrap() + g.valuation().unwrap()
        );
    }

    #[test]
    fn limit_detects_divergence() {
        let ok = LaurentPoly::t_power(2).add(&LaurentPoly::from_scalar(Scalar::from_int(7)));
        assert_eq!(ok.limit_at_zero("1e-30").unwrap(), Scalar::from_int(7));
        let bad = LaurentPoly::t_power(-1);
        assert_eq!(bad.limit_at_zero("1e-30").unwrap_err(), -1);
    }

    #[test]
    fn matrix_limit_reports_entry() {
        let mut m = Matrix::<LaurentPoly>::zero(2, 2);
        m[(0, 0)] = LaurentPoly::t_power(1);
        m[(1, 1)] = LaurentPoly::t_power(-2);
        match laurent_limit_at_zero(&m, "1e-30") {
            LaurentLimit::Diverges { row, col, exponent } => {
                assert_eq!((row, col, exponent), (1, 1, -2));
            }
            _ => panic!("expected divergence"),
        }
    }

    #[test]
    fn limit_multiplicative_when_both_exist() {
        let f = LaurentPoly::from_scalar(Scalar::from_int(3)).add(&LaurentPoly::t_power(1));
        let g = LaurentPoly::from_scalar(Scalar::from_int(-2)).add(&LaurentPoly::t_power(4));
        let lhs = f.mul(&g).limit_at_zero("1e-30").unwrap();
        let rhs = f
            .limit_at_zero("1e-30")
            .unwrap()
            .mul(&g.limit_at_zero("1e-30").unwrap());
        assert_eq!(lhs, rhs);
    }
}
