//! The two-track scalar: exact rational/cyclotomic values or approximate
//! complex floats, with explicit contagion rules.

use super::appcomplex::AppComplex;
use super::cyclotomic::Cyclotomic;
use super::rational::Rational;
use std::fmt;

/// Minimal ring interface used by the generic matrix and polynomial types.
pub trait Ring: Clone + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// A scalar from either track. Exact values are kept canonical: a cyclotomic
/// whose reduced support is rational is demoted to the `Rat` variant, so
/// structural comparison of exact scalars is semantic equality.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Rat(Rational),
    Cyc(Cyclotomic),
    App(AppComplex),
}

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(Rational::from_int(n))
    }

    pub fn from_rational(num: i64, den: i64) -> Self {
        Scalar::Rat(Rational::new(num, den))
    }

    /// Canonicalising constructor from a cyclotomic value.
    pub fn from_cyc(c: Cyclotomic) -> Self {
        match c.rational_part() {
            Some(r) => Scalar::Rat(r),
            None => Scalar::Cyc(c),
        }
    }

    /// Exact root of unity `zeta_m^k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        Scalar::from_cyc(Cyclotomic::root_of_unity(m, k))
    }

    /// The imaginary unit as an exact cyclotomic.
    pub fn i() -> Self {
        Scalar::root_of_unity(4, 1)
    }

    /// `2^exp` as an exact rational.
    pub fn pow2(exp: i64) -> Self {
        Scalar::Rat(Rational::pow2(exp))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::App(_))
    }

    pub fn bits(&self) -> Option<usize> {
        match self {
            Scalar::App(a) => Some(a.bits()),
            _ => None,
        }
    }

    /// Numerical embedding of any scalar at the given precision. Approximate
    /// values are returned as stored (their own precision wins).
    pub fn embed(&self, bits: usize) -> AppComplex {
        match self {
            Scalar::Rat(r) => AppComplex::from_rational(&r.numer(), &r.denom(), bits),
            Scalar::Cyc(c) => {
                let mut acc = AppComplex::zero(bits);
                for (k, coeff) in c.coeffs().iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let z = AppComplex::root_of_unity(c.order(), k as i64, bits);
                    let w = AppComplex::from_rational(&coeff.numer(), &coeff.denom(), bits);
                    acc = acc.add(&z.mul(&w));
                }
                acc
            }
            Scalar::App(a) => a.clone(),
        }
    }

    fn promote_pair(a: &Scalar, b: &Scalar) -> Option<(AppComplex, AppComplex)> {
        match (a, b) {
            (Scalar::App(x), Scalar::App(y)) => Some((x.clone(), y.clone())),
            (Scalar::App(x), y) => {
                let bits = x.bits();
                Some((x.clone(), y.embed(bits)))
            }
            (x, Scalar::App(y)) => {
                let bits = y.bits();
                Some((x.embed(bits), y.clone()))
            }
            _ => None,
        }
    }

    fn as_cyc(&self) -> Cyclotomic {
        match self {
            Scalar::Rat(r) => Cyclotomic::from_rational(1, r.clone()),
            Scalar::Cyc(c) => c.clone(),
            Scalar::App(_) => unreachable!("approximate scalar on the exact path"),
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.inv()),
            Scalar::Cyc(c) => Scalar::from_cyc(c.inv()),
            Scalar::App(a) => Scalar::App(a.inv()),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self.mul(&rhs.inv())
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.clone()),
            Scalar::Cyc(c) => Scalar::from_cyc(c.conj()),
            Scalar::App(a) => Scalar::App(a.conj()),
        }
    }

    pub fn pow(&self, exp: i64) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.pow(exp)),
            Scalar::Cyc(c) => Scalar::from_cyc(c.pow(exp)),
            Scalar::App(a) => Scalar::App(a.pow(exp)),
        }
    }

    /// Equality with tolerance: exact pairs compare exactly, anything
    /// involving the approximate track compares numerically within `tol`.
    pub fn approx_eq(&self, rhs: &Scalar, tol: &str) -> bool {
        match Scalar::promote_pair(self, rhs) {
            Some((a, b)) => a.approx_eq(&b, tol),
            None => self == rhs,
        }
    }

    pub fn approx_zero(&self, tol: &str) -> bool {
        match self {
            Scalar::App(a) => a.abs_le(tol),
            _ => self.is_zero(),
        }
    }

    /// Exact rational value, if this scalar is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_rational().and_then(|r| r.as_i64())
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(c) => c.is_zero(),
            Scalar::App(a) => a.is_zero(),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        if let Some((a, b)) = Scalar::promote_pair(self, rhs) {
            return Scalar::App(a.add(&b));
        }
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            _ => Scalar::from_cyc(self.as_cyc().add(&rhs.as_cyc())),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        if let Some((a, b)) = Scalar::promote_pair(self, rhs) {
            return Scalar::App(a.sub(&b));
        }
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.sub(b)),
            _ => Scalar::from_cyc(self.as_cyc().sub(&rhs.as_cyc())),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if let Some((a, b)) = Scalar::promote_pair(self, rhs) {
            return Scalar::App(a.mul(&b));
        }
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            (Scalar::Rat(a), Scalar::Cyc(b)) => Scalar::from_cyc(b.scale(a)),
            (Scalar::Cyc(a), Scalar::Rat(b)) => Scalar::from_cyc(a.scale(b)),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::from_cyc(a.mul(b)),
            _ => unreachable!(),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.neg()),
            Scalar::Cyc(c) => Scalar::Cyc(c.neg()),
            Scalar::App(a) => Scalar::App(a.neg()),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Cyc(c) => write!(f, "{}", c),
            Scalar::App(a) => write!(f, "{}", a),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_canonicalisation() {
        // i * i = -1 demotes to the rational variant.
        let i = Scalar::i();
        let m1 = i.mul(&i);
        assert!(matches!(m1, Scalar::Rat(_)));
        assert_eq!(m1, Scalar::from_int(-1));
        // zeta_8^2 equals i across different stored orders.
        let z8 = Scalar::root_of_unity(8, 1);
        assert_eq!(z8.mul(&z8), Scalar::i());
    }

    #[test]
    fn contagion_to_approximate() {
        let a = Scalar::from_rational(1, 3);
        let b = Scalar::App(AppComplex::from_i64(3, 128));
        let c = a.mul(&b);
        assert!(!c.is_exact());
        assert!(c.approx_eq(&Scalar::one(), "1e-30"));
    }

    #[test]
    fn field_ops() {
        let z = Scalar::root_of_unity(16, 5);
        assert_eq!(z.mul(&z.inv()), Scalar::one());
        assert_eq!(z.conj(), Scalar::root_of_unity(16, -5));
        assert_eq!(z.pow(16), Scalar::one());
    }
}
