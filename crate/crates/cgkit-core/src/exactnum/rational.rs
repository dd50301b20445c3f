//! Arbitrary-precision rational numbers with an inline fast path.
//!
//! Values that fit in a reduced `i64/i64` fraction are stored inline; anything
//! larger is boxed as a [`BigRational`]. All intermediate small arithmetic is
//! performed in `i128`, which cannot overflow for products and twofold sums of
//! `i64` operands, so promotion decisions are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// An exact rational number. Always stored in lowest terms with a positive
/// denominator; the `Big` variant is only used when the reduced fraction does
/// not fit in `i64/i64`, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.abs().gcd(&b.abs())
}

impl Rational {
    /// Build from an `i128` fraction, reducing and demoting as appropriate.
    fn make(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if n == 0 {
            return Rational::Small(0, 1);
        }
        let g = gcd_i128(n, d);
        n /= g;
        d /= g;
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(sn), Ok(sd)) => Rational::Small(sn, sd),
            _ => Rational::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    /// Reduce a `BigRational` result, demoting to the inline form when it fits.
    fn from_big_reduced(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Rational::Small(n, d)
        } else {
            Rational::Big(Box::new(r))
        }
    }

    pub fn new(num: i64, den: i64) -> Self {
        Rational::make(num as i128, den as i128)
    }

    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational::from_big_reduced(BigRational::from_integer(n))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational::from_big_reduced(r.reduced())
    }

    pub fn zero() -> Self {
        Rational::Small(0, 1)
    }

    pub fn one() -> Self {
        Rational::Small(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    /// Integer value if the rational is a small integer.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn add(&self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
                Rational::make(an * bd + bn * ad, ad * bd)
            }
            _ => Rational::from_big_reduced(self.to_big() + rhs.to_big()),
        }
    }

    pub fn sub(&self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
                Rational::make(an * bd - bn * ad, ad * bd)
            }
            _ => Rational::from_big_reduced(self.to_big() - rhs.to_big()),
        }
    }

    pub fn mul(&self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                Rational::make(*an as i128 * *bn as i128, *ad as i128 * *bd as i128)
            }
            _ => Rational::from_big_reduced(self.to_big() * rhs.to_big()),
        }
    }

    pub fn div(&self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        match (self, rhs) {
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                Rational::make(*an as i128 * *bd as i128, *ad as i128 * *bn as i128)
            }
            _ => Rational::from_big_reduced(self.to_big() / rhs.to_big()),
        }
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::make(-(*n as i128), *d as i128),
            Rational::Big(r) => Rational::from_big_reduced(-(**r).clone()),
        }
    }

    pub fn inv(&self) -> Rational {
        assert!(!self.is_zero(), "inverse of zero rational");
        match self {
            Rational::Small(n, d) => Rational::make(*d as i128, *n as i128),
            Rational::Big(r) => Rational::from_big_reduced((**r).recip()),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, exp: i64) -> Rational {
        if exp == 0 {
            return Rational::one();
        }
        let base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Rational::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Power of two `2^exp` as an exact rational, for any sign of `exp`.
    pub fn pow2(exp: i64) -> Rational {
        Rational::from_int(2).pow(exp)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                (*an as i128 * *bd as i128).cmp(&(*bn as i128 * *ad as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{}", n),
            Rational::Small(n, d) => write!(f, "{}/{}", n, d),
            Rational::Big(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Rational {
    type Err = String;

    /// Parse `"n"` or `"n/d"` with arbitrary-size decimal integers.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (ns, ds) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n: BigInt = ns.parse().map_err(|e| format!("bad numerator {ns:?}: {e}"))?;
        let d: BigInt = ds.parse().map_err(|e| format!("bad denominator {ds:?}: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Rational {
    /// Exact decimal expansion when the denominator is a product of 2s and 5s,
    /// else `None`. Used by the JSON encoder to keep rationals readable.
    pub fn decimal_exact(&self) -> Option<String> {
        let mut d = self.denom();
        let mut twos = 0u32;
        let mut fives = 0u32;
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        while (&d % &two).is_zero() {
            d /= &two;
            twos += 1;
        }
        while (&d % &five).is_zero() {
            d /= &five;
            fives += 1;
        }
        if !d.is_one() {
            return None;
        }
        let shift = twos.max(fives);
        let scale = BigInt::from(10).pow(shift);
        let scaled = self.numer() * &scale / self.denom();
        let neg = scaled.is_negative();
        let digits = scaled.magnitude().to_string();
        let digits = if digits.len() as u32 <= shift {
            format!("{}{}", "0".repeat(shift as usize + 1 - digits.len()), digits)
        } else {
            digits
        };
        let point = digits.len() - shift as usize;
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&digits[..point]);
        if shift > 0 {
            out.push('.');
            out.push_str(&digits[point..]);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_reduces() {
        let a = Rational::new(2, 4);
        assert_eq!(a, Rational::new(1, 2));
        assert_eq!(a.add(&Rational::new(1, 3)), Rational::new(5, 6));
        assert_eq!(a.mul(&Rational::new(-4, 6)), Rational::new(-1, 3));
        assert_eq!(Rational::new(-3, -6), Rational::new(1, 2));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.div(&big);
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(_, _)));
    }

    #[test]
    fn pow_negative_exponent() {
        assert_eq!(Rational::new(2, 3).pow(-2), Rational::new(9, 4));
        assert_eq!(Rational::pow2(-3), Rational::new(1, 8));
    }

    #[test]
    fn ordering() {
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
        assert!(Rational::new(-1, 2) < Rational::zero());
    }

    #[test]
    fn decimal_exact_forms() {
        assert_eq!(Rational::new(1, 8).decimal_exact().unwrap(), "0.125");
        assert_eq!(Rational::new(-3, 20).decimal_exact().unwrap(), "-0.15");
        assert_eq!(Rational::new(7, 1).decimal_exact().unwrap(), "7");
        assert!(Rational::new(1, 3).decimal_exact().is_none());
    }
}
