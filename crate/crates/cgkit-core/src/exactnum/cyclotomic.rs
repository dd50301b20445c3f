//! Exact cyclotomic numbers: elements of `Q(zeta_m)` in the canonical basis.
//!
//! A value of order `m` is a rational linear combination of `zeta_m^k`,
//! stored as a length-`m` coefficient vector reduced against the m-th
//! cyclotomic polynomial, so the support lies in `0..phi(m)` and the
//! representation is unique. Mixed-order arithmetic lifts both operands into
//! the compositum `Q(zeta_lcm)` first.

use super::rational::Rational;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Dense little-endian polynomial product over the rationals.
fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Exact quotient and remainder of dense rational polynomials.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = poly_trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = poly_trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap().div(&lead);
        let shift = r.len() - b.len();
        q[shift] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&c.mul(bj));
        }
        r = poly_trim(r);
        if r.is_empty() {
            break;
        }
        if r.len() < b.len() {
            break;
        }
    }
    (q, r)
}

/// Extended Euclid over `Q[x]`: returns `(g, u)` with `u*a = g (mod b)` and
/// `g` the (nonzero, not necessarily monic) gcd of `a` and `b`.
fn poly_half_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut u0 = vec![Rational::one()];
    let mut u1: Vec<Rational> = vec![];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let qu = poly_mul(&q, &u1);
        let mut nu = u0.clone();
        nu.resize(nu.len().max(qu.len()), Rational::zero());
        for (i, c) in qu.iter().enumerate() {
            nu[i] = nu[i].sub(c);
        }
        u0 = u1;
        u1 = poly_trim(nu);
        r0 = r1;
        r1 = r;
    }
    (r0, u0)
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u32, Arc<Vec<Rational>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients of the m-th cyclotomic polynomial (monic, little-endian).
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<Rational>> {
    assert!(m >= 1);
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&m) {
        return p.clone();
    }
    let result = if m == 1 {
        vec![Rational::from_int(-1), Rational::one()]
    } else {
        // x^m - 1 divided by the product of Phi_d over proper divisors d.
        let mut num = vec![Rational::zero(); m as usize + 1];
        num[0] = Rational::from_int(-1);
        num[m as usize] = Rational::one();
        let mut den = vec![Rational::one()];
        for d in 1..m {
            if m % d == 0 {
                den = poly_mul(&den, &cyclotomic_polynomial(d));
            }
        }
        let (q, r) = poly_divrem(&num, &den);
        assert!(r.is_empty(), "cyclotomic polynomial division not exact");
        q
    };
    let arc = Arc::new(result);
    CYCLO_CACHE.lock().unwrap().insert(m, arc.clone());
    arc
}

/// Euler totient, the degree of the m-th cyclotomic polynomial.
pub fn euler_phi(m: u32) -> u32 {
    (cyclotomic_polynomial(m).len() - 1) as u32
}

/// An element of `Q(zeta_m)` in reduced canonical form.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Build from raw coefficients of powers `zeta_order^k`; exponents beyond
    /// the vector length are not allowed, exponents are taken mod `order`,
    /// and the result is reduced to the canonical basis.
    pub fn new(order: u32, coeffs: Vec<Rational>) -> Self {
        assert!(order >= 1);
        let mut folded = vec![Rational::zero(); order as usize];
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                let idx = k % order as usize;
                folded[idx] = folded[idx].add(&c);
            }
        }
        let mut v = Cyclotomic {
            order,
            coeffs: folded,
        };
        v.reduce();
        v
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let k = k.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![Rational::zero(); m as usize];
        coeffs[k] = Rational::one();
        let mut v = Cyclotomic { order: m, coeffs };
        v.reduce();
        v
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); order as usize];
        coeffs[0] = r;
        Cyclotomic { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Reduce in place against the cyclotomic polynomial of `self.order`.
    fn reduce(&mut self) {
        let m = self.order as usize;
        debug_assert_eq!(self.coeffs.len(), m);
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        for k in (deg..m).rev() {
            if self.coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut self.coeffs[k], Rational::zero());
            for (j, pj) in phi.iter().take(deg).enumerate() {
                if !pj.is_zero() {
                    self.coeffs[k - deg + j] = self.coeffs[k - deg + j].sub(&c.mul(pj));
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when the reduced support is contained in the constant term.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn rational_part(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Lift into `Q(zeta_target)`; `target` must be a multiple of the order.
    pub fn lift(&self, target: u32) -> Cyclotomic {
        assert!(target % self.order == 0, "lift target must be a multiple of the order");
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * step] = c.clone();
            }
        }
        let mut v = Cyclotomic {
            order: target,
            coeffs,
        };
        v.reduce();
        v
    }

    fn common_order(&self, rhs: &Cyclotomic) -> u32 {
        num_integer::lcm(self.order, rhs.order)
    }

    pub fn add(&self, rhs: &Cyclotomic) -> Cyclotomic {
        let m = self.common_order(rhs);
        let mut a = self.lift(m);
        let b = rhs.lift(m);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x = x.add(y);
        }
        a
    }

    pub fn sub(&self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Cyclotomic) -> Cyclotomic {
        let m = self.common_order(rhs);
        let a = self.lift(m);
        let b = rhs.lift(m);
        let mm = m as usize;
        let mut coeffs = vec![Rational::zero(); mm];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let k = (i + j) % mm;
                coeffs[k] = coeffs[k].add(&ai.mul(bj));
            }
        }
        let mut v = Cyclotomic { order: m, coeffs };
        v.reduce();
        v
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.mul(r)).collect(),
        }
    }

    pub fn inv(&self) -> Cyclotomic {
        assert!(!self.is_zero(), "inverse of zero cyclotomic");
        let phi = cyclotomic_polynomial(self.order);
        let (g, u) = poly_half_ext_gcd(&self.coeffs, &phi);
        // Phi_m is irreducible over Q, so the gcd is a nonzero constant.
        assert!(g.len() == 1, "cyclotomic inverse: unexpected gcd degree");
        let ginv = g[0].inv();
        let mut coeffs = vec![Rational::zero(); self.order as usize];
        for (k, c) in u.iter().enumerate() {
            coeffs[k] = c.mul(&ginv);
        }
        let mut v = Cyclotomic {
            order: self.order,
            coeffs,
        };
        v.reduce();
        v
    }

    /// Apply the Galois automorphism `zeta |-> zeta^j`; requires `gcd(j, m) = 1`.
    pub fn galois(&self, j: u32) -> Cyclotomic {
        let m = self.order;
        assert!(num_integer::gcd(j, m) == 1, "galois exponent not coprime to order");
        let mut coeffs = vec![Rational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = (k as u64 * j as u64 % m as u64) as usize;
                coeffs[idx] = coeffs[idx].add(c);
            }
        }
        let mut v = Cyclotomic { order: m, coeffs };
        v.reduce();
        v
    }

    /// Complex conjugation `zeta |-> zeta^(-1)`.
    pub fn conj(&self) -> Cyclotomic {
        if self.order == 1 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    pub fn pow(&self, exp: i64) -> Cyclotomic {
        if exp == 0 {
            return Cyclotomic::from_rational(self.order, Rational::one());
        }
        let base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Cyclotomic::from_rational(self.order, Rational::one());
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
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = self.common_order(other);
        self.lift(m).coeffs == other.lift(m).coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.order, k)?;
            } else {
                write!(f, "({})*z{}^{}", c, self.order, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let p4 = cyclotomic_polynomial(4);
        assert_eq!(
            *p4,
            vec![Rational::one(), Rational::zero(), Rational::one()]
        );
        let p8 = cyclotomic_polynomial(8);
        assert_eq!(p8.len(), 5);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(16), 8);
    }

    #[test]
    fn roots_of_unity_relations() {
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(i.mul(&i), Cyclotomic::from_rational(4, Rational::from_int(-1)));
        // zeta_8^2 = i across orders.
        let z8sq = Cyclotomic::root_of_unity(8, 2);
        assert_eq!(z8sq, i);
        // Sum of all primitive 5th roots with 1: zeta + ... + zeta^4 = -1.
        let mut s = Cyclotomic::from_rational(5, Rational::zero());
        for k in 1..5 {
            s = s.add(&Cyclotomic::root_of_unity(5, k));
        }
        assert!(s.is_rational());
        assert_eq!(s.rational_part().unwrap(), Rational::from_int(-1));
    }

    #[test]
    fn inverse_and_conj() {
        let z = Cyclotomic::root_of_unity(16, 3);
        let zi = z.inv();
        let prod = z.mul(&zi);
        assert_eq!(prod.rational_part().unwrap(), Rational::one());
        assert_eq!(z.conj(), Cyclotomic::root_of_unity(16, -3));
        // A random-ish element times its inverse.
        let a = Cyclotomic::new(
            12,
            vec![
                Rational::new(1, 2),
                Rational::from_int(3),
                Rational::new(-2, 5),
                Rational::zero(),
            ],
        );
        let b = a.inv();
        assert!(a.mul(&b).is_rational());
        assert_eq!(a.mul(&b).rational_part().unwrap(), Rational::one());
    }
}
