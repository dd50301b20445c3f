//! Arbitrary-precision complex floats for the approximate track.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use once_cell::sync::Lazy;
use std::fmt;
use std::sync::Mutex;

const RM: RoundingMode = RoundingMode::ToEven;

static CONSTS: Lazy<Mutex<Consts>> =
    Lazy::new(|| Mutex::new(Consts::new().expect("constants cache")));

/// Run a closure with the shared constants cache (pi, trig tables).
pub(crate) fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    let mut cc = CONSTS.lock().unwrap();
    f(&mut cc)
}

/// A complex number `re + im*i` with both parts at `bits` of binary precision.
#[derive(Clone)]
pub struct AppComplex {
    re: BigFloat,
    im: BigFloat,
    bits: usize,
}

impl AppComplex {
    pub fn new(re: BigFloat, im: BigFloat, bits: usize) -> Self {
        AppComplex { re, im, bits }
    }

    pub fn zero(bits: usize) -> Self {
        AppComplex::new(BigFloat::from_i64(0, bits), BigFloat::from_i64(0, bits), bits)
    }

    pub fn one(bits: usize) -> Self {
        AppComplex::new(BigFloat::from_i64(1, bits), BigFloat::from_i64(0, bits), bits)
    }

    pub fn from_i64(n: i64, bits: usize) -> Self {
        AppComplex::new(BigFloat::from_i64(n, bits), BigFloat::from_i64(0, bits), bits)
    }

    /// Parse a decimal string (scientific notation allowed) as a real value.
    pub fn from_decimal(s: &str, bits: usize) -> Self {
        let re = parse_decimal(s, bits);
        AppComplex::new(re, BigFloat::from_i64(0, bits), bits)
    }

    /// Exact embedding of a rational number.
    pub fn from_rational(num: &num_bigint::BigInt, den: &num_bigint::BigInt, bits: usize) -> Self {
        let guard = bits + 32;
        let n = parse_decimal(&num.to_string(), guard);
        let d = parse_decimal(&den.to_string(), guard);
        let re = n.div(&d, bits, RM);
        AppComplex::new(re, BigFloat::from_i64(0, bits), bits)
    }

    /// Numerical value of `zeta_m^k = exp(2 pi i k / m)`.
    pub fn root_of_unity(m: u32, k: i64, bits: usize) -> Self {
        let guard = bits + 32;
        let k = k.rem_euclid(m as i64);
        with_consts(|cc| {
            let pi = cc.pi(guard, RM);
            let theta = pi
                .mul(&BigFloat::from_i64(2 * k, guard), guard, RM)
                .div(&BigFloat::from_i64(m as i64, guard), guard, RM);
            let re = theta.cos(bits, RM, cc);
            let im = theta.sin(bits, RM, cc);
            AppComplex::new(re, im, bits)
        })
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    fn p(&self, rhs: &AppComplex) -> usize {
        self.bits.min(rhs.bits)
    }

    pub fn add(&self, rhs: &AppComplex) -> AppComplex {
        let p = self.p(rhs);
        AppComplex::new(self.re.add(&rhs.re, p, RM), self.im.add(&rhs.im, p, RM), p)
    }

    pub fn sub(&self, rhs: &AppComplex) -> AppComplex {
        let p = self.p(rhs);
        AppComplex::new(self.re.sub(&rhs.re, p, RM), self.im.sub(&rhs.im, p, RM), p)
    }

    pub fn mul(&self, rhs: &AppComplex) -> AppComplex {
        let p = self.p(rhs);
        let re = self
            .re
            .mul(&rhs.re, p, RM)
            .sub(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self
            .re
            .mul(&rhs.im, p, RM)
            .add(&self.im.mul(&rhs.re, p, RM), p, RM);
        AppComplex::new(re, im, p)
    }

    pub fn div(&self, rhs: &AppComplex) -> AppComplex {
        let p = self.p(rhs);
        let den = rhs
            .re
            .mul(&rhs.re, p, RM)
            .add(&rhs.im.mul(&rhs.im, p, RM), p, RM);
        assert!(!den.is_zero(), "division by (numerically) zero complex");
        let re = self
            .re
            .mul(&rhs.re, p, RM)
            .add(&self.im.mul(&rhs.im, p, RM), p, RM)
            .div(&den, p, RM);
        let im = self
            .im
            .mul(&rhs.re, p, RM)
            .sub(&self.re.mul(&rhs.im, p, RM), p, RM)
            .div(&den, p, RM);
        AppComplex::new(re, im, p)
    }

    pub fn neg(&self) -> AppComplex {
        AppComplex::new(self.re.neg(), self.im.neg(), self.bits)
    }

    pub fn conj(&self) -> AppComplex {
        AppComplex::new(self.re.clone(), self.im.neg(), self.bits)
    }

    pub fn inv(&self) -> AppComplex {
        AppComplex::one(self.bits).div(self)
    }

    /// Modulus `|z|` as a real float.
    pub fn abs(&self) -> BigFloat {
        let p = self.bits;
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
            .sqrt(p, RM)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `|self - rhs| <= tol`, with `tol` a decimal string such as `"1e-30"`.
    pub fn approx_eq(&self, rhs: &AppComplex, tol: &str) -> bool {
        let d = self.sub(rhs).abs();
        let t = parse_decimal(tol, self.bits.min(rhs.bits));
        matches!(d.cmp(&t), Some(v) if v <= 0)
    }

    pub fn abs_le(&self, tol: &str) -> bool {
        self.approx_eq(&AppComplex::zero(self.bits), tol)
    }

    pub fn pow(&self, exp: i64) -> AppComplex {
        if exp == 0 {
            return AppComplex::one(self.bits);
        }
        let base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = AppComplex::one(self.bits);
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

    /// Decimal encodings of the real and imaginary parts.
    pub fn to_decimal_pair(&self) -> (String, String) {
        (format!("{}", self.re), format!("{}", self.im))
    }

    pub fn from_decimal_pair(re: &str, im: &str, bits: usize) -> Self {
        AppComplex::new(parse_decimal(re, bits), parse_decimal(im, bits), bits)
    }

    /// Real nth root of a positive real value (used for radicals like 2^(1/3)).
    pub fn real_nth_root(value: i64, n: u32, bits: usize) -> Self {
        assert!(value > 0 && n > 0);
        let guard = bits + 32;
        let v = BigFloat::from_i64(value, guard);
        let r = match n {
            1 => v,
            2 => v.sqrt(bits, RM),
            3 => v.cbrt(bits, RM),
            _ => with_consts(|cc| {
                let ln = v.ln(guard, RM, cc);
                ln.div(&BigFloat::from_i64(n as i64, guard), guard, RM)
                    .exp(bits, RM, cc)
            }),
        };
        AppComplex::new(r, BigFloat::from_i64(0, bits), bits)
    }

    /// True when the real part is negative (imaginary part ignored).
    pub fn re_sign_negative(&self) -> bool {
        self.re.sign() == Some(Sign::Neg)
    }
}

impl PartialEq for AppComplex {
    /// Structural equality of the stored floats; use [`AppComplex::approx_eq`]
    /// for numerical comparison.
    fn eq(&self, other: &AppComplex) -> bool {
        self.re == other.re && self.im == other.im
    }
}

pub(crate) fn parse_decimal(s: &str, bits: usize) -> BigFloat {
    with_consts(|cc| BigFloat::parse(s, Radix::Dec, bits, RM, cc))
}

impl fmt::Display for AppComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl fmt::Debug for AppComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_unity_is_on_unit_circle() {
        let z = AppComplex::root_of_unity(8, 1, 256);
        let one = z.mul(&z.conj());
        assert!(one.approx_eq(&AppComplex::one(256), "1e-70"));
        let z8 = z.pow(8);
        assert!(z8.approx_eq(&AppComplex::one(256), "1e-70"));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = AppComplex::from_decimal("3.25", 128);
        let b = AppComplex::root_of_unity(12, 5, 128);
        let c = a.mul(&b).div(&b);
        assert!(c.approx_eq(&a, "1e-30"));
    }

    #[test]
    fn decimal_round_trip_is_close() {
        let z = AppComplex::root_of_unity(7, 2, 256);
        let (re, im) = z.to_decimal_pair();
        let back = AppComplex::from_decimal_pair(&re, &im, 256);
        assert!(back.approx_eq(&z, "1e-70"));
    }

    #[test]
    fn nth_roots() {
        let c = AppComplex::real_nth_root(2, 3, 256);
        let cubed = c.pow(3);
        assert!(cubed.approx_eq(&AppComplex::from_i64(2, 256), "1e-70"));
    }
}
