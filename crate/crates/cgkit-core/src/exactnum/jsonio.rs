//! JSON encoding for scalars and matrices.
//!
//! Exact values use `{"cyc": {"order": m, "coeffs": [[num, den], ...]}}` with
//! plain rationals written as order-1 cyclotomics; approximate values use
//! `{"app": {"re": "<decimal>", "im": "<decimal>", "bits": p}}`. The
//! cyclotomic encoding round-trips bit-exactly; numerators and denominators
//! are emitted as arbitrary-precision JSON integers.

use crate::exactnum::{AppComplex, BivarPoly, Cyclotomic, Matrix, Rational, Ring, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as DeError;
use serde::ser::{Error as SerError, SerializeMap, SerializeSeq};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::str::FromStr;

fn bigint_number<S: Serializer>(v: &BigInt) -> Result<serde_json::Number, S::Error> {
    serde_json::Number::from_str(&v.to_string())
        .map_err(|e| S::Error::custom(format!("bigint to JSON number: {e}")))
}

struct CycBody<'a> {
    order: u32,
    coeffs: &'a [Rational],
}

impl Serialize for CycBody<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("order", &self.order)?;
        let pairs: Result<Vec<[serde_json::Number; 2]>, S::Error> = self
            .coeffs
            .iter()
            .map(|r| Ok([bigint_number::<S>(&r.numer())?, bigint_number::<S>(&r.denom())?]))
            .collect();
        map.serialize_entry("coeffs", &pairs?)?;
        map.end()
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        match self {
            Scalar::Rat(r) => {
                let coeffs = [r.clone()];
                map.serialize_entry("cyc", &CycBody { order: 1, coeffs: &coeffs })?;
            }
            Scalar::Cyc(c) => {
                map.serialize_entry(
                    "cyc",
                    &CycBody {
                        order: c.order(),
                        coeffs: c.coeffs(),
                    },
                )?;
            }
            Scalar::App(a) => {
                let (re, im) = a.to_decimal_pair();
                #[derive(Serialize)]
                struct AppBody {
                    re: String,
                    im: String,
                    bits: usize,
                }
                map.serialize_entry(
                    "app",
                    &AppBody {
                        re,
                        im,
                        bits: a.bits(),
                    },
                )?;
            }
        }
        map.end()
    }
}

fn number_to_bigint<E: DeError>(v: &serde_json::Value) -> Result<BigInt, E> {
    let n = v
        .as_number()
        .ok_or_else(|| E::custom("expected an integer"))?;
    let s = n.to_string();
    BigInt::from_str(&s).map_err(|_| E::custom(format!("not an integer: {s}")))
}

fn scalar_from_value<E: DeError>(v: &serde_json::Value) -> Result<Scalar, E> {
    let obj = v
        .as_object()
        .ok_or_else(|| E::custom("scalar must be an object"))?;
    if let Some(cyc) = obj.get("cyc") {
        let order = cyc
            .get("order")
            .and_then(|o| o.as_u64())
            .ok_or_else(|| E::custom("cyc.order must be a positive integer"))?;
        let coeffs_json = cyc
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| E::custom("cyc.coeffs must be an array"))?;
        let mut coeffs = Vec::with_capacity(coeffs_json.len());
        for pair in coeffs_json {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| E::custom("cyc coefficient must be a [num, den] pair"))?;
            let num = number_to_bigint::<E>(&pair[0])?;
            let den = number_to_bigint::<E>(&pair[1])?;
            if den.sign() == num_bigint::Sign::NoSign {
                return Err(E::custom("zero denominator"));
            }
            coeffs.push(Rational::from_big(BigRational::new(num, den)));
        }
        if order == 1 {
            let r = coeffs.into_iter().next().unwrap_or_else(Rational::zero);
            return Ok(Scalar::Rat(r));
        }
        return Ok(Scalar::from_cyc(Cyclotomic::new(order as u32, coeffs)));
    }
    if let Some(app) = obj.get("app") {
        let re = app
            .get("re")
            .and_then(|x| x.as_str())
            .ok_or_else(|| E::custom("app.re must be a decimal string"))?;
        let im = app
            .get("im")
            .and_then(|x| x.as_str())
            .ok_or_else(|| E::custom("app.im must be a decimal string"))?;
        let bits = app
            .get("bits")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| E::custom("app.bits must be an integer"))? as usize;
        return Ok(Scalar::App(AppComplex::from_decimal_pair(re, im, bits)));
    }
    Err(E::custom("scalar object needs a \"cyc\" or \"app\" key"))
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        scalar_from_value::<D::Error>(&value)
    }
}

impl Serialize for Matrix<Scalar> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("rows", &self.rows())?;
        map.serialize_entry("cols", &self.cols())?;
        struct DataSeq<'a>(&'a Matrix<Scalar>);
        impl Serialize for DataSeq<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.data().len()))?;
                for s in self.0.data() {
                    seq.serialize_element(s)?;
                }
                seq.end()
            }
        }
        map.serialize_entry("data", &DataSeq(self))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Matrix<Scalar> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        matrix_from_value::<D::Error>(&value)
    }
}

pub(crate) fn matrix_from_value<E: DeError>(value: &serde_json::Value) -> Result<Matrix<Scalar>, E> {
    let rows = value
        .get("rows")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| E::custom("matrix.rows must be an integer"))? as usize;
    let cols = value
        .get("cols")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| E::custom("matrix.cols must be an integer"))? as usize;
    let data_json = value
        .get("data")
        .and_then(|x| x.as_array())
        .ok_or_else(|| E::custom("matrix.data must be an array"))?;
    if data_json.len() != rows * cols {
        return Err(E::custom(format!(
            "matrix.data has {} entries, expected {}",
            data_json.len(),
            rows * cols
        )));
    }
    let data: Result<Vec<Scalar>, E> = data_json.iter().map(scalar_from_value::<E>).collect();
    Ok(Matrix::new(rows, cols, data?))
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        let terms: Vec<(u32, u32, &Scalar)> =
            self.terms().map(|((i, j), c)| (i, j, c)).collect();
        map.serialize_entry("terms", &terms)?;
        map.end()
    }
}

fn poly_from_value<E: DeError>(value: &serde_json::Value) -> Result<BivarPoly, E> {
    let terms = value
        .get("terms")
        .and_then(|x| x.as_array())
        .ok_or_else(|| E::custom("polynomial needs a \"terms\" array"))?;
    let mut out = BivarPoly::zero();
    for t in terms {
        let t = t
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| E::custom("polynomial term must be [i, j, scalar]"))?;
        let i = t[0]
            .as_u64()
            .ok_or_else(|| E::custom("term exponent must be an integer"))? as u32;
        let j = t[1]
            .as_u64()
            .ok_or_else(|| E::custom("term exponent must be an integer"))? as u32;
        let c = scalar_from_value::<E>(&t[2])?;
        out = out.add(&BivarPoly::monomial(c, i, j));
    }
    Ok(out)
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        poly_from_value::<D::Error>(&value)
    }
}

impl Serialize for Matrix<BivarPoly> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("rows", &self.rows())?;
        map.serialize_entry("cols", &self.cols())?;
        struct DataSeq<'a>(&'a Matrix<BivarPoly>);
        impl Serialize for DataSeq<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.data().len()))?;
                for s in self.0.data() {
                    seq.serialize_element(s)?;
                }
                seq.end()
            }
        }
        map.serialize_entry("data", &DataSeq(self))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Matrix<BivarPoly> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        let rows = value
            .get("rows")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| D::Error::custom("matrix.rows must be an integer"))?
            as usize;
        let cols = value
            .get("cols")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| D::Error::custom("matrix.cols must be an integer"))?
            as usize;
        let data_json = value
            .get("data")
            .and_then(|x| x.as_array())
            .ok_or_else(|| D::Error::custom("matrix.data must be an array"))?;
        if data_json.len() != rows * cols {
            return Err(D::Error::custom("matrix.data length mismatch"));
        }
        let data: Result<Vec<BivarPoly>, D::Error> =
            data_json.iter().map(poly_from_value::<D::Error>).collect();
        Ok(Matrix::new(rows, cols, data?))
    }
}

#[cfg(test)]
mod tests {
    use crate::exactnum::{mat_i64, BivarPoly, Matrix, Rational, Ring, Scalar};

    #[test]
    fn cyclotomic_round_trip_is_bit_exact() {
        let values = [
            Scalar::from_rational(-22, 7),
            Scalar::from_int(0),
            Scalar::root_of_unity(8, 3)
                .mul(&Scalar::from_rational(5, 3))
                .add(&Scalar::from_int(2)),
            Scalar::i(),
        ];
        for v in values {
            let text = serde_json::to_string(&v).unwrap();
            let back: Scalar = serde_json::from_str(&text).unwrap();
            assert_eq!(v, back, "{text}");
        }
    }

    #[test]
    fn rational_serializes_as_order_one_cyc() {
        let text = serde_json::to_string(&Scalar::from_rational(3, 4)).unwrap();
        assert_eq!(text, r#"{"cyc":{"order":1,"coeffs":[[3,4]]}}"#);
    }

    #[test]
    fn big_integers_survive() {
        let big = Rational::from_int(i64::MAX).mul(&Rational::from_int(i64::MAX));
        let v = Scalar::Rat(big);
        let text = serde_json::to_string(&v).unwrap();
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn approximate_round_trip_within_tolerance() {
        let v = Scalar::root_of_unity(12, 5).embed(256);
        let text = serde_json::to_string(&Scalar::App(v.clone())).unwrap();
        let back: Scalar = serde_json::from_str(&text).unwrap();
        match back {
            Scalar::App(b) => {
                assert_eq!(b.bits(), 256);
                assert!(b.sub(&v).abs_le("1e-70"));
            }
            other => panic!("expected app scalar, got {other:?}"),
        }
    }

    #[test]
    fn matrix_round_trip() {
        let m = mat_i64(2, 3, &[1, -2, 3, 0, 5, -6]);
        let text = serde_json::to_string(&m).unwrap();
        let back: crate::exactnum::Matrix<Scalar> = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn polynomial_matrix_round_trip() {
        let p = BivarPoly::x()
            .mul(&BivarPoly::y())
            .add(&BivarPoly::monomial(Scalar::from_rational(-1, 2), 3, 0));
        let mut m = Matrix::<BivarPoly>::zero(2, 2);
        m[(0, 1)] = p;
        m[(1, 0)] = BivarPoly::one();
        let text = serde_json::to_string(&m).unwrap();
        let back: Matrix<BivarPoly> = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);
    }
}
