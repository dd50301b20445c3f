//! Datum and gauge-element types, the gauge action, and the semiinvariant f0.

use super::Ctx;
use crate::exactnum::{BivarPoly, Matrix, Rational, Ring, Scalar};
use crate::reptheory::{Family, KleinianGroup};
use rand::Rng;
use serde::de::Error as DeError;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// A Clebsch-Gordan datum: one block matrix per ordered irrep pair.
#[derive(Clone, PartialEq, Debug)]
pub struct CGDatum {
    group: KleinianGroup,
    blocks: BTreeMap<(usize, usize), Matrix<Scalar>>,
}

/// Version tag written into datum files; bump when the basis conventions or
/// the generic block normalization change.
pub const BASIS_VERSION: u32 = 1;

impl CGDatum {
    /// Builds a datum from complete blocks, validating every shape.
    pub fn new(group: KleinianGroup, blocks: BTreeMap<(usize, usize), Matrix<Scalar>>) -> Self {
        let ctx = Ctx::new(&group);
        let r = ctx.r();
        assert_eq!(blocks.len(), r * r, "datum must cover every irrep pair");
        for (&(i, j), m) in &blocks {
            assert!(i < r && j < r, "block index out of range");
            assert_eq!(
                (m.rows(), m.cols()),
                (ctx.block_rows(i, j), ctx.dim(i) * ctx.dim(j)),
                "block ({i},{j}) has the wrong shape"
            );
        }
        CGDatum { group, blocks }
    }

    pub fn group(&self) -> &KleinianGroup {
        &self.group
    }

    pub fn block(&self, i: usize, j: usize) -> &Matrix<Scalar> {
        &self.blocks[&(i, j)]
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &Matrix<Scalar>)> {
        self.blocks.iter()
    }

    pub fn set_block(&mut self, i: usize, j: usize, m: Matrix<Scalar>) {
        let ctx = Ctx::new(&self.group);
        assert_eq!(
            (m.rows(), m.cols()),
            (ctx.block_rows(i, j), ctx.dim(i) * ctx.dim(j)),
            "block ({i},{j}) has the wrong shape"
        );
        self.blocks.insert((i, j), m);
    }

    /// The component `U_i (x) U_j -> U_k`, when `c_ijk = 1`.
    pub fn component(&self, i: usize, j: usize, k: usize) -> Option<Matrix<Scalar>> {
        let ctx = Ctx::new(&self.group);
        let (_, offset) = ctx.row_layout(i, j).into_iter().find(|&(m, _)| m == k)?;
        let b = self.block(i, j);
        Some(b.block(offset, 0, ctx.dim(k), b.cols()))
    }

    /// Overwrites the component `U_i (x) U_j -> U_k`; panics if `c_ijk = 0`.
    pub fn set_component(&mut self, i: usize, j: usize, k: usize, m: Matrix<Scalar>) {
        let ctx = Ctx::new(&self.group);
        let (_, offset) = ctx
            .row_layout(i, j)
            .into_iter()
            .find(|&(l, _)| l == k)
            .unwrap_or_else(|| panic!("U_{k} does not occur in ({i},{j})"));
        assert_eq!((m.rows(), m.cols()), (ctx.dim(k), ctx.dim(i) * ctx.dim(j)));
        let mut b = self.block(i, j).clone();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                b[(offset + r, c)] = m[(r, c)].clone();
            }
        }
        self.blocks.insert((i, j), b);
    }

    pub fn approx_eq(&self, other: &CGDatum, tol: &str) -> bool {
        self.group == other.group
            && self
                .blocks
                .iter()
                .all(|(key, m)| m.approx_eq(&other.blocks[key], tol))
    }
}

impl Serialize for CGDatum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("family", &self.group.family().to_string())?;
        map.serialize_entry("n", &self.group.n())?;
        map.serialize_entry("basis_version", &BASIS_VERSION)?;
        let blocks: BTreeMap<String, &Matrix<Scalar>> = self
            .blocks
            .iter()
            .map(|(&(i, j), m)| (format!("{i},{j}"), m))
            .collect();
        map.serialize_entry("blocks", &blocks)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for CGDatum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        let family: Family = value
            .get("family")
            .and_then(|f| f.as_str())
            .ok_or_else(|| D::Error::custom("datum needs a family"))?
            .parse()
            .map_err(D::Error::custom)?;
        let n = value
            .get("n")
            .and_then(|n| n.as_u64())
            .ok_or_else(|| D::Error::custom("datum needs n"))? as u32;
        let version = value
            .get("basis_version")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| D::Error::custom("datum needs a basis_version"))?;
        if version != u64::from(BASIS_VERSION) {
            return Err(D::Error::custom(format!(
                "basis_version {version} unsupported (expected {BASIS_VERSION})"
            )));
        }
        let group = KleinianGroup::new(family, n).map_err(D::Error::custom)?;
        let blocks_json = value
            .get("blocks")
            .and_then(|b| b.as_object())
            .ok_or_else(|| D::Error::custom("datum needs blocks"))?;
        let mut blocks = BTreeMap::new();
        for (key, m) in blocks_json {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad block key {key:?}")))?;
            let matrix = crate::exactnum::matrix_from_json::<D::Error>(m)?;
            blocks.insert((i, j), matrix);
        }
        Ok(CGDatum::new(group, blocks))
    }
}

/// An element of the gauge group: one invertible matrix per irrep, with the
/// trivial-irrep component fixed to the 1x1 identity.
#[derive(Clone, PartialEq, Debug)]
pub struct GaugeElement {
    group: KleinianGroup,
    comps: Vec<Matrix<Scalar>>,
}

impl GaugeElement {
    pub fn new(group: KleinianGroup, comps: Vec<Matrix<Scalar>>) -> Self {
        let ctx = Ctx::new(&group);
        assert_eq!(comps.len(), ctx.r(), "one component per irrep");
        assert_eq!(comps[0], Matrix::identity(1), "trivial component must be 1");
        for (k, m) in comps.iter().enumerate() {
            assert!(m.is_square() && m.rows() == ctx.dim(k), "component {k} shape");
            assert!(m.is_invertible(), "component {k} is singular");
        }
        GaugeElement { group, comps }
    }

    /// Builds from the components at the nontrivial irreps `U_1, ..`.
    pub fn from_nontrivial(group: KleinianGroup, comps: Vec<Matrix<Scalar>>) -> Self {
        let mut full = vec![Matrix::identity(1)];
        full.extend(comps);
        GaugeElement::new(group, full)
    }

    /// Convenience for scalar components `(g_1, ..., g_r)` on the nontrivial
    /// one-dimensional irreps of a type A group.
    pub fn from_scalars(group: KleinianGroup, values: &[Scalar]) -> Self {
        let comps = values
            .iter()
            .map(|v| Matrix::new(1, 1, vec![v.clone()]))
            .collect();
        GaugeElement::from_nontrivial(group, comps)
    }

    pub fn identity(group: KleinianGroup) -> Self {
        let ctx = Ctx::new(&group);
        let comps = (0..ctx.r()).map(|k| Matrix::identity(ctx.dim(k))).collect();
        GaugeElement { group, comps }
    }

    pub fn group(&self) -> &KleinianGroup {
        &self.group
    }

    pub fn comp(&self, k: usize) -> &Matrix<Scalar> {
        &self.comps[k]
    }

    pub fn compose(&self, rhs: &GaugeElement) -> GaugeElement {
        assert_eq!(self.group, rhs.group);
        let comps = self
            .comps
            .iter()
            .zip(&rhs.comps)
            .map(|(a, b)| a.mul(b))
            .collect();
        GaugeElement {
            group: self.group,
            comps,
        }
    }

    pub fn inverse(&self) -> GaugeElement {
        let comps = self.comps.iter().map(|m| m.inverse()).collect();
        GaugeElement {
            group: self.group,
            comps,
        }
    }

    /// The character value `prod_v det(g_v)^(theta_v)` for exponents `theta`
    /// indexed by the nontrivial irreps.
    pub fn theta_value(&self, theta: &[i64]) -> Scalar {
        assert_eq!(theta.len(), self.comps.len() - 1);
        let mut out = Scalar::one();
        for (v, &e) in theta.iter().enumerate() {
            out = out.mul(&self.comps[v + 1].det().pow(e));
        }
        out
    }

    /// The action on the natural two-dimensional representation: componentwise
    /// scaling through `U_1, U_n` for type A, the `O_1` matrix for type D.
    pub fn act_c2(&self, x: &[Scalar; 2]) -> [Scalar; 2] {
        match self.group.family() {
            Family::A => {
                let g1 = &self.comps[1][(0, 0)];
                let gn = &self.comps[self.group.n() as usize][(0, 0)];
                [g1.mul(&x[0]), gn.mul(&x[1])]
            }
            Family::D => {
                let g = &self.comps[4];
                [
                    g[(0, 0)].mul(&x[0]).add(&g[(0, 1)].mul(&x[1])),
                    g[(1, 0)].mul(&x[0]).add(&g[(1, 1)].mul(&x[1])),
                ]
            }
        }
    }

    /// The same action on coordinates left symbolic.
    pub fn act_c2_poly(&self, x: &[BivarPoly; 2]) -> [BivarPoly; 2] {
        match self.group.family() {
            Family::A => {
                let g1 = &self.comps[1][(0, 0)];
                let gn = &self.comps[self.group.n() as usize][(0, 0)];
                [x[0].scale(g1), x[1].scale(gn)]
            }
            Family::D => {
                let g = &self.comps[4];
                [
                    x[0].scale(&g[(0, 0)]).add(&x[1].scale(&g[(0, 1)])),
                    x[0].scale(&g[(1, 0)]).add(&x[1].scale(&g[(1, 1)])),
                ]
            }
        }
    }
}

/// The gauge action `(g phi)_(i,j) = ((+)_k g_k) phi_(i,j) (g_i^-1 (x) g_j^-1)`.
pub fn gauge_act(g: &GaugeElement, phi: &CGDatum) -> CGDatum {
    assert_eq!(g.group(), phi.group());
    let ctx = Ctx::new(phi.group());
    let inverses: Vec<Matrix<Scalar>> = (0..ctx.r()).map(|k| g.comp(k).inverse()).collect();
    let mut blocks = BTreeMap::new();
    for (&(i, j), m) in phi.blocks() {
        let codomain: Vec<Matrix<Scalar>> =
            ctx.comps(i, j).iter().map(|&k| g.comp(k).clone()).collect();
        let out = Matrix::direct_sum(&codomain)
            .mul(m)
            .mul(&inverses[i].kron(&inverses[j]));
        blocks.insert((i, j), out);
    }
    CGDatum {
        group: *phi.group(),
        blocks,
    }
}

/// The product of block determinants `prod det(phi_(i,j))^(dim U_i dim U_j)`.
pub fn f0(phi: &CGDatum) -> Scalar {
    let ctx = Ctx::new(phi.group());
    let mut out = Scalar::one();
    for (&(i, j), m) in phi.blocks() {
        let e = (ctx.dim(i) * ctx.dim(j)) as i64;
        let d = m.det();
        if d.is_zero() {
            return Scalar::zero();
        }
        out = out.mul(&d.pow(e));
    }
    out
}

/// A random gauge element with small exact rational entries, suitable for
/// property tests; components are retried until invertible.
pub fn random_gauge<R: Rng>(group: &KleinianGroup, rng: &mut R) -> GaugeElement {
    let ctx = Ctx::new(group);
    let mut comps = vec![Matrix::identity(1)];
    for k in 1..ctx.r() {
        let d = ctx.dim(k);
        loop {
            let mut m = Matrix::zero(d, d);
            for r in 0..d {
                for c in 0..d {
                    let num = rng.gen_range(-6i64..=6);
                    let den = rng.gen_range(1i64..=2);
                    m[(r, c)] = Scalar::Rat(Rational::new(num, den));
                }
            }
            if m.is_invertible() {
                comps.push(m);
                break;
            }
        }
    }
    GaugeElement::new(*group, comps)
}

/// Per-block result of an equivariance/invertibility scan.
#[derive(Clone, Debug)]
pub struct BlockReport {
    pub pair: (usize, usize),
    pub equivariant: bool,
    pub invertible: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgvariety::phi0;
    use rand::SeedableRng;

    #[test]
    fn gauge_action_is_a_group_action() {
        let group = KleinianGroup::d(5);
        let phi = phi0(&group);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g = random_gauge(&group, &mut rng);
        let h = random_gauge(&group, &mut rng);
        let gh = g.compose(&h);
        assert_eq!(gauge_act(&gh, &phi), gauge_act(&g, &gauge_act(&h, &phi)));
        assert_eq!(gauge_act(&GaugeElement::identity(group), &phi), phi);
        assert_eq!(gauge_act(&g.inverse(), &gauge_act(&g, &phi)), phi);
    }

    #[test]
    fn a2_gauge_example() {
        let group = KleinianGroup::a(2);
        let phi = phi0(&group);
        let g = GaugeElement::from_scalars(group, &[Scalar::from_int(2), Scalar::from_int(1)]);
        let moved = gauge_act(&g, &phi);
        assert_eq!(moved.block(1, 1)[(0, 0)], Scalar::from_rational(1, 4));
        assert_eq!(f0(&moved), Scalar::from_rational(1, 8));
    }

    #[test]
    fn datum_json_round_trip() {
        for group in [KleinianGroup::a(3), KleinianGroup::d(5)] {
            let phi = phi0(&group);
            let text = serde_json::to_string(&phi).unwrap();
            let back: CGDatum = serde_json::from_str(&text).unwrap();
            assert_eq!(phi, back);
        }
    }

    #[test]
    fn component_round_trip() {
        let group = KleinianGroup::d(6);
        let mut phi = phi0(&group);
        let m = phi.component(4, 4, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 4));
        let replacement = Matrix::zero(1, 4);
        phi.set_component(4, 4, 0, replacement.clone());
        assert_eq!(phi.component(4, 4, 0).unwrap(), replacement);
        assert_eq!(f0(&phi), Scalar::zero());
    }
}
