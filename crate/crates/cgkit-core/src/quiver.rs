//! Kleinian double quivers, representations, and the comparison map.
//!
//! Vertices are the irreducibles in their fixed order, so the trivial one is
//! the special vertex 0. Arrows carry the 1-based labels `A_1, A_2, ...`; each
//! has a starred partner running the other way. The dimension vector is the
//! vector of irreducible dimensions.
//!
//! A representation assigns to every arrow a matrix of polynomials in the
//! plane coordinates, so the preprojective relations can be checked as
//! polynomial identities rather than at sample points.

use crate::cgvariety::{CGDatum, GaugeElement};
use crate::exactnum::{BivarPoly, Matrix, Ring, Scalar};
use crate::reptheory::{CGTable, Family, KleinianGroup};
use serde::de::Error as DeError;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An unstarred arrow; its star runs from `head` back to `tail`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    /// 1-based label, as in `A_3`.
    pub index: usize,
    pub tail: usize,
    pub head: usize,
}

/// The double quiver of a Kleinian group.
#[derive(Clone, Debug, PartialEq)]
pub struct KleinianQuiver {
    group: KleinianGroup,
    arrows: Vec<Arrow>,
    alpha: Vec<usize>,
}

/// Builds the quiver of the group and cross-checks its arrow counts against
/// the tensor decomposition with the natural representation.
pub fn build_quiver(group: &KleinianGroup) -> KleinianQuiver {
    let n = group.n() as usize;
    let alpha: Vec<usize> = group.irreps().iter().map(|r| r.dim() as usize).collect();
    let arrows = match group.family() {
        Family::A => (1..=n + 1)
            .map(|i| Arrow {
                index: i,
                tail: i - 1,
                head: i % (n + 1),
            })
            .collect(),
        Family::D => {
            // E_1, E_2 feed the two-dimensional chain; the chain ends on E_3, E_4.
            // For n = 4 the chain is the single vertex O_1 (= vertex n).
            let mut arrows = vec![
                Arrow { index: 1, tail: 0, head: 4 },
                Arrow { index: 2, tail: 1, head: 4 },
            ];
            for k in 3..=n - 2 {
                arrows.push(Arrow {
                    index: k,
                    tail: k + 1,
                    head: k + 2,
                });
            }
            arrows.push(Arrow { index: n - 1, tail: n, head: 2 });
            arrows.push(Arrow { index: n, tail: n, head: 3 });
            arrows
        }
    };
    let quiver = KleinianQuiver {
        group: *group,
        arrows,
        alpha,
    };
    assert!(
        quiver.arrow_counts_match_tensor_dimensions(),
        "quiver arrows for {group} disagree with the tensor decomposition"
    );
    quiver
}

impl KleinianQuiver {
    pub fn group(&self) -> &KleinianGroup {
        &self.group
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// The dimension vector (one entry per vertex, special vertex first).
    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn vertex_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn special_vertex(&self) -> usize {
        0
    }

    /// Arrows of the double quiver from `v` to `w` (stars included).
    pub fn double_arrow_count(&self, v: usize, w: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| (a.tail == v && a.head == w) || (a.head == v && a.tail == w))
            .count()
    }

    fn arrow_counts_match_tensor_dimensions(&self) -> bool {
        let table = CGTable::shared(&self.group);
        let nat = self.group.natural_rep();
        let r = self.alpha.len();
        for v in 0..r {
            for w in 0..r {
                let hom: usize = nat.iter().map(|&c| table.coefficient(v, c, w) as usize).sum();
                if self.double_arrow_count(v, w) != hom {
                    return false;
                }
            }
        }
        true
    }
}

/// A representation of the double quiver with polynomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep {
    quiver: KleinianQuiver,
    rho: Vec<Matrix<BivarPoly>>,
    rho_star: Vec<Matrix<BivarPoly>>,
}

impl QuiverRep {
    /// Wraps matrices for the arrows (and stars) in quiver order, validating
    /// shapes against the dimension vector.
    pub fn new(
        quiver: KleinianQuiver,
        rho: Vec<Matrix<BivarPoly>>,
        rho_star: Vec<Matrix<BivarPoly>>,
    ) -> Self {
        assert_eq!(rho.len(), quiver.arrows.len());
        assert_eq!(rho_star.len(), quiver.arrows.len());
        for (pos, a) in quiver.arrows.iter().enumerate() {
            let (dt, dh) = (quiver.alpha[a.tail], quiver.alpha[a.head]);
            assert_eq!(
                (rho[pos].rows(), rho[pos].cols()),
                (dh, dt),
                "arrow A_{} must be {}x{}",
                a.index,
                dh,
                dt
            );
            assert_eq!(
                (rho_star[pos].rows(), rho_star[pos].cols()),
                (dt, dh),
                "arrow A_{}* must be {}x{}",
                a.index,
                dt,
                dh
            );
        }
        QuiverRep {
            quiver,
            rho,
            rho_star,
        }
    }

    pub fn quiver(&self) -> &KleinianQuiver {
        &self.quiver
    }

    fn position(&self, index: usize) -> usize {
        self.quiver
            .arrows
            .iter()
            .position(|a| a.index == index)
            .unwrap_or_else(|| panic!("no arrow A_{index}"))
    }

    /// The matrix of `A_index`.
    pub fn rho(&self, index: usize) -> &Matrix<BivarPoly> {
        &self.rho[self.position(index)]
    }

    /// The matrix of `A_index*`.
    pub fn rho_star(&self, index: usize) -> &Matrix<BivarPoly> {
        &self.rho_star[self.position(index)]
    }

    /// Evaluates every entry at a point of the plane.
    pub fn specialize(&self, x: &[Scalar; 2]) -> QuiverRep {
        let eval = |m: &Matrix<BivarPoly>| {
            m.map(|p| BivarPoly::from_scalar(p.eval(&x[0], &x[1])))
        };
        QuiverRep {
            quiver: self.quiver.clone(),
            rho: self.rho.iter().map(eval).collect(),
            rho_star: self.rho_star.iter().map(eval).collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.rho
            .iter()
            .chain(&self.rho_star)
            .all(|m| m.data().iter().all(|p| p.total_degree().unwrap_or(0) == 0))
    }

    /// The constant matrices of a specialized representation.
    pub fn constant_matrices(&self) -> Vec<(Matrix<Scalar>, Matrix<Scalar>)> {
        assert!(self.is_constant(), "representation still has symbolic entries");
        let num = |m: &Matrix<BivarPoly>| m.map(|p| p.coefficient(0, 0));
        self.rho
            .iter()
            .zip(&self.rho_star)
            .map(|(a, b)| (num(a), num(b)))
            .collect()
    }
}

/// The comparison map: turns a Clebsch-Gordan datum and a plane point into a
/// quiver representation, `A: v -> w` getting the `U_w`-component of
/// `phi_(v, nat)(- (x) x)`.
pub fn comparison_r(phi: &CGDatum, x: &[BivarPoly; 2]) -> QuiverRep {
    let quiver = build_quiver(phi.group());
    let n = phi.group().n() as usize;
    let mut rho = Vec::new();
    let mut rho_star = Vec::new();
    match phi.group().family() {
        Family::A => {
            // A_i picks up the U_1 coordinate, A_i* the U_n coordinate.
            for a in &quiver.arrows {
                let fwd = phi.block(a.tail, 1)[(0, 0)].clone();
                let bwd = phi.block(a.head, n)[(0, 0)].clone();
                rho.push(Matrix::new(1, 1, vec![x[0].scale(&fwd)]));
                rho_star.push(Matrix::new(1, 1, vec![x[1].scale(&bwd)]));
            }
        }
        Family::D => {
            for a in &quiver.arrows {
                rho.push(transition(phi, &quiver, x, a.tail, a.head));
                rho_star.push(transition(phi, &quiver, x, a.head, a.tail));
            }
        }
    }
    QuiverRep::new(quiver, rho, rho_star)
}

/// `pi_(U_w) of phi_(v, O_1)(- (x) x)` for adjacent vertices of a type-D quiver.
fn transition(
    phi: &CGDatum,
    quiver: &KleinianQuiver,
    x: &[BivarPoly; 2],
    v: usize,
    w: usize,
) -> Matrix<BivarPoly> {
    let rows = phi
        .component(v, 4, w)
        .unwrap_or_else(|| panic!("no component U_{w} in U_{v} (x) O_1"));
    let dv = quiver.alpha[v];
    let mut tensor = Matrix::<BivarPoly>::zero(2 * dv, dv);
    for a in 0..dv {
        for b in 0..2 {
            tensor[(2 * a + b, a)] = x[b].clone();
        }
    }
    rows.map(|s| BivarPoly::from_scalar(s.clone())).mul(&tensor)
}

/// The gauge action on representations: `A: v -> w` maps to `g_w rho_A g_v^-1`.
pub fn gauge_act_rep(g: &GaugeElement, rep: &QuiverRep) -> QuiverRep {
    assert_eq!(g.group(), rep.quiver.group());
    let lift = |m: &Matrix<Scalar>| m.map(|s| BivarPoly::from_scalar(s.clone()));
    let act = |m: &Matrix<BivarPoly>, tail: usize, head: usize| {
        lift(g.comp(head))
            .mul(m)
            .mul(&lift(&g.comp(tail).inverse()))
    };
    QuiverRep {
        quiver: rep.quiver.clone(),
        rho: rep
            .quiver
            .arrows
            .iter()
            .zip(&rep.rho)
            .map(|(a, m)| act(m, a.tail, a.head))
            .collect(),
        rho_star: rep
            .quiver
            .arrows
            .iter()
            .zip(&rep.rho_star)
            .map(|(a, m)| act(m, a.head, a.tail))
            .collect(),
    }
}

/// Per-vertex residuals of the preprojective (moment-map) relation
/// `sum_(head(a) = v) rho_a rho_a* - sum_(tail(a) = v) rho_a* rho_a`.
pub struct PreprojectiveReport {
    pub residuals: Vec<Matrix<BivarPoly>>,
}

impl PreprojectiveReport {
    pub fn is_zero(&self) -> bool {
        self.residuals.iter().all(|m| m.is_zero())
    }

    pub fn failing_vertices(&self) -> Vec<usize> {
        self.residuals
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(v, _)| v)
            .collect()
    }
}

pub fn check_preprojective(rep: &QuiverRep) -> PreprojectiveReport {
    let quiver = &rep.quiver;
    let mut residuals: Vec<Matrix<BivarPoly>> = quiver
        .alpha
        .iter()
        .map(|&d| Matrix::zero(d, d))
        .collect();
    for (pos, a) in quiver.arrows.iter().enumerate() {
        let fwd = &rep.rho[pos];
        let bwd = &rep.rho_star[pos];
        residuals[a.head] = residuals[a.head].add(&fwd.mul(bwd));
        residuals[a.tail] = residuals[a.tail].sub(&bwd.mul(fwd));
    }
    PreprojectiveReport { residuals }
}

/// A stability parameter: one integer weight per nontrivial vertex, with the
/// special-vertex weight induced so the full vector pairs to zero with alpha.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaParam {
    group: KleinianGroup,
    weights: Vec<i64>,
}

impl ThetaParam {
    pub fn new(group: &KleinianGroup, weights: Vec<i64>) -> Self {
        assert_eq!(weights.len() + 1, group.irreps().len());
        ThetaParam {
            group: *group,
            weights,
        }
    }

    /// The negative dimension vector off the special vertex.
    pub fn theta1(group: &KleinianGroup) -> Self {
        let weights = group.irreps()[1..]
            .iter()
            .map(|r| -(r.dim() as i64))
            .collect();
        ThetaParam::new(group, weights)
    }

    /// All ones off the special vertex.
    pub fn theta2(group: &KleinianGroup) -> Self {
        let count = group.irreps().len() - 1;
        ThetaParam::new(group, vec![1; count])
    }

    pub fn group(&self) -> &KleinianGroup {
        &self.group
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// The induced weight at the special vertex.
    pub fn theta0(&self) -> i64 {
        let alpha: Vec<i64> = self.group.irreps().iter().map(|r| r.dim() as i64).collect();
        -self
            .weights
            .iter()
            .zip(&alpha[1..])
            .map(|(w, a)| w * a)
            .sum::<i64>()
    }

    /// The full weight vector, special vertex first.
    pub fn full_vector(&self) -> Vec<i64> {
        let mut out = vec![self.theta0()];
        out.extend(&self.weights);
        out
    }

    /// Pairs the full vector with a dimension vector.
    pub fn pair(&self, dims: &[usize]) -> i64 {
        self.full_vector()
            .iter()
            .zip(dims)
            .map(|(w, &d)| w * d as i64)
            .sum()
    }
}

/// Result of the generation test behind theta_2-semistability.
#[derive(Clone, Debug)]
pub struct KingReport {
    pub semistable: bool,
    /// Dimension vector of the subrepresentation generated by the full space
    /// at the special vertex.
    pub generated: Vec<usize>,
}

/// Incremental span with exact Gaussian elimination.
struct Span {
    /// Reduced rows, each normalized to a leading 1 at its pivot column.
    rows: Vec<Vec<Scalar>>,
}

impl Span {
    fn new(_dim: usize) -> Self {
        Span { rows: Vec::new() }
    }

    fn full(dim: usize) -> Self {
        let mut s = Span::new(dim);
        for i in 0..dim {
            let mut v = vec![Scalar::zero(); dim];
            v[i] = Scalar::one();
            s.rows.push(v);
        }
        s
    }

    fn pivot(row: &[Scalar]) -> usize {
        row.iter().position(|c| !c.is_zero()).unwrap()
    }

    /// Reduces `v` against the span; if independent, absorbs it and returns true.
    fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        for row in &self.rows {
            let p = Span::pivot(row);
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = vi.sub(&c.mul(ri));
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => false,
            Some(p) => {
                let inv = v[p].inv();
                for vi in v.iter_mut() {
                    *vi = vi.mul(&inv);
                }
                self.rows.push(v);
                true
            }
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Decides theta_2-semistability of a specialized representation by the
/// generation criterion: a destabilizing subrepresentation must contain the
/// full special-vertex space (every other weight is positive), and the subrep
/// generated by that space is the smallest one containing it; the point is
/// semistable exactly when this subrep is everything.
pub fn is_theta2_semistable(rep: &QuiverRep) -> KingReport {
    let mats = rep.constant_matrices();
    let quiver = &rep.quiver;
    let mut spans: Vec<Span> = quiver.alpha.iter().map(|&d| Span::new(d)).collect();
    spans[quiver.special_vertex()] = Span::full(quiver.alpha[quiver.special_vertex()]);
    let apply = |m: &Matrix<Scalar>, v: &[Scalar]| -> Vec<Scalar> {
        (0..m.rows())
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, c) in v.iter().enumerate() {
                    acc = acc.add(&m[(i, j)].mul(c));
                }
                acc
            })
            .collect()
    };
    loop {
        let mut grew = false;
        for (pos, a) in quiver.arrows.iter().enumerate() {
            let (fwd, bwd) = &mats[pos];
            let tail_rows: Vec<Vec<Scalar>> = spans[a.tail].rows.clone();
            for v in tail_rows {
                grew |= spans[a.head].insert(apply(fwd, &v));
            }
            let head_rows: Vec<Vec<Scalar>> = spans[a.head].rows.clone();
            for v in head_rows {
                grew |= spans[a.tail].insert(apply(bwd, &v));
            }
        }
        if !grew {
            break;
        }
    }
    let generated: Vec<usize> = spans.iter().map(|s| s.dim()).collect();
    KingReport {
        semistable: generated == quiver.alpha,
        generated,
    }
}

impl Serialize for QuiverRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("family", &self.quiver.group.family().to_string())?;
        map.serialize_entry("n", &self.quiver.group.n())?;
        #[derive(Serialize)]
        struct ArrowBody<'a> {
            index: usize,
            rho: &'a Matrix<BivarPoly>,
            rho_star: &'a Matrix<BivarPoly>,
        }
        let arrows: Vec<ArrowBody> = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(pos, a)| ArrowBody {
                index: a.index,
                rho: &self.rho[pos],
                rho_star: &self.rho_star[pos],
            })
            .collect();
        map.serialize_entry("arrows", &arrows)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for QuiverRep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        let family: Family = value
            .get("family")
            .and_then(|f| f.as_str())
            .ok_or_else(|| D::Error::custom("missing family"))?
            .parse()
            .map_err(D::Error::custom)?;
        let n = value
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| D::Error::custom("missing n"))? as u32;
        let group = match family {
            Family::A => KleinianGroup::a(n),
            Family::D => KleinianGroup::d(n),
        };
        let quiver = build_quiver(&group);
        let arrows = value
            .get("arrows")
            .and_then(|a| a.as_array())
            .ok_or_else(|| D::Error::custom("missing arrows"))?;
        if arrows.len() != quiver.arrows.len() {
            return Err(D::Error::custom("wrong arrow count"));
        }
        let mut rho = vec![None; quiver.arrows.len()];
        let mut rho_star = vec![None; quiver.arrows.len()];
        for body in arrows {
            let index = body
                .get("index")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| D::Error::custom("arrow needs an index"))?
                as usize;
            let pos = quiver
                .arrows
                .iter()
                .position(|a| a.index == index)
                .ok_or_else(|| D::Error::custom(format!("no arrow A_{index}")))?;
            let get = |key: &str| -> Result<Matrix<BivarPoly>, D::Error> {
                let v = body
                    .get(key)
                    .ok_or_else(|| D::Error::custom(format!("arrow missing {key}")))?;
                serde_json::from_value(v.clone()).map_err(D::Error::custom)
            };
            rho[pos] = Some(get("rho")?);
            rho_star[pos] = Some(get("rho_star")?);
        }
        let rho: Vec<Matrix<BivarPoly>> = rho
            .into_iter()
            .map(|m| m.ok_or_else(|| D::Error::custom("missing arrow matrix")))
            .collect::<Result<_, _>>()?;
        let rho_star: Vec<Matrix<BivarPoly>> = rho_star
            .into_iter()
            .map(|m| m.ok_or_else(|| D::Error::custom("missing starred matrix")))
            .collect::<Result<_, _>>()?;
        Ok(QuiverRep::new(quiver, rho, rho_star))
    }
}

/// The symbolic coordinate pair `(x_1, x_2)`.
pub fn symbolic_x() -> [BivarPoly; 2] {
    [BivarPoly::x(), BivarPoly::y()]
}

/// Lifts a numeric point to constant polynomials.
pub fn constant_x(x: &[Scalar; 2]) -> [BivarPoly; 2] {
    [
        BivarPoly::from_scalar(x[0].clone()),
        BivarPoly::from_scalar(x[1].clone()),
    ]
}
