//! Finite subgroups of SL2 of types A and D, their irreducible
//! representations, characters, and tensor-product multiplicities.
//!
//! Type A with parameter `n` is the cyclic group of order `n + 1`; type D
//! with parameter `n` is the binary dihedral group of order `4(n - 2)` with
//! presentation `a^(2(n-2)) = 1`, `x^2 = a^(n-2)`, `x^(-1) a x = a^(-1)`.
//!
//! Irreducible representations are listed in a fixed order used everywhere
//! downstream: type A lists the characters `U_0, ..., U_n` (tensor product
//! adds indices mod `n + 1`); type D lists `E_1, E_2, E_3, E_4` followed by
//! the two-dimensional `V_1, ..., V_(n-3)`, where odd-index `V_k` are written
//! `O_k` and even-index ones `I_k`. The natural two-dimensional representation
//! is `U_1 + U_n` for type A and `V_1 = O_1` for type D.

use crate::exactnum::{Matrix, Ring, Scalar};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// The two simply-laced families handled by this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    A,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            other => Err(format!("unknown family {other:?}, expected A or D")),
        }
    }
}

/// A Kleinian group of type `A_n` (n >= 1) or `D_n` (n >= 4).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct KleinianGroup {
    family: Family,
    n: u32,
}

/// Group element in normal form: `sigma^k` for type A, `a^j x^s` for type D.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupElement {
    A { k: u32 },
    D { j: u32, s: bool },
}

impl KleinianGroup {
    pub fn new(family: Family, n: u32) -> Result<Self, String> {
        match family {
            Family::A if n >= 1 => Ok(KleinianGroup { family, n }),
            Family::A => Err("type A requires n >= 1".into()),
            Family::D if n >= 4 => Ok(KleinianGroup { family, n }),
            Family::D => Err("type D requires n >= 4".into()),
        }
    }

    pub fn a(n: u32) -> Self {
        KleinianGroup::new(Family::A, n).unwrap()
    }

    pub fn d(n: u32) -> Self {
        KleinianGroup::new(Family::D, n).unwrap()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        match self.family {
            Family::A => self.n + 1,
            Family::D => 4 * (self.n - 2),
        }
    }

    /// Order of the rotation generator: `n + 1` for `sigma`, `2(n - 2)` for `a`.
    pub fn rotation_order(&self) -> u32 {
        match self.family {
            Family::A => self.n + 1,
            Family::D => 2 * (self.n - 2),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self.family {
            Family::A => GroupElement::A { k: 0 },
            Family::D => GroupElement::D { j: 0, s: false },
        }
    }

    /// All elements in normal form.
    pub fn elements(&self) -> Vec<GroupElement> {
        match self.family {
            Family::A => (0..self.order()).map(|k| GroupElement::A { k }).collect(),
            Family::D => {
                let m = self.rotation_order();
                let mut out = Vec::with_capacity(self.order() as usize);
                for s in [false, true] {
                    for j in 0..m {
                        out.push(GroupElement::D { j, s });
                    }
                }
                out
            }
        }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        match self.family {
            Family::A => vec![GroupElement::A { k: 1 }],
            Family::D => vec![
                GroupElement::D { j: 1, s: false },
                GroupElement::D { j: 0, s: true },
            ],
        }
    }

    /// Product in normal form, using `x a^j = a^(-j) x` and `x^2 = a^(n-2)`.
    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        match (self.family, g, h) {
            (Family::A, GroupElement::A { k: k1 }, GroupElement::A { k: k2 }) => GroupElement::A {
                k: (k1 + k2) % self.order(),
            },
            (Family::D, GroupElement::D { j: j1, s: s1 }, GroupElement::D { j: j2, s: s2 }) => {
                let m = self.rotation_order();
                // a^j1 x^s1 a^j2 x^s2 = a^(j1 + (-1)^s1 j2) x^(s1+s2), with
                // x^2 = a^(n-2) folded in when s1 = s2 = 1.
                let j2s = if s1 { (m - j2) % m } else { j2 };
                let mut j = (j1 + j2s) % m;
                let s = s1 ^ s2;
                if s1 && s2 {
                    j = (j + (self.n - 2)) % m;
                }
                GroupElement::D { j, s }
            }
            _ => panic!("element family mismatch"),
        }
    }

    pub fn inv(&self, g: GroupElement) -> GroupElement {
        match (self.family, g) {
            (Family::A, GroupElement::A { k }) => GroupElement::A {
                k: (self.order() - k) % self.order(),
            },
            (Family::D, GroupElement::D { j, s }) => {
                let m = self.rotation_order();
                if !s {
                    GroupElement::D { j: (m - j) % m, s }
                } else {
                    // (a^j x)^(-1) = x^(-1) a^(-j) = a^(j - (n-2)) x.
                    GroupElement::D {
                        j: (j + m - (self.n - 2)) % m,
                        s,
                    }
                }
            }
            _ => panic!("element family mismatch"),
        }
    }

    pub fn irreps(&self) -> Vec<Irrep> {
        irreps_of(self)
    }

    /// Indices (into the fixed irrep order) of the summands of the natural
    /// two-dimensional representation.
    pub fn natural_rep(&self) -> Vec<usize> {
        match self.family {
            Family::A => vec![1, self.n as usize],
            Family::D => vec![4],
        }
    }
}

impl fmt::Display for KleinianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.n)
    }
}

/// Label of an irreducible representation in the fixed order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IrrepLabel {
    /// Type A character `U_k`.
    U(u32),
    /// Type D one-dimensional `E_1..E_4`.
    E(u8),
    /// Type D two-dimensional `V_k` (odd `k` of O kind, even of I kind).
    V(u32),
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::U(k) => write!(f, "U_{}", k),
            IrrepLabel::E(i) => write!(f, "E_{}", i),
            IrrepLabel::V(k) => {
                if k % 2 == 1 {
                    write!(f, "O_{}", k)
                } else {
                    write!(f, "I_{}", k)
                }
            }
        }
    }
}

/// An irreducible representation of a Kleinian group.
#[derive(Clone)]
pub struct Irrep {
    group: KleinianGroup,
    label: IrrepLabel,
    dim: u32,
}

impl Irrep {
    pub fn label(&self) -> IrrepLabel {
        self.label
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn name(&self) -> String {
        self.label.to_string()
    }

    /// Representing matrix of a group element.
    pub fn matrix(&self, g: &GroupElement) -> Matrix<Scalar> {
        match (self.label, g) {
            (IrrepLabel::U(i), GroupElement::A { k }) => {
                let m = self.group.order();
                Matrix::new(
                    1,
                    1,
                    vec![Scalar::root_of_unity(m, (i as i64) * (*k as i64))],
                )
            }
            (IrrepLabel::E(e), GroupElement::D { j, s }) => {
                let n = self.group.n;
                let a_val: Scalar = match e {
                    1 | 2 => Scalar::one(),
                    _ => Scalar::from_int(-1),
                };
                let x_val: Scalar = match (e, n % 2 == 0) {
                    (1, _) => Scalar::one(),
                    (2, _) => Scalar::from_int(-1),
                    (3, true) => Scalar::one(),
                    (4, true) => Scalar::from_int(-1),
                    // For odd n the relation x^2 = a^(n-2) = -1 on E_3, E_4
                    // forces imaginary values of x.
                    (3, false) => Scalar::i(),
                    (4, false) => Scalar::i().neg(),
                    _ => unreachable!(),
                };
                let mut v = a_val.pow(*j as i64);
                if *s {
                    v = v.mul(&x_val);
                }
                Matrix::new(1, 1, vec![v])
            }
            (IrrepLabel::V(k), GroupElement::D { j, s }) => {
                let m = self.group.rotation_order();
                let e = (k as i64) * (*j as i64);
                let mut mat = Matrix::zero(2, 2);
                if !*s {
                    mat[(0, 0)] = Scalar::root_of_unity(m, e);
                    mat[(1, 1)] = Scalar::root_of_unity(m, -e);
                } else {
                    // rho(a^j) * rho(x) with rho(x) = (0 -1; 1 0) for odd k
                    // and (0 1; 1 0) for even k.
                    let upper = if k % 2 == 1 {
                        Scalar::root_of_unity(m, e).neg()
                    } else {
                        Scalar::root_of_unity(m, e)
                    };
                    mat[(0, 1)] = upper;
                    mat[(1, 0)] = Scalar::root_of_unity(m, -e);
                }
                mat
            }
            _ => panic!("element/irrep family mismatch"),
        }
    }

    pub fn character(&self, g: &GroupElement) -> Scalar {
        self.matrix(g).trace()
    }
}

/// The irreducible representations in the crate-wide fixed order.
pub fn irreps_of(group: &KleinianGroup) -> Vec<Irrep> {
    match group.family() {
        Family::A => (0..=group.n())
            .map(|k| Irrep {
                group: *group,
                label: IrrepLabel::U(k),
                dim: 1,
            })
            .collect(),
        Family::D => {
            let mut out: Vec<Irrep> = (1..=4)
                .map(|e| Irrep {
                    group: *group,
                    label: IrrepLabel::E(e),
                    dim: 1,
                })
                .collect();
            for k in 1..=(group.n() - 3) {
                out.push(Irrep {
                    group: *group,
                    label: IrrepLabel::V(k),
                    dim: 2,
                });
            }
            out
        }
    }
}

/// Tensor-product multiplicity `c_ijk = dim Hom(U_k, U_i (x) U_j)`, computed
/// exactly from characters. Panics if the character sum is not a non-negative
/// integer (an internal invariant breach).
pub fn cg_coefficient(group: &KleinianGroup, i: usize, j: usize, k: usize) -> u32 {
    let irreps = irreps_of(group);
    let mut acc = Scalar::zero();
    for g in group.elements() {
        let term = irreps[i]
            .character(&g)
            .mul(&irreps[j].character(&g))
            .mul(&irreps[k].character(&g).conj());
        acc = acc.add(&term);
    }
    let total = acc.mul(&Scalar::from_rational(1, group.order() as i64));
    let as_int = total
        .as_rational()
        .and_then(|r| r.as_i64())
        .unwrap_or_else(|| panic!("non-integer multiplicity for ({i},{j},{k}): {total:?}"));
    assert!(as_int >= 0, "negative multiplicity for ({i},{j},{k})");
    as_int as u32
}

/// Full table of tensor-product multiplicities.
///
/// Every product for these groups is multiplicity-free; the constructor
/// asserts `c_ijk <= 1` so downstream code may index components by irrep.
#[derive(Clone)]
pub struct CGTable {
    group: KleinianGroup,
    c: Vec<Vec<Vec<u32>>>,
}

static TABLE_CACHE: Lazy<Mutex<HashMap<(Family, u32), Arc<CGTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

impl CGTable {
    /// Cached table for a group; the computation is pure, so sharing is safe.
    pub fn shared(group: &KleinianGroup) -> Arc<CGTable> {
        let key = (group.family(), group.n());
        let mut cache = TABLE_CACHE.lock().unwrap();
        cache
            .entry(key)
            .or_insert_with(|| Arc::new(CGTable::new(group)))
            .clone()
    }

    pub fn new(group: &KleinianGroup) -> Self {
        let irreps = irreps_of(group);
        let r = irreps.len();
        let mut c = vec![vec![vec![0u32; r]; r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut total = 0u32;
                for (k, irrep_k) in irreps.iter().enumerate() {
                    let m = cg_coefficient(group, i, j, k);
                    assert!(m <= 1, "product ({i},{j}) not multiplicity-free at {k}");
                    c[i][j][k] = m;
                    total += m * irrep_k.dim();
                }
                assert_eq!(
                    total,
                    irreps[i].dim() * irreps[j].dim(),
                    "incomplete decomposition for ({i},{j})"
                );
            }
        }
        CGTable { group: *group, c }
    }

    pub fn group(&self) -> &KleinianGroup {
        &self.group
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> u32 {
        self.c[i][j][k]
    }

    /// Irrep indices occurring in `U_i (x) U_j`, in the fixed order.
    pub fn components(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.c[i][j].len())
            .filter(|&k| self.c[i][j][k] == 1)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_axioms_hold() {
        for group in [KleinianGroup::a(4), KleinianGroup::d(5), KleinianGroup::d(6)] {
            let els = group.elements();
            assert_eq!(els.len(), group.order() as usize);
            for &g in &els {
                assert_eq!(group.mul(g, group.inv(g)), group.identity());
                for &h in &els {
                    // Closure plus associativity spot check against a third element.
                    let gh = group.mul(g, h);
                    assert!(els.contains(&gh));
                }
            }
        }
    }

    #[test]
    fn binary_dihedral_presentation() {
        for n in 4..=9 {
            let group = KleinianGroup::d(n);
            let a = GroupElement::D { j: 1, s: false };
            let x = GroupElement::D { j: 0, s: true };
            // a^(2(n-2)) = 1
            let mut p = group.identity();
            for _ in 0..2 * (n - 2) {
                p = group.mul(p, a);
            }
            assert_eq!(p, group.identity());
            // x^2 = a^(n-2)
            let x2 = group.mul(x, x);
            assert_eq!(
                x2,
                GroupElement::D {
                    j: n - 2,
                    s: false
                }
            );
            // x^(-1) a x = a^(-1)
            let conj = group.mul(group.mul(group.inv(x), a), x);
            assert_eq!(conj, group.inv(a));
        }
    }

    #[test]
    fn irreps_are_homomorphisms() {
        for group in [KleinianGroup::a(3), KleinianGroup::d(4), KleinianGroup::d(5), KleinianGroup::d(6), KleinianGroup::d(7)] {
            for irrep in group.irreps() {
                for &g in &group.elements() {
                    for &h in &group.elements() {
                        let lhs = irrep.matrix(&group.mul(g, h));
                        let rhs = irrep.matrix(&g).mul(&irrep.matrix(&h));
                        assert_eq!(lhs, rhs, "{} at {:?} {:?}", irrep.name(), g, h);
                    }
                }
            }
        }
    }

    #[test]
    fn sum_of_squared_dims_is_group_order() {
        for group in [
            KleinianGroup::a(1),
            KleinianGroup::a(7),
            KleinianGroup::d(4),
            KleinianGroup::d(9),
            KleinianGroup::d(10),
        ] {
            let total: u32 = group.irreps().iter().map(|r| r.dim() * r.dim()).sum();
            assert_eq!(total, group.order());
        }
    }

    #[test]
    fn type_a_products_add_indices() {
        let group = KleinianGroup::a(5);
        let table = CGTable::new(&group);
        for i in 0..6 {
            for j in 0..6 {
                for k in 0..6 {
                    let expected = u32::from((i + j) % 6 == k);
                    assert_eq!(table.coefficient(i, j, k), expected);
                }
            }
        }
    }

    /// Closed-form oracle for type D products, used to cross-check the
    /// character computation. Virtual index rules: V_0 = E_1 + E_2,
    /// V_(n-2) = E_3 + E_4, V_(-m) = V_m, V_m = V_(2(n-2)-m) for m > n-2.
    fn d_product_oracle(n: u32, i: usize, j: usize, r: usize) -> Vec<usize> {
        let nv = (n - 3) as usize;
        let e_mult = |a: usize, b: usize| -> usize {
            // Index of E_a (x) E_b in 1..=4, depending on the parity of n.
            let table_even = [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]];
            let table_odd = [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 2, 1], [4, 3, 1, 2]];
            let t = if n % 2 == 0 { table_even } else { table_odd };
            t[a - 1][b - 1]
        };
        let virtual_v = |m: i64| -> Vec<usize> {
            let period = 2 * (n as i64 - 2);
            let mut m = m.rem_euclid(period);
            if m > n as i64 - 2 {
                m = period - m;
            }
            if m == 0 {
                vec![0, 1]
            } else if m == n as i64 - 2 {
                vec![2, 3]
            } else {
                vec![3 + m as usize]
            }
        };
        let mut out: Vec<usize> = match (i, j) {
            (0..=3, 0..=3) => vec![e_mult(i + 1, j + 1) - 1],
            (0..=3, _) => {
                let k = (j - 3) as i64;
                match i {
                    0 | 1 => vec![j],
                    _ => virtual_v(n as i64 - 2 - k),
                }
            }
            (_, 0..=3) => return d_product_oracle(n, j, i, r),
            _ => {
                let k = (i - 3) as i64;
                let l = (j - 3) as i64;
                let mut v = virtual_v(k + l);
                v.extend(virtual_v(l - k));
                v
            }
        };
        out.sort_unstable();
        out.retain(|&k| k < 4 + nv);
        out
    }

    #[test]
    fn type_d_products_match_oracle() {
        for n in [4u32, 5, 6, 7, 8, 9] {
            let group = KleinianGroup::d(n);
            let table = CGTable::new(&group);
            let r = group.irreps().len();
            for i in 0..r {
                for j in 0..r {
                    let got = table.components(i, j);
                    let want = d_product_oracle(n, i, j, r);
                    assert_eq!(got, want, "D_{} product ({}, {})", n, i, j);
                }
            }
        }
    }

    #[test]
    fn natural_rep_components() {
        assert_eq!(KleinianGroup::a(6).natural_rep(), vec![1, 6]);
        assert_eq!(KleinianGroup::d(8).natural_rep(), vec![4]);
        // The natural representation has determinant one and the right trace.
        let group = KleinianGroup::d(6);
        let o1 = &group.irreps()[4];
        for g in group.elements() {
            assert_eq!(o1.matrix(&g).det(), Scalar::one());
        }
    }
}
