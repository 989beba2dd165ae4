//! The Cremona reflection and point permutations acting on N¹, and the
//! Coxeter group they generate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::class::{CurveClass, DivisorClass};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::geometry::CenterSet;
use crate::perm::Permutation;

/// A unimodular linear map on N¹ of the blow-up at `k` points, as a
/// `(k+1)×(k+1)` integer matrix on coefficient vectors in the basis
/// `H, E₁..E_k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct LatticeMap {
    matrix: IntMatrix,
}

impl LatticeMap {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let n = matrix.n_rows();
        if n < 2 || !matrix.is_square() {
            return Err(Error::Dimension { expected: n, got: matrix.n_cols() });
        }
        if !matrix.determinant().abs().is_one() {
            return Err(Error::InvalidParameter("lattice map must have determinant ±1".into()));
        }
        Ok(LatticeMap { matrix })
    }

    pub fn identity(k: usize) -> Self {
        LatticeMap { matrix: IntMatrix::identity(k + 1) }
    }

    /// Builds the map column by column from its action on `H, E₁..E_k`.
    fn from_basis_images(k: usize, image: impl Fn(&DivisorClass) -> DivisorClass) -> Self {
        let mut matrix = IntMatrix::zeros(k + 1, k + 1);
        let basis = std::iter::once(DivisorClass::hyperplane(k)).chain((1..=k).map(|i| DivisorClass::exceptional(k, i)));
        for (col, b) in basis.enumerate() {
            for (row, x) in image(&b).coefficients().into_iter().enumerate() {
                matrix.set(row, col, x);
            }
        }
        LatticeMap { matrix }
    }

    pub fn k(&self) -> usize {
        self.matrix.n_rows() - 1
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, c: &DivisorClass) -> Result<DivisorClass> {
        if c.k() != self.k() {
            return Err(Error::Dimension { expected: self.k(), got: c.k() });
        }
        Ok(DivisorClass::from_coefficients(&self.matrix.mul_vec(&c.coefficients())))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        LatticeMap { matrix: &self.matrix * &other.matrix }
    }

    pub fn pow(&self, e: u32) -> LatticeMap {
        LatticeMap { matrix: self.matrix.pow(e) }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

impl TryFrom<IntMatrix> for LatticeMap {
    type Error = Error;

    fn try_from(m: IntMatrix) -> Result<Self> {
        LatticeMap::new(m)
    }
}

impl From<LatticeMap> for IntMatrix {
    fn from(m: LatticeMap) -> Self {
        m.matrix
    }
}

impl fmt::Debug for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.matrix, f)
    }
}

/// Class of the strict transform after the Cremona move at `centers`:
/// with `s = Σ_{i∈Z} mᵢ`, `d′ = 3d − s`, `m′ᵢ = 2d + mᵢ − s` for `i ∈ Z`,
/// other multiplicities unchanged.
pub fn cremona_pushforward(c: &DivisorClass, centers: CenterSet) -> Result<DivisorClass> {
    centers.check_k(c.k())?;
    let pos = centers.positions();
    let s: BigInt = pos.iter().map(|&i| &c.m[i]).sum();
    let two_d = BigInt::from(2) * &c.d;
    let mut m = c.m.clone();
    for i in pos {
        m[i] = &two_d + &c.m[i] - &s;
    }
    Ok(DivisorClass::new(BigInt::from(3) * &c.d - &s, m))
}

/// Relabels multiplicities the same way [`Permutation::apply`] relabels
/// points: new `mᵢ` is old `m_{source(i)}`.
pub fn permute_class(c: &DivisorClass, perm: &Permutation) -> Result<DivisorClass> {
    if perm.len() != c.k() {
        return Err(Error::Dimension { expected: c.k(), got: perm.len() });
    }
    Ok(DivisorClass::new(c.d.clone(), perm.apply(&c.m)))
}

pub fn cremona_map(k: usize, centers: CenterSet) -> Result<LatticeMap> {
    centers.check_k(k)?;
    Ok(LatticeMap::from_basis_images(k, |b| cremona_pushforward(b, centers).expect("centers checked")))
}

pub fn permutation_map(perm: &Permutation) -> LatticeMap {
    let k = perm.len();
    LatticeMap::from_basis_images(k, |b| permute_class(b, perm).expect("same size"))
}

/// `M_σ = P·M`: the Cremona move at points 1–4 followed by the cyclic shift
/// that sends the first point to the end.
pub fn coxeter_element(k: usize) -> Result<LatticeMap> {
    check_k(k)?;
    let cremona = cremona_map(k, CenterSet::first_four())?;
    Ok(permutation_map(&Permutation::cyclic_shift(k)).compose(&cremona))
}

/// `[v, M_σ v, …, M_σⁿ v]`.
pub fn iterate_class(v: &DivisorClass, n: usize) -> Result<Vec<DivisorClass>> {
    let m = coxeter_element(v.k())?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(v.clone());
    for _ in 0..n {
        let next = m.apply(out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

/// Lattice half of the root-divisor condition for eight points:
/// `4d − Σ mᵢ = 0`.
pub fn is_root_class(c: &DivisorClass) -> Result<bool> {
    if c.k() != 8 {
        return Err(Error::Dimension { expected: 8, got: c.k() });
    }
    is_orthogonal_to(c, &CurveClass::quartic(8))
}

/// Root condition against a caller-supplied curve class.
pub fn is_orthogonal_to(c: &DivisorClass, curve: &CurveClass) -> Result<bool> {
    Ok(num_traits::Zero::is_zero(&super::class::intersect(c, curve)?))
}

/// `ℓ − eᵢ − eⱼ` for the six pairs of centers, in lexicographic order.
pub fn flopped_curve_classes(k: usize, centers: CenterSet) -> Result<Vec<CurveClass>> {
    centers.check_k(k)?;
    let l = centers.labels();
    let mut out = Vec::with_capacity(6);
    for a in 0..4 {
        for b in a + 1..4 {
            out.push(CurveClass::line_through(k, l[a], l[b]));
        }
    }
    Ok(out)
}

fn check_k(k: usize) -> Result<()> {
    if k < 8 {
        return Err(Error::TooFewPoints { min: 8, got: k });
    }
    Ok(())
}

/// Generators of the T_{2,4,k−4} Coxeter group acting on N¹.
#[derive(Clone, Debug)]
pub struct CoxeterGenerators {
    /// Cremona reflection at points 1–4.
    pub r: LatticeMap,
    /// `s[i]` swaps `E_{i+1}` and `E_{i+2}` (so `s[0]` is `s₁`).
    pub s: Vec<LatticeMap>,
}

impl CoxeterGenerators {
    pub fn new(k: usize) -> Result<Self> {
        check_k(k)?;
        Ok(CoxeterGenerators {
            r: cremona_map(k, CenterSet::first_four())?,
            s: (0..k - 1).map(|i| permutation_map(&Permutation::transposition(k, i, i + 1))).collect(),
        })
    }
}

/// One Coxeter relation `(a b)^order = I`, checked with the order exact.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub order: u32,
    pub holds: bool,
}

fn exact_order(a: &LatticeMap, b: &LatticeMap, order: u32) -> bool {
    let p = a.compose(b);
    p.pow(order).is_identity() && (1..order).filter(|d| order % d == 0).all(|d| !p.pow(d).is_identity())
}

/// Every defining relation of the T_{2,4,k−4} diagram: `s₁ … s_{k−1}` in a
/// chain with `r` attached to `s₄`.
pub fn coxeter_relations(k: usize) -> Result<Vec<RelationCheck>> {
    let g = CoxeterGenerators::new(k)?;
    let mut out = Vec::new();
    let mut push = |relation: String, order: u32, holds: bool| out.push(RelationCheck { relation, order, holds });

    push("r^2 = 1".into(), 2, g.r.pow(2).is_identity() && !g.r.is_identity());
    for (i, si) in g.s.iter().enumerate() {
        push(format!("s{}^2 = 1", i + 1), 2, si.pow(2).is_identity() && !si.is_identity());
    }
    for i in 0..g.s.len() {
        for j in i + 1..g.s.len() {
            let order = if j == i + 1 { 3 } else { 2 };
            push(format!("(s{} s{})^{order} = 1", i + 1, j + 1), order, exact_order(&g.s[i], &g.s[j], order));
        }
    }
    for (i, si) in g.s.iter().enumerate() {
        let order = if i == 3 { 3 } else { 2 };
        push(format!("(r s{})^{order} = 1", i + 1), order, exact_order(&g.r, si, order));
    }
    Ok(out)
}

pub fn coxeter_relations_check(k: usize) -> Result<bool> {
    Ok(coxeter_relations(k)?.iter().all(|r| r.holds))
}
