//! Certificates for the Jordan structure of the Coxeter element at the
//! eigenvalue 1 and for the distinctness of an orbit of classes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::action::coxeter_element;
use super::class::DivisorClass;
use super::matrix::{deflate_root, root_multiplicity, IntMatrix};
use crate::error::{Error, Result};

/// Number of powers of `M − I` whose ranks are recorded.
pub const RANK_POWERS: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanCertificate {
    /// `det(xI − M)`, coefficients from the constant term up.
    #[serde(with = "crate::serde_big::vec")]
    pub characteristic_polynomial: Vec<BigInt>,
    /// Multiplicity of `(x − 1)` in the characteristic polynomial.
    pub multiplicity_of_one: usize,
    /// `rank((M − I)^j)` over the rationals for `j = 1..=4`.
    pub ranks: Vec<usize>,
}

impl JordanCertificate {
    pub fn size(&self) -> usize {
        self.characteristic_polynomial.len() - 1
    }

    /// Whether the ranks have stopped dropping by the last recorded power.
    pub fn stabilized(&self) -> bool {
        let n = self.ranks.len();
        n >= 2 && self.ranks[n - 1] == self.ranks[n - 2]
    }

    /// Sizes of the Jordan blocks at eigenvalue 1, largest first, read off
    /// the rank drops. `None` if the ranks have not stabilized or the drops
    /// do not account for the full algebraic multiplicity.
    pub fn blocks_at_one(&self) -> Option<Vec<usize>> {
        if !self.stabilized() {
            return None;
        }
        let mut r = vec![self.size()];
        r.extend(&self.ranks);
        // at_least[j] = number of blocks of size ≥ j + 1.
        let at_least: Vec<usize> = r.windows(2).map(|w| w[0] - w[1]).collect();
        let mut blocks = Vec::new();
        for (j, &count) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            blocks.extend(std::iter::repeat(j + 1).take(count - next));
        }
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        (blocks.iter().sum::<usize>() == self.multiplicity_of_one).then_some(blocks)
    }
}

pub fn jordan_certificate(m: &IntMatrix) -> Result<JordanCertificate> {
    if !m.is_square() {
        return Err(Error::Dimension { expected: m.n_rows(), got: m.n_cols() });
    }
    let characteristic_polynomial = m.characteristic_polynomial();
    let multiplicity_of_one = root_multiplicity(&characteristic_polynomial, &BigInt::one());
    let nilpotent = m - &IntMatrix::identity(m.n_rows());
    let mut ranks = Vec::with_capacity(RANK_POWERS as usize);
    let mut power = nilpotent.clone();
    for _ in 0..RANK_POWERS {
        ranks.push(power.rank());
        power = &power * &nilpotent;
    }
    Ok(JordanCertificate { characteristic_polynomial, multiplicity_of_one, ranks })
}

/// Width of the windows over which minimum degrees are reported.
pub const GROWTH_WINDOW: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctnessReport {
    pub start: DivisorClass,
    pub n_max: usize,
    pub all_distinct: bool,
    /// First pair `(i, j)`, `i < j`, with equal classes.
    pub first_repeat: Option<(usize, usize)>,
    /// Degree of `M_σⁿ v` for `n = 0..=n_max`.
    #[serde(with = "crate::serde_big::vec")]
    pub degrees: Vec<BigInt>,
    pub window: usize,
    /// Minimum degree over each consecutive window of `window` steps.
    #[serde(with = "crate::serde_big::vec")]
    pub window_min_degrees: Vec<BigInt>,
    /// Window minima never decrease and the last exceeds the first.
    pub growth_observed: bool,
    /// `(M_σ − I)² v ≠ 0`.
    pub nilpotent_square_nonzero: bool,
    /// Number of generalized eigenvectors of the eigenvalue-1 Jordan block
    /// on which `v` has a nonzero coefficient: the least `j` with
    /// `(M_σ − I)^j q(M_σ) v = 0`, where `q` is the characteristic
    /// polynomial with its `(x − 1)` factors removed. Depth 2 gives linear
    /// growth of the unipotent part of `M_σⁿ v`, depth 3 quadratic.
    pub unipotent_depth: usize,
}

impl DistinctnessReport {
    /// Distinct up to `n_max`, and provably distinct forever: with depth at
    /// least 2 the eigenvalue-1 component of `M_σⁿ v` moves by a fixed
    /// nonzero vector times `n` plus bounded terms.
    pub fn certified(&self) -> bool {
        self.all_distinct && self.nilpotent_square_nonzero && self.unipotent_depth >= 2
    }
}

pub fn distinctness_certificate(v: &DivisorClass, n_max: usize) -> Result<DistinctnessReport> {
    if n_max < 1 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let m = coxeter_element(v.k())?;

    let mut seen: HashMap<DivisorClass, usize> = HashMap::with_capacity(n_max + 1);
    let mut first_repeat = None;
    let mut degrees = Vec::with_capacity(n_max + 1);
    let mut current = v.clone();
    for n in 0..=n_max {
        degrees.push(current.d.clone());
        if let Some(&earlier) = seen.get(&current) {
            first_repeat.get_or_insert((earlier, n));
        } else {
            seen.insert(current.clone(), n);
        }
        current = m.apply(&current)?;
    }

    let window_min_degrees: Vec<BigInt> = degrees
        .chunks(GROWTH_WINDOW)
        .map(|w| w.iter().min().expect("nonempty window").clone())
        .collect();
    let growth_observed = window_min_degrees.windows(2).all(|w| w[0] <= w[1])
        && window_min_degrees.first() < window_min_degrees.last();

    let nilpotent = m.matrix() - &IntMatrix::identity(v.k() + 1);
    let once = nilpotent.mul_vec(&v.coefficients());
    let twice = nilpotent.mul_vec(&once);
    let nilpotent_square_nonzero = twice.iter().any(|x| !x.is_zero());
    let unipotent_depth = unipotent_depth(m.matrix(), &nilpotent, &v.coefficients());

    Ok(DistinctnessReport {
        start: v.clone(),
        n_max,
        all_distinct: first_repeat.is_none(),
        first_repeat,
        degrees,
        window: GROWTH_WINDOW,
        window_min_degrees,
        growth_observed,
        nilpotent_square_nonzero,
        unipotent_depth,
    })
}

fn unipotent_depth(m: &IntMatrix, nilpotent: &IntMatrix, v: &[BigInt]) -> usize {
    let rest = deflate_root(&m.characteristic_polynomial(), &BigInt::one());
    let mut u = m.eval_polynomial(&rest).mul_vec(v);
    let mut depth = 0;
    while u.iter().any(|x| !x.is_zero()) && depth <= m.n_rows() {
        u = nilpotent.mul_vec(&u);
        depth += 1;
    }
    depth
}
