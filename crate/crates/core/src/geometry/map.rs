use num_rational::BigRational;
use num_traits::{One, Zero};

use super::point::{coplanar, normalize_point, ProjectivePoint};
use crate::error::{Error, Result};

type RatMat4 = [[BigRational; 4]; 4];

/// An element of PGL(4), stored with its first nonzero entry (row-major)
/// scaled to 1 so that equality is equality of projective maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveMap {
    matrix: RatMat4,
}

impl ProjectiveMap {
    pub fn new(matrix: RatMat4) -> Result<Self> {
        if invert(&matrix).is_none() {
            return Err(Error::SingularMap);
        }
        let pivot = matrix
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .cloned()
            .ok_or(Error::SingularMap)?;
        let matrix = matrix.map(|row| row.map(|x| x / &pivot));
        Ok(ProjectiveMap { matrix })
    }

    pub fn from_integers(rows: [[i64; 4]; 4]) -> Result<Self> {
        Self::new(rows.map(|r| r.map(|x| BigRational::from_integer(x.into()))))
    }

    pub fn identity() -> Self {
        let matrix = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { BigRational::one() } else { BigRational::zero() })
        });
        ProjectiveMap { matrix }
    }

    pub fn matrix(&self) -> &RatMat4 {
        &self.matrix
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        let x = p.coords();
        let image: [BigRational; 4] = std::array::from_fn(|i| {
            (0..4)
                .map(|j| &self.matrix[i][j] * BigRational::from_integer(x[j].clone()))
                .sum()
        });
        normalize_point(&image).expect("invertible map sends points to points")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ProjectiveMap) -> ProjectiveMap {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|t| &self.matrix[i][t] * &other.matrix[t][j]).sum())
        });
        ProjectiveMap::new(m).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> ProjectiveMap {
        ProjectiveMap::new(invert(&self.matrix).expect("stored maps are invertible"))
            .expect("inverse is invertible")
    }
}

/// The unique projective map sending the five points, in order, to
/// `e0, e1, e2, e3, (1:1:1:1)`.
pub fn frame_transform(frame: [&ProjectivePoint; 5]) -> Result<ProjectiveMap> {
    for skip in (0..5).rev() {
        let idx: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
        let [a, b, c, d] = [idx[0], idx[1], idx[2], idx[3]];
        if coplanar(frame[a], frame[b], frame[c], frame[d]) {
            return Err(Error::DegenerateFrame([a, b, c, d]));
        }
    }
    // Columns of `basis` are the first four points; it sends e_i to them.
    let basis: RatMat4 = std::array::from_fn(|i| {
        std::array::from_fn(|j| BigRational::from_integer(frame[j].coords()[i].clone()))
    });
    let inv = invert(&basis).ok_or(Error::SingularMap)?;
    let unit = frame[4].coords();
    let weights: [BigRational; 4] = std::array::from_fn(|i| {
        (0..4)
            .map(|j| &inv[i][j] * BigRational::from_integer(unit[j].clone()))
            .sum()
    });
    let m = std::array::from_fn(|i| std::array::from_fn(|j| &inv[i][j] / &weights[i]));
    ProjectiveMap::new(m)
}

/// Gauss-Jordan inverse over the rationals; `None` when singular.
pub(crate) fn invert(m: &RatMat4) -> Option<RatMat4> {
    let mut a = m.clone();
    let mut inv: RatMat4 = ProjectiveMap::identity().matrix;
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..4 {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..4 {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..4 {
                let (ac, ic) = (a[col][j].clone(), inv[col][j].clone());
                a[r][j] -= &f * ac;
                inv[r][j] -= &f * ic;
            }
        }
    }
    Some(inv)
}
