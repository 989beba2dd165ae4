use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg::{det4, Mat4};
use crate::error::{Error, Result};

/// A point of P³ stored as its canonical integer representative: coprime
/// coordinates with the first nonzero one positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: [BigInt; 4],
}

impl ProjectivePoint {
    /// Canonicalizes integer homogeneous coordinates.
    pub fn new(mut coords: [BigInt; 4]) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(Error::DegeneratePoint);
        }
        let first_negative = coords.iter().find(|c| !c.is_zero()).map_or(false, |c| c.is_negative());
        let scale = if first_negative { -g } else { g };
        if !scale.is_one() {
            for c in coords.iter_mut() {
                *c = &*c / &scale;
            }
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_i64(coords: [i64; 4]) -> Result<Self> {
        Self::new(coords.map(BigInt::from))
    }

    /// The coordinate vertex `e_i`.
    pub fn vertex(i: usize) -> Self {
        let mut coords: [BigInt; 4] = Default::default();
        coords[i] = BigInt::one();
        ProjectivePoint { coords }
    }

    /// The unit point `(1:1:1:1)`.
    pub fn unit() -> Self {
        ProjectivePoint { coords: std::array::from_fn(|_| BigInt::one()) }
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn into_coords(self) -> [BigInt; 4] {
        self.coords
    }

    /// Largest bit length among the coordinates.
    pub fn bit_length(&self) -> u64 {
        self.coords.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn has_zero_coordinate(&self) -> bool {
        self.coords.iter().any(Zero::is_zero)
    }

    pub(crate) fn write_bytes(&self, out: &mut Vec<u8>) {
        for c in &self.coords {
            let (sign, mag) = c.to_bytes_be();
            out.push(match sign {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            });
            let mag: &[u8] = if c.is_zero() { &[] } else { &mag };
            out.extend_from_slice(&(mag.len() as u32).to_be_bytes());
            out.extend_from_slice(mag);
        }
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coords;
        write!(f, "({a}:{b}:{c}:{d})")
    }
}

/// Canonical representative of a point given by rational coordinates.
pub fn normalize_point(raw: &[BigRational; 4]) -> Result<ProjectivePoint> {
    let lcm = raw.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let coords = std::array::from_fn(|i| raw[i].numer() * (&lcm / raw[i].denom()));
    ProjectivePoint::new(coords)
}

/// Whether four points lie on a common plane.
pub fn coplanar(p1: &ProjectivePoint, p2: &ProjectivePoint, p3: &ProjectivePoint, p4: &ProjectivePoint) -> bool {
    let m: Mat4 = [p1, p2, p3, p4].map(|p| p.coords.clone());
    det4(&m).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(c: [i64; 4]) -> ProjectivePoint {
        ProjectivePoint::from_i64(c).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let a = normalize_point(&[q(1, 1), q(1, 2), q(1, 3), q(1, 4)]).unwrap();
        assert_eq!(a, p([12, 6, 4, 3]));
        assert_eq!(a.coords()[0], BigInt::from(12));
        let b = normalize_point(&[q(0, 1), q(-2, 1), q(-4, 1), q(0, 1)]).unwrap();
        assert_eq!(b.coords().clone(), [0, 1, 2, 0].map(BigInt::from));
        let c = normalize_point(&[q(5, 1), q(0, 1), q(0, 1), q(0, 1)]).unwrap();
        assert_eq!(c, ProjectivePoint::vertex(0));
    }

    #[test]
    fn zero_vector_is_rejected() {
        let z = [q(0, 1), q(0, 1), q(0, 1), q(0, 1)];
        assert!(matches!(normalize_point(&z), Err(Error::DegeneratePoint)));
    }

    #[test]
    fn coplanar_examples() {
        let e = ProjectivePoint::vertex;
        assert!(!coplanar(&e(0), &e(1), &e(2), &e(3)));
        assert!(coplanar(&e(0), &e(1), &e(2), &p([1, 1, 0, 0])));
        assert!(!coplanar(&e(0), &e(1), &e(2), &p([1, 1, 1, 1])));
    }

    proptest! {
        #[test]
        fn normalize_is_scale_invariant_and_idempotent(
            c in prop::array::uniform4(-40i64..40),
            ln in prop_oneof![-9i64..-1, 1i64..9],
            ld in 1i64..9,
        ) {
            prop_assume!(c.iter().any(|&x| x != 0));
            let raw = c.map(|x| q(x, 1));
            let lambda = q(ln, ld);
            let scaled = raw.clone().map(|x| x * &lambda);
            let a = normalize_point(&raw).unwrap();
            let b = normalize_point(&scaled).unwrap();
            prop_assert_eq!(&a, &b);
            let again = normalize_point(&a.coords().clone().map(BigRational::from_integer)).unwrap();
            prop_assert_eq!(a, again);
        }
    }
}
