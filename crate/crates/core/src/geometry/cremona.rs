//! Condition (*) and the standard Cremona transformation centered at four
//! points of a configuration.

use num_bigint::BigInt;
use num_traits::Zero;

use super::config::{CenterSet, Configuration};
use super::linalg::{adjugate4, from_columns, mat_vec};
use super::point::{coplanar, ProjectivePoint};
use crate::error::{Error, Result, StarViolation};

/// First failure of condition (*) for `centers`, scanning planes in
/// lexicographic order and non-center points by label.
pub fn star_violation(config: &Configuration, centers: CenterSet) -> Option<StarViolation> {
    let pts = config.points();
    let [a, b, c, d] = centers.positions();
    if coplanar(&pts[a], &pts[b], &pts[c], &pts[d]) {
        return Some(StarViolation::CoplanarCenters { centers: centers.labels() });
    }
    let planes = [[a, b, c], [a, b, d], [a, c, d], [b, c, d]];
    for plane in planes {
        for x in (0..pts.len()).filter(|&x| !centers.contains(x)) {
            if coplanar(&pts[plane[0]], &pts[plane[1]], &pts[plane[2]], &pts[x]) {
                return Some(StarViolation::PointOnPlane { plane: plane.map(|i| i + 1), point: x + 1 });
            }
        }
    }
    None
}

/// Whether no non-center point lies on a plane through three of the centers
/// (which forces the centers themselves to be non-coplanar).
pub fn condition_star(config: &Configuration, centers: CenterSet) -> bool {
    centers.check_k(config.k()).is_ok() && star_violation(config, centers).is_none()
}

/// The configuration obtained by the standard Cremona transformation centered
/// at `centers`, written in the frame where the centers sit at the coordinate
/// vertices.
///
/// The j-th smallest center label goes to `e_j`. Every other point is moved
/// by the change of coordinates whose inverse has the center representatives
/// as columns, then its coordinates are inverted.
pub fn cremona_at(config: &Configuration, centers: CenterSet) -> Result<Configuration> {
    centers.check_k(config.k())?;
    if let Some(v) = star_violation(config, centers) {
        return Err(Error::Star(v));
    }
    let pts = config.points();
    let pos = centers.positions();
    // adj(A) is A⁻¹ up to the scalar det(A).
    let to_frame = adjugate4(&from_columns(pos.map(|i| pts[i].coords())));
    let mut out = Vec::with_capacity(pts.len());
    for (i, p) in pts.iter().enumerate() {
        if let Some(j) = pos.iter().position(|&c| c == i) {
            out.push(ProjectivePoint::vertex(j));
            continue;
        }
        let y = mat_vec(&to_frame, p.coords());
        debug_assert!(y.iter().all(|c| !c.is_zero()), "condition (*) keeps points off the coordinate planes");
        out.push(ProjectivePoint::new(reciprocal(&y))?);
    }
    Configuration::new(out)
}

/// `(y1 y2 y3 : y0 y2 y3 : y0 y1 y3 : y0 y1 y2)`, proportional to the
/// coordinate-wise inverse when no coordinate vanishes.
fn reciprocal(y: &[BigInt; 4]) -> [BigInt; 4] {
    let front01 = &y[0] * &y[1];
    let back23 = &y[2] * &y[3];
    [
        &y[1] * &back23,
        &y[0] * &back23,
        &front01 * &y[3],
        &front01 * &y[2],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::equivalent;

    fn with_fifth(fifth: [i64; 4]) -> Configuration {
        Configuration::from_i64(&[
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            fifth,
            [2, 3, 5, 7],
            [1, -4, 6, 9],
            [3, 8, -2, 5],
        ])
        .unwrap()
    }

    #[test]
    fn star_examples() {
        let z = CenterSet::first_four();
        assert!(condition_star(&with_fifth([1, 2, 3, 4]), z));
        let bad = with_fifth([1, 1, 1, 0]);
        assert!(!condition_star(&bad, z));
        assert_eq!(
            star_violation(&bad, z),
            Some(StarViolation::PointOnPlane { plane: [1, 2, 3], point: 5 })
        );
        // Centers 1, 2, 3, 5 with point 5 on X3 = 0.
        let centers = CenterSet::from_labels(&[1, 2, 3, 5], 8).unwrap();
        assert!(!condition_star(&bad, centers));
        assert_eq!(
            star_violation(&bad, centers),
            Some(StarViolation::CoplanarCenters { centers: [1, 2, 3, 5] })
        );
    }

    #[test]
    fn cremona_examples() {
        let z = CenterSet::first_four();
        let out = cremona_at(&with_fifth([1, 1, 1, 1]), z).unwrap();
        assert_eq!(out.point(5), &ProjectivePoint::unit());
        let out = cremona_at(&with_fifth([1, 2, 3, 4]), z).unwrap();
        assert_eq!(out.point(5), &ProjectivePoint::from_i64([12, 6, 4, 3]).unwrap());
        for j in 0..4 {
            assert_eq!(out.point(j + 1), &ProjectivePoint::vertex(j));
        }
    }

    #[test]
    fn cremona_is_an_involution_up_to_pgl() {
        let c = Configuration::from_i64(&[
            [1, 2, 0, 1],
            [3, -1, 2, 2],
            [0, 1, 4, -3],
            [5, 1, 1, 1],
            [2, 7, -3, 1],
            [1, 1, 9, 4],
            [-6, 2, 5, 3],
            [4, 4, 1, -7],
        ])
        .unwrap();
        for labels in [[1, 2, 3, 4], [2, 4, 6, 8], [5, 6, 7, 8]] {
            let z = CenterSet::from_labels(&labels, 8).unwrap();
            let once = cremona_at(&c, z).unwrap();
            let twice = cremona_at(&once, z).unwrap();
            assert!(equivalent(&c, &twice).unwrap());
            assert!(!equivalent(&c, &once).unwrap());
        }
    }

    #[test]
    fn violation_is_reported_not_applied() {
        let err = cremona_at(&with_fifth([1, 1, 1, 0]), CenterSet::first_four()).unwrap_err();
        assert!(matches!(err, Error::Star(StarViolation::PointOnPlane { point: 5, .. })));
    }
}
