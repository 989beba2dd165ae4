use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Configuration, MIN_POINTS};
use super::point::{coplanar, ProjectivePoint};
use crate::error::{Error, Result};

const DRAW_BUDGET: usize = 100_000;

/// Seeded random configuration of `k` points with integer coordinates in
/// `[-height, height]` and no four points coplanar, so condition (*) holds
/// for every center set and every five points form a frame.
pub fn random_config(seed: u64, height: u64, k: usize) -> Result<Configuration> {
    if height < 2 {
        return Err(Error::InvalidParameter(format!("height must be at least 2, got {height}")));
    }
    if k < MIN_POINTS {
        return Err(Error::TooFewPoints { min: MIN_POINTS, got: k });
    }
    let h = i64::try_from(height).map_err(|_| Error::InvalidParameter("height too large".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<ProjectivePoint> = Vec::with_capacity(k);
    for _ in 0..DRAW_BUDGET {
        let coords: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-h..=h));
        let Ok(p) = ProjectivePoint::from_i64(coords) else { continue };
        if fits(&points, &p) {
            points.push(p);
            if points.len() == k {
                return Configuration::new(points);
            }
        }
    }
    Err(Error::Generation(DRAW_BUDGET))
}

fn fits(points: &[ProjectivePoint], p: &ProjectivePoint) -> bool {
    let n = points.len();
    if points.contains(p) {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if coplanar(&points[a], &points[b], &points[c], p) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{condition_star, CenterSet};

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(random_config(7, 50, 8).unwrap(), random_config(7, 50, 8).unwrap());
        assert_ne!(random_config(7, 50, 8).unwrap(), random_config(8, 50, 8).unwrap());
    }

    #[test]
    fn satisfies_star_everywhere() {
        for seed in 0..4 {
            let c = random_config(seed, 50, 8).unwrap();
            assert!(CenterSet::all(8).all(|z| condition_star(&c, z)));
            assert!(c.coplanar_quadruples().is_empty());
            assert!(c.max_bit_length() <= 6);
        }
        let small = random_config(1, 2, 9).unwrap();
        assert!(small.coplanar_quadruples().is_empty());
    }

    #[test]
    fn parameter_checks() {
        assert!(matches!(random_config(0, 1, 8), Err(Error::InvalidParameter(_))));
        assert!(matches!(random_config(0, 10, 7), Err(Error::TooFewPoints { .. })));
    }
}
