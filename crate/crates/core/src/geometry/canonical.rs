//! Canonical form of a configuration under PGL(4) × permutations.
//!
//! For every ordered 5-tuple of points forming a projective frame, the
//! configuration is moved so that the frame lands on `e0..e3, (1:1:1:1)`;
//! the images of the remaining `k − 5` points are sorted and the least
//! outcome wins. The frame images are the same for every candidate, so they
//! are left out of the key.
//!
//! The enumeration is organised by unordered frame: for a 4-subset `S` with
//! column matrix `A` and fifth point `u`, write `w(x) = adj(A)·x`. In the
//! ordered frame `(S in order σ, u)` a point `x` has coordinates
//! `w(x)_σ(i) / w(u)_σ(i)`, so the normalized images for all 24 orderings
//! are coordinate permutations of a single integer vector per point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::config::{CenterSet, Configuration};
use super::linalg::{adjugate4, det4, from_columns, mat_vec};
use super::point::ProjectivePoint;
use crate::error::{Error, Result};

/// Byte-string invariant of a configuration up to projective maps and
/// relabeling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// `k` followed by the sorted non-frame images.
    pub(crate) fn from_parts(k: usize, points: &[ProjectivePoint]) -> Self {
        let mut out = Vec::with_capacity(8 + points.len() * 24);
        out.extend_from_slice(&(k as u32).to_be_bytes());
        for p in points {
            p.write_bytes(&mut out);
        }
        CanonicalForm(out)
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_hex().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let hex = String::deserialize(d)?;
        if hex.len() % 2 != 0 {
            return Err(serde::de::Error::custom("odd-length hex string"));
        }
        (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&hex[i..i + 2], 16))
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map(CanonicalForm)
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hex = self.to_hex();
        if hex.len() > 24 {
            write!(f, "CanonicalForm({}…, {} bytes)", &hex[..24], self.0.len())
        } else {
            write!(f, "CanonicalForm({hex})")
        }
    }
}

const ORDERINGS: [[usize; 4]; 24] = {
    let mut out = [[0; 4]; 24];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && a != c && b != c {
                    out[n] = [a, b, c, 6 - a - b - c];
                    n += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

fn primitive(mut v: [BigInt; 4]) -> [BigInt; 4] {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g > BigInt::from(1) {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

/// `z` with coordinates permuted by `sigma` and negated when that makes the
/// first nonzero entry positive, compared without materializing it.
#[derive(Clone, Copy)]
struct View<'a> {
    z: &'a [BigInt; 4],
    sigma: &'static [usize; 4],
    neg: bool,
}

impl<'a> View<'a> {
    fn new(z: &'a [BigInt; 4], sigma: &'static [usize; 4]) -> Self {
        let neg = sigma.iter().map(|&s| &z[s]).find(|c| !c.is_zero()).is_some_and(Signed::is_negative);
        View { z, sigma, neg }
    }

    fn coord(&self, i: usize) -> (&'a BigInt, bool) {
        (&self.z[self.sigma[i]], self.neg)
    }

    fn cmp_with(&self, other: impl Fn(usize) -> (&'a BigInt, bool)) -> Ordering {
        (0..4)
            .map(|i| {
                let ((a, na), (b, nb)) = (self.coord(i), other(i));
                signed_cmp(a, na, b, nb)
            })
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    fn materialize(&self) -> [BigInt; 4] {
        std::array::from_fn(|i| if self.neg { -&self.z[self.sigma[i]] } else { self.z[self.sigma[i]].clone() })
    }
}

/// Compares `±a` with `±b`.
fn signed_cmp(a: &BigInt, neg_a: bool, b: &BigInt, neg_b: bool) -> Ordering {
    let flip = |s: Sign, neg: bool| if neg { -s } else { s };
    let (sa, sb) = (flip(a.sign(), neg_a), flip(b.sign(), neg_b));
    match (sa.cmp(&sb), sa) {
        (Ordering::Equal, Sign::Plus) => a.magnitude().cmp(b.magnitude()),
        (Ordering::Equal, Sign::Minus) => b.magnitude().cmp(a.magnitude()),
        (Ordering::Equal, Sign::NoSign) => Ordering::Equal,
        (o, _) => o,
    }
}

/// Canonical form; fails with [`Error::NoFrame`] when no five points are in
/// general position.
pub fn canonical_form(config: &Configuration) -> Result<CanonicalForm> {
    let pts = config.points();
    let k = pts.len();
    let mut best: Option<Vec<[BigInt; 4]>> = None;

    for subset in CenterSet::all(k) {
        let pos = subset.positions();
        let a = from_columns(pos.map(|i| pts[i].coords()));
        if det4(&a).is_zero() {
            continue;
        }
        let adj = adjugate4(&a);
        let outside: Vec<usize> = (0..k).filter(|&x| !subset.contains(x)).collect();
        let images: Vec<[BigInt; 4]> = outside.iter().map(|&x| mat_vec(&adj, pts[x].coords())).collect();

        for (ui, unit) in images.iter().enumerate() {
            if unit.iter().any(Zero::is_zero) {
                continue;
            }
            let cofactors: [BigInt; 4] = std::array::from_fn(|t| {
                (0..4).filter(|&j| j != t).map(|j| &unit[j]).product()
            });
            let rest: Vec<[BigInt; 4]> = images
                .iter()
                .enumerate()
                .filter(|&(xi, _)| xi != ui)
                .map(|(_, w)| primitive(std::array::from_fn(|t| &w[t] * &cofactors[t])))
                .collect();

            let mut views: Vec<View> = Vec::with_capacity(rest.len());
            for sigma in &ORDERINGS {
                views.clear();
                views.extend(rest.iter().map(|z| View::new(z, sigma)));
                views.sort_unstable_by(|x, y| x.cmp_with(|i| y.coord(i)));
                let better = match &best {
                    None => true,
                    Some(b) => views
                        .iter()
                        .zip(b)
                        .map(|(v, p)| v.cmp_with(|i| (&p[i], false)))
                        .find(|o| o.is_ne())
                        == Some(Ordering::Less),
                };
                if better {
                    best = Some(views.iter().map(View::materialize).collect());
                }
            }
        }
    }

    let best = best.ok_or(Error::NoFrame)?;
    let points: Vec<ProjectivePoint> =
        best.into_iter().map(|z| ProjectivePoint::new(z).expect("nonzero image")).collect();
    Ok(CanonicalForm::from_parts(k, &points))
}

/// Whether two configurations agree up to a projective map and relabeling.
pub fn equivalent(a: &Configuration, b: &Configuration) -> Result<bool> {
    let (ca, cb) = (canonical_form(a)?, canonical_form(b)?);
    Ok(a.k() == b.k() && ca == cb)
}
