use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::map::ProjectiveMap;
use super::point::{coplanar, ProjectivePoint};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Smallest configuration size handled.
pub const MIN_POINTS: usize = 8;

/// An ordered tuple of pairwise distinct points of P³, labelled `1..=k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationFile", into = "ConfigurationFile")]
pub struct Configuration {
    points: Vec<ProjectivePoint>,
}

impl Configuration {
    pub fn new(points: Vec<ProjectivePoint>) -> Result<Self> {
        if points.len() < MIN_POINTS {
            return Err(Error::TooFewPoints { min: MIN_POINTS, got: points.len() });
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoints(i + 1, j + 1));
                }
            }
        }
        Ok(Configuration { points })
    }

    pub fn from_i64(points: &[[i64; 4]]) -> Result<Self> {
        let pts = points.iter().map(|&c| ProjectivePoint::from_i64(c)).collect::<Result<_>>()?;
        Self::new(pts)
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// Point with 1-based label `label`.
    pub fn point(&self, label: usize) -> &ProjectivePoint {
        &self.points[label - 1]
    }

    pub fn apply_map(&self, map: &ProjectiveMap) -> Configuration {
        Configuration { points: self.points.iter().map(|p| map.apply(p)).collect() }
    }

    pub fn permuted(&self, perm: &Permutation) -> Result<Configuration> {
        if perm.len() != self.k() {
            return Err(Error::Dimension { expected: self.k(), got: perm.len() });
        }
        Ok(Configuration { points: perm.apply(&self.points) })
    }

    /// Every coplanar 4-subset, as sorted 1-based labels in lexicographic order.
    pub fn coplanar_quadruples(&self) -> Vec<[usize; 4]> {
        CenterSet::all(self.k())
            .filter(|c| {
                let [a, b, c, d] = c.positions().map(|i| &self.points[i]);
                coplanar(a, b, c, d)
            })
            .map(|c| c.labels())
            .collect()
    }

    pub fn max_bit_length(&self) -> u64 {
        self.points.iter().map(ProjectivePoint::bit_length).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&ConfigurationFile::from(self)).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigurationFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.try_into()
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.points).finish()
    }
}

/// On-disk form: `{"k": 8, "points": [["1","0","0","0"], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationFile {
    pub k: usize,
    #[serde(with = "crate::serde_big::matrix")]
    pub points: Vec<Vec<BigInt>>,
}

impl From<Configuration> for ConfigurationFile {
    fn from(c: Configuration) -> Self {
        ConfigurationFile::from(&c)
    }
}

impl From<&Configuration> for ConfigurationFile {
    fn from(c: &Configuration) -> Self {
        ConfigurationFile {
            k: c.k(),
            points: c.points.iter().map(|p| p.coords().to_vec()).collect(),
        }
    }
}

impl TryFrom<ConfigurationFile> for Configuration {
    type Error = Error;

    fn try_from(file: ConfigurationFile) -> Result<Self> {
        if file.points.len() != file.k {
            return Err(Error::Parse(format!("k = {} but {} points given", file.k, file.points.len())));
        }
        let points = file
            .points
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let coords: [BigInt; 4] = row
                    .try_into()
                    .map_err(|r: Vec<BigInt>| Error::Parse(format!("point {} has {} coordinates", i + 1, r.len())))?;
                ProjectivePoint::new(coords)
            })
            .collect::<Result<_>>()?;
        Configuration::new(points)
    }
}

/// Four distinct point indices, stored sorted and 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CenterSet {
    idx: [usize; 4],
}

impl CenterSet {
    /// Builds a center set from 1-based labels.
    pub fn from_labels(labels: &[usize], k: usize) -> Result<Self> {
        let bad = || Error::InvalidCenters { labels: labels.to_vec(), k };
        if labels.len() != 4 || labels.iter().any(|&l| l == 0 || l > k) {
            return Err(bad());
        }
        let mut idx = [labels[0] - 1, labels[1] - 1, labels[2] - 1, labels[3] - 1];
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(bad());
        }
        Ok(CenterSet { idx })
    }

    /// Points `1, 2, 3, 4`.
    pub fn first_four() -> Self {
        CenterSet { idx: [0, 1, 2, 3] }
    }

    /// All `C(k, 4)` center sets in lexicographic order.
    pub fn all(k: usize) -> impl Iterator<Item = CenterSet> {
        (0..k).flat_map(move |a| {
            (a + 1..k).flat_map(move |b| {
                (b + 1..k).flat_map(move |c| (c + 1..k).map(move |d| CenterSet { idx: [a, b, c, d] }))
            })
        })
    }

    pub fn positions(&self) -> [usize; 4] {
        self.idx
    }

    pub fn labels(&self) -> [usize; 4] {
        self.idx.map(|i| i + 1)
    }

    pub fn contains(&self, position: usize) -> bool {
        self.idx.contains(&position)
    }

    pub(crate) fn check_k(&self, k: usize) -> Result<()> {
        if self.idx[3] >= k {
            return Err(Error::InvalidCenters { labels: self.labels().to_vec(), k });
        }
        Ok(())
    }
}

impl fmt::Debug for CenterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels())
    }
}

impl Serialize for CenterSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CenterSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = <[usize; 4]>::deserialize(d)?;
        let k = labels.iter().copied().max().unwrap_or(0);
        CenterSet::from_labels(&labels, k).map_err(serde::de::Error::custom)
    }
}
