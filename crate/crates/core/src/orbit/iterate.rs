//! The first-four-then-shift iteration, run on a configuration and on the
//! plane class `H − E₅ − E₆ − E₇ − E₈` side by side.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::word::{apply_word, CremonaWord};
use crate::error::{Error, Result};
use crate::geometry::{canonical_form, star_violation, CanonicalForm, CenterSet, Configuration};
use crate::lattice::{iterate_class, DivisorClass};

/// Labels of the four points whose plane class is tracked.
pub const TRACKED_PLANE: [usize; 4] = [5, 6, 7, 8];

/// `H − E₅ − E₆ − E₇ − E₈`.
pub fn tracked_start() -> DivisorClass {
    DivisorClass::plane_through(8, &TRACKED_PLANE)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IterateOptions {
    /// Stop early, flagging the report as truncated, once some coordinate
    /// exceeds this many bits.
    pub max_bits: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    /// Condition (*) for centers 1–4 on this step's configuration.
    pub star_holds: bool,
    pub star_violation: Option<String>,
    pub tracked_class: DivisorClass,
    #[serde(with = "crate::serde_big::scalar")]
    pub degree: BigInt,
    /// Coplanar 4-subsets found geometrically, 1-based labels.
    pub coplanar: Vec<[usize; 4]>,
    pub max_bits: u64,
    pub canonical_form: CanonicalForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationReport {
    pub steps_requested: usize,
    /// Set when the height cap stopped the run early.
    pub truncated: bool,
    pub records: Vec<StepRecord>,
    pub configurations: Vec<Configuration>,
    /// `inequivalent[i][j]`: configurations `i` and `j` differ up to
    /// PGL(4) and relabeling.
    pub inequivalent: Vec<Vec<bool>>,
}

impl IterationReport {
    pub fn steps_completed(&self) -> usize {
        self.records.len().saturating_sub(1)
    }

    pub fn all_star_checks_passed(&self) -> bool {
        // The last record is never used as a Cremona source.
        let used = self.records.len().saturating_sub(1);
        self.records[..used].iter().all(|r| r.star_holds)
    }

    pub fn pairwise_inequivalent(&self) -> bool {
        let n = self.inequivalent.len();
        (0..n).all(|i| (0..n).all(|j| i == j || self.inequivalent[i][j]))
    }

    pub fn degree_table_csv(&self) -> String {
        let mut out = String::from("step,degree,star_holds,coplanar_count,max_bits\n");
        for r in &self.records {
            out.push_str(&format!("{},{},{},{},{}\n", r.step, r.degree, r.star_holds, r.coplanar.len(), r.max_bits));
        }
        out
    }
}

/// A run that stopped on an error, with everything recorded up to it.
#[derive(Debug, thiserror::Error)]
#[error("iteration stopped at step {step}: {source}")]
pub struct IterationError {
    pub step: usize,
    #[source]
    pub source: Error,
    pub partial: Box<IterationReport>,
}

fn record(step: usize, config: &Configuration, tracked: &DivisorClass) -> Result<StepRecord> {
    let violation = star_violation(config, CenterSet::first_four());
    Ok(StepRecord {
        step,
        star_holds: violation.is_none(),
        star_violation: violation.map(|v| v.to_string()),
        tracked_class: tracked.clone(),
        degree: tracked.d.clone(),
        coplanar: config.coplanar_quadruples(),
        max_bits: config.max_bit_length(),
        canonical_form: canonical_form(config)?,
    })
}

fn finish(steps_requested: usize, truncated: bool, records: Vec<StepRecord>, configurations: Vec<Configuration>) -> IterationReport {
    let n = records.len();
    let inequivalent = (0..n)
        .map(|i| (0..n).map(|j| records[i].canonical_form != records[j].canonical_form).collect())
        .collect();
    IterationReport { steps_requested, truncated, records, configurations, inequivalent }
}

/// Applies Cremona at points 1–4 followed by the cyclic shift `steps` times,
/// recording condition (*), a full coplanarity scan, the canonical form and
/// the image of `H − E₅ − E₆ − E₇ − E₈` at every stage.
pub fn lemma3_iterate(
    config: &Configuration,
    steps: usize,
    options: IterateOptions,
) -> std::result::Result<IterationReport, IterationError> {
    let fail = |step, source, records, configs| IterationError {
        step,
        source,
        partial: Box::new(finish(steps, false, records, configs)),
    };
    if steps < 1 {
        return Err(fail(0, Error::InvalidParameter("steps must be at least 1".into()), vec![], vec![]));
    }
    if config.k() != 8 {
        return Err(fail(0, Error::Dimension { expected: 8, got: config.k() }, vec![], vec![]));
    }
    let tracked = iterate_class(&tracked_start(), steps).map_err(|e| fail(0, e, vec![], vec![]))?;
    let word = CremonaWord::coxeter_step(8);

    let mut records = Vec::with_capacity(steps + 1);
    let mut configs = Vec::with_capacity(steps + 1);
    let mut current = config.clone();
    for (step, class) in tracked.iter().enumerate() {
        match record(step, &current, class) {
            Ok(r) => records.push(r),
            Err(e) => return Err(fail(step, e, records, configs)),
        }
        configs.push(current.clone());
        if step == steps {
            break;
        }
        if options.max_bits.is_some_and(|cap| current.max_bit_length() > cap) {
            return Ok(finish(steps, true, records, configs));
        }
        current = match apply_word(&current, &word) {
            Ok((next, _)) => next,
            Err(Error::StarAtStep { violation, .. }) => {
                return Err(fail(step, Error::Star(violation), records, configs));
            }
            Err(e) => return Err(fail(step, e, records, configs)),
        };
    }
    Ok(finish(steps, false, records, configs))
}

/// Cross-checks the geometric scan against the lattice prediction.
///
/// At every step: the tracked class is the corresponding iterate of
/// `H − E₅ − E₆ − E₇ − E₈` and pairs to zero with `4ℓ − Σ eᵢ`, the recorded
/// degree is its degree, every geometrically coplanar 4-subset is the one
/// named by the tracked class when it is a plane class `H − E_a − … − E_d`
/// (and there are none otherwise), the (*) flag matches the scan, and
/// configurations with distinct tracked classes are inequivalent.
pub fn consistency_check(report: &IterationReport) -> bool {
    let n = report.records.len();
    if n == 0 || report.configurations.len() != n || report.inequivalent.len() != n {
        return false;
    }
    let Ok(expected) = iterate_class(&tracked_start(), n - 1) else {
        return false;
    };
    let first_four = CenterSet::first_four();
    for (i, r) in report.records.iter().enumerate() {
        if r.step != i || r.tracked_class != expected[i] || r.degree != r.tracked_class.d {
            return false;
        }
        if r.tracked_class.quartic_pairing() != BigInt::from(0) {
            return false;
        }
        match r.tracked_class.as_plane_class() {
            Some(plane) => {
                if r.coplanar.iter().any(|q| *q != plane) {
                    return false;
                }
            }
            None => {
                if !r.coplanar.is_empty() {
                    return false;
                }
            }
        }
        let blocks_star = r
            .coplanar
            .iter()
            .any(|q| q.iter().filter(|&&l| first_four.contains(l - 1)).count() >= 3);
        if r.star_holds == blocks_star {
            return false;
        }
        if report.inequivalent[i].len() != n {
            return false;
        }
        for j in 0..n {
            if expected[i] != expected[j] && !report.inequivalent[i][j] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::random_config;

    /// Points 5–8 on the plane X3 = 0, points 1–4 off every plane they
    /// could be forced onto.
    pub(crate) fn special_config() -> Configuration {
        Configuration::from_i64(&[
            [3, 1, 4, 1],
            [5, -9, 2, 6],
            [5, 3, -5, 8],
            [9, 7, 9, -3],
            [2, 3, 8, 0],
            [4, -6, 2, 0],
            [6, 4, -3, 0],
            [3, 2, 7, 0],
        ])
        .unwrap()
    }

    #[test]
    fn degree_column_matches_lattice() {
        let c = random_config(21, 20, 8).unwrap();
        let report = lemma3_iterate(&c, 7, IterateOptions::default()).unwrap();
        let degrees: Vec<BigInt> = report.records.iter().map(|r| r.degree.clone()).collect();
        assert_eq!(degrees, [1, 3, 2, 3, 3, 4, 3, 5].map(BigInt::from).to_vec());
        assert!(consistency_check(&report));
        assert!(report.pairwise_inequivalent());
        assert!(report.records.iter().all(|r| r.coplanar.is_empty()));
    }

    #[test]
    fn special_configuration_single_step() {
        let c = special_config();
        assert_eq!(c.coplanar_quadruples(), vec![[5, 6, 7, 8]]);
        let report = lemma3_iterate(&c, 1, IterateOptions::default()).unwrap();
        assert_eq!(report.records[0].coplanar, vec![[5, 6, 7, 8]]);
        assert!(report.records[1].coplanar.is_empty());
        assert!(consistency_check(&report));
    }

    #[test]
    fn corrupted_reports_are_caught() {
        let report = lemma3_iterate(&special_config(), 1, IterateOptions::default()).unwrap();
        let mut bad = report.clone();
        bad.records[1].degree += 1;
        assert!(!consistency_check(&bad));
        let mut bad = report.clone();
        bad.records[1].coplanar.push([1, 2, 3, 4]);
        assert!(!consistency_check(&bad));
        let mut bad = report.clone();
        bad.records[0].star_holds = false;
        assert!(!consistency_check(&bad));
        let mut bad = report;
        bad.inequivalent[0][1] = false;
        assert!(!consistency_check(&bad));
    }

    #[test]
    fn star_violation_returns_partial_report() {
        // Point 5 on the plane through points 1, 2, 3.
        let c = Configuration::from_i64(&[
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 2, 3, 0],
            [1, 1, 1, 1],
            [1, 3, 2, 5],
            [2, 1, 7, 3],
        ])
        .unwrap();
        let err = lemma3_iterate(&c, 3, IterateOptions::default()).unwrap_err();
        assert_eq!(err.step, 0);
        assert!(matches!(err.source, Error::Star(_)));
        assert_eq!(err.partial.records.len(), 1);
        assert!(!err.partial.records[0].star_holds);
    }

    #[test]
    fn height_cap_truncates() {
        let c = random_config(2, 20, 8).unwrap();
        let report = lemma3_iterate(&c, 6, IterateOptions { max_bits: Some(8) }).unwrap();
        assert!(report.truncated);
        assert!(report.steps_completed() < 6);
        assert!(consistency_check(&report));
    }

    #[test]
    fn parameter_errors() {
        let c = random_config(2, 20, 8).unwrap();
        assert!(matches!(
            lemma3_iterate(&c, 0, IterateOptions::default()).unwrap_err().source,
            Error::InvalidParameter(_)
        ));
        let nine = random_config(2, 20, 9).unwrap();
        assert!(matches!(
            lemma3_iterate(&nine, 1, IterateOptions::default()).unwrap_err().source,
            Error::Dimension { .. }
        ));
    }
}
