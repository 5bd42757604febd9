//! Running cases: exact verification at one `q`, certification as an
//! identity in `q`, and parallel suites over parameter grids.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rayon::prelude::*;

use super::{build_sides, CaseParams, IdentityCase, IdentityId, Param, QMode};
use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::qarith::{QContext, Rational};
use crate::qdegree::DegreeProbe;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Evidence that a pass holds identically in `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// Upper bound on the numerator degree in `q` of every difference coefficient.
    pub bound: i64,
    /// The distinct values of `q` at which the difference was evaluated.
    pub points: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub case: IdentityCase,
    pub status: Status,
    /// `lhs - rhs`; zero exactly when the case passes without error.
    pub difference: MPoly,
    pub elapsed: Duration,
    pub error: Option<Error>,
    pub certificate: Option<Certificate>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn evaluate(case: &IdentityCase) -> Result<MPoly> {
    let q = case.q.clone().unwrap_or_else(|| Rational::from_integer(1.into()));
    let ctx = QContext::new(q);
    Ok(build_sides(&ctx, case.id, &case.params)?.difference())
}

/// Expands both sides at the case's `q` and compares them.
pub fn verify(case: &IdentityCase) -> VerifyReport {
    let start = Instant::now();
    let outcome = evaluate(case);
    let elapsed = start.elapsed();
    match outcome {
        Ok(difference) => VerifyReport {
            case: case.clone(),
            status: if difference.is_zero() { Status::Pass } else { Status::Fail },
            difference,
            elapsed,
            error: None,
            certificate: None,
        },
        Err(e) => VerifyReport {
            case: case.clone(),
            status: Status::Fail,
            difference: MPoly::zero(),
            elapsed,
            error: Some(e),
            certificate: None,
        },
    }
}

/// Largest numerator degree in `q` over the coefficients of `lhs - rhs`.
pub(crate) fn degree_bound(id: IdentityId, params: &CaseParams) -> Result<i64> {
    let sides = build_sides(&DegreeProbe, id, params)?;
    let diff = &sides.lhs - &sides.rhs;
    Ok(diff.terms().filter_map(|(_, c)| c.numerator_degree()).max().unwrap_or(0).max(0))
}

/// Positive evaluation points: the requested values first, then 2, 3, 4, ...
/// skipping repeats, until `needed` distinct positive values are listed.
/// Non-positive requested values are kept but not counted.
fn certification_points(q_list: &[Rational], needed: usize) -> Vec<Rational> {
    let mut points: Vec<Rational> = Vec::new();
    for q in q_list {
        if !points.contains(q) {
            points.push(q.clone());
        }
    }
    let mut next = 2i64;
    while points.iter().filter(|q| q.is_positive()).count() < needed {
        let candidate = Rational::from_integer(next.into());
        if !points.contains(&candidate) {
            points.push(candidate);
        }
        next += 1;
    }
    points
}

/// Verifies a deformed identity at enough values of `q` to exceed its degree
/// bound, so a pass is an identity of rational functions in `q`. Stops at the
/// first failing value. Identities not depending on `q` run once.
pub fn certify(id: IdentityId, params: &CaseParams, q_list: &[Rational]) -> VerifyReport {
    let start = Instant::now();
    match id.q_mode() {
        QMode::Free => return verify(&IdentityCase::new(id, *params, None)),
        QMode::Classical => return verify(&IdentityCase::new(id, *params, Some(Rational::from_integer(1.into())))),
        QMode::Deformed => {}
    }
    let bound = match degree_bound(id, params) {
        Ok(b) => b,
        Err(e) => {
            let mut report = verify(&IdentityCase::new(id, *params, q_list.first().cloned()));
            report.error.get_or_insert(e);
            report.status = Status::Fail;
            return report;
        }
    };
    let needed = (bound as usize + 1).max(3);
    let mut evaluated = Vec::new();
    let mut last = None;
    for q in certification_points(q_list, needed) {
        let report = verify(&IdentityCase::new(id, *params, Some(q.clone())));
        evaluated.push(q);
        let failed = !report.passed();
        last = Some(report);
        if failed {
            break;
        }
    }
    let mut report = last.expect("at least three evaluation points");
    report.elapsed = start.elapsed();
    report.certificate = Some(Certificate { bound, points: evaluated });
    report
}

/// Parameter ranges for a suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    /// Range of `k, l, n, r`.
    pub index: RangeInclusive<u32>,
    /// Range of `m, s`.
    pub shape: RangeInclusive<u32>,
    /// Truncation order of series identities.
    pub order: u32,
    /// Number of random instances for the rearrangement lemmas.
    pub seeds: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { index: 0..=4, shape: 1..=3, order: 12, seeds: 100 }
    }
}

impl Grid {
    fn values(&self, p: Param) -> Vec<u64> {
        match p {
            Param::K | Param::L | Param::N | Param::R => self.index.clone().map(u64::from).collect(),
            Param::M | Param::S => self.shape.clone().map(u64::from).collect(),
            Param::Order => vec![u64::from(self.order)],
            Param::Seed => (0..u64::from(self.seeds)).collect(),
            Param::Route => vec![0, 1],
        }
    }

    /// All parameter points of `id`, in lexicographic order of its parameter list.
    pub fn points(&self, id: IdentityId) -> Vec<CaseParams> {
        let mut out = vec![CaseParams::default()];
        for &p in id.params() {
            let values = self.values(p);
            out = out
                .into_iter()
                .flat_map(|base| {
                    values.iter().map(move |&v| {
                        let mut next = base;
                        next.set(p, v);
                        next
                    })
                })
                .collect();
        }
        out
    }
}

/// Runs every tag over the grid, one report per case, in catalog, grid and
/// `q` order regardless of scheduling. With `certified`, each deformed
/// parameter point yields one certified report instead of one per `q`.
pub fn verify_suite(ids: &[IdentityId], grid: &Grid, q_list: &[Rational], certified: bool) -> Vec<VerifyReport> {
    enum Job {
        Plain(IdentityCase),
        Certified(IdentityId, CaseParams),
    }
    let one = Rational::from_integer(1.into());
    let mut jobs = Vec::new();
    for &id in ids {
        for params in grid.points(id) {
            match id.q_mode() {
                QMode::Free => jobs.push(Job::Plain(IdentityCase::new(id, params, None))),
                QMode::Classical => jobs.push(Job::Plain(IdentityCase::new(id, params, Some(one.clone())))),
                QMode::Deformed if certified => jobs.push(Job::Certified(id, params)),
                QMode::Deformed => {
                    for q in q_list {
                        jobs.push(Job::Plain(IdentityCase::new(id, params, Some(q.clone()))));
                    }
                }
            }
        }
    }
    jobs.par_iter()
        .map(|job| match job {
            Job::Plain(case) => verify(case),
            Job::Certified(id, params) => certify(*id, params, q_list),
        })
        .collect()
}
