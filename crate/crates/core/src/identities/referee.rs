//! Deciding between readings of ambiguous formulas, and the specialization
//! coherence checks between catalog entries.

use rayon::prelude::*;

use super::{build_sides, verify_suite, CaseParams, Grid, IdentityId, Param, Sides};
use crate::error::Result;
use crate::mpoly::Var;
use crate::qarith::{QContext, Rational};

/// `(default reading, literal reading)` for each flagged ambiguity.
pub const REFEREE_PAIRS: [(IdentityId, IdentityId); 6] = [
    (IdentityId::T312, IdentityId::T312Lit),
    (IdentityId::T326, IdentityId::T326Lit),
    (IdentityId::C4(15), IdentityId::C415Lit),
    (IdentityId::C4(19), IdentityId::C419Lit),
    (IdentityId::C4(20), IdentityId::C420Lit),
    (IdentityId::L4(26), IdentityId::L426Lit),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefereeReport {
    pub default: IdentityId,
    pub literal: IdentityId,
    /// Number of grid points, and passes of each reading.
    pub cases: usize,
    pub default_passes: usize,
    pub literal_passes: usize,
}

impl RefereeReport {
    /// The reading that passes on every grid point, if exactly one does.
    pub fn winner(&self) -> Option<IdentityId> {
        let default_all = self.default_passes == self.cases;
        let literal_all = self.literal_passes == self.cases;
        match (default_all, literal_all) {
            (true, false) => Some(self.default),
            (false, true) => Some(self.literal),
            _ => None,
        }
    }
}

/// Runs both readings of every pair over the grid.
pub fn referee(grid: &Grid, q_list: &[Rational]) -> Vec<RefereeReport> {
    REFEREE_PAIRS
        .par_iter()
        .map(|&(default, literal)| {
            let a = verify_suite(&[default], grid, q_list, false);
            let b = verify_suite(&[literal], grid, q_list, false);
            RefereeReport {
                default,
                literal,
                cases: a.len(),
                default_passes: a.iter().filter(|r| r.passed()).count(),
                literal_passes: b.iter().filter(|r| r.passed()).count(),
            }
        })
        .collect()
}

/// Outcome of one specialization check over its grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceReport {
    pub name: &'static str,
    pub cases: usize,
    pub agreements: usize,
    /// First disagreeing instance or construction error.
    pub first_failure: Option<String>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.agreements == self.cases && self.first_failure.is_none()
    }
}

struct Specialization {
    name: &'static str,
    general: IdentityId,
    special: IdentityId,
    /// Fixed values imposed on the general instance.
    fixed: &'static [(Param, u64)],
    /// Variables set to zero on the general instance.
    vanish: &'static [Var],
}

const SPECIALIZATIONS: [Specialization; 5] = [
    Specialization {
        name: "C4.2 = C4.1 at l=0",
        general: IdentityId::C4(1),
        special: IdentityId::C4(2),
        fixed: &[(Param::L, 0)],
        vanish: &[],
    },
    Specialization {
        name: "C4.3 = C4.1 at k=0",
        general: IdentityId::C4(1),
        special: IdentityId::C4(3),
        fixed: &[(Param::K, 0)],
        vanish: &[],
    },
    Specialization {
        name: "C4.13 = T3.1-3.12 at z=0",
        general: IdentityId::T312,
        special: IdentityId::C4(13),
        fixed: &[],
        vanish: &[Var::Z],
    },
    Specialization {
        name: "C4.14 = T3.2-3.26 at z=zeta=Z=U=0",
        general: IdentityId::T326,
        special: IdentityId::C4(14),
        fixed: &[],
        vanish: &[Var::Z, Var::Zeta, Var::CapZ, Var::CapU],
    },
    Specialization {
        name: "C4.14 = C4.8 at z=zeta=Z=U=0",
        general: IdentityId::C4(8),
        special: IdentityId::C4(14),
        fixed: &[],
        vanish: &[Var::Z, Var::Zeta, Var::CapZ, Var::CapU],
    },
];

fn specialized_sides(spec: &Specialization, ctx: &QContext, params: &CaseParams) -> Result<(Sides, Sides)> {
    let mut general = *params;
    for &(p, v) in spec.fixed {
        general.set(p, v);
    }
    // the general instance needs every shape index, even those the special one lacks
    if general.s == 0 {
        general.s = 1;
    }
    let lhs = build_sides(ctx, spec.general, &general)?.vanish(spec.vanish);
    let rhs = build_sides(ctx, spec.special, params)?;
    Ok((lhs, rhs))
}

/// Checks that each special case is the structural specialization of its
/// general formula: both sides agree term by term, whether or not the
/// formulas themselves hold.
pub fn coherence_checks(grid: &Grid, q_list: &[Rational]) -> Vec<CoherenceReport> {
    SPECIALIZATIONS
        .par_iter()
        .map(|spec| {
            let mut cases = 0;
            let mut agreements = 0;
            let mut first_failure = None;
            let mut points = grid.points(spec.special);
            if spec.special == IdentityId::C4(13) {
                // the general formula also carries s, which z = 0 eliminates
                points =
                    points.into_iter().flat_map(|p| grid.shape.clone().map(move |s| CaseParams { s, ..p })).collect();
            }
            for params in points {
                for q in q_list {
                    cases += 1;
                    let ctx = QContext::new(q.clone());
                    match specialized_sides(spec, &ctx, &params) {
                        Ok((a, b)) if a == b => agreements += 1,
                        Ok(_) => {
                            first_failure.get_or_insert_with(|| format!("disagree at {params:?} q={q}"));
                        }
                        Err(e) => {
                            first_failure.get_or_insert_with(|| format!("error at {params:?} q={q}: {e}"));
                        }
                    }
                }
            }
            CoherenceReport { name: spec.name, cases, agreements, first_failure }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherence_on_a_small_grid() {
        let grid = Grid { index: 0..=2, shape: 1..=2, order: 4, seeds: 1 };
        let q = vec![Rational::new(1.into(), 2.into())];
        for report in coherence_checks(&grid, &q) {
            assert!(report.passed(), "{report:?}");
            assert!(report.cases > 0);
        }
    }

    #[test]
    fn winner_logic() {
        let mut r = RefereeReport {
            default: IdentityId::C4(15),
            literal: IdentityId::C415Lit,
            cases: 4,
            default_passes: 4,
            literal_passes: 1,
        };
        assert_eq!(r.winner(), Some(IdentityId::C4(15)));
        r.literal_passes = 4;
        assert_eq!(r.winner(), None);
        r.default_passes = 0;
        assert_eq!(r.winner(), Some(IdentityId::C415Lit));
    }
}
