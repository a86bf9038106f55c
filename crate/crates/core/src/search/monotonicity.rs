//! Committee and candidate monotonicity harnesses.

use super::{scan, Bounds, Eval, SearchError};
use crate::profile::{ApprovalProfile, Committee, Instance};
use crate::rules::{compute, Rule, RuleError};
use crate::sets::CandidateSet;
use serde::{Deserialize, Serialize};

/// Largest `m` for which all `m!` tie-break orders are tried.
pub const FULL_TIE_CLOSURE_MAX_M: usize = 6;

const DEFAULT_TIE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    /// Every outcome under some tie-break order.
    TieClosed,
    /// Only the outcome of the lexicographic tie-break.
    ResoluteOnly,
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// Advances `perm` to the next permutation in lexicographic order.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm
        .iter()
        .rposition(|&x| x > perm[i])
        .expect("successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Every committee `rule` can output at size `k` under some tie-break
/// order. Rules break ties by candidate index, so running them on each
/// relabeling of the candidates and mapping back covers all orders. For
/// `m` above [`FULL_TIE_CLOSURE_MAX_M`] only the resolute outcome is
/// returned. Outcomes are sorted lexicographically.
pub fn tie_closed_outcomes(
    rule: Rule,
    profile: &ApprovalProfile,
    k: usize,
) -> Result<(Vec<CandidateSet>, Semantics), RuleError> {
    let m = profile.m();
    if m > FULL_TIE_CLOSURE_MAX_M {
        let w = compute(rule, profile, k)?.committee.members();
        return Ok((vec![w], Semantics::ResoluteOnly));
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut seen = Vec::new();
    loop {
        let relabeled = profile.relabel(&perm);
        let w = compute(rule, &relabeled, k)?.committee.members();
        let back: CandidateSet = (0..m).filter(|&c| w.contains(perm[c])).collect();
        if !seen.contains(&back) {
            seen.push(back);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    seen.sort_by(|a, b| a.lex_cmp(*b));
    Ok((seen, semantics_for(m)))
}

fn semantics_for(m: usize) -> Semantics {
    if m > FULL_TIE_CLOSURE_MAX_M {
        Semantics::ResoluteOnly
    } else {
        Semantics::TieClosed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitteeMonotonicityBreak {
    pub k: usize,
    /// An outcome at size `k` contained in no outcome at size `k + 1`.
    pub committee: CandidateSet,
    pub larger: Vec<CandidateSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitteeMonotonicityReport {
    pub rule: Rule,
    pub k_max: usize,
    pub semantics: Semantics,
    pub monotone: bool,
    /// Outcome sets for `k = 1..=k_max`; empty when `k_max < 2`.
    pub outcomes: Vec<Vec<CandidateSet>>,
    pub break_point: Option<CommitteeMonotonicityBreak>,
}

fn first_break(
    small: &[CandidateSet],
    large: &[CandidateSet],
    k: usize,
) -> Option<CommitteeMonotonicityBreak> {
    small
        .iter()
        .find(|w| !large.iter().any(|v| w.is_subset(*v)))
        .map(|&committee| CommitteeMonotonicityBreak {
            k,
            committee,
            larger: large.to_vec(),
        })
}

/// Tests whether every outcome at `k` extends to an outcome at `k + 1`, for
/// all `k < k_max`. `tie_budget` caps the number of rule runs.
pub fn check_committee_monotonicity(
    rule: Rule,
    profile: &ApprovalProfile,
    k_max: usize,
    tie_budget: Option<u64>,
) -> Result<CommitteeMonotonicityReport, SearchError> {
    let m = profile.m();
    if k_max > m {
        return Err(SearchError::KMax { k_max, m });
    }
    let semantics = semantics_for(m);
    let mut report = CommitteeMonotonicityReport {
        rule,
        k_max,
        semantics,
        monotone: true,
        outcomes: Vec::new(),
        break_point: None,
    };
    if k_max < 2 {
        return Ok(report);
    }
    let per_k = if semantics == Semantics::TieClosed {
        factorial(m)
    } else {
        1
    };
    let needed = per_k * k_max as u64;
    let budget = tie_budget.unwrap_or(DEFAULT_TIE_BUDGET);
    if needed > budget {
        return Err(SearchError::TieBudget { needed, budget });
    }
    for k in 1..=k_max {
        let (outs, _) = tie_closed_outcomes(rule, profile, k)
            .map_err(|source| SearchError::Rule { index: 0, source })?;
        report.outcomes.push(outs);
    }
    for k in 1..k_max {
        if let Some(b) = first_break(&report.outcomes[k - 1], &report.outcomes[k], k) {
            report.monotone = false;
            report.break_point = Some(b);
            break;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityHit {
    pub index: u64,
    /// The profile with `k` set to the size at which the break occurs.
    pub instance: Instance,
    pub report: CommitteeMonotonicityReport,
}

/// Lowest-index instance `(P, k)` within `bounds`, `k < m`, where some
/// outcome at `k` has no extension among the outcomes at `k + 1`. Profiles
/// outside the rule's domain are skipped.
pub fn find_committee_monotonicity_break(
    rule: Rule,
    bounds: Bounds,
    threads: usize,
) -> Result<Option<MonotonicityHit>, SearchError> {
    let space = bounds.space()?;
    let found = scan(0..space.len(), threads, true, |index| {
        let inst = space.get(index).expect("index in range");
        let (p, k) = (&inst.profile, inst.k);
        if k >= p.m() {
            return Ok(Eval::Skipped);
        }
        let outs = |k| match tie_closed_outcomes(rule, p, k) {
            Ok((o, _)) => Ok(Some(o)),
            Err(RuleError::NotPolarized) => Ok(None),
            Err(source) => Err(SearchError::Rule { index, source }),
        };
        let (Some(small), Some(large)) = (outs(k)?, outs(k + 1)?) else {
            return Ok(Eval::Skipped);
        };
        if first_break(&small, &large, k).is_none() {
            return Ok(Eval::Clean(0));
        }
        let report = check_committee_monotonicity(rule, p, k + 1, None)?;
        Ok(Eval::Hit(
            MonotonicityHit {
                index,
                instance: inst,
                report,
            },
            0,
        ))
    })?;
    Ok(found.hits.into_iter().next().map(|(_, hit)| hit))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateMonotonicityBreak {
    pub candidate: usize,
    pub voter: usize,
    pub committee_after: Committee,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateMonotonicityReport {
    pub rule: Rule,
    pub k: usize,
    pub committee: Committee,
    pub monotone: bool,
    pub reruns: u64,
    pub counterexample: Option<CandidateMonotonicityBreak>,
}

/// For each elected `c` and each voter not yet approving it, adds that one
/// approval and reruns the (resolute) rule; a violation is `c` dropping out.
pub fn check_candidate_monotonicity(
    rule: Rule,
    profile: &ApprovalProfile,
    k: usize,
) -> Result<CandidateMonotonicityReport, RuleError> {
    let committee = compute(rule, profile, k)?.committee;
    let mut report = CandidateMonotonicityReport {
        rule,
        k,
        committee,
        monotone: true,
        reruns: 0,
        counterexample: None,
    };
    for c in committee.members().iter() {
        for voter in (0..profile.n()).filter(|&i| !profile.ballot(i).contains(c)) {
            report.reruns += 1;
            let after = compute(rule, &profile.with_approval(voter, c), k)?.committee;
            if !after.members().contains(c) {
                report.monotone = false;
                report.counterexample = Some(CandidateMonotonicityBreak {
                    candidate: c,
                    voter,
                    committee_after: after,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}
