//! Committee selection rules. Every rule is deterministic: ties go to the
//! smallest candidate index, and each outcome carries a replayable trace.

mod gspav;
mod pav;
mod phragmen;

pub use gspav::gspav;
pub use pav::{
    ls_pav, pav_exact, pav_exact_with_budget, pav_score, revseqpav, seqpav, PavOptimum,
    DEFAULT_NODE_BUDGET,
};
pub use phragmen::{seq_phragmen, seq_phragmen_with};

use crate::profile::{ApprovalProfile, Committee, ProfileError};
use crate::score::ExactScore;
use crate::sets::CandidateSet;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("profile is not polarized; use a general rule such as seqpav, pav or phragmen")]
    NotPolarized,
    #[error("exact search exhausted its budget of {budget} nodes")]
    BudgetExhausted { budget: u64 },
    #[error("seat {seat} cannot go to an approved candidate and filling is disabled")]
    UnapprovableSeat { seat: usize },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Gspav,
    Seqpav,
    Revseqpav,
    Pav,
    Phragmen,
    Lspav,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::Gspav,
        Rule::Seqpav,
        Rule::Revseqpav,
        Rule::Pav,
        Rule::Phragmen,
        Rule::Lspav,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Gspav => "gspav",
            Rule::Seqpav => "seqpav",
            Rule::Revseqpav => "revseqpav",
            Rule::Pav => "pav",
            Rule::Phragmen => "phragmen",
            Rule::Lspav => "lspav",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Add,
    Remove,
}

/// One sequential step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub action: Action,
    pub candidate: usize,
    /// The quantity that decided the round: marginal PAV gain (seqpav),
    /// score decrease (revseqpav), group quotient (gspav) or the new maximal
    /// load (phragmen).
    pub value: ExactScore,
    /// Other candidates that attained the same value.
    pub tied: Vec<usize>,
    /// Seat given to an unapproved candidate because nothing approvable was left.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub filler: bool,
    /// gspav: representatives per group after this round.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_seats: Option<Vec<usize>>,
    /// phragmen: per-voter loads after this round.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loads: Option<Vec<ExactScore>>,
}

impl Round {
    fn new(action: Action, candidate: usize, value: ExactScore, tied: Vec<usize>) -> Self {
        Round {
            action,
            candidate,
            value,
            tied,
            filler: false,
            group_seats: None,
            loads: None,
        }
    }
}

/// A local-search exchange.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Swap {
    pub removed: usize,
    pub added: usize,
    pub gain: ExactScore,
}

/// Result of the global PAV optimizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimumRecord {
    pub committee: CandidateSet,
    pub score: ExactScore,
    /// Number of committees attaining the optimum.
    pub optima: u64,
    /// Search nodes visited.
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionTrace {
    pub rule: Rule,
    pub k: usize,
    pub rounds: Vec<Round>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub swaps: Vec<Swap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<OptimumRecord>,
}

impl SelectionTrace {
    fn new(rule: Rule, k: usize) -> Self {
        SelectionTrace {
            rule,
            k,
            rounds: Vec::new(),
            swaps: Vec::new(),
            optimum: None,
        }
    }

    /// Rebuilds the committee from the recorded steps alone.
    pub fn replay(&self, m: usize) -> CandidateSet {
        if let Some(opt) = &self.optimum {
            return opt.committee;
        }
        let mut w = if self.rule == Rule::Revseqpav {
            CandidateSet::full(m)
        } else {
            CandidateSet::EMPTY
        };
        for r in &self.rounds {
            match r.action {
                Action::Add => w.insert(r.candidate),
                Action::Remove => w.remove(r.candidate),
            }
        }
        for s in &self.swaps {
            w.remove(s.removed);
            w.insert(s.added);
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub committee: Committee,
    pub trace: SelectionTrace,
}

/// Runs `rule` with default settings.
pub fn compute(rule: Rule, profile: &ApprovalProfile, k: usize) -> Result<Outcome, RuleError> {
    if k > profile.m() {
        return Err(ProfileError::KExceedsM { k, m: profile.m() }.into());
    }
    match rule {
        Rule::Gspav => gspav(profile, k),
        Rule::Seqpav => Ok(seqpav(profile, k)),
        Rule::Revseqpav => Ok(revseqpav(profile, k)),
        Rule::Pav => pav_exact(profile, k).map(|o| o.outcome),
        Rule::Phragmen => seq_phragmen(profile, k),
        Rule::Lspav => Ok(ls_pav(profile, k)),
    }
}

/// Lowest-index candidate outside `taken`, for filler seats.
fn first_free(m: usize, taken: CandidateSet) -> usize {
    CandidateSet::full(m)
        .difference(taken)
        .first()
        .expect("k <= m leaves a free candidate")
}
