//! Exact verifiers for the justified-representation family.
//!
//! Every group-size test is cross-multiplied (`k * |X| >= ell * n`), so no
//! division happens anywhere in this module. Checks that are exponential in
//! the number of candidates count the candidate sets they visit and fail with
//! [`AxiomError::BudgetExhausted`] past the configured limit.
//!
//! Witnesses are reported in a fixed order: `ell` ascending, then the
//! certifying candidate set in lexicographic order.

mod blocking;
mod cohesive;
mod quota;
mod validate;

pub use blocking::{check_cjr, check_strict_core};
pub use cohesive::{check_ejr, check_jr, check_pjr};
pub use quota::check_polarized_quota;
pub use validate::validate_witness;

use crate::profile::{ApprovalProfile, Committee};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_CHECK_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomError {
    #[error("axiom check exhausted its budget of {budget} candidate sets")]
    BudgetExhausted { budget: u64 },
    #[error("profile is not polarized")]
    NotPolarized,
    #[error("cohesion level {ell} outside 1..={k}")]
    EllOutOfRange { ell: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Jr,
    Pjr,
    Ejr,
    Cjr,
    #[serde(rename = "strictcore")]
    StrictCore,
    Quota,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Jr,
        Axiom::Pjr,
        Axiom::Ejr,
        Axiom::Cjr,
        Axiom::StrictCore,
        Axiom::Quota,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Jr => "jr",
            Axiom::Pjr => "pjr",
            Axiom::Ejr => "ejr",
            Axiom::Cjr => "cjr",
            Axiom::StrictCore => "strictcore",
            Axiom::Quota => "quota",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

/// A cohesive group the committee underrepresents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohesiveWitness {
    pub voters: Vec<usize>,
    pub ell: usize,
    /// `ell` candidates every voter in the group approves.
    pub common: Vec<usize>,
}

/// A coalition with a deviation `D` it prefers to the committee.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingWitness {
    pub voters: Vec<usize>,
    pub ell: usize,
    pub deviation: Vec<usize>,
    /// Members strictly better off under the deviation.
    pub strict_members: Vec<usize>,
}

/// A polarized group seated below its quota.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotaWitness {
    pub voters: Vec<usize>,
    pub candidates: Vec<usize>,
    pub quota: usize,
    pub seated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Cohesive(CohesiveWitness),
    Blocking(BlockingWitness),
    Quota(QuotaWitness),
}

impl Witness {
    pub fn voters(&self) -> &[usize] {
        match self {
            Witness::Cohesive(w) => &w.voters,
            Witness::Blocking(w) => &w.voters,
            Witness::Quota(w) => &w.voters,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Witness::Cohesive(w) => write!(
                f,
                "voters {{{}}} with ell = {} commonly approve {{{}}}",
                list(&w.voters),
                w.ell,
                list(&w.common)
            ),
            Witness::Blocking(w) => write!(
                f,
                "voters {{{}}} with ell = {} prefer {{{}}} (strictly: {{{}}})",
                list(&w.voters),
                w.ell,
                list(&w.deviation),
                list(&w.strict_members)
            ),
            Witness::Quota(w) => write!(
                f,
                "group {{{}}} approving {{{}}} has {} seats, quota {}",
                list(&w.voters),
                list(&w.candidates),
                w.seated,
                w.quota
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub satisfied: bool,
    /// First witness in enumeration order; present iff violated.
    pub witness: Option<Witness>,
    /// Further witnesses, filled only when all witnesses were requested.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub more_witnesses: Vec<Witness>,
    /// Inclusive range of cohesion levels examined, if any.
    pub ell_range: Option<(usize, usize)>,
    /// Candidate sets visited by the search.
    pub sets_examined: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Restrict PJR/EJR to one cohesion level.
    pub ell: Option<usize>,
    pub budget: u64,
    pub all_witnesses: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            ell: None,
            budget: DEFAULT_CHECK_BUDGET,
            all_witnesses: false,
        }
    }
}

/// Runs any axiom check.
pub fn check(
    axiom: Axiom,
    profile: &ApprovalProfile,
    committee: &Committee,
    opts: &CheckOptions,
) -> Result<AxiomVerdict, AxiomError> {
    match axiom {
        Axiom::Jr => Ok(cohesive::jr(profile, committee, opts.all_witnesses)),
        Axiom::Pjr => cohesive::pjr(profile, committee, opts),
        Axiom::Ejr => cohesive::ejr(profile, committee, opts),
        Axiom::Cjr => blocking::search(profile, committee, blocking::Mode::Cjr, opts),
        Axiom::StrictCore => blocking::search(profile, committee, blocking::Mode::StrictCore, opts),
        Axiom::Quota => check_polarized_quota(profile, committee),
    }
}

/// Collects witnesses and counts visited sets against the budget.
struct Collector {
    budget: u64,
    examined: u64,
    all: bool,
    found: Vec<Witness>,
}

impl Collector {
    fn new(opts: &CheckOptions) -> Self {
        Collector {
            budget: opts.budget,
            examined: 0,
            all: opts.all_witnesses,
            found: Vec::new(),
        }
    }

    fn tick(&mut self) -> Result<(), AxiomError> {
        self.examined += 1;
        if self.examined > self.budget {
            Err(AxiomError::BudgetExhausted {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    /// Records a witness; returns true when the search should stop.
    fn push(&mut self, w: Witness) -> bool {
        self.found.push(w);
        !self.all
    }

    fn done(&self) -> bool {
        !self.all && !self.found.is_empty()
    }

    fn verdict(self, axiom: Axiom, ell_range: Option<(usize, usize)>) -> AxiomVerdict {
        let mut found = self.found.into_iter();
        let witness = found.next();
        AxiomVerdict {
            axiom,
            satisfied: witness.is_none(),
            witness,
            more_witnesses: found.collect(),
            ell_range,
            sets_examined: self.examined,
        }
    }
}

/// Cohesion levels to examine: the requested one, or `1..=k`.
fn ell_levels(ell: Option<usize>, k: usize) -> Result<Option<(usize, usize)>, AxiomError> {
    match ell {
        Some(l) if l == 0 || l > k => Err(AxiomError::EllOutOfRange { ell: l, k }),
        Some(l) => Ok(Some((l, l))),
        None if k == 0 => Ok(None),
        None => Ok(Some((1, k))),
    }
}

/// `k * size >= ell * n`, i.e. `size >= ell * n / k`.
#[inline]
fn large_enough(size: usize, ell: usize, n: usize, k: usize) -> bool {
    (k as u128) * (size as u128) >= (ell as u128) * (n as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert!("core".parse::<Axiom>().is_err());
    }

    #[test]
    fn ell_levels_validate() {
        assert_eq!(ell_levels(None, 3), Ok(Some((1, 3))));
        assert_eq!(ell_levels(Some(2), 3), Ok(Some((2, 2))));
        assert_eq!(ell_levels(None, 0), Ok(None));
        assert!(ell_levels(Some(0), 3).is_err());
        assert!(ell_levels(Some(4), 3).is_err());
    }

    #[test]
    fn verdict_serializes_with_tagged_witness() {
        let p = ApprovalProfile::from_lists(3, &[&[2], &[2], &[0], &[1]]);
        let w = Committee::new(&p, [0, 1].into_iter().collect(), 2).unwrap();
        let v = check_jr(&p, &w);
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["axiom"], "jr");
        assert_eq!(json["witness"]["kind"], "cohesive");
        assert_eq!(json["witness"]["voters"], serde_json::json!([0, 1]));
        let back: AxiomVerdict = serde_json::from_value(json).unwrap();
        assert_eq!(back, v);
    }
}
