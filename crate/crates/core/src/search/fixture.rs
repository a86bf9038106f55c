//! Regression fixtures: a profile file preceded by `key: value` lines.
//!
//! ```text
//! # comment
//! rule: seqpav
//! axiom: jr
//! committee: 0,1,2
//! expect: violated
//! 4 3
//! 0 1
//! ...
//! ```
//!
//! `expect` is one of `violated` (the committee, or the rule's output,
//! fails the axiom), `empty-strict-core` (no size-`k` committee is in the
//! strict core) or `committee-mono-break` (the rule's outcomes at `k` do not
//! all extend to outcomes at `k + 1`).

use super::monotonicity::check_committee_monotonicity;
use super::stability::empty_strict_core_witnesses;
use crate::axioms::{check, validate_witness, Axiom, CheckOptions};
use crate::profile::{parse_profile, Committee, Instance, ProfileError};
use crate::rules::{compute, Rule};
use crate::sets::CandidateSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("fixture line {line}: {msg}")]
    Field { line: usize, msg: String },
    #[error("fixture is missing `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Violated,
    EmptyStrictCore,
    CommitteeMonoBreak,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub instance: Instance,
    pub rule: Option<Rule>,
    pub axiom: Option<Axiom>,
    pub committee: Option<CandidateSet>,
    pub expect: Expectation,
}

pub fn parse_fixture(text: &str) -> Result<Fixture, FixtureError> {
    let mut rule = None;
    let mut axiom = None;
    let mut committee = None;
    let mut expect = None;
    let mut body = String::new();
    let mut in_body = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let field = |msg: String| FixtureError::Field { line: i + 1, msg };
        if in_body || line.is_empty() || line.starts_with('#') || !line.contains(':') {
            in_body |= !line.is_empty() && !line.starts_with('#');
            body.push_str(raw);
            body.push('\n');
            continue;
        }
        let (key, value) = line.split_once(':').expect("checked above");
        let value = value.trim();
        match key.trim() {
            "rule" => rule = Some(value.parse::<Rule>().map_err(field)?),
            "axiom" => axiom = Some(value.parse::<Axiom>().map_err(field)?),
            "committee" => {
                committee = Some(Committee::parse_list(value).map_err(|e| field(e.to_string()))?)
            }
            "expect" => {
                expect = Some(match value {
                    "violated" => Expectation::Violated,
                    "empty-strict-core" => Expectation::EmptyStrictCore,
                    "committee-mono-break" => Expectation::CommitteeMonoBreak,
                    other => return Err(field(format!("unknown expectation {other:?}"))),
                })
            }
            other => return Err(field(format!("unknown key {other:?}"))),
        }
    }
    let fixture = Fixture {
        instance: parse_profile(&body)?,
        rule,
        axiom,
        committee,
        expect: expect.ok_or(FixtureError::Missing("expect"))?,
    };
    match fixture.expect {
        Expectation::Violated if fixture.axiom.is_none() => Err(FixtureError::Missing("axiom")),
        Expectation::Violated if fixture.rule.is_none() && fixture.committee.is_none() => {
            Err(FixtureError::Missing("rule or committee"))
        }
        Expectation::CommitteeMonoBreak if fixture.rule.is_none() => {
            Err(FixtureError::Missing("rule"))
        }
        _ => Ok(fixture),
    }
}

impl Fixture {
    /// Re-runs the fixture. `Ok` means it still fails the way it records.
    pub fn replay(&self) -> Result<(), String> {
        let p = &self.instance.profile;
        let k = self.instance.k;
        match self.expect {
            Expectation::Violated => {
                let axiom = self.axiom.expect("validated at parse time");
                let committee = if let Some(rule) = self.rule {
                    let out = compute(rule, p, k).map_err(|e| e.to_string())?.committee;
                    if self.committee.is_some_and(|c| c != out.members()) {
                        return Err(format!("{rule} now outputs {out}"));
                    }
                    out
                } else {
                    let members = self.committee.expect("validated at parse time");
                    Committee::new(p, members, k).map_err(|e| e.to_string())?
                };
                let v = check(axiom, p, &committee, &CheckOptions::default())
                    .map_err(|e| e.to_string())?;
                let w = v
                    .witness
                    .ok_or_else(|| format!("{committee} now satisfies {axiom}"))?;
                validate_witness(axiom, p, &committee, &w)
            }
            Expectation::EmptyStrictCore => {
                let all = empty_strict_core_witnesses(p, k, &CheckOptions::default())
                    .map_err(|e| e.to_string())?
                    .ok_or("some committee lies in the strict core")?;
                for (w, wit) in &all {
                    validate_witness(Axiom::StrictCore, p, w, wit)?;
                }
                Ok(())
            }
            Expectation::CommitteeMonoBreak => {
                let rule = self.rule.expect("validated at parse time");
                let r = check_committee_monotonicity(rule, p, k + 1, None)
                    .map_err(|e| e.to_string())?;
                match r.break_point {
                    Some(b) if b.k == k => Ok(()),
                    Some(b) => Err(format!("break moved to k = {}", b.k)),
                    None => Err("rule is now committee monotone here".into()),
                }
            }
        }
    }
}
