//! Approval profiles, committees and the plain-text profile format.
//!
//! The format is line oriented (UTF-8, LF):
//!
//! ```text
//! # comment
//! 3 2        <- m k
//! 0 1        <- ballot of voter 0
//! 0
//! -          <- empty ballot
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Indices within a
//! ballot must be strictly increasing; the voter count is the number of ballot
//! lines.

use crate::sets::{CandidateSet, MAX_CANDIDATES};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("line {line}: malformed header, expected `m k`")]
    MalformedHeader { line: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: malformed ballot token {token:?}")]
    MalformedBallot { line: usize, token: String },
    #[error("line {line}: candidate {candidate} out of range for m = {m}")]
    CandidateOutOfRange {
        line: usize,
        candidate: usize,
        m: usize,
    },
    #[error("line {line}: candidate {candidate} listed twice")]
    DuplicateCandidate { line: usize, candidate: usize },
    #[error("line {line}: ballot indices must be strictly increasing")]
    UnsortedBallot { line: usize },
    #[error("committee size k = {k} exceeds the number of candidates m = {m}")]
    KExceedsM { k: usize, m: usize },
    #[error("profile needs at least one voter")]
    NoVoters,
    #[error("profile needs between 1 and {MAX_CANDIDATES} candidates, got {0}")]
    CandidateCount(usize),
    #[error("ballot of voter {voter} mentions candidates outside 0..{m}")]
    BallotOutOfRange { voter: usize, m: usize },
    #[error("committee has {got} members, expected {expected}")]
    CommitteeSize { got: usize, expected: usize },
    #[error("committee member {0} is not a candidate of this profile")]
    CommitteeOutOfRange(usize),
    #[error("malformed committee list {0:?}")]
    MalformedCommittee(String),
}

/// Ballots `A_1..A_n` over candidates `0..m`. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct ApprovalProfile {
    m: usize,
    ballots: Vec<CandidateSet>,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    m: usize,
    ballots: Vec<CandidateSet>,
}

impl TryFrom<RawProfile> for ApprovalProfile {
    type Error = ProfileError;

    fn try_from(raw: RawProfile) -> Result<Self, ProfileError> {
        ApprovalProfile::new(raw.m, raw.ballots)
    }
}

impl From<ApprovalProfile> for RawProfile {
    fn from(p: ApprovalProfile) -> Self {
        RawProfile {
            m: p.m,
            ballots: p.ballots,
        }
    }
}

impl ApprovalProfile {
    pub fn new(m: usize, ballots: Vec<CandidateSet>) -> Result<Self, ProfileError> {
        if m == 0 || m > MAX_CANDIDATES {
            return Err(ProfileError::CandidateCount(m));
        }
        if ballots.is_empty() {
            return Err(ProfileError::NoVoters);
        }
        let all = CandidateSet::full(m);
        if let Some(voter) = ballots.iter().position(|b| !b.is_subset(all)) {
            return Err(ProfileError::BallotOutOfRange { voter, m });
        }
        Ok(ApprovalProfile { m, ballots })
    }

    /// Convenience constructor from index lists; panics on invalid input.
    pub fn from_lists(m: usize, ballots: &[&[usize]]) -> Self {
        let ballots = ballots
            .iter()
            .map(|b| b.iter().copied().collect())
            .collect();
        ApprovalProfile::new(m, ballots).expect("invalid profile")
    }

    /// Number of voters.
    pub fn n(&self) -> usize {
        self.ballots.len()
    }

    /// Number of candidates.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ballots(&self) -> &[CandidateSet] {
        &self.ballots
    }

    pub fn ballot(&self, voter: usize) -> CandidateSet {
        self.ballots[voter]
    }

    pub fn candidates(&self) -> CandidateSet {
        CandidateSet::full(self.m)
    }

    /// Number of voters approving each candidate.
    pub fn approval_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.m];
        for b in &self.ballots {
            for c in b.iter() {
                counts[c] += 1;
            }
        }
        counts
    }

    /// Candidates approved by at least one voter.
    pub fn approved_union(&self) -> CandidateSet {
        self.ballots
            .iter()
            .fold(CandidateSet::EMPTY, |acc, b| acc.union(*b))
    }

    /// A copy with `candidate` added to the ballot of `voter`.
    pub fn with_approval(&self, voter: usize, candidate: usize) -> Self {
        let mut ballots = self.ballots.clone();
        ballots[voter].insert(candidate);
        ApprovalProfile { m: self.m, ballots }
    }

    /// Relabels candidate `c` as `perm[c]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.m);
        let ballots = self
            .ballots
            .iter()
            .map(|b| b.iter().map(|c| perm[c]).collect())
            .collect();
        ApprovalProfile { m: self.m, ballots }
    }
}

/// A winning set `W` of exactly `k` candidates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Committee {
    members: CandidateSet,
}

impl Committee {
    pub fn new(
        profile: &ApprovalProfile,
        members: CandidateSet,
        k: usize,
    ) -> Result<Self, ProfileError> {
        if k > profile.m() {
            return Err(ProfileError::KExceedsM { k, m: profile.m() });
        }
        if let Some(c) = members.difference(profile.candidates()).first() {
            return Err(ProfileError::CommitteeOutOfRange(c));
        }
        if members.len() != k {
            return Err(ProfileError::CommitteeSize {
                got: members.len(),
                expected: k,
            });
        }
        Ok(Committee { members })
    }

    /// Builds a committee without a size target; used by rules, which
    /// construct members and size together.
    pub(crate) fn from_members(members: CandidateSet) -> Self {
        Committee { members }
    }

    pub fn members(&self) -> CandidateSet {
        self.members
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    /// Parses `0,2,5`. Indices must be strictly ascending.
    pub fn parse_list(text: &str) -> Result<CandidateSet, ProfileError> {
        let err = || ProfileError::MalformedCommittee(text.to_string());
        let text = text.trim();
        if text.is_empty() {
            return Ok(CandidateSet::EMPTY);
        }
        let mut set = CandidateSet::EMPTY;
        let mut prev: Option<usize> = None;
        for tok in text.split(',') {
            let c: usize = tok.trim().parse().map_err(|_| err())?;
            if c >= MAX_CANDIDATES || prev.is_some_and(|p| c <= p) {
                return Err(err());
            }
            prev = Some(c);
            set.insert(c);
        }
        Ok(set)
    }
}

impl fmt::Display for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.members.fmt(f)
    }
}

/// A profile together with its target committee size.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Instance {
    pub profile: ApprovalProfile,
    pub k: usize,
}

impl Instance {
    pub fn new(profile: ApprovalProfile, k: usize) -> Result<Self, ProfileError> {
        if k > profile.m() {
            return Err(ProfileError::KExceedsM { k, m: profile.m() });
        }
        Ok(Instance { profile, k })
    }

    /// Canonical text form: sorted indices, single spaces, LF endings.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.profile.m(), self.k);
        for b in self.profile.ballots() {
            push_ballot(&mut out, *b);
            out.push('\n');
        }
        out
    }
}

fn push_ballot(out: &mut String, ballot: CandidateSet) {
    use std::fmt::Write;
    if ballot.is_empty() {
        out.push('-');
        return;
    }
    for (i, c) in ballot.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{c}").unwrap();
    }
}

/// Reads a profile file. `k` is taken from the header.
pub fn parse_profile(text: &str) -> Result<Instance, ProfileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ProfileError::MissingHeader)?;
    let bad_header = || ProfileError::MalformedHeader { line: hline };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [m, k] = fields[..] else {
        return Err(bad_header());
    };
    let m: usize = m.parse().map_err(|_| bad_header())?;
    let k: usize = k.parse().map_err(|_| bad_header())?;
    if m == 0 || k == 0 {
        return Err(bad_header());
    }
    if m > MAX_CANDIDATES {
        return Err(ProfileError::CandidateCount(m));
    }
    if k > m {
        return Err(ProfileError::KExceedsM { k, m });
    }

    let mut ballots = Vec::new();
    for (line, body) in lines {
        ballots.push(parse_ballot(line, body, m)?);
    }
    let profile = ApprovalProfile::new(m, ballots)?;
    Ok(Instance { profile, k })
}

fn parse_ballot(line: usize, body: &str, m: usize) -> Result<CandidateSet, ProfileError> {
    if body == "-" {
        return Ok(CandidateSet::EMPTY);
    }
    let mut set = CandidateSet::EMPTY;
    let mut prev: Option<usize> = None;
    for token in body.split_whitespace() {
        let c: usize = token.parse().map_err(|_| ProfileError::MalformedBallot {
            line,
            token: token.to_string(),
        })?;
        if c >= m {
            return Err(ProfileError::CandidateOutOfRange {
                line,
                candidate: c,
                m,
            });
        }
        if set.contains(c) {
            return Err(ProfileError::DuplicateCandidate { line, candidate: c });
        }
        if prev.is_some_and(|p| c < p) {
            return Err(ProfileError::UnsortedBallot { line });
        }
        prev = Some(c);
        set.insert(c);
    }
    Ok(set)
}
