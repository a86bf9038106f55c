//! Detection of polarized profiles: voters split into groups with identical
//! ballots, and distinct groups approve disjoint candidate sets.

use crate::profile::ApprovalProfile;
use crate::sets::CandidateSet;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoterGroup {
    /// Voters in ascending order.
    pub voters: Vec<usize>,
    pub candidates: CandidateSet,
}

impl VoterGroup {
    pub fn size(&self) -> usize {
        self.voters.len()
    }
}

/// Groups ordered by their smallest voter. Voters with empty ballots belong
/// to no group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizedPartition {
    pub groups: Vec<VoterGroup>,
}

impl PolarizedPartition {
    /// Index of the group whose candidate set contains `c`.
    pub fn group_of_candidate(&self, c: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.candidates.contains(c))
    }
}

pub fn is_polarized(profile: &ApprovalProfile) -> Option<PolarizedPartition> {
    let mut groups: Vec<VoterGroup> = Vec::new();
    for (voter, &ballot) in profile.ballots().iter().enumerate() {
        if ballot.is_empty() {
            continue;
        }
        match groups.iter_mut().find(|g| g.candidates == ballot) {
            Some(g) => g.voters.push(voter),
            None => {
                if groups.iter().any(|g| !g.candidates.is_disjoint(ballot)) {
                    return None;
                }
                groups.push(VoterGroup {
                    voters: vec![voter],
                    candidates: ballot,
                });
            }
        }
    }
    Some(PolarizedPartition { groups })
}
