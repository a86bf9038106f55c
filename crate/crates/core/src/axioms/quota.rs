use super::{Axiom, AxiomError, AxiomVerdict, QuotaWitness, Witness};
use crate::polarized::is_polarized;
use crate::profile::{ApprovalProfile, Committee};

/// On a polarized profile, every group `G` must receive at least
/// `min(floor(k |G| / n), |C_G|)` of its candidates.
pub fn check_polarized_quota(
    profile: &ApprovalProfile,
    committee: &Committee,
) -> Result<AxiomVerdict, AxiomError> {
    let partition = is_polarized(profile).ok_or(AxiomError::NotPolarized)?;
    let (n, k) = (profile.n(), committee.k());
    let mut examined = 0;
    let mut witness = None;
    for group in &partition.groups {
        examined += 1;
        let quota = (k * group.size() / n).min(group.candidates.len());
        let seated = group.candidates.overlap(committee.members());
        if seated < quota {
            witness = Some(Witness::Quota(QuotaWitness {
                voters: group.voters.clone(),
                candidates: group.candidates.to_vec(),
                quota,
                seated,
            }));
            break;
        }
    }
    Ok(AxiomVerdict {
        axiom: Axiom::Quota,
        satisfied: witness.is_none(),
        witness,
        more_witnesses: Vec::new(),
        ell_range: None,
        sets_examined: examined,
    })
}
