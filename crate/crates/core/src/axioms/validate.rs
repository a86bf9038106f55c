//! Definition-level re-validation of witnesses.
//!
//! Written against plain `BTreeSet`s and the literal axiom statements; it does
//! not call into the search code it audits.

use super::{Axiom, Witness};
use crate::profile::{ApprovalProfile, Committee};
use std::collections::BTreeSet;

type Set = BTreeSet<usize>;

fn ballot(profile: &ApprovalProfile, i: usize) -> Set {
    profile.ballot(i).iter().collect()
}

/// Checks that `witness` really certifies a violation of `axiom` by
/// `committee`. The error names the first failed condition.
pub fn validate_witness(
    axiom: Axiom,
    profile: &ApprovalProfile,
    committee: &Committee,
    witness: &Witness,
) -> Result<(), String> {
    let n = profile.n();
    let k = committee.k();
    let w: Set = committee.members().iter().collect();
    let voters: Set = witness.voters().iter().copied().collect();
    if voters.len() != witness.voters().len() {
        return Err("duplicate voters".into());
    }
    if voters.is_empty() {
        return Err("empty coalition".into());
    }
    if voters.iter().any(|&i| i >= n) {
        return Err("voter out of range".into());
    }

    match (axiom, witness) {
        (Axiom::Jr | Axiom::Pjr | Axiom::Ejr, Witness::Cohesive(c)) => {
            let ell = c.ell;
            if ell == 0 || ell > k || (axiom == Axiom::Jr && ell != 1) {
                return Err(format!("bad cohesion level {ell}"));
            }
            if k * voters.len() < ell * n {
                return Err("group smaller than ell * n / k".into());
            }
            let common: Set = c.common.iter().copied().collect();
            if common.len() != ell || common.len() != c.common.len() {
                return Err("common set must hold exactly ell candidates".into());
            }
            for &i in &voters {
                if !common.is_subset(&ballot(profile, i)) {
                    return Err(format!("voter {i} does not approve the common set"));
                }
            }
            let union: Set = voters.iter().flat_map(|&i| ballot(profile, i)).collect();
            let covered = union.intersection(&w).count();
            match axiom {
                Axiom::Jr | Axiom::Pjr if covered >= ell => Err(format!(
                    "union meets the committee in {covered} >= {ell} members"
                )),
                Axiom::Ejr => voters
                    .iter()
                    .find(|&&i| ballot(profile, i).intersection(&w).count() >= ell)
                    .map_or(Ok(()), |i| {
                        Err(format!("voter {i} already has ell members"))
                    }),
                _ => Ok(()),
            }
        }
        (Axiom::Cjr | Axiom::StrictCore, Witness::Blocking(b)) => {
            let ell = b.ell;
            if ell == 0 || ell > k {
                return Err(format!("bad level {ell}"));
            }
            if k * voters.len() < ell * n {
                return Err("coalition smaller than ell * n / k".into());
            }
            let d: Set = b.deviation.iter().copied().collect();
            if d.len() != ell || d.len() != b.deviation.len() || d.iter().any(|&c| c >= profile.m())
            {
                return Err("deviation must be ell distinct candidates".into());
            }
            let mut strict = Set::new();
            for &i in &voters {
                let a = ballot(profile, i);
                let with_d = a.intersection(&d).count();
                let with_w = a.intersection(&w).count();
                if with_d > with_w {
                    strict.insert(i);
                } else if axiom == Axiom::Cjr || with_d < with_w {
                    return Err(format!("voter {i} does not prefer the deviation"));
                }
            }
            let claimed: Set = b.strict_members.iter().copied().collect();
            if claimed != strict {
                return Err("strict members misreported".into());
            }
            if strict.is_empty() {
                return Err("nobody strictly gains".into());
            }
            Ok(())
        }
        (Axiom::Quota, Witness::Quota(q)) => {
            let cands: Set = q.candidates.iter().copied().collect();
            if cands.is_empty() {
                return Err("empty group ballot".into());
            }
            for i in 0..n {
                let a = ballot(profile, i);
                let member = voters.contains(&i);
                if member && a != cands {
                    return Err(format!("voter {i} has a different ballot"));
                }
                if !member && a == cands {
                    return Err(format!("voter {i} belongs to the group"));
                }
            }
            let quota = (k * voters.len() / n).min(cands.len());
            let seated = cands.intersection(&w).count();
            if quota != q.quota || seated != q.seated {
                return Err("quota arithmetic misreported".into());
            }
            if seated >= quota {
                return Err("group meets its quota".into());
            }
            Ok(())
        }
        _ => Err(format!("wrong witness kind for {axiom}")),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{BlockingWitness, CohesiveWitness};
    use super::*;

    #[test]
    fn rejects_forged_witnesses() {
        let p = ApprovalProfile::from_lists(3, &[&[2], &[2], &[0], &[1]]);
        let w = Committee::new(&p, [0, 1].into_iter().collect(), 2).unwrap();
        let good = Witness::Cohesive(CohesiveWitness {
            voters: vec![0, 1],
            ell: 1,
            common: vec![2],
        });
        assert!(validate_witness(Axiom::Jr, &p, &w, &good).is_ok());
        let small = Witness::Cohesive(CohesiveWitness {
            voters: vec![0],
            ell: 1,
            common: vec![2],
        });
        assert!(validate_witness(Axiom::Jr, &p, &w, &small).is_err());
        let covered = Witness::Cohesive(CohesiveWitness {
            voters: vec![2, 3],
            ell: 1,
            common: vec![0],
        });
        assert!(validate_witness(Axiom::Jr, &p, &w, &covered).is_err());
        let wrong_kind = Witness::Blocking(BlockingWitness {
            voters: vec![0, 1],
            ell: 1,
            deviation: vec![2],
            strict_members: vec![0, 1],
        });
        assert!(validate_witness(Axiom::Jr, &p, &w, &wrong_kind).is_err());
        assert!(validate_witness(Axiom::Cjr, &p, &w, &wrong_kind).is_ok());
    }
}
