//! Core-style checks: CJR and strict core.

use super::{
    large_enough, Axiom, AxiomError, AxiomVerdict, BlockingWitness, CheckOptions, Collector,
    Witness,
};
use crate::profile::{ApprovalProfile, Committee};
use crate::sets::subsets_of_size;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Mode {
    /// Every coalition member strictly gains.
    Cjr,
    /// Every member weakly gains and at least one strictly.
    StrictCore,
}

/// Core justified representation: no coalition of at least `ell * n / k`
/// voters has an `ell`-set `D` with `|A_i ∩ D| > |A_i ∩ W|` for all members.
pub fn check_cjr(
    profile: &ApprovalProfile,
    committee: &Committee,
) -> Result<AxiomVerdict, AxiomError> {
    search(profile, committee, Mode::Cjr, &CheckOptions::default())
}

/// Strict core: as CJR, but members need only weakly gain as long as one
/// strictly does.
pub fn check_strict_core(
    profile: &ApprovalProfile,
    committee: &Committee,
) -> Result<AxiomVerdict, AxiomError> {
    search(
        profile,
        committee,
        Mode::StrictCore,
        &CheckOptions::default(),
    )
}

/// Enumerates `D` by size then lexicographically. The preference predicate
/// is per voter, so the coalition of all voters satisfying it is the only
/// one that needs testing for each `D`.
pub(super) fn search(
    profile: &ApprovalProfile,
    committee: &Committee,
    mode: Mode,
    opts: &CheckOptions,
) -> Result<AxiomVerdict, AxiomError> {
    let (n, k, w) = (profile.n(), committee.k(), committee.members());
    let axiom = match mode {
        Mode::Cjr => Axiom::Cjr,
        Mode::StrictCore => Axiom::StrictCore,
    };
    let mut col = Collector::new(opts);
    let reps: Vec<usize> = profile.ballots().iter().map(|b| b.overlap(w)).collect();

    'levels: for ell in 1..=k {
        // A voter holding ell or more members cannot strictly gain from an
        // ell-set; in CJR every member must, in the strict core at least one.
        let can_gain = reps.iter().filter(|&&r| r < ell).count();
        match mode {
            Mode::Cjr if !large_enough(can_gain, ell, n, k) => continue,
            Mode::StrictCore if can_gain == 0 => continue,
            _ => {}
        }
        for d in subsets_of_size(profile.candidates(), ell) {
            col.tick()?;
            let mut voters = Vec::new();
            let mut strict = Vec::new();
            for (i, (b, &r)) in profile.ballots().iter().zip(&reps).enumerate() {
                let gain = b.overlap(d);
                match mode {
                    Mode::Cjr if gain > r => {
                        voters.push(i);
                        strict.push(i);
                    }
                    Mode::StrictCore if gain >= r => {
                        voters.push(i);
                        if gain > r {
                            strict.push(i);
                        }
                    }
                    _ => {}
                }
            }
            if !strict.is_empty()
                && large_enough(voters.len(), ell, n, k)
                && col.push(Witness::Blocking(BlockingWitness {
                    voters,
                    ell,
                    deviation: d.to_vec(),
                    strict_members: strict,
                }))
            {
                break 'levels;
            }
        }
    }
    Ok(col.verdict(axiom, (k > 0).then_some((1, k))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn committee(p: &ApprovalProfile, c: &[usize]) -> Committee {
        Committee::new(p, c.iter().copied().collect(), c.len()).unwrap()
    }

    fn blocking(v: &AxiomVerdict) -> &BlockingWitness {
        match v.witness.as_ref().unwrap() {
            Witness::Blocking(w) => w,
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn unanimous_single_seat_is_stable() {
        let p = ApprovalProfile::from_lists(1, &[&[0], &[0]]);
        let w = committee(&p, &[0]);
        assert!(check_cjr(&p, &w).unwrap().satisfied);
        assert!(check_strict_core(&p, &w).unwrap().satisfied);
    }

    #[test]
    fn pair_blocks_split_committee() {
        let p = ApprovalProfile::from_lists(3, &[&[0, 1], &[0, 1]]);
        let w = committee(&p, &[0, 2]);
        for v in [
            check_cjr(&p, &w).unwrap(),
            check_strict_core(&p, &w).unwrap(),
        ] {
            assert!(!v.satisfied);
            let b = blocking(&v);
            assert_eq!(b.ell, 2);
            assert_eq!(b.deviation, vec![0, 1]);
            assert_eq!(b.voters, vec![0, 1]);
            assert_eq!(b.strict_members, vec![0, 1]);
        }
    }

    #[test]
    fn committee_covering_all_ballots_is_stable() {
        let p = ApprovalProfile::from_lists(4, &[&[0], &[1, 2], &[0, 2]]);
        let w = committee(&p, &[0, 1, 2]);
        assert!(check_cjr(&p, &w).unwrap().satisfied);
        assert!(check_strict_core(&p, &w).unwrap().satisfied);
    }

    #[test]
    fn weak_deviation_blocks_only_strict_core() {
        // Empty ballots weakly prefer anything, so voter 0 free-rides on
        // voter 3's strict gain from D = {2}.
        let p = ApprovalProfile::from_lists(3, &[&[], &[0], &[1], &[2]]);
        let w = committee(&p, &[0, 1]);
        assert!(check_cjr(&p, &w).unwrap().satisfied);
        let v = check_strict_core(&p, &w).unwrap();
        assert!(!v.satisfied);
        let b = blocking(&v);
        assert_eq!(
            (b.voters.clone(), b.strict_members.clone()),
            (vec![0, 3], vec![3])
        );
        assert_eq!(b.deviation, vec![2]);
    }
}
