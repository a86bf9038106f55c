//! JR, PJR and EJR.

use super::{
    ell_levels, large_enough, Axiom, AxiomError, AxiomVerdict, CheckOptions, CohesiveWitness,
    Collector, Witness,
};
use crate::profile::{ApprovalProfile, Committee};
use crate::sets::{subsets_of_size, CandidateSet};

/// Justified representation, in polynomial time: a violation exists iff some
/// candidate is approved by at least `n/k` voters none of whom approves a
/// committee member.
pub fn check_jr(profile: &ApprovalProfile, committee: &Committee) -> AxiomVerdict {
    jr(profile, committee, false)
}

pub(super) fn jr(profile: &ApprovalProfile, committee: &Committee, all: bool) -> AxiomVerdict {
    let (n, k, w) = (profile.n(), committee.k(), committee.members());
    let mut col = Collector::new(&CheckOptions {
        all_witnesses: all,
        budget: u64::MAX,
        ..Default::default()
    });
    let range = (k > 0).then_some((1, 1));
    if k > 0 {
        let unrepresented: Vec<usize> = (0..n)
            .filter(|&i| profile.ballot(i).is_disjoint(w))
            .collect();
        for c in profile.candidates().difference(w) {
            col.examined += 1;
            let voters: Vec<usize> = unrepresented
                .iter()
                .copied()
                .filter(|&i| profile.ballot(i).contains(c))
                .collect();
            if large_enough(voters.len(), 1, n, k)
                && col.push(Witness::Cohesive(CohesiveWitness {
                    voters,
                    ell: 1,
                    common: vec![c],
                }))
            {
                break;
            }
        }
    }
    col.verdict(Axiom::Jr, range)
}

/// Depth-first walk over `ell`-subsets `T` of candidates in lexicographic
/// order, carrying the voters (from `pool`) who approve all of `T`. Branches
/// whose supporters drop below `ell * n / k` are cut: supporters only shrink
/// as `T` grows.
fn walk_common_sets(
    profile: &ApprovalProfile,
    k: usize,
    ell: usize,
    pool: Vec<usize>,
    col: &mut Collector,
    visit: &mut dyn FnMut(CandidateSet, &[usize], &mut Collector) -> Result<(), AxiomError>,
) -> Result<(), AxiomError> {
    fn rec(
        profile: &ApprovalProfile,
        k: usize,
        ell: usize,
        next: usize,
        t: CandidateSet,
        voters: &[usize],
        col: &mut Collector,
        visit: &mut dyn FnMut(CandidateSet, &[usize], &mut Collector) -> Result<(), AxiomError>,
    ) -> Result<(), AxiomError> {
        if t.len() == ell {
            return visit(t, voters, col);
        }
        let need = ell - t.len();
        for c in next..profile.m() {
            if profile.m() - c < need || col.done() {
                break;
            }
            col.tick()?;
            let sub: Vec<usize> = voters
                .iter()
                .copied()
                .filter(|&i| profile.ballot(i).contains(c))
                .collect();
            if large_enough(sub.len(), ell, profile.n(), k) {
                rec(profile, k, ell, c + 1, t.with(c), &sub, col, visit)?;
            }
        }
        Ok(())
    }
    if !large_enough(pool.len(), ell, profile.n(), k) {
        return Ok(());
    }
    rec(profile, k, ell, 0, CandidateSet::EMPTY, &pool, col, visit)
}

/// Proportional justified representation.
///
/// For each `ell` and each `ell`-set `T`, let `X_T` be the voters approving
/// all of `T`. A violating group is any `X ⊆ X_T` of size at least
/// `ell * n / k` whose ballots meet the committee in fewer than `ell`
/// members. Taking `X = X_T` is not enough, since dropping voters can shrink
/// the union; instead every `(ell-1)`-subset `S` of the committee members
/// reachable from `X_T` is tried, with `X` the voters whose committee members
/// all lie in `S`.
pub fn check_pjr(
    profile: &ApprovalProfile,
    committee: &Committee,
    ell: Option<usize>,
) -> Result<AxiomVerdict, AxiomError> {
    pjr(
        profile,
        committee,
        &CheckOptions {
            ell,
            ..Default::default()
        },
    )
}

pub(super) fn pjr(
    profile: &ApprovalProfile,
    committee: &Committee,
    opts: &CheckOptions,
) -> Result<AxiomVerdict, AxiomError> {
    let (n, k, w) = (profile.n(), committee.k(), committee.members());
    let range = ell_levels(opts.ell, k)?;
    let mut col = Collector::new(opts);
    if let Some((lo, hi)) = range {
        for ell in lo..=hi {
            let pool: Vec<usize> = (0..n).collect();
            walk_common_sets(profile, k, ell, pool, &mut col, &mut |t, voters, col| {
                let reach = voters
                    .iter()
                    .fold(CandidateSet::EMPTY, |acc, &i| acc.union(profile.ballot(i)))
                    .intersection(w);
                if reach.len() < ell {
                    col.push(cohesive(voters.to_vec(), ell, t));
                    return Ok(());
                }
                for s in subsets_of_size(reach, ell - 1) {
                    col.tick()?;
                    let group: Vec<usize> = voters
                        .iter()
                        .copied()
                        .filter(|&i| profile.ballot(i).intersection(w).is_subset(s))
                        .collect();
                    if large_enough(group.len(), ell, n, k) && col.push(cohesive(group, ell, t)) {
                        break;
                    }
                }
                Ok(())
            })?;
            if col.done() {
                break;
            }
        }
    }
    Ok(col.verdict(Axiom::Pjr, range))
}

/// Extended justified representation. Only voters with fewer than `ell`
/// committee members can sit in an `ell`-violation, and that condition is
/// per voter, so the largest such group for each `T` decides.
pub fn check_ejr(
    profile: &ApprovalProfile,
    committee: &Committee,
    ell: Option<usize>,
) -> Result<AxiomVerdict, AxiomError> {
    ejr(
        profile,
        committee,
        &CheckOptions {
            ell,
            ..Default::default()
        },
    )
}

pub(super) fn ejr(
    profile: &ApprovalProfile,
    committee: &Committee,
    opts: &CheckOptions,
) -> Result<AxiomVerdict, AxiomError> {
    let (n, k, w) = (profile.n(), committee.k(), committee.members());
    let range = ell_levels(opts.ell, k)?;
    let mut col = Collector::new(opts);
    if let Some((lo, hi)) = range {
        for ell in lo..=hi {
            let pool: Vec<usize> = (0..n)
                .filter(|&i| profile.ballot(i).overlap(w) < ell)
                .collect();
            walk_common_sets(profile, k, ell, pool, &mut col, &mut |t, voters, col| {
                col.push(cohesive(voters.to_vec(), ell, t));
                Ok(())
            })?;
            if col.done() {
                break;
            }
        }
    }
    Ok(col.verdict(Axiom::Ejr, range))
}

fn cohesive(voters: Vec<usize>, ell: usize, common: CandidateSet) -> Witness {
    Witness::Cohesive(CohesiveWitness {
        voters,
        ell,
        common: common.to_vec(),
    })
}
