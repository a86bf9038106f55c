//! Searches over all committees of an instance: empty strict cores and the
//! existence of CJR committees.

use super::{scan, Bounds, Eval, SearchError};
use crate::axioms::{check, validate_witness, Axiom, AxiomError, CheckOptions, Witness};
use crate::profile::{ApprovalProfile, Committee, Instance};
use crate::sets::subsets_of_size;
use serde::{Deserialize, Serialize};

pub const OPEN_QUESTION_LABEL: &str = "empirical exploration of an open question";

/// An instance where every size-`k` committee is blocked.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmptyStrictCore {
    pub index: u64,
    pub instance: Instance,
    /// One revalidated witness per committee, committees in lexicographic
    /// order.
    pub witnesses: Vec<(Committee, Witness)>,
}

/// A blocking witness for every size-`k` committee, or `None` as soon as
/// one committee lies in the strict core.
pub fn empty_strict_core_witnesses(
    profile: &ApprovalProfile,
    k: usize,
    opts: &CheckOptions,
) -> Result<Option<Vec<(Committee, Witness)>>, AxiomError> {
    let mut out = Vec::new();
    for members in subsets_of_size(profile.candidates(), k) {
        let w = Committee::new(profile, members, k).expect("k-subset of the candidates");
        let v = check(Axiom::StrictCore, profile, &w, opts)?;
        match v.witness {
            Some(wit) => out.push((w, wit)),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Lowest-index instance within `bounds` whose strict core is empty.
/// Every returned witness has passed the independent validator; a witness
/// that does not would abort the search as a checker fault.
pub fn find_empty_strict_core(
    bounds: Bounds,
    threads: usize,
) -> Result<Option<EmptyStrictCore>, SearchError> {
    let space = bounds.space()?;
    let opts = CheckOptions::default();
    let found = scan(0..space.len(), threads, true, |index| {
        let inst = space.get(index).expect("index in range");
        match empty_strict_core_witnesses(&inst.profile, inst.k, &opts) {
            Err(source) => Err(SearchError::Axiom { index, source }),
            Ok(None) => Ok(Eval::Clean(0)),
            Ok(Some(witnesses)) => {
                for (w, wit) in &witnesses {
                    if let Err(why) = validate_witness(Axiom::StrictCore, &inst.profile, w, wit) {
                        panic!("strict-core witness failed revalidation at {index}: {why}");
                    }
                }
                Ok(Eval::Hit(
                    EmptyStrictCore {
                        index,
                        instance: inst,
                        witnesses,
                    },
                    0,
                ))
            }
        }
    })?;
    Ok(found.hits.into_iter().next().map(|(_, hit)| hit))
}

/// Whether each instance admits at least one CJR committee. This is an
/// exploration with no pass/fail meaning; the report says so.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CjrScanReport {
    pub label: String,
    pub bounds: Bounds,
    pub instances: u64,
    pub with_cjr_committee: u64,
    /// Instances where no committee satisfies CJR, with their indices.
    pub cjr_empty: Vec<(u64, Instance)>,
}

pub fn cjr_existence_scan(bounds: Bounds, threads: usize) -> Result<CjrScanReport, SearchError> {
    let space = bounds.space()?;
    let opts = CheckOptions::default();
    let found = scan(0..space.len(), threads, false, |index| {
        let inst = space.get(index).expect("index in range");
        for members in subsets_of_size(inst.profile.candidates(), inst.k) {
            let w = Committee::new(&inst.profile, members, inst.k).expect("k-subset");
            let v = check(Axiom::Cjr, &inst.profile, &w, &opts)
                .map_err(|source| SearchError::Axiom { index, source })?;
            if v.satisfied {
                return Ok(Eval::Clean(0));
            }
        }
        Ok(Eval::Hit(inst, 0))
    })?;
    Ok(CjrScanReport {
        label: OPEN_QUESTION_LABEL.to_string(),
        bounds,
        instances: found.examined,
        with_cjr_committee: found.examined - found.hits.len() as u64,
        cjr_empty: found.hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_voter_single_candidate_has_core() {
        assert_eq!(
            find_empty_strict_core(Bounds::new(1, 1, 1), 1).unwrap(),
            None
        );
    }

    #[test]
    fn unanimous_profiles_have_core() {
        let opts = CheckOptions::default();
        for ballot in [&[0][..], &[1], &[0, 1]] {
            for n in 1..=2 {
                let p = ApprovalProfile::from_lists(2, &vec![ballot; n]);
                assert_eq!(empty_strict_core_witnesses(&p, 1, &opts).unwrap(), None);
            }
        }
    }

    #[test]
    fn free_riders_empty_the_core() {
        let p = ApprovalProfile::from_lists(3, &[&[], &[0], &[1], &[2]]);
        let all = empty_strict_core_witnesses(&p, 2, &CheckOptions::default())
            .unwrap()
            .expect("every pair is blocked");
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn tiny_cjr_scan() {
        let r = cjr_existence_scan(Bounds::new(1, 2, 1), 1).unwrap();
        assert_eq!(r.label, OPEN_QUESTION_LABEL);
        assert_eq!(r.instances, 2 + 4);
        assert_eq!(r.with_cjr_committee, r.instances);
    }
}
