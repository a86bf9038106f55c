use super::{first_free, Action, Outcome, Round, Rule, RuleError, SelectionTrace};
use crate::profile::{ApprovalProfile, Committee};
use crate::score::ExactScore;
use crate::sets::CandidateSet;

/// Sequential Phragmén with unapproved-seat filling enabled.
pub fn seq_phragmen(profile: &ApprovalProfile, k: usize) -> Result<Outcome, RuleError> {
    seq_phragmen_with(profile, k, true)
}

/// Sequential Phragmén in the continuous-load formulation.
///
/// Electing `c` spreads one unit of load over its approvers so that they all
/// end at the same load `(1 + sum of their loads) / |N_c|`. Each round elects
/// the candidate minimizing that value. When no unselected candidate has an
/// approver, `fill` decides between filler seats and an error.
pub fn seq_phragmen_with(
    profile: &ApprovalProfile,
    k: usize,
    fill: bool,
) -> Result<Outcome, RuleError> {
    let mut approvers = vec![Vec::new(); profile.m()];
    for (i, b) in profile.ballots().iter().enumerate() {
        for c in b.iter() {
            approvers[c].push(i);
        }
    }
    let mut loads = vec![ExactScore::zero(); profile.n()];
    let mut w = CandidateSet::EMPTY;
    let mut trace = SelectionTrace::new(Rule::Phragmen, k);
    let one = ExactScore::from_integer(1);

    for seat in 0..k {
        let mut options: Vec<(usize, ExactScore)> = Vec::new();
        for c in profile.candidates().difference(w) {
            let supporters = &approvers[c];
            if supporters.is_empty() {
                continue;
            }
            let mut total = one.clone();
            for &i in supporters {
                total += &loads[i];
            }
            let load = total / ExactScore::from_integer(supporters.len() as i128);
            options.push((c, load));
        }

        let round = match options.iter().min_by(|a, b| a.1.cmp(&b.1)) {
            Some((chosen, load)) => {
                let (chosen, load) = (*chosen, load.clone());
                let tied = options
                    .iter()
                    .filter(|(c, l)| *c != chosen && *l == load)
                    .map(|(c, _)| *c)
                    .collect();
                for &i in &approvers[chosen] {
                    loads[i] = load.clone();
                }
                w.insert(chosen);
                Round::new(Action::Add, chosen, load, tied)
            }
            None if fill => {
                let chosen = first_free(profile.m(), w);
                w.insert(chosen);
                let mut round = Round::new(Action::Add, chosen, ExactScore::zero(), Vec::new());
                round.filler = true;
                round
            }
            None => return Err(RuleError::UnapprovableSeat { seat }),
        };
        let mut round = round;
        round.loads = Some(loads.clone());
        trace.rounds.push(round);
    }
    Ok(Outcome {
        committee: Committee::from_members(w),
        trace,
    })
}
