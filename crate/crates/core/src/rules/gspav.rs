use super::{first_free, Action, Outcome, Round, Rule, RuleError, SelectionTrace};
use crate::polarized::is_polarized;
use crate::profile::{ApprovalProfile, Committee};
use crate::score::ExactScore;
use crate::sets::CandidateSet;

/// Divisor rule for polarized profiles: each round the group with the largest
/// `|G| / (r(G) + 1)` that still has an unselected approved candidate gets
/// its smallest such candidate. Group ties go to the group holding the
/// smallest voter index. Once every group is exhausted the remaining seats
/// are filled with the smallest unselected candidates.
pub fn gspav(profile: &ApprovalProfile, k: usize) -> Result<Outcome, RuleError> {
    let partition = is_polarized(profile).ok_or(RuleError::NotPolarized)?;
    let groups = &partition.groups;
    let mut seats = vec![0usize; groups.len()];
    let mut w = CandidateSet::EMPTY;
    let mut trace = SelectionTrace::new(Rule::Gspav, k);

    for _ in 0..k {
        // Groups are ordered by smallest voter, so the first maximum wins ties.
        let mut best: Option<usize> = None;
        for (g, group) in groups.iter().enumerate() {
            if group.candidates.difference(w).is_empty() {
                continue;
            }
            let better = match best {
                None => true,
                // |G| / (r(G)+1) > |B| / (r(B)+1)
                Some(b) => group.size() * (seats[b] + 1) > groups[b].size() * (seats[g] + 1),
            };
            if better {
                best = Some(g);
            }
        }

        let round = match best {
            Some(g) => {
                let quotient = |g: usize| (groups[g].size(), seats[g] + 1);
                let (num, den) = quotient(g);
                let tied = groups
                    .iter()
                    .enumerate()
                    .filter(|&(h, group)| {
                        h != g
                            && !group.candidates.difference(w).is_empty()
                            && quotient(h).0 * den == num * quotient(h).1
                    })
                    .filter_map(|(_, group)| group.candidates.difference(w).first())
                    .collect();
                let chosen = groups[g]
                    .candidates
                    .difference(w)
                    .first()
                    .expect("nonexhausted");
                seats[g] += 1;
                w.insert(chosen);
                let mut round = Round::new(
                    Action::Add,
                    chosen,
                    ExactScore::ratio(num as i128, den as i128),
                    tied,
                );
                round.group_seats = Some(seats.clone());
                round
            }
            None => {
                let chosen = first_free(profile.m(), w);
                w.insert(chosen);
                let mut round = Round::new(Action::Add, chosen, ExactScore::zero(), Vec::new());
                round.filler = true;
                round.group_seats = Some(seats.clone());
                round
            }
        };
        trace.rounds.push(round);
    }
    Ok(Outcome {
        committee: Committee::from_members(w),
        trace,
    })
}
