use super::{Action, OptimumRecord, Outcome, Round, Rule, RuleError, SelectionTrace, Swap};
use crate::profile::{ApprovalProfile, Committee};
use crate::score::{ExactScore, ScaledHarmonic};
use crate::sets::CandidateSet;

/// Node budget used by [`pav_exact`].
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// `sum_i H(|W ∩ A_i|)`.
pub fn pav_score(profile: &ApprovalProfile, committee: &Committee) -> ExactScore {
    let table = ScaledHarmonic::new(committee.k());
    table.to_exact(scaled_score(&table, profile, committee.members()))
}

fn scaled_score(table: &ScaledHarmonic, profile: &ApprovalProfile, w: CandidateSet) -> u128 {
    profile
        .ballots()
        .iter()
        .map(|b| table.h(b.overlap(w)))
        .sum()
}

fn approvers(profile: &ApprovalProfile) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); profile.m()];
    for (i, b) in profile.ballots().iter().enumerate() {
        for c in b.iter() {
            out[c].push(i);
        }
    }
    out
}

/// Greedy PAV: each round adds the candidate with the largest marginal gain.
pub fn seqpav(profile: &ApprovalProfile, k: usize) -> Outcome {
    let table = ScaledHarmonic::new(k);
    let approvers = approvers(profile);
    let mut reps = vec![0usize; profile.n()];
    let mut w = CandidateSet::EMPTY;
    let mut trace = SelectionTrace::new(Rule::Seqpav, k);

    for _ in 0..k {
        let mut best: Option<(u128, usize)> = None;
        let mut gains = Vec::new();
        for c in profile.candidates().difference(w) {
            let gain: u128 = approvers[c].iter().map(|&i| table.marginal(reps[i])).sum();
            gains.push((c, gain));
            if best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, c));
            }
        }
        let (gain, chosen) = best.expect("k <= m");
        let tied = gains
            .iter()
            .filter(|&&(c, g)| g == gain && c != chosen)
            .map(|&(c, _)| c)
            .collect();
        w.insert(chosen);
        for &i in &approvers[chosen] {
            reps[i] += 1;
        }
        let mut round = Round::new(Action::Add, chosen, table.to_exact(gain), tied);
        round.filler = approvers[chosen].is_empty();
        trace.rounds.push(round);
    }
    Outcome {
        committee: Committee::from_members(w),
        trace,
    }
}

/// Reverse greedy PAV: starting from all candidates, repeatedly delete the
/// candidate whose removal costs the least PAV score.
pub fn revseqpav(profile: &ApprovalProfile, k: usize) -> Outcome {
    let m = profile.m();
    let table = ScaledHarmonic::new(m);
    let approvers = approvers(profile);
    let mut reps: Vec<usize> = profile.ballots().iter().map(|b| b.len()).collect();
    let mut w = profile.candidates();
    let mut trace = SelectionTrace::new(Rule::Revseqpav, k);

    for _ in k..m {
        let mut best: Option<(u128, usize)> = None;
        let mut losses = Vec::new();
        for c in w {
            let loss: u128 = approvers[c]
                .iter()
                .map(|&i| table.marginal(reps[i] - 1))
                .sum();
            losses.push((c, loss));
            if best.is_none_or(|(l, _)| loss < l) {
                best = Some((loss, c));
            }
        }
        let (loss, chosen) = best.expect("W nonempty while |W| > k");
        let tied = losses
            .iter()
            .filter(|&&(c, l)| l == loss && c != chosen)
            .map(|&(c, _)| c)
            .collect();
        w.remove(chosen);
        for &i in &approvers[chosen] {
            reps[i] -= 1;
        }
        trace.rounds.push(Round::new(
            Action::Remove,
            chosen,
            table.to_exact(loss),
            tied,
        ));
    }
    Outcome {
        committee: Committee::from_members(w),
        trace,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PavOptimum {
    pub outcome: Outcome,
    pub score: ExactScore,
}

/// Global PAV optimum with [`DEFAULT_NODE_BUDGET`].
pub fn pav_exact(profile: &ApprovalProfile, k: usize) -> Result<PavOptimum, RuleError> {
    pav_exact_with_budget(profile, k, DEFAULT_NODE_BUDGET)
}

/// Branch and bound over candidates in index order, include-branch first.
///
/// Leaves are reached in lexicographic order of their member lists, so the
/// first committee found at the optimal score is the lexicographically
/// smallest optimum. Subtrees are cut only when their bound is strictly
/// below the incumbent, which keeps the count of optima exact.
///
/// The bound adds the `need` largest marginal gains available at the node to
/// the current score; PAV is submodular, so no completion can beat it.
pub fn pav_exact_with_budget(
    profile: &ApprovalProfile,
    k: usize,
    budget: u64,
) -> Result<PavOptimum, RuleError> {
    let table = ScaledHarmonic::new(k);
    let mut search = Search {
        table: &table,
        approvers: approvers(profile),
        m: profile.m(),
        k,
        reps: vec![0; profile.n()],
        best: None,
        optima: 0,
        nodes: 0,
        budget,
        scratch: Vec::with_capacity(profile.m()),
    };
    search.dfs(0, CandidateSet::EMPTY, 0)?;
    let (best_score, best_w) = search.best.expect("some committee of size k <= m exists");
    let score = table.to_exact(best_score);
    let mut trace = SelectionTrace::new(Rule::Pav, k);
    trace.optimum = Some(OptimumRecord {
        committee: best_w,
        score: score.clone(),
        optima: search.optima,
        nodes: search.nodes,
    });
    Ok(PavOptimum {
        outcome: Outcome {
            committee: Committee::from_members(best_w),
            trace,
        },
        score,
    })
}

struct Search<'a> {
    table: &'a ScaledHarmonic,
    approvers: Vec<Vec<usize>>,
    m: usize,
    k: usize,
    reps: Vec<usize>,
    best: Option<(u128, CandidateSet)>,
    optima: u64,
    nodes: u64,
    budget: u64,
    scratch: Vec<u128>,
}

impl Search<'_> {
    fn gain(&self, c: usize) -> u128 {
        self.approvers[c]
            .iter()
            .map(|&i| self.table.marginal(self.reps[i]))
            .sum()
    }

    fn dfs(&mut self, next: usize, w: CandidateSet, score: u128) -> Result<(), RuleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(RuleError::BudgetExhausted {
                budget: self.budget,
            });
        }
        let need = self.k - w.len();
        if need == 0 {
            match self.best {
                Some((b, _)) if score < b => {}
                Some((b, _)) if score == b => self.optima += 1,
                _ => {
                    self.best = Some((score, w));
                    self.optima = 1;
                }
            }
            return Ok(());
        }
        if self.m - next < need {
            return Ok(());
        }
        if let Some((b, _)) = self.best {
            let mut gains = std::mem::take(&mut self.scratch);
            gains.clear();
            gains.extend((next..self.m).map(|c| self.gain(c)));
            gains.sort_unstable_by(|a, b| b.cmp(a));
            let bound = score + gains[..need].iter().sum::<u128>();
            self.scratch = gains;
            if bound < b {
                return Ok(());
            }
        }

        let gain = self.gain(next);
        for &i in &self.approvers[next] {
            self.reps[i] += 1;
        }
        let res = self.dfs(next + 1, w.with(next), score + gain);
        for &i in &self.approvers[next] {
            self.reps[i] -= 1;
        }
        res?;
        self.dfs(next + 1, w, score)
    }
}

/// Local search from the seqpav committee, taking the first swap (removed
/// member ascending, then added candidate ascending) that raises the PAV
/// score by at least `n / k^2`, until no such swap remains.
pub fn ls_pav(profile: &ApprovalProfile, k: usize) -> Outcome {
    let start = seqpav(profile, k);
    let mut trace = start.trace;
    trace.rule = Rule::Lspav;
    if k == 0 {
        return Outcome {
            committee: start.committee,
            trace,
        };
    }

    let table = ScaledHarmonic::new(k);
    let scale = table.scale();
    let n = profile.n() as u128;
    let k2 = (k * k) as u128;
    let ballots = profile.ballots();
    let mut w = start.committee.members();
    let mut reps: Vec<usize> = ballots.iter().map(|b| b.overlap(w)).collect();
    let outside = |w: CandidateSet| profile.candidates().difference(w);

    'scan: loop {
        for out in w {
            for inc in outside(w) {
                let mut up = 0u128;
                let mut down = 0u128;
                for (b, &r) in ballots.iter().zip(&reps) {
                    match (b.contains(out), b.contains(inc)) {
                        (true, false) => down += table.marginal(r - 1),
                        (false, true) => up += table.marginal(r),
                        _ => {}
                    }
                }
                // improvement >= n/k^2, cross-multiplied on the scaled values
                if up > down && (up - down) * k2 >= n * scale {
                    w.remove(out);
                    w.insert(inc);
                    for (b, r) in ballots.iter().zip(reps.iter_mut()) {
                        *r = b.overlap(w);
                    }
                    trace.swaps.push(Swap {
                        removed: out,
                        added: inc,
                        gain: table.to_exact(up - down),
                    });
                    continue 'scan;
                }
            }
        }
        break;
    }
    Outcome {
        committee: Committee::from_members(w),
        trace,
    }
}
