//! Exhaustive and seeded-random exploration of instance families.
//!
//! All scans go through one engine: the index range is cut into fixed-size
//! chunks, chunks run on a rayon pool, and per-chunk results are merged in
//! index order. Reports therefore do not depend on the thread count, and a
//! scan stopped at checkpoint `i` and resumed from `i` yields the same
//! report as an uninterrupted one.

mod fixture;
mod monotonicity;
mod stability;

pub use fixture::{parse_fixture, Expectation, Fixture, FixtureError};
pub use monotonicity::{
    check_candidate_monotonicity, check_committee_monotonicity, find_committee_monotonicity_break,
    tie_closed_outcomes, CandidateMonotonicityBreak, CandidateMonotonicityReport,
    CommitteeMonotonicityBreak, CommitteeMonotonicityReport, MonotonicityHit, Semantics,
    FULL_TIE_CLOSURE_MAX_M,
};
pub use stability::{
    cjr_existence_scan, empty_strict_core_witnesses, find_empty_strict_core, CjrScanReport,
    EmptyStrictCore, OPEN_QUESTION_LABEL,
};

use crate::axioms::{check, validate_witness, Axiom, AxiomError, AxiomVerdict, CheckOptions};
use crate::generate::{random_with, seeded_rng, GenError, ProfileSpace};
use crate::profile::{Committee, Instance};
use crate::rules::{compute, Rule, RuleError};
use serde::{Deserialize, Serialize};
use std::ops::Range;
use std::time::{Duration, Instant};

/// Instances per work unit. Fixed so that chunk boundaries, and with them
/// the merge order, never depend on the thread count.
const CHUNK: u64 = 512;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("instance {index}: {source}")]
    Rule { index: u64, source: RuleError },
    #[error("instance {index}: {source}")]
    Axiom { index: u64, source: AxiomError },
    #[error("search budget exhausted; resume from checkpoint {checkpoint}")]
    BudgetExhausted {
        checkpoint: u64,
        partial: Box<SearchReport>,
    },
    #[error("tie enumeration needs {needed} rule runs, budget is {budget}")]
    TieBudget { needed: u64, budget: u64 },
    #[error("sampler: {0}")]
    Sampler(String),
    #[error("k_max = {k_max} exceeds m = {m}")]
    KMax { k_max: usize, m: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub n_max: usize,
    pub m_max: usize,
    pub k_max: usize,
}

impl Bounds {
    pub fn new(n_max: usize, m_max: usize, k_max: usize) -> Self {
        Bounds {
            n_max,
            m_max,
            k_max,
        }
    }

    pub fn space(&self) -> Result<ProfileSpace, GenError> {
        ProfileSpace::new(self.n_max, self.m_max, self.k_max)
    }
}

/// Random instances: `n`, `m` and `k` uniform in their inclusive ranges
/// (`k` clipped to `m`), each approval independently with probability `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sampler {
    pub n: (usize, usize),
    pub m: (usize, usize),
    pub k: (usize, usize),
    pub p: f64,
}

impl Sampler {
    fn validate(&self) -> Result<(), SearchError> {
        let ok = |(lo, hi): (usize, usize)| lo >= 1 && lo <= hi;
        if !ok(self.n) || !ok(self.m) || !ok(self.k) {
            return Err(SearchError::Sampler(
                "ranges must satisfy 1 <= lo <= hi".into(),
            ));
        }
        if self.k.0 > self.m.1 {
            return Err(SearchError::Sampler("k range lies above every m".into()));
        }
        Ok(())
    }

    /// Sample `index` of the stream for `seed`. Each sample reads its own
    /// ChaCha stream, so samples can be drawn in any order or in parallel.
    pub fn sample(&self, seed: u64, index: u64) -> Result<Instance, SearchError> {
        use rand::Rng;
        let mut rng = seeded_rng(seed);
        rng.set_stream(index);
        let n = rng.gen_range(self.n.0..=self.n.1);
        let m = rng.gen_range(self.m.0..=self.m.1);
        let k = if self.k.0 > m {
            m
        } else {
            rng.gen_range(self.k.0..=self.k.1.min(m))
        };
        Ok(random_with(&mut rng, n, m, k, self.p)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Scope {
    Exhaustive {
        bounds: Bounds,
        /// Size of the full enumeration.
        total: u64,
    },
    Randomized {
        sampler: Sampler,
        seed: u64,
        samples: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Position in the enumeration or sample stream.
    pub index: u64,
    pub instance: Instance,
    pub committee: Committee,
    pub verdict: AxiomVerdict,
    /// The witness passed the independent definition-level validator.
    pub revalidated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub rule: Rule,
    pub axiom: Axiom,
    pub scope: Scope,
    /// First index covered by this report.
    pub start: u64,
    /// First index not covered; the resume checkpoint.
    pub next: u64,
    pub examined: u64,
    /// Instances outside the rule's or axiom's domain (non-polarized
    /// profiles for gspav and the quota axiom).
    pub skipped: u64,
    pub sets_examined: u64,
    pub violations: Vec<Violation>,
    /// The whole enumeration or sample stream was covered.
    pub complete: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    /// Joins the report for `start..x` with the one for `x..end`.
    pub fn merge(mut self, other: SearchReport) -> SearchReport {
        assert_eq!(self.next, other.start, "reports are not adjacent");
        self.next = other.next;
        self.examined += other.examined;
        self.skipped += other.skipped;
        self.sets_examined += other.sets_examined;
        self.violations.extend(other.violations);
        self.complete = other.complete;
        self.elapsed += other.elapsed;
        self
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    /// Index to start (or resume) from.
    pub start: u64,
    /// Stop after this many instances and report a checkpoint.
    pub budget: Option<u64>,
    pub check: CheckOptions,
}

pub(crate) enum Eval<T> {
    Skipped,
    Clean(u64),
    Hit(T, u64),
}

pub(crate) struct Scan<T> {
    pub next: u64,
    pub examined: u64,
    pub skipped: u64,
    pub sets: u64,
    pub hits: Vec<(u64, T)>,
}

/// Runs `eval` over `range` in parallel and merges in index order. With
/// `first_only`, the scan ends right after the lowest-index hit.
pub(crate) fn scan<T, F>(
    range: Range<u64>,
    threads: usize,
    first_only: bool,
    eval: F,
) -> Result<Scan<T>, SearchError>
where
    T: Send,
    F: Fn(u64) -> Result<Eval<T>, SearchError> + Sync,
{
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let workers = pool.current_num_threads().max(1) as u64;
    let mut total = Scan {
        next: range.start,
        examined: 0,
        skipped: 0,
        sets: 0,
        hits: Vec::new(),
    };
    // Waves bound the work wasted past the first hit in first-only mode.
    let wave = CHUNK * workers * 4;
    let mut wave_start = range.start;
    while wave_start < range.end {
        let wave_end = range.end.min(wave_start.saturating_add(wave));
        let chunks: Vec<Range<u64>> = (wave_start..wave_end)
            .step_by(CHUNK as usize)
            .map(|s| s..wave_end.min(s + CHUNK))
            .collect();
        let results: Vec<Result<Scan<T>, SearchError>> = pool.install(|| {
            chunks
                .into_par_iter()
                .map(|chunk| {
                    let mut s = Scan {
                        next: chunk.start,
                        examined: 0,
                        skipped: 0,
                        sets: 0,
                        hits: Vec::new(),
                    };
                    for i in chunk {
                        s.next = i + 1;
                        match eval(i)? {
                            Eval::Skipped => s.skipped += 1,
                            Eval::Clean(sets) => {
                                s.examined += 1;
                                s.sets += sets;
                            }
                            Eval::Hit(t, sets) => {
                                s.examined += 1;
                                s.sets += sets;
                                s.hits.push((i, t));
                                if first_only {
                                    break;
                                }
                            }
                        }
                    }
                    Ok(s)
                })
                .collect()
        });
        for r in results {
            let s = r?;
            total.next = s.next;
            total.examined += s.examined;
            total.skipped += s.skipped;
            total.sets += s.sets;
            total.hits.extend(s.hits);
            if first_only && !total.hits.is_empty() {
                return Ok(total);
            }
        }
        wave_start = wave_end;
    }
    Ok(total)
}

fn evaluate(
    rule: Rule,
    axiom: Axiom,
    index: u64,
    inst: &Instance,
    opts: &CheckOptions,
) -> Result<Eval<Violation>, SearchError> {
    let out = match compute(rule, &inst.profile, inst.k) {
        Ok(out) => out,
        Err(RuleError::NotPolarized) => return Ok(Eval::Skipped),
        Err(source) => return Err(SearchError::Rule { index, source }),
    };
    let verdict = match check(axiom, &inst.profile, &out.committee, opts) {
        Ok(v) => v,
        Err(AxiomError::NotPolarized) => return Ok(Eval::Skipped),
        Err(source) => return Err(SearchError::Axiom { index, source }),
    };
    let sets = verdict.sets_examined;
    if verdict.satisfied {
        return Ok(Eval::Clean(sets));
    }
    let revalidated = verdict
        .witness
        .as_ref()
        .is_some_and(|w| validate_witness(axiom, &inst.profile, &out.committee, w).is_ok());
    Ok(Eval::Hit(
        Violation {
            index,
            instance: inst.clone(),
            committee: out.committee,
            verdict,
            revalidated,
        },
        sets,
    ))
}

fn finish(
    rule: Rule,
    axiom: Axiom,
    scope: Scope,
    start: u64,
    end: u64,
    total: u64,
    scan: Scan<Violation>,
    began: Instant,
) -> Result<SearchReport, SearchError> {
    let report = SearchReport {
        rule,
        axiom,
        scope,
        start,
        next: scan.next.max(start),
        examined: scan.examined,
        skipped: scan.skipped,
        sets_examined: scan.sets,
        violations: scan.hits.into_iter().map(|(_, v)| v).collect(),
        complete: scan.next >= total,
        elapsed: began.elapsed(),
    };
    if end < total {
        return Err(SearchError::BudgetExhausted {
            checkpoint: end,
            partial: Box::new(report),
        });
    }
    Ok(report)
}

fn budgeted_end(start: u64, budget: Option<u64>, total: u64) -> u64 {
    budget.map_or(total, |b| start.saturating_add(b).min(total))
}

/// Runs `rule` on every instance within `bounds` and checks `axiom` on each
/// output. All violations are reported.
pub fn exhaustive_verify(
    rule: Rule,
    axiom: Axiom,
    bounds: Bounds,
    opts: &ScanOptions,
) -> Result<SearchReport, SearchError> {
    let began = Instant::now();
    let space = bounds.space()?;
    let total = space.len();
    let start = opts.start.min(total);
    let end = budgeted_end(start, opts.budget, total);
    let result = scan(start..end, opts.threads, false, |i| {
        let inst = space.get(i).expect("index in range");
        evaluate(rule, axiom, i, &inst, &opts.check)
    })?;
    let scope = Scope::Exhaustive { bounds, total };
    finish(rule, axiom, scope, start, end, total, result, began)
}

/// Checks `samples` seeded random instances.
pub fn randomized_verify(
    rule: Rule,
    axiom: Axiom,
    sampler: Sampler,
    samples: u64,
    seed: u64,
    opts: &ScanOptions,
) -> Result<SearchReport, SearchError> {
    let began = Instant::now();
    sampler.validate()?;
    let start = opts.start.min(samples);
    let end = budgeted_end(start, opts.budget, samples);
    let result = scan(start..end, opts.threads, false, |i| {
        evaluate(rule, axiom, i, &sampler.sample(seed, i)?, &opts.check)
    })?;
    let scope = Scope::Randomized {
        sampler,
        seed,
        samples,
    };
    finish(rule, axiom, scope, start, end, samples, result, began)
}

/// Where [`find_axiom_violation`] looks.
#[derive(Clone, Copy, Debug)]
pub enum Hunt {
    Exhaustive(Bounds),
    Randomized {
        sampler: Sampler,
        samples: u64,
        seed: u64,
    },
}

/// Outcome of a hunt: the first violation in stream order, if any, and how
/// many instances were looked at.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntResult {
    pub rule: Rule,
    pub axiom: Axiom,
    pub examined: u64,
    pub skipped: u64,
    pub found: Option<Violation>,
}

/// First instance where the output of `rule` violates `axiom`. Exhaustive
/// hunts return the lowest enumeration index; randomized hunts the lowest
/// sample index, so both are independent of `threads`.
pub fn find_axiom_violation(
    rule: Rule,
    axiom: Axiom,
    hunt: Hunt,
    threads: usize,
    check: &CheckOptions,
) -> Result<HuntResult, SearchError> {
    let result = match hunt {
        Hunt::Exhaustive(bounds) => {
            let space = bounds.space()?;
            scan(0..space.len(), threads, true, |i| {
                evaluate(
                    rule,
                    axiom,
                    i,
                    &space.get(i).expect("index in range"),
                    check,
                )
            })?
        }
        Hunt::Randomized {
            sampler,
            samples,
            seed,
        } => {
            sampler.validate()?;
            scan(0..samples, threads, true, |i| {
                evaluate(rule, axiom, i, &sampler.sample(seed, i)?, check)
            })?
        }
    };
    Ok(HuntResult {
        rule,
        axiom,
        examined: result.examined,
        skipped: result.skipped,
        found: result.hits.into_iter().next().map(|(_, v)| v),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunked_scan_matches_sequential_order() {
        let eval = |i: u64| -> Result<Eval<u64>, SearchError> {
            Ok(match i % 7 {
                0 => Eval::Hit(i, 1),
                3 => Eval::Skipped,
                _ => Eval::Clean(1),
            })
        };
        for threads in [1, 3] {
            let s = scan(5..3000, threads, false, eval).unwrap();
            let hits: Vec<u64> = s.hits.iter().map(|h| h.0).collect();
            let want: Vec<u64> = (5..3000).filter(|i| i % 7 == 0).collect();
            assert_eq!(hits, want);
            assert_eq!(s.examined + s.skipped, 2995);
            assert_eq!(s.next, 3000);
        }
        let first = scan(10..5000, 4, true, eval).unwrap();
        assert_eq!(first.hits.len(), 1);
        assert_eq!(first.hits[0].0, 14);
        assert_eq!(first.next, 15);
        assert_eq!(first.examined + first.skipped, 5);
    }

    #[test]
    fn sampler_respects_ranges() {
        let s = Sampler {
            n: (2, 5),
            m: (3, 4),
            k: (2, 9),
            p: 0.5,
        };
        for i in 0..200 {
            let inst = s.sample(9, i).unwrap();
            assert!((2..=5).contains(&inst.profile.n()));
            assert!((3..=4).contains(&inst.profile.m()));
            assert!(inst.k >= 2 && inst.k <= inst.profile.m());
            assert_eq!(inst, s.sample(9, i).unwrap());
        }
        assert_ne!(s.sample(9, 0).unwrap(), s.sample(9, 1).unwrap());
    }

    #[test]
    fn budget_returns_checkpoint() {
        let opts = ScanOptions {
            budget: Some(100),
            ..Default::default()
        };
        let err =
            exhaustive_verify(Rule::Seqpav, Axiom::Jr, Bounds::new(3, 2, 2), &opts).unwrap_err();
        let SearchError::BudgetExhausted {
            checkpoint,
            partial,
        } = err
        else {
            panic!("expected budget error")
        };
        assert_eq!(checkpoint, 100);
        assert_eq!(partial.next, 100);
        assert!(!partial.complete);
    }
}
