//! `abcvote`: run committee rules, check axioms, and search for
//! counterexamples from the command line.
//!
//! Exit codes: 0 success or claim holds, 1 violation found, 2 usage or input
//! error, 3 budget exhausted.

mod output;

use abcvote::axioms::{check, validate_witness, CheckOptions, DEFAULT_CHECK_BUDGET};
use abcvote::generate::{generate_polarized, generate_random, parse_group_spec};
use abcvote::rules::pav_score;
use abcvote::search::{
    check_candidate_monotonicity, check_committee_monotonicity, cjr_existence_scan,
    exhaustive_verify, find_axiom_violation, find_committee_monotonicity_break,
    find_empty_strict_core, parse_fixture, randomized_verify, Bounds, Hunt, Sampler, ScanOptions,
    SearchError,
};
use abcvote::{parse_profile, Axiom, AxiomError, Committee, Instance, Rule, RuleError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use output::Out;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "abcvote", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a rule on a profile.
    Compute {
        #[arg(long)]
        rule: Rule,
        #[arg(long)]
        input: PathBuf,
        /// Committee size; overrides the profile header.
        #[arg(long)]
        k: Option<usize>,
        /// Print the selection trace.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a committee against an axiom.
    Check {
        #[arg(long)]
        axiom: Axiom,
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated ascending candidate indices.
        #[arg(long)]
        committee: String,
        /// Restrict PJR/EJR to one cohesion level.
        #[arg(long)]
        ell: Option<usize>,
        /// Report every witness instead of the first.
        #[arg(long)]
        all_witnesses: bool,
        /// Candidate sets to visit before giving up.
        #[arg(long, default_value_t = DEFAULT_CHECK_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check a rule against an axiom on every small instance, or on seeded
    /// random samples with `--samples`.
    Verify {
        #[arg(long)]
        rule: Rule,
        #[arg(long)]
        axiom: Axiom,
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        sampling: SampleArgs,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Enumeration index to resume from.
        #[arg(long, default_value_t = 0)]
        start: u64,
        /// Instances to examine before stopping with a checkpoint.
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Hunt for counterexamples.
    Search {
        #[arg(long)]
        mode: SearchMode,
        #[arg(long)]
        rule: Option<Rule>,
        #[arg(long)]
        axiom: Option<Axiom>,
        /// Profile to examine (monotonicity modes).
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        sampling: SampleArgs,
        /// Node budget: candidate sets per axiom check, or rule runs for
        /// tie enumeration.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Generate a profile.
    Gen {
        #[arg(long)]
        model: Model,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Polarized groups as `voters:candidates,...`.
        #[arg(long)]
        groups: Option<String>,
        #[arg(long)]
        seed: u64,
    },
    /// Print the PAV score of a committee.
    Score {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        committee: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
}

#[derive(Args, Clone, Copy)]
struct SampleArgs {
    /// Draw this many random instances instead of enumerating.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 1)]
    m_min: usize,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    /// Approval probability for sampled instances.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    Violation,
    Emptystrictcore,
    Cjrscan,
    CommitteeMono,
    CandidateMono,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Random,
    Polarized,
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExhausted { .. } | SearchError::TieBudget { .. } => {
                Failure::Budget(e.to_string())
            }
            SearchError::Rule {
                source: RuleError::BudgetExhausted { .. },
                ..
            }
            | SearchError::Axiom {
                source: AxiomError::BudgetExhausted { .. },
                ..
            } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<RuleError> for Failure {
    fn from(e: RuleError) -> Self {
        match e {
            RuleError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<AxiomError> for Failure {
    fn from(e: AxiomError) -> Self {
        match e {
            AxiomError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Successful runs end either clean or with a violation on record.
#[derive(PartialEq, Eq)]
enum Status {
    Clean,
    Violation,
}

type Outcome = Result<Status, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Clean) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exhausted: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Compute {
            rule,
            input,
            k,
            trace,
            json,
        } => {
            let inst = load(&input, k)?;
            let out = abcvote::compute(rule, &inst.profile, inst.k)?;
            let score = pav_score(&inst.profile, &out.committee);
            Out::new(json).compute(&out, &score, trace);
            Ok(Status::Clean)
        }
        Command::Check {
            axiom,
            input,
            committee,
            ell,
            all_witnesses,
            budget,
            json,
        } => {
            let inst = load(&input, None)?;
            let w = parse_committee(&inst, &committee)?;
            let opts = CheckOptions {
                ell,
                budget,
                all_witnesses,
            };
            let verdict = check(axiom, &inst.profile, &w, &opts)?;
            if let Some(wit) = &verdict.witness {
                // A witness the validator rejects is a checker bug, not a violation.
                validate_witness(axiom, &inst.profile, &w, wit)
                    .map_err(|why| Failure::Input(format!("internal: witness invalid: {why}")))?;
            }
            Out::new(json).verdict(&verdict);
            Ok(status(!verdict.satisfied))
        }
        Command::Verify {
            rule,
            axiom,
            bounds,
            sampling,
            threads,
            start,
            limit,
            json,
        } => {
            let opts = ScanOptions {
                threads,
                start,
                budget: limit,
                check: CheckOptions::default(),
            };
            let bounds = require_bounds(bounds)?;
            let result = match sampling.samples {
                Some(samples) => {
                    let seed = require_seed(sampling.seed)?;
                    randomized_verify(rule, axiom, sampler(bounds, sampling), samples, seed, &opts)
                }
                None => exhaustive_verify(rule, axiom, bounds, &opts),
            };
            let out = Out::new(json);
            match result {
                Ok(report) => {
                    out.report(&report);
                    Ok(status(!report.violations.is_empty()))
                }
                Err(SearchError::BudgetExhausted {
                    checkpoint,
                    partial,
                }) => {
                    out.report(&partial);
                    Err(Failure::Budget(format!("resume with --start {checkpoint}")))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Search {
            mode,
            rule,
            axiom,
            input,
            bounds,
            sampling,
            budget,
            threads,
            json,
        } => search(
            mode,
            rule,
            axiom,
            input,
            bounds,
            sampling,
            budget,
            threads,
            Out::new(json),
        ),
        Command::Gen {
            model,
            n,
            m,
            k,
            p,
            groups,
            seed,
        } => {
            let inst = match model {
                Model::Random => {
                    let n = n.ok_or_else(|| Failure::Input("--n is required".into()))?;
                    generate_random(n, m, k, p, seed)
                }
                Model::Polarized => {
                    let spec =
                        groups.ok_or_else(|| Failure::Input("--groups is required".into()))?;
                    let groups =
                        parse_group_spec(&spec).map_err(|e| Failure::Input(e.to_string()))?;
                    let total: usize = groups.iter().map(|g| g.0).sum();
                    if n.is_some_and(|n| n != total) {
                        return Err(Failure::Input(format!(
                            "--n disagrees with --groups ({total} voters)"
                        )));
                    }
                    generate_polarized(&groups, m, k, seed)
                }
            }
            .map_err(|e| Failure::Input(e.to_string()))?;
            print!("{}", inst.to_text());
            Ok(Status::Clean)
        }
        Command::Score {
            input,
            committee,
            json,
        } => {
            let inst = load(&input, None)?;
            let members =
                Committee::parse_list(&committee).map_err(|e| Failure::Input(e.to_string()))?;
            let w = Committee::new(&inst.profile, members, members.len())
                .map_err(|e| Failure::Input(e.to_string()))?;
            Out::new(json).score(&pav_score(&inst.profile, &w));
            Ok(Status::Clean)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    mode: SearchMode,
    rule: Option<Rule>,
    axiom: Option<Axiom>,
    input: Option<PathBuf>,
    bounds: BoundArgs,
    sampling: SampleArgs,
    budget: Option<u64>,
    threads: usize,
    out: Out,
) -> Outcome {
    let need_rule =
        || rule.ok_or_else(|| Failure::Input("--rule is required for this mode".into()));
    match mode {
        SearchMode::Violation => {
            let rule = need_rule()?;
            let axiom = axiom.ok_or_else(|| Failure::Input("--axiom is required".into()))?;
            let bounds = require_bounds(bounds)?;
            let hunt = match sampling.samples {
                Some(samples) => Hunt::Randomized {
                    sampler: sampler(bounds, sampling),
                    samples,
                    seed: require_seed(sampling.seed)?,
                },
                None => Hunt::Exhaustive(bounds),
            };
            let check = CheckOptions {
                budget: budget.unwrap_or(DEFAULT_CHECK_BUDGET),
                ..Default::default()
            };
            let result = find_axiom_violation(rule, axiom, hunt, threads, &check)?;
            out.hunt(&result);
            Ok(status(result.found.is_some()))
        }
        SearchMode::Emptystrictcore => {
            let found = find_empty_strict_core(require_bounds(bounds)?, threads)?;
            out.empty_core(found.as_ref());
            Ok(status(found.is_some()))
        }
        SearchMode::Cjrscan => {
            let report = cjr_existence_scan(require_bounds(bounds)?, threads)?;
            out.cjr_scan(&report);
            Ok(Status::Clean)
        }
        SearchMode::CommitteeMono => {
            let rule = need_rule()?;
            match input {
                Some(path) => {
                    let inst = load(&path, None)?;
                    let k_max = bounds.k_max.unwrap_or(inst.k);
                    let report = check_committee_monotonicity(rule, &inst.profile, k_max, budget)?;
                    out.committee_mono(&report);
                    Ok(status(!report.monotone))
                }
                None => {
                    let hit =
                        find_committee_monotonicity_break(rule, require_bounds(bounds)?, threads)?;
                    out.committee_mono_hunt(hit.as_ref());
                    Ok(status(hit.is_some()))
                }
            }
        }
        SearchMode::CandidateMono => {
            let rule = need_rule()?;
            let path =
                input.ok_or_else(|| Failure::Input("--input is required for this mode".into()))?;
            let inst = load(&path, bounds.k_max)?;
            let report = check_candidate_monotonicity(rule, &inst.profile, inst.k)?;
            out.candidate_mono(&report);
            Ok(status(!report.monotone))
        }
    }
}

fn status(violated: bool) -> Status {
    if violated {
        Status::Violation
    } else {
        Status::Clean
    }
}

fn load(path: &PathBuf, k: Option<usize>) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    // Fixture files carry a profile after their key lines.
    let inst = parse_profile(&text)
        .or_else(|e| parse_fixture(&text).map(|f| f.instance).map_err(|_| e))
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    match k {
        Some(k) => Instance::new(inst.profile, k).map_err(|e| Failure::Input(e.to_string())),
        None => Ok(inst),
    }
}

fn parse_committee(inst: &Instance, list: &str) -> Result<Committee, Failure> {
    let members = Committee::parse_list(list).map_err(|e| Failure::Input(e.to_string()))?;
    Committee::new(&inst.profile, members, inst.k).map_err(|e| Failure::Input(e.to_string()))
}

fn require_bounds(b: BoundArgs) -> Result<Bounds, Failure> {
    match (b.n_max, b.m_max, b.k_max) {
        (Some(n), Some(m), Some(k)) => Ok(Bounds::new(n, m, k)),
        _ => Err(Failure::Input(
            "--n-max, --m-max and --k-max are required".into(),
        )),
    }
}

fn require_seed(seed: Option<u64>) -> Result<u64, Failure> {
    seed.ok_or_else(|| Failure::Input("random sampling requires an explicit --seed".into()))
}

fn sampler(bounds: Bounds, s: SampleArgs) -> Sampler {
    Sampler {
        n: (s.n_min, bounds.n_max),
        m: (s.m_min, bounds.m_max),
        k: (s.k_min, bounds.k_max),
        p: s.p,
    }
}
