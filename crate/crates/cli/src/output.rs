//! Human-readable and JSON renderings. JSON documents carry no timing, so
//! identical invocations print identical bytes.

use abcvote::axioms::AxiomVerdict;
use abcvote::rules::{Action, Outcome};
use abcvote::search::{
    CandidateMonotonicityReport, CjrScanReport, CommitteeMonotonicityReport, EmptyStrictCore,
    HuntResult, MonotonicityHit, Scope, SearchReport,
};
use abcvote::{CandidateSet, ExactScore};
use serde::Serialize;
use serde_json::json;
use std::io::Write;

pub struct Out {
    json: bool,
}

// A closed pipe (`| head`) is not an error worth a panic.
fn emit<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

impl Out {
    pub fn new(json: bool) -> Self {
        Out { json }
    }

    pub fn compute(&self, out: &Outcome, score: &ExactScore, trace: bool) {
        if self.json {
            let mut doc = json!({
                "rule": out.trace.rule,
                "k": out.trace.k,
                "committee": out.committee.members(),
                "pav_score": score,
            });
            if trace {
                doc["trace"] = serde_json::to_value(&out.trace).expect("serializable");
            }
            return emit(&doc);
        }
        println!("W = {}", out.committee);
        println!("PAV score {score}");
        if !trace {
            return;
        }
        for (i, r) in out.trace.rounds.iter().enumerate() {
            let verb = match r.action {
                Action::Add => "add",
                Action::Remove => "remove",
            };
            let mut line = format!("round {}: {verb} {} ({})", i + 1, r.candidate, r.value);
            if r.tied.len() > 1 {
                line += &format!(" tied with {:?}", r.tied);
            }
            if r.filler {
                line += " [filler]";
            }
            println!("{line}");
        }
        for s in &out.trace.swaps {
            println!("swap: {} -> {} (+{})", s.removed, s.added, s.gain);
        }
        if let Some(opt) = &out.trace.optimum {
            println!("optima: {}, nodes: {}", opt.optima, opt.nodes);
        }
    }

    pub fn verdict(&self, v: &AxiomVerdict) {
        if self.json {
            return emit(v);
        }
        if v.satisfied {
            println!("{} satisfied ({} sets examined)", v.axiom, v.sets_examined);
            return;
        }
        println!("{} violated", v.axiom);
        for w in v.witness.iter().chain(&v.more_witnesses) {
            println!("  witness: {w}");
        }
    }

    pub fn score(&self, s: &ExactScore) {
        if self.json {
            return emit(&json!({ "pav_score": s }));
        }
        println!("{s}");
    }

    pub fn report(&self, r: &SearchReport) {
        if self.json {
            return emit(r);
        }
        match &r.scope {
            Scope::Exhaustive { bounds, total } => println!(
                "{} / {}: exhaustive n <= {}, m <= {}, k <= {} ({} instances)",
                r.rule, r.axiom, bounds.n_max, bounds.m_max, bounds.k_max, total
            ),
            Scope::Randomized {
                sampler,
                seed,
                samples,
            } => println!(
                "{} / {}: {samples} samples, seed {seed}, n in {:?}, m in {:?}, k in {:?}, p = {}",
                r.rule, r.axiom, sampler.n, sampler.m, sampler.k, sampler.p
            ),
        }
        println!(
            "examined {}, skipped {}, violations {}, range {}..{}{}",
            r.examined,
            r.skipped,
            r.violations.len(),
            r.start,
            r.next,
            if r.complete { "" } else { " (incomplete)" }
        );
        println!("elapsed {:.2?}", r.elapsed);
        for v in &r.violations {
            println!("--- instance {} (W = {})", v.index, v.committee);
            print!("{}", v.instance.to_text());
            if let Some(w) = &v.verdict.witness {
                println!("witness: {w}");
            }
        }
    }

    pub fn hunt(&self, h: &HuntResult) {
        if self.json {
            return emit(h);
        }
        match &h.found {
            Some(v) => {
                println!(
                    "{} violates {} at instance {} (W = {})",
                    h.rule, h.axiom, v.index, v.committee
                );
                print!("{}", v.instance.to_text());
                if let Some(w) = &v.verdict.witness {
                    println!("witness: {w}");
                }
            }
            None => println!(
                "no violation of {} by {} in {} instances: claim unreproduced at budget",
                h.axiom, h.rule, h.examined
            ),
        }
    }

    pub fn empty_core(&self, found: Option<&EmptyStrictCore>) {
        if self.json {
            return emit(&found);
        }
        let Some(e) = found else {
            println!("every instance in bounds has a nonempty strict core");
            return;
        };
        println!("empty strict core at instance {}:", e.index);
        print!("{}", e.instance.to_text());
        for (w, wit) in &e.witnesses {
            println!("  {w}: {wit}");
        }
    }

    pub fn cjr_scan(&self, r: &CjrScanReport) {
        if self.json {
            return emit(r);
        }
        println!("{}", r.label);
        println!(
            "{} instances, {} with a CJR committee, {} without",
            r.instances,
            r.with_cjr_committee,
            r.cjr_empty.len()
        );
        for (i, inst) in &r.cjr_empty {
            println!("--- instance {i}");
            print!("{}", inst.to_text());
        }
    }

    pub fn committee_mono(&self, r: &CommitteeMonotonicityReport) {
        if self.json {
            return emit(r);
        }
        let sem = serde_json::to_value(r.semantics).expect("serializable");
        println!(
            "{} up to k = {} ({})",
            r.rule,
            r.k_max,
            sem.as_str().unwrap_or_default()
        );
        for (k, outs) in r.outcomes.iter().enumerate() {
            println!("  k = {}: {}", k + 1, sets(outs));
        }
        match &r.break_point {
            Some(b) => println!(
                "break: {} at k = {} extends to none of {}",
                b.committee,
                b.k,
                sets(&b.larger)
            ),
            None => println!("monotone"),
        }
    }

    pub fn committee_mono_hunt(&self, hit: Option<&MonotonicityHit>) {
        if self.json {
            return emit(&hit);
        }
        match hit {
            Some(h) => {
                println!("instance {}:", h.index);
                print!("{}", h.instance.to_text());
                self.committee_mono(&h.report);
            }
            None => println!("no committee monotonicity break in bounds"),
        }
    }

    pub fn candidate_mono(&self, r: &CandidateMonotonicityReport) {
        if self.json {
            return emit(r);
        }
        println!(
            "{} at k = {}: W = {} ({} reruns)",
            r.rule, r.k, r.committee, r.reruns
        );
        match &r.counterexample {
            Some(c) => println!(
                "break: voter {} approving {} yields W = {}",
                c.voter, c.candidate, c.committee_after
            ),
            None => println!("monotone"),
        }
    }
}

fn sets(s: &[CandidateSet]) -> String {
    s.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
