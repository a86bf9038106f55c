//! Approval-based committee elections: profiles, rules, axiom checkers and
//! counterexample search.

pub mod axioms;
pub mod generate;
pub mod polarized;
pub mod profile;
pub mod rules;
pub mod score;
pub mod search;
pub mod sets;

pub use axioms::{Axiom, AxiomError, AxiomVerdict, CheckOptions, Witness};
pub use profile::{parse_profile, ApprovalProfile, Committee, Instance, ProfileError};
pub use rules::{compute, Outcome, Rule, RuleError, SelectionTrace};
pub use score::ExactScore;
pub use search::{SearchError, SearchReport};
pub use sets::CandidateSet;
