//! Phenomenon-signal modelling: a calculus of effectus sequences, rules
//! over term patterns, and a derivation graph built to a fixpoint from a
//! scenario's start conditions.
//!
//! ```
//! use psm_core::{build, paper_scenario, BuildOptions, Term};
//!
//! let g = build(&paper_scenario(), &BuildOptions::default()).unwrap();
//! let fact: Term = "! r:Q r1:P".parse().unwrap();
//! assert!(g.contains_term(&fact));
//! ```

pub mod analysis;
pub mod calculus;
pub mod dsl;
pub mod export;
pub mod graph;
pub mod rules;
pub mod scenario;
pub mod vocabulary;

pub use analysis::{
    capture_free_paths, enumerate_paths, required_capabilities, seed_paths, target_behaviour,
    AnalysisError, CapabilityReport, Path,
};
pub use calculus::{
    apply_successus, compose, concat, e_equal, is_normalized, normalize, ActionSym, Atom,
    CalculusError, CausaSym, Effectus, Order2Sym, SuccessusSym, Term, TermParseError,
};
pub use dsl::{parse, Diagnostic, Severity, SourceFile};
pub use export::{export_dot, export_json, import_json};
pub use graph::{
    build, classify, prune, seed, step, BuildError, BuildOptions, NodeId, NodeKind, Origin,
    PsmGraph,
};
pub use rules::{applicable, match_pattern, Binding, Pattern, Rule, RuleApplication, RuleClass, RuleError};
pub use scenario::{paper_rules, paper_scenario, Scenario};
pub use vocabulary::{paper_vocabulary, IndicatorDecl, Vocabulary};
