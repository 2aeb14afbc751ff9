use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use super::{classify, BuildError, BuildOptions, Edge, GraphMeta, NodeId, NodeKind, Origin, PsmGraph};
use crate::calculus::{normalize, Term};
use crate::rules::{applicable, signal_rule, Rule, RuleApplication, RuleError};
use crate::scenario::{signal_body, Scenario};

/// Start graph: the seeds as structural nodes and the signals, no edges.
pub fn seed(sc: &Scenario, opts: &BuildOptions) -> Result<PsmGraph, BuildError> {
    let vocab = &sc.vocabulary;
    let mut g = PsmGraph::new(GraphMeta {
        scenario: sc.name.clone(),
        iterations: 0,
        options: *opts,
        seeds: Vec::new(),
    });
    for s in &sc.seeds {
        let invalid = |reason: String| BuildError::InvalidSeed {
            term: s.clone(),
            reason,
        };
        if s.is_empty() || !s.is_effectus_sequence() {
            return Err(invalid("a seed must be a non-empty sequence of effectus".into()));
        }
        if let Some(e) = s.effectus().find(|e| !vocab.effectus_valid(e)) {
            return Err(invalid(format!("`{e}` is outside the declared domain of {}", e.causa)));
        }
        let term = normalize(s, vocab);
        if term.len() > opts.max_term_len {
            return Err(invalid(format!(
                "{} atoms, the limit is {}",
                term.len(),
                opts.max_term_len
            )));
        }
        let kind = classify(&term, Origin::Seed);
        let (id, _) = g.insert_node(term, kind);
        if !g.meta.seeds.contains(&id) {
            g.meta.seeds.push(id);
        }
    }
    for s in &sc.signals {
        let term = normalize(s, vocab);
        let valid = signal_body(&term).is_some_and(|body| {
            body.effectus().all(|e| vocab.effectus_valid(e)) && term.len() <= opts.max_term_len
        });
        if !valid {
            return Err(BuildError::InvalidSignal { term: s.clone() });
        }
        g.insert_node(term, NodeKind::Signal);
    }
    Ok(g)
}

/// What one saturation round added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepOutcome {
    pub new_nodes: usize,
    pub new_edges: usize,
}

/// The rules a build runs: the scenario's rules plus the signal rule,
/// ordered by id.
fn active_rules(sc: &Scenario) -> Vec<Rule> {
    let mut rules = sc.rules.clone();
    rules.push(signal_rule());
    rules.sort_by(|a, b| a.id.cmp(&b.id));
    rules
}

/// One round: fires every applicable rule over the current nodes.
pub fn step(g: &mut PsmGraph, sc: &Scenario) -> Result<StepOutcome, BuildError> {
    step_with(g, sc, &active_rules(sc))
}

pub(crate) fn step_with(
    g: &mut PsmGraph,
    sc: &Scenario,
    rules: &[Rule],
) -> Result<StepOutcome, BuildError> {
    let terms: Vec<Term> = g.nodes.values().map(|n| n.term.clone()).collect();
    let max_len = g.meta.options.max_term_len;
    let found: Vec<Result<Vec<RuleApplication>, RuleError>> = rules
        .par_iter()
        .map(|r| applicable(r, &terms, &sc.vocabulary, max_len))
        .collect();

    let mut outcome = StepOutcome::default();
    for (rule, apps) in rules.iter().zip(found) {
        for app in apps? {
            let matched: BTreeSet<NodeId> = app
                .matched
                .iter()
                .map(|t| g.by_term[t].clone())
                .collect();
            let mut produced = BTreeSet::new();
            for t in &app.produced {
                let kind = classify(t, Origin::Rule(rule.class));
                let (id, fresh) = g.insert_node(t.clone(), kind);
                if fresh {
                    outcome.new_nodes += 1;
                }
                produced.insert(id);
            }
            let key = (
                rule.id.clone(),
                matched.iter().cloned().collect(),
                produced.iter().cloned().collect(),
            );
            if !g.applied.insert(key) {
                continue;
            }
            let application = g.next_application;
            g.next_application += 1;
            for from in &matched {
                for to in &produced {
                    g.edges.push(Edge {
                        from: from.clone(),
                        to: to.clone(),
                        rule: rule.id.clone(),
                        application,
                    });
                    outcome.new_edges += 1;
                }
            }
        }
    }
    Ok(outcome)
}

/// Seeds the scenario and saturates to the fixpoint.
pub fn build(sc: &Scenario, opts: &BuildOptions) -> Result<PsmGraph, BuildError> {
    build_with(sc, opts, &active_rules(sc))
}

/// [`build`] with an explicit rule order. The result differs from the
/// default build at most in application numbering.
pub fn build_with(sc: &Scenario, opts: &BuildOptions, rules: &[Rule]) -> Result<PsmGraph, BuildError> {
    let mut g = seed(sc, opts)?;
    loop {
        if g.meta.iterations >= opts.max_iterations {
            return Err(BuildError::IterationBudgetExceeded {
                budget: opts.max_iterations,
            });
        }
        let outcome = step_with(&mut g, sc, rules)?;
        g.meta.iterations += 1;
        if outcome == StepOutcome::default() {
            break;
        }
    }
    if opts.prune {
        g = prune(&g);
    }
    Ok(g)
}

/// Keeps the nodes from which some action node is reachable.
pub fn prune(g: &PsmGraph) -> PsmGraph {
    let incoming = g.incoming();
    let mut keep: BTreeSet<NodeId> = g.nodes_of_kind(NodeKind::Action).into_iter().collect();
    let mut queue: VecDeque<NodeId> = keep.iter().cloned().collect();
    while let Some(id) = queue.pop_front() {
        for &ei in incoming.get(&id).map(Vec::as_slice).unwrap_or(&[]) {
            let from = &g.edges[ei].from;
            if keep.insert(from.clone()) {
                queue.push_back(from.clone());
            }
        }
    }

    let mut out = PsmGraph::new(g.meta.clone());
    out.meta.seeds.retain(|s| keep.contains(s));
    for (id, node) in &g.nodes {
        if keep.contains(id) {
            out.insert_node(node.term.clone(), node.kind);
        }
    }
    out.edges = g
        .edges
        .iter()
        .filter(|e| keep.contains(&e.from) && keep.contains(&e.to))
        .cloned()
        .collect();
    out.rebuild_applications();
    // numbering continues after the original graph's last application
    out.next_application = g.next_application;
    out
}
