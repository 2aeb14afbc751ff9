//! Queries over built graphs: simple paths, capture-free reachability of
//! actions, and the capabilities an action depends on.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::calculus::Term;
use crate::graph::{NodeId, NodeKind, PsmGraph};

pub const DEFAULT_PATH_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("no node {0} in the graph")]
    UnknownNode(NodeId),
    #[error("node {node} is a {found} node, expected {expected}")]
    KindMismatch {
        node: NodeId,
        expected: NodeKind,
        found: NodeKind,
    },
    #[error("more than {budget} paths")]
    PathBudgetExceeded { budget: usize },
    #[error("no rule `{0}` occurs in the graph")]
    UnknownRule(String),
}

/// A simple path. `edges[i]` indexes [`PsmGraph::edges`] and leads from
/// `nodes[i]` to `nodes[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn interior(&self) -> &[NodeId] {
        if self.nodes.len() <= 2 {
            &[]
        } else {
            &self.nodes[1..self.nodes.len() - 1]
        }
    }

    pub fn terms<'g>(&self, g: &'g PsmGraph) -> Vec<&'g Term> {
        self.nodes.iter().map(|id| &g.nodes()[id].term).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapabilityReport {
    pub action: NodeId,
    pub required_captures: BTreeSet<Term>,
    pub required_facts: BTreeSet<Term>,
    pub required_signals: BTreeSet<Term>,
}

impl CapabilityReport {
    pub fn is_empty(&self) -> bool {
        self.required_captures.is_empty()
            && self.required_facts.is_empty()
            && self.required_signals.is_empty()
    }
}

fn check_node(g: &PsmGraph, id: &NodeId) -> Result<NodeKind, AnalysisError> {
    g.node(id)
        .map(|n| n.kind)
        .ok_or_else(|| AnalysisError::UnknownNode(id.clone()))
}

/// All simple paths from any node of `from` to `to`, shortest first, then
/// by node ids, then by edge indices.
pub fn enumerate_paths(
    g: &PsmGraph,
    from: &[NodeId],
    to: &NodeId,
) -> Result<Vec<Path>, AnalysisError> {
    enumerate_paths_with_budget(g, from, to, DEFAULT_PATH_BUDGET)
}

pub fn enumerate_paths_with_budget(
    g: &PsmGraph,
    from: &[NodeId],
    to: &NodeId,
    budget: usize,
) -> Result<Vec<Path>, AnalysisError> {
    check_node(g, to)?;
    for f in from {
        check_node(g, f)?;
    }

    // only nodes that can still reach `to` are worth visiting
    let incoming = g.incoming();
    let mut reaches: HashSet<&NodeId> = HashSet::from([to]);
    let mut queue = VecDeque::from([to]);
    while let Some(id) = queue.pop_front() {
        for &ei in incoming.get(id).map(Vec::as_slice).unwrap_or(&[]) {
            let prev = &g.edges()[ei].from;
            if reaches.insert(prev) {
                queue.push_back(prev);
            }
        }
    }

    let outgoing = g.outgoing();
    let starts: BTreeSet<&NodeId> = from.iter().filter(|f| reaches.contains(f)).collect();
    let mut paths = Vec::new();
    for start in starts {
        let mut nodes = vec![start.clone()];
        let mut on_path: HashSet<&NodeId> = HashSet::from([start]);
        let mut edges = Vec::new();
        dfs(
            g, &outgoing, &reaches, to, budget, &mut nodes, &mut on_path, &mut edges, &mut paths,
        )?;
    }
    paths.sort_by(|a, b| (a.len(), &a.nodes, &a.edges).cmp(&(b.len(), &b.nodes, &b.edges)));
    Ok(paths)
}

#[allow(clippy::too_many_arguments)]
fn dfs<'g>(
    g: &'g PsmGraph,
    outgoing: &std::collections::HashMap<&'g NodeId, Vec<usize>>,
    reaches: &HashSet<&'g NodeId>,
    to: &NodeId,
    budget: usize,
    nodes: &mut Vec<NodeId>,
    on_path: &mut HashSet<&'g NodeId>,
    edges: &mut Vec<usize>,
    out: &mut Vec<Path>,
) -> Result<(), AnalysisError> {
    let here = nodes.last().expect("path has a start");
    if here == to {
        if out.len() == budget {
            return Err(AnalysisError::PathBudgetExceeded { budget });
        }
        out.push(Path {
            nodes: nodes.clone(),
            edges: edges.clone(),
        });
        return Ok(());
    }
    let Some(next) = outgoing.get(here) else {
        return Ok(());
    };
    for &ei in next {
        let target = &g.edges()[ei].to;
        if !reaches.contains(target) || on_path.contains(target) {
            continue;
        }
        on_path.insert(target);
        nodes.push(target.clone());
        edges.push(ei);
        dfs(g, outgoing, reaches, to, budget, nodes, on_path, edges, out)?;
        edges.pop();
        nodes.pop();
        on_path.remove(target);
    }
    Ok(())
}

/// Paths from the graph's seeds to `target`.
pub fn seed_paths(g: &PsmGraph, target: &NodeId) -> Result<Vec<Path>, AnalysisError> {
    enumerate_paths(g, &g.meta.seeds, target)
}

fn require_action(g: &PsmGraph, action: &NodeId) -> Result<(), AnalysisError> {
    match check_node(g, action)? {
        NodeKind::Action => Ok(()),
        found => Err(AnalysisError::KindMismatch {
            node: action.clone(),
            expected: NodeKind::Action,
            found,
        }),
    }
}

/// Seed→action paths whose interior nodes are all structural.
pub fn capture_free_paths(g: &PsmGraph, action: &NodeId) -> Result<Vec<Path>, AnalysisError> {
    require_action(g, action)?;
    Ok(seed_paths(g, action)?
        .into_iter()
        .filter(|p| {
            p.interior()
                .iter()
                .all(|id| g.nodes()[id].kind == NodeKind::Structural)
        })
        .collect())
}

/// Captures and facts on seed→action paths, plus the signals feeding into
/// nodes on those paths.
pub fn required_capabilities(
    g: &PsmGraph,
    action: &NodeId,
) -> Result<CapabilityReport, AnalysisError> {
    let paths = seed_paths(g, action)?;
    let mut report = CapabilityReport {
        action: action.clone(),
        required_captures: BTreeSet::new(),
        required_facts: BTreeSet::new(),
        required_signals: BTreeSet::new(),
    };
    let on_paths: HashSet<&NodeId> = paths.iter().flat_map(|p| &p.nodes).collect();
    for id in &on_paths {
        let node = &g.nodes()[*id];
        match node.kind {
            NodeKind::Capture => {
                report.required_captures.insert(node.term.clone());
            }
            NodeKind::Fact => {
                report.required_facts.insert(node.term.clone());
            }
            NodeKind::Signal => {
                report.required_signals.insert(node.term.clone());
            }
            _ => {}
        }
    }
    for e in g.edges() {
        if on_paths.contains(&e.to) {
            let src = &g.nodes()[&e.from];
            if src.kind == NodeKind::Signal {
                report.required_signals.insert(src.term.clone());
            }
        }
    }
    Ok(report)
}

/// Seed→action paths whose last edge comes from one of `rules`.
pub fn target_behaviour(
    g: &PsmGraph,
    rules: &BTreeSet<String>,
) -> Result<Vec<Path>, AnalysisError> {
    let used: BTreeSet<&str> = g.edges().iter().map(|e| e.rule.as_str()).collect();
    if let Some(unknown) = rules.iter().find(|r| !used.contains(r.as_str())) {
        return Err(AnalysisError::UnknownRule(unknown.clone()));
    }
    let mut out = Vec::new();
    for action in g.nodes_of_kind(NodeKind::Action) {
        out.extend(seed_paths(g, &action)?.into_iter().filter(|p| {
            p.edges
                .last()
                .is_some_and(|&ei| rules.contains(&g.edges()[ei].rule))
        }));
    }
    out.sort_by(|a, b| (a.len(), &a.nodes, &a.edges).cmp(&(b.len(), &b.nodes, &b.edges)));
    Ok(out)
}
