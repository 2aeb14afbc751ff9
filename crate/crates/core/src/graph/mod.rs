//! The derivation graph: nodes are normalized terms, edges record which rule
//! application produced a node from which matched nodes.

mod builder;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::calculus::{Atom, Order2Sym, Term};
use crate::rules::{RuleClass, RuleError};
use crate::scenario::signal_body;

pub use builder::{build, build_with, prune, seed, step, StepOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Structural,
    Capture,
    Fact,
    Signal,
    Action,
}

impl NodeKind {
    pub const ALL: [NodeKind; 5] = [
        NodeKind::Structural,
        NodeKind::Capture,
        NodeKind::Fact,
        NodeKind::Signal,
        NodeKind::Action,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Structural => "structural",
            NodeKind::Capture => "capture",
            NodeKind::Fact => "fact",
            NodeKind::Signal => "signal",
            NodeKind::Action => "action",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a node came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Seed,
    Signal,
    Rule(RuleClass),
}

pub fn classify(term: &Term, origin: Origin) -> NodeKind {
    if origin == Origin::Signal || signal_body(term).is_some() {
        return NodeKind::Signal;
    }
    match term.first() {
        Some(Atom::Order2(Order2Sym::Capture)) => return NodeKind::Capture,
        Some(Atom::Order2(Order2Sym::Fact)) => return NodeKind::Fact,
        _ => {}
    }
    let has_action = term.atoms().iter().any(|a| matches!(a, Atom::Action(_)));
    if origin == Origin::Rule(RuleClass::Behavioural) || has_action {
        NodeKind::Action
    } else {
        NodeKind::Structural
    }
}

/// Content hash of kind and canonical term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(String);

impl NodeId {
    pub fn of(term: &Term, kind: NodeKind) -> Self {
        let mut h = Sha256::new();
        h.update(kind.name().as_bytes());
        h.update([0u8]);
        h.update(term.to_string().as_bytes());
        let digest = hex::encode(h.finalize());
        NodeId(format!("n{}", &digest[..16]))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Accepts a string of the form produced by [`NodeId::of`].
    pub fn parse(s: &str) -> Option<Self> {
        let hex = s.strip_prefix('n')?;
        (hex.len() == 16 && hex.bytes().all(|b| b.is_ascii_hexdigit()))
            .then(|| NodeId(s.to_string()))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub term: Term,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub rule: String,
    pub application: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub prune: bool,
    pub max_iterations: usize,
    pub max_term_len: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            prune: false,
            max_iterations: 10_000,
            max_term_len: crate::calculus::DEFAULT_MAX_TERM_LEN,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphMeta {
    pub scenario: String,
    pub iterations: usize,
    pub options: BuildOptions,
    /// Seed nodes in declaration order.
    pub seeds: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("seed `{term}` is invalid: {reason}")]
    InvalidSeed { term: Term, reason: String },
    #[error("signal `{term}` is not of the form `?- s ! s` over valid effectus")]
    InvalidSignal { term: Term },
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("no fixpoint after {budget} rounds")]
    IterationBudgetExceeded { budget: usize },
}

type AppKey = (String, Vec<NodeId>, Vec<NodeId>);

#[derive(Debug, Clone, Default)]
pub struct PsmGraph {
    nodes: BTreeMap<NodeId, Node>,
    by_term: HashMap<Term, NodeId>,
    edges: Vec<Edge>,
    applied: BTreeSet<AppKey>,
    next_application: u64,
    pub meta: GraphMeta,
}

impl PartialEq for PsmGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges && self.meta == other.meta
    }
}

impl Eq for PsmGraph {}

impl PsmGraph {
    pub fn new(meta: GraphMeta) -> Self {
        Self {
            meta,
            ..Default::default()
        }
    }

    /// Assembles a graph from parts, e.g. after import. Fails on an edge
    /// endpoint that is not a node or on two nodes sharing a term.
    pub fn from_parts(
        nodes: Vec<Node>,
        edges: Vec<Edge>,
        meta: GraphMeta,
    ) -> Result<Self, String> {
        let mut g = PsmGraph::new(meta);
        for node in nodes {
            if g.by_term.contains_key(&node.term) {
                return Err(format!("term `{}` appears on two nodes", node.term));
            }
            g.insert_node(node.term, node.kind);
        }
        for e in &edges {
            for end in [&e.from, &e.to] {
                if !g.nodes.contains_key(end) {
                    return Err(format!("edge references unknown node {end}"));
                }
            }
        }
        g.edges = edges;
        // the order a build emits them in
        g.edges.sort_by(|a, b| {
            (a.application, &a.from, &a.to, &a.rule).cmp(&(b.application, &b.from, &b.to, &b.rule))
        });
        g.edges.dedup();
        g.rebuild_applications();
        Ok(g)
    }

    pub fn nodes(&self) -> &BTreeMap<NodeId, Node> {
        &self.nodes
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn id_of(&self, term: &Term) -> Option<&NodeId> {
        self.by_term.get(term)
    }

    pub fn contains_term(&self, term: &Term) -> bool {
        self.by_term.contains_key(term)
    }

    /// Node ids of the given kind, in canonical order.
    pub fn nodes_of_kind(&self, kind: NodeKind) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|(_, n)| n.kind == kind)
            .map(|(id, _)| id.clone())
            .collect()
    }

    /// Edge indices leaving each node.
    pub fn outgoing(&self) -> HashMap<&NodeId, Vec<usize>> {
        let mut out: HashMap<&NodeId, Vec<usize>> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            out.entry(&e.from).or_default().push(i);
        }
        out
    }

    /// Edge indices entering each node.
    pub fn incoming(&self) -> HashMap<&NodeId, Vec<usize>> {
        let mut inc: HashMap<&NodeId, Vec<usize>> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            inc.entry(&e.to).or_default().push(i);
        }
        inc
    }

    fn insert_node(&mut self, term: Term, kind: NodeKind) -> (NodeId, bool) {
        if let Some(id) = self.by_term.get(&term) {
            return (id.clone(), false);
        }
        let id = NodeId::of(&term, kind);
        self.by_term.insert(term.clone(), id.clone());
        self.nodes.insert(id.clone(), Node { term, kind });
        (id, true)
    }

    fn rebuild_applications(&mut self) {
        let mut groups: BTreeMap<u64, (String, BTreeSet<NodeId>, BTreeSet<NodeId>)> =
            BTreeMap::new();
        for e in &self.edges {
            let g = groups
                .entry(e.application)
                .or_insert_with(|| (e.rule.clone(), BTreeSet::new(), BTreeSet::new()));
            g.1.insert(e.from.clone());
            g.2.insert(e.to.clone());
        }
        self.next_application = groups.keys().next_back().map_or(0, |k| k + 1);
        self.applied = groups
            .into_values()
            .map(|(r, from, to)| (r, from.into_iter().collect(), to.into_iter().collect()))
            .collect();
    }

    /// Edge set without application ids, for comparing graphs built with
    /// different rule orders.
    pub fn edge_signature(&self) -> BTreeSet<(NodeId, NodeId, String)> {
        self.edges
            .iter()
            .map(|e| (e.from.clone(), e.to.clone(), e.rule.clone()))
            .collect()
    }
}
