//! Reference implementations the acceptance suite checks the library
//! against. They favour obviousness over speed and share no code with the
//! library beyond its public data types.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use psm_core::calculus::{Atom, Effectus, SuccessusSym, Term};
use psm_core::graph::{classify, NodeId, Origin};
use psm_core::rules::{applicable, Binding, Pattern, PatternAtom, Rule, SuccPat};
use psm_core::scenario::Scenario;
use psm_core::vocabulary::{IndicatorDecl, Vocabulary};
use rand::seq::SliceRandom;
use rand::Rng;

// ---------------------------------------------------------------------------
// Rewrite relation over a 2 x 2 vocabulary: causae P, Q; successus a, b.
// b:Q is not realisable, so it is void.

pub const LETTERS: [&str; 8] = ["a:P", "b:P", "a:Q", "b:Q", "!", "?", "!-", "?-"];
const NEUTRUM: u8 = 8;

pub fn small_vocabulary() -> Vocabulary {
    Vocabulary::new(vec![
        IndicatorDecl::new("P", "first", ["a", "b"]),
        IndicatorDecl::new("Q", "second", ["a"]),
    ])
}

pub fn to_term(word: &[u8]) -> Term {
    let src: Vec<&str> = word
        .iter()
        .map(|&c| if c == NEUTRUM { "I" } else { LETTERS[c as usize] })
        .collect();
    if src.is_empty() {
        Term::neutrum()
    } else {
        src.join(" ").parse().expect("oracle letters are valid literals")
    }
}

fn is_prefix(c: u8) -> bool {
    (4..=8).contains(&c)
}

fn is_void(c: u8) -> bool {
    c == 3
}

fn inverse(c: u8) -> Option<u8> {
    match c {
        4 => Some(6),
        6 => Some(4),
        5 => Some(7),
        7 => Some(5),
        _ => None,
    }
}

/// (prefix start, effect start, end) of every maximal block.
fn blocks(w: &[u8]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let start = i;
        while i < w.len() && is_prefix(w[i]) {
            i += 1;
        }
        let mid = i;
        while i < w.len() && !is_prefix(w[i]) {
            i += 1;
        }
        out.push((start, mid, i));
    }
    out
}

fn splice(w: &[u8], from: usize, to: usize, with: &[u8]) -> Vec<u8> {
    let mut v = w[..from].to_vec();
    v.extend_from_slice(with);
    v.extend_from_slice(&w[to..]);
    v
}

/// Every term reachable in one rewrite step, any rule at any position.
pub fn successors(w: &[u8]) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    let n = w.len();
    // u u -> u
    for i in 0..n {
        for len in 1..=(n - i) / 2 {
            if w[i..i + len] == w[i + len..i + 2 * len] {
                out.insert(splice(w, i + len, i + 2 * len, &[]));
            }
        }
    }
    let bs = blocks(w);
    for pair in bs.windows(2) {
        let ((s1, m1, e1), (s2, m2, e2)) = (pair[0], pair[1]);
        // w s1 w s2 -> w s1 s2
        if m1 > s1 && w[s1..m1] == w[s2..m2] {
            out.insert(splice(w, s2, m2, &[]));
        }
        // w1 s w2 s -> w1 w2 s
        if e1 > m1 && w[m1..e1] == w[m2..e2] {
            out.insert(splice(w, m1, e1, &[]));
        }
    }
    for i in 0..n.saturating_sub(1) {
        if inverse(w[i]).is_some_and(|inv| inv == w[i + 1]) {
            out.insert(splice(w, i, i + 2, &[NEUTRUM]));
        }
    }
    for i in 0..n {
        if w[i] == NEUTRUM || is_void(w[i]) {
            out.insert(splice(w, i, i + 1, &[]));
        }
    }
    out
}

/// Normal forms reachable from each term, memoised.
#[derive(Default)]
pub struct NormalForms {
    memo: HashMap<Vec<u8>, std::rc::Rc<BTreeSet<Vec<u8>>>>,
}

impl NormalForms {
    pub fn of(&mut self, w: &[u8]) -> std::rc::Rc<BTreeSet<Vec<u8>>> {
        if let Some(r) = self.memo.get(w) {
            return r.clone();
        }
        let next = successors(w);
        let result = if next.is_empty() {
            BTreeSet::from([w.to_vec()])
        } else {
            let mut all = BTreeSet::new();
            for s in next {
                all.extend(self.of(&s).iter().cloned());
            }
            all
        };
        let rc = std::rc::Rc::new(result);
        self.memo.insert(w.to_vec(), rc.clone());
        rc
    }
}

/// All words of length `0..=max` over `alphabet` letters.
pub fn words(alphabet: usize, max: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for c in 0..alphabet as u8 {
                let mut v: Vec<u8> = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

// ---------------------------------------------------------------------------
// Brute-force matching: try every assignment of candidate values to the
// pattern's variables and keep those that reproduce the term exactly.

fn substitute(p: &Pattern, seq: &BTreeMap<String, Vec<Effectus>>, succ: &BTreeMap<String, SuccessusSym>) -> Vec<Atom> {
    let mut out = Vec::new();
    for a in p.atoms() {
        match a {
            PatternAtom::CausaSeq(v) => out.extend(seq[v].iter().cloned().map(Atom::Effectus)),
            PatternAtom::Effectus { successus, causa } => {
                let s = match successus {
                    SuccPat::Lit(s) => s.clone(),
                    SuccPat::Var(v) => succ[v].clone(),
                };
                out.push(Atom::Effectus(Effectus {
                    successus: s,
                    causa: causa.clone(),
                }));
            }
            PatternAtom::Order2(o) => out.push(Atom::Order2(*o)),
            PatternAtom::Neutrum => out.push(Atom::Neutrum),
            PatternAtom::Action(x) => out.push(Atom::Action(x.clone())),
        }
    }
    out
}

pub fn brute_force_match(p: &Pattern, t: &Term, universe: &[SuccessusSym]) -> BTreeSet<Binding> {
    let seq_vars: Vec<String> = p
        .sequence_vars()
        .map(str::to_string)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let succ_vars: Vec<String> = p
        .successus_vars()
        .map(str::to_string)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    // candidate sequence values: every non-empty run of effectus in t
    let atoms = t.atoms();
    let mut runs: BTreeSet<Vec<Effectus>> = BTreeSet::new();
    for i in 0..atoms.len() {
        for j in i + 1..=atoms.len() {
            let slice: Option<Vec<Effectus>> =
                atoms[i..j].iter().map(|a| a.as_effectus().cloned()).collect();
            match slice {
                Some(s) => {
                    runs.insert(s);
                }
                None => break,
            }
        }
    }
    let runs: Vec<Vec<Effectus>> = runs.into_iter().collect();

    let mut found = BTreeSet::new();
    let mut seq = BTreeMap::new();
    let mut succ = BTreeMap::new();
    assign_seq(p, t, &seq_vars, &succ_vars, &runs, universe, &mut seq, &mut succ, &mut found);
    found
}

#[allow(clippy::too_many_arguments)]
fn assign_seq(
    p: &Pattern,
    t: &Term,
    seq_vars: &[String],
    succ_vars: &[String],
    runs: &[Vec<Effectus>],
    universe: &[SuccessusSym],
    seq: &mut BTreeMap<String, Vec<Effectus>>,
    succ: &mut BTreeMap<String, SuccessusSym>,
    found: &mut BTreeSet<Binding>,
) {
    if let Some((v, rest)) = seq_vars.split_first() {
        for r in runs {
            seq.insert(v.clone(), r.clone());
            assign_seq(p, t, rest, succ_vars, runs, universe, seq, succ, found);
        }
        seq.remove(v);
        return;
    }
    if let Some((v, rest)) = succ_vars.split_first() {
        for s in universe {
            succ.insert(v.clone(), s.clone());
            assign_seq(p, t, &[], rest, runs, universe, seq, succ, found);
        }
        succ.remove(v);
        return;
    }
    if substitute(p, seq, succ) == t.atoms() {
        found.insert(Binding {
            causa_seq: seq.clone(),
            succ: succ.clone(),
        });
    }
}

// ---------------------------------------------------------------------------
// A builder that fires single applications in random order, updating the
// node set after each one, until nothing changes.

pub struct RandomOrderGraph {
    pub nodes: BTreeSet<NodeId>,
    pub edges: BTreeSet<(NodeId, NodeId, String)>,
}

pub fn random_order_build(sc: &Scenario, rng: &mut impl Rng) -> RandomOrderGraph {
    let vocab = &sc.vocabulary;
    let mut kinds: BTreeMap<Term, NodeId> = BTreeMap::new();
    for s in &sc.seeds {
        let t = psm_core::normalize(s, vocab);
        let id = NodeId::of(&t, classify(&t, Origin::Seed));
        kinds.entry(t).or_insert(id);
    }
    for s in &sc.signals {
        let t = psm_core::normalize(s, vocab);
        let id = NodeId::of(&t, classify(&t, Origin::Signal));
        kinds.entry(t).or_insert(id);
    }
    let mut rules: Vec<Rule> = sc.rules.clone();
    rules.push(psm_core::rules::signal_rule());
    let mut edges = BTreeSet::new();

    loop {
        let mut changed = false;
        rules.shuffle(rng);
        for rule in &rules {
            let mut terms: Vec<Term> = kinds.keys().cloned().collect();
            terms.shuffle(rng);
            let mut apps = applicable(rule, &terms, vocab, 64).expect("within length cap");
            apps.shuffle(rng);
            for app in apps {
                for p in &app.produced {
                    let id = NodeId::of(p, classify(p, Origin::Rule(rule.class)));
                    if !kinds.contains_key(p) {
                        kinds.insert(p.clone(), id.clone());
                        changed = true;
                    }
                    let to = kinds[p].clone();
                    for m in &app.matched {
                        changed |= edges.insert((kinds[m].clone(), to.clone(), rule.id.clone()));
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    RandomOrderGraph {
        nodes: kinds.into_values().collect(),
        edges,
    }
}
