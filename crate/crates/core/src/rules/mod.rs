//! Rules over term patterns.
//!
//! Patterns are term literals that may contain variables: an uppercase
//! token (`X`) stands for a non-empty sequence of effectus, and a lowercase
//! successus that is not declared in the vocabulary (`x:P`) stands for a
//! single successus. Conditions of a rule are AND-linked.

mod builtin;
mod matching;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::calculus::{
    classify_token, normalize_atoms, ActionSym, Atom, CausaSym, Constancy, Effectus, Order2Sym,
    RewriteAtom, SuccessusSym, Term, Token,
};
use crate::vocabulary::Vocabulary;

pub use builtin::{signal_rule, SIGNAL_RULE_ID};
pub use matching::{applicable, instantiate, match_pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleClass {
    Structural,
    Behavioural,
    Equivalence,
}

impl RuleClass {
    pub fn name(self) -> &'static str {
        match self {
            RuleClass::Structural => "structural",
            RuleClass::Behavioural => "behavioural",
            RuleClass::Equivalence => "equivalence",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "structural" => Some(RuleClass::Structural),
            "behavioural" | "behavioral" => Some(RuleClass::Behavioural),
            "equivalence" => Some(RuleClass::Equivalence),
            _ => None,
        }
    }
}

impl fmt::Display for RuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuccPat {
    Lit(SuccessusSym),
    Var(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternAtom {
    Order2(Order2Sym),
    Neutrum,
    Effectus { successus: SuccPat, causa: CausaSym },
    Action(ActionSym),
    /// Uppercase variable binding a non-empty effectus subsequence.
    CausaSeq(String),
}

impl fmt::Display for PatternAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternAtom::Order2(o) => write!(f, "{o}"),
            PatternAtom::Neutrum => f.write_str("I"),
            PatternAtom::Effectus { successus, causa } => match successus {
                SuccPat::Lit(s) => write!(f, "{s}:{causa}"),
                SuccPat::Var(v) => write!(f, "{v}:{causa}"),
            },
            PatternAtom::Action(a) => write!(f, "\"{a}\""),
            PatternAtom::CausaSeq(v) => f.write_str(v),
        }
    }
}

impl fmt::Debug for PatternAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&Atom> for PatternAtom {
    fn from(atom: &Atom) -> Self {
        match atom {
            Atom::Order2(o) => PatternAtom::Order2(*o),
            Atom::Neutrum => PatternAtom::Neutrum,
            Atom::Effectus(e) => PatternAtom::Effectus {
                successus: SuccPat::Lit(e.successus.clone()),
                causa: e.causa.clone(),
            },
            Atom::Action(a) => PatternAtom::Action(a.clone()),
        }
    }
}

impl RewriteAtom for PatternAtom {
    fn order2(&self) -> Option<Order2Sym> {
        match self {
            PatternAtom::Order2(o) => Some(*o),
            _ => None,
        }
    }

    fn is_neutrum(&self) -> bool {
        matches!(self, PatternAtom::Neutrum)
    }

    fn neutrum() -> Self {
        PatternAtom::Neutrum
    }

    fn is_void(&self, vocab: &Vocabulary) -> bool {
        match self.literal() {
            Some(atom) => atom.is_void(vocab),
            None => false,
        }
    }

    fn constancy(&self, vocab: &Vocabulary) -> Constancy {
        match self.literal() {
            Some(atom) => atom.constancy(vocab),
            None => Constancy::None,
        }
    }

    fn erase_causa(&self) -> Self {
        match self.literal() {
            Some(atom) => PatternAtom::from(&atom.erase_causa()),
            None => self.clone(),
        }
    }
}

impl PatternAtom {
    /// The term atom this pattern atom stands for, if it contains no variable.
    pub fn literal(&self) -> Option<Atom> {
        match self {
            PatternAtom::Order2(o) => Some(Atom::Order2(*o)),
            PatternAtom::Neutrum => Some(Atom::Neutrum),
            PatternAtom::Effectus {
                successus: SuccPat::Lit(s),
                causa,
            } => Some(Atom::Effectus(Effectus {
                successus: s.clone(),
                causa: causa.clone(),
            })),
            PatternAtom::Action(a) => Some(Atom::Action(a.clone())),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token {index} (`{token}`): {message}")]
pub struct PatternParseError {
    pub index: usize,
    pub token: String,
    pub message: String,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Pattern {
    atoms: Vec<PatternAtom>,
}

impl Pattern {
    pub fn new(atoms: Vec<PatternAtom>) -> Self {
        Self { atoms }
    }

    pub fn atoms(&self) -> &[PatternAtom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Parses pattern syntax. Successus declared in `vocab` are literals;
    /// other lowercase successus become variables.
    pub fn parse(src: &str, vocab: &Vocabulary) -> Result<Self, PatternParseError> {
        let mut atoms = Vec::new();
        for (index, token) in src.split_whitespace().enumerate() {
            atoms.push(
                Self::parse_token(token, vocab).map_err(|message| PatternParseError {
                    index,
                    token: token.to_string(),
                    message,
                })?,
            );
        }
        if atoms.is_empty() {
            return Err(PatternParseError {
                index: 0,
                token: String::new(),
                message: "empty pattern".into(),
            });
        }
        Ok(Self { atoms })
    }

    pub(crate) fn parse_token(token: &str, vocab: &Vocabulary) -> Result<PatternAtom, String> {
        Ok(match classify_token(token)? {
            Token::Order2(o) => PatternAtom::Order2(o),
            Token::Neutrum => PatternAtom::Neutrum,
            Token::Action(a) => PatternAtom::Action(ActionSym::new(a)),
            Token::Effectus(succ, causa) => {
                let succ_sym = SuccessusSym::new(succ);
                let successus = if vocab.declares_successus(&succ_sym) {
                    SuccPat::Lit(succ_sym)
                } else if is_successus_var(succ) {
                    SuccPat::Var(succ.to_string())
                } else {
                    return Err(format!("`{succ}` is not a declared successus"));
                };
                PatternAtom::Effectus {
                    successus,
                    causa: CausaSym::new(causa),
                }
            }
            Token::Bare(word) => {
                if vocab.declares_causa(&CausaSym::new(word)) {
                    return Err(format!(
                        "`{word}` is an indicator; write it as `succ:{word}`"
                    ));
                }
                if is_sequence_var(word) {
                    PatternAtom::CausaSeq(word.to_string())
                } else {
                    return Err("expected a variable, an effectus, a prefix or a quoted action".into());
                }
            }
        })
    }

    /// Canonical form under the rewrite laws, variables treated as opaque.
    pub fn canonical(&self, vocab: &Vocabulary) -> Pattern {
        Pattern {
            atoms: normalize_atoms(self.atoms.clone(), vocab),
        }
    }

    pub fn sequence_vars(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().filter_map(|a| match a {
            PatternAtom::CausaSeq(v) => Some(v.as_str()),
            _ => None,
        })
    }

    pub fn successus_vars(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().filter_map(|a| match a {
            PatternAtom::Effectus {
                successus: SuccPat::Var(v),
                ..
            } => Some(v.as_str()),
            _ => None,
        })
    }

    /// Literal effectus of the pattern.
    pub fn literal_effectus(&self) -> impl Iterator<Item = Effectus> + '_ {
        self.atoms.iter().filter_map(|a| match a.literal() {
            Some(Atom::Effectus(e)) => Some(e),
            _ => None,
        })
    }

    pub fn causae(&self) -> impl Iterator<Item = &CausaSym> {
        self.atoms.iter().filter_map(|a| match a {
            PatternAtom::Effectus { causa, .. } => Some(causa),
            _ => None,
        })
    }
}

impl From<&Term> for Pattern {
    fn from(t: &Term) -> Self {
        Pattern {
            atoms: t.atoms().iter().map(PatternAtom::from).collect(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("I");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

pub(crate) fn is_sequence_var(word: &str) -> bool {
    let mut chars = word.chars();
    chars.next().is_some_and(|c| c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_successus_var(word: &str) -> bool {
    let mut chars = word.chars();
    chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule `{rule}` has no conditions")]
    NoConditions { rule: String },
    #[error("rule `{rule}` has no consequents")]
    NoConsequents { rule: String },
    #[error("rule `{rule}`: variable `{var}` in a consequent is not bound by any condition")]
    UnboundVariable { rule: String, var: String },
    #[error("rule `{rule}`: pattern `{pattern}` reduces to the neutrum and can never match")]
    EmptyPattern { rule: String, pattern: String },
    #[error("rule `{rule}` produced a term of {len} atoms, the limit is {max}")]
    TermLengthExceeded { rule: String, len: usize, max: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub id: String,
    pub class: RuleClass,
    pub conditions: Vec<Pattern>,
    pub consequents: Vec<Pattern>,
    /// Different sequence variables must bind different sequences, and no
    /// node may fill two conditions.
    pub distinct_vars: bool,
}

impl Rule {
    /// Checks the rule and brings its patterns into canonical form.
    pub fn new(
        id: impl Into<String>,
        class: RuleClass,
        conditions: Vec<Pattern>,
        consequents: Vec<Pattern>,
        distinct_vars: bool,
        vocab: &Vocabulary,
    ) -> Result<Self, RuleError> {
        let id = id.into();
        if conditions.is_empty() {
            return Err(RuleError::NoConditions { rule: id });
        }
        if consequents.is_empty() {
            return Err(RuleError::NoConsequents { rule: id });
        }
        let canon = |patterns: Vec<Pattern>| -> Result<Vec<Pattern>, RuleError> {
            patterns
                .into_iter()
                .map(|p| {
                    let c = p.canonical(vocab);
                    if c.is_empty() {
                        Err(RuleError::EmptyPattern {
                            rule: id.clone(),
                            pattern: p.to_string(),
                        })
                    } else {
                        Ok(c)
                    }
                })
                .collect()
        };
        let conditions = canon(conditions)?;
        let consequents = canon(consequents)?;

        let mut bound_seq = BTreeSet::new();
        let mut bound_succ = BTreeSet::new();
        for c in &conditions {
            bound_seq.extend(c.sequence_vars());
            bound_succ.extend(c.successus_vars());
        }
        for c in &consequents {
            let unbound = c
                .sequence_vars()
                .find(|v| !bound_seq.contains(v))
                .or_else(|| c.successus_vars().find(|v| !bound_succ.contains(v)));
            if let Some(var) = unbound {
                return Err(RuleError::UnboundVariable {
                    rule: id.clone(),
                    var: var.to_string(),
                });
            }
        }
        Ok(Rule {
            id,
            class,
            conditions,
            consequents,
            distinct_vars,
        })
    }

    /// Parses condition and consequent patterns from literal syntax.
    pub fn parse(
        id: &str,
        class: RuleClass,
        conditions: &[&str],
        consequents: &[&str],
        distinct_vars: bool,
        vocab: &Vocabulary,
    ) -> Result<Self, Box<dyn std::error::Error + Send + Sync>> {
        let parse_all = |srcs: &[&str]| -> Result<Vec<Pattern>, PatternParseError> {
            srcs.iter().map(|s| Pattern::parse(s, vocab)).collect()
        };
        Ok(Rule::new(
            id,
            class,
            parse_all(conditions)?,
            parse_all(consequents)?,
            distinct_vars,
            vocab,
        )?)
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.class, self.id)?;
        if self.distinct_vars {
            f.write_str(" distinct")?;
        }
        f.write_str(" { when ")?;
        for (i, c) in self.conditions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(" then ")?;
        for (i, c) in self.consequents.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(" }")
    }
}

/// Variable assignment produced by matching.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Binding {
    pub causa_seq: BTreeMap<String, Vec<Effectus>>,
    pub succ: BTreeMap<String, SuccessusSym>,
}

impl Binding {
    pub fn is_empty(&self) -> bool {
        self.causa_seq.is_empty() && self.succ.is_empty()
    }

    /// Union of two bindings, `None` if they disagree on a shared name.
    pub fn merge(&self, other: &Binding) -> Option<Binding> {
        let mut out = self.clone();
        for (k, v) in &other.causa_seq {
            match out.causa_seq.get(k) {
                Some(existing) if existing != v => return None,
                Some(_) => {}
                None => {
                    out.causa_seq.insert(k.clone(), v.clone());
                }
            }
        }
        for (k, v) in &other.succ {
            match out.succ.get(k) {
                Some(existing) if existing != v => return None,
                Some(_) => {}
                None => {
                    out.succ.insert(k.clone(), v.clone());
                }
            }
        }
        Some(out)
    }

    /// True when no two sequence variables share a value.
    pub fn sequences_distinct(&self) -> bool {
        let values: BTreeSet<&Vec<Effectus>> = self.causa_seq.values().collect();
        values.len() == self.causa_seq.len()
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (k, v) in &self.causa_seq {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{k} ↦ ")?;
            for (i, e) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        for (k, v) in &self.succ {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{k} ↦ {v}")?;
        }
        f.write_str("}")
    }
}

/// One firing of a rule: the nodes filling its conditions and what it adds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleApplication {
    pub rule_id: String,
    pub binding: Binding,
    pub matched: Vec<Term>,
    pub produced: Vec<Term>,
}
