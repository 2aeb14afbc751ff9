//! A scenario: vocabulary, rules, prior-knowledge signals and start nodes.

use crate::calculus::{Order2Sym, Term};
use crate::dsl::{parse, SourceFile};
use crate::rules::Rule;
use crate::vocabulary::Vocabulary;

/// Source of the shipped intersection example.
pub const INTERSECTION_PSM: &str = include_str!("../scenarios/intersection.psm");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub vocabulary: Vocabulary,
    pub rules: Vec<Rule>,
    /// Full signal terms, `?- s ! s`.
    pub signals: Vec<Term>,
    pub seeds: Vec<Term>,
}

impl Scenario {
    pub fn empty(name: &str, vocabulary: Vocabulary) -> Self {
        Self {
            name: name.to_string(),
            vocabulary,
            rules: Vec::new(),
            signals: Vec::new(),
            seeds: Vec::new(),
        }
    }

    pub fn rule(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }
}

/// `?- s ! s`.
pub fn signal_term(s: &Term) -> Term {
    let mut atoms = vec![Order2Sym::CaptureInverse.into()];
    atoms.extend(s.atoms().iter().cloned());
    atoms.push(Order2Sym::Fact.into());
    atoms.extend(s.atoms().iter().cloned());
    Term::new(atoms)
}

/// The signalled sequence `s` of a term shaped `?- s ! s` or, normalized,
/// `?- ! s`.
pub fn signal_body(t: &Term) -> Option<Term> {
    let atoms = t.atoms();
    if atoms.first()?.as_order2() != Some(Order2Sym::CaptureInverse) {
        return None;
    }
    let rest = &atoms[1..];
    let bang = rest
        .iter()
        .position(|a| a.as_order2() == Some(Order2Sym::Fact))?;
    let (before, after) = (&rest[..bang], &rest[bang + 1..]);
    let effectus_only = |s: &[crate::calculus::Atom]| s.iter().all(|a| a.as_effectus().is_some());
    if after.is_empty() || !effectus_only(after) {
        return None;
    }
    if before.is_empty() || before == after {
        Some(Term::new(after.to_vec()))
    } else {
        None
    }
}

/// The intersection example shipped with the crate.
pub fn paper_scenario() -> Scenario {
    let (scenario, diagnostics) = parse(&SourceFile::new("intersection.psm", INTERSECTION_PSM));
    scenario.unwrap_or_else(|| panic!("shipped scenario does not parse: {diagnostics:?}"))
}

/// Rules of the shipped intersection example.
pub fn paper_rules() -> Vec<Rule> {
    paper_scenario().rules
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn signal_shapes() {
        let s = t("r:Q r1:P");
        assert_eq!(signal_term(&s).to_string(), "?- r:Q r1:P ! r:Q r1:P");
        assert_eq!(signal_body(&signal_term(&s)), Some(s.clone()));
        assert_eq!(signal_body(&t("?- ! r:Q r1:P")), Some(s));
        assert_eq!(signal_body(&t("?- r:Q ! b1:P")), None);
        assert_eq!(signal_body(&t("? ! r:Q")), None);
    }

    #[test]
    fn paper_scenario_loads() {
        let sc = paper_scenario();
        assert_eq!(sc.seeds.len(), 3);
        assert_eq!(sc.signals.len(), 2);
    }
}
