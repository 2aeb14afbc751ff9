use std::collections::BTreeSet;

use super::{Binding, Pattern, PatternAtom, Rule, RuleApplication, RuleError, SuccPat};
use crate::calculus::{normalize, Atom, Effectus, Term};
use crate::vocabulary::Vocabulary;

/// All extensions of `seed` under which `p` instantiates exactly to `t`.
///
/// Sequence variables are tried at every split position, so a pattern with
/// two adjacent sequence variables can yield several bindings.
pub fn match_pattern(p: &Pattern, t: &Term, seed: &Binding) -> Vec<Binding> {
    let mut out = Vec::new();
    match_from(p.atoms(), t.atoms(), seed.clone(), &mut out);
    out.sort();
    out.dedup();
    out
}

fn match_from(pat: &[PatternAtom], atoms: &[Atom], binding: Binding, out: &mut Vec<Binding>) {
    let Some((head, rest)) = pat.split_first() else {
        if atoms.is_empty() {
            out.push(binding);
        }
        return;
    };
    match head {
        PatternAtom::CausaSeq(var) => {
            if let Some(bound) = binding.causa_seq.get(var) {
                let n = bound.len();
                if atoms.len() >= n
                    && atoms[..n]
                        .iter()
                        .zip(bound)
                        .all(|(a, e)| a.as_effectus() == Some(e))
                {
                    match_from(rest, &atoms[n..], binding, out);
                }
                return;
            }
            let run = atoms.iter().take_while(|a| a.as_effectus().is_some()).count();
            // every remaining pattern atom consumes at least one term atom
            let max_take = run.min(atoms.len().saturating_sub(rest.len()));
            for take in 1..=max_take {
                let seq: Vec<Effectus> = atoms[..take]
                    .iter()
                    .filter_map(|a| a.as_effectus().cloned())
                    .collect();
                let mut b = binding.clone();
                b.causa_seq.insert(var.clone(), seq);
                match_from(rest, &atoms[take..], b, out);
            }
        }
        PatternAtom::Effectus { successus, causa } => {
            let Some((Atom::Effectus(e), tail)) = atoms.split_first() else {
                return;
            };
            if &e.causa != causa {
                return;
            }
            match successus {
                SuccPat::Lit(s) => {
                    if &e.successus == s {
                        match_from(rest, tail, binding, out);
                    }
                }
                SuccPat::Var(v) => match binding.succ.get(v) {
                    Some(bound) if bound != &e.successus => {}
                    Some(_) => match_from(rest, tail, binding, out),
                    None => {
                        let mut b = binding;
                        b.succ.insert(v.clone(), e.successus.clone());
                        match_from(rest, tail, b, out);
                    }
                },
            }
        }
        literal => {
            let Some((a, tail)) = atoms.split_first() else {
                return;
            };
            if literal.literal().as_ref() == Some(a) {
                match_from(rest, tail, binding, out);
            }
        }
    }
}

/// Substitutes `binding` into `p`. Fails on a variable the binding lacks.
pub fn instantiate(p: &Pattern, binding: &Binding) -> Result<Term, String> {
    let mut atoms = Vec::with_capacity(p.atoms().len());
    for a in p.atoms() {
        match a {
            PatternAtom::CausaSeq(v) => {
                let seq = binding
                    .causa_seq
                    .get(v)
                    .ok_or_else(|| format!("unbound variable `{v}`"))?;
                atoms.extend(seq.iter().cloned().map(Atom::Effectus));
            }
            PatternAtom::Effectus {
                successus: SuccPat::Var(v),
                causa,
            } => {
                let s = binding
                    .succ
                    .get(v)
                    .ok_or_else(|| format!("unbound variable `{v}`"))?;
                atoms.push(Atom::Effectus(Effectus {
                    successus: s.clone(),
                    causa: causa.clone(),
                }));
            }
            lit => atoms.push(lit.literal().expect("variable-free atom")),
        }
    }
    Ok(Term::new(atoms))
}

/// Every way of filling the conditions of `rule` from `nodes`.
///
/// Applications that use the same set of nodes and produce the same terms
/// are reported once, so a symmetric rule firing on a pair counts as a
/// single application.
pub fn applicable(
    rule: &Rule,
    nodes: &[Term],
    vocab: &Vocabulary,
    max_len: usize,
) -> Result<Vec<RuleApplication>, RuleError> {
    let candidates: Vec<Vec<(usize, Binding)>> = rule
        .conditions
        .iter()
        .map(|c| {
            nodes
                .iter()
                .enumerate()
                .flat_map(|(i, t)| {
                    match_pattern(c, t, &Binding::default())
                        .into_iter()
                        .map(move |b| (i, b))
                })
                .collect()
        })
        .collect();

    let mut joined = Vec::new();
    join(
        rule,
        &candidates,
        0,
        &mut Vec::new(),
        Binding::default(),
        &mut joined,
    );

    let mut apps = Vec::new();
    for (chosen, binding) in joined {
        let mut produced = Vec::new();
        for c in &rule.consequents {
            let raw = instantiate(c, &binding).map_err(|_| RuleError::UnboundVariable {
                rule: rule.id.clone(),
                var: c.to_string(),
            })?;
            let t = normalize(&raw, vocab);
            if t.len() > max_len {
                return Err(RuleError::TermLengthExceeded {
                    rule: rule.id.clone(),
                    len: t.len(),
                    max: max_len,
                });
            }
            if !t.is_neutrum() && !produced.contains(&t) {
                produced.push(t);
            }
        }
        if produced.is_empty() {
            continue;
        }
        let matched: Vec<Term> = chosen.iter().map(|&i| nodes[i].clone()).collect();
        apps.push((chosen, RuleApplication {
            rule_id: rule.id.clone(),
            binding,
            matched,
            produced,
        }));
    }
    apps.sort_by(|a, b| {
        (&a.1.matched, &a.1.binding).cmp(&(&b.1.matched, &b.1.binding))
    });

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (chosen, app) in apps {
        let node_set: BTreeSet<usize> = chosen.into_iter().collect();
        if seen.insert((node_set, app.produced.clone())) {
            out.push(app);
        }
    }
    Ok(out)
}

fn join(
    rule: &Rule,
    candidates: &[Vec<(usize, Binding)>],
    depth: usize,
    chosen: &mut Vec<usize>,
    binding: Binding,
    out: &mut Vec<(Vec<usize>, Binding)>,
) {
    if depth == candidates.len() {
        if !rule.distinct_vars || binding.sequences_distinct() {
            out.push((chosen.clone(), binding));
        }
        return;
    }
    for (node, b) in &candidates[depth] {
        if rule.distinct_vars && chosen.contains(node) {
            continue;
        }
        if let Some(merged) = binding.merge(b) {
            chosen.push(*node);
            join(rule, candidates, depth + 1, chosen, merged, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::RuleClass;
    use crate::vocabulary::paper_vocabulary;

    fn p(s: &str) -> Pattern {
        Pattern::parse(s, &paper_vocabulary()).unwrap()
    }

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn sequence_variable_binds_prefix_effectus() {
        let bs = match_pattern(&p("X b2:P"), &t("+:B b2:P"), &Binding::default());
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].causa_seq["X"], vec![Effectus::new("+", "B")]);
    }

    #[test]
    fn successus_variable_binds_one_symbol() {
        let bs = match_pattern(&p("X x:P"), &t("r:Q r1:P"), &Binding::default());
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].causa_seq["X"], vec![Effectus::new("r", "Q")]);
        assert_eq!(bs[0].succ["x"].as_str(), "r1");
    }

    #[test]
    fn prefix_mismatch_fails() {
        assert!(match_pattern(&p("! r:Q g1:P"), &t("? r:Q g1:P"), &Binding::default()).is_empty());
    }

    #[test]
    fn adjacent_variables_enumerate_splits() {
        let bs = match_pattern(&p("X Y"), &t("+:B b1:P r:Q"), &Binding::default());
        assert_eq!(bs.len(), 2);
    }

    #[test]
    fn sequence_variable_never_empty() {
        assert!(match_pattern(&p("X b1:P"), &t("b1:P"), &Binding::default()).is_empty());
    }

    #[test]
    fn seed_binding_constrains() {
        let mut seed = Binding::default();
        seed.succ.insert("x".into(), "g1".into());
        assert!(match_pattern(&p("X x:P"), &t("r:Q r1:P"), &seed).is_empty());
    }

    #[test]
    fn symmetric_rule_counts_once() {
        let v = paper_vocabulary();
        let rule = Rule::parse(
            "collision",
            RuleClass::Behavioural,
            &["X x:P", "Y x:P"],
            &["\"00\""],
            true,
            &v,
        )
        .unwrap();
        let nodes = vec![t("+:B r1:P"), t("r:Q r1:P"), t("r:Q g1:P")];
        let apps = applicable(&rule, &nodes, &v, 64).unwrap();
        assert_eq!(apps.len(), 1);
        assert_eq!(apps[0].matched, vec![t("+:B r1:P"), t("r:Q r1:P")]);
    }

    #[test]
    fn signal_rule_turns_capture_into_fact() {
        let v = paper_vocabulary();
        let rule = crate::rules::signal_rule();
        let nodes = vec![t("? r:Q r1:P"), normalize(&t("?- r:Q r1:P ! r:Q r1:P"), &v)];
        let apps = applicable(&rule, &nodes, &v, 64).unwrap();
        assert_eq!(apps.len(), 1);
        assert_eq!(apps[0].produced, vec![t("! r:Q r1:P")]);
    }

    #[test]
    fn length_cap_is_enforced() {
        let v = paper_vocabulary();
        let rule = Rule::parse("grow", RuleClass::Structural, &["X"], &["! X"], false, &v).unwrap();
        let err = applicable(&rule, &[t("b1:P r:Q")], &v, 2).unwrap_err();
        assert!(matches!(err, RuleError::TermLengthExceeded { len: 3, max: 2, .. }));
    }
}
