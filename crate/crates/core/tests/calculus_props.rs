use proptest::prelude::*;

use psm_core::calculus::{e_equal, is_normalized, normalize, Atom, Order2Sym, Term};
use psm_core::rules::{instantiate, match_pattern, Binding, Pattern, PatternAtom, SuccPat};
use psm_core::vocabulary::paper_vocabulary;

fn atom() -> impl Strategy<Value = Atom> {
    let effectus = prop::sample::select(vec![
        ("b1", "P"),
        ("r1", "P"),
        ("g1", "P"),
        ("r", "Q"),
        ("ü", "Q"),
        ("+", "B"),
        ("+", "R"),
        ("<", "P"),
    ])
    .prop_map(|(s, c)| Atom::effectus(s, c));
    prop_oneof![
        6 => effectus,
        3 => prop::sample::select(Order2Sym::ALL.to_vec()).prop_map(Atom::Order2),
        1 => Just(Atom::Neutrum),
    ]
}

fn term(max: usize) -> impl Strategy<Value = Term> {
    prop::collection::vec(atom(), 0..=max).prop_map(Term::new)
}

/// A pattern made from `t` by turning some effectus runs into variables.
fn generalise(t: &Term, mask: &[bool]) -> Pattern {
    let mut atoms: Vec<PatternAtom> = Vec::new();
    let mut var = 0;
    for (i, a) in t.atoms().iter().enumerate() {
        let hide = mask.get(i).copied().unwrap_or(false);
        match a.as_effectus() {
            Some(_) if hide && i % 2 == 0 => {
                if !matches!(atoms.last(), Some(PatternAtom::CausaSeq(_))) {
                    atoms.push(PatternAtom::CausaSeq(format!("V{var}")));
                    var += 1;
                }
            }
            Some(e) if hide => atoms.push(PatternAtom::Effectus {
                successus: SuccPat::Var(format!("s{i}")),
                causa: e.causa.clone(),
            }),
            _ => atoms.push(PatternAtom::from(a)),
        }
    }
    Pattern::new(atoms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn normalize_is_idempotent(t in term(8)) {
        let v = paper_vocabulary();
        let n = normalize(&t, &v);
        prop_assert!(is_normalized(&n, &v));
        prop_assert!(e_equal(&t, &n, &v));
    }

    #[test]
    fn normal_forms_never_grow(t in term(8)) {
        prop_assert!(normalize(&t, &paper_vocabulary()).len() <= t.len());
    }

    #[test]
    fn matches_instantiate_back(t in term(6), mask in prop::collection::vec(any::<bool>(), 6)) {
        let v = paper_vocabulary();
        let n = normalize(&t, &v);
        let p = generalise(&n, &mask);
        let found = match_pattern(&p, &n, &Binding::default());
        // the generalisation of a term always matches the term itself
        prop_assert!(!found.is_empty() || n.is_empty());
        for b in found {
            let back = instantiate(&p, &b).unwrap();
            prop_assert_eq!(normalize(&back, &v), n.clone());
        }
    }

    #[test]
    fn matching_respects_e_equality(t1 in term(6), t2 in term(6), mask in prop::collection::vec(any::<bool>(), 6)) {
        let v = paper_vocabulary();
        let p = generalise(&normalize(&t1, &v), &mask);
        if e_equal(&t1, &t2, &v) {
            prop_assert_eq!(
                match_pattern(&p, &normalize(&t1, &v), &Binding::default()),
                match_pattern(&p, &normalize(&t2, &v), &Binding::default())
            );
        }
        // a term and its normal form are always E-equal
        prop_assert_eq!(
            match_pattern(&p, &normalize(&t1, &v), &Binding::default()),
            match_pattern(&p, &normalize(&normalize(&t1, &v), &v), &Binding::default())
        );
    }
}
