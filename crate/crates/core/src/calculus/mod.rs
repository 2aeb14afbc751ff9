//! The effectus-sequence calculus.
//!
//! A [`Term`] is a flat sequence of [`Atom`]s: second-order successus
//! symbols (`!`, `?` and their inverses), first-order effectus pairs such as
//! `b1:P`, the neutrum `I`, and opaque action symbols such as `"0B"`.
//! Captures, facts and signals are all just term shapes.
//!
//! Equality of terms under the rewrite laws of the calculus ("E-equality")
//! is decided by reducing both sides to a canonical form, see [`normalize`].

mod literal;
mod normalize;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::vocabulary::Vocabulary;

pub use literal::TermParseError;
pub(crate) use literal::{classify_token, Token};
pub(crate) use normalize::{normalize_atoms, Constancy, RewriteAtom};

/// Maximum number of atoms a term may carry unless configured otherwise.
pub const DEFAULT_MAX_TERM_LEN: usize = 64;

/// Causa written after a constancy successus once its causae were erased.
pub const ERASED_CAUSA: &str = "_";

macro_rules! symbol {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(name: impl AsRef<str>) -> Self {
                Self(Arc::from(name.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self::new(s)
            }
        }
    };
}

symbol!(
    /// An indicator symbol, e.g. `P` (position).
    CausaSym
);
symbol!(
    /// A value an indicator can realise, e.g. `b1` or `+`.
    SuccessusSym
);
symbol!(
    /// An opaque behaviour label produced by behavioural rules, e.g. `0B`.
    ActionSym
);

impl CausaSym {
    /// The placeholder causa left behind by constancy erasure.
    pub fn erased() -> Self {
        Self::new(ERASED_CAUSA)
    }

    pub fn is_erased(&self) -> bool {
        &*self.0 == ERASED_CAUSA
    }
}

/// A measured property: successus `b1` realised by causa `P`, written `b1:P`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Effectus {
    pub successus: SuccessusSym,
    pub causa: CausaSym,
}

impl Effectus {
    pub fn new(successus: impl Into<SuccessusSym>, causa: impl Into<CausaSym>) -> Self {
        Self {
            successus: successus.into(),
            causa: causa.into(),
        }
    }
}

impl fmt::Display for Effectus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.successus, self.causa)
    }
}

impl fmt::Debug for Effectus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Second-order successus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Order2Sym {
    /// `!`
    Fact,
    /// `?`
    Capture,
    /// `!-`
    FactInverse,
    /// `?-`
    CaptureInverse,
}

impl Order2Sym {
    pub const ALL: [Order2Sym; 4] = [
        Order2Sym::Fact,
        Order2Sym::Capture,
        Order2Sym::FactInverse,
        Order2Sym::CaptureInverse,
    ];

    pub fn inverse(self) -> Self {
        match self {
            Order2Sym::Fact => Order2Sym::FactInverse,
            Order2Sym::Capture => Order2Sym::CaptureInverse,
            Order2Sym::FactInverse => Order2Sym::Fact,
            Order2Sym::CaptureInverse => Order2Sym::Capture,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Order2Sym::Fact => "!",
            Order2Sym::Capture => "?",
            Order2Sym::FactInverse => "!-",
            Order2Sym::CaptureInverse => "?-",
        }
    }

    /// Accepts the ASCII tokens and the superscript spellings `!⁻¹`, `?⁻¹`.
    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "!" => Some(Order2Sym::Fact),
            "?" => Some(Order2Sym::Capture),
            "!-" | "!⁻¹" => Some(Order2Sym::FactInverse),
            "?-" | "?⁻¹" => Some(Order2Sym::CaptureInverse),
            _ => None,
        }
    }
}

impl fmt::Display for Order2Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Order2(Order2Sym),
    /// Explicit neutrum inside a longer sequence; erased by normalization.
    Neutrum,
    Effectus(Effectus),
    Action(ActionSym),
}

impl Atom {
    pub fn effectus(successus: &str, causa: &str) -> Self {
        Atom::Effectus(Effectus::new(successus, causa))
    }

    pub fn action(name: &str) -> Self {
        Atom::Action(ActionSym::new(name))
    }

    pub fn as_effectus(&self) -> Option<&Effectus> {
        match self {
            Atom::Effectus(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_order2(&self) -> Option<Order2Sym> {
        match self {
            Atom::Order2(o) => Some(*o),
            _ => None,
        }
    }
}

impl From<Order2Sym> for Atom {
    fn from(o: Order2Sym) -> Self {
        Atom::Order2(o)
    }
}

impl From<Effectus> for Atom {
    fn from(e: Effectus) -> Self {
        Atom::Effectus(e)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Order2(o) => fmt::Display::fmt(o, f),
            Atom::Neutrum => f.write_str("I"),
            Atom::Effectus(e) => fmt::Display::fmt(e, f),
            Atom::Action(a) => write!(f, "\"{}\"", a),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sequence of atoms. The empty sequence is the neutrum `I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Term {
    atoms: Vec<Atom>,
}

impl Term {
    pub fn new(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    pub fn neutrum() -> Self {
        Self::default()
    }

    /// A single opaque action symbol.
    pub fn action(name: &str) -> Self {
        Self::new(vec![Atom::action(name)])
    }

    /// Builds an order-1 sequence through repeated [`compose`].
    pub fn from_effectus<I>(effectus: I) -> Self
    where
        I: IntoIterator<Item = Effectus>,
    {
        effectus
            .into_iter()
            .fold(Term::neutrum(), |t, e| compose(&t, Atom::Effectus(e)))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn into_atoms(self) -> Vec<Atom> {
        self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_neutrum(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn first(&self) -> Option<&Atom> {
        self.atoms.first()
    }

    pub fn last(&self) -> Option<&Atom> {
        self.atoms.last()
    }

    /// True when the term carries no second-order symbol and no neutrum.
    pub fn is_order1(&self) -> bool {
        self.atoms
            .iter()
            .all(|a| matches!(a, Atom::Effectus(_) | Atom::Action(_)))
    }

    /// True for a non-empty sequence made of effectus only.
    pub fn is_effectus_sequence(&self) -> bool {
        !self.atoms.is_empty() && self.atoms.iter().all(|a| matches!(a, Atom::Effectus(_)))
    }

    pub fn head_order2(&self) -> Option<Order2Sym> {
        self.first().and_then(Atom::as_order2)
    }

    /// The action label when the term is exactly one action atom.
    pub fn as_action(&self) -> Option<&ActionSym> {
        match self.atoms.as_slice() {
            [Atom::Action(a)] => Some(a),
            _ => None,
        }
    }

    pub fn effectus(&self) -> impl Iterator<Item = &Effectus> {
        self.atoms.iter().filter_map(Atom::as_effectus)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("I");
        }
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            fmt::Display::fmt(atom, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("`{0}` already carries a second-order successus")]
    NotOrder1(Term),
    #[error("term has {len} atoms, the limit is {max}")]
    TermTooLong { len: usize, max: usize },
}

/// Appends `atom` unless it repeats the last atom of `seq`.
pub fn compose(seq: &Term, atom: Atom) -> Term {
    let mut atoms = seq.atoms.clone();
    if atoms.last() != Some(&atom) {
        atoms.push(atom);
    }
    Term { atoms }
}

/// Left fold of [`compose`] over the atoms of `suffix`.
pub fn concat(prefix: &Term, suffix: &Term) -> Term {
    let mut atoms = prefix.atoms.clone();
    for atom in &suffix.atoms {
        if atoms.last() != Some(atom) {
            atoms.push(atom.clone());
        }
    }
    Term { atoms }
}

/// Prefixes an order-1 sequence with a second-order successus: `? s`, `! s`.
pub fn apply_successus(omega: Order2Sym, s: &Term) -> Result<Term, CalculusError> {
    if !s.is_order1() {
        return Err(CalculusError::NotOrder1(s.clone()));
    }
    let mut atoms = Vec::with_capacity(s.len() + 1);
    atoms.push(Atom::Order2(omega));
    atoms.extend(s.atoms.iter().cloned());
    Ok(Term { atoms })
}

/// Reduces `t` to its canonical form under the rewrite laws.
///
/// Rules are tried in a fixed priority; the first rule with a redex is
/// applied at its leftmost position and the search restarts:
///
/// 1. a factor repeated back to back collapses, `u u -> u`;
/// 2. adjacent blocks with the same second-order prefix merge,
///    `w s1 w s2 -> w s1 s2`;
/// 3. adjacent blocks over the same sequence merge, `w1 s w2 s -> w1 w2 s`;
/// 4. an order-2 symbol next to its inverse becomes the neutrum;
/// 5. the neutrum and every effectus outside the vocabulary are dropped;
/// 6. a constancy successus loses its causa and the effectus that follow it.
///
/// Here a block is a maximal run of second-order symbols followed by a
/// maximal run of first-order atoms.
pub fn normalize(t: &Term, vocab: &Vocabulary) -> Term {
    Term {
        atoms: normalize_atoms(t.atoms.clone(), vocab),
    }
}

pub fn is_normalized(t: &Term, vocab: &Vocabulary) -> bool {
    normalize(t, vocab) == *t
}

/// E-equality: both sides share a canonical form.
pub fn e_equal(t1: &Term, t2: &Term, vocab: &Vocabulary) -> bool {
    t1 == t2 || normalize(t1, vocab) == normalize(t2, vocab)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn compose_extends_with_new_atom() {
        assert_eq!(compose(&t("b1:P"), Atom::effectus("r", "Q")), t("b1:P r:Q"));
    }

    #[test]
    fn compose_skips_repeated_last_atom() {
        assert_eq!(
            compose(&t("b1:P r:Q"), Atom::effectus("r", "Q")),
            t("b1:P r:Q")
        );
    }

    #[test]
    fn compose_on_neutrum() {
        assert_eq!(compose(&Term::neutrum(), Atom::effectus("b1", "P")), t("b1:P"));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&t("a:A"), &t("b1:P")), t("a:A b1:P"));
        assert_eq!(concat(&t("b1:P"), &t("b1:P r:Q")), t("b1:P r:Q"));
        assert_eq!(concat(&Term::neutrum(), &t("r:Q r1:P")), t("r:Q r1:P"));
    }

    #[test]
    fn apply_successus_prefixes() {
        let s = t("r:Q r1:P");
        assert_eq!(
            apply_successus(Order2Sym::Capture, &s).unwrap(),
            t("? r:Q r1:P")
        );
        assert_eq!(
            apply_successus(Order2Sym::Fact, &s).unwrap(),
            t("! r:Q r1:P")
        );
        assert_eq!(
            apply_successus(Order2Sym::Capture, &Term::neutrum()).unwrap(),
            t("?")
        );
    }

    #[test]
    fn apply_successus_rejects_prefixed_term() {
        let err = apply_successus(Order2Sym::Fact, &t("? r:Q")).unwrap_err();
        assert!(matches!(err, CalculusError::NotOrder1(_)));
    }

    #[test]
    fn inverse_is_involutive() {
        for o in Order2Sym::ALL {
            assert_eq!(o.inverse().inverse(), o);
            assert_ne!(o.inverse(), o);
        }
    }

    #[test]
    fn from_effectus_dedups_adjacent() {
        let term = Term::from_effectus([
            Effectus::new("b1", "P"),
            Effectus::new("b1", "P"),
            Effectus::new("r", "Q"),
        ]);
        assert_eq!(term, t("b1:P r:Q"));
    }

    #[test]
    fn display_neutrum() {
        assert_eq!(Term::neutrum().to_string(), "I");
        assert_eq!(Term::action("0B").to_string(), "\"0B\"");
    }
}
