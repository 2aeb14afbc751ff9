use super::{Atom, Order2Sym};
use crate::vocabulary::Vocabulary;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Constancy {
    None,
    /// Constancy successus still attached to a real causa.
    Open,
    /// Constancy successus whose causa is already the erased placeholder.
    Erased,
}

/// What the rewrite engine needs to know about an atom. Implemented for term
/// atoms and for rule pattern atoms, so rule patterns can be brought into the
/// same canonical shape as the node terms they are matched against.
pub(crate) trait RewriteAtom: Clone + PartialEq {
    fn order2(&self) -> Option<Order2Sym>;
    fn is_neutrum(&self) -> bool;
    fn neutrum() -> Self;
    /// Effectus outside the vocabulary's validity set.
    fn is_void(&self, vocab: &Vocabulary) -> bool;
    fn constancy(&self, vocab: &Vocabulary) -> Constancy;
    fn erase_causa(&self) -> Self;

    fn is_prefix(&self) -> bool {
        self.order2().is_some() || self.is_neutrum()
    }
}

impl RewriteAtom for Atom {
    fn order2(&self) -> Option<Order2Sym> {
        self.as_order2()
    }

    fn is_neutrum(&self) -> bool {
        matches!(self, Atom::Neutrum)
    }

    fn neutrum() -> Self {
        Atom::Neutrum
    }

    fn is_void(&self, vocab: &Vocabulary) -> bool {
        match self {
            Atom::Effectus(e) if e.causa.is_erased() => !vocab.is_constancy(&e.successus),
            Atom::Effectus(e) => !vocab.effectus_valid(e),
            _ => false,
        }
    }

    fn constancy(&self, vocab: &Vocabulary) -> Constancy {
        match self {
            Atom::Effectus(e) if vocab.is_constancy(&e.successus) => {
                if e.causa.is_erased() {
                    Constancy::Erased
                } else {
                    Constancy::Open
                }
            }
            _ => Constancy::None,
        }
    }

    fn erase_causa(&self) -> Self {
        match self {
            Atom::Effectus(e) => Atom::Effectus(super::Effectus {
                successus: e.successus.clone(),
                causa: super::CausaSym::erased(),
            }),
            other => other.clone(),
        }
    }
}

/// A maximal run of prefix atoms followed by a maximal run of other atoms.
#[derive(Debug, Clone, Copy)]
struct Block {
    start: usize,
    split: usize,
    end: usize,
}

fn blocks<A: RewriteAtom>(atoms: &[A]) -> Vec<Block> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < atoms.len() {
        let start = i;
        while i < atoms.len() && atoms[i].is_prefix() {
            i += 1;
        }
        let split = i;
        while i < atoms.len() && !atoms[i].is_prefix() {
            i += 1;
        }
        out.push(Block { start, split, end: i });
    }
    out
}

// Leftmost start first, then the shortest repeated factor.
fn collapse_square<A: PartialEq>(atoms: &mut Vec<A>) -> bool {
    let n = atoms.len();
    for start in 0..n {
        for len in 1..=(n - start) / 2 {
            if atoms[start..start + len] == atoms[start + len..start + 2 * len] {
                atoms.drain(start + len..start + 2 * len);
                return true;
            }
        }
    }
    false
}

fn merge_shared_successus<A: RewriteAtom>(atoms: &mut Vec<A>) -> bool {
    for pair in blocks(atoms).windows(2) {
        let (b, c) = (pair[0], pair[1]);
        if b.split > b.start && atoms[b.start..b.split] == atoms[c.start..c.split] {
            atoms.drain(c.start..c.split);
            return true;
        }
    }
    false
}

fn merge_shared_causa<A: RewriteAtom>(atoms: &mut Vec<A>) -> bool {
    for pair in blocks(atoms).windows(2) {
        let (b, c) = (pair[0], pair[1]);
        if b.end > b.split && atoms[b.split..b.end] == atoms[c.split..c.end] {
            atoms.drain(b.split..b.end);
            return true;
        }
    }
    false
}

fn eliminate_inverse<A: RewriteAtom>(atoms: &mut Vec<A>) -> bool {
    for i in 0..atoms.len().saturating_sub(1) {
        if let (Some(a), Some(b)) = (atoms[i].order2(), atoms[i + 1].order2()) {
            if a.inverse() == b {
                atoms.splice(i..i + 2, [A::neutrum()]);
                return true;
            }
        }
    }
    false
}

fn erase_neutrum<A: RewriteAtom>(atoms: &mut Vec<A>, vocab: &Vocabulary) -> bool {
    match atoms
        .iter()
        .position(|a| a.is_neutrum() || a.is_void(vocab))
    {
        Some(i) => {
            atoms.remove(i);
            true
        }
        None => false,
    }
}

fn erase_constancy<A: RewriteAtom>(atoms: &mut Vec<A>, vocab: &Vocabulary) -> bool {
    for i in 0..atoms.len() {
        let trailing = atoms[i + 1..].iter().take_while(|a| !a.is_prefix()).count();
        let redex = match atoms[i].constancy(vocab) {
            Constancy::None => false,
            Constancy::Open => true,
            Constancy::Erased => trailing > 0,
        };
        if redex {
            atoms[i] = atoms[i].erase_causa();
            atoms.drain(i + 1..i + 1 + trailing);
            return true;
        }
    }
    false
}

pub(crate) fn normalize_atoms<A: RewriteAtom>(mut atoms: Vec<A>, vocab: &Vocabulary) -> Vec<A> {
    loop {
        let fired = collapse_square(&mut atoms)
            || merge_shared_successus(&mut atoms)
            || merge_shared_causa(&mut atoms)
            || eliminate_inverse(&mut atoms)
            || erase_neutrum(&mut atoms, vocab)
            || erase_constancy(&mut atoms, vocab);
        if !fired {
            return atoms;
        }
    }
}
