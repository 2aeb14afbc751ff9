//! Indicators, their successus domains, and the validity set they induce.
//!
//! An effectus `φ:c` is real iff `φ` lies in the domain declared for `c`;
//! every other pair only realises the neutrum and is erased by normalization.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::calculus::{CausaSym, Effectus, SuccessusSym, ERASED_CAUSA};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorDecl {
    pub causa: CausaSym,
    pub label: String,
    pub domain: Vec<SuccessusSym>,
    /// Domain members flagged as constancy successus.
    pub constancy: Vec<SuccessusSym>,
}

impl IndicatorDecl {
    pub fn new<I, S>(causa: &str, label: &str, domain: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            causa: CausaSym::new(causa),
            label: label.to_string(),
            domain: domain.into_iter().map(SuccessusSym::new).collect(),
            constancy: Vec::new(),
        }
    }

    pub fn with_constancy<I, S>(mut self, constancy: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.constancy = constancy.into_iter().map(SuccessusSym::new).collect();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    indicators: Vec<IndicatorDecl>,
    // first declaration wins; duplicates are reported by `validate_vocabulary`
    domains: HashMap<CausaSym, usize>,
    constancy: BTreeSet<SuccessusSym>,
}

impl Vocabulary {
    pub fn new(indicators: Vec<IndicatorDecl>) -> Self {
        let mut domains = HashMap::new();
        let mut constancy = BTreeSet::new();
        for (i, decl) in indicators.iter().enumerate() {
            domains.entry(decl.causa.clone()).or_insert(i);
            constancy.extend(decl.constancy.iter().cloned());
        }
        Self {
            indicators,
            domains,
            constancy,
        }
    }

    pub fn indicators(&self) -> &[IndicatorDecl] {
        &self.indicators
    }

    pub fn indicator(&self, causa: &CausaSym) -> Option<&IndicatorDecl> {
        self.domains.get(causa).map(|&i| &self.indicators[i])
    }

    pub fn domain(&self, causa: &CausaSym) -> Option<&[SuccessusSym]> {
        self.indicator(causa).map(|d| d.domain.as_slice())
    }

    pub fn declares_causa(&self, causa: &CausaSym) -> bool {
        self.domains.contains_key(causa)
    }

    pub fn declares_successus(&self, succ: &SuccessusSym) -> bool {
        self.indicators.iter().any(|d| d.domain.contains(succ))
    }

    pub fn is_constancy(&self, succ: &SuccessusSym) -> bool {
        self.constancy.contains(succ)
    }

    pub fn effectus_valid(&self, e: &Effectus) -> bool {
        self.domain(&e.causa)
            .is_some_and(|domain| domain.contains(&e.successus))
    }

    /// Union of all declared domains.
    pub fn successus_universe(&self) -> BTreeSet<SuccessusSym> {
        self.indicators
            .iter()
            .flat_map(|d| d.domain.iter().cloned())
            .collect()
    }

    /// The validity set: every effectus accepted by [`Self::effectus_valid`].
    pub fn validity_set(&self) -> Vec<Effectus> {
        let mut seen = BTreeSet::new();
        for decl in &self.indicators {
            if self.domains.get(&decl.causa).map(|&i| &self.indicators[i]) != Some(decl) {
                continue;
            }
            for succ in &decl.domain {
                seen.insert(Effectus {
                    successus: succ.clone(),
                    causa: decl.causa.clone(),
                });
            }
        }
        seen.into_iter().collect()
    }
}

pub fn effectus_valid(v: &Vocabulary, e: &Effectus) -> bool {
    v.effectus_valid(e)
}

/// A structural problem in a vocabulary. `indicator` is the position of the
/// offending declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VocabIssue {
    DuplicateCausa { indicator: usize, causa: CausaSym },
    EmptyDomain { indicator: usize, causa: CausaSym },
    DuplicateSuccessus { indicator: usize, causa: CausaSym, successus: SuccessusSym },
    UndeclaredConstancy { indicator: usize, causa: CausaSym, successus: SuccessusSym },
    ReservedCausa { indicator: usize },
}

impl VocabIssue {
    pub fn indicator(&self) -> usize {
        match self {
            VocabIssue::DuplicateCausa { indicator, .. }
            | VocabIssue::EmptyDomain { indicator, .. }
            | VocabIssue::DuplicateSuccessus { indicator, .. }
            | VocabIssue::UndeclaredConstancy { indicator, .. }
            | VocabIssue::ReservedCausa { indicator } => *indicator,
        }
    }
}

impl fmt::Display for VocabIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VocabIssue::DuplicateCausa { causa, .. } => {
                write!(f, "indicator `{causa}` is declared more than once")
            }
            VocabIssue::EmptyDomain { causa, .. } => {
                write!(f, "indicator `{causa}` has an empty successus domain")
            }
            VocabIssue::DuplicateSuccessus { causa, successus, .. } => {
                write!(f, "successus `{successus}` appears twice in the domain of `{causa}`")
            }
            VocabIssue::UndeclaredConstancy { causa, successus, .. } => write!(
                f,
                "constancy flag on `{successus}`, which is not in the domain of `{causa}`"
            ),
            VocabIssue::ReservedCausa { .. } => {
                write!(f, "`{ERASED_CAUSA}` is reserved and cannot name an indicator")
            }
        }
    }
}

pub fn validate_vocabulary(v: &Vocabulary) -> Vec<VocabIssue> {
    let mut issues = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, decl) in v.indicators.iter().enumerate() {
        if decl.causa.is_erased() {
            issues.push(VocabIssue::ReservedCausa { indicator: i });
        }
        if !seen.insert(&decl.causa) {
            issues.push(VocabIssue::DuplicateCausa {
                indicator: i,
                causa: decl.causa.clone(),
            });
        }
        if decl.domain.is_empty() {
            issues.push(VocabIssue::EmptyDomain {
                indicator: i,
                causa: decl.causa.clone(),
            });
        }
        let mut in_domain = BTreeSet::new();
        for succ in &decl.domain {
            if !in_domain.insert(succ) {
                issues.push(VocabIssue::DuplicateSuccessus {
                    indicator: i,
                    causa: decl.causa.clone(),
                    successus: succ.clone(),
                });
            }
        }
        for succ in &decl.constancy {
            if !decl.domain.contains(succ) {
                issues.push(VocabIssue::UndeclaredConstancy {
                    indicator: i,
                    causa: decl.causa.clone(),
                    successus: succ.clone(),
                });
            }
        }
    }
    issues
}

/// The five indicators of the intersection example. Zone `g2` is part of the
/// position domain because the movement rules and the cyclist seed use it.
pub fn paper_vocabulary() -> Vocabulary {
    Vocabulary::new(vec![
        IndicatorDecl::new("P", "Position", ["b1", "b2", "g1", "g2", "r1"]),
        IndicatorDecl::new("A", "Extension", ["r", "f", "a", "l"]),
        IndicatorDecl::new("Q", "Quality", ["ü", "r", "f", "a", "l"]),
        IndicatorDecl::new("R", "Direction", ["<", ">", "+", "-"]),
        IndicatorDecl::new("B", "Movement", ["0", "<", ">", "+", "-"]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_vocabulary_shape() {
        let v = paper_vocabulary();
        assert_eq!(v.indicators().len(), 5);
        assert!(v.domain(&"B".into()).unwrap().contains(&"0".into()));
        assert!(v.domain(&"P".into()).unwrap().contains(&"g2".into()));
        assert!(validate_vocabulary(&v).is_empty());
    }

    #[test]
    fn validity_examples() {
        let v = paper_vocabulary();
        assert!(v.effectus_valid(&Effectus::new("b1", "P")));
        assert!(v.effectus_valid(&Effectus::new("r", "A")));
        assert!(!v.effectus_valid(&Effectus::new("<", "P")));
        assert!(!v.effectus_valid(&Effectus::new("ü", "A")));
        assert!(!v.effectus_valid(&Effectus::new("b1", "Z")));
    }

    #[test]
    fn validity_set_size_is_sum_of_domains() {
        let v = paper_vocabulary();
        let w = v.validity_set();
        let total: usize = v.indicators().iter().map(|d| d.domain.len()).sum();
        assert_eq!(w.len(), total);
        assert!(w.iter().all(|e| v.effectus_valid(e)));
    }

    #[test]
    fn successus_shared_across_indicators() {
        let v = paper_vocabulary();
        let universe = v.successus_universe();
        // r, f, a, l shared by A and Q; <, >, +, - shared by R and B
        assert_eq!(universe.len(), 15);
    }

    #[test]
    fn duplicate_causa_reported() {
        let mut decls = paper_vocabulary().indicators().to_vec();
        decls.push(IndicatorDecl::new("P", "again", ["x1"]));
        let issues = validate_vocabulary(&Vocabulary::new(decls));
        assert_eq!(
            issues,
            vec![VocabIssue::DuplicateCausa {
                indicator: 5,
                causa: "P".into()
            }]
        );
    }

    #[test]
    fn empty_domain_reported() {
        let v = Vocabulary::new(vec![IndicatorDecl::new("P", "Position", Vec::<&str>::new())]);
        assert!(matches!(
            validate_vocabulary(&v).as_slice(),
            [VocabIssue::EmptyDomain { indicator: 0, .. }]
        ));
    }

    #[test]
    fn constancy_must_be_in_domain() {
        let v = Vocabulary::new(vec![
            IndicatorDecl::new("K", "constant", ["k"]).with_constancy(["z"]),
        ]);
        assert!(matches!(
            validate_vocabulary(&v).as_slice(),
            [VocabIssue::UndeclaredConstancy { .. }]
        ));
    }

    #[test]
    fn duplicate_successus_reported() {
        let v = Vocabulary::new(vec![IndicatorDecl::new("P", "Position", ["b1", "b1"])]);
        assert_eq!(validate_vocabulary(&v).len(), 1);
    }
}
