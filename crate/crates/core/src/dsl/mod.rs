//! The `.psm` scenario language.
//!
//! ```text
//! vocab {
//!     indicator P "Position" { b1 b2 r1 }
//! }
//! rules {
//!     structural move { when +:B b2:P then +:B b1:P }
//! }
//! signals {
//!     r:Q r1:P
//! }
//! scenario "name" {
//!     seed +:B b2:P
//! }
//! ```

mod lexer;
mod printer;
mod syntax;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::calculus::{
    classify_token, Atom, CausaSym, Effectus, SuccessusSym, Term, Token,
};
use crate::rules::{Pattern, PatternAtom, Rule, RuleClass, SuccPat, SIGNAL_RULE_ID};
use crate::scenario::{signal_term, Scenario};
use crate::vocabulary::{validate_vocabulary, IndicatorDecl, Vocabulary};

use syntax::{FileAst, Word};

pub use printer::print;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub path: String,
    pub content: String,
}

impl SourceFile {
    pub fn new(path: impl Into<String>, content: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            content: content.into(),
        }
    }

    pub fn read(path: impl AsRef<std::path::Path>) -> std::io::Result<Self> {
        let path = path.as_ref();
        Ok(Self::new(
            path.display().to_string(),
            std::fs::read_to_string(path)?,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

/// A message tied to a 1-based line and column (in characters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn error(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            line,
            column,
            message: message.into(),
        }
    }

    pub fn warning(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            line,
            column,
            message: message.into(),
        }
    }

    fn at(word: &Word, severity: Severity, message: impl Into<String>) -> Self {
        Self {
            severity,
            line: word.line,
            column: word.column,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `path:line:column: severity: message`
    pub fn render(&self, src: &SourceFile) -> String {
        format!("{}:{self}", src.path)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}

/// Parses and validates a scenario file. Returns no scenario if any error
/// diagnostic was produced.
pub fn parse(src: &SourceFile) -> (Option<Scenario>, Vec<Diagnostic>) {
    let ast = match lexer::lex(&src.content).and_then(syntax::parse_file) {
        Ok(ast) => ast,
        Err(d) => return (None, vec![d]),
    };
    let mut r = Resolver::default();
    let scenario = r.file(ast);
    let mut diags = r.diags;
    diags.sort_by_key(|d| (d.line, d.column, d.severity));
    if diags.iter().any(Diagnostic::is_error) {
        (None, diags)
    } else {
        (scenario, diags)
    }
}

/// Parses a vocabulary-only source (a full scenario file is accepted too;
/// everything except the `vocab` block is ignored).
pub fn parse_vocabulary(src: &SourceFile) -> Result<Vocabulary, Vec<Diagnostic>> {
    let ast = lexer::lex(&src.content)
        .and_then(syntax::parse_file)
        .map_err(|d| vec![d])?;
    let mut r = Resolver::default();
    let Some((_, decls)) = ast.vocab else {
        return Err(vec![Diagnostic::error(1, 1, "no `vocab` block")]);
    };
    let vocab = r.vocabulary(&decls);
    if r.diags.iter().any(Diagnostic::is_error) {
        Err(r.diags)
    } else {
        Ok(vocab)
    }
}

#[derive(Default)]
struct Resolver {
    diags: Vec<Diagnostic>,
    used_causae: HashSet<CausaSym>,
}

impl Resolver {
    fn error(&mut self, word: &Word, message: impl Into<String>) {
        self.diags.push(Diagnostic::at(word, Severity::Error, message));
    }

    fn warn(&mut self, word: &Word, message: impl Into<String>) {
        self.diags.push(Diagnostic::at(word, Severity::Warning, message));
    }

    fn file(&mut self, ast: FileAst) -> Option<Scenario> {
        let Some((_, decls)) = &ast.vocab else {
            self.diags.push(Diagnostic::error(1, 1, "no `vocab` block"));
            return None;
        };
        let vocab = self.vocabulary(decls);
        let rules = self.rules(&ast, &vocab);
        let signals: Vec<Term> = ast
            .signals
            .iter()
            .filter_map(|line| self.order1_term(line, &vocab, "signal"))
            .map(|s| signal_term(&s))
            .collect();
        let (name, seeds) = match &ast.scenario {
            Some((name, lines)) => (
                name.text.clone(),
                lines
                    .iter()
                    .filter_map(|line| self.order1_term(line, &vocab, "seed"))
                    .collect(),
            ),
            None => {
                self.diags.push(Diagnostic::error(1, 1, "no `scenario` block"));
                return None;
            }
        };
        for decl in decls {
            if !self.used_causae.contains(&CausaSym::new(&decl.causa.text)) {
                self.warn(
                    &decl.causa,
                    format!("indicator `{}` is never used", decl.causa.text),
                );
            }
        }
        Some(Scenario {
            name,
            vocabulary: vocab,
            rules,
            signals,
            seeds,
        })
    }

    fn vocabulary(&mut self, decls: &[syntax::IndicatorAst]) -> Vocabulary {
        let vocab = Vocabulary::new(
            decls
                .iter()
                .map(|d| IndicatorDecl {
                    causa: CausaSym::new(&d.causa.text),
                    label: d.label.clone(),
                    domain: d.domain.iter().map(|w| SuccessusSym::new(&w.text)).collect(),
                    constancy: d
                        .constancy
                        .iter()
                        .map(|w| SuccessusSym::new(&w.text))
                        .collect(),
                })
                .collect(),
        );
        for decl in decls {
            for w in decl.domain.iter().chain(&decl.constancy) {
                if w.text.contains(':') {
                    self.error(w, format!("successus `{}` may not contain `:`", w.text));
                }
            }
            if decl.causa.text.contains(':') {
                self.error(&decl.causa, "indicator names may not contain `:`");
            }
        }
        for issue in validate_vocabulary(&vocab) {
            let at = &decls[issue.indicator()].causa;
            self.error(at, issue.to_string());
        }
        vocab
    }

    fn rules(&mut self, ast: &FileAst, vocab: &Vocabulary) -> Vec<Rule> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for r in &ast.rules {
            let Some(class) = RuleClass::from_name(&r.class.text) else {
                self.error(
                    &r.class,
                    format!(
                        "unknown rule class `{}`; expected structural, behavioural or equivalence",
                        r.class.text
                    ),
                );
                continue;
            };
            if r.id.text == SIGNAL_RULE_ID {
                self.error(&r.id, format!("rule id `{SIGNAL_RULE_ID}` is reserved"));
                continue;
            }
            if !seen.insert(r.id.text.clone()) {
                self.error(&r.id, format!("rule `{}` is defined twice", r.id.text));
                continue;
            }
            let conditions: Option<Vec<Pattern>> =
                r.when.iter().map(|p| self.pattern(p, vocab)).collect();
            let consequents: Option<Vec<Pattern>> =
                r.then.iter().map(|p| self.pattern(p, vocab)).collect();
            let (Some(conditions), Some(consequents)) = (conditions, consequents) else {
                continue;
            };
            match Rule::new(
                r.id.text.clone(),
                class,
                conditions,
                consequents,
                r.distinct,
                vocab,
            ) {
                Ok(rule) => out.push(rule),
                Err(e) => self.error(&r.id, e.to_string()),
            }
        }
        out
    }

    fn pattern(&mut self, words: &[Word], vocab: &Vocabulary) -> Option<Pattern> {
        let mut atoms = Vec::new();
        let mut ok = true;
        for w in words {
            match Pattern::parse_token(&w.literal(), vocab) {
                Ok(atom) => {
                    if let PatternAtom::Effectus { successus, causa } = &atom {
                        // canonical patterns may carry an erased constancy causa
                        let erased_constancy = causa.is_erased()
                            && matches!(successus, SuccPat::Lit(s) if vocab.is_constancy(s));
                        if erased_constancy {
                            atoms.push(atom);
                            continue;
                        }
                        ok &= self.check_causa(w, causa, vocab);
                        if let SuccPat::Lit(s) = successus {
                            let e = Effectus {
                                successus: s.clone(),
                                causa: causa.clone(),
                            };
                            if vocab.declares_causa(causa) && !vocab.effectus_valid(&e) {
                                self.warn(
                                    w,
                                    format!(
                                        "`{e}` is outside the domain of {causa} and reduces to the neutrum"
                                    ),
                                );
                            }
                        }
                    }
                    atoms.push(atom);
                }
                Err(msg) => {
                    self.error(w, msg);
                    ok = false;
                }
            }
        }
        ok.then(|| Pattern::new(atoms))
    }

    fn check_causa(&mut self, w: &Word, causa: &CausaSym, vocab: &Vocabulary) -> bool {
        if vocab.declares_causa(causa) {
            self.used_causae.insert(causa.clone());
            true
        } else {
            self.error(w, format!("unknown indicator `{causa}`"));
            false
        }
    }

    /// A seed or signal: a non-empty sequence of valid effectus.
    fn order1_term(&mut self, words: &[Word], vocab: &Vocabulary, what: &str) -> Option<Term> {
        let mut atoms = Vec::new();
        let mut ok = true;
        for w in words {
            let atom = match classify_token(&w.literal()) {
                Ok(Token::Effectus(s, c)) => {
                    let e = Effectus::new(s, c);
                    if !self.check_causa(w, &e.causa, vocab) {
                        ok = false;
                        continue;
                    }
                    if !vocab.effectus_valid(&e) {
                        self.error(
                            w,
                            format!(
                                "`{}` is not in the domain of indicator {}; `{e}` is the neutrum",
                                e.successus, e.causa
                            ),
                        );
                        ok = false;
                        continue;
                    }
                    Atom::Effectus(e)
                }
                Ok(Token::Action(_)) => {
                    self.error(w, format!("a {what} cannot contain an action"));
                    ok = false;
                    continue;
                }
                Ok(_) => {
                    self.error(w, format!("a {what} is a sequence of `succ:Causa` effectus"));
                    ok = false;
                    continue;
                }
                Err(msg) => {
                    self.error(w, msg);
                    ok = false;
                    continue;
                }
            };
            atoms.push(atom);
        }
        ok.then(|| Term::new(atoms))
    }
}
