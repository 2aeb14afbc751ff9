//! Recursive-descent parser from tokens to an unresolved syntax tree.
//! Names are resolved against the vocabulary afterwards.

use super::lexer::{Spanned, Tok};
use super::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Word {
    pub text: String,
    /// Quoted in the source.
    pub quoted: bool,
    pub line: usize,
    pub column: usize,
}

impl Word {
    /// The token in term literal syntax.
    pub(crate) fn literal(&self) -> String {
        if self.quoted {
            format!("\"{}\"", self.text)
        } else {
            self.text.clone()
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct IndicatorAst {
    pub causa: Word,
    pub label: String,
    pub domain: Vec<Word>,
    pub constancy: Vec<Word>,
}

#[derive(Debug, Clone)]
pub(crate) struct RuleAst {
    pub class: Word,
    pub id: Word,
    pub distinct: bool,
    pub when: Vec<Vec<Word>>,
    pub then: Vec<Vec<Word>>,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct FileAst {
    pub vocab: Option<(Word, Vec<IndicatorAst>)>,
    pub rules: Vec<RuleAst>,
    pub signals: Vec<Vec<Word>>,
    pub scenario: Option<(Word, Vec<Vec<Word>>)>,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn skip_newlines(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.pos += 1;
        }
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let t = self.peek();
        Diagnostic::error(
            t.line,
            t.column,
            format!("expected {expected}, found {}", t.tok.describe()),
        )
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<Spanned> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn word(&mut self, what: &str) -> PResult<Word> {
        match &self.peek().tok {
            Tok::Word(w) => {
                let w = w.clone();
                let t = self.bump();
                Ok(Word {
                    text: w,
                    quoted: false,
                    line: t.line,
                    column: t.column,
                })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn string(&mut self, what: &str) -> PResult<Word> {
        match &self.peek().tok {
            Tok::Str(s) => {
                let s = s.clone();
                let t = self.bump();
                Ok(Word {
                    text: s,
                    quoted: true,
                    line: t.line,
                    column: t.column,
                })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Word> {
        match &self.peek().tok {
            Tok::Word(w) if w == kw => self.word(kw),
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(w) if w == kw)
    }

    /// Words and quoted strings up to the end of the line.
    fn line_items(&mut self) -> PResult<Vec<Word>> {
        let mut items = Vec::new();
        loop {
            match &self.peek().tok {
                Tok::Word(_) => items.push(self.word("a term")?),
                Tok::Str(_) => items.push(self.string("a term")?),
                Tok::Newline => {
                    self.bump();
                    return Ok(items);
                }
                Tok::RBrace => return Ok(items),
                _ => return Err(self.unexpected("a term atom")),
            }
        }
    }

    fn file(&mut self) -> PResult<FileAst> {
        let mut ast = FileAst::default();
        loop {
            self.skip_newlines();
            let head = match &self.peek().tok {
                Tok::Eof => return Ok(ast),
                Tok::Word(w) => w.clone(),
                _ => return Err(self.unexpected("`vocab`, `rules`, `signals` or `scenario`")),
            };
            match head.as_str() {
                "vocab" => {
                    let kw = self.word("vocab")?;
                    if ast.vocab.is_some() {
                        return Err(Diagnostic::error(kw.line, kw.column, "second `vocab` block"));
                    }
                    let decls = self.vocab_body()?;
                    ast.vocab = Some((kw, decls));
                }
                "rules" => {
                    self.bump();
                    ast.rules.extend(self.rules_body()?);
                }
                "signals" => {
                    self.bump();
                    ast.signals.extend(self.term_block(None)?);
                }
                "scenario" => {
                    let kw = self.word("scenario")?;
                    if ast.scenario.is_some() {
                        return Err(Diagnostic::error(kw.line, kw.column, "second `scenario` block"));
                    }
                    let name = self.string("a quoted scenario name")?;
                    let seeds = self.term_block(Some("seed"))?;
                    ast.scenario = Some((name, seeds));
                }
                _ => return Err(self.unexpected("`vocab`, `rules`, `signals` or `scenario`")),
            }
        }
    }

    fn vocab_body(&mut self) -> PResult<Vec<IndicatorAst>> {
        self.skip_newlines();
        self.expect(Tok::LBrace, "`{`")?;
        let mut decls = Vec::new();
        loop {
            self.skip_newlines();
            if self.peek().tok == Tok::RBrace {
                self.bump();
                return Ok(decls);
            }
            self.keyword("indicator")?;
            let causa = self.word("an indicator name")?;
            let label = self.string("a quoted indicator label")?.text;
            self.skip_newlines();
            self.expect(Tok::LBrace, "`{`")?;
            let mut domain = Vec::new();
            loop {
                self.skip_newlines();
                match &self.peek().tok {
                    Tok::RBrace => {
                        self.bump();
                        break;
                    }
                    Tok::Word(_) => domain.push(self.word("a successus")?),
                    _ => return Err(self.unexpected("a successus or `}`")),
                }
            }
            let mut constancy = Vec::new();
            if self.at_keyword("constancy") {
                self.bump();
                while let Tok::Word(_) = self.peek().tok {
                    constancy.push(self.word("a successus")?);
                }
                if constancy.is_empty() {
                    return Err(self.unexpected("a successus after `constancy`"));
                }
            }
            decls.push(IndicatorAst {
                causa,
                label,
                domain,
                constancy,
            });
        }
    }

    fn rules_body(&mut self) -> PResult<Vec<RuleAst>> {
        self.skip_newlines();
        self.expect(Tok::LBrace, "`{`")?;
        let mut rules = Vec::new();
        loop {
            self.skip_newlines();
            if self.peek().tok == Tok::RBrace {
                self.bump();
                return Ok(rules);
            }
            let class = self.word("a rule class")?;
            let id = self.word("a rule id")?;
            let distinct = if self.at_keyword("distinct") {
                self.bump();
                true
            } else {
                false
            };
            self.skip_newlines();
            self.expect(Tok::LBrace, "`{`")?;
            self.skip_newlines();
            self.keyword("when")?;
            let when = self.patterns(|t| matches!(t, Tok::Word(w) if w == "then"), "`then`")?;
            self.keyword("then")?;
            let then = self.patterns(|t| *t == Tok::RBrace, "`}`")?;
            self.expect(Tok::RBrace, "`}`")?;
            rules.push(RuleAst {
                class,
                id,
                distinct,
                when,
                then,
            });
        }
    }

    /// Comma-separated patterns up to a token accepted by `stop`.
    fn patterns(&mut self, stop: impl Fn(&Tok) -> bool, end: &str) -> PResult<Vec<Vec<Word>>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        loop {
            self.skip_newlines();
            let tok = self.peek().tok.clone();
            if stop(&tok) || tok == Tok::Comma {
                if current.is_empty() {
                    return Err(self.unexpected("a pattern"));
                }
                out.push(std::mem::take(&mut current));
                if tok == Tok::Comma {
                    self.bump();
                    continue;
                }
                return Ok(out);
            }
            match tok {
                Tok::Word(_) => current.push(self.word("a pattern atom")?),
                Tok::Str(_) => current.push(self.string("a pattern atom")?),
                _ => return Err(self.unexpected(&format!("a pattern atom, `,` or {end}"))),
            }
        }
    }

    /// `{ [kw] term NEWLINE ... }`
    fn term_block(&mut self, kw: Option<&str>) -> PResult<Vec<Vec<Word>>> {
        self.skip_newlines();
        self.expect(Tok::LBrace, "`{`")?;
        let mut out = Vec::new();
        loop {
            self.skip_newlines();
            if self.peek().tok == Tok::RBrace {
                self.bump();
                return Ok(out);
            }
            if let Some(kw) = kw {
                self.keyword(kw)?;
            }
            let items = self.line_items()?;
            if items.is_empty() {
                return Err(self.unexpected("a term"));
            }
            out.push(items);
        }
    }
}

pub(crate) fn parse_file(toks: Vec<Spanned>) -> PResult<FileAst> {
    Parser { toks, pos: 0 }.file()
}
