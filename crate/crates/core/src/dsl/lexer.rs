use super::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Word(String),
    Str(String),
    LBrace,
    RBrace,
    Comma,
    Newline,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of file".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '{' | '}' | ',' | '"' | '#')
}

pub(crate) fn lex(src: &str) -> Result<Vec<Spanned>, Diagnostic> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let line_no = li + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let mut push = |tok| {
                out.push(Spanned {
                    tok,
                    line: line_no,
                    column,
                })
            };
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                '{' => {
                    push(Tok::LBrace);
                    i += 1;
                }
                '}' => {
                    push(Tok::RBrace);
                    i += 1;
                }
                ',' => {
                    push(Tok::Comma);
                    i += 1;
                }
                '"' => {
                    let end = chars[i + 1..]
                        .iter()
                        .position(|&c| c == '"')
                        .ok_or_else(|| Diagnostic::error(line_no, column, "unterminated string"))?;
                    let s: String = chars[i + 1..i + 1 + end].iter().collect();
                    push(Tok::Str(s));
                    i += end + 2;
                }
                _ => {
                    let start = i;
                    while i < chars.len() && is_word_char(chars[i]) {
                        i += 1;
                    }
                    push(Tok::Word(chars[start..i].iter().collect()));
                }
            }
        }
        out.push(Spanned {
            tok: Tok::Newline,
            line: line_no,
            column: chars.len() + 1,
        });
    }
    let line = out.last().map_or(1, |s| s.line + 1);
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: 1,
    });
    Ok(out)
}
