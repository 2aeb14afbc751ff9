//! Term literal syntax: `! r:Q r1:P`, `?- ü:Q r1:P`, `"0B"`, `I`.

use std::str::FromStr;

use thiserror::Error;

use super::{ActionSym, Atom, CausaSym, Effectus, Order2Sym, SuccessusSym, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token {index} (`{token}`): {message}")]
pub struct TermParseError {
    pub index: usize,
    pub token: String,
    pub message: String,
}

pub(crate) enum Token<'a> {
    Order2(Order2Sym),
    Neutrum,
    Effectus(&'a str, &'a str),
    Action(&'a str),
    /// Anything else; interpretation depends on the caller (e.g. variables).
    Bare(&'a str),
}

/// Classifies one whitespace-free token of the literal syntax.
pub(crate) fn classify_token(token: &str) -> Result<Token<'_>, String> {
    if let Some(o) = Order2Sym::from_token(token) {
        return Ok(Token::Order2(o));
    }
    if token == "I" {
        return Ok(Token::Neutrum);
    }
    if let Some(inner) = token.strip_prefix('"') {
        let name = inner
            .strip_suffix('"')
            .ok_or_else(|| "unterminated action symbol".to_string())?;
        if name.is_empty() || name.contains('"') {
            return Err("malformed action symbol".into());
        }
        return Ok(Token::Action(name));
    }
    if let Some((succ, causa)) = token.split_once(':') {
        if succ.is_empty() {
            return Err("effectus is missing its successus".into());
        }
        if causa.is_empty() {
            return Err("effectus is missing its causa".into());
        }
        if causa.contains(':') {
            return Err("effectus has more than one `:`".into());
        }
        return Ok(Token::Effectus(succ, causa));
    }
    Ok(Token::Bare(token))
}

impl FromStr for Term {
    type Err = TermParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(TermParseError {
                index: 0,
                token: String::new(),
                message: "empty term (write `I` for the neutrum)".into(),
            });
        }
        if tokens == ["I"] {
            return Ok(Term::neutrum());
        }
        let mut atoms = Vec::with_capacity(tokens.len());
        for (index, token) in tokens.iter().enumerate() {
            let err = |message: String| TermParseError {
                index,
                token: token.to_string(),
                message,
            };
            let atom = match classify_token(token).map_err(err)? {
                Token::Order2(o) => Atom::Order2(o),
                Token::Neutrum => Atom::Neutrum,
                Token::Effectus(succ, causa) => Atom::Effectus(Effectus {
                    successus: SuccessusSym::new(succ),
                    causa: CausaSym::new(causa),
                }),
                Token::Action(name) => Atom::Action(ActionSym::new(name)),
                Token::Bare(_) => {
                    return Err(err(
                        "expected `succ:Causa`, a prefix (`!`, `?`, `!-`, `?-`), `I` or a quoted action"
                            .into(),
                    ))
                }
            };
            atoms.push(atom);
        }
        Ok(Term::new(atoms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_prefixes_and_effectus() {
        let t: Term = "?- ü:Q r1:P ! ü:Q r1:P".parse().unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.head_order2(), Some(Order2Sym::CaptureInverse));
        assert_eq!(t.to_string(), "?- ü:Q r1:P ! ü:Q r1:P");
    }

    #[test]
    fn superscript_inverse_is_accepted() {
        let a: Term = "?⁻¹ r:Q".parse().unwrap();
        let b: Term = "?- r:Q".parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn neutrum_literal() {
        assert!("I".parse::<Term>().unwrap().is_neutrum());
        let t: Term = "I ! b1:P".parse().unwrap();
        assert_eq!(t.atoms()[0], Atom::Neutrum);
    }

    #[test]
    fn action_literal_round_trips() {
        let t: Term = "\"00\"".parse().unwrap();
        assert_eq!(t.as_action().unwrap().as_str(), "00");
        assert_eq!(t.to_string().parse::<Term>().unwrap(), t);
    }

    #[test]
    fn rejects_bare_words() {
        let err = "! 00".parse::<Term>().unwrap_err();
        assert_eq!(err.index, 1);
        assert!("".parse::<Term>().is_err());
        assert!("b1:".parse::<Term>().is_err());
        assert!(":P".parse::<Term>().is_err());
        assert!("\"0B".parse::<Term>().is_err());
    }
}
