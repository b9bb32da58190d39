//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! iff     := implies ( "<->" implies )*
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | primary
//! primary := "top" | "bot" | ATOM | "(" iff ")" | "{" [ WORLD ( "," WORLD )* ] "}"
//! ```
//!
//! `¬ ∧ ∨ → ↔ ⊤ ⊥` are accepted as aliases of `! & | -> <-> top bot`.

use super::formula::Formula;
use super::universe::Universe;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    /// Column is 1-based and counts characters.
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown atom `{name}` at column {column}")]
    UnknownAtom { name: String, column: usize },
    #[error("unknown world `{name}` at column {column}")]
    UnknownWorld { name: String, column: usize },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. }
            | ParseError::UnknownAtom { column, .. }
            | ParseError::UnknownWorld { column, .. } => *column,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Top,
    Bot,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Top => "`top`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            '!' | '¬' => Some(Tok::Not),
            '&' | '∧' => Some(Tok::And),
            '|' | '∨' => Some(Tok::Or),
            '→' => Some(Tok::Implies),
            '↔' => Some(Tok::Iff),
            '⊤' => Some(Tok::Top),
            '⊥' => Some(Tok::Bot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, column));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Implies, column));
            i += 2;
        } else if c == '<' && chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
            out.push((Tok::Iff, column));
            i += 3;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "top" => Tok::Top,
                "bot" => Tok::Bot,
                _ => Tok::Ident(word),
            };
            out.push((tok, column));
        } else {
            return Err(ParseError::Syntax {
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    universe: &'a Universe,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            column: self.column(),
            message: message.into(),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let right = self.implies()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let right = self.implies()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let right = self.and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let (tok, column) = self.bump();
        match tok {
            Tok::Top => Ok(Formula::Top),
            Tok::Bot => Ok(Formula::Bot),
            Tok::Ident(name) => {
                let known = self.universe.alphabet().and_then(|a| a.position(&name)).is_some();
                if known {
                    Ok(Formula::Atom(name))
                } else {
                    Err(ParseError::UnknownAtom { name, column })
                }
            }
            Tok::LParen => {
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(ParseError::Syntax {
                        column: self.column(),
                        message: format!(
                            "expected `)` to close the parenthesis opened at column {column}, found {}",
                            self.peek().describe()
                        ),
                    });
                }
                self.bump();
                Ok(inner)
            }
            Tok::LBrace => self.world_list(),
            other => Err(ParseError::Syntax {
                column,
                message: format!("expected a formula, found {}", other.describe()),
            }),
        }
    }

    fn world_list(&mut self) -> Result<Formula, ParseError> {
        let mut names: Vec<String> = Vec::new();
        if *self.peek() == Tok::RBrace {
            self.bump();
            return Ok(Formula::Worlds(names));
        }
        loop {
            let (tok, column) = self.bump();
            let Tok::Ident(name) = tok else {
                return Err(ParseError::Syntax {
                    column,
                    message: format!("expected a world name, found {}", tok.describe()),
                });
            };
            let Some(w) = self.universe.world_named(&name) else {
                return Err(ParseError::UnknownWorld { name, column });
            };
            // canonical spelling, so equal literals compare equal
            names.push(self.universe.name(w));
            match self.bump() {
                (Tok::Comma, _) => continue,
                (Tok::RBrace, _) => break,
                (other, column) => {
                    return Err(ParseError::Syntax {
                        column,
                        message: format!("expected `,` or `}}` in world list, found {}", other.describe()),
                    })
                }
            }
        }
        Ok(Formula::Worlds(names))
    }
}

/// Parses `text` as a formula over `universe`. Atoms must belong to the
/// universe's alphabet and world names to the universe.
pub fn parse_formula(text: &str, universe: &Universe) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, pos: 0, universe };
    let f = parser.iff()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(format!("unexpected {} after formula", parser.peek().describe())));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::models;

    fn bnt() -> Universe {
        Universe::with_atoms(&["b", "n", "t"]).unwrap()
    }

    #[test]
    fn parses_sample_sentences() {
        let u = bnt();
        let f = parse_formula("(b <-> !n) & !t", &u).unwrap();
        assert_eq!(
            f,
            Formula::and(
                Formula::iff(Formula::atom("b"), Formula::not(Formula::atom("n"))),
                Formula::not(Formula::atom("t"))
            )
        );
        assert_eq!(
            parse_formula("b | n", &u).unwrap(),
            Formula::or(Formula::atom("b"), Formula::atom("n"))
        );
    }

    #[test]
    fn unclosed_parenthesis_is_reported() {
        let err = parse_formula("b & (n", &bnt()).unwrap_err();
        match err {
            ParseError::Syntax { column, message } => {
                assert_eq!(column, 7);
                assert!(message.contains("column 5"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_atom_names_the_identifier() {
        let err = parse_formula("b & zz", &bnt()).unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownAtom {
                name: "zz".into(),
                column: 5
            }
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let u = Universe::with_atoms(&["a", "b", "c"]).unwrap();
        let a = || Formula::atom("a");
        let b = || Formula::atom("b");
        let c = || Formula::atom("c");
        assert_eq!(
            parse_formula("a | b & c", &u).unwrap(),
            Formula::or(a(), Formula::and(b(), c()))
        );
        assert_eq!(
            parse_formula("a -> b -> c", &u).unwrap(),
            Formula::implies(a(), Formula::implies(b(), c()))
        );
        assert_eq!(
            parse_formula("a <-> b -> c", &u).unwrap(),
            Formula::iff(a(), Formula::implies(b(), c()))
        );
        assert_eq!(
            parse_formula("!a & b", &u).unwrap(),
            Formula::and(Formula::not(a()), b())
        );
        assert_eq!(
            parse_formula("a & b & c", &u).unwrap(),
            Formula::and(Formula::and(a(), b()), c())
        );
    }

    #[test]
    fn unicode_aliases() {
        let u = Universe::with_atoms(&["a", "b"]).unwrap();
        assert_eq!(
            parse_formula("¬a ∧ b → ⊥ ↔ ⊤ ∨ a", &u).unwrap(),
            parse_formula("!a & b -> bot <-> top | a", &u).unwrap()
        );
    }

    #[test]
    fn world_literals() {
        let u = Universe::abstract_worlds(8, 1).unwrap();
        let f = parse_formula("{w3, w4} | !{}", &u).unwrap();
        assert_eq!(models(&f, &u).unwrap(), u.all());
        assert!(matches!(
            parse_formula("{w0}", &u),
            Err(ParseError::UnknownWorld { .. })
        ));
        assert!(matches!(parse_formula("p", &u), Err(ParseError::UnknownAtom { .. })));
    }

    #[test]
    fn trailing_tokens_and_bad_characters() {
        let u = bnt();
        assert!(matches!(parse_formula("b n", &u), Err(ParseError::Syntax { column: 3, .. })));
        assert!(matches!(parse_formula("b # n", &u), Err(ParseError::Syntax { column: 3, .. })));
        assert!(matches!(parse_formula("", &u), Err(ParseError::Syntax { column: 1, .. })));
        assert!(matches!(parse_formula("b &", &u), Err(ParseError::Syntax { column: 4, .. })));
    }
}
