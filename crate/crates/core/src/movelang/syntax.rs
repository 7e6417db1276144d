use thiserror::Error;

use super::MoveWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown name `{name}` at column {column}")]
    UnknownName { name: String, column: usize },
}

/// Parses a move word. Names for which `is_known` returns false are rejected.
///
/// ```text
/// word    := term*
/// term    := factor postfix*
/// factor  := NAME | "(" word ")"
/// postfix := "'" | "^" INT
/// ```
pub fn parse_word<F: Fn(&str) -> bool>(text: &str, is_known: F) -> Result<MoveWord, ParseError> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        is_known: &is_known,
    };
    let w = p.word()?;
    p.skip_ws();
    if let Some(&(i, c)) = p.chars.get(p.pos) {
        return Err(ParseError::Syntax {
            column: i + 1,
            message: format!("unexpected `{c}`"),
        });
    }
    Ok(w.normalize())
}

/// Parses without checking names against an environment.
pub fn parse_word_any(text: &str) -> Result<MoveWord, ParseError> {
    parse_word(text, |_| true)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    is_known: &'a dyn Fn(&str) -> bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i + 1)
            .unwrap_or_else(|| self.chars.last().map_or(1, |&(i, c)| i + c.len_utf8() + 1))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<MoveWord, ParseError> {
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                _ => terms.push(self.term()?),
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            MoveWord::Sequence(terms)
        })
    }

    fn term(&mut self) -> Result<MoveWord, ParseError> {
        let mut node = self.factor()?;
        loop {
            match self.peek() {
                Some('\'') => {
                    self.pos += 1;
                    node = MoveWord::Inverse(Box::new(node));
                }
                Some('^') => {
                    self.pos += 1;
                    let e = self.integer()?;
                    node = MoveWord::Power(Box::new(node), e);
                }
                _ => return Ok(node),
            }
        }
    }

    fn factor(&mut self) -> Result<MoveWord, ParseError> {
        let column = self.column();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(')') {
                    return Err(ParseError::Syntax {
                        column: self.column(),
                        message: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                // parenthesised words keep their grouping
                Ok(match inner {
                    MoveWord::Sequence(_) => inner,
                    other => MoveWord::Sequence(vec![other]),
                })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                if !(self.is_known)(&name) {
                    return Err(ParseError::UnknownName { name, column });
                }
                Ok(MoveWord::Atom(name))
            }
            Some(c) => Err(ParseError::Syntax {
                column,
                message: format!("unexpected `{c}`"),
            }),
            None => Err(ParseError::Syntax {
                column,
                message: "unexpected end of input".into(),
            }),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let column = self.column();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        text.parse().map_err(|_| ParseError::Syntax {
            column,
            message: "expected integer exponent".into(),
        })
    }
}

/// Canonical text for a word: terms separated by single spaces, nested
/// sequences parenthesised, `'` for inverse and `^n` for powers.
pub fn format_word(w: &MoveWord) -> String {
    match w {
        MoveWord::Sequence(items) => items.iter().map(operand).collect::<Vec<_>>().join(" "),
        other => operand(other),
    }
}

fn operand(w: &MoveWord) -> String {
    match w {
        MoveWord::Atom(name) => name.clone(),
        MoveWord::Inverse(x) => format!("{}'", operand(x)),
        MoveWord::Power(x, e) => format!("{}^{e}", operand(x)),
        MoveWord::Sequence(_) => format!("({})", format_word(w)),
    }
}
