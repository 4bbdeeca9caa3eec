//! Tokens shared by the expression and diagram grammars.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Identifiers are `[A-Za-z0-9_][A-Za-z0-9_'.-]*`; whitespace and `#`
/// comments up to end of line are skipped.
pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let bump = |line: &mut usize, column: &mut usize, c: char| {
            if c == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
        };
        match c {
            c if c.is_whitespace() => {
                chars.next();
                bump(&mut line, &mut column, c);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
            }
            '(' | ')' | ',' => {
                chars.next();
                column += 1;
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => Tok::Comma,
                };
                out.push(Token { tok, line: l, column: col });
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '.' | '-') {
                        s.push(c);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Ident(s), line: l, column: col });
            }
            other => {
                return Err(Error::Syntax { line: l, column: col, message: format!("unexpected character `{other}`") });
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}

/// A cursor over tokens with the small set of helpers both grammars use.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Cursor> {
        Ok(Cursor { toks: tokenize(src)?, pos: 0 })
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    /// The token after the next one.
    pub fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    pub fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(Error::Syntax { line: t.line, column: t.column, message: message.into() })
    }

    pub fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", show(&tok), show(&self.peek().tok)))
        }
    }

    pub fn ident(&mut self) -> Result<String> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a name, found {}", show(&other))),
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        self.expect(Tok::Eof)
    }
}

pub fn show(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Eof => "end of input".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let toks = tokenize("f(x,\n  y)").unwrap();
        let y = toks.iter().find(|t| t.tok == Tok::Ident("y".into())).unwrap();
        assert_eq!((y.line, y.column), (2, 3));
    }

    #[test]
    fn stray_character_is_reported() {
        assert!(matches!(tokenize("a + b"), Err(Error::Syntax { line: 1, column: 3, .. })));
    }
}
