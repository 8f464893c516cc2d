//! Recursive-descent parser for variety expressions.
//!
//! ```text
//! term   := factor { "*" factor }
//! factor := "P" | "Proj(" nat ")" | "SB(" nat "," nat ")" | "Dual(" term ")"
//!         | "Sym^" nat "(" term ")" | "Grass(" nat "," term ")"
//!         | "M0bar(" term "," nat ")" | "MSB(" nat "," nat "," term ")"
//!         | "Maps_" nat "(" term "," term ")"
//! ```
//!
//! Whitespace is ignored between tokens. `P` is the context's base variety;
//! `SB(a, n)` is the variety of class `a` and dimension `n` in the context's
//! model.

use std::fmt;

use thiserror::Error;

use super::{Context, TermError, VarietyTerm};
use crate::brauer::SeveriBrauer;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: expected ", self.position)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("invalid term: {0}")]
    Invalid(#[from] TermError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u64),
    LParen,
    RParen,
    Comma,
    Star,
    Caret,
    Underscore,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Underscore => f.write_str("`_`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const FACTOR_STARTS: &[&str] = &[
    "`P`", "`Proj`", "`SB`", "`Dual`", "`Sym`", "`Grass`", "`M0bar`", "`MSB`", "`Maps`",
];

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'_' => Tok::Underscore,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let n = text.parse::<u64>().map_err(|_| SyntaxError {
                    position: start,
                    expected: vec!["a number that fits in 64 bits".into()],
                    found: format!("`{text}`"),
                })?;
                out.push((start, Tok::Nat(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = input[start..].chars().next().unwrap();
                return Err(SyntaxError {
                    position: start,
                    expected: vec!["a token".into()],
                    found: format!("`{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((input.len(), Tok::Eof));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: &'a Context,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            position: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.to_string()]))
        }
    }

    fn nat(&mut self) -> Result<u64, SyntaxError> {
        match *self.peek() {
            Tok::Nat(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(&["a natural number"])),
        }
    }

    fn term(&mut self) -> Result<VarietyTerm, ParseError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(VarietyTerm::product(factors))
    }

    fn factor(&mut self) -> Result<VarietyTerm, ParseError> {
        let name = match self.peek() {
            Tok::Ident(name) => name.clone(),
            _ => return Err(self.error(FACTOR_STARTS).into()),
        };
        let name_at = self.offset();
        self.bump();
        let t = match name.as_str() {
            "P" => self.ctx.p(),
            "Proj" => {
                self.expect(Tok::LParen)?;
                let n = self.nat()?;
                self.expect(Tok::RParen)?;
                VarietyTerm::Proj(n)
            }
            "SB" => {
                self.expect(Tok::LParen)?;
                let a = self.nat()?;
                self.expect(Tok::Comma)?;
                let n = self.nat()?;
                self.expect(Tok::RParen)?;
                let class = self.ctx.model().class(a).map_err(TermError::from)?;
                VarietyTerm::Sb(SeveriBrauer::new(class, n).map_err(TermError::from)?)
            }
            "Dual" => {
                self.expect(Tok::LParen)?;
                let x = self.term()?;
                self.expect(Tok::RParen)?;
                VarietyTerm::dual(x)
            }
            "Sym" => {
                self.expect(Tok::Caret)?;
                let d = self.nat()?;
                self.expect(Tok::LParen)?;
                let x = self.term()?;
                self.expect(Tok::RParen)?;
                VarietyTerm::sym(d, x)
            }
            "Grass" => {
                self.expect(Tok::LParen)?;
                let m = self.nat()?;
                self.expect(Tok::Comma)?;
                let x = self.term()?;
                self.expect(Tok::RParen)?;
                VarietyTerm::grass(m, x)
            }
            "M0bar" => {
                self.expect(Tok::LParen)?;
                let x = self.term()?;
                self.expect(Tok::Comma)?;
                let d = self.nat()?;
                self.expect(Tok::RParen)?;
                VarietyTerm::m0bar(d, x)
            }
            "MSB" => {
                self.expect(Tok::LParen)?;
                let m = self.nat()?;
                self.expect(Tok::Comma)?;
                let d = self.nat()?;
                self.expect(Tok::Comma)?;
                let x = self.term()?;
                self.expect(Tok::RParen)?;
                VarietyTerm::msb(m, d, x)
            }
            "Maps" => {
                self.expect(Tok::Underscore)?;
                let d = self.nat()?;
                self.expect(Tok::LParen)?;
                let q = self.term()?;
                self.expect(Tok::Comma)?;
                let p = self.term()?;
                self.expect(Tok::RParen)?;
                VarietyTerm::maps(d, q, p)
            }
            _ => {
                return Err(SyntaxError {
                    position: name_at,
                    expected: FACTOR_STARTS.iter().map(|s| s.to_string()).collect(),
                    found: format!("`{name}`"),
                }
                .into())
            }
        };
        Ok(t)
    }
}

/// Parses and validates `text` against `ctx`.
pub fn parse(text: &str, ctx: &Context) -> Result<VarietyTerm, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, ctx };
    let t = parser.term()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error(&["`*`", "end of input"]).into());
    }
    Ok(t.validate(ctx)?)
}
