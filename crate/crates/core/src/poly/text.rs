//! Canonical polynomial strings and the matching parser.
//!
//! Grammar: `expr := ['+'|'-'] term (('+'|'-') term)*`,
//! `term := factor ('*' factor)*`, `factor := atom ['^' uint]`,
//! `atom := rational | name | '(' expr ')'`, rational := `int ['/' uint]`.
//! No implicit multiplication. The printer emits strings the parser accepts.

use super::Polynomial;
use crate::context::Ctx;
use crate::rat::{format_rational, Rational};
use num::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Descending graded-lex term order.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote_coeff = false;
            if !mag.is_one() || m.is_one() {
                write!(f, "{}", format_rational(&mag))?;
                wrote_coeff = true;
            }
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_coeff {
                    write!(f, "*")?;
                }
                wrote_coeff = true;
                write!(f, "{}", self.ctx.name(idx))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, msg)
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        self.col += 1;
        c
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t') | Some(b'\r')) {
            self.bump();
        }
    }

    fn uint(&mut self) -> Result<num::BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        num::BigInt::from_str(s).map_err(|e| self.err(format!("bad integer: {e}")))
    }

    /// Next token with its starting column; None at end of input.
    fn next_tok(&mut self) -> Result<Option<(Tok, usize)>, ParseError> {
        self.skip_ws();
        let col = self.col;
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let tok = match c {
            b'+' => {
                self.bump();
                Tok::Plus
            }
            b'-' => {
                self.bump();
                Tok::Minus
            }
            b'*' => {
                self.bump();
                Tok::Star
            }
            b'^' => {
                self.bump();
                Tok::Caret
            }
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b'0'..=b'9' => {
                let num = self.uint()?;
                if self.peek() == Some(b'/') {
                    self.bump();
                    let den_col = self.col;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(ParseError::new(self.line, den_col, "zero denominator"));
                    }
                    Tok::Num(Rational::new(num, den))
                } else {
                    Tok::Num(Rational::from_integer(num))
                }
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.bump();
                }
                Tok::Name(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
            }
            other => {
                return Err(ParseError::new(
                    self.line,
                    col,
                    format!("unexpected character {:?}", other as char),
                ))
            }
        };
        Ok(Some((tok, col)))
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    ctx: Ctx,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let col = self.col();
            match self.peek() {
                Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                    let e: u32 = n.numer().try_into().map_err(|_| {
                        ParseError::new(self.line, col, "exponent too large")
                    })?;
                    self.bump();
                    return Ok(base.pow(e));
                }
                _ => return Err(ParseError::new(self.line, col, "expected nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.bump();
                Ok(Polynomial::constant(&self.ctx, n))
            }
            Some(Tok::Name(name)) => {
                let col = self.col();
                self.bump();
                match self.ctx.index_of(&name) {
                    Some(idx) => Ok(Polynomial::var(&self.ctx, idx)),
                    None => Err(ParseError::new(
                        self.line,
                        col,
                        format!("unknown indeterminate {name:?}"),
                    )),
                }
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() == Some(&Tok::RParen) {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.err("expected ')'"))
                }
            }
            Some(Tok::Minus) => {
                // Unary minus inside a term: -x^2 parses as -(x^2).
                self.bump();
                Ok(self.factor()?.neg())
            }
            _ => Err(self.err("expected a number, name, or '('")),
        }
    }
}

/// Parses one polynomial from a single line of text. `line` is the 1-based
/// line number used in error positions.
pub fn parse_polynomial(ctx: &Ctx, src: &str, line: usize) -> Result<Polynomial, ParseError> {
    let mut lx = Lexer::new(src, line);
    let mut toks = Vec::new();
    while let Some(t) = lx.next_tok()? {
        toks.push(t);
    }
    if toks.is_empty() {
        return Err(ParseError::new(line, 1, "empty polynomial"));
    }
    let end_col = lx.col;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col,
        ctx: ctx.clone(),
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}
