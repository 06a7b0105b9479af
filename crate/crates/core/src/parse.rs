//! Concrete syntax.
//!
//! ```text
//! or    := and ('|' and)*
//! and   := bin ('&' bin)*
//! bin   := unary (('U' | 'W' | 'M' | 'R') bin)?      right-associative
//! unary := ('!' | 'X' | 'F' | 'G') unary | atom | const | '(' or ')'
//! ```
//!
//! General negation is accepted and pushed down to the atoms while parsing.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::formula::Formula;
use crate::session::Session;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    LParen,
    RParen,
    Unary(u8),
    Binary(u8),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        i += 1;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => continue,
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'X' | b'F' | b'G' => Tok::Unary(c),
            b'U' | b'W' | b'M' | b'R' => Tok::Binary(c),
            b'a'..=b'z' => {
                while i < bytes.len() && matches!(bytes[i], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    i += 1;
                }
                match &text[start..i] {
                    "true" | "tt" => Tok::True,
                    "false" | "ff" => Tok::False,
                    id => Tok::Ident(id.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    position: start,
                    message: alloc::format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

/// Parse tree before negation elimination.
enum Ast {
    True,
    False,
    Atom(String),
    Not(Box<Ast>),
    And(Box<Ast>, Box<Ast>),
    Or(Box<Ast>, Box<Ast>),
    Unary(u8, Box<Ast>),
    Binary(u8, Box<Ast>, Box<Ast>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: &str) -> Result<T, Error> {
        Err(Error::Parse {
            position: self.offset(),
            message: message.to_string(),
        })
    }

    fn or(&mut self) -> Result<Ast, Error> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = Ast::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ast, Error> {
        let mut lhs = self.binary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.binary()?;
            lhs = Ast::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn binary(&mut self) -> Result<Ast, Error> {
        let lhs = self.unary()?;
        if let Some(&Tok::Binary(op)) = self.peek() {
            self.pos += 1;
            let rhs = self.binary()?;
            return Ok(Ast::Binary(op, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast, Error> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Not => Ok(Ast::Not(Box::new(self.unary()?))),
            Tok::Unary(op) => Ok(Ast::Unary(op, Box::new(self.unary()?))),
            Tok::True => Ok(Ast::True),
            Tok::False => Ok(Ast::False),
            Tok::Ident(id) => Ok(Ast::Atom(id)),
            Tok::LParen => {
                let inner = self.or()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                self.err("expected a formula")
            }
        }
    }
}

impl Session {
    /// Parses `text` into negation normal form.
    pub fn parse(&mut self, text: &str) -> Result<Formula, Error> {
        let toks = lex(text)?;
        let mut p = Parser {
            toks,
            pos: 0,
            end: text.len(),
        };
        let ast = p.or()?;
        if p.pos != p.toks.len() {
            return p.err("unexpected trailing input");
        }
        self.nnf(&ast, false)
    }

    fn nnf(&mut self, ast: &Ast, neg: bool) -> Result<Formula, Error> {
        Ok(match ast {
            Ast::True if neg => self.ff(),
            Ast::True => self.tt(),
            Ast::False if neg => self.tt(),
            Ast::False => self.ff(),
            Ast::Atom(name) => {
                let a = self.atom(name)?;
                self.lit(a, !neg)
            }
            Ast::Not(inner) => self.nnf(inner, !neg)?,
            Ast::And(l, r) | Ast::Or(l, r) => {
                let l = self.nnf(l, neg)?;
                let r = self.nnf(r, neg)?;
                if matches!(ast, Ast::And(..)) != neg {
                    self.and(l, r)
                } else {
                    self.or(l, r)
                }
            }
            Ast::Unary(op, inner) => {
                let s = self.nnf(inner, neg)?;
                match (op, neg) {
                    (b'X', _) => self.next(s),
                    (b'F', false) | (b'G', true) => self.finally(s),
                    _ => self.globally(s),
                }
            }
            Ast::Binary(op, l, r) => {
                let l = self.nnf(l, neg)?;
                let r = self.nnf(r, neg)?;
                match (op, neg) {
                    (b'U', false) | (b'R', true) => self.until(l, r),
                    (b'W', false) | (b'M', true) => self.weak_until(l, r),
                    (b'M', false) | (b'W', true) => self.strong_release(l, r),
                    _ => self.release(l, r),
                }
            }
        })
    }
}
