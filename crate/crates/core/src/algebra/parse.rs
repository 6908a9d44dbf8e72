//! A small expression reader for algebra elements such as `1 - 2*a1*a2`.

use super::{AlgebraHandle, AlgebraRef, Element};
use crate::error::{Error, Result};

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '⊗')
}

struct Parser<'a> {
    alg: &'a AlgebraRef,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in '{}'", self.pos, self.chars.iter().collect::<String>()))
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = self.alg.zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Ok(acc),
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Element> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Element> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let s = self.alg.field().parse_scalar(&text)?;
                Ok(self.alg.scalar(&s))
            }
            Some(c) if is_ident_char(c) => {
                let start = self.pos;
                while self.pos < self.chars.len() && is_ident_char(self.chars[self.pos]) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.alg.basis_by_label(&name)
            }
            _ => Err(self.err("expected a number, label or '('")),
        }
    }
}

/// Parses an element written with basis labels, rational constants, `+`,
/// `-`, `*`, `^` and parentheses.
pub fn parse_element(alg: &AlgebraRef, text: &str) -> Result<Element> {
    let mut p = Parser { alg, chars: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
