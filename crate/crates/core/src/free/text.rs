use super::element::Element;
use super::monomial::{Alphabet, Monomial};
use crate::error::{Error, Result};
use crate::linalg::Q;
use num_bigint::BigInt;
use num_traits::{One, Zero};

struct Lexer<'s> {
    s: &'s [u8],
    pos: usize,
}

impl<'s> Lexer<'s> {
    fn new(s: &'s str) -> Self {
        Lexer { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn ident(&mut self) -> Result<&'s str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || matches!(self.s[self.pos], b'_' | b'\'' | b'!')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected identifier");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii").parse().expect("digits"))
    }

    fn monomial(&mut self, a: &Alphabet) -> Result<Monomial> {
        let at = self.pos;
        let name = self.ident()?;
        if name == "_" {
            return Ok(Monomial::Leaf);
        }
        let id = a.id(name).map_err(|_| Error::Parse { pos: at, msg: format!("unknown generator `{name}`") })?;
        let arity = a.get(id).arity;
        let mut ch = Vec::with_capacity(arity);
        if self.eat(b'(') {
            loop {
                ch.push(self.monomial(a)?);
                if !self.eat(b',') {
                    break;
                }
            }
            self.expect(b')')?;
        } else {
            ch = vec![Monomial::Leaf; arity];
        }
        if ch.len() != arity {
            return self.err(format!("generator `{name}` takes {arity} inputs, got {}", ch.len()));
        }
        Ok(Monomial::Node(id, ch))
    }

    fn coefficient(&mut self) -> Result<Option<Q>> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let d = if self.eat(b'/') { self.integer()? } else { BigInt::one() };
                if d.is_zero() {
                    return self.err("zero denominator");
                }
                if !self.eat(b'*') {
                    return self.err("expected `*` after coefficient");
                }
                Ok(Some(Q::new(n, d)))
            }
            _ => Ok(None),
        }
    }
}

/// Parses a tree monomial such as `m(m(_,_),_)`; a bare name is a corolla.
pub fn parse_monomial(s: &str, a: &Alphabet) -> Result<Monomial> {
    let mut lx = Lexer::new(s);
    let m = lx.monomial(a)?;
    if lx.peek().is_some() {
        return lx.err("trailing input");
    }
    Ok(m)
}

/// Parses a signed sum of terms `c*monomial`; the coefficient may be omitted.
pub fn parse_element(s: &str, a: &Alphabet) -> Result<Element> {
    let mut lx = Lexer::new(s);
    if lx.peek() == Some(b'0') {
        let save = lx.pos;
        lx.pos += 1;
        if lx.peek().is_none() {
            return lx.err("bare `0` has no arity; write terms instead");
        }
        lx.pos = save;
    }
    let mut terms: Vec<(Q, Monomial)> = Vec::new();
    let mut first = true;
    loop {
        let mut neg = false;
        if lx.eat(b'-') {
            neg = true;
        } else if !lx.eat(b'+') && !first {
            break;
        }
        first = false;
        let c = lx.coefficient()?.unwrap_or_else(Q::one);
        let m = lx.monomial(a)?;
        terms.push((if neg { -c } else { c }, m));
        if lx.peek().is_none() {
            break;
        }
    }
    if lx.peek().is_some() {
        return lx.err("trailing input");
    }
    let arity = terms.first().map(|t| t.1.arity()).unwrap_or(1);
    Element::from_terms(arity, terms)
}
