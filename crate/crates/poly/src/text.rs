//! Canonical text form: `-1*x2*x3*x7^2 + 1*x1*x2*x3*x7 - 3*x4`.

use std::fmt;
use std::str::FromStr;

use crate::{Coeff, Context, Monomial, PolyError, Polynomial, Result};

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ctx = self.context();
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (i, neg) {
                (0, true) => write!(f, "-{mag}")?,
                (0, false) => write!(f, "{mag}")?,
                (_, true) => write!(f, " - {mag}")?,
                (_, false) => write!(f, " + {mag}")?,
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", ctx.name(v))?,
                    _ => write!(f, "*{}^{}", ctx.name(v), e)?,
                }
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && pred(self.src[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice")
    }
}

/// Parses the canonical text form (whitespace-insensitive) in context `ctx`.
pub fn parse<C: Coeff + FromStr>(text: &str, ctx: &Context) -> Result<Polynomial<C>> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match lx.peek() {
            None if first => return Err(lx.err("empty input")),
            None => break,
            Some(b'+') => lx.pos += 1,
            Some(b'-') => {
                lx.pos += 1;
                negative = true;
            }
            Some(_) if first => {}
            Some(_) => return Err(lx.err("expected `+` or `-`")),
        }
        first = false;
        let mut coeff = C::one();
        let mut exps = vec![0u16; ctx.len()];
        loop {
            match lx.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let digits = lx.take_while(|b| b.is_ascii_digit());
                    let k = C::from_str(digits).map_err(|_| lx.err("bad integer"))?;
                    coeff = coeff * k;
                }
                Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                    let name =
                        lx.take_while(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'\'');
                    let v = ctx.index_of(name)?;
                    let mut e: u16 = 1;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        let digits = lx.take_while(|b| b.is_ascii_digit());
                        e = digits.parse().map_err(|_| lx.err("bad exponent"))?;
                    }
                    exps[v] = exps[v].checked_add(e).ok_or(PolyError::ExponentOverflow)?;
                }
                _ => return Err(lx.err("expected a factor")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((Monomial::from_exponents(exps), coeff));
    }
    Ok(Polynomial::from_terms(ctx, terms))
}
