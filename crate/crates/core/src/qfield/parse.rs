//! Parser for the text form produced by `Display for RatQ`:
//! `poly` or `A/B` where `A`, `B` are a single term or a parenthesized
//! polynomial, e.g. `(1+q)/(1-q^2)`, `-q^-1`, `3*q^2/(1-q)`.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{LaurentZ, QFieldError, RatQ};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> QFieldError {
        QFieldError::Parse(format!("{what} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.peek()?;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn exponent(&mut self) -> Result<i64, QFieldError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let neg = self.eat(b'-');
        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let e: i64 = d.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -e } else { e })
    }

    /// An unsigned term: `c`, `q^e`, `c*q^e` or `cq^e`.
    fn term(&mut self) -> Result<(i64, BigInt), QFieldError> {
        let coeff = match self.digits() {
            Some(d) => Some(d.parse::<BigInt>().map_err(|_| self.err("bad integer"))?),
            None => None,
        };
        let star = coeff.is_some() && self.eat(b'*');
        if self.eat(b'q') {
            let e = self.exponent()?;
            Ok((e, coeff.unwrap_or_else(|| 1.into())))
        } else if star {
            Err(self.err("expected q after *"))
        } else {
            coeff.map(|c| (0, c)).ok_or_else(|| self.err("expected term"))
        }
    }

    fn signed_term(&mut self, first: bool) -> Result<Option<(i64, BigInt)>, QFieldError> {
        let neg = if self.eat(b'-') {
            true
        } else if self.eat(b'+') || first {
            false
        } else {
            return Ok(None);
        };
        let (e, c) = self.term()?;
        Ok(Some((e, if neg { -c } else { c })))
    }

    fn poly(&mut self) -> Result<LaurentZ, QFieldError> {
        let mut terms = vec![self.signed_term(true)?.expect("first term")];
        while let Some(t) = self.signed_term(false)? {
            terms.push(t);
        }
        Ok(LaurentZ::from_terms(terms))
    }

    /// Parenthesized polynomial or a single signed term.
    fn atom(&mut self) -> Result<LaurentZ, QFieldError> {
        if self.eat(b'(') {
            let p = self.poly()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(p)
        } else {
            let t = self.signed_term(true)?.expect("first term");
            Ok(LaurentZ::from_terms([t]))
        }
    }
}

impl FromStr for RatQ {
    type Err = QFieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { src: s.as_bytes(), pos: 0 };
        if cur.peek().is_none() {
            return Err(cur.err("empty input"));
        }
        let num = if cur.peek() == Some(b'(') { cur.atom()? } else { cur.poly()? };
        let den = if cur.eat(b'/') { cur.atom()? } else { LaurentZ::one() };
        if cur.peek().is_some() {
            return Err(cur.err("trailing input"));
        }
        RatQ::from_parts(num, den)
    }
}
