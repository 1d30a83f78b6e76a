//! Text syntax for elements and polynomials.
//!
//! ```text
//! poly    := [sign] term (sign term)*
//! term    := coeff ['t' ['^' uint]] | 't' ['^' uint]
//! coeff   := scalar | '(' element ')'
//! element := [sign] scalar (sign scalar)*
//! scalar  := decimal [unit] | unit
//! unit    := 'i' | 'j' | 'k' | 'e1' … 'e7'
//! ```
//!
//! Decimals have no exponent part, so `1e7` is `1·e₇`. Whitespace may appear
//! between tokens. `i`, `j`, `k` are `e₁`, `e₂`, `e₃`; `e4`–`e7` exist only in 𝕆.

use crate::algebra::{AlgebraKind, Element};
use crate::error::{ParseError, Result};
use crate::polynomial::{OrdinaryPolynomial, Side};

pub fn parse_polynomial(src: &str, kind: AlgebraKind, side: Side) -> Result<OrdinaryPolynomial> {
    let mut p = Parser::new(src, kind);
    let coeffs = p.polynomial()?;
    p.end()?;
    OrdinaryPolynomial::new(kind, side, coeffs)
}

pub fn parse_element(src: &str, kind: AlgebraKind) -> Result<Element> {
    let mut p = Parser::new(src, kind);
    p.skip_ws();
    let e = if p.peek() == Some(b'(') {
        p.group()?
    } else {
        p.element()?
    };
    p.end()?;
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    kind: AlgebraKind,
}

fn expected(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, kind: AlgebraKind) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, offset: usize, message: impl Into<String>, exp: &[&str]) -> ParseError {
        ParseError {
            offset,
            message: message.into(),
            expected: expected(exp),
        }
    }

    fn found(&self) -> String {
        match std::str::from_utf8(&self.src[self.pos..]).ok().and_then(|s| s.chars().next()) {
            Some(c) => format!("unexpected `{c}`"),
            None => "unexpected end of input".into(),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error(self.pos, self.found(), &["+", "-", "end of input"]));
        }
        Ok(())
    }

    fn sign(&mut self) -> Option<f64> {
        self.skip_ws();
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(1.0)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-1.0)
            }
            _ => None,
        }
    }

    fn polynomial(&mut self) -> Result<Vec<Element>, ParseError> {
        let mut coeffs: Vec<Element> = Vec::new();
        let mut sign = self.sign().unwrap_or(1.0);
        loop {
            let (c, power) = self.term()?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Element::zero(self.kind));
            }
            coeffs[power] += c * sign;
            match self.sign() {
                Some(s) => sign = s,
                None => return Ok(coeffs),
            }
        }
    }

    fn term(&mut self) -> Result<(Element, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let coeff = match self.peek() {
            Some(b'(') => Some(self.group()?),
            Some(b't') => None,
            _ => match self.scalar()? {
                Some(s) => Some(s),
                None => return Err(self.error(start, self.found(), &["number", "unit", "(", "t"])),
            },
        };
        self.skip_ws();
        if self.peek() != Some(b't') {
            return Ok((coeff.expect("a term without t has a coefficient"), 0));
        }
        self.pos += 1;
        self.skip_ws();
        let power = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            self.uint()?
        } else {
            1
        };
        Ok((coeff.unwrap_or_else(|| Element::one(self.kind)), power))
    }

    fn uint(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(start, self.found(), &["exponent"]));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse()
            .map_err(|_| self.error(start, format!("exponent `{text}` is too large"), &["exponent"]))
    }

    fn group(&mut self) -> Result<Element, ParseError> {
        self.pos += 1;
        let e = self.element()?;
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(self.error(self.pos, self.found(), &["+", "-", ")"]));
        }
        self.pos += 1;
        Ok(e)
    }

    fn element(&mut self) -> Result<Element, ParseError> {
        let mut sign = self.sign().unwrap_or(1.0);
        let mut acc = Element::zero(self.kind);
        loop {
            self.skip_ws();
            let start = self.pos;
            let s = self
                .scalar()?
                .ok_or_else(|| self.error(start, self.found(), &["number", "unit"]))?;
            acc += s * sign;
            match self.sign() {
                Some(next) => sign = next,
                None => return Ok(acc),
            }
        }
    }

    /// `decimal [unit] | unit`; `None` if neither starts here.
    fn scalar(&mut self) -> Result<Option<Element>, ParseError> {
        let value = self.decimal()?;
        self.skip_ws();
        let unit = self.unit()?;
        Ok(match (value, unit) {
            (None, None) => None,
            (v, u) => Some(Element::basis(self.kind, u.unwrap_or(0)) * v.unwrap_or(1.0)),
        })
    }

    fn decimal(&mut self) -> Result<Option<f64>, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let int_digits = self.pos - start;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let frac = self.pos;
            while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                self.pos += 1;
            }
            if int_digits == 0 && self.pos == frac {
                return Err(self.error(frac, self.found(), &["digit"]));
            }
        }
        if self.pos == start {
            return Ok(None);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v: f64 = text
            .parse()
            .map_err(|_| self.error(start, format!("malformed number `{text}`"), &["number"]))?;
        Ok(Some(v))
    }

    fn unit(&mut self) -> Result<Option<usize>, ParseError> {
        let start = self.pos;
        let index = match self.peek() {
            Some(b'i') => 1,
            Some(b'j') => 2,
            Some(b'k') => 3,
            Some(b'e') => {
                let digit = self.src.get(self.pos + 1).copied();
                match digit {
                    Some(d @ b'1'..=b'7') => {
                        self.pos += 1;
                        usize::from(d - b'0')
                    }
                    _ => return Err(self.error(start + 1, "expected a unit index 1 to 7", &["1", "2", "3", "4", "5", "6", "7"])),
                }
            }
            _ => return Ok(None),
        };
        self.pos += 1;
        if index >= self.kind.dim() {
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii unit");
            let valid: Vec<String> = match self.kind {
                AlgebraKind::Quaternion => expected(&["i", "j", "k", "e1", "e2", "e3"]),
                AlgebraKind::Octonion => (1..8).map(|i| format!("e{i}")).collect(),
            };
            return Err(ParseError {
                offset: start,
                message: format!("unit `{name}` does not exist in {}", self.kind.symbol()),
                expected: valid,
            });
        }
        Ok(Some(index))
    }
}
