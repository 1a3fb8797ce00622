//! Parser for polynomial expressions such as `x^2*(x+1)` or `x(x + 2) - 1`.
//!
//! Grammar (whitespace ignored, `*` optional between factors):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power ('*'? power)*
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | 'a' | '(' expr ')'
//! ```
//!
//! Integers are reduced mod p; `a` is the generator of F_q over F_p.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
    field: &'s Field,
}

impl<'s> Parser<'s> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'(' | b'x' | b'a' | b'0'..=b'9') => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if e > 4096 {
                return self.err("exponent too large");
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x(self.field))
            }
            Some(b'a') => {
                self.pos += 1;
                if self.field.k() == 1 {
                    return self.err("generator `a` is only defined for extension fields");
                }
                Ok(Poly::constant(self.field, self.field.generator()))
            }
            Some(b'0'..=b'9') => {
                let n = self.integer()?;
                Ok(Poly::constant(self.field, self.field.from_int((n % self.field.p() as u64) as i64)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial expression over `field`.
pub fn parse_poly(field: &Field, src: &str) -> Result<Poly> {
    let mut parser = Parser { src: src.as_bytes(), pos: 0, field };
    let poly = parser.expr()?;
    if parser.peek().is_some() {
        return parser.err("trailing input");
    }
    Ok(poly)
}

/// Parses a comma-separated list of polynomials; empty input gives an empty list.
///
/// Commas inside parentheses do not split.
pub fn parse_poly_list(field: &Field, src: &str) -> Result<Vec<Poly>> {
    let trimmed = src.trim().trim_start_matches('[').trim_end_matches(']');
    if trimmed.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in trimmed.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&trimmed[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&trimmed[start..]);
    parts.into_iter().map(|s| parse_poly(field, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_table_notation() {
        let f3 = Field::new(3, 1).unwrap();
        let g = parse_poly(&f3, "x^2*(x+1)").unwrap();
        assert_eq!(g, Poly::from_ints(&f3, &[0, 0, 1, 1]));
        assert_eq!(parse_poly(&f3, "x(x + 1)").unwrap(), Poly::from_ints(&f3, &[0, 1, 1]));
        assert_eq!(parse_poly(&f3, "x - 1").unwrap(), Poly::from_ints(&f3, &[2, 1]));
        assert_eq!(parse_poly(&f3, "-x + 4").unwrap(), Poly::from_ints(&f3, &[1, 2]));
        assert_eq!(parse_poly(&f3, "2x^2").unwrap(), Poly::from_ints(&f3, &[0, 0, 2]));
        assert_eq!(parse_poly(&f3, "1").unwrap(), Poly::one(&f3));
    }

    #[test]
    fn parses_generator_in_extension() {
        let f4 = Field::new(2, 2).unwrap();
        let g = parse_poly(&f4, "x + a").unwrap();
        assert_eq!(g.coeff(0), f4.generator());
        assert!(parse_poly(&Field::new(3, 1).unwrap(), "x + a").is_err());
    }

    #[test]
    fn rejects_malformed() {
        let f3 = Field::new(3, 1).unwrap();
        for bad in ["", "x +", "(x", "x)", "y", "x^", "x^^2"] {
            assert!(matches!(parse_poly(&f3, bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn lists() {
        let f3 = Field::new(3, 1).unwrap();
        assert!(parse_poly_list(&f3, "").unwrap().is_empty());
        assert!(parse_poly_list(&f3, "[]").unwrap().is_empty());
        let l = parse_poly_list(&f3, "1, x, x(x+1)").unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l[2], Poly::from_ints(&f3, &[0, 1, 1]));
    }
}
