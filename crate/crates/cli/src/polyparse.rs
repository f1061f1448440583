//! Recursive-descent parser for polynomial literals.
//!
//! Grammar (whitespace ignored between tokens):
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := atom ('^' nat)?
//! atom    := rational | ident | '(' expr ')'
//! rational:= nat ('/' nat)?
//! ident   := alpha (alnum | '_')*
//! ```
//!
//! so `3*h^2 - 1/2*h*e` parses with exact rational literals. A parse error
//! reports the byte offset into the literal.

use bcblow_core::poly::Poly;
use bcblow_core::rat::{BigInt, Rational};

/// Parse failure with the offset of the offending character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [&'a str],
    degrees: &'a [u32],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.error(format!(
                "expected '{}', found '{}'",
                c as char, found as char
            ))),
            None => Err(self.error(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn error(&self, msg: String) -> ParseError {
        ParseError { pos: self.pos, msg }
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number".to_string()));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("digits");
        Ok(text.parse::<BigInt>().expect("digits parse"))
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let numer = self.nat()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom = self.nat()?;
            if denom == BigInt::from(0) {
                return Err(self.error("zero denominator".to_string()));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an identifier".to_string()));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii ident")
            .to_string())
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(Poly::constant(self.names.len(), r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let pos = self.pos;
                let name = self.ident()?;
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Poly::var(i, self.names.len(), self.degrees)),
                    None => Err(ParseError {
                        pos,
                        msg: format!("unknown generator '{name}'"),
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input".to_string())),
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.nat()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large".to_string()))?;
            Ok(base.pow_truncated(e, u32::MAX))
        } else {
            Ok(base)
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
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
}

/// Parses a polynomial literal against a generator table.
pub fn parse_poly(src: &str, names: &[&str], degrees: &[u32]) -> Result<Poly, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        names,
        degrees,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input after expression".to_string()));
    }
    Ok(poly)
}

/// Parses a Gaussian-rational literal: `a`, `b*i`, `a+b*i`, `a-b*i`, with
/// `a`, `b` rational literals and `i` the imaginary unit.
pub fn parse_gauss(src: &str) -> Result<bcblow_core::nilbc::GaussQ, ParseError> {
    use bcblow_core::nilbc::GaussQ;
    let names = ["i"];
    let degrees = [1u32];
    let poly = parse_poly(src, &names, &degrees)?;
    let mut re = Rational::from_integer(BigInt::from(0));
    let mut im = re.clone();
    for (m, c) in poly.terms() {
        match m.exps()[0] {
            0 => re = c.clone(),
            1 => im = c.clone(),
            _ => {
                return Err(ParseError {
                    pos: 0,
                    msg: "powers of i beyond the first are not supported".to_string(),
                })
            }
        }
    }
    Ok(GaussQ::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bcblow_core::poly::Monomial;
    use bcblow_core::rat::{rat, rat_int};

    const NAMES: [&str; 2] = ["h", "e"];
    const DEGREES: [u32; 2] = [1, 1];

    fn parse(src: &str) -> Poly {
        parse_poly(src, &NAMES, &DEGREES).unwrap()
    }

    #[test]
    fn literals_round_trip() {
        let p = parse("3*h^2 - 1/2*h*e");
        assert_eq!(p.coeff(&Monomial::new(vec![2, 0], &DEGREES)), rat_int(3));
        assert_eq!(p.coeff(&Monomial::new(vec![1, 1], &DEGREES)), rat(-1, 2));
        assert_eq!(p.render(&NAMES), "3*h^2 - 1/2*h*e");
    }

    #[test]
    fn parenthesized_and_unary_minus() {
        let p = parse("-(h + e)^2");
        assert_eq!(p.coeff(&Monomial::new(vec![1, 1], &DEGREES)), rat_int(-2));
        let q = parse("- 2 * h + 1");
        assert_eq!(q.constant_term(), rat_int(1));
    }

    #[test]
    fn rational_constants() {
        let p = parse("2/4");
        assert_eq!(p.constant_term(), rat(1, 2));
        assert!(parse_poly("1/0", &NAMES, &DEGREES).is_err());
    }

    #[test]
    fn error_positions() {
        let err = parse_poly("3*h +", &NAMES, &DEGREES).unwrap_err();
        assert_eq!(err.pos, 5);
        let err = parse_poly("3*q", &NAMES, &DEGREES).unwrap_err();
        assert_eq!(err.pos, 2);
        assert!(err.msg.contains("unknown generator"));
        let err = parse_poly("h e", &NAMES, &DEGREES).unwrap_err();
        assert!(err.msg.contains("trailing input"));
    }

    #[test]
    fn gaussian_literals() {
        use bcblow_core::nilbc::GaussQ;
        assert_eq!(parse_gauss("-1").unwrap(), GaussQ::from_int(-1));
        assert_eq!(
            parse_gauss("1/2 + 3*i").unwrap(),
            GaussQ::new(rat(1, 2), rat_int(3))
        );
        assert_eq!(
            parse_gauss("-2*i").unwrap(),
            GaussQ::new(rat_int(0), rat_int(-2))
        );
    }
}
