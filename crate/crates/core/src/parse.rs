//! Text form of polynomials.
//!
//! Grammar (no implicit multiplication; `xy` is a single identifier):
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := uint | ident | '(' expr ')'
//! ident  := [a-zA-Z][a-zA-Z0-9]*
//! ```
//!
//! The leading unary minus is a small convenience on top of the binary forms;
//! printed canonical output never needs it because coefficients sit in [0, p).

use std::error::Error;
use std::fmt;

use crate::field::PrimeField;
use crate::monomial::VarContext;
use crate::poly::{MultiPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem starts.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    field: PrimeField,
    ctx: &'a VarContext,
}

/// Parse `text` into a polynomial over the given field and variable context.
pub fn parse_poly(
    text: &str,
    field: PrimeField,
    ctx: &VarContext,
) -> Result<MultiPoly, ParseError> {
    let mut p = Parser { input: text.as_bytes(), pos: 0, field, ctx };
    p.skip_ws();
    if p.at_end() {
        return err(p.pos, "empty input");
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return err(p.pos, format!("unexpected `{}`", p.peek_char()));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.input.len()
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.peek().map(char::from).unwrap_or(' ')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn lift(&self, at: usize, e: PolyError) -> ParseError {
        ParseError { position: at, message: e.to_string() }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        self.skip_ws();
        let negate_first = self.eat(b'-');
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = acc.add(&rhs).map_err(|e| self.lift(at, e))?;
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = acc.sub(&rhs).map_err(|e| self.lift(at, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = acc.mul(&rhs).map_err(|e| self.lift(at, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        self.skip_ws();
        let at = self.pos;
        if self.eat(b'^') {
            let n = self.uint()?;
            if n > u32::MAX as u64 {
                return err(at + 1, "exponent exceeds u32 range");
            }
            base.pow(n).map_err(|e| self.lift(at, e))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return err(self.pos, "expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(MultiPoly::constant(self.field, self.ctx, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                match self.ctx.index_of(&name) {
                    Some(i) => Ok(MultiPoly::var(self.field, self.ctx, i)
                        .expect("index from context lookup")),
                    None => err(at, format!("unknown variable `{name}`")),
                }
            }
            Some(c) => err(at, format!("unexpected `{}`", char::from(c))),
            None => err(at, "unexpected end of input"),
        }
    }

    /// Unsigned integer literal, reduced mod p digit by digit so arbitrarily
    /// long literals cannot overflow. The exponent caller re-reads the raw
    /// value, so track it saturating as well.
    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return err(self.pos, "expected a number");
        }
        let mut value: u64 = 0;
        while let Some(c) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            value = value
                .saturating_mul(10)
                .saturating_add((c - b'0') as u64);
            self.pos += 1;
        }
        Ok(value)
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.input[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn ring(p: u64, vars: &[&str]) -> (PrimeField, VarContext) {
        (
            PrimeField::new(p).unwrap(),
            VarContext::new(vars.to_vec()).unwrap(),
        )
    }

    #[test]
    fn linear_with_reduction() {
        let (f, ctx) = ring(3, &["x", "y"]);
        // 2*x - 5 = 2x + 1 mod 3.
        let p = parse_poly("2*x - 5", f, &ctx).unwrap();
        assert_eq!(p.to_string(), "2*x + 1");
    }

    #[test]
    fn minor_product_mod_3() {
        let (f, ctx) = ring(3, &["u", "v", "w", "x", "y", "z"]);
        let p = parse_poly("(v*z - w*y)*(w*x - u*z)", f, &ctx).unwrap();
        // vzwx - uvz^2 - w^2xy + uwyz with signs reduced mod 3.
        let c = |exps: &[u32]| p.coeff(&Monomial::new(exps.to_vec()));
        assert_eq!(c(&[0, 1, 1, 1, 0, 1]), 1); // v w x z
        assert_eq!(c(&[1, 1, 0, 0, 0, 2]), 2); // -u v z^2
        assert_eq!(c(&[0, 0, 2, 1, 1, 0]), 2); // -w^2 x y
        assert_eq!(c(&[1, 0, 1, 0, 1, 1]), 1); // u w y z
        assert_eq!(p.num_terms(), 4);
    }

    #[test]
    fn powers_and_parens() {
        let (f, ctx) = ring(5, &["x", "y"]);
        let p = parse_poly("(x + y)^4", f, &ctx).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![2, 2])), 1); // 6 mod 5
        let q = parse_poly("x^2^...", f, &ctx);
        assert!(q.is_err());
    }

    #[test]
    fn no_implicit_multiplication() {
        let (f, ctx) = ring(3, &["x", "y"]);
        // `xy` must be read as one (unknown) identifier, not x*y.
        let e = parse_poly("xy + 1", f, &ctx).unwrap_err();
        assert!(e.message.contains("unknown variable `xy`"), "{e}");
        assert_eq!(e.position, 0);
        // And `2x` is a number followed by junk.
        assert!(parse_poly("2x", f, &ctx).is_err());
    }

    #[test]
    fn error_positions() {
        let (f, ctx) = ring(3, &["x"]);
        let e = parse_poly("x + ", f, &ctx).unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_poly("(x + 1", f, &ctx).unwrap_err();
        assert_eq!(e.position, 6);
        let e = parse_poly("x + q", f, &ctx).unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse_poly("", f, &ctx).is_err());
        assert!(parse_poly("   ", f, &ctx).is_err());
    }

    #[test]
    fn unary_minus_front_only() {
        let (f, ctx) = ring(7, &["x"]);
        let p = parse_poly("-x + 3", f, &ctx).unwrap();
        assert_eq!(p.to_string(), "6*x + 3");
        // -(x - 3) = -x + 3, the same polynomial.
        let q = parse_poly("-(x - 3)", f, &ctx).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn huge_literals_reduce() {
        let (f, ctx) = ring(13, &["x"]);
        let p = parse_poly("184467440737095516170 + x", f, &ctx).unwrap();
        // Value only matters mod 13; saturation must not panic.
        assert!(p.num_terms() <= 2);
    }

    #[test]
    fn print_parse_roundtrip() {
        let (f, ctx) = ring(7, &["x", "y", "z"]);
        for text in [
            "3*x^2*y + y^2 + x + 5",
            "x^3 + y^3 + z^3",
            "6*x*y*z + 1",
            "0",
            "5",
        ] {
            let p = parse_poly(text, f, &ctx).unwrap();
            let printed = p.to_string();
            let q = parse_poly(&printed, f, &ctx).unwrap();
            assert_eq!(p, q, "roundtrip of `{text}` via `{printed}`");
            // Canonical text is a fixed point of print -> parse -> print.
            assert_eq!(q.to_string(), printed);
        }
    }
}
