//! Text grammar for ring expressions:
//!
//! ```text
//! expr := term { "x" term }
//! term := "Z" int
//!       | "GF(" int "^" int ")"
//!       | "GF(" int "," int "," poly ")"
//!       | "Zq(" int "," poly ")"
//!       | "Ideal(" expr "," int ")"
//!       | "Ideal(Z" int ",[" int { "," int } "])"
//!       | "(" expr ")"
//! poly := e.g. "x^2+x+1", "2x^3+x", "x"
//! ```
//!
//! Whitespace is allowed between tokens. Errors carry the byte offset at
//! which they were detected.

use super::expr::RingExpr;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Parses a ring expression and checks all of its parameter constraints.
pub fn parse_expr(text: &str) -> Result<RingExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(expr)
}

/// Parses a polynomial such as `x^2+x+1` with coefficients reduced mod `modulus`.
pub fn parse_poly(text: &str, modulus: u64) -> Result<Polynomial> {
    let mut p = Parser { src: text, pos: 0 };
    let poly = p.poly(modulus)?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.syntax("unexpected trailing input in polynomial"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{token}`")))
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.syntax("expected an integer"));
        }
        let value = self.rest()[..digits].parse::<u64>().map_err(|_| self.syntax("integer out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    fn small_int(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).map_err(|_| Error::Syntax { offset: start, message: "exponent too large".into() })
    }

    fn expr(&mut self) -> Result<RingExpr> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.eat("x") || self.eat("\u{d7}") {
                let rhs = self.term()?;
                acc = RingExpr::product(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn checked(&self, start: usize, expr: RingExpr) -> Result<RingExpr> {
        match expr.check() {
            Ok(()) => Ok(expr),
            Err(Error::InvalidParameter(message)) => Err(Error::Semantic { offset: start, message }),
            Err(e) => Err(e),
        }
    }

    fn term(&mut self) -> Result<RingExpr> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.eat("GF(") {
            let p = self.int()?;
            if self.eat("^") {
                let m = self.small_int()?;
                self.expect(")")?;
                return self.checked(start, RingExpr::gf(p, m));
            }
            self.expect(",")?;
            let m = self.small_int()?;
            self.expect(",")?;
            if p < 2 {
                return Err(Error::Semantic { offset: start, message: format!("GF: {p} is not prime") });
            }
            let poly = self.poly(p)?;
            self.expect(")")?;
            return self.checked(start, RingExpr::Gf { p, m, poly: Some(poly) });
        }
        if self.eat("Zq(") {
            let n = self.int()?;
            self.expect(",")?;
            if n < 2 {
                return Err(Error::Semantic {
                    offset: start,
                    message: format!("Zq: modulus {n} must be at least 2"),
                });
            }
            let poly = self.poly(n)?;
            self.expect(")")?;
            return self.checked(start, RingExpr::quotient(n, poly));
        }
        if self.eat("Ideal(") {
            let save = self.pos;
            if let Some(expr) = self.cyclic_idealization()? {
                return self.checked(start, expr);
            }
            self.pos = save;
            let base = self.expr()?;
            self.expect(",")?;
            let t = self.small_int()?;
            self.expect(")")?;
            return self.checked(start, RingExpr::idealize_power(base, t));
        }
        if self.eat("Z") {
            let n = self.int()?;
            return self.checked(start, RingExpr::zn(n));
        }
        Err(self.syntax("expected a ring term"))
    }

    /// `Z<int>,[...])` after `Ideal(`; `None` if the input has the other form.
    fn cyclic_idealization(&mut self) -> Result<Option<RingExpr>> {
        if !self.eat("Z") {
            return Ok(None);
        }
        let Ok(n) = self.int() else { return Ok(None) };
        if !self.eat(",") || !self.eat("[") {
            return Ok(None);
        }
        let mut moduli = vec![self.int()?];
        while self.eat(",") {
            moduli.push(self.int()?);
        }
        self.expect("]")?;
        self.expect(")")?;
        Ok(Some(RingExpr::idealize(n, moduli)))
    }

    fn poly(&mut self, modulus: u64) -> Result<Polynomial> {
        let mut coeffs: Vec<u64> = Vec::new();
        let mut negative = false;
        self.skip_ws();
        if self.eat("-") {
            negative = true;
        }
        loop {
            let (c, e) = self.monomial()?;
            let c = c % modulus;
            let c = if negative { (modulus - c) % modulus } else { c };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = (coeffs[e] + c) % modulus;
            if self.eat("+") {
                negative = false;
            } else if self.eat("-") {
                negative = true;
            } else {
                break;
            }
        }
        Ok(Polynomial::new(coeffs, modulus))
    }

    /// `[int]["*"]"x"["^"int]` or a bare integer; returns (coefficient, exponent).
    fn monomial(&mut self) -> Result<(u64, usize)> {
        self.skip_ws();
        let has_coeff = self.rest().starts_with(|c: char| c.is_ascii_digit());
        let coeff = if has_coeff { self.int()? } else { 1 };
        if has_coeff {
            self.eat("*");
        }
        if self.eat("x") {
            let exp = if self.eat("^") { self.small_int()? as usize } else { 1 };
            Ok((coeff, exp))
        } else if has_coeff {
            Ok((coeff, 0))
        } else {
            Err(self.syntax("expected a polynomial term"))
        }
    }
}
