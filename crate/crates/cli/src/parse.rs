//! Text forms of rationals and constraint polynomials.
//!
//! Rationals are written `p/q`, as integers, or as finite decimals (`0.25` is `1/4`).
//! Polynomials use `+ - * / ^`, parentheses, and variables `x0, x1, ...`.

use std::str::FromStr;

use mahavier_core::{Poly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::CliError;

pub fn parse_scalar(text: &str) -> Result<Scalar, CliError> {
    let s = text.trim();
    let bad = || CliError::Config(format!("not a rational literal: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole = whole.trim_start_matches(['-', '+']);
        if !whole.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{}{}", if whole.is_empty() { "0" } else { whole }, frac);
        let mut numer = BigInt::from_str(&digits).map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Scalar::from_big(numer, denom));
    }
    let r = BigRational::from_str(s).map_err(|_| bad())?;
    Ok(Scalar::from(r))
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Var(usize),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c == 'x' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let index = digits
                .parse()
                .map_err(|_| CliError::Config(format!("bad variable in {text:?}")))?;
            out.push(Token::Var(index));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(CliError::Config(format!("unexpected {c:?} in {text:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    nvars: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> CliError {
        CliError::Config(format!("{what} in polynomial {:?}", self.text))
    }

    fn peek_op(&self, op: char) -> bool {
        self.tokens.get(self.pos) == Some(&Token::Op(op))
    }

    fn expr(&mut self) -> Result<Poly, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = acc.add(&self.term()?);
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, CliError> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                acc = acc.mul(&self.unary()?);
            } else if self.peek_op('/') {
                self.pos += 1;
                let d = self.unary()?;
                let c = constant_of(&d).ok_or_else(|| self.error("division by a non-constant"))?;
                if c.is_zero() {
                    return Err(self.error("division by zero"));
                }
                acc = acc.mul(&Poly::constant(self.nvars, c.recip()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, CliError> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek_op('+') {
            self.pos += 1;
            return self.unary();
        }
        let base = self.atom()?;
        if self.peek_op('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(k)) => {
                    let k: u32 = k.parse().map_err(|_| self.error("bad exponent"))?;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.error("missing exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, CliError> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(s)) => Ok(Poly::constant(self.nvars, parse_scalar(&s)?)),
            Some(Token::Var(i)) if i < self.nvars => Ok(Poly::var(self.nvars, i)),
            Some(Token::Var(i)) => Err(self.error(&format!("variable x{i} out of range"))),
            Some(Token::Op('(')) => {
                let inner = self.expr()?;
                if !self.peek_op(')') {
                    return Err(self.error("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

fn constant_of(p: &Poly) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    if p.degree() > 0 {
        return None;
    }
    p.terms().next().map(|(_, c)| c.clone())
}

pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly, CliError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        nvars,
        text,
    };
    let out = p.expr()?;
    if p.pos != tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

/// Parses `lhs <= rhs` or `lhs >= rhs` into a polynomial that is `<= 0` on the region.
pub fn parse_constraint(text: &str, nvars: usize) -> Result<Poly, CliError> {
    if let Some((l, r)) = text.split_once("<=") {
        return Ok(parse_poly(l, nvars)?.sub(&parse_poly(r, nvars)?));
    }
    if let Some((l, r)) = text.split_once(">=") {
        return Ok(parse_poly(r, nvars)?.sub(&parse_poly(l, nvars)?));
    }
    Err(CliError::Config(format!("constraint needs <= or >=: {text:?}")))
}

pub fn format_constraint(p: &Poly) -> String {
    format!("{p} <= 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use mahavier_core::scalar::q;

    #[test]
    fn literals() {
        assert_eq!(parse_scalar("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_scalar("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_scalar("-2").unwrap(), q(-2, 1));
        assert_eq!(parse_scalar(".5").unwrap(), q(1, 2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("x1 - x0^2", 2).unwrap();
        assert_eq!(p.to_string(), "-x0^2 + x1");
        assert_eq!(parse_poly(&p.to_string(), 2).unwrap(), p);
        let r = parse_poly("(x0 - 1/2)^2 + (x1 - 0.5)^2 - 1/16", 2).unwrap();
        assert_eq!(parse_poly(&r.to_string(), 2).unwrap(), r);
        assert_eq!(parse_poly("3/4*x0", 2).unwrap(), parse_poly("x0*3/4", 2).unwrap());
        assert!(parse_poly("x2", 2).is_err());
        assert!(parse_poly("x0 / x1", 2).is_err());
    }

    #[test]
    fn constraints() {
        let a = parse_constraint("x1 <= x0", 2).unwrap();
        let b = parse_constraint("x0 >= x1", 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_constraint(&format_constraint(&a), 2).unwrap(), a);
    }
}
