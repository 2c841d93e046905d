//! Arithmetic over decimal literals and a fixed whitelist of constants and
//! functions: `pi`, `e`, `inf`, `sqrt(...)`, and an optional variable `n`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num(f64),
    Ident(usize, usize),
    Op(char),
    LParen,
    RParen,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
    n: Option<f64>,
}

fn err(src: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("in expression `{src}`: {msg}"))
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' | '-' | '*' | '/' | '^' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
                    i += 1;
                }
                if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                    let mut j = i + 1;
                    if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                        j += 1;
                    }
                    if j < b.len() && b[j].is_ascii_digit() {
                        i = j;
                        while i < b.len() && b[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let v: f64 = src[start..i]
                    .parse()
                    .map_err(|_| err(src, format!("bad number `{}`", &src[start..i])))?;
                out.push(Tok::Num(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push(Tok::Ident(start, i));
            }
            other => return Err(err(src, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<f64> {
        let mut v = self.product()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            self.pos += 1;
            let r = self.product()?;
            v = if c == '+' { v + r } else { v - r };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<f64> {
        let mut v = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek() {
            self.pos += 1;
            let r = self.unary()?;
            v = if c == '*' { v * r } else { v / r };
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<f64> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    // right associative, binds tighter than unary minus on its left
    fn power(&mut self) -> Result<f64> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(base.powf(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<f64> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(v),
            Some(Tok::LParen) => {
                let v = self.sum()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(err(self.src, "missing `)`")),
                }
            }
            Some(Tok::Ident(s, e)) => {
                let name = &self.src[s..e];
                match name {
                    "pi" => Ok(std::f64::consts::PI),
                    "e" => Ok(std::f64::consts::E),
                    "inf" => Ok(f64::INFINITY),
                    "n" => self
                        .n
                        .ok_or_else(|| err(self.src, "`n` is only available in indexed formulas")),
                    "sqrt" => {
                        if self.next() != Some(Tok::LParen) {
                            return Err(err(self.src, "expected `(` after sqrt"));
                        }
                        let v = self.sum()?;
                        if self.next() != Some(Tok::RParen) {
                            return Err(err(self.src, "missing `)`"));
                        }
                        Ok(v.sqrt())
                    }
                    other => Err(err(
                        self.src,
                        format!("unknown name `{other}` (allowed: pi, e, inf, sqrt, n)"),
                    )),
                }
            }
            Some(t) => Err(err(self.src, format!("unexpected {t:?}"))),
            None => Err(err(self.src, "unexpected end")),
        }
    }
}

/// Evaluates `src`, with `n` bound when given.
pub fn eval_with(src: &str, n: Option<f64>) -> Result<f64> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, pos: 0, n };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(err(src, "trailing input"));
    }
    if v.is_nan() {
        return Err(err(src, "value is not a number"));
    }
    Ok(v)
}

pub fn eval(src: &str) -> Result<f64> {
    eval_with(src, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_and_functions() {
        assert_eq!(eval("sqrt(2)").unwrap(), 2f64.sqrt());
        assert_eq!(eval("pi").unwrap(), std::f64::consts::PI);
        assert_eq!(
            eval("2*pi - e").unwrap(),
            2.0 * std::f64::consts::PI - std::f64::consts::E
        );
        assert_eq!(eval("-inf").unwrap(), f64::NEG_INFINITY);
        assert_eq!(eval("1e-2").unwrap(), 0.01);
        assert_eq!(eval("2.5E+1").unwrap(), 25.0);
    }

    #[test]
    fn precedence() {
        assert_eq!(eval("1 + 2 * 3").unwrap(), 7.0);
        assert_eq!(eval("(1 + 2) * 3").unwrap(), 9.0);
        assert_eq!(eval("2^-3").unwrap(), 0.125);
        assert_eq!(eval("-2^2").unwrap(), -4.0);
        assert_eq!(eval("2^3^2").unwrap(), 512.0);
        assert_eq!(eval("1/2/2").unwrap(), 0.25);
    }

    #[test]
    fn indexed() {
        assert_eq!(eval_with("1/n", Some(4.0)).unwrap(), 0.25);
        assert!(eval("1/n").is_err());
    }

    #[test]
    fn rejects_unknown() {
        assert!(eval("exp(1)").is_err());
        assert!(eval("1 +").is_err());
        assert!(eval("(1").is_err());
        assert!(eval("1 2").is_err());
        assert!(eval("sqrt(-1)").is_err());
        assert!(eval("1 $ 2").is_err());
    }
}
