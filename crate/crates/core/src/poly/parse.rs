//! Text format for polynomials and rational functions in X.
//!
//! Grammar (whitespace ignored, `x` accepted for `X`):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary | implicit)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" ["-"] integer)?
//! atom   := integer | "X" | "(" expr ")"
//! ```
//!
//! Implicit multiplication covers forms like `3X^2`, `2(X+1)` or `(X+1)X`.

use num_bigint::BigInt;

use super::{IntPoly, RatFunc};
use crate::error::{parse_err, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Token::Int(digits.parse().expect("ascii digits")));
            }
            'X' | 'x' => out.push(Token::Var),
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '/' => out.push(Token::Slash),
            '^' => out.push(Token::Caret),
            '(' => out.push(Token::LParen),
            ')' => out.push(Token::RParen),
            other => return Err(parse_err(input, format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    if out.is_empty() {
        return Err(parse_err(input, "empty expression"));
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: &str) -> crate::error::Error {
        parse_err(self.input, format!("{msg} at token {}", self.pos))
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
                }
                Some(Token::Var) | Some(Token::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.next() {
            Some(Token::Int(n)) => {
                i64::try_from(n).map_err(|_| self.err("exponent too large"))?
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        if e > 1_000_000 {
            return Err(self.err("exponent too large"));
        }
        base.powi(if negative { -e } else { e })
            .map_err(|_| self.err("negative power of zero"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.next() {
            Some(Token::Int(n)) => Ok(RatFunc::from_poly(IntPoly::constant(n))),
            Some(Token::Var) => Ok(RatFunc::from_poly(IntPoly::x())),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected number, X or '('")),
        }
    }
}

/// Parses any rational expression in X into a normalized [`RatFunc`].
pub fn parse_expression(input: &str) -> Result<RatFunc> {
    let mut parser = Parser {
        input,
        tokens: tokenize(input)?,
        pos: 0,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(value)
}

/// Renders (degree, coefficient text) pairs in descending degree order,
/// e.g. `3*X^4+6*X^2-1`. Zero coefficients must already be filtered out.
pub(crate) fn format_terms(mut terms: Vec<(usize, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out = String::new();
    for (idx, (deg, coeff)) in terms.iter().enumerate() {
        let (negative, mag) = match coeff.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, coeff.as_str()),
        };
        if negative {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        if *deg == 0 {
            out.push_str(mag);
            continue;
        }
        if mag != "1" {
            out.push_str(mag);
            out.push('*');
        }
        out.push('X');
        if *deg > 1 {
            out.push('^');
            out.push_str(&deg.to_string());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_canonical() {
        for s in ["3*X^4+6*X^2-1", "0", "-X", "X^2-X+1", "-7", "12*X-3"] {
            let f: IntPoly = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn flexible_input() {
        let f: IntPoly = " 3 X^4 + 6*x^2 - 1 ".parse().unwrap();
        assert_eq!(f.to_string(), "3*X^4+6*X^2-1");
        let g: IntPoly = "-(X+1)^2 + 2(X+1)".parse().unwrap();
        assert_eq!(g.to_string(), "-X^2+1");
        let h: IntPoly = "--X".parse().unwrap();
        assert_eq!(h.to_string(), "X");
        assert_eq!("-X^2".parse::<IntPoly>().unwrap().to_string(), "-X^2");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "X+", "3**X", "X^Y", "(X+1", "X)", "2^-1*X^1.5", "X/2"] {
            assert!(s.parse::<IntPoly>().is_err(), "{s}");
        }
    }
}
