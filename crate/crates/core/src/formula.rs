//! A small exact evaluator for polynomial expressions in one variable `N`,
//! written the way printed dimension formulas are, e.g.
//! `N^24-1-(N-1)(N^3-1)` or `N^24/2^12-1-(N/2-1)(N^3-1)`.
//!
//! Juxtaposition multiplies; `^` takes a nonnegative integer exponent.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("unexpected {found:?} at offset {offset}")]
    Unexpected { found: String, offset: usize },
    #[error("exponent must be a nonnegative integer")]
    BadExponent,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FormulaError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            ' ' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Token::Num(s.parse().expect("digits"))));
                continue;
            }
            'N' => Token::Var,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            other => {
                return Err(FormulaError::Unexpected {
                    found: other.to_string(),
                    offset: i,
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    n: BigRational,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn unexpected(&self) -> FormulaError {
        match self.tokens.get(self.pos) {
            Some((offset, t)) => FormulaError::Unexpected {
                found: format!("{t:?}"),
                offset: *offset,
            },
            None => FormulaError::Unexpected {
                found: "end of input".into(),
                offset: usize::MAX,
            },
        }
    }

    fn expr(&mut self) -> Result<BigRational, FormulaError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BigRational, FormulaError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc *= self.unary()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(FormulaError::DivisionByZero);
                    }
                    acc /= d;
                }
                Some(Token::Open | Token::Var | Token::Num(_)) => acc *= self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BigRational, FormulaError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BigRational, FormulaError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.atom()?;
        if !e.is_integer() {
            return Err(FormulaError::BadExponent);
        }
        let e = e.to_integer().to_u32().ok_or(FormulaError::BadExponent)?;
        Ok(num_traits::pow(base, e as usize))
    }

    fn atom(&mut self) -> Result<BigRational, FormulaError> {
        let value = match self.peek() {
            Some(Token::Num(v)) => BigRational::from_integer(v.clone()),
            Some(Token::Var) => self.n.clone(),
            Some(Token::Open) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.unexpected());
                }
                v
            }
            _ => return Err(self.unexpected()),
        };
        self.pos += 1;
        Ok(value)
    }
}

/// Evaluates `text` at `N = n` exactly.
pub fn evaluate(text: &str, n: &BigRational) -> Result<BigRational, FormulaError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        n: n.clone(),
    };
    let v = p.expr()?;
    if p.pos != tokens.len() {
        return Err(p.unexpected());
    }
    Ok(v)
}

/// Evaluates at an integer `N`; `None` if the result is not an integer.
pub fn evaluate_integer(text: &str, n: u64) -> Result<Option<BigInt>, FormulaError> {
    let v = evaluate(text, &BigRational::from_integer(BigInt::from(n)))?;
    Ok(v.is_integer().then(|| v.to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn at(text: &str, n: u64) -> BigInt {
        evaluate_integer(text, n).unwrap().unwrap()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(at("N^3-1", 2), BigInt::from(7));
        assert_eq!(at("(N-1)(N^3-1)", 3), BigInt::from(52));
        assert_eq!(at("N^6/27-1", 6), BigInt::from(1727));
        assert_eq!(at("-(N-1)N(N-1)", 3), BigInt::from(-12));
        assert_eq!(at("2*3+4", 0), BigInt::from(10));
        assert_eq!(at("N^(1+1)", 5), BigInt::from(25));
        assert_eq!(at("((N/2)^3-N/2)(N-1)", 4), BigInt::from(18));
    }

    #[test]
    fn non_integer_and_errors() {
        assert_eq!(evaluate_integer("N/2", 3).unwrap(), None);
        assert!(matches!(evaluate("N^", &BigRational::one()), Err(FormulaError::Unexpected { .. })));
        assert!(matches!(evaluate("N^(1/2)", &BigRational::one()), Err(FormulaError::BadExponent)));
        assert!(matches!(evaluate("1/(N-1)", &BigRational::one()), Err(FormulaError::DivisionByZero)));
        assert!(matches!(evaluate("(N", &BigRational::one()), Err(FormulaError::Unexpected { .. })));
        assert!(matches!(evaluate("N x", &BigRational::one()), Err(FormulaError::Unexpected { .. })));
    }
}
