//! Parser for the polynomial grammar.
//!
//! ```text
//! expression := term (("+"|"-") term)*
//! term       := coeff | coeff "*" mono | mono
//! mono       := var ("^" uint)? ("*" var ("^" uint)?)*
//! coeff      := int | int "/" uint
//! ```
//!
//! Variables match `[a-zA-Z][a-zA-Z0-9_]*`, whitespace is insignificant and
//! implicit multiplication is forbidden. One leading sign is accepted on the
//! first term so that printed canonical forms re-parse; signs otherwise come
//! from the `+`/`-` separators.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{Poly, PolyRing};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Number(s));
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(s));
            }
            other => {
                return Err(Error::Syntax(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_uint_u32(&mut self, what: &str) -> Result<u32> {
        match self.next() {
            Some(Token::Number(s)) => s
                .parse::<u32>()
                .map_err(|_| Error::Syntax(format!("{what} out of range: {s}"))),
            other => Err(Error::Syntax(format!("expected {what}, found {other:?}"))),
        }
    }

    fn parse_mono(&mut self) -> Result<Monomial> {
        let mut exps = vec![0u32; self.ring.nvars()];
        loop {
            match self.next() {
                Some(Token::Ident(name)) => {
                    let idx = self
                        .ring
                        .var_index(&name)
                        .ok_or(Error::UnknownVariable(name))?;
                    let e = if self.peek() == Some(&Token::Caret) {
                        self.next();
                        self.parse_uint_u32("exponent")?
                    } else {
                        1
                    };
                    exps[idx] = exps[idx]
                        .checked_add(e)
                        .ok_or_else(|| Error::Syntax("exponent overflow".into()))?;
                }
                other => {
                    return Err(Error::Syntax(format!("expected variable, found {other:?}")));
                }
            }
            if self.peek() == Some(&Token::Star) {
                self.next();
            } else {
                break;
            }
        }
        Ok(Monomial::from_exponents(exps))
    }

    /// One term; `negative` is the sign contributed by the separator.
    fn parse_term(&mut self, negative: bool) -> Result<Poly<F>> {
        let field = self.ring.field().clone();
        let (coeff, saw_coeff) = match self.peek() {
            Some(Token::Number(_)) => {
                let num = match self.next() {
                    Some(Token::Number(s)) => BigInt::parse_bytes(s.as_bytes(), 10)
                        .ok_or_else(|| Error::Syntax(format!("bad integer {s}")))?,
                    _ => unreachable!(),
                };
                let den = if self.peek() == Some(&Token::Slash) {
                    self.next();
                    match self.next() {
                        Some(Token::Number(s)) => BigInt::parse_bytes(s.as_bytes(), 10)
                            .ok_or_else(|| Error::Syntax(format!("bad integer {s}")))?,
                        other => {
                            return Err(Error::Syntax(format!(
                                "expected denominator, found {other:?}"
                            )));
                        }
                    }
                } else {
                    BigInt::from(1)
                };
                (field.from_ratio(&num, &den)?, true)
            }
            _ => (field.one(), false),
        };
        let coeff = if negative { field.neg(&coeff) } else { coeff };

        let mono = if saw_coeff {
            if self.peek() == Some(&Token::Star) {
                self.next();
                self.parse_mono()?
            } else {
                Monomial::one(self.ring.nvars())
            }
        } else {
            self.parse_mono()?
        };
        Ok(Poly::from_terms(self.ring, vec![(mono, coeff)]))
    }

    fn parse_expression(&mut self) -> Result<Poly<F>> {
        let mut negative = false;
        match self.peek() {
            Some(Token::Minus) => {
                self.next();
                negative = true;
            }
            Some(Token::Plus) => {
                self.next();
            }
            _ => {}
        }
        let mut poly = self.parse_term(negative)?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.parse_term(false)?;
                    poly = poly.add(&t)?;
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.parse_term(true)?;
                    poly = poly.add(&t)?;
                }
                None => break,
                other => {
                    return Err(Error::Syntax(format!(
                        "expected `+` or `-`, found {other:?}"
                    )));
                }
            }
        }
        Ok(poly)
    }
}

/// Parses `text` into a canonical polynomial of `ring`.
pub fn poly_parse<F: Field>(text: &str, ring: &Arc<PolyRing<F>>) -> Result<Poly<F>> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Syntax("empty polynomial".into()));
    }
    let mut parser = Parser {
        ring,
        tokens,
        pos: 0,
    };
    parser.parse_expression()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly;

    fn qring(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn parses_difference_of_squares() {
        let r = qring(&["u", "v"]);
        let p = poly_parse("u^2 - v^2", &r).unwrap();
        let u = poly::var(&r, 0);
        let v = poly::var(&r, 1);
        assert_eq!(p, u.pow(2).sub(&v.pow(2)).unwrap());
    }

    #[test]
    fn parses_zero() {
        let r = qring(&["x"]);
        assert!(poly_parse("0", &r).unwrap().is_zero());
    }

    #[test]
    fn rational_coefficient_reduces_mod_p() {
        // 3/2 over F_5 is 3 * 2^{-1} = 3 * 3 = 4
        let r = PolyRing::new(PrimeField::new(5).unwrap(), vec!["t".to_string()]).unwrap();
        let p = poly_parse("3/2*t^4 + t", &r).unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.terms()[0], (Monomial::from_exponents(vec![4]), 4u64));
        assert_eq!(p.terms()[1], (Monomial::from_exponents(vec![1]), 1u64));
    }

    #[test]
    fn characteristic_divides_denominator() {
        let r = PolyRing::new(PrimeField::new(5).unwrap(), vec!["t".to_string()]).unwrap();
        assert!(matches!(
            poly_parse("1/5*t", &r),
            Err(Error::NonPrimeCharacteristicLiteral(_))
        ));
    }

    #[test]
    fn unknown_variable_and_syntax_errors() {
        let r = qring(&["x"]);
        assert!(matches!(
            poly_parse("x + y", &r),
            Err(Error::UnknownVariable(_))
        ));
        assert!(matches!(poly_parse("2 x", &r), Err(Error::Syntax(_))));
        assert!(matches!(poly_parse("x*2", &r), Err(Error::Syntax(_))));
        assert!(matches!(poly_parse("x^", &r), Err(Error::Syntax(_))));
        assert!(matches!(poly_parse("1/0", &r), Err(Error::Syntax(_))));
        assert!(matches!(poly_parse("", &r), Err(Error::Syntax(_))));
    }

    #[test]
    fn print_then_parse_is_identity_on_samples() {
        let r = qring(&["u", "v"]);
        for text in [
            "u^2 - v^2",
            "-u + 1",
            "3/2*u*v - 7*v^3 + 2",
            "0",
            "-1",
            "u",
            "1/3",
        ] {
            let p = poly_parse(text, &r).unwrap();
            let reparsed = poly_parse(&p.to_string(), &r).unwrap();
            assert_eq!(p, reparsed, "round trip failed for {text}");
        }
    }
}
