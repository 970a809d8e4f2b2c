//! Expression parser for polynomials and coefficient constants.
//!
//! Grammar (ASCII, explicit `*` for products):
//!   expr   := term { ('+' | '-') term }
//!   term   := unary { ('*' | '/') unary }
//!   unary  := '-' unary | power
//!   power  := atom [ '^' integer ]
//!   atom   := integer | identifier | '(' expr ')'
//!
//! Identifiers resolve to declared variables; the uniformizer symbol
//! ("p" for mixed characteristic, "t" in equicharacteristic zero) is
//! reserved and resolves to the constant π of the coefficient field.
//! Division is evaluated in the fraction field; `parse_poly` demands that
//! the final denominator is a constant.

use super::{FracPoly, Poly, VarSet};
use crate::coeff::{Coeff, CoeffModel, DvrModel};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::Num;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigUint),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = BigUint::from_str_radix(&digits, 10)
                    .map_err(|e| Error::Parse(format!("bad integer literal: {}", e)))?;
                out.push(Token::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{}'", other)));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a VarSet,
    model: CoeffModel,
    pi: Option<(&'static str, Coeff)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {:?}, found {:?}", t, got))),
        }
    }

    fn expr(&mut self) -> Result<FracPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FracPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc = acc.div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FracPoly> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<FracPoly> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            match self.bump() {
                Some(Token::Int(e)) => {
                    // Exponents of parsed expressions are kept exact; a
                    // single-term base takes arbitrary-precision powers.
                    if let Some(_single) = base.num.as_single_term() {
                        if base.den.as_constant().is_some() {
                            let num = base.num.pow_big(&e);
                            let den = base.den.pow_big(&e);
                            return FracPoly::new(num, den);
                        }
                    }
                    let small: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(small))
                }
                got => Err(Error::Parse(format!("expected exponent, found {:?}", got))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<FracPoly> {
        match self.bump() {
            Some(Token::Int(n)) => {
                let c = self.model.from_bigint(&BigInt::from(n));
                Ok(FracPoly::from_poly(Poly::constant(
                    self.model.clone(),
                    self.vars.len(),
                    c,
                )))
            }
            Some(Token::Ident(name)) => {
                if let Some(i) = self.vars.index_of(&name) {
                    return Ok(FracPoly::from_poly(Poly::var(
                        self.model.clone(),
                        self.vars.len(),
                        i,
                    )));
                }
                if let Some((sym, val)) = &self.pi {
                    if name == *sym {
                        return Ok(FracPoly::from_poly(Poly::constant(
                            self.model.clone(),
                            self.vars.len(),
                            val.clone(),
                        )));
                    }
                }
                Err(Error::Parse(format!("unknown symbol '{}'", name)))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            got => Err(Error::Parse(format!("unexpected token {:?}", got))),
        }
    }
}

fn parse_with(
    s: &str,
    vars: &VarSet,
    model: CoeffModel,
    pi: Option<(&'static str, Coeff)>,
) -> Result<FracPoly> {
    let tokens = lex(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
        model,
        pi,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(e)
}

/// Parse a polynomial over the fraction field K of a DVR model, with the
/// uniformizer spelled "p" (mixed) or "t" (equicharacteristic zero).
pub fn parse_poly(s: &str, vars: &VarSet, dvr: &DvrModel) -> Result<Poly> {
    if vars.index_of(dvr.pi_symbol()).is_some() {
        return Err(Error::Parse(format!(
            "'{}' is reserved for the uniformizer",
            dvr.pi_symbol()
        )));
    }
    let frac = parse_with(
        s,
        vars,
        dvr.fraction_model(),
        Some((dvr.pi_symbol(), dvr.uniformizer())),
    )?;
    frac.into_poly()
}

/// Parse a polynomial over a bare coefficient model (no uniformizer symbol).
pub fn parse_poly_in(s: &str, vars: &VarSet, model: &CoeffModel) -> Result<Poly> {
    parse_with(s, vars, model.clone(), None)?.into_poly()
}

/// Parse a fraction of polynomials over a bare coefficient model.
pub fn parse_fracpoly(s: &str, vars: &VarSet, model: &CoeffModel) -> Result<FracPoly> {
    parse_with(s, vars, model.clone(), None)
}

/// Parse a coefficient constant of K, e.g. "12", "7/3", "t^3/(1+t)".
pub fn parse_constant(s: &str, dvr: &DvrModel) -> Result<Coeff> {
    let vars = VarSet::new(Vec::<String>::new()).expect("empty variable set");
    let p = parse_poly(s, &vars, dvr)?;
    p.as_constant()
        .ok_or_else(|| Error::Parse("expected a constant".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reserved_pi_symbol() {
        let dvr = DvrModel::mixed(2).unwrap();
        let vars = VarSet::new(vec!["p", "x"]).unwrap();
        assert!(parse_poly("p*x", &vars, &dvr).is_err());
    }

    #[test]
    fn constant_fractions() {
        let dvr = DvrModel::mixed(3).unwrap();
        let c = parse_constant("7/3", &dvr).unwrap();
        match c {
            Coeff::Q(r) => assert_eq!(r.to_string(), "7/3"),
            _ => panic!("expected rational"),
        }
    }

    #[test]
    fn nonconstant_denominator_rejected() {
        let dvr = DvrModel::mixed(2).unwrap();
        let vars = VarSet::new(vec!["x"]).unwrap();
        assert!(parse_poly("1/x", &vars, &dvr).is_err());
        assert!(parse_poly("x/2", &vars, &dvr).is_ok());
    }

    #[test]
    fn unknown_symbol_rejected() {
        let dvr = DvrModel::mixed(2).unwrap();
        let vars = VarSet::new(vec!["x"]).unwrap();
        assert!(matches!(
            parse_poly("x + q", &vars, &dvr),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn big_exponent_parses() {
        let dvr = DvrModel::mixed(2).unwrap();
        let vars = VarSet::new(vec!["x"]).unwrap();
        let p = parse_poly("x^100000000000000000000000", &vars, &dvr).unwrap();
        assert_eq!(p.num_terms(), 1);
    }
}
