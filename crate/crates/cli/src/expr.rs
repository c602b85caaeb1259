//! A tiny arithmetic expression grammar for field and point
//! specifications on the command line.
//!
//! Expressions are built from rational literals, one variable letter
//! (`a` for the field generator, `x` in minimal polynomials), `+ - * /`,
//! integer `^`, unary minus and parentheses. The same AST evaluates
//! either to a number field element or to a univariate polynomial over
//! the rationals.

use num_traits::{Signed, Zero};
use selmer_core::numfield::{NumberField, NumberFieldElement};
use selmer_core::rational::{parse_rational, Rational};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
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
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Token::Num(parse_rational(&lit)?));
            }
            c if c.is_ascii_alphabetic() => {
                out.push(Token::Var);
                i += 1;
            }
            other => return Err(format!("unexpected character {other:?} in expression")),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
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

    fn expect(&mut self, t: &Token) -> Result<(), String> {
        match self.next() {
            Some(got) if got == *t => Ok(()),
            other => Err(format!("expected {t:?}, found {other:?}")),
        }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr, String> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<Expr, String> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    self.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr, String> {
        if self.peek() == Some(&Token::Minus) {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    // power := atom ('^' nat)?
    fn power(&mut self) -> Result<Expr, String> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Num(r)) if r.is_integer() && !r.numer().is_negative() => {
                    let e: u32 = r
                        .numer()
                        .to_string()
                        .parse()
                        .map_err(|_| "exponent too large".to_string())?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                other => {
                    return Err(format!(
                        "exponent must be a nonnegative integer, found {other:?}"
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, String> {
        match self.next() {
            Some(Token::Num(r)) => Ok(Expr::Num(r)),
            Some(Token::Var) => Ok(Expr::Var),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(&Token::RParen)?;
                Ok(e)
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, String> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing tokens in expression {s:?}"));
    }
    Ok(e)
}

/// Evaluates an expression to an element of the given field; the
/// variable stands for the field generator.
pub fn eval_element(e: &Expr, field: &Arc<NumberField>) -> Result<NumberFieldElement, String> {
    match e {
        Expr::Num(r) => Ok(field.element_from_rational(r.clone())),
        Expr::Var => Ok(field.generator()),
        Expr::Neg(inner) => Ok(eval_element(inner, field)?.neg()),
        Expr::Add(a, b) => eval_element(a, field)?
            .add(&eval_element(b, field)?)
            .map_err(|e| e.to_string()),
        Expr::Sub(a, b) => eval_element(a, field)?
            .sub(&eval_element(b, field)?)
            .map_err(|e| e.to_string()),
        Expr::Mul(a, b) => eval_element(a, field)?
            .mul(&eval_element(b, field)?)
            .map_err(|e| e.to_string()),
        Expr::Div(a, b) => eval_element(a, field)?
            .div(&eval_element(b, field)?)
            .map_err(|e| e.to_string()),
        Expr::Pow(a, e) => Ok(eval_element(a, field)?.pow(u64::from(*e))),
    }
}

/// Evaluates an expression to a polynomial over Q (coefficients lowest
/// degree first); division is only allowed by constants.
pub fn eval_polynomial(e: &Expr) -> Result<Vec<Rational>, String> {
    match e {
        Expr::Num(r) => Ok(vec![r.clone()]),
        Expr::Var => Ok(vec![Rational::zero(), Rational::from_integer(1.into())]),
        Expr::Neg(inner) => Ok(eval_polynomial(inner)?.iter().map(|c| -c).collect()),
        Expr::Add(a, b) => {
            let (pa, pb) = (eval_polynomial(a)?, eval_polynomial(b)?);
            let n = pa.len().max(pb.len());
            Ok((0..n)
                .map(|i| {
                    pa.get(i).cloned().unwrap_or_else(Rational::zero)
                        + pb.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect())
        }
        Expr::Sub(a, b) => {
            let (pa, pb) = (eval_polynomial(a)?, eval_polynomial(b)?);
            let n = pa.len().max(pb.len());
            Ok((0..n)
                .map(|i| {
                    pa.get(i).cloned().unwrap_or_else(Rational::zero)
                        - pb.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect())
        }
        Expr::Mul(a, b) => {
            let (pa, pb) = (eval_polynomial(a)?, eval_polynomial(b)?);
            let mut out = vec![Rational::zero(); pa.len() + pb.len() - 1];
            for (i, x) in pa.iter().enumerate() {
                for (j, y) in pb.iter().enumerate() {
                    out[i + j] = &out[i + j] + x * y;
                }
            }
            Ok(out)
        }
        Expr::Div(a, b) => {
            let pb = eval_polynomial(b)?;
            if pb.len() > 1 && pb[1..].iter().any(|c| !c.is_zero()) {
                return Err("polynomial division is not allowed in field specs".into());
            }
            let c = pb.first().cloned().unwrap_or_else(Rational::zero);
            if c.is_zero() {
                return Err("division by zero in field spec".into());
            }
            Ok(eval_polynomial(a)?.iter().map(|x| x / &c).collect())
        }
        Expr::Pow(a, e) => {
            let pa = eval_polynomial(a)?;
            let mut acc = vec![Rational::from_integer(1.into())];
            for _ in 0..*e {
                let mut out = vec![Rational::zero(); acc.len() + pa.len() - 1];
                for (i, x) in acc.iter().enumerate() {
                    for (j, y) in pa.iter().enumerate() {
                        out[i + j] = &out[i + j] + x * y;
                    }
                }
                acc = out;
            }
            Ok(acc)
        }
    }
}
