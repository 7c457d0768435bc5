//! Parser for the function-expression grammar shared by the library and
//! the CLI: `ratfunc := poly | poly "/" poly`, where a poly is a sum of
//! terms `c*x^k` with coefficients either prime-subfield integers or
//! (possibly parenthesized) polynomials in `t`. Whitespace is
//! insignificant; `-` is allowed and reduced mod p.
//!
//! The parser is a little more permissive than the grammar: it evaluates a
//! full expression tree over K(x), so nested parentheses, implicit
//! multiplication ("2x") and exponents on groups all work. Printing a
//! canonical function and reparsing it is the identity.

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::ratfunc::{Poly, RatFunc};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    X,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

impl Lexer {
    fn new(s: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                b'+' => {
                    toks.push((i, Tok::Plus));
                    i += 1;
                }
                b'-' => {
                    toks.push((i, Tok::Minus));
                    i += 1;
                }
                b'*' => {
                    toks.push((i, Tok::Star));
                    i += 1;
                }
                b'/' => {
                    toks.push((i, Tok::Slash));
                    i += 1;
                }
                b'^' => {
                    toks.push((i, Tok::Caret));
                    i += 1;
                }
                b'(' => {
                    toks.push((i, Tok::LParen));
                    i += 1;
                }
                b')' => {
                    toks.push((i, Tok::RParen));
                    i += 1;
                }
                b'x' => {
                    toks.push((i, Tok::X));
                    i += 1;
                }
                b't' => {
                    toks.push((i, Tok::T));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    let mut v: u64 = 0;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                            .ok_or_else(|| err(start, "integer literal overflows"))?;
                        i += 1;
                    }
                    toks.push((start, Tok::Int(v)));
                }
                _ => {
                    return Err(err(
                        i,
                        format!("unexpected character '{}'", bytes[i] as char),
                    ))
                }
            }
        }
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_pos(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }
}

struct Parser<'a> {
    lex: Lexer,
    ctx: &'a FieldCtx,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<RatFunc> {
        let mut negate = false;
        if self.lex.peek() == Some(&Tok::Minus) {
            self.lex.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.lex.peek() {
                Some(Tok::Plus) => {
                    self.lex.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.lex.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.power()?;
        loop {
            match self.lex.peek() {
                Some(Tok::Star) => {
                    self.lex.next();
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Slash) => {
                    let pos = self.lex.peek_pos();
                    self.lex.next();
                    let rhs = self.power()?;
                    acc = acc.div(&rhs).map_err(|_| err(pos, "division by zero"))?;
                }
                // Implicit multiplication: "2x", "t x", "(t+1)x^2".
                Some(Tok::Int(_)) | Some(Tok::X) | Some(Tok::T) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.lex.peek() == Some(&Tok::Caret) {
            let pos = self.lex.peek_pos();
            self.lex.next();
            match self.lex.next() {
                Some(Tok::Int(e)) => {
                    if e > 10_000 {
                        return Err(err(pos, "exponent too large"));
                    }
                    return base
                        .pow(e as i64)
                        .map_err(|_| err(pos, "zero to a negative power"));
                }
                _ => return Err(err(pos, "expected an integer exponent after '^'")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let pos = self.lex.peek_pos();
        match self.lex.next() {
            Some(Tok::Int(v)) => Ok(RatFunc::constant(self.ctx, self.ctx.from_int(v as i64))),
            Some(Tok::X) => Ok(RatFunc::x(self.ctx)),
            Some(Tok::T) => {
                if self.ctx.m() < 2 {
                    Err(err(
                        pos,
                        format!(
                            "'t' is not available over the prime field F_{}",
                            self.ctx.p()
                        ),
                    ))
                } else {
                    Ok(RatFunc::constant(self.ctx, self.ctx.t()))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.lex.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(pos, "unclosed '('")),
                }
            }
            Some(tok) => Err(err(pos, format!("unexpected token {tok:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

/// Parses a rational function in the shared grammar over the given field.
pub fn parse_ratfunc(s: &str, ctx: &FieldCtx) -> Result<RatFunc> {
    let lex = Lexer::new(s)?;
    let mut parser = Parser { lex, ctx };
    let result = parser.expr()?;
    if let Some(_tok) = parser.lex.peek() {
        return Err(err(
            parser.lex.peek_pos(),
            "trailing input after expression",
        ));
    }
    Ok(result)
}

/// Parses a polynomial and rejects proper fractions.
pub fn parse_poly(s: &str, ctx: &FieldCtx) -> Result<Poly> {
    let r = parse_ratfunc(s, ctx)?;
    if !r.is_polynomial() {
        return Err(Error::NotAPolynomial);
    }
    Ok(r.num().clone())
}

/// Parses a modulus polynomial in `t` over F_p, e.g. "t^2+t+1".
/// Returns the coefficient vector, constant term first.
pub fn parse_modulus(s: &str, p: u64) -> Result<Vec<u64>> {
    let mut lex = Lexer::new(s)?;
    let v = tpoly_expr(&mut lex, p)?;
    if lex.peek().is_some() {
        return Err(err(lex.peek_pos(), "trailing input after modulus"));
    }
    Ok(v)
}

// Tiny evaluator over dense F_p[t] vectors for the modulus flag.
mod tvec {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = (0..a.len().max(b.len()))
            .map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p)
            .collect();
        trim(&mut v);
        v
    }
    pub fn neg(a: &[u64], p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = a.iter().map(|&c| (p - c) % p).collect();
        trim(&mut v);
        v
    }
    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + x * y) % p;
            }
        }
        trim(&mut v);
        v
    }
}

fn tpoly_expr(lex: &mut Lexer, p: u64) -> Result<Vec<u64>> {
    let mut negate = false;
    if lex.peek() == Some(&Tok::Minus) {
        lex.next();
        negate = true;
    }
    let mut acc = tpoly_term(lex, p)?;
    if negate {
        acc = tvec::neg(&acc, p);
    }
    loop {
        match lex.peek() {
            Some(Tok::Plus) => {
                lex.next();
                let t = tpoly_term(lex, p)?;
                acc = tvec::add(&acc, &t, p);
            }
            Some(Tok::Minus) => {
                lex.next();
                let t = tpoly_term(lex, p)?;
                acc = tvec::add(&acc, &tvec::neg(&t, p), p);
            }
            _ => return Ok(acc),
        }
    }
}

fn tpoly_term(lex: &mut Lexer, p: u64) -> Result<Vec<u64>> {
    let mut acc = tpoly_power(lex, p)?;
    loop {
        match lex.peek() {
            Some(Tok::Star) => {
                lex.next();
                let f = tpoly_power(lex, p)?;
                acc = tvec::mul(&acc, &f, p);
            }
            Some(Tok::Int(_)) | Some(Tok::T) | Some(Tok::LParen) => {
                let f = tpoly_power(lex, p)?;
                acc = tvec::mul(&acc, &f, p);
            }
            _ => return Ok(acc),
        }
    }
}

fn tpoly_power(lex: &mut Lexer, p: u64) -> Result<Vec<u64>> {
    let base = tpoly_atom(lex, p)?;
    if lex.peek() == Some(&Tok::Caret) {
        let pos = lex.peek_pos();
        lex.next();
        match lex.next() {
            Some(Tok::Int(e)) => {
                if e > 64 {
                    return Err(err(pos, "modulus exponent too large"));
                }
                let mut acc = vec![1u64];
                for _ in 0..e {
                    acc = tvec::mul(&acc, &base, p);
                }
                return Ok(acc);
            }
            _ => return Err(err(pos, "expected an integer exponent after '^'")),
        }
    }
    Ok(base)
}

fn tpoly_atom(lex: &mut Lexer, p: u64) -> Result<Vec<u64>> {
    let pos = lex.peek_pos();
    match lex.next() {
        Some(Tok::Int(v)) => {
            let c = v % p;
            Ok(if c == 0 { Vec::new() } else { vec![c] })
        }
        Some(Tok::T) => Ok(vec![0, 1]),
        Some(Tok::LParen) => {
            let inner = tpoly_expr(lex, p)?;
            match lex.next() {
                Some(Tok::RParen) => Ok(inner),
                _ => Err(err(pos, "unclosed '('")),
            }
        }
        Some(tok) => Err(err(pos, format!("unexpected token {tok:?} in modulus"))),
        None => Err(err(pos, "unexpected end of modulus")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, m: usize) -> FieldCtx {
        FieldCtx::new(p, m).unwrap()
    }

    #[test]
    fn parses_simple_polynomials() {
        let f2 = f(2, 1);
        let r = parse_ratfunc("x^2+x", &f2).unwrap();
        assert_eq!(r, RatFunc::from_poly(Poly::from_ints(&f2, &[0, 1, 1])));
        assert!(r.is_polynomial());
    }

    #[test]
    fn parses_h3() {
        let f3 = f(3, 1);
        let h3 = parse_ratfunc("(x^4+x+1)/x^3", &f3).unwrap();
        assert_eq!(h3.degree(), 4);
        assert_eq!(h3.num(), &Poly::from_ints(&f3, &[1, 1, 0, 0, 1]));
        assert_eq!(h3.den(), &Poly::from_ints(&f3, &[0, 0, 0, 1]));
    }

    #[test]
    fn parses_extension_coefficients() {
        let f4 = f(2, 2);
        let r = parse_ratfunc("(t+1)*x^2 + t", &f4).unwrap();
        assert_eq!(r.degree(), 2);
        assert_eq!(r.num().coeff(2), f4.from_coords(&[1, 1]));
        assert_eq!(r.num().coeff(0), f4.t());
    }

    #[test]
    fn reduces_negative_and_large_coefficients() {
        let f5 = f(5, 1);
        let r = parse_ratfunc("-x^2 + 7x - 3", &f5).unwrap();
        assert_eq!(r, RatFunc::from_poly(Poly::from_ints(&f5, &[2, 2, 4])));
    }

    #[test]
    fn rejects_bad_input() {
        let f2 = f(2, 1);
        assert!(matches!(
            parse_ratfunc("x^2 +", &f2),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_ratfunc("x^2 ) x", &f2),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_ratfunc("y+1", &f2),
            Err(Error::Parse { .. })
        ));
        // t over a prime field
        assert!(matches!(
            parse_ratfunc("t*x", &f2),
            Err(Error::Parse { .. })
        ));
        // division by the zero function
        assert!(matches!(
            parse_ratfunc("x/(x+x)", &f2),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_poly("1/x", &f2), Err(Error::NotAPolynomial)));
    }

    #[test]
    fn parse_error_carries_position() {
        let f2 = f(2, 1);
        match parse_ratfunc("x^2 + y", &f2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn modulus_parsing() {
        assert_eq!(parse_modulus("t^2+t+1", 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_modulus("t^2 + 1", 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(parse_modulus("t^3 - t - 1", 3).unwrap(), vec![2, 2, 0, 1]);
        assert!(matches!(
            parse_modulus("t^2+x", 2),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn display_reparses_to_the_same_function() {
        use rand::rngs::StdRng;
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(3);
        for (p, m) in [(2u64, 1usize), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let ctx = f(p, m);
            for _ in 0..40 {
                let r = crate::ratfunc::random_ratfunc(&ctx, &mut rng, 4);
                let printed = r.to_string();
                let reparsed = parse_ratfunc(&printed, &ctx).unwrap();
                assert_eq!(reparsed, r, "string {printed}");
            }
        }
    }
}
