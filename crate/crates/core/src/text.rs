//! Text format for polynomials in `x, a1, a2, ...`.
//!
//! Terms print in descending order (powers of `x` first, then graded reverse
//! lexicographic on the `a` part) as `coef*a1^2*a2*x^3`, with a unit
//! coefficient omitted. The parser accepts any whitespace, integer or
//! `num/den` literals, `+ - * ^` and parentheses, and is inverse to the
//! printer on canonical forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::unipoly::UniPoly;
use crate::Rational;

pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    coeff: &Rational,
    a_exps: &[u32],
    x_exp: usize,
    first: bool,
) -> fmt::Result {
    let neg = coeff.is_negative();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let abs = coeff.abs();
    let mut factors: Vec<String> = Vec::new();
    for (j, &e) in a_exps.iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(format!("a{}", j + 1)),
            _ => factors.push(format!("a{}^{}", j + 1, e)),
        }
    }
    match x_exp {
        0 => {}
        1 => factors.push("x".to_string()),
        _ => factors.push(format!("x^{x_exp}")),
    }
    if factors.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        f.write_str(&factors.join("*"))
    } else {
        write!(f, "{abs}*{}", factors.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    A(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            b'x' => out.push((start, Tok::X)),
            b'a' => {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(Error::Parse { pos: start, msg: "expected variable index after 'a'".into() });
                }
                let idx: usize = s[ds..i]
                    .parse()
                    .map_err(|_| Error::Parse { pos: ds, msg: "variable index too large".into() })?;
                if idx == 0 {
                    return Err(Error::Parse { pos: start, msg: "variables are numbered from a1".into() });
                }
                out.push((start, Tok::A(idx)));
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            _ => {
                return Err(Error::Parse { pos: start, msg: format!("unexpected character {:?}", c as char) });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<UniPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<UniPoly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<UniPoly> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse { pos: self.here(), msg: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<UniPoly> {
        let tok = match self.peek().cloned() {
            Some(t) => t,
            None => return self.err("unexpected end of input"),
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let mut value = Rational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            value /= Rational::from_integer(d);
                        }
                        _ => return self.err("expected non-zero denominator"),
                    }
                }
                Ok(UniPoly::constant(MultiPoly::constant(self.nvars, value)))
            }
            Tok::X => Ok(UniPoly::x(self.nvars)),
            Tok::A(idx) => {
                if idx > self.nvars {
                    self.pos -= 1;
                    return self.err(format!("variable a{idx} outside ambient ring of {} variables", self.nvars));
                }
                Ok(UniPoly::constant(MultiPoly::var(self.nvars, idx - 1)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            _ => {
                self.pos -= 1;
                self.err("expected number, variable or '('")
            }
        }
    }
}

/// Parses a polynomial in `x, a1..a{nvars}`.
pub fn parse_unipoly(s: &str, nvars: usize) -> Result<UniPoly> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, end: s.len(), nvars };
    if p.toks.is_empty() {
        return p.err("empty input");
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a polynomial in `a1..a{nvars}` only.
pub fn parse_multipoly(s: &str, nvars: usize) -> Result<MultiPoly> {
    let u = parse_unipoly(s, nvars)?;
    if u.degree().unwrap_or(0) > 0 {
        return Err(Error::Parse { pos: 0, msg: "unexpected variable x".into() });
    }
    Ok(u.coeff(0))
}

/// Number of `a` variables needed to parse `s` (largest index used).
pub fn max_variable_index(s: &str) -> Result<usize> {
    Ok(tokenize(s)?
        .into_iter()
        .filter_map(|(_, t)| if let Tok::A(i) = t { Some(i) } else { None })
        .max()
        .unwrap_or(0))
}
