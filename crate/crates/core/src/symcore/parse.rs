//! Recursive-descent parser for rational expressions over a chart.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' integer)?
//! base   := integer | variable | '(' expr ')' | '-' factor
//! ```
//!
//! Implicit multiplication is rejected, so `2x` is a syntax error and
//! multi-character variables such as `x11` are unambiguous.

use num_bigint::BigInt;

use super::chart::Chart;
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::rational::Rational;
use super::SymError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, SymError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(src[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap();
                return Err(SymError::Syntax { offset: start, message: format!("unexpected character `{ch}`") });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> SymError {
        SymError::Syntax {
            offset: self.offset(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, SymError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, SymError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    let (_, at) = self.bump();
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(SymError::ZeroDenominator { offset: Some(at) });
                    }
                    acc = &acc / &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction, SymError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            (Tok::Int(n), _) => {
                let e: u32 =
                    n.try_into().map_err(|_| SymError::Syntax { offset: at, message: "exponent too large".into() })?;
                Ok(base.pow(e))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a non-negative integer exponent"))
            }
        }
    }

    fn base(&mut self) -> Result<RationalFunction, SymError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Int(n) => Ok(RationalFunction::constant(self.chart, Rational::from_integer(n))),
            Tok::Ident(name) => match self.chart.index_of(&name) {
                Some(v) => Ok(RationalFunction::var(self.chart, v)),
                None => Err(SymError::UnknownVariable { name, offset: Some(at) }),
            },
            Tok::Minus => Ok(-&self.factor()?),
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(SymError::Syntax {
                offset: at,
                message: format!("expected a number, variable, `(` or `-`, found {}", describe(&tok)),
            }),
        }
    }
}

/// Parses and normalizes an expression over `chart`.
pub fn parse_expr(src: &str, chart: &Chart) -> Result<RationalFunction, SymError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, chart };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(out)
}

/// Parses an expression that must reduce to a polynomial.
pub fn parse_poly(src: &str, chart: &Chart) -> Result<Polynomial, SymError> {
    let f = parse_expr(src, chart)?;
    if !f.is_polynomial() {
        return Err(SymError::NotPolynomial(src.to_string()));
    }
    Ok(f.numer().clone())
}
