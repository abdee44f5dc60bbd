//! Expression parser for quantum-plane polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := power (['*'] power)*
//! power  := atom ['^' ['-'] integer]
//! atom   := 'u' | 'v' | 'q' | 'i' | integer ['/' integer] | '(' expr ')'
//! ```
//!
//! Letters are single-character tokens, so `vvu` reads as `v*v*u` and `uv^2`
//! as `u*v^2`. `q` is the formal parameter and `i` the imaginary unit, both
//! central. Negative exponents are allowed only on invertible coefficients
//! (monomials `c q^e` with `c ≠ 0`).

use num_traits::Zero;

use super::{Laurent, Letter, QPolynomial, Word};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Upper bound on exponents, to keep `(u+v)^n` expansions bounded.
const MAX_EXPONENT: i64 = 32;
/// Upper bound on unnormalized terms produced while parsing.
const MAX_TERMS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Letter(char),
    Int(i64),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                let n = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer {digits} at {pos} is too large")))?;
                out.push((pos, Token::Int(n)));
                continue;
            }
            'u' | 'v' | 'q' | 'i' => Token::Letter(c),
            '+' => Token::Plus,
            '-' | '−' => Token::Minus,
            '*' | '·' => Token::Star,
            '^' => Token::Caret,
            '/' => Token::Slash,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => return Err(Error::Parse(format!("unexpected '{other}' at {pos}"))),
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a, R: Real> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    src_len: usize,
    _real: std::marker::PhantomData<R>,
}

impl<R: Real> Parser<'_, R> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.src_len, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn error<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at {}", self.offset())))
    }

    fn check_size(&self, p: &QPolynomial<R>) -> Result<()> {
        if p.len() > MAX_TERMS {
            return self.error("expression expands to too many terms");
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<QPolynomial<R>> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                self.term()?.neg()
            }
            Some(Token::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
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
                _ => break,
            }
            self.check_size(&acc)?;
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Letter(_) | Token::Int(_) | Token::LParen)
        )
    }

    fn term(&mut self) -> Result<QPolynomial<R>> {
        let mut acc = self.power()?;
        loop {
            if self.peek() == Some(&Token::Star) {
                self.bump();
            } else if !self.starts_atom() {
                break;
            }
            acc = acc.mul(&self.power()?);
            self.check_size(&acc)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<QPolynomial<R>> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek() == Some(&Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let e = match self.bump() {
            Some(Token::Int(n)) if n <= MAX_EXPONENT => n,
            Some(Token::Int(_)) => return self.error("exponent too large"),
            _ => return self.error("expected an integer exponent"),
        };
        if negative {
            let inverse = base.as_coefficient().and_then(|c| {
                let (s, k) = c.as_monomial()?;
                (!s.is_zero())
                    .then(|| Laurent::monomial(Scalar::new(R::one(), R::zero()) / s.clone(), -k))
            });
            return match inverse {
                Some(inv) => self.pow(&QPolynomial::constant(inv), e),
                None => self.error("negative exponent on a non-invertible factor"),
            };
        }
        self.pow(&base, e)
    }

    fn pow(&self, base: &QPolynomial<R>, e: i64) -> Result<QPolynomial<R>> {
        let mut acc = QPolynomial::constant(Laurent::one());
        for _ in 0..e {
            acc = acc.mul(base);
            self.check_size(&acc)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<QPolynomial<R>> {
        match self.bump() {
            Some(Token::Letter('u')) => Ok(QPolynomial::word(Word(vec![Letter::U]))),
            Some(Token::Letter('v')) => Ok(QPolynomial::word(Word(vec![Letter::V]))),
            Some(Token::Letter('q')) => Ok(QPolynomial::constant(Laurent::q())),
            Some(Token::Letter(_)) => Ok(QPolynomial::constant(Laurent::constant(Scalar::new(
                R::zero(),
                R::one(),
            )))),
            Some(Token::Int(n)) => {
                let value = if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(0)) => return self.error("zero denominator"),
                        Some(Token::Int(d)) => R::from_ratio(n, d),
                        _ => return self.error("expected a denominator"),
                    }
                } else {
                    R::from_int(n)
                };
                let c = Scalar::new(value, R::zero());
                // `0` parses to the zero polynomial.
                Ok(QPolynomial::constant(Laurent::constant(c)))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        self.error("expected ')'")
                    }
                }
            }
            _ => {
                self.pos -= 1;
                self.error("expected u, v, q, i, a number or '('")
            }
        }
    }
}

/// Parses an expression such as `v*u - q*u*v` or `(u + v)^2`.
pub fn parse_expression<R: Real>(src: &str) -> Result<QPolynomial<R>> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        src_len: src.len(),
        _real: std::marker::PhantomData::<R>,
    };
    let out = p.expr()?;
    if p.pos < tokens.len() {
        return p.error("unexpected token");
    }
    Ok(out)
}
