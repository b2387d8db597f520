//! Parser for the ASCII polynomial grammar.
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := coeff ("*" factor)* | factor ("*" factor)*
//! factor := "x" INDEX ("^" EXPONENT)?
//! coeff  := INT ("/" POSINT)?
//! sign   := "+" | "-"
//! ```
//!
//! Whitespace between tokens is insignificant. Variable indices are 1-based
//! (`x1`, `x2`, ...) with the index written directly after the `x`. The
//! canonical printer in [`crate::Polynomial`]'s `Display` emits a string this
//! parser maps back to the identical polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Int(BigInt),
    Var(usize),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn err(position: usize, expected: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        expected: expected.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push(Spanned { tok: Tok::Plus, pos: i });
                i += 1;
            }
            b'-' => {
                toks.push(Spanned { tok: Tok::Minus, pos: i });
                i += 1;
            }
            b'*' => {
                toks.push(Spanned { tok: Tok::Star, pos: i });
                i += 1;
            }
            b'/' => {
                toks.push(Spanned { tok: Tok::Slash, pos: i });
                i += 1;
            }
            b'^' => {
                toks.push(Spanned { tok: Tok::Caret, pos: i });
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &src[start..i];
                let value = digits.parse::<BigInt>().expect("digit run parses");
                toks.push(Spanned { tok: Tok::Int(value), pos: start });
            }
            b'x' => {
                let start = i;
                i += 1;
                let digit_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digit_start == i {
                    return Err(err(digit_start, "variable index after 'x'"));
                }
                let index: usize = src[digit_start..i]
                    .parse()
                    .map_err(|_| err(digit_start, "variable index that fits in a machine word"))?;
                toks.push(Spanned { tok: Tok::Var(index), pos: start });
            }
            _ => return Err(err(i, "one of '+', '-', '*', '/', '^', digit, or 'x'")),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    cursor: usize,
    end: usize,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.cursor)
            .map(|s| s.pos)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.cursor).map(|s| &s.tok);
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    /// factor := "x" INDEX ("^" EXPONENT)?
    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let pos = self.pos();
        let index = match self.bump() {
            Some(Tok::Var(index)) => *index,
            _ => return Err(err(pos, "a variable like 'x1'")),
        };
        if index == 0 || index > self.dim {
            return Err(Error::VariableOutOfRange {
                index,
                dimension: self.dim,
            });
        }
        let mut exponent = 1u32;
        if self.eat(&Tok::Caret) {
            let pos = self.pos();
            exponent = match self.bump() {
                Some(Tok::Int(v)) => u32::try_from(v.clone())
                    .map_err(|_| err(pos, "an exponent that fits in 32 bits"))?,
                _ => return Err(err(pos, "a non-negative integer exponent")),
            };
        }
        let slot = &mut exps[index - 1];
        *slot = slot
            .checked_add(exponent)
            .ok_or_else(|| err(pos, "an exponent that fits in 32 bits"))?;
        Ok(())
    }

    /// term := coeff ("*" factor)* | factor ("*" factor)*
    fn term(&mut self) -> Result<(BigRational, Monomial)> {
        let mut exps = vec![0u32; self.dim];
        let mut coeff = BigRational::one();
        match self.peek() {
            Some(Tok::Int(_)) => {
                let numer = match self.bump() {
                    Some(Tok::Int(v)) => v.clone(),
                    _ => unreachable!(),
                };
                let mut denom = BigInt::one();
                if self.eat(&Tok::Slash) {
                    let pos = self.pos();
                    denom = match self.bump() {
                        Some(Tok::Int(v)) if !v.is_zero() => v.clone(),
                        Some(Tok::Int(_)) => return Err(err(pos, "a positive denominator")),
                        _ => return Err(err(pos, "a positive integer denominator")),
                    };
                }
                coeff = BigRational::new(numer, denom);
                while self.eat(&Tok::Star) {
                    self.factor(&mut exps)?;
                }
            }
            Some(Tok::Var(_)) => {
                self.factor(&mut exps)?;
                while self.eat(&Tok::Star) {
                    self.factor(&mut exps)?;
                }
            }
            _ => return Err(err(self.pos(), "a coefficient or a variable")),
        }
        Ok((coeff, Monomial::new(exps)))
    }

    /// poly := sign? term (sign term)*
    fn poly(&mut self) -> Result<Polynomial> {
        let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
        let mut sign = BigRational::one();
        if self.eat(&Tok::Minus) {
            sign = -sign;
        } else {
            self.eat(&Tok::Plus);
        }
        loop {
            let (coeff, mono) = self.term()?;
            terms.push((mono, coeff * &sign));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => {
                    sign = BigRational::one();
                    self.cursor += 1;
                }
                Some(Tok::Minus) => {
                    sign = -BigRational::one();
                    self.cursor += 1;
                }
                Some(_) => return Err(err(self.pos(), "'+', '-', or end of input")),
            }
        }
        Ok(Polynomial::from_terms(self.dim, terms))
    }
}

/// Parses `src` as a polynomial in `dim` variables.
pub fn parse_polynomial(src: &str, dim: usize) -> Result<Polynomial> {
    let toks = lex(src)?;
    let mut parser = Parser {
        toks: &toks,
        cursor: 0,
        end: src.len(),
        dim,
    };
    let poly = parser.poly()?;
    Ok(poly)
}
