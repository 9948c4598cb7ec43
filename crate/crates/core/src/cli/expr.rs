//! Expressions over `Z{a,b}`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INT)?
//! atom    := INT | word | '(' sum ')'
//! word    := (('a' | 'b') ('^' INT)?)+
//! ```
//!
//! Inside a word literal `^` repeats the preceding letter, so `ab^2a` is
//! `abba`; after an integer or a parenthesized group it is a ring power.

use num_bigint::BigInt;

use crate::error::ParseError;
use crate::kgroup::KElement;
use crate::word::{Letter, Word};

/// Abstract syntax of an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// An integer multiple of the unit.
    Int(BigInt),
    /// A word literal.
    Word(Word),
    /// Negation.
    Neg(Box<Expr>),
    /// Sum.
    Add(Box<Expr>, Box<Expr>),
    /// Difference.
    Sub(Box<Expr>, Box<Expr>),
    /// Non-commutative product.
    Mul(Box<Expr>, Box<Expr>),
    /// Ring power.
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Evaluates to an element of the ring.
    pub fn eval(&self) -> KElement {
        match self {
            Expr::Int(n) => KElement::integer(n.clone()),
            Expr::Word(w) => KElement::word(w.clone()),
            Expr::Neg(x) => -&x.eval(),
            Expr::Add(x, y) => &x.eval() + &y.eval(),
            Expr::Sub(x, y) => &x.eval() - &y.eval(),
            Expr::Mul(x, y) => &x.eval() * &y.eval(),
            Expr::Pow(x, n) => x.eval().pow(*n),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            Some(c) => self.error(format!("unexpected '{}'", c as char)),
            None => self.error("unexpected end of input"),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let text = self
            .digits()
            .ok_or_else(|| self.error("expected a non-negative integer exponent"))?;
        text.parse::<u32>()
            .map_err(|_| ParseError::new(start, "exponent is too large"))
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let (atom, is_word) = self.atom()?;
        if !is_word && self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.exponent()?;
            return Ok(Expr::Pow(Box::new(atom), n));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<(Expr, bool), ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(match self.peek() {
                        None => self.error("expected ')'"),
                        Some(_) => self.unexpected(),
                    });
                }
                self.pos += 1;
                Ok((inner, false))
            }
            Some(c) if c.is_ascii_digit() => {
                let text = self.digits().unwrap();
                Ok((Expr::Int(text.parse().unwrap()), false))
            }
            Some(b'a' | b'b') => Ok((Expr::Word(self.word()?), true)),
            _ => Err(self.unexpected()),
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        while let Some(c @ (b'a' | b'b')) = self.src.get(self.pos).copied() {
            self.pos += 1;
            let letter = if c == b'a' { Letter::A } else { Letter::B };
            let mut count = 1usize;
            let save = self.pos;
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b'^') {
                self.pos += 1;
                count = self.exponent()? as usize;
            } else {
                self.pos = save;
            }
            letters.extend(std::iter::repeat_n(letter, count));
        }
        Ok(Word::from_letters(letters))
    }
}

/// Parses an expression.
pub fn parse(s: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// Parses and evaluates an expression.
pub fn parse_element(s: &str) -> Result<KElement, ParseError> {
    parse(s).map(|e| e.eval())
}
