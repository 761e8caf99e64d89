//! Text, JSON and LaTeX forms of polynomials.
//!
//! Text grammar (whitespace-insensitive):
//!
//! ```text
//! poly := term (('+' | '-') term)*
//! term := [sign] [rational '*'] word | [sign] rational
//! word := letter+
//! ```
//!
//! e.g. `1/24*xy - 1/24*yx + y`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{KvError, Result};
use crate::poly::Poly;
use crate::word::Word;

pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let alphabet = p.alphabet();
    let mut out = String::new();
    for (i, (w, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if w.is_empty() {
            out.push_str(&format_rational(&magnitude));
        } else {
            if !magnitude.is_one() {
                out.push_str(&format_rational(&magnitude));
                out.push('*');
            }
            out.push_str(&w.display(alphabet).to_string());
        }
    }
    out
}

pub fn format_latex(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let alphabet = p.alphabet();
    let mut out = String::new();
    for (i, (w, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let m = c.abs();
        let coeff = if m.denom().is_one() {
            m.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", m.numer(), m.denom())
        };
        if w.is_empty() {
            out.push_str(&coeff);
            continue;
        }
        if !m.is_one() {
            out.push_str(&coeff);
            out.push(' ');
        }
        for &l in w.letters() {
            out.push_str(&latex_symbol(alphabet.symbol(l)));
        }
    }
    out
}

fn latex_symbol(s: &str) -> String {
    match s.find(|c: char| c.is_ascii_digit()) {
        Some(i) => format!("{}_{{{}}}", &s[..i], &s[i..]),
        None => s.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub word: String,
    pub coeff: String,
}

pub fn to_json_terms(p: &Poly) -> Vec<JsonTerm> {
    p.terms()
        .map(|(w, c)| JsonTerm {
            word: if w.is_empty() {
                String::new()
            } else {
                w.display(p.alphabet()).to_string()
            },
            coeff: format_rational(c),
        })
        .collect()
}

pub fn to_json(p: &Poly) -> String {
    serde_json::to_string(&to_json_terms(p)).expect("plain data serializes")
}

pub fn from_json(alphabet: &Alphabet, json: &str) -> Result<Poly> {
    let terms: Vec<JsonTerm> = serde_json::from_str(json).map_err(|e| KvError::Parse {
        position: e.column(),
        message: e.to_string(),
    })?;
    let mut p = Poly::zero(alphabet);
    for t in terms {
        p.add_term(Word::parse(alphabet, &t.word)?, parse_rational(&t.coeff)?);
    }
    Ok(p)
}

pub fn parse_poly(alphabet: &Alphabet, text: &str) -> Result<Poly> {
    Parser::new(alphabet, text).parse()
}

struct Parser<'a> {
    alphabet: &'a Alphabet,
    /// Non-whitespace characters with their position in the input.
    chars: Vec<(usize, char)>,
    compact: String,
    offsets: Vec<usize>,
    pos: usize,
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn new(alphabet: &'a Alphabet, text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let mut compact = String::new();
        let mut offsets = Vec::new();
        for (_, c) in &chars {
            offsets.push(compact.len());
            compact.push(*c);
        }
        offsets.push(compact.len());
        Parser {
            alphabet,
            chars,
            compact,
            offsets,
            pos: 0,
            input_len: text.chars().count(),
        }
    }

    fn error(&self, message: impl Into<String>) -> KvError {
        let position = self.chars.get(self.pos).map_or(self.input_len, |(i, _)| *i);
        KvError::Parse {
            position,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn parse(mut self) -> Result<Poly> {
        if self.chars.is_empty() {
            return Err(self.error("empty polynomial"));
        }
        let mut out = Poly::zero(self.alphabet);
        let mut first = true;
        while self.peek().is_some() {
            let mut negative = false;
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    negative = true;
                    self.pos += 1;
                }
                _ if !first => return Err(self.error("expected `+` or `-`")),
                _ => {}
            }
            let (w, c) = self.term()?;
            out.add_term(w, if negative { -c } else { c });
            first = false;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Word, Rational)> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                match self.peek() {
                    Some('*') => {
                        self.pos += 1;
                        let w = self.word()?;
                        Ok((w, c))
                    }
                    Some(ch) if ch != '+' && ch != '-' => {
                        let w = self.word()?;
                        Ok((w, c))
                    }
                    _ => Ok((Word::empty(), c)),
                }
            }
            Some(_) => Ok((self.word()?, Rational::one())),
            None => Err(self.error("expected a term")),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos > s
        };
        digits(self);
        let numer: BigInt = self.slice(start, self.pos).parse().expect("digits");
        let mut denom = BigInt::one();
        if self.peek() == Some('/') {
            self.pos += 1;
            let s = self.pos;
            if !digits(self) {
                return Err(self.error("expected denominator digits"));
            }
            denom = self.slice(s, self.pos).parse().expect("digits");
            if denom.is_zero() {
                self.pos = s;
                return Err(self.error("zero denominator"));
            }
        }
        Ok(Rational::new(numer, denom))
    }

    fn word(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        loop {
            let rest = &self.compact[self.offsets[self.pos]..];
            match self.alphabet.match_prefix(rest) {
                Some((l, len)) => {
                    letters.push(l);
                    let target = self.offsets[self.pos] + len;
                    while self.offsets[self.pos] < target {
                        self.pos += 1;
                    }
                }
                None => break,
            }
        }
        if letters.is_empty() {
            return Err(self.error(format!("expected a word over {}", self.alphabet)));
        }
        match self.peek() {
            None | Some('+') | Some('-') => Ok(Word::new(letters)),
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn slice(&self, start: usize, end: usize) -> &str {
        &self.compact[self.offsets[start]..self.offsets[end]]
    }
}
