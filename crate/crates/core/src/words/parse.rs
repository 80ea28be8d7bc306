//! Text grammar for words and presentations.
//!
//! ```text
//! word := term ('*' term)*
//! term := atom ('^' int)?
//! atom := generator | '1' | '(' word ')' | '[' word (',' word)+ ']'
//! ```
//!
//! A presentation file has one `gens: a, b, c` line followed by `rel: <word>`
//! lines; a `rel:` line may list several words separated by commas, and `#`
//! starts a comment.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use super::{left_normed, GenSym, Word};
use crate::presentations::FinitePresentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, col: usize, name: String },
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    allowed: Option<&'a BTreeSet<GenSym>>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, line: usize, col0: usize, allowed: Option<&'a BTreeSet<GenSym>>) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, line, col0, allowed }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, col: self.col0 + self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.err(format!("expected `{c}`, found `{d}`"))),
            None => Err(self.err(format!("expected `{c}`, found end of input"))),
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = self.term()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            w = w.mul(&self.term()?);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.int()?;
        let b = if e < BigInt::from(0) { base.inverse() } else { base };
        let n = e.magnitude().clone();
        // Word::pow takes i64; exponents of single letters may be arbitrary
        if b.syllables() == 1 {
            let (g, f) = &b.letters()[0];
            return Ok(Word::gen_pow(g, f * BigInt::from(n)));
        }
        let n: u64 = n.try_into().map_err(|_| self.err("exponent too large for a compound word"))?;
        let mut out = Word::identity();
        for _ in 0..n {
            out = out.mul(&b);
        }
        Ok(out)
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer exponent")
        })
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let first = self.word()?;
                let mut rest = Vec::new();
                while self.peek() == Some(',') {
                    self.pos += 1;
                    rest.push(self.word()?);
                }
                if rest.is_empty() {
                    return Err(self.err("commutator needs at least two entries"));
                }
                self.expect(']')?;
                Ok(left_normed(&first, &rest))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_lowercase()
                        || self.chars[self.pos].is_ascii_digit()
                        || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let g = GenSym::new(&name);
                if let Some(allowed) = self.allowed {
                    if !allowed.contains(&g) {
                        return Err(ParseError::UnknownGenerator { line: self.line, col: self.col0 + start + 1, name });
                    }
                }
                Ok(Word::gen(&g))
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("trailing input starting at `{c}`"))),
        }
    }
}

fn parse_at(text: &str, line: usize, col0: usize, allowed: Option<&BTreeSet<GenSym>>) -> Result<Word, ParseError> {
    let mut p = Parser::new(text, line, col0, allowed);
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// Parses a word over any generator names.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    parse_at(text, 1, 0, None)
}

/// Parses a word, rejecting generators outside `gens`.
pub fn parse_word_in(text: &str, gens: &[GenSym]) -> Result<Word, ParseError> {
    let allowed: BTreeSet<GenSym> = gens.iter().cloned().collect();
    parse_at(text, 1, 0, Some(&allowed))
}

pub fn parse_presentation(text: &str) -> Result<FinitePresentation, ParseError> {
    let mut gens: Option<Vec<GenSym>> = None;
    let mut rels = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            return Err(ParseError::Syntax { line, col: 1, msg: "expected `gens:` or `rel:`".into() });
        };
        let col0 = key.len() + 1;
        match key.trim() {
            "gens" => {
                if gens.is_some() {
                    return Err(ParseError::Syntax { line, col: 1, msg: "duplicate `gens:` line".into() });
                }
                let mut list = Vec::new();
                let mut offset = col0;
                for part in rest.split(',') {
                    let name = part.trim();
                    let col = offset + part.len() - part.trim_start().len() + 1;
                    offset += part.len() + 1;
                    if name.is_empty() && rest.trim().is_empty() {
                        break;
                    }
                    if !GenSym::is_valid(name) {
                        return Err(ParseError::Syntax { line, col, msg: format!("invalid generator name `{name}`") });
                    }
                    let g = GenSym::new(name);
                    if list.contains(&g) {
                        return Err(ParseError::Syntax { line, col, msg: format!("duplicate generator `{name}`") });
                    }
                    list.push(g);
                }
                gens = Some(list);
            }
            "rel" => {
                let Some(g) = &gens else {
                    return Err(ParseError::Syntax { line, col: 1, msg: "`rel:` before `gens:`".into() });
                };
                let allowed: BTreeSet<GenSym> = g.iter().cloned().collect();
                let mut depth = 0i32;
                let mut start = 0;
                for (k, ch) in rest.char_indices().chain(std::iter::once((rest.len(), ','))) {
                    match ch {
                        '(' | '[' => depth += 1,
                        ')' | ']' => depth -= 1,
                        ',' if depth == 0 => {
                            rels.push(parse_at(&rest[start..k], line, col0 + start, Some(&allowed))?);
                            start = k + 1;
                        }
                        _ => {}
                    }
                }
            }
            other => {
                return Err(ParseError::Syntax { line, col: 1, msg: format!("unknown key `{other}`") });
            }
        }
    }
    let gens = gens.ok_or(ParseError::Syntax { line: 1, col: 1, msg: "missing `gens:` line".into() })?;
    Ok(FinitePresentation::new(gens, rels).expect("relators were checked against the generators"))
}

pub fn print_presentation(p: &FinitePresentation) -> String {
    let mut out = String::from("gens: ");
    out.push_str(&p.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "));
    out.push('\n');
    for r in p.relators() {
        out.push_str(&format!("rel: {r}\n"));
    }
    out
}
