//! Free-group words over named generators.
//!
//! Commutators are left-normed throughout: `[u, v] = u⁻¹v⁻¹uv` and
//! `[u, v, w] = [[u, v], w]`. Conjugation is on the right, `u^v = v⁻¹uv`.

mod hall;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use hall::{hall_basis, witt_number, BasicCommutator};
pub use parse::{parse_presentation, parse_word, parse_word_in, print_presentation, ParseError};

/// A generator name (`[a-z][a-z0-9_]*`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSym(Arc<str>);

impl GenSym {
    pub fn new(name: &str) -> Self {
        assert!(Self::is_valid(name), "invalid generator name {name:?}");
        GenSym(Arc::from(name))
    }

    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for GenSym {
    fn from(s: &str) -> Self {
        GenSym::new(s)
    }
}

/// `n` generators named `a, b, c, …` (then `x1, x2, …` past `z`).
pub fn letters(n: usize) -> Vec<GenSym> {
    (0..n).map(nth_letter).collect()
}

pub fn nth_letter(i: usize) -> GenSym {
    if i < 26 {
        GenSym::new(&((b'a' + i as u8) as char).to_string())
    } else {
        GenSym::new(&format!("x{}", i - 25))
    }
}

/// A freely reduced word: adjacent letters have distinct generators and no
/// exponent is zero. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(GenSym, BigInt)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(g: &GenSym) -> Self {
        Word { letters: vec![(g.clone(), BigInt::one())] }
    }

    pub fn gen_pow(g: &GenSym, e: impl Into<BigInt>) -> Self {
        free_reduce(vec![(g.clone(), e.into())])
    }

    pub fn letters(&self) -> &[(GenSym, BigInt)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> BigInt {
        self.letters.iter().map(|(_, e)| e.abs()).sum()
    }

    pub fn generators(&self) -> BTreeSet<GenSym> {
        self.letters.iter().map(|(g, _)| g.clone()).collect()
    }

    pub fn exponent_sum(&self, g: &GenSym) -> BigInt {
        self.letters.iter().filter(|(h, _)| h == g).map(|(_, e)| e.clone()).sum()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|(g, e)| (g.clone(), -e)).collect() }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for (g, e) in &other.letters {
            push_letter(&mut letters, g.clone(), e.clone());
        }
        Word { letters }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self^v = v⁻¹ · self · v`.
    pub fn conj(&self, v: &Word) -> Word {
        v.inverse().mul(self).mul(v)
    }

    /// Replaces every generator by a word; generators missing from `f` are kept.
    pub fn substitute(&self, f: &dyn Fn(&GenSym) -> Option<Word>) -> Word {
        let mut out = Word::identity();
        for (g, e) in &self.letters {
            match f(g) {
                Some(w) => {
                    let base = if e.is_negative() { w.inverse() } else { w };
                    let mut n = e.abs();
                    while n.is_positive() {
                        out = out.mul(&base);
                        n -= 1;
                    }
                }
                None => out = out.mul(&Word::gen_pow(g, e.clone())),
            }
        }
        out
    }

    /// Deletes the given generators (the retraction of a free product onto
    /// the remaining factor).
    pub fn delete(&self, gens: &BTreeSet<GenSym>) -> Word {
        free_reduce(self.letters.iter().filter(|(g, _)| !gens.contains(g)).cloned().collect())
    }
}

fn push_letter(letters: &mut Vec<(GenSym, BigInt)>, g: GenSym, e: BigInt) {
    if e.is_zero() {
        return;
    }
    match letters.last_mut() {
        Some((h, f)) if *h == g => {
            *f += e;
            if f.is_zero() {
                letters.pop();
            }
        }
        _ => letters.push((g, e)),
    }
}

/// Freely reduces a raw letter sequence. Idempotent.
pub fn free_reduce(raw: Vec<(GenSym, BigInt)>) -> Word {
    let mut letters = Vec::with_capacity(raw.len());
    for (g, e) in raw {
        push_letter(&mut letters, g, e);
    }
    Word { letters }
}

/// `[u, v] = u⁻¹v⁻¹uv`, reduced.
pub fn commutator(u: &Word, v: &Word) -> Word {
    u.inverse().mul(&v.inverse()).mul(u).mul(v)
}

/// `[r, x]` for every `r` in `rs` and generator `x` in `xs`.
pub fn commutators_with_generators(rs: &[Word], xs: &[GenSym]) -> Vec<Word> {
    rs.iter().flat_map(|r| xs.iter().map(move |x| commutator(r, &Word::gen(x)))).collect()
}

/// `[u, v₁, …, v_c] = [[u, v₁], …, v_c]`.
pub fn left_normed(u: &Word, vs: &[Word]) -> Word {
    vs.iter().fold(u.clone(), |acc, v| commutator(&acc, v))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}
