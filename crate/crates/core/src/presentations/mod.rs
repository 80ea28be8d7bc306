//! Finite presentations, product constructors and the normal-generator
//! families attached to a split extension `G = B ⋉ A`.
//!
//! Actions are right actions: `a^b = b⁻¹ab = θ(b)(a)`. The relator encoding
//! `a^b = w` is `a⁻¹·w·[b,a]`.

mod families;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::finite::FiniteGroup;
use crate::words::{commutator, parse_word_in, GenSym, ParseError, Word};

pub use families::{
    ambient_d, ambient_k, family_dc, family_s, family_sv, family_t, family_tv, family_u, Variety,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator `{0}` appears in both factors")]
    NameClash(GenSym),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(GenSym),
    #[error("relator uses undeclared generator `{0}`")]
    UndeclaredGenerator(GenSym),
    #[error("action undefined for b = `{b}`, a = `{a}`")]
    MissingAction { b: GenSym, a: GenSym },
    #[error("finite model does not match the presentation: {0}")]
    ModelMismatch(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Generators plus freely reduced relators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePresentation {
    generators: Vec<GenSym>,
    relators: Vec<Word>,
}

impl FinitePresentation {
    pub fn new(generators: Vec<GenSym>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relators {
            if let Some(g) = r.generators().into_iter().find(|g| !seen.contains(g)) {
                return Err(PresentationError::UndeclaredGenerator(g));
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_identity()).collect();
        Ok(FinitePresentation { generators, relators })
    }

    /// Free group on the given generators.
    pub fn free(generators: Vec<GenSym>) -> Self {
        Self::new(generators, Vec::new()).expect("no relators")
    }

    pub fn trivial() -> Self {
        Self::free(Vec::new())
    }

    pub fn generators(&self) -> &[GenSym] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_words(&self) -> Vec<Word> {
        self.generators.iter().map(Word::gen).collect()
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Self {
        let mut rels = self.relators.clone();
        rels.extend(extra.into_iter().filter(|r| !r.is_identity()));
        FinitePresentation { generators: self.generators.clone(), relators: rels }
    }

    /// Renames generators through `f` (which must stay injective).
    pub fn rename(&self, f: &dyn Fn(&GenSym) -> GenSym) -> Self {
        let gens: Vec<GenSym> = self.generators.iter().map(f).collect();
        let rels = self.relators.iter().map(|r| r.substitute(&|g| Some(Word::gen(&f(g))))).collect();
        Self::new(gens, rels).expect("renaming must be injective")
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        crate::words::parse_presentation(text)
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::words::print_presentation(self))
    }
}

impl fmt::Debug for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// For each generator `b` of `B`, the image word of each generator `a` of `A`
/// under `θ(b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionSpec {
    map: BTreeMap<GenSym, BTreeMap<GenSym, Word>>,
}

impl ActionSpec {
    pub fn new() -> Self {
        Self::default()
    }

    /// `θ(b) = id` for every `b`.
    pub fn trivial(a: &FinitePresentation, b: &FinitePresentation) -> Self {
        Self::uniform(a, b, |x| Word::gen(x))
    }

    /// Every generator of `B` acts by the same substitution on `A`'s generators.
    pub fn uniform(a: &FinitePresentation, b: &FinitePresentation, f: impl Fn(&GenSym) -> Word) -> Self {
        let mut spec = Self::new();
        for y in b.generators() {
            for x in a.generators() {
                spec.set(y, x, f(x));
            }
        }
        spec
    }

    pub fn set(&mut self, b: &GenSym, a: &GenSym, image: Word) {
        self.map.entry(b.clone()).or_default().insert(a.clone(), image);
    }

    pub fn get(&self, b: &GenSym, a: &GenSym) -> Option<&Word> {
        self.map.get(b).and_then(|m| m.get(a))
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Checks every pair is defined and image words live over `A`'s generators.
    pub fn validate(&self, a: &FinitePresentation, b: &FinitePresentation) -> Result<(), PresentationError> {
        let a_gens: BTreeSet<GenSym> = a.generators().iter().cloned().collect();
        for y in b.generators() {
            for x in a.generators() {
                let w = self.get(y, x).ok_or(PresentationError::MissingAction { b: y.clone(), a: x.clone() })?;
                if let Some(g) = w.generators().into_iter().find(|g| !a_gens.contains(g)) {
                    return Err(PresentationError::UndeclaredGenerator(g));
                }
            }
        }
        Ok(())
    }

    /// Parses `act: b : a -> word` lines (`#` comments allowed). The key may
    /// also be spelled `action`.
    pub fn parse(text: &str, a_gens: &[GenSym], b_gens: &[GenSym]) -> Result<Self, PresentationError> {
        let mut spec = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let body = content
                .strip_prefix("act:")
                .or_else(|| content.strip_prefix("action:"))
                .ok_or_else(|| syntax(i + 1, "expected `act: b : a -> word`"))?;
            spec.parse_entry(body, a_gens, b_gens).map_err(|e| relocate(e, i + 1))?;
        }
        Ok(spec)
    }

    /// Parses a single `b : a -> word` entry.
    pub fn parse_entry(&mut self, body: &str, a_gens: &[GenSym], b_gens: &[GenSym]) -> Result<(), PresentationError> {
        let (b, rest) = body.split_once(':').ok_or_else(|| syntax(1, "missing `:` after the acting generator"))?;
        let (a, w) = rest.split_once("->").ok_or_else(|| syntax(1, "missing `->`"))?;
        let (b, a) = (b.trim(), a.trim());
        let bg = b_gens.iter().find(|g| g.as_str() == b).ok_or_else(|| unknown(b))?;
        let ag = a_gens.iter().find(|g| g.as_str() == a).ok_or_else(|| unknown(a))?;
        let image = parse_word_in(w, a_gens)?;
        self.set(bg, ag, image);
        Ok(())
    }
}

fn syntax(line: usize, msg: &str) -> PresentationError {
    PresentationError::Parse(ParseError::Syntax { line, col: 1, msg: msg.into() })
}

fn unknown(name: &str) -> PresentationError {
    PresentationError::Parse(ParseError::UnknownGenerator { line: 1, col: 1, name: name.into() })
}

fn relocate(e: PresentationError, line: usize) -> PresentationError {
    match e {
        PresentationError::Parse(ParseError::Syntax { col, msg, .. }) => {
            PresentationError::Parse(ParseError::Syntax { line, col, msg })
        }
        PresentationError::Parse(ParseError::UnknownGenerator { col, name, .. }) => {
            PresentationError::Parse(ParseError::UnknownGenerator { line, col, name })
        }
        other => other,
    }
}

/// A pair `(K, T)`: `K` presented by `ambient`, `T` the normal closure of
/// `normal_generators` in `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSubgroupSpec {
    pub ambient: FinitePresentation,
    pub normal_generators: Vec<Word>,
}

impl AmbientSubgroupSpec {
    pub fn new(ambient: FinitePresentation, normal_generators: Vec<Word>) -> Result<Self, PresentationError> {
        let gens: BTreeSet<GenSym> = ambient.generators().iter().cloned().collect();
        for w in &normal_generators {
            if let Some(g) = w.generators().into_iter().find(|g| !gens.contains(g)) {
                return Err(PresentationError::UndeclaredGenerator(g));
            }
        }
        Ok(AmbientSubgroupSpec { ambient, normal_generators })
    }

    /// Presentation of `K / T`.
    pub fn quotient(&self) -> FinitePresentation {
        self.ambient.with_relators(self.normal_generators.iter().cloned())
    }
}

fn disjoint_union(a: &FinitePresentation, b: &FinitePresentation) -> Result<Vec<GenSym>, PresentationError> {
    let mut gens = a.generators().to_vec();
    for g in b.generators() {
        if gens.contains(g) {
            return Err(PresentationError::NameClash(g.clone()));
        }
        gens.push(g.clone());
    }
    Ok(gens)
}

/// `a⁻¹·w·[b,a]`, which holds exactly when `a^b = w`.
pub fn action_relator(a: &GenSym, b: &GenSym, w: &Word) -> Word {
    let (a, b) = (Word::gen(a), Word::gen(b));
    a.inverse().mul(w).mul(&commutator(&b, &a))
}

/// Action relators `a⁻¹·θ(b)(a)·[b,a]` for all generator pairs, `a` outer.
pub fn action_relators(a: &FinitePresentation, b: &FinitePresentation, action: &ActionSpec) -> Vec<Word> {
    let mut out = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            let w = action.get(y, x).expect("validated action");
            out.push(action_relator(x, y, w));
        }
    }
    out
}

/// Presentation of `B ⋉_θ A` on `gens(A) ⊎ gens(B)`.
pub fn semidirect_presentation(
    a: &FinitePresentation,
    b: &FinitePresentation,
    action: &ActionSpec,
) -> Result<FinitePresentation, PresentationError> {
    let gens = disjoint_union(a, b)?;
    action.validate(a, b)?;
    let mut rels = a.relators().to_vec();
    rels.extend(b.relators().iter().cloned());
    rels.extend(action_relators(a, b, action));
    FinitePresentation::new(gens, rels)
}

/// `A ∗ B`; also the free wreath product `A Wr_* B`, which is isomorphic to it.
pub fn free_product_presentation(
    a: &FinitePresentation,
    b: &FinitePresentation,
) -> Result<FinitePresentation, PresentationError> {
    let gens = disjoint_union(a, b)?;
    let mut rels = a.relators().to_vec();
    rels.extend(b.relators().iter().cloned());
    FinitePresentation::new(gens, rels)
}

/// The coordinate-commutation relators `[x, y^{w_β}]` for `x, y` generators
/// of `A` and `β ≠ 1` in `B`, with `w_β` the shortest-lex transversal word.
pub fn wreath_commutation_relators(a: &FinitePresentation, b_model: &FiniteGroup) -> Vec<Word> {
    let mut out = Vec::new();
    for (beta, wb) in b_model.transversal_words() {
        if beta == b_model.identity() {
            continue;
        }
        for x in a.generators() {
            for y in a.generators() {
                out.push(commutator(&Word::gen(x), &Word::gen(y).conj(&wb)));
            }
        }
    }
    out
}

/// Presentation of the standard wreath product `A ≀ B` for finite `B`.
///
/// `b_model` must be a finite model of `B` whose named generators are
/// exactly `B`'s presentation generators.
pub fn standard_wreath_presentation(
    a: &FinitePresentation,
    b: &FinitePresentation,
    b_model: &FiniteGroup,
) -> Result<FinitePresentation, PresentationError> {
    let gens = disjoint_union(a, b)?;
    check_model(b, b_model)?;
    let mut rels = a.relators().to_vec();
    rels.extend(b.relators().iter().cloned());
    rels.extend(wreath_commutation_relators(a, b_model));
    FinitePresentation::new(gens, rels)
}

pub(crate) fn check_model(p: &FinitePresentation, model: &FiniteGroup) -> Result<(), PresentationError> {
    let names: Vec<GenSym> = model.generators().iter().map(|(g, _)| g.clone()).collect();
    if names != p.generators() {
        return Err(PresentationError::ModelMismatch(format!(
            "model generators {names:?} vs presentation generators {:?}",
            p.generators()
        )));
    }
    for r in p.relators() {
        if model.eval(r) != Some(model.identity()) {
            return Err(PresentationError::ModelMismatch(format!("relator {r} fails in the model")));
        }
    }
    Ok(())
}
