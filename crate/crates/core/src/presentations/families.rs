//! Finite normal-generating sets for the subgroups `S`, `T`, `U`, `S_V`,
//! `T_V` and `D_c`.
//!
//! `S` is defined by an infinite family indexed by all pairs of free-group
//! elements. The generator-pair subfamily together with `R₁` already
//! normally generates it: modulo those words every generator `b` acts on `F₁`
//! through a lift of `θ(b)`, so `F/⟨pairs, R₁⟩^F` is `A ⋊ F₂`, which is exactly
//! `F/S`. The extra words `[r₂, x]` lie in `S` and are kept because they make
//! the relator set `R = R₂S` visible at the level of generators.

use super::{action_relators, wreath_commutation_relators, ActionSpec, FinitePresentation, PresentationError};
use crate::finite::FiniteGroup;
use crate::words::{commutators_with_generators, left_normed, GenSym, Word};

/// The word set of a verbal wreath product that this crate supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variety {
    /// `V = {1}`: all groups, giving the free wreath product.
    Trivial,
    /// `V = {[x, y]}`: abelian groups, giving the standard wreath product.
    Abelian,
}

/// `K = F₁ ∗ B`.
pub fn ambient_k(a: &FinitePresentation, b: &FinitePresentation) -> Result<FinitePresentation, PresentationError> {
    let free_a = FinitePresentation::free(a.generators().to_vec());
    super::free_product_presentation(&free_a, b)
}

/// `D = A ∗ B`.
pub fn ambient_d(a: &FinitePresentation, b: &FinitePresentation) -> Result<FinitePresentation, PresentationError> {
    super::free_product_presentation(a, b)
}

/// Normal generators of `S` in `F = F₁ ∗ F₂`.
pub fn family_s(a: &FinitePresentation, b: &FinitePresentation, action: &ActionSpec) -> Vec<Word> {
    let mut out = action_relators(a, b, action);
    out.extend(a.relators().iter().cloned());
    out.extend(commutators_with_generators(b.relators(), a.generators()));
    out
}

/// Normal generators of `T` in `K = F₁ ∗ B`.
pub fn family_t(a: &FinitePresentation, b: &FinitePresentation, action: &ActionSpec) -> Vec<Word> {
    let mut out = action_relators(a, b, action);
    out.extend(a.relators().iter().cloned());
    out
}

/// Normal generators of `U` in `D = A ∗ B`. The relators of `A` are already
/// trivial in `D`; they are listed so the family reads the same as for `T`.
pub fn family_u(a: &FinitePresentation, b: &FinitePresentation, action: &ActionSpec) -> Vec<Word> {
    family_t(a, b, action)
}

fn need_model(v: Variety, b_model: Option<&FiniteGroup>) -> Result<Option<&FiniteGroup>, PresentationError> {
    match (v, b_model) {
        (Variety::Abelian, None) => {
            Err(PresentationError::ModelMismatch("the standard wreath product needs a finite model of B".into()))
        }
        (Variety::Abelian, m) => Ok(m),
        (Variety::Trivial, _) => Ok(None),
    }
}

/// Normal generators of `S_V = [R₂,F₁]^F R₁^F R_V` in `F = F₁ ∗ F₂`.
pub fn family_sv(
    v: Variety,
    a: &FinitePresentation,
    b: &FinitePresentation,
    b_model: Option<&FiniteGroup>,
) -> Result<Vec<Word>, PresentationError> {
    let model = need_model(v, b_model)?;
    let mut out = a.relators().to_vec();
    out.extend(commutators_with_generators(b.relators(), a.generators()));
    if let Some(m) = model {
        super::check_model(b, m)?;
        out.extend(wreath_commutation_relators(a, m));
    }
    Ok(out)
}

/// Normal generators of `T_V = δ(S_V)` in `K = F₁ ∗ B`. For `V` trivial this is
/// just `R₁`.
pub fn family_tv(
    v: Variety,
    a: &FinitePresentation,
    b: &FinitePresentation,
    b_model: Option<&FiniteGroup>,
) -> Result<Vec<Word>, PresentationError> {
    let model = need_model(v, b_model)?;
    let mut out = a.relators().to_vec();
    if let Some(m) = model {
        super::check_model(b, m)?;
        out.extend(wreath_commutation_relators(a, m));
    }
    Ok(out)
}

/// All `[r₁, g₁, …, g_c]` with `r₁` a relator of `A`, `g_i` generators of `A`
/// or `B`, and at least one `g_i` from `B`.
pub fn family_dc(a: &FinitePresentation, b_gens: &[GenSym], c: usize) -> Vec<Word> {
    assert!(c >= 1, "c must be positive");
    let mut pool: Vec<(Word, bool)> = a.generators().iter().map(|g| (Word::gen(g), false)).collect();
    pool.extend(b_gens.iter().map(|g| (Word::gen(g), true)));
    let mut out = Vec::new();
    for r in a.relators() {
        let mut tuples: Vec<(Vec<Word>, bool)> = vec![(Vec::new(), false)];
        for _ in 0..c {
            let mut next = Vec::with_capacity(tuples.len() * pool.len());
            for (t, has_b) in &tuples {
                for (g, is_b) in &pool {
                    let mut t2 = t.clone();
                    t2.push(g.clone());
                    next.push((t2, *has_b || *is_b));
                }
            }
            tuples = next;
        }
        out.extend(tuples.into_iter().filter(|(_, has_b)| *has_b).map(|(t, _)| left_normed(r, &t)));
    }
    out
}
