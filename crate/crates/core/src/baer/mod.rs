//! c-nilpotent multipliers `N_cM(G) = (R ∩ γ_{c+1}(F)) / [R, _cF]` and the
//! relative quotients `(T ∩ γ_{c+1}(K)) / [T, _cK]`.
//!
//! Both are computed in a cover. For `G = F/R` put `H = F/[R, _cF]`, presented
//! by the words `[r, x₁, …, x_c]` over relators `r` and generators `x_i`
//! (these normally generate `[R, _cF]`, by `[s, xy] = [s, y][s, x]^y` and
//! conjugation). If `G` has class `k` then `γ_{k+1}(F) ≤ R`, hence
//! `γ_{k+c+1}(F) ≤ [R, _cF]` and `H` is its own class-`(k+c)` nilpotent
//! quotient. Since `[R, _cF]` lies in both `R` and `γ_{c+1}(F)`, the modular
//! law gives
//!
//! ```text
//! R̄ ∩ γ_{c+1}(H) = (R ∩ γ_{c+1}(F)) / [R, _cF],
//! ```
//!
//! so the multiplier is a subgroup of a polycyclic group, read off by an
//! intersection with a weight tail. The relative case is the same with `F`
//! replaced by a finitely presented `K` and `R` by `T`.

mod checks;

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::finite::{schur_multiplier_oracle, FiniteError, FiniteGroup, DEFAULT_ORACLE_CAP, MODEL_CAP};
use crate::linalg::AbelianInvariants;
use crate::nq::{detect_class, nilpotent_quotient, ClassDetection, NqResult};
use crate::pc::PcPresentation;
use crate::pcgroup::PcSubgroup;
use crate::presentations::{AmbientSubgroupSpec, FinitePresentation};
use crate::scalar::Int;
use crate::words::{left_normed, Word};

pub use checks::{
    cyclic_ab_check, cyclic_b_check, decomposition_check, direct_factor_check, sylow_check,
    theorem_decomposition_check, wreath_check, Semidirect, Status, Verdict, WreathInstance, WreathKind,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaerError {
    #[error("c must be at least 1")]
    ZeroClass,
    #[error("not nilpotent within class cap {cap}: {reason}")]
    NotNilpotentWithinCap { cap: usize, reason: String },
    #[error("oracle: {0}")]
    Oracle(#[from] FiniteError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Cover,
    Oracle,
}

/// How a result was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    /// Nothing to divide out: no relators (or no normal generators).
    Empty,
    /// `base_class` is the certified class of `G` (or `K/T`), `cover_class`
    /// the class of the cover, at most `base_class + c`.
    Cover { base_class: usize, cover_class: usize, cap: usize },
    /// Bar-resolution H₂ of a group of this order.
    Oracle { order: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaerResult {
    pub invariants: AbelianInvariants,
    pub certificate: Certificate,
    pub method: Method,
}

impl BaerResult {
    fn empty() -> Self {
        BaerResult { invariants: AbelianInvariants::trivial(), certificate: Certificate::Empty, method: Method::Cover }
    }
}

/// The cover `K/[T, _cK]` as a pc group, with `T̄` and `γ_{c+1}`.
#[derive(Clone, Debug)]
pub struct Cover<E> {
    pub quotient: NqResult<E>,
    pub pc: Arc<PcPresentation<E>>,
    pub base_class: usize,
    pub c: usize,
    /// Image of `T`.
    pub normal: PcSubgroup<E>,
}

impl<E: Int> Cover<E> {
    /// Builds the cover of `K = ⟨ambient⟩` relative to `T = ⟨normal⟩^K`.
    pub fn build(ambient: &FinitePresentation, normal: &[Word], c: usize, cap: usize) -> Result<Self, BaerError> {
        if c == 0 {
            return Err(BaerError::ZeroClass);
        }
        let base = ambient.with_relators(normal.iter().cloned());
        let k = match detect_class::<E>(&base, cap) {
            ClassDetection::Nilpotent { class, .. } => class,
            ClassDetection::NotNilpotentWithinCap { cap, reason } => {
                return Err(BaerError::NotNilpotentWithinCap { cap, reason })
            }
        };
        let gens = ambient.generator_words();
        let mut rels = Vec::new();
        for u in normal.iter().filter(|u| !u.is_identity()) {
            for t in tuples(&gens, c) {
                rels.push(left_normed(u, &t));
            }
        }
        let h = ambient.with_relators(rels);
        let quotient = nilpotent_quotient::<E>(&h, k + c).expect("positive class");
        let pc = Arc::new(quotient.pc.clone());
        let images: Vec<_> = normal.iter().map(|u| quotient.eval(u)).collect();
        let normal = PcSubgroup::normal_closure_of(pc.clone(), &images);
        Ok(Cover { quotient, pc, base_class: k, c, normal })
    }

    /// Image of the normal closure of `words`.
    pub fn normal_closure(&self, words: &[Word]) -> PcSubgroup<E> {
        let images: Vec<_> = words.iter().map(|w| self.quotient.eval(w)).collect();
        PcSubgroup::normal_closure_of(self.pc.clone(), &images)
    }

    /// `γ_{c+1}` of the cover.
    pub fn gamma(&self) -> PcSubgroup<E> {
        PcSubgroup::weight_tail(self.pc.clone(), self.c + 1)
    }

    /// `N ∩ γ_{c+1}` for `N` normal in the cover.
    pub fn in_gamma(&self, n: &PcSubgroup<E>) -> PcSubgroup<E> {
        n.intersect_weight_tail(self.c + 1)
    }

    /// `T̄ ∩ γ_{c+1}`: the relative Baer quotient.
    pub fn multiplier(&self) -> PcSubgroup<E> {
        self.in_gamma(&self.normal)
    }

    /// Invariants of an abelian subgroup.
    pub fn invariants(&self, x: &PcSubgroup<E>) -> AbelianInvariants {
        x.quotient_invariants(&PcSubgroup::trivial(self.pc.clone()))
            .expect("the intersection is abelian: [T, γ_{c+1}] ≤ [T, _{c+1}K]")
    }

    fn result(&self, cap: usize) -> BaerResult {
        BaerResult {
            invariants: self.invariants(&self.multiplier()),
            certificate: Certificate::Cover { base_class: self.base_class, cover_class: self.quotient.class(), cap },
            method: Method::Cover,
        }
    }
}

/// All `c`-tuples over `xs`.
fn tuples(xs: &[Word], c: usize) -> Vec<Vec<Word>> {
    let mut out = vec![Vec::new()];
    for _ in 0..c {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Word>| {
                xs.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// `N_cM(G)` for `G` given by `p`, which must be nilpotent of class at most
/// `cap`.
pub fn baer_quotient(p: &FinitePresentation, c: usize, cap: usize) -> Result<BaerResult, BaerError> {
    baer_quotient_with::<BigInt>(p, c, cap)
}

pub fn baer_quotient_with<E: Int>(p: &FinitePresentation, c: usize, cap: usize) -> Result<BaerResult, BaerError> {
    if c == 0 {
        return Err(BaerError::ZeroClass);
    }
    if p.relators().iter().all(|r| r.is_identity()) {
        return Ok(BaerResult::empty());
    }
    let free = FinitePresentation::free(p.generators().to_vec());
    Ok(Cover::<E>::build(&free, p.relators(), c, cap)?.result(cap))
}

/// `(T ∩ γ_{c+1}(K)) / [T, _cK]`; `K/T` must be nilpotent of class at most
/// `cap`.
pub fn relative_baer_quotient(spec: &AmbientSubgroupSpec, c: usize, cap: usize) -> Result<BaerResult, BaerError> {
    relative_baer_quotient_with::<BigInt>(spec, c, cap)
}

pub fn relative_baer_quotient_with<E: Int>(
    spec: &AmbientSubgroupSpec,
    c: usize,
    cap: usize,
) -> Result<BaerResult, BaerError> {
    if c == 0 {
        return Err(BaerError::ZeroClass);
    }
    if spec.normal_generators.iter().all(|u| u.is_identity()) {
        return Ok(BaerResult::empty());
    }
    Ok(Cover::<E>::build(&spec.ambient, &spec.normal_generators, c, cap)?.result(cap))
}

/// The Schur multiplier from a finite model of `p` (order at most
/// [`DEFAULT_ORACLE_CAP`]).
pub fn oracle_multiplier(p: &FinitePresentation) -> Result<BaerResult, BaerError> {
    let g = FiniteGroup::from_presentation(p, MODEL_CAP)?;
    let invariants = schur_multiplier_oracle(&g, DEFAULT_ORACLE_CAP)?;
    Ok(BaerResult { invariants, certificate: Certificate::Oracle { order: g.order() }, method: Method::Oracle })
}

/// [`baer_quotient`], falling back to the H₂ oracle when `c = 1` and `G` is
/// not nilpotent within the cap.
pub fn baer_quotient_or_oracle(p: &FinitePresentation, c: usize, cap: usize) -> Result<BaerResult, BaerError> {
    match baer_quotient(p, c, cap) {
        Err(BaerError::NotNilpotentWithinCap { .. }) if c == 1 => oracle_multiplier(p),
        other => other,
    }
}

#[cfg(test)]
mod tests;
