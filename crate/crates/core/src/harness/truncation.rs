//! Subgroup identities compared in nilpotent truncations.
//!
//! `[R, _cF]` and friends are normal subgroups of infinite groups; their
//! images in `F/γ_{j+1}(F)` are computable and must coincide whenever the
//! identities hold in `F`. Products indexed by commutator patterns are formed
//! subgroup-wise: `[X, G₁, …, G_c]` is the iterated subgroup commutator, and
//! the product over patterns is the normal closure of their join.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::nq::{nilpotent_quotient, NqError, NqResult};
use crate::pcgroup::{PcGroupError, PcSubgroup};
use crate::presentations::{ambient_k, FinitePresentation, PresentationError};
use crate::words::{GenSym, Word};

#[derive(Debug, thiserror::Error)]
pub enum TruncationError {
    #[error("{0}")]
    Nq(#[from] NqError),
    #[error("{0}")]
    PcGroup(#[from] PcGroupError),
    #[error("{0}")]
    Presentation(#[from] PresentationError),
}

/// Both sides of an identity, as subgroups of one truncation.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub lhs: PcSubgroup<BigInt>,
    pub rhs: PcSubgroup<BigInt>,
    /// Number of pc generators of the truncation.
    pub rank: usize,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn witness(&self) -> String {
        let o = |s: &PcSubgroup<BigInt>| s.order().map_or("infinite".to_string(), |n| n.to_string());
        let mut w = format!(
            "{} pc generators; lhs: {} induced generators, order {}; rhs: {} induced generators, order {}",
            self.rank,
            self.lhs.len(),
            o(&self.lhs),
            self.rhs.len(),
            o(&self.rhs)
        );
        if let Some(x) = self.lhs.gens().iter().find(|x| !self.rhs.contains(x)) {
            w.push_str(&format!("; lhs element {x:?} not in rhs"));
        } else if let Some(x) = self.rhs.gens().iter().find(|x| !self.lhs.contains(x)) {
            w.push_str(&format!("; rhs element {x:?} not in lhs"));
        }
        w
    }
}

type Elem = crate::pc::ExpVec<BigInt>;

/// A subgroup together with a generating set, which is much shorter than the
/// induced sequence for the subgroups closures are taken under.
#[derive(Clone)]
struct Sub {
    s: PcSubgroup<BigInt>,
    gens: Vec<Elem>,
}

impl Sub {
    fn closed(s: PcSubgroup<BigInt>) -> Self {
        let gens = s.gens().to_vec();
        Sub { s, gens }
    }
}

struct Truncation {
    q: NqResult<BigInt>,
    pc: Arc<crate::pc::PcPresentation<BigInt>>,
    /// Images of the presentation generators; they generate the truncation.
    top: Vec<Elem>,
}

impl Truncation {
    fn new(p: &FinitePresentation, j: usize) -> Result<Self, TruncationError> {
        let q = nilpotent_quotient::<BigInt>(p, j)?;
        let pc = Arc::new(q.pc.clone());
        let top = p.generator_words().iter().map(|w| q.eval(w)).collect();
        Ok(Truncation { q, pc, top })
    }

    fn images(&self, words: &[Word]) -> Vec<Elem> {
        words.iter().map(|w| self.q.eval(w)).collect()
    }

    fn gens(&self, gens: &[GenSym]) -> Vec<Elem> {
        gens.iter().map(|g| self.q.eval(&Word::gen(g))).collect()
    }

    fn generated(&self, gens: &[GenSym]) -> Sub {
        let gens = self.gens(gens);
        Sub { s: PcSubgroup::generated_by(self.pc.clone(), &gens), gens }
    }

    /// Closure under conjugation by the generators is enough: a polycyclic
    /// group satisfies the maximal condition, so `H^x ≤ H` forces `H^x = H`.
    fn normal(&self, words: &[Word]) -> Sub {
        Sub::closed(PcSubgroup::closure_under(self.pc.clone(), &self.images(words), &self.top))
    }

    /// The normal closure of `relators` inside the subgroup generated by
    /// `gens`.
    fn local_normal(&self, relators: &[Word], gens: &[GenSym]) -> Sub {
        Sub::closed(PcSubgroup::closure_under(self.pc.clone(), &self.images(relators), &self.gens(gens)))
    }

    fn whole(&self) -> Sub {
        Sub { s: PcSubgroup::whole(self.pc.clone()), gens: self.top.clone() }
    }

    /// `[H, K]`: the commutators of generators, closed under `⟨H, K⟩`.
    fn commutator(&self, h: &Sub, k: &Sub) -> Result<Sub, TruncationError> {
        let seeds: Vec<Elem> = h.gens.iter().flat_map(|x| k.gens.iter().filter(|y| !self.pc.commute_by_weight(x, y)).map(|y| self.pc.commutator(x, y))).collect();
        let conj: Vec<Elem> = if h.s.is_subgroup_of(&k.s)? {
            k.gens.clone()
        } else if k.s.is_subgroup_of(&h.s)? {
            h.gens.clone()
        } else {
            h.gens.iter().chain(&k.gens).cloned().collect()
        };
        Ok(Sub::closed(PcSubgroup::closure_under(self.pc.clone(), &seeds, &conj)))
    }

    fn iterated(&self, h: &Sub, k: &Sub, c: usize) -> Result<Sub, TruncationError> {
        (0..c).try_fold(h.clone(), |acc, _| self.commutator(&acc, k))
    }

    fn join(&self, parts: &[&Sub]) -> Result<Sub, TruncationError> {
        let s = PcSubgroup::join_all(self.pc.clone(), parts.iter().map(|p| &p.s))?;
        Ok(Sub { s, gens: parts.iter().flat_map(|p| p.gens.iter().cloned()).collect() })
    }

    /// `∏ [x, G₁, …, G_c]` over all patterns with `G_i ∈ {first, second}` and
    /// at least one `G_i = first`, as a normal subgroup.
    fn pattern_product(&self, x: &Sub, first: &Sub, second: &Sub, c: usize) -> Result<Sub, TruncationError> {
        // layer i holds [x, G₁, …, G_i] for each prefix, tagged by whether
        // `first` occurred
        let mut layer = vec![(x.clone(), false)];
        for _ in 0..c {
            let mut next = Vec::with_capacity(2 * layer.len());
            for (s, seen) in &layer {
                next.push((self.commutator(s, first)?, true));
                next.push((self.commutator(s, second)?, *seen));
            }
            layer = next;
        }
        let seeds: Vec<Elem> = layer.iter().filter(|(_, seen)| *seen).flat_map(|(s, _)| s.s.gens().iter().cloned()).collect();
        Ok(Sub::closed(PcSubgroup::closure_under(self.pc.clone(), &seeds, &self.top)))
    }
}

/// `[R, _cF] = [R₂, _cF₂] · ∏[R₂, F₁, F₂]_c · [S, _cF]` in `F/γ_{j+1}(F)` for
/// `F = F₁ ∗ F₂` free on the generators of `A` and `B`, `R₂` the relators of
/// `B`, and `S` normally generated by `s_family` (so `R = R₂^F S`).
pub fn subgroup_identity(
    a: &FinitePresentation,
    b: &FinitePresentation,
    s_family: &[Word],
    c: usize,
    j: usize,
) -> Result<Comparison, TruncationError> {
    let gens: Vec<GenSym> = a.generators().iter().chain(b.generators()).cloned().collect();
    let t = Truncation::new(&FinitePresentation::free(gens), j)?;
    let f = t.whole();
    let (f1, f2) = (t.generated(a.generators()), t.generated(b.generators()));
    let s = t.normal(s_family);
    let mut all = s_family.to_vec();
    all.extend(b.relators().iter().cloned());
    let lhs = t.iterated(&t.normal(&all), &f, c)?;
    let r2 = t.local_normal(b.relators(), b.generators());
    let rhs = t.join(&[&t.iterated(&r2, &f2, c)?, &t.pattern_product(&r2, &f1, &f2, c)?, &t.iterated(&s, &f, c)?])?;
    Ok(Comparison { lhs: lhs.s, rhs: rhs.s, rank: t.pc.len() })
}

/// `[T, _cK] = [R₁, _cF₁] · D_c` in the class-`j` quotient of `K = F₁ ∗ B`,
/// where `T = R₁^K` and `D_c = ∏[R₁, G₁, …, G_c]` over patterns with some
/// `G_i = B`.
pub fn kernel_identity(a: &FinitePresentation, b: &FinitePresentation, c: usize, j: usize) -> Result<Comparison, TruncationError> {
    let t = Truncation::new(&ambient_k(a, b)?, j)?;
    let k = t.whole();
    let (f1, bs) = (t.generated(a.generators()), t.generated(b.generators()));
    let lhs = t.iterated(&t.normal(a.relators()), &k, c)?;
    let r1 = t.local_normal(a.relators(), a.generators());
    let rhs = t.join(&[&t.iterated(&r1, &f1, c)?, &t.pattern_product(&r1, &bs, &f1, c)?])?;
    Ok(Comparison { lhs: lhs.s, rhs: rhs.s, rank: t.pc.len() })
}
