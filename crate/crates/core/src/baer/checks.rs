//! Verdicts on the structural claims for semidirect and wreath products.
//!
//! Every check computes both sides independently and compares abelian
//! invariants. A side that cannot be computed (not nilpotent within the cap,
//! oracle cap exceeded, infinite where finiteness is needed) makes the check
//! inconclusive, never failed.

use num_bigint::BigInt;
use serde::Serialize;

use super::{baer_quotient, baer_quotient_or_oracle, relative_baer_quotient, BaerError, Cover};
use crate::finite::{schur_multiplier_oracle, FiniteGroup, DEFAULT_ORACLE_CAP};
use crate::linalg::{embeds_as_subgroup, is_direct_factor, is_quotient, AbelianInvariants};
use crate::presentations::{
    ambient_d, ambient_k, family_s, family_t, family_tv, family_u, free_product_presentation, semidirect_presentation,
    standard_wreath_presentation, ActionSpec, AmbientSubgroupSpec, FinitePresentation, PresentationError, Variety,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

impl Verdict {
    pub fn new(name: &str, status: Status, witness: impl Into<String>) -> Self {
        Verdict { name: name.to_string(), status, witness: witness.into() }
    }

    pub fn holds(name: &str, ok: bool, witness: impl Into<String>) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, witness)
    }

    pub fn inconclusive(name: &str, why: impl std::fmt::Display) -> Self {
        Self::new(name, Status::Inconclusive, why.to_string())
    }

    fn settle(name: &str, r: Result<Verdict, CheckError>) -> Self {
        r.unwrap_or_else(|e| Self::inconclusive(name, e))
    }
}

/// Why a side of a check could not be computed.
#[derive(Debug, thiserror::Error)]
enum CheckError {
    #[error("{0}")]
    Baer(#[from] BaerError),
    #[error("{0}")]
    Presentation(#[from] PresentationError),
    #[error("{0}")]
    Other(String),
}

fn nc(p: &FinitePresentation, c: usize, cap: usize) -> Result<AbelianInvariants, CheckError> {
    Ok(baer_quotient_or_oracle(p, c, cap)?.invariants)
}

fn is_cyclic(p: &FinitePresentation) -> bool {
    p.generators().len() <= 1
}

/// `B ⋉ A` with `θ` given by an action on generators.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub a: FinitePresentation,
    pub b: FinitePresentation,
    pub action: ActionSpec,
}

impl Semidirect {
    pub fn new(a: FinitePresentation, b: FinitePresentation, action: ActionSpec) -> Self {
        Semidirect { a, b, action }
    }

    pub fn presentation(&self) -> Result<FinitePresentation, PresentationError> {
        semidirect_presentation(&self.a, &self.b, &self.action)
    }

    /// `(K, T)` with `K = F₁ ∗ B`.
    pub fn k_spec(&self) -> Result<AmbientSubgroupSpec, PresentationError> {
        AmbientSubgroupSpec::new(ambient_k(&self.a, &self.b)?, family_t(&self.a, &self.b, &self.action))
    }

    /// `(D, U)` with `D = A ∗ B`.
    pub fn d_spec(&self) -> Result<AmbientSubgroupSpec, PresentationError> {
        AmbientSubgroupSpec::new(ambient_d(&self.a, &self.b)?, family_u(&self.a, &self.b, &self.action))
    }
}

#[derive(Clone, Debug)]
pub enum WreathKind {
    /// The standard wreath product; needs a finite model of `B`.
    Standard(FiniteGroup),
    Free,
}

#[derive(Clone, Debug)]
pub struct WreathInstance {
    pub a: FinitePresentation,
    pub b: FinitePresentation,
    pub kind: WreathKind,
}

impl WreathInstance {
    pub fn presentation(&self) -> Result<FinitePresentation, PresentationError> {
        match &self.kind {
            WreathKind::Standard(m) => standard_wreath_presentation(&self.a, &self.b, m),
            WreathKind::Free => free_product_presentation(&self.a, &self.b),
        }
    }

    /// `(K, T_V)` with `K = F₁ ∗ B`.
    pub fn tv_spec(&self) -> Result<AmbientSubgroupSpec, PresentationError> {
        let tv = match &self.kind {
            WreathKind::Standard(m) => family_tv(Variety::Abelian, &self.a, &self.b, Some(m))?,
            WreathKind::Free => family_tv(Variety::Trivial, &self.a, &self.b, None)?,
        };
        AmbientSubgroupSpec::new(ambient_k(&self.a, &self.b)?, tv)
    }
}

/// Each named part's multiplier is a direct factor of `N_cM(G)`.
pub fn direct_factor_check(g: &FinitePresentation, parts: &[(&str, &FinitePresentation)], c: usize, cap: usize) -> Verdict {
    const NAME: &str = "direct_factor_32";
    let run = || -> Result<Verdict, CheckError> {
        let mg = nc(g, c, cap)?;
        let mut ok = true;
        let mut witness = format!("N_{c}M(G) = {mg}");
        for (name, p) in parts {
            let m = nc(p, c, cap)?;
            let f = is_direct_factor(&m, &mg);
            ok &= f;
            witness.push_str(&format!("; N_{c}M({name}) = {m}{}", if f { "" } else { " is not a direct factor" }));
        }
        Ok(Verdict::holds(NAME, ok, witness))
    };
    Verdict::settle(NAME, run())
}

fn equal_sides(name: &str, lhs: &AbelianInvariants, rhs: &[(&str, AbelianInvariants)]) -> Verdict {
    let ok = rhs.iter().all(|(_, r)| r == lhs);
    let mut witness = format!("N_cM(G) = {lhs}");
    for (n, r) in rhs {
        witness.push_str(&format!("; {n} = {r}"));
    }
    Verdict::holds(name, ok, witness)
}

/// `B` cyclic: `N_cM(G) ≅ (T ∩ γ_{c+1}(K)) / [T, _cK]`.
pub fn cyclic_b_check(s: &Semidirect, c: usize, cap: usize) -> Verdict {
    const NAME: &str = "cyclicB_37";
    if !is_cyclic(&s.b) {
        return Verdict::inconclusive(NAME, "B is not given by a cyclic presentation");
    }
    let run = || -> Result<Verdict, CheckError> {
        let g = baer_quotient(&s.presentation()?, c, cap)?.invariants;
        let kt = relative_baer_quotient(&s.k_spec()?, c, cap)?.invariants;
        Ok(equal_sides(NAME, &g, &[("(T∩γ(K))/[T,K]", kt)]))
    };
    Verdict::settle(NAME, run())
}

/// `A` and `B` cyclic: `N_cM(G) ≅ (U ∩ γ_{c+1}(D)) / [U, _cD]`, and both agree
/// with the `(K, T)` quotient.
pub fn cyclic_ab_check(s: &Semidirect, c: usize, cap: usize) -> Verdict {
    const NAME: &str = "cyclicAB_311";
    if !is_cyclic(&s.a) || !is_cyclic(&s.b) {
        return Verdict::inconclusive(NAME, "A or B is not given by a cyclic presentation");
    }
    let run = || -> Result<Verdict, CheckError> {
        let g = baer_quotient(&s.presentation()?, c, cap)?.invariants;
        let kt = relative_baer_quotient(&s.k_spec()?, c, cap)?.invariants;
        let du = relative_baer_quotient(&s.d_spec()?, c, cap)?.invariants;
        Ok(equal_sides(NAME, &g, &[("(T∩γ(K))/[T,K]", kt), ("(U∩γ(D))/[U,D]", du)]))
    };
    Verdict::settle(NAME, run())
}

/// `lhs ↠ rhs`, and in the finite case `rhs` embeds in `lhs`.
fn epimorphism(name: &str, lhs: &AbelianInvariants, rhs: &AbelianInvariants, detail: &str) -> Result<Verdict, CheckError> {
    let witness = format!("N_cM(G) = {lhs}; {detail} = {rhs}");
    let q = is_quotient(rhs, lhs).map_err(|e| CheckError::Other(format!("{e}; {witness}")))?;
    let e = embeds_as_subgroup(rhs, lhs).map_err(|e| CheckError::Other(format!("{e}; {witness}")))?;
    Ok(Verdict::holds(name, q && e, witness))
}

const EPI: &str = "epi_36_45_53";

impl Semidirect {
    /// `N_cM(G) ↠ N_cM(B) ⊕ (T ∩ γ_{c+1}(K)) / [T, _cK]`.
    pub fn epimorphism_check(&self, c: usize, cap: usize) -> Verdict {
        let run = || -> Result<Verdict, CheckError> {
            let g = baer_quotient(&self.presentation()?, c, cap)?.invariants;
            let b = nc(&self.b, c, cap)?;
            let kt = relative_baer_quotient(&self.k_spec()?, c, cap)?.invariants;
            epimorphism(EPI, &g, &b.direct_sum(&kt), &format!("N_cM(B) + (T∩γ(K))/[T,K] = {b} + {kt}"))
        };
        Verdict::settle(EPI, run())
    }
}

impl WreathInstance {
    /// Standard: `N_cM(A Wr B) ↠ N_cM(B) ⊕ (T_V ∩ γ_{c+1}(K)) / [T_V, _cK]`.
    /// Free: `N_cM(A Wr_* B) ↠ N_cM(A) ⊕ N_cM(B) ⊕ E_c/D_c`, where `E_c/D_c` is
    /// the complement of `N_cM(A)` in the `T_V` quotient.
    pub fn epimorphism_check(&self, c: usize, cap: usize) -> Verdict {
        let run = || -> Result<Verdict, CheckError> {
            let g = baer_quotient(&self.presentation()?, c, cap)?.invariants;
            let b = nc(&self.b, c, cap)?;
            let tv = relative_baer_quotient(&self.tv_spec()?, c, cap)?.invariants;
            match self.kind {
                WreathKind::Standard(_) => {
                    epimorphism(EPI, &g, &b.direct_sum(&tv), &format!("N_cM(B) + (T_V∩γ(K))/[T_V,K] = {b} + {tv}"))
                }
                WreathKind::Free => {
                    let a = nc(&self.a, c, cap)?;
                    let Some(ed) = tv.complement(&a) else {
                        return Ok(Verdict::holds(
                            EPI,
                            false,
                            format!("N_cM(A) = {a} is not a direct factor of (T_V∩γ(K))/[T_V,K] = {tv}"),
                        ));
                    };
                    let rhs = a.direct_sum(&b).direct_sum(&ed);
                    epimorphism(EPI, &g, &rhs, &format!("N_cM(A) + N_cM(B) + E_c/D_c = {a} + {b} + {ed}"))
                }
            }
        };
        Verdict::settle(EPI, run())
    }
}

/// Verbal wreath products: `N_cM(B)` is a direct factor of `N_cM(A Wr_V B)`,
/// and for `B` cyclic `N_cM(A Wr_V B) ≅ (T_V ∩ γ_{c+1}(K)) / [T_V, _cK]`.
pub fn wreath_check(w: &WreathInstance, c: usize, cap: usize) -> Verdict {
    const NAME: &str = "wreath_42_46";
    let run = || -> Result<Verdict, CheckError> {
        let g = baer_quotient(&w.presentation()?, c, cap)?.invariants;
        let b = nc(&w.b, c, cap)?;
        let factor = is_direct_factor(&b, &g);
        let mut witness = format!("N_cM(G) = {g}; N_cM(B) = {b}");
        let mut ok = factor;
        if !factor {
            witness.push_str(" is not a direct factor");
        }
        if is_cyclic(&w.b) {
            let tv = relative_baer_quotient(&w.tv_spec()?, c, cap)?.invariants;
            witness.push_str(&format!("; (T_V∩γ(K))/[T_V,K] = {tv}"));
            ok &= tv == g;
        }
        Ok(Verdict::holds(NAME, ok, witness))
    };
    Verdict::settle(NAME, run())
}

/// `N_cM(G) ≅ N_cM(B) ⊕ (S ∩ γ_{c+1}(F)) / (∏[R₂,F₁,F₂]_c [S, _cF])`.
///
/// The complement is computed in the cover `H = F/[R, _cF]`: there the image
/// of `S ∩ γ_{c+1}(F)` is `S̄ ∩ γ_{c+1}(H)` by the modular law, and it must be
/// a subgroup of `N_cM(G)` with complement `N_cM(B)`.
pub fn decomposition_check(s: &Semidirect, c: usize, cap: usize) -> Verdict {
    const NAME: &str = "decomposition_23";
    let run = || -> Result<Verdict, CheckError> {
        let g = s.presentation()?;
        let free = FinitePresentation::free(g.generators().to_vec());
        let cover = Cover::<BigInt>::build(&free, g.relators(), c, cap)?;
        let x = cover.multiplier();
        let y = cover.in_gamma(&cover.normal_closure(&family_s(&s.a, &s.b, &s.action)));
        let inside = y.is_subgroup_of(&x).expect("same ambient");
        let (mx, my) = (cover.invariants(&x), cover.invariants(&y));
        let mb = nc(&s.b, c, cap)?;
        let ok = inside && mb.direct_sum(&my) == mx;
        Ok(Verdict::holds(
            NAME,
            ok,
            format!("N_cM(G) = {mx}; N_cM(B) = {mb}; S-part = {my}{}", if inside { "" } else { " not inside" }),
        ))
    };
    Verdict::settle(NAME, run())
}

/// For every prime `p`, the `p`-part of `M(G)` embeds in `M(P)` for a Sylow
/// `p`-subgroup `P`.
pub fn sylow_check(g: &FiniteGroup, m: &AbelianInvariants) -> Verdict {
    const NAME: &str = "oracle_agreement";
    let n = g.order();
    let mut witness = format!("M(G) = {m}");
    let mut ok = true;
    for p in (2..=n).filter(|&p| n % p == 0 && (2..p).all(|d| p % d != 0)) {
        let sylow = g.subgroup(&g.sylow(p));
        let mp = match schur_multiplier_oracle(&sylow, DEFAULT_ORACLE_CAP) {
            Ok(x) => x,
            Err(e) => return Verdict::inconclusive(NAME, format!("{witness}; Sylow {p}: {e}")),
        };
        let part = AbelianInvariants::from_cyclic_orders(
            m.primary_components().into_iter().filter(|(q, _)| *q == BigInt::from(p)).map(|(q, e)| q.pow(e)),
        );
        let fits = embeds_as_subgroup(&part, &mp).unwrap_or(false);
        ok &= fits;
        witness.push_str(&format!("; M(P_{p}) = {mp}"));
    }
    Verdict::holds(NAME, ok, witness)
}

/// All structural claims for a split extension `G = B ⋉ A`: direct factors
/// always, the `(K, T)` isomorphism for cyclic `B`, the `(D, U)` isomorphism
/// for cyclic `A` and `B`, and the epimorphism onto `N_cM(B) ⊕ (T ∩ γ)/[T, _cK]`.
pub fn theorem_decomposition_check(s: &Semidirect, c: usize, cap: usize) -> Vec<Verdict> {
    let g = match s.presentation() {
        Ok(g) => g,
        Err(e) => return vec![Verdict::inconclusive("direct_factor_32", e)],
    };
    let mut out = vec![direct_factor_check(&g, &[("A", &s.a), ("B", &s.b)], c, cap)];
    if is_cyclic(&s.b) {
        out.push(cyclic_b_check(s, c, cap));
    }
    if is_cyclic(&s.a) && is_cyclic(&s.b) {
        out.push(cyclic_ab_check(s, c, cap));
    }
    out.push(s.epimorphism_check(c, cap));
    out
}
