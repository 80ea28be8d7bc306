//! Scenario-driven verification: parse a scenario, build the group it names,
//! run the requested checks, and emit a JSON report.
//!
//! Every scenario group is treated as a split extension `B ⋉ A` (or a
//! standard or free wreath product `A Wr B`). Expressions with no outer
//! splitting are read as `1 ⋉ G`, which is also `G Wr 1`.

mod normal_form;
mod scenario;
mod truncation;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use normal_form::{free_product_normal_form, project, reduce, Letter, NormalForm, NormalFormError};
pub use scenario::{parse_scenarios, Check, Scenario, ScenarioError, Trunc, DEFAULT_CAP, MAX_C, MAX_CAP, MAX_TRUNC};
pub use truncation::{kernel_identity, subgroup_identity, Comparison, TruncationError};

use crate::baer::{
    baer_quotient, cyclic_ab_check, cyclic_b_check, decomposition_check, direct_factor_check, sylow_check, wreath_check,
    BaerError, Cover, Semidirect, Status, Verdict, WreathInstance, WreathKind,
};
use crate::finite::{
    parse_group_expr, schur_multiplier_oracle, BuiltGroup, FiniteGroup, SplitKind, DEFAULT_ORACLE_CAP, MODEL_CAP,
};
use crate::linalg::{embeds_as_subgroup, is_quotient};
use crate::nq::nilpotent_quotient;
use crate::pcgroup::PcSubgroup;
use crate::presentations::{
    family_s, family_sv, semidirect_presentation, ActionSpec, FinitePresentation, Variety,
};
use crate::words::Word;

/// Words per `normalform_24` run.
pub const NORMAL_FORM_WORDS: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub scenario_id: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub group: String,
    pub checks: Vec<CheckReport>,
    pub versions: BTreeMap<String, String>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ScenarioReport {
    fn failed(id: &str, group: &str, error: String, elapsed_ms: u64) -> Self {
        ScenarioReport {
            scenario_id: id.to_string(),
            group: group.to_string(),
            checks: Vec::new(),
            versions: versions(),
            elapsed_ms,
            error: Some(error),
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// True when nothing failed and the scenario itself ran.
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.count(Status::Fail) == 0
    }
}

pub fn versions() -> BTreeMap<String, String> {
    BTreeMap::from([
        ("nilmult".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("report".to_string(), "1".to_string()),
    ])
}

/// A scenario group with its splitting `B ⋉ A`.
struct Resolved {
    g: BuiltGroup,
    a: BuiltGroup,
    b: BuiltGroup,
    kind: SplitKind,
}

fn trivial_part() -> BuiltGroup {
    BuiltGroup {
        expr: "trivial".into(),
        presentation: FinitePresentation::trivial(),
        model: Some(FiniteGroup::trivial()),
        split: None,
    }
}

fn resolve(s: &Scenario) -> Result<Resolved, String> {
    let mut g = parse_group_expr(&s.group).and_then(|e| e.build()).map_err(|e| e.to_string())?;
    let (a, b, mut kind) = match g.split.take() {
        Some(sp) => (*sp.a, *sp.b, sp.kind),
        None => (g.clone(), trivial_part(), SplitKind::Semidirect(ActionSpec::new())),
    };
    if !s.actions.is_empty() {
        let SplitKind::Semidirect(action) = &mut kind else {
            return Err("`action:` needs a semidirect product".into());
        };
        if b.presentation.generators().is_empty() {
            return Err("`action:` needs a semidirect product".into());
        }
        for entry in &s.actions {
            action
                .parse_entry(entry, a.presentation.generators(), b.presentation.generators())
                .map_err(|e| format!("action `{entry}`: {e}"))?;
        }
        g.presentation = semidirect_presentation(&a.presentation, &b.presentation, action).map_err(|e| e.to_string())?;
        g.model = match (&a.model, &b.model) {
            (Some(ma), Some(mb)) if ma.order() * mb.order() <= MODEL_CAP => {
                Some(FiniteGroup::semidirect(ma, mb, action).map_err(|e| e.to_string())?)
            }
            _ => None,
        };
    }
    Ok(Resolved { g, a, b, kind })
}

impl Resolved {
    fn semidirect(&self) -> Option<Semidirect> {
        match &self.kind {
            SplitKind::Semidirect(action) => {
                Some(Semidirect::new(self.a.presentation.clone(), self.b.presentation.clone(), action.clone()))
            }
            _ => None,
        }
    }

    fn wreath(&self) -> Option<WreathInstance> {
        let (a, b) = (self.a.presentation.clone(), self.b.presentation.clone());
        match &self.kind {
            SplitKind::StandardWreath => Some(WreathInstance { a, b, kind: WreathKind::Standard(self.b.model.clone()?) }),
            SplitKind::FreeWreath => Some(WreathInstance { a, b, kind: WreathKind::Free }),
            // A Wr 1 = A
            SplitKind::Semidirect(_) if self.b.model.as_ref().is_some_and(|m| m.order() == 1) => {
                Some(WreathInstance { a, b, kind: WreathKind::Standard(self.b.model.clone()?) })
            }
            SplitKind::Semidirect(_) => None,
        }
    }

    /// Normal generators of the `S`-part of `R = R₂ S` in `F = F₁ ∗ F₂`.
    fn s_family(&self) -> Result<Vec<Word>, String> {
        let (a, b) = (&self.a.presentation, &self.b.presentation);
        match &self.kind {
            SplitKind::Semidirect(action) => Ok(family_s(a, b, action)),
            SplitKind::StandardWreath => family_sv(Variety::Abelian, a, b, self.b.model.as_ref()).map_err(|e| e.to_string()),
            SplitKind::FreeWreath => family_sv(Variety::Trivial, a, b, None).map_err(|e| e.to_string()),
        }
    }
}

fn inconclusive(check: Check, why: impl std::fmt::Display) -> Verdict {
    Verdict::inconclusive(check.name(), why)
}

fn run_check(r: &Resolved, check: Check, c: usize, j: usize, cap: usize) -> Verdict {
    let g = &r.g.presentation;
    match check {
        Check::DirectFactor => {
            let (a, b) = (&r.a.presentation, &r.b.presentation);
            match r.kind {
                // the kernel of a standard wreath product is the base group,
                // not A
                SplitKind::StandardWreath => direct_factor_check(g, &[("B", b)], c, cap),
                _ => direct_factor_check(g, &[("A", a), ("B", b)], c, cap),
            }
        }
        Check::Decomposition | Check::CyclicB | Check::CyclicAB => match r.semidirect() {
            Some(s) => match check {
                Check::Decomposition => decomposition_check(&s, c, cap),
                Check::CyclicB => cyclic_b_check(&s, c, cap),
                _ => cyclic_ab_check(&s, c, cap),
            },
            None => inconclusive(check, "needs a semidirect splitting B ⋉ A"),
        },
        Check::Epimorphism => match (r.semidirect(), r.wreath()) {
            (Some(s), _) => s.epimorphism_check(c, cap),
            (None, Some(w)) => w.epimorphism_check(c, cap),
            (None, None) => inconclusive(check, "no splitting"),
        },
        Check::Wreath => match r.wreath() {
            Some(w) => wreath_check(&w, c, cap),
            None => inconclusive(check, "not a wreath product"),
        },
        Check::Trunc41 => {
            let family = match r.s_family() {
                Ok(f) => f,
                Err(e) => return inconclusive(check, e),
            };
            comparison(check, j, subgroup_identity(&r.a.presentation, &r.b.presentation, &family, c, j))
        }
        Check::Trunc51 => comparison(check, j, kernel_identity(&r.a.presentation, &r.b.presentation, c, j)),
        Check::QuotientEmbed => quotient_embed_check(g, c, cap),
        Check::Identity211 => identity_check(g, cap),
        Check::OracleAgreement => oracle_check(r, cap),
        Check::NormalForm => match (&r.a.model, &r.b.model) {
            (Some(a), Some(b)) => normal_form_check(&[a.clone(), b.clone()], NORMAL_FORM_WORDS, 0x5eed),
            _ => inconclusive(check, "a factor has no finite model"),
        },
    }
}

fn comparison(check: Check, j: usize, r: Result<Comparison, TruncationError>) -> Verdict {
    match r {
        Ok(cmp) => Verdict::holds(check.name(), cmp.holds(), format!("class {j}: {}", cmp.witness())),
        Err(e) => inconclusive(check, e),
    }
}

/// For `X = N_cM(G)` and subgroups `H` generated by one or two elements of
/// its induced sequence: `X/H` embeds in `X` and `H` is a quotient of `X`.
fn quotient_embed_check(g: &FinitePresentation, c: usize, cap: usize) -> Verdict {
    const NAME: &str = "quotient_embed_212";
    if g.relators().iter().all(Word::is_identity) {
        return Verdict::holds(NAME, true, "N_cM(G) = 0");
    }
    let free = FinitePresentation::free(g.generators().to_vec());
    let cover = match Cover::<BigInt>::build(&free, g.relators(), c, cap) {
        Ok(cv) => cv,
        Err(e) => return Verdict::inconclusive(NAME, e),
    };
    let x = cover.multiplier();
    let mx = cover.invariants(&x);
    if !mx.is_finite() {
        return Verdict::inconclusive(NAME, format!("N_cM(G) = {mx} is infinite"));
    }
    let xs: Vec<_> = x.gens().iter().take(6).cloned().collect();
    let mut subsets: Vec<Vec<usize>> = (0..xs.len()).map(|i| vec![i]).collect();
    subsets.extend((0..xs.len()).flat_map(|i| (i + 1..xs.len()).map(move |k| vec![i, k])));
    for sub in &subsets {
        let elems: Vec<_> = sub.iter().map(|&i| xs[i].clone()).collect();
        let h = PcSubgroup::generated_by(cover.pc.clone(), &elems);
        let q = x.quotient_invariants(&h).expect("H ≤ X, X abelian");
        let mh = cover.invariants(&h);
        let ok = embeds_as_subgroup(&q, &mx).unwrap_or(false) && is_quotient(&mh, &mx).unwrap_or(false);
        if !ok {
            return Verdict::holds(NAME, false, format!("X = {mx}; H = ⟨x{sub:?}⟩ = {mh}; X/H = {q}"));
        }
    }
    Verdict::holds(NAME, true, format!("X = N_cM(G) = {mx}; {} subgroups", subsets.len()))
}

/// `[A ∏M_i, N] = [A, N] ∏[M_i, N]` for `M_i, N` normal, in the class-`cap`
/// nilpotent quotient of `G`.
fn identity_check(g: &FinitePresentation, cap: usize) -> Verdict {
    const NAME: &str = "identity_211";
    let q = match nilpotent_quotient::<BigInt>(g, cap) {
        Ok(q) => q,
        Err(e) => return Verdict::inconclusive(NAME, e),
    };
    let pc = std::sync::Arc::new(q.pc.clone());
    let gens: Vec<_> = g.generator_words().iter().map(|w| q.eval(w)).collect();
    let Some((first, last)) = gens.first().zip(gens.last()) else {
        return Verdict::holds(NAME, true, "trivial group");
    };
    let normal = |xs: &[Vec<BigInt>]| PcSubgroup::normal_closure_of(pc.clone(), xs);
    let second = gens.get(1).map_or_else(Vec::new, |x| vec![x.clone()]);
    let instances = [
        (
            PcSubgroup::generated_by(pc.clone(), std::slice::from_ref(first)),
            vec![normal(&second), PcSubgroup::lower_central(pc.clone(), 2)],
            normal(std::slice::from_ref(last)),
        ),
        (
            PcSubgroup::generated_by(pc.clone(), std::slice::from_ref(last)),
            vec![normal(std::slice::from_ref(first))],
            PcSubgroup::whole(pc.clone()),
        ),
    ];
    for (i, (a, ms, n)) in instances.iter().enumerate() {
        let run = || -> Result<bool, crate::pcgroup::PcGroupError> {
            let am = ms.iter().try_fold(a.clone(), |acc, m| acc.join(m))?;
            let lhs = am.commutator(n)?;
            let rhs = ms.iter().try_fold(a.commutator(n)?, |acc, m| acc.join(&m.commutator(n)?))?;
            Ok(lhs == rhs)
        };
        match run() {
            Ok(true) => {}
            Ok(false) => return Verdict::holds(NAME, false, format!("instance {i} differs in a quotient with {} pc generators", pc.len())),
            Err(e) => return Verdict::inconclusive(NAME, e),
        }
    }
    Verdict::holds(NAME, true, format!("2 instances in a quotient with {} pc generators", pc.len()))
}

/// Cover against the bar-resolution oracle at `c = 1`; for non-nilpotent
/// groups the Sylow embedding constraint instead.
fn oracle_check(r: &Resolved, cap: usize) -> Verdict {
    const NAME: &str = "oracle_agreement";
    let Some(m) = &r.g.model else {
        return Verdict::inconclusive(NAME, "no finite model");
    };
    if m.order() > DEFAULT_ORACLE_CAP {
        return Verdict::inconclusive(NAME, format!("order {} exceeds the oracle cap {DEFAULT_ORACLE_CAP}", m.order()));
    }
    let oracle = match schur_multiplier_oracle(m, DEFAULT_ORACLE_CAP) {
        Ok(x) => x,
        Err(e) => return Verdict::inconclusive(NAME, e),
    };
    match baer_quotient(&r.g.presentation, 1, cap) {
        Ok(b) => Verdict::holds(NAME, b.invariants == oracle, format!("cover: M(G) = {}; oracle: M(G) = {oracle}", b.invariants)),
        Err(BaerError::NotNilpotentWithinCap { .. }) if !m.is_nilpotent() => sylow_check(m, &oracle),
        Err(e) => Verdict::inconclusive(NAME, e),
    }
}

/// Random words in the free product of `factors`: the normal form is
/// idempotent, reproduces the word, has a cartesian remainder, and words in a
/// single factor have no remainder.
pub fn normal_form_check(factors: &[FiniteGroup], words: usize, seed: u64) -> Verdict {
    const NAME: &str = "normalform_24";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let live: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].order() > 1).collect();
    let mut cartesian = 0;
    for n in 0..words {
        let single = n % 4 == 0;
        let pool: Vec<usize> = if single && !live.is_empty() { vec![live[rng.gen_range(0..live.len())]] } else { live.clone() };
        let len = if pool.is_empty() { 0 } else { rng.gen_range(0..=12) };
        let word: Vec<Letter> = (0..len)
            .map(|_| {
                let i = pool[rng.gen_range(0..pool.len())];
                (i, rng.gen_range(1..factors[i].order()))
            })
            .collect();
        let nf = match free_product_normal_form(factors, &word) {
            Ok(nf) => nf,
            Err(e) => return Verdict::holds(NAME, false, format!("{word:?}: {e}")),
        };
        let again = free_product_normal_form(factors, &nf.word(factors)).expect("well formed");
        let ordered = nf.prefix.windows(2).all(|w| w[0].0 < w[1].0) && nf.prefix.iter().all(|&(i, x)| x != factors[i].identity());
        let projects_trivially = (0..factors.len()).all(|i| project(factors, &nf.remainder, i) == factors[i].identity());
        let ok = again == nf
            && nf.word(factors) == reduce(factors, &word)
            && ordered
            && projects_trivially
            && (!single || nf.cartesian_is_trivial());
        if !ok {
            return Verdict::holds(NAME, false, format!("word {word:?} gives {nf:?}"));
        }
        cartesian += usize::from(!nf.cartesian_is_trivial());
    }
    Verdict::holds(NAME, true, format!("{words} words, {cartesian} with a nontrivial cartesian part"))
}

fn report(check: Check, c: Option<usize>, trunc: Option<usize>, v: Verdict) -> CheckReport {
    debug_assert_eq!(v.name, check.name());
    CheckReport { name: v.name, c, trunc, status: v.status, witness: v.witness }
}

/// Runs every check of `s`, in the order listed, for every `c` (and every
/// truncation class for `trunc_*`).
pub fn run_scenario(s: &Scenario) -> ScenarioReport {
    let start = Instant::now();
    let elapsed = |t: Instant| t.elapsed().as_millis() as u64;
    let r = match resolve(s) {
        Ok(r) => r,
        Err(e) => return ScenarioReport::failed(&s.id, &s.group, e, elapsed(start)),
    };
    let mut checks = Vec::new();
    for &check in &s.checks {
        if !check.per_c() {
            let c = (check == Check::OracleAgreement).then_some(1);
            checks.push(report(check, c, None, run_check(&r, check, 1, 0, s.cap)));
            continue;
        }
        for &c in &s.cs {
            if check.per_trunc() {
                for t in &s.truncs {
                    let j = t.class(c);
                    checks.push(report(check, Some(c), Some(j), run_check(&r, check, c, j, s.cap)));
                }
            } else {
                checks.push(report(check, Some(c), None, run_check(&r, check, c, 0, s.cap)));
            }
        }
    }
    ScenarioReport {
        scenario_id: s.id.clone(),
        group: s.group.clone(),
        checks,
        versions: versions(),
        elapsed_ms: elapsed(start),
        error: None,
    }
}

/// Runs parsed scenarios on up to `jobs` threads. Reports come back in input
/// order; a scenario that fails to parse, build or run only affects its own
/// report.
pub fn run_batch(items: &[(String, Result<Scenario, ScenarioError>)], jobs: usize) -> Vec<ScenarioReport> {
    use rayon::prelude::*;
    let one = |(id, s): &(String, Result<Scenario, ScenarioError>)| match s {
        Err(e) => ScenarioReport::failed(id, "", e.to_string(), 0),
        Ok(s) => {
            let start = Instant::now();
            catch_unwind(AssertUnwindSafe(|| run_scenario(s))).unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|m| m.to_string()))
                    .unwrap_or_else(|| "panic".into());
                ScenarioReport::failed(id, &s.group, format!("internal error: {msg}"), start.elapsed().as_millis() as u64)
            })
        }
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(one).collect()),
        Err(_) => items.iter().map(one).collect(),
    }
}

/// Serializes reports: a single object for one scenario, an array otherwise.
pub fn reports_to_json(reports: &[ScenarioReport]) -> String {
    match reports {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    }
    .expect("reports serialize")
}

#[cfg(test)]
mod tests;
