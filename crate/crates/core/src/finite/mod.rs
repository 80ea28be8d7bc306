//! Cayley-table groups: the independent model layer.
//!
//! Nothing here touches polycyclic machinery, so values computed from these
//! tables (orders, lower central series, H₂ via the bar resolution) serve as
//! cross-checks for the presentation-based pipeline.

mod expr;
mod oracle;

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::linalg::AbelianInvariants;
use crate::nq::coset_table;
use crate::presentations::{ActionSpec, FinitePresentation};
use crate::words::{GenSym, Word};

pub use expr::{parse_group_expr, ActionKind, BuiltGroup, ExprError, GroupExpr, Split, SplitKind, MODEL_CAP};
pub use oracle::{schur_multiplier_oracle, DEFAULT_ORACLE_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiniteError {
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("action is not by automorphisms: {0}")]
    BadAction(String),
    #[error("group order {order} exceeds the cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(GenSym),
}

/// A finite group given by its multiplication table, with named generators.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
    gens: Vec<(GenSym, usize)>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {}, gens {:?})", self.n, self.gens)
    }
}

impl FiniteGroup {
    /// Builds a group from a table, verifying closure, identity, inverses and
    /// associativity.
    pub fn from_table(n: usize, table: Vec<u32>, gens: Vec<(GenSym, usize)>) -> Result<Self, FiniteError> {
        if n == 0 || table.len() != n * n {
            return Err(FiniteError::NotAGroup("table has the wrong size".into()));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(FiniteError::NotAGroup("entry out of range".into()));
        }
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| FiniteError::NotAGroup("no identity".into()))?;
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let y = (0..n).find(|&y| m(x, y) == identity).ok_or_else(|| FiniteError::NotAGroup("no inverse".into()))?;
            if m(y, x) != identity {
                return Err(FiniteError::NotAGroup("one-sided inverse".into()));
            }
            inverse[x] = y as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(FiniteError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        if let Some((g, _)) = gens.iter().find(|(_, x)| *x >= n) {
            return Err(FiniteError::NotAGroup(format!("generator {g} out of range")));
        }
        Ok(FiniteGroup { n, table, inverse, identity, gens })
    }

    /// Builds from an associative multiplication closure on `0..n`; the
    /// group axioms are still verified.
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize, gens: Vec<(GenSym, usize)>) -> Result<Self, FiniteError> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b) as u32);
            }
        }
        Self::from_table(n, table, gens)
    }

    pub fn trivial() -> Self {
        Self::from_table(1, vec![0], Vec::new()).unwrap()
    }

    /// `Z/n` with generator `name` mapped to `1`.
    pub fn cyclic(n: usize, name: &GenSym) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n, if n > 0 { vec![(name.clone(), 1 % n)] } else { Vec::new() })
            .expect("cyclic group")
    }

    /// Dihedral group of order `2n` with rotation `r` and reflection `s`.
    pub fn dihedral(n: usize, r: &GenSym, s: &GenSym) -> Self {
        let a = Self::cyclic(n, r);
        let b = Self::cyclic(2, s);
        let inv: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
        Self::semidirect_by_automorphisms(&a, &b, &BTreeMap::from([(s.clone(), inv)])).expect("dihedral")
    }

    /// Quaternion group of order 8 with generators `i ↦ a`, `j ↦ b`.
    pub fn quaternion(a: &GenSym, b: &GenSym) -> Self {
        // elements: (sign, unit) with unit in {1, i, j, k}; index = 4*sign + unit
        const UNIT: [[(u8, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        Self::from_fn(
            8,
            |x, y| {
                let (sx, ux, sy, uy) = (x / 4, x % 4, y / 4, y % 4);
                let (s, u) = UNIT[ux][uy];
                4 * ((sx + sy + s as usize) % 2) + u
            },
            vec![(a.clone(), 1), (b.clone(), 2)],
        )
        .expect("quaternion")
    }

    /// The group of a finite presentation, via the regular representation
    /// on the cosets of the trivial subgroup. Fails when more than `cap`
    /// cosets are needed.
    pub fn from_presentation(p: &FinitePresentation, cap: usize) -> Result<Self, FiniteError> {
        let table = coset_table(p, &[], cap.max(1)).ok_or(FiniteError::CapExceeded { order: cap + 1, cap })?;
        let n = table.first().map_or(1, |row| row.len());
        // right[x] is the permutation k ↦ k·x of the cosets
        let mut right: Vec<Option<Vec<u32>>> = vec![None; n];
        right[0] = Some((0..n as u32).collect());
        let mut queue = VecDeque::from(vec![0usize]);
        while let Some(x) = queue.pop_front() {
            for row in &table {
                let y = row[x] as usize;
                if right[y].is_none() {
                    let px = right[x].as_ref().unwrap();
                    right[y] = Some(px.iter().map(|&k| row[k as usize]).collect());
                    queue.push_back(y);
                }
            }
        }
        let mut mult = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mult.push(right[b].as_ref().expect("cosets are connected")[a]);
            }
        }
        let gens = p.generators().iter().zip(&table).map(|(g, row)| (g.clone(), row[0] as usize)).collect();
        Self::from_table(n, mult, gens)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[(GenSym, usize)] {
        &self.gens
    }

    pub fn with_generators(&self, gens: Vec<(GenSym, usize)>) -> Self {
        FiniteGroup { gens, ..self.clone() }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, e: &BigInt) -> usize {
        let ord = self.element_order(a);
        let r = e.mod_floor(&BigInt::from(ord)).to_usize().unwrap();
        (0..r).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn generator(&self, name: &GenSym) -> Option<usize> {
        self.gens.iter().find(|(g, _)| g == name).map(|(_, x)| *x)
    }

    /// Evaluates a word through the named generators; `None` if it uses an
    /// unknown name.
    pub fn eval(&self, w: &Word) -> Option<usize> {
        let mut x = self.identity;
        for (g, e) in w.letters() {
            let y = self.generator(g)?;
            x = self.mul(x, self.pow(y, e));
        }
        Some(x)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `seeds`, as a membership mask.
    pub fn subgroup_closure(&self, seeds: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        mask[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut queue: VecDeque<usize> = VecDeque::from(vec![self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in seeds {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// Normal closure of `seeds`.
    pub fn normal_closure(&self, seeds: &[usize]) -> Vec<bool> {
        let mut conj: Vec<usize> = Vec::new();
        for &s in seeds {
            for g in 0..self.n {
                conj.push(self.mul(self.mul(self.inv(g), s), g));
            }
        }
        conj.sort_unstable();
        conj.dedup();
        self.subgroup_closure(&conj)
    }

    /// `[X, Y]` for subgroups given as masks.
    pub fn commutator_subgroup(&self, x: &[bool], y: &[bool]) -> Vec<bool> {
        let mut seeds = Vec::new();
        for a in (0..self.n).filter(|&a| x[a]) {
            for b in (0..self.n).filter(|&b| y[b]) {
                seeds.push(self.commutator(a, b));
            }
        }
        seeds.sort_unstable();
        seeds.dedup();
        self.subgroup_closure(&seeds)
    }

    /// `γ₁ = G, γ_{i+1} = [γ_i, G]`, up to the first repetition.
    pub fn lower_central_series(&self) -> Vec<Vec<bool>> {
        let whole = vec![true; self.n];
        let mut series = vec![whole.clone()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap(), &whole);
            if next == *series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotency class (`Some(0)` for the trivial group), `None` if not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        let last = series.last().unwrap();
        (last.iter().filter(|&&b| b).count() == 1).then(|| series.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    /// Shortest-lex words over the named generators (positive letters only)
    /// for every element, in breadth-first order.
    pub fn transversal_words(&self) -> Vec<(usize, Word)> {
        let mut word: Vec<Option<Word>> = vec![None; self.n];
        word[self.identity] = Some(Word::identity());
        let mut order = vec![self.identity];
        let mut queue = VecDeque::from(vec![self.identity]);
        while let Some(x) = queue.pop_front() {
            for (g, s) in &self.gens {
                let y = self.mul(x, *s);
                if word[y].is_none() {
                    word[y] = Some(word[x].as_ref().unwrap().mul(&Word::gen(g)));
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        order.into_iter().map(|x| (x, word[x].clone().unwrap())).collect()
    }

    /// True when the named generators generate the whole group.
    pub fn is_generated(&self) -> bool {
        let seeds: Vec<usize> = self.gens.iter().map(|(_, x)| *x).collect();
        self.subgroup_closure(&seeds).iter().all(|&b| b)
    }

    /// The subgroup on the elements of `mask`, re-indexed in increasing order.
    /// Generators are named `a, b, …` and form a small generating set.
    pub fn subgroup(&self, mask: &[bool]) -> FiniteGroup {
        let elems: Vec<usize> = (0..self.n).filter(|&x| mask[x]).collect();
        let index: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut gens = Vec::new();
        let mut span = self.subgroup_closure(&[]);
        for &x in &elems {
            if !span[x] {
                gens.push(x);
                span = self.subgroup_closure(&gens);
            }
        }
        let named = gens.iter().enumerate().map(|(i, &x)| (crate::words::nth_letter(i), index[&x])).collect();
        FiniteGroup::from_fn(elems.len(), |a, b| index[&self.mul(elems[a], elems[b])], named)
            .expect("subgroup of a group")
    }

    /// Quotient by a normal subgroup mask (cosets indexed by first appearance).
    pub fn quotient(&self, normal: &[bool]) -> FiniteGroup {
        let mut coset = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if coset[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for k in (0..self.n).filter(|&k| normal[k]) {
                coset[self.mul(x, k)] = id;
            }
        }
        let gens = self.gens.iter().map(|(g, x)| (g.clone(), coset[*x])).collect();
        FiniteGroup::from_fn(reps.len(), |a, b| coset[self.mul(reps[a], reps[b])], gens).expect("quotient group")
    }

    /// Invariants of `G/[G,G]`.
    pub fn abelianization(&self) -> AbelianInvariants {
        let whole = vec![true; self.n];
        let q = self.quotient(&self.commutator_subgroup(&whole, &whole));
        abelian_invariants_of_abelian(&q)
    }

    /// Sylow `p`-subgroup as a mask (found by growing a `p`-subgroup greedily).
    pub fn sylow(&self, p: usize) -> Vec<bool> {
        let mut target = 1;
        let mut m = self.n;
        while m % p == 0 {
            m /= p;
            target *= p;
        }
        let mut current = self.subgroup_closure(&[]);
        let size = |mask: &[bool]| mask.iter().filter(|&&b| b).count();
        while size(&current) < target {
            let members: Vec<usize> = (0..self.n).filter(|&x| current[x]).collect();
            let mut grown = false;
            for x in 0..self.n {
                if current[x] || !is_power_of(self.element_order(x), p) {
                    continue;
                }
                let mut seeds = members.clone();
                seeds.push(x);
                let cand = self.subgroup_closure(&seeds);
                if is_power_of(size(&cand), p) {
                    current = cand;
                    grown = true;
                    break;
                }
            }
            assert!(grown, "a p-subgroup below Sylow size is properly contained in a larger p-subgroup");
        }
        current
    }

    /// Direct product; the generator names of the factors must be distinct.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let nb = b.n;
        let mut gens: Vec<(GenSym, usize)> = a.gens.iter().map(|(g, x)| (g.clone(), x * nb + b.identity)).collect();
        gens.extend(b.gens.iter().map(|(g, y)| (g.clone(), a.identity * nb + y)));
        FiniteGroup::from_fn(a.n * nb, |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb), gens)
            .expect("direct product")
    }

    /// `B ⋉ A` where each generator `y` of `B` acts on `A` by the permutation
    /// `θ(y)` (right action `a^y = θ(y)(a)`). Elements are pairs `b·a`, indexed
    /// `b·|A| + a`. Fails unless every `θ(y)` is an automorphism and the
    /// assignment respects the relations of `B`.
    pub fn semidirect_by_automorphisms(
        a: &FiniteGroup,
        b: &FiniteGroup,
        theta: &BTreeMap<GenSym, Vec<usize>>,
    ) -> Result<FiniteGroup, FiniteError> {
        for (y, perm) in theta {
            if b.generator(y).is_none() {
                return Err(FiniteError::UnknownGenerator(y.clone()));
            }
            check_automorphism(a, perm).map_err(|e| FiniteError::BadAction(format!("θ({y}): {e}")))?;
        }
        // θ(β) for every β ∈ B, using θ(βy) = θ(y) ∘ θ(β)
        let ident: Vec<usize> = (0..a.n).collect();
        let mut full: Vec<Option<Vec<usize>>> = vec![None; b.n];
        full[b.identity] = Some(ident.clone());
        let mut queue = VecDeque::from(vec![b.identity]);
        while let Some(beta) = queue.pop_front() {
            let tb = full[beta].clone().unwrap();
            for (y, ys) in &b.gens {
                let ty = theta.get(y).unwrap_or(&ident);
                let composed: Vec<usize> = tb.iter().map(|&x| ty[x]).collect();
                let target = b.mul(beta, *ys);
                match &full[target] {
                    None => {
                        full[target] = Some(composed);
                        queue.push_back(target);
                    }
                    Some(existing) if *existing != composed => {
                        return Err(FiniteError::BadAction("assignment does not respect the relations of B".into()));
                    }
                    Some(_) => {}
                }
            }
        }
        let full: Vec<Vec<usize>> = full
            .into_iter()
            .map(|t| t.ok_or_else(|| FiniteError::BadAction("B is not generated by its named generators".into())))
            .collect::<Result<_, _>>()?;
        let na = a.n;
        let mut gens: Vec<(GenSym, usize)> = a.gens.iter().map(|(g, x)| (g.clone(), b.identity * na + x)).collect();
        gens.extend(b.gens.iter().map(|(g, y)| (g.clone(), y * na + a.identity)));
        // (b1 a1)(b2 a2) = b1 b2 · θ(b2)(a1) a2
        FiniteGroup::from_fn(
            b.n * na,
            |x, y| {
                let (b1, a1, b2, a2) = (x / na, x % na, y / na, y % na);
                b.mul(b1, b2) * na + a.mul(full[b2][a1], a2)
            },
            gens,
        )
    }

    /// `B ⋉ A` with the action given as words (`θ(y)(x)` for generators).
    pub fn semidirect(a: &FiniteGroup, b: &FiniteGroup, action: &ActionSpec) -> Result<FiniteGroup, FiniteError> {
        let mut theta = BTreeMap::new();
        for (y, _) in &b.gens {
            let mut images = Vec::new();
            for (x, _) in &a.gens {
                let w = action
                    .get(y, x)
                    .ok_or_else(|| FiniteError::BadAction(format!("θ({y})({x}) undefined")))?;
                images.push(a.eval(w).ok_or_else(|| FiniteError::BadAction(format!("image word {w} not over A")))?);
            }
            let hom = GroupHom::from_generator_images(a, a, &images)?;
            theta.insert(y.clone(), hom.images);
        }
        Self::semidirect_by_automorphisms(a, b, &theta)
    }

    /// Standard wreath product `A ≀ B` on the base `A^B`, with `β` acting by
    /// `(f^β)(x) = f(xβ⁻¹)`, i.e. moving coordinate `b` to `bβ`. The named
    /// generators are those of `A` placed at the identity coordinate and those
    /// of `B`.
    pub fn standard_wreath(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, FiniteError> {
        let (na, nb) = (a.n, b.n);
        let size = na
            .checked_pow(nb as u32)
            .filter(|s| s.checked_mul(nb).is_some_and(|t| t <= expr::MODEL_CAP))
            .ok_or(FiniteError::CapExceeded { order: usize::MAX, cap: expr::MODEL_CAP })?;
        // base element f ↔ Σ f(x)·na^x
        let digits = |f: usize| -> Vec<usize> {
            let mut v = Vec::with_capacity(nb);
            let mut r = f;
            for _ in 0..nb {
                v.push(r % na);
                r /= na;
            }
            v
        };
        let pack = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * na + d);
        let base_gens: Vec<(GenSym, usize)> = a
            .gens
            .iter()
            .map(|(g, x)| {
                let mut v = vec![a.identity; nb];
                v[b.identity] = *x;
                (g.clone(), pack(&v))
            })
            .collect();
        let base = FiniteGroup::from_fn(
            size,
            |f, g| {
                let (df, dg) = (digits(f), digits(g));
                pack(&df.iter().zip(&dg).map(|(&x, &y)| a.mul(x, y)).collect::<Vec<_>>())
            },
            base_gens,
        )?;
        let mut theta = BTreeMap::new();
        for (y, ys) in &b.gens {
            let beta_inv = b.inv(*ys);
            let perm: Vec<usize> = (0..size)
                .map(|f| {
                    let df = digits(f);
                    pack(&(0..nb).map(|x| df[b.mul(x, beta_inv)]).collect::<Vec<_>>())
                })
                .collect();
            theta.insert(y.clone(), perm);
        }
        Self::semidirect_by_automorphisms(&base, b, &theta)
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn check_automorphism(a: &FiniteGroup, perm: &[usize]) -> Result<(), FiniteError> {
    if perm.len() != a.n {
        return Err(FiniteError::NotAHomomorphism("wrong length".into()));
    }
    let mut seen = vec![false; a.n];
    for &x in perm {
        if x >= a.n || std::mem::replace(&mut seen[x], true) {
            return Err(FiniteError::NotAHomomorphism("not a bijection".into()));
        }
    }
    for x in 0..a.n {
        for y in 0..a.n {
            if perm[a.mul(x, y)] != a.mul(perm[x], perm[y]) {
                return Err(FiniteError::NotAHomomorphism(format!("fails on ({x}, {y})")));
            }
        }
    }
    Ok(())
}

/// A homomorphism between table groups, stored as the image of every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub images: Vec<usize>,
}

impl GroupHom {
    /// Extends generator images (in the order of `src`'s named generators)
    /// to a homomorphism, verifying multiplicativity.
    pub fn from_generator_images(src: &FiniteGroup, tgt: &FiniteGroup, images: &[usize]) -> Result<Self, FiniteError> {
        assert_eq!(images.len(), src.gens.len());
        let mut img: Vec<Option<usize>> = vec![None; src.n];
        img[src.identity] = Some(tgt.identity);
        let mut queue = VecDeque::from(vec![src.identity]);
        while let Some(x) = queue.pop_front() {
            for ((_, s), &t) in src.gens.iter().zip(images) {
                let y = src.mul(x, *s);
                let v = tgt.mul(img[x].unwrap(), t);
                match img[y] {
                    None => {
                        img[y] = Some(v);
                        queue.push_back(y);
                    }
                    Some(u) if u != v => return Err(FiniteError::NotAHomomorphism("relation violated".into())),
                    Some(_) => {}
                }
            }
        }
        let images: Vec<usize> = img
            .into_iter()
            .map(|v| v.ok_or_else(|| FiniteError::NotAHomomorphism("source not generated".into())))
            .collect::<Result<_, _>>()?;
        for x in 0..src.n {
            for y in 0..src.n {
                if images[src.mul(x, y)] != tgt.mul(images[x], images[y]) {
                    return Err(FiniteError::NotAHomomorphism(format!("fails on ({x}, {y})")));
                }
            }
        }
        Ok(GroupHom { images })
    }

    pub fn is_bijective(&self, tgt: &FiniteGroup) -> bool {
        let mut seen = vec![false; tgt.n];
        self.images.len() == tgt.n && self.images.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }
}

/// Invariants of a finite abelian table group, from the counts of elements
/// killed by each prime power.
pub fn abelian_invariants_of_abelian(g: &FiniteGroup) -> AbelianInvariants {
    assert!(g.is_abelian(), "group is not abelian");
    let mut orders = Vec::new();
    let mut n = g.n;
    let mut p = 2;
    while n > 1 {
        if n % p != 0 {
            p += 1;
            continue;
        }
        while n % p == 0 {
            n /= p;
        }
        // r_k = log_p #{x : x^{p^k} = 1} = Σ_i min(k, e_i)
        let mut prev = 0u32;
        let mut r = Vec::new();
        let mut k = 1u32;
        loop {
            let pk = p.pow(k);
            let count = (0..g.n).filter(|&x| pk % g.element_order(x) == 0).count();
            let mut log = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                log += 1;
            }
            if log == prev {
                break;
            }
            r.push(log - prev);
            prev = log;
            k += 1;
        }
        // r[k-1] = #{i : e_i >= k}
        for (k, w) in r.iter().enumerate() {
            let next = r.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(w - next) {
                orders.push(BigInt::from(p.pow(k as u32 + 1)));
            }
        }
    }
    AbelianInvariants::from_cyclic_orders(orders)
}

/// Isomorphism test: exhaustive generator-image search below order 16,
/// invariant comparison (order, abelianization, class, element-order profile)
/// otherwise. `None` means the invariants agree but no search was attempted.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<bool> {
    if g.n != h.n {
        return Some(false);
    }
    let profile = |x: &FiniteGroup| {
        let mut v: Vec<usize> = (0..x.n).map(|e| x.element_order(e)).collect();
        v.sort_unstable();
        v
    };
    if profile(g) != profile(h) || g.abelianization() != h.abelianization() || g.nilpotency_class() != h.nilpotency_class() {
        return Some(false);
    }
    if g.n >= 16 {
        return None;
    }
    let src = g.subgroup(&vec![true; g.n]);
    let targets: Vec<Vec<usize>> = src
        .gens
        .iter()
        .map(|(_, x)| (0..h.n).filter(|&y| h.element_order(y) == src.element_order(*x)).collect())
        .collect();
    let mut choice = vec![0usize; targets.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&targets).map(|(&i, t)| t[i]).collect();
        if let Ok(hom) = GroupHom::from_generator_images(&src, h, &images) {
            if hom.is_bijective(h) {
                return Some(true);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Some(false);
            }
            choice[k] += 1;
            if choice[k] < targets[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
