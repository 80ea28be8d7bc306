//! Nilpotent quotients of finitely presented groups, one lower-central
//! layer at a time.
//!
//! Given a consistent weighted presentation of `Q = G/γ_c(G)`, every relation
//! that may change in `G/γ_{c+1}(G)` receives a fresh central "tail"
//! generator of weight `c`: all power relations, the commutator relations
//! `[g_j, g_i]` with `w_i + w_j ≤ c` that are not definitions, and the images
//! of presentation generators that do not define a pc generator. The overlap
//! tests and the relators of `G`, collected in this extension, yield integer
//! relations among the tails; their Hermite form decides which tails survive
//! as new generators. Tail columns are ordered so that the commutators
//! `[g_j, g_i]` with `w_j = c-1`, `w_i = 1` come last; these generate the new
//! layer, so every other tail is eliminated and each new generator is
//! defined by such a commutator.

mod coset;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::{cokernel_invariants, AbelianInvariants, Lattice, Matrix};
use crate::pc::{ExpVec, PcPresentation, Sparse};
use crate::presentations::FinitePresentation;
use crate::scalar::Int;
use crate::words::{commutator, GenSym, Word};

pub use coset::{coset_enumeration, coset_table};

/// Default class cap for nilpotency detection.
pub const DEFAULT_CLASS_CAP: usize = 8;

/// Default limit on the coset table used to certify finite quotients.
pub const DEFAULT_COSET_LIMIT: usize = 1 << 20;

/// Presentations with at most this many pc generators get the full overlap
/// test suite in every step; larger ones only the tests whose weights sum to
/// at most the new class.
const FULL_OVERLAP_LIMIT: usize = 40;

/// How a pc generator was introduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definition {
    /// Image of the presentation generator with this index.
    Image(usize),
    /// `[g_j, g_i]` with `j > i`.
    Commutator(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NqError {
    #[error("class must be at least 1")]
    ZeroClass,
}

/// A consistent weighted pc presentation of `G/γ_{j+1}(G)` with the
/// epimorphism from the presentation generators.
#[derive(Clone, Debug)]
pub struct NqResult<E> {
    pub pc: PcPresentation<E>,
    pub generators: Vec<GenSym>,
    pub images: Vec<ExpVec<E>>,
    pub definitions: Vec<Definition>,
    /// Invariants of `γ_i/γ_{i+1}` for `i = 1, …, j`.
    pub layers: Vec<AbelianInvariants>,
}

impl<E: Int> NqResult<E> {
    fn trivial(p: &FinitePresentation) -> Self {
        NqResult {
            pc: PcPresentation::new(Vec::new(), Vec::new()),
            generators: p.generators().to_vec(),
            images: vec![Vec::new(); p.generators().len()],
            definitions: Vec::new(),
            layers: Vec::new(),
        }
    }

    /// Requested class `j` (number of layers computed).
    pub fn requested_class(&self) -> usize {
        self.layers.len()
    }

    /// Class of the quotient itself.
    pub fn class(&self) -> usize {
        self.pc.class()
    }

    /// True when the last computed layer is trivial, i.e. the lower central
    /// series of `G` has become constant.
    pub fn stabilized(&self) -> bool {
        self.layers.last().is_some_and(|l| l.is_trivial())
    }

    /// Order of the quotient (`None` when infinite).
    pub fn order(&self) -> Option<BigInt> {
        self.pc.group_order().map(|o| o.to_big())
    }

    /// Torsion-free rank of every layer.
    pub fn ranks_per_weight(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.free_rank).collect()
    }

    pub fn image(&self, g: &GenSym) -> Option<&ExpVec<E>> {
        self.generators.iter().position(|h| h == g).map(|i| &self.images[i])
    }

    /// Image of a word in the presentation generators.
    pub fn eval(&self, w: &Word) -> ExpVec<E> {
        eval_word(&self.pc, &self.generators, &self.images, w)
    }

    /// The definition of every pc generator as a word in the presentation
    /// generators.
    pub fn definition_words(&self) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::with_capacity(self.definitions.len());
        for d in &self.definitions {
            let w = match *d {
                Definition::Image(x) => Word::gen(&self.generators[x]),
                Definition::Commutator(j, i) => commutator(&out[j], &out[i]),
            };
            out.push(w);
        }
        out
    }
}

fn eval_word<E: Int>(pc: &PcPresentation<E>, gens: &[GenSym], images: &[ExpVec<E>], w: &Word) -> ExpVec<E> {
    let mut x = pc.identity();
    for (g, e) in w.letters() {
        let i = gens.iter().position(|h| h == g).expect("word over the presentation generators");
        let img = pc.sparse(&images[i]);
        pc.mul_sparse_pow(&mut x, &img, &E::from_big(e));
    }
    x
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tail {
    Power(usize),
    Comm(usize, usize),
    Image(usize),
}

/// Computes `G/γ_{j+1}(G)`; stops early once a layer is trivial (the
/// remaining layers are then trivial too and are recorded as such).
pub fn nilpotent_quotient<E: Int>(p: &FinitePresentation, j: usize) -> Result<NqResult<E>, NqError> {
    if j == 0 {
        return Err(NqError::ZeroClass);
    }
    let mut q = NqResult::trivial(p);
    for c in 1..=j {
        if q.stabilized() {
            q.layers.push(AbelianInvariants::trivial());
            continue;
        }
        q = next_layer(p, &q, c);
    }
    Ok(q)
}

fn next_layer<E: Int>(p: &FinitePresentation, q: &NqResult<E>, c: usize) -> NqResult<E> {
    let old = &q.pc;
    let n = old.len();
    let is_def_comm = |j: usize, i: usize| q.definitions.contains(&Definition::Commutator(j, i));
    let defining_image = |x: usize| q.definitions.iter().position(|d| *d == Definition::Image(x));

    let mut others = Vec::new();
    let mut candidates = Vec::new();
    for i in 0..n {
        if old.order_of(i).is_some() {
            others.push(Tail::Power(i));
        }
    }
    for jj in 0..n {
        for i in 0..jj {
            let s = old.weight(i) + old.weight(jj);
            if s > c || is_def_comm(jj, i) {
                continue;
            }
            if old.weight(jj) == c - 1 && old.weight(i) == 1 {
                candidates.push(Tail::Comm(jj, i));
            } else {
                others.push(Tail::Comm(jj, i));
            }
        }
    }
    for x in 0..p.generators().len() {
        if defining_image(x).is_none() {
            if c == 1 {
                candidates.push(Tail::Image(x));
            } else {
                others.push(Tail::Image(x));
            }
        }
    }
    let tails: Vec<Tail> = others.iter().chain(&candidates).copied().collect();
    let t = tails.len();
    let col_of = |tail: Tail| tails.iter().position(|&u| u == tail);

    // the extension with free central tails
    let mut weights = old.weights().to_vec();
    weights.extend(std::iter::repeat_n(c, t));
    let mut orders = old.orders().to_vec();
    orders.extend(std::iter::repeat_n(E::zero(), t));
    let mut ext = PcPresentation::new(weights, orders);
    let with_tail = |rhs: &Sparse<E>, tail: Option<usize>| {
        let mut v = rhs.clone();
        if let Some(k) = tail {
            v.push((n + k, E::one()));
        }
        v
    };
    for i in 0..n {
        if old.order_of(i).is_some() {
            ext.set_power(i, with_tail(old.power(i), col_of(Tail::Power(i))));
        }
        for h in 0..i {
            ext.set_comm(i, h, with_tail(old.comm(i, h), col_of(Tail::Comm(i, h))));
        }
    }
    ext.finalize();
    let ext_images: Vec<ExpVec<E>> = (0..p.generators().len())
        .map(|x| match defining_image(x) {
            Some(k) => ext.gen(k),
            None => {
                let mut v = q.images[x].clone();
                v.extend(std::iter::repeat_n(E::zero(), t));
                v[n + col_of(Tail::Image(x)).unwrap()] = E::one();
                v
            }
        })
        .collect();

    // relations among the tails
    let mut lattice = Lattice::<E>::new(t);
    let mut add = |v: ExpVec<E>, what: &dyn Fn() -> String| {
        assert!(v[..n].iter().all(|e| e.is_zero()), "discrepancy outside the tails: {}", what());
        let row = v[n..].to_vec();
        if row.iter().any(|e| !e.is_zero()) {
            lattice.insert(row);
        }
    };
    let bound = (n > FULL_OVERLAP_LIMIT).then_some(c);
    // The extension is inconsistent until the tails are constrained, so
    // inverses in it are one-sided; the two collected forms agree outside the
    // central tails and differ by a vector of tails.
    for o in ext.overlaps_among(n, bound) {
        if o.left != o.right {
            let diff = o.left.iter().zip(&o.right).map(|(l, r)| r.clone() - l.clone()).collect();
            add(diff, &|| format!("overlap {} {:?}", o.kind, o.generators));
        }
    }
    for r in p.relators() {
        add(eval_word(&ext, p.generators(), &ext_images, r), &|| format!("relator {r}"));
    }
    lattice.reduce();

    // survivors and how each tail is expressed in them
    let mut survivors: Vec<usize> = Vec::new();
    let mut survivor_order: Vec<E> = Vec::new();
    for col in 0..t {
        match lattice.pivot_row(col) {
            Some(row) if row[col].is_one() => {}
            Some(row) => {
                survivors.push(col);
                survivor_order.push(row[col].clone());
            }
            None => {
                survivors.push(col);
                survivor_order.push(E::zero());
            }
        }
    }
    assert!(survivors.iter().all(|&s| s >= others.len()), "a non-defining tail survived at class {c}");
    let reduce = |mut v: Vec<E>| -> Vec<E> {
        for col in 0..t {
            if v[col].is_zero() {
                continue;
            }
            if let Some(row) = lattice.pivot_row(col) {
                let q = v[col].div_floor(&row[col]);
                if !q.is_zero() {
                    for k in col..t {
                        if !row[k].is_zero() {
                            let cur = std::mem::replace(&mut v[k], E::zero());
                            v[k] = cur - q.clone() * row[k].clone();
                        }
                    }
                }
            }
        }
        v
    };
    let express = |col: usize| -> Sparse<E> {
        let mut unit = vec![E::zero(); t];
        unit[col] = E::one();
        let v = reduce(unit);
        survivors
            .iter()
            .enumerate()
            .filter(|(_, &s)| !v[s].is_zero())
            .map(|(k, &s)| (n + k, v[s].clone()))
            .collect()
    };

    let mut weights = old.weights().to_vec();
    weights.extend(std::iter::repeat_n(c, survivors.len()));
    let mut orders = old.orders().to_vec();
    orders.extend(survivor_order.iter().cloned());
    let mut pc = PcPresentation::new(weights, orders);
    let append = |rhs: &Sparse<E>, tail: Option<usize>| {
        let mut v = rhs.clone();
        if let Some(col) = tail {
            v.extend(express(col));
        }
        v
    };
    for i in 0..n {
        if old.order_of(i).is_some() {
            pc.set_power(i, append(old.power(i), col_of(Tail::Power(i))));
        }
        for h in 0..i {
            pc.set_comm(i, h, append(old.comm(i, h), col_of(Tail::Comm(i, h))));
        }
    }
    for (k, &col) in survivors.iter().enumerate() {
        if let Some(row) = lattice.pivot_row(col) {
            let neg: Vec<E> = (0..t).map(|m| if m > col { -row[m].clone() } else { E::zero() }).collect();
            let v = reduce(neg);
            let rhs = survivors
                .iter()
                .enumerate()
                .filter(|(_, &s)| !v[s].is_zero())
                .map(|(m, &s)| (n + m, v[s].clone()))
                .collect();
            pc.set_power(n + k, rhs);
        }
    }
    pc.finalize();

    let mut definitions = q.definitions.clone();
    for &col in &survivors {
        definitions.push(match tails[col] {
            Tail::Comm(jj, i) => Definition::Commutator(jj, i),
            Tail::Image(x) => Definition::Image(x),
            Tail::Power(_) => unreachable!("power tails never survive"),
        });
    }
    let images = (0..p.generators().len())
        .map(|x| {
            let mut v = pc.identity();
            match defining_image(x) {
                Some(k) => v[k] = E::one(),
                None => {
                    for (i, e) in q.images[x].iter().enumerate() {
                        v[i] = e.clone();
                    }
                    for (k, e) in express(col_of(Tail::Image(x)).unwrap()) {
                        v[k] = e;
                    }
                }
            }
            v
        })
        .collect();

    // the new layer: Z^t modulo the relation lattice
    let rows: Vec<Vec<E>> = lattice.rows();
    let layer = cokernel_invariants(&Matrix::from_rows(
        rows.into_iter()
            .filter(|r| {
                let lead = r.iter().position(|e| !e.is_zero()).unwrap();
                !r[lead].is_one()
            })
            .map(|r| survivors.iter().map(|&s| r[s].clone()).collect())
            .collect(),
        survivors.len(),
    ));
    let mut layers = q.layers.clone();
    layers.push(layer);
    NqResult { pc, generators: q.generators.clone(), images, definitions, layers }
}

/// Outcome of nilpotency detection.
#[derive(Clone, Debug)]
pub enum ClassDetection<E> {
    /// `G` is nilpotent of class `class` (at least 1) and equals `quotient`.
    Nilpotent { class: usize, quotient: NqResult<E> },
    NotNilpotentWithinCap { cap: usize, reason: String },
}

impl<E> ClassDetection<E> {
    pub fn class(&self) -> Option<usize> {
        match self {
            ClassDetection::Nilpotent { class, .. } => Some(*class),
            ClassDetection::NotNilpotentWithinCap { .. } => None,
        }
    }
}

/// Finds the least `k ≤ cap` at which the lower central series of `G`
/// stabilizes and certifies `γ_{k+1}(G) = 1`: for a finite quotient by
/// comparing with the order of `G` from coset enumeration, and for a
/// relator-free presentation on at most one generator directly.
pub fn detect_class<E: Int>(p: &FinitePresentation, cap: usize) -> ClassDetection<E> {
    detect_class_with_limit(p, cap, DEFAULT_COSET_LIMIT)
}

pub fn detect_class_with_limit<E: Int>(p: &FinitePresentation, cap: usize, coset_limit: usize) -> ClassDetection<E> {
    let cap = cap.max(1);
    let mut q = NqResult::trivial(p);
    for c in 1..=cap + 1 {
        q = next_layer(p, &q, c);
        if q.stabilized() {
            break;
        }
    }
    if !q.stabilized() {
        return ClassDetection::NotNilpotentWithinCap {
            cap,
            reason: format!("lower central series still descending at class {cap}"),
        };
    }
    q.layers.pop();
    let class = q.layers.len().max(1);
    while q.layers.len() < class {
        q.layers.push(AbelianInvariants::trivial());
    }
    match q.order() {
        Some(order) => match coset_enumeration(p, &[], coset_limit) {
            Some(index) if BigInt::from(index) == order => ClassDetection::Nilpotent { class, quotient: q },
            Some(index) => ClassDetection::NotNilpotentWithinCap {
                cap,
                reason: format!("|G| = {index} but its largest nilpotent quotient has order {order}"),
            },
            None => ClassDetection::NotNilpotentWithinCap {
                cap,
                reason: format!("coset enumeration exceeded {coset_limit} cosets"),
            },
        },
        None if p.relators().is_empty() && p.generators().len() <= 1 => {
            ClassDetection::Nilpotent { class, quotient: q }
        }
        None => ClassDetection::NotNilpotentWithinCap {
            cap,
            reason: "infinite nilpotent quotient; equality with G cannot be certified".into(),
        },
    }
}
