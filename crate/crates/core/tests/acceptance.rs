//! Acceptance suite: one line per criterion.
//!
//! Runs as a plain binary so the lines show up in `cargo test` output. Two
//! criteria have genuine counterexamples in the corpus; they print FAIL with
//! the offending instances, and the run only aborts if the set of failures
//! differs from the documented one.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nilmult::baer::{baer_quotient, relative_baer_quotient, Cover, Semidirect, Status};
use nilmult::finite::{parse_group_expr, schur_multiplier_oracle, FiniteGroup, SplitKind, DEFAULT_ORACLE_CAP};
use nilmult::harness::{
    free_product_normal_form, kernel_identity, parse_scenarios, run_scenario, subgroup_identity, Check, Letter, Scenario,
};
use nilmult::linalg::{smith_normal_form, AbelianInvariants, Matrix};
use nilmult::nq::nilpotent_quotient;
use nilmult::presentations::{family_sv, standard_wreath_presentation, FinitePresentation, Variety};
use nilmult::words::{letters, GenSym};

const CAP: usize = 6;

struct Outcome {
    ok: bool,
    detail: String,
    /// Instances that fail for a documented mathematical reason.
    known: BTreeSet<String>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { ok: true, detail: detail.into(), known: BTreeSet::new() }
    }
}

fn pres(text: &str) -> FinitePresentation {
    FinitePresentation::parse(text).unwrap()
}

fn built(expr: &str) -> nilmult::finite::BuiltGroup {
    parse_group_expr(expr).and_then(|e| e.build()).unwrap_or_else(|e| panic!("{expr}: {e}"))
}

fn corpus() -> Vec<Scenario> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    let mut out = Vec::new();
    for f in files.iter().filter(|f| f.extension().is_some_and(|x| x == "scn")) {
        let stem = f.file_stem().unwrap().to_string_lossy().into_owned();
        for (id, s) in parse_scenarios(&std::fs::read_to_string(f).unwrap(), &stem, Some(&dir)) {
            out.push(s.unwrap_or_else(|e| panic!("{id}: {e}")));
        }
    }
    out
}

/// The corpus groups that split as `B ⋉ A` with an explicit action.
fn corpus_semidirects() -> Vec<(Scenario, FinitePresentation, Semidirect, Option<FiniteGroup>)> {
    let mut out = Vec::new();
    for s in corpus() {
        let g = built(&s.group);
        let Some(split) = g.split.clone() else { continue };
        let SplitKind::Semidirect(mut action) = split.kind else { continue };
        let (a, b) = (split.a.presentation.clone(), split.b.presentation.clone());
        let mut model = g.model.clone();
        if !s.actions.is_empty() {
            for e in &s.actions {
                action.parse_entry(e, a.generators(), b.generators()).unwrap();
            }
            model = match (&split.a.model, &split.b.model) {
                (Some(ma), Some(mb)) => Some(FiniteGroup::semidirect(ma, mb, &action).unwrap()),
                _ => None,
            };
        }
        let sd = Semidirect::new(a, b, action);
        let p = sd.presentation().unwrap();
        out.push((s, p, sd, model));
    }
    out
}

// ---------------------------------------------------------------------------
// independent oracles

/// Prime-power decomposition by trial division.
fn prime_powers(n: u64) -> Vec<(u64, u32)> {
    let (mut n, mut p, mut out) = (n, 2, Vec::new());
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Per prime, the exponents of the cyclic primary components, largest first.
fn partitions(x: &AbelianInvariants) -> BTreeMap<u64, Vec<u32>> {
    let mut m: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for t in &x.torsion {
        for (p, e) in prime_powers(t.to_u64().expect("small torsion")) {
            m.entry(p).or_default().push(e);
        }
    }
    for v in m.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    m
}

/// Multiset inclusion of primary components, and free ranks.
fn direct_factor(x: &AbelianInvariants, y: &AbelianInvariants) -> bool {
    let py = partitions(y);
    x.free_rank <= y.free_rank
        && partitions(x).iter().all(|(p, ex)| {
            let mut ey = py.get(p).cloned().unwrap_or_default();
            ex.iter().all(|e| match ey.iter().position(|f| f == e) {
                Some(i) => {
                    ey.remove(i);
                    true
                }
                None => false,
            })
        })
}

/// A finite abelian group is a quotient (equivalently, a subgroup) of another
/// iff its partitions are dominated part by part.
fn fits(x: &AbelianInvariants, y: &AbelianInvariants) -> bool {
    let py = partitions(y);
    partitions(x).iter().all(|(p, ex)| {
        let ey = py.get(p).cloned().unwrap_or_default();
        ex.len() <= ey.len() && ex.iter().zip(&ey).all(|(a, b)| a <= b)
    })
}

fn mobius(n: u64) -> i64 {
    let f = prime_powers(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Rank of the degree-`k` part of the free Lie ring on `n` generators.
fn witt(n: u64, k: u64) -> u64 {
    let s: i64 = (1..=k).filter(|d| k % d == 0).map(|d| mobius(d) * (n as i64).pow((k / d) as u32)).sum();
    (s / k as i64) as u64
}

fn mat_mul(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    (0..a.rows())
        .map(|i| (0..b.cols()).map(|j| (0..a.cols()).map(|k| a[(i, k)].clone() * b[(k, j)].clone()).sum()).collect())
        .collect()
}

/// Determinant by cofactor-free Gaussian elimination over the rationals,
/// kept as (numerator, denominator) pairs of big integers.
fn det(m: &Matrix<BigInt>) -> BigInt {
    use num_integer::Integer;
    let n = m.rows();
    let mut a: Vec<Vec<(BigInt, BigInt)>> = (0..n).map(|i| (0..n).map(|j| (m[(i, j)].clone(), BigInt::one())).collect()).collect();
    let mut d = (BigInt::one(), BigInt::one());
    let norm = |(p, q): (BigInt, BigInt)| {
        let g = p.gcd(&q);
        let (p, q) = (p / &g, q / &g);
        if q < BigInt::zero() {
            (-p, -q)
        } else {
            (p, q)
        }
    };
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].0.is_zero()) else { return BigInt::zero() };
        if piv != k {
            a.swap(piv, k);
            d.0 = -d.0;
        }
        let (pn, pd) = a[k][k].clone();
        d = norm((d.0 * &pn, d.1 * &pd));
        for i in k + 1..n {
            let (fn_, fd) = norm((a[i][k].0.clone() * &pd, a[i][k].1.clone() * &pn));
            for j in k..n {
                let (xn, xd) = a[k][j].clone();
                let (yn, yd) = a[i][j].clone();
                let (sn, sd) = (fn_.clone() * xn, fd.clone() * xd);
                a[i][j] = norm((yn * &sd - sn * &yd, yd * sd));
            }
        }
    }
    assert!(d.1.is_one());
    d.0
}

/// Independent SNF postconditions: `U·M·V = D`, `D` diagonal with a
/// nonnegative divisibility chain, `U` and `V` of determinant ±1.
fn snf_ok(m: &Matrix<BigInt>) -> bool {
    let s = smith_normal_form(m);
    let prod = mat_mul(&Matrix::from_rows(mat_mul(&s.u, m), m.cols()), &s.v);
    let (r, c) = (m.rows(), m.cols());
    for i in 0..r {
        for j in 0..c {
            if prod[i][j] != s.d[(i, j)] || (i != j && !prod[i][j].is_zero()) {
                return false;
            }
        }
    }
    let diag: Vec<BigInt> = (0..r.min(c)).map(|i| prod[i][i].clone()).collect();
    let chain = diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
    let unit = |x: BigInt| x == BigInt::one() || x == -BigInt::one();
    chain && diag.iter().all(|x| *x >= BigInt::zero()) && unit(det(&s.u)) && unit(det(&s.v))
}

/// Reduced form in a free product of finite groups, computed with the group
/// tables only.
fn free_reduce(factors: &[FiniteGroup], w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for &(i, x) in w {
        if x == factors[i].identity() {
            continue;
        }
        if let Some(last) = out.last_mut().filter(|l| l.0 == i) {
            last.1 = factors[i].mul(last.1, x);
            if last.1 == factors[i].identity() {
                out.pop();
            }
        } else {
            out.push((i, x));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// criteria

fn cyclic_triviality() -> Outcome {
    let t = Instant::now();
    for n in 2..=12 {
        for c in 1..=4 {
            let r = baer_quotient(&pres(&format!("gens: a\nrel: a^{n}")), c, CAP).unwrap();
            if r.invariants != AbelianInvariants::trivial() {
                return Outcome { ok: false, detail: format!("Z{n}, c={c}: {}", r.invariants), known: BTreeSet::new() };
            }
        }
    }
    let s = t.elapsed().as_secs_f64();
    Outcome { ok: s < 10.0, detail: format!("44 instances trivial in {s:.2}s (budget 10s)"), known: BTreeSet::new() }
}

fn oracle_agreement() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for e in ["Z4", "Z6", "product:Z2,Z2", "product:Z2,Z4", "product:Z3,Z3", "Q8", "dihedral:4", "wreath:Z2,Z2"] {
        let g = built(e);
        let m = schur_multiplier_oracle(g.model.as_ref().unwrap(), DEFAULT_ORACLE_CAP).unwrap();
        let b = baer_quotient(&g.presentation, 1, CAP).unwrap().invariants;
        if b != m {
            bad.push(format!("{e}: {b} vs {m}"));
        }
    }
    let s = t.elapsed().as_secs_f64();
    if bad.is_empty() && s < 120.0 {
        Outcome::pass(format!("8 groups agree with bar-resolution H₂ in {s:.2}s"))
    } else {
        Outcome { ok: false, detail: format!("{bad:?} ({s:.2}s)"), known: BTreeSet::new() }
    }
}

fn presentation_independence() -> Outcome {
    let d4 = built("dihedral:4").presentation;
    let a = pres("gens: a\nrel: a^2");
    let b = pres("gens: b\nrel: b^2");
    let w = standard_wreath_presentation(&a, &b, &FiniteGroup::cyclic(2, &GenSym::new("b"))).unwrap();
    for c in 1..=2 {
        let (x, y) = (baer_quotient(&d4, c, CAP).unwrap(), baer_quotient(&w, c, CAP).unwrap());
        if x != y {
            return Outcome { ok: false, detail: format!("c={c}: {x:?} vs {y:?}"), known: BTreeSet::new() };
        }
    }
    Outcome::pass("dihedral and wreath presentations of D₄ give identical results for c = 1, 2")
}

fn direct_factors() -> Outcome {
    let mut known = BTreeSet::new();
    let (mut checked, mut unexpected) = (0, Vec::new());
    for (s, g, sd, _) in corpus_semidirects() {
        if sd.b.generators().is_empty() {
            continue;
        }
        for &c in &s.cs {
            let Ok(mg) = baer_quotient(&g, c, CAP) else { continue };
            let (Ok(ma), Ok(mb)) = (baer_quotient(&sd.a, c, CAP), baer_quotient(&sd.b, c, CAP)) else { continue };
            checked += 1;
            if !direct_factor(&mb.invariants, &mg.invariants) {
                unexpected.push(format!("{} c={c}: N_cM(B) = {} not in {}", s.id, mb.invariants, mg.invariants));
            }
            if !direct_factor(&ma.invariants, &mg.invariants) {
                known.insert(format!("{} c={c}: N_cM(A) = {} not in N_cM(G) = {}", s.id, ma.invariants, mg.invariants));
            }
        }
    }
    let expected: BTreeSet<String> = ["klein-by-z2 c=2: N_cM(A) = Z/2 + Z/2 not in N_cM(G) = Z/2 + Z/4".to_string()].into();
    if !unexpected.is_empty() || known != expected {
        return Outcome { ok: false, detail: format!("unexpected: {unexpected:?} {known:?}"), known: BTreeSet::new() };
    }
    Outcome {
        ok: known.is_empty(),
        detail: format!("{checked} (G, c) pairs; N_cM(B) always a direct factor"),
        known,
    }
}

fn cyclic_by_cyclic() -> Outcome {
    let t = Instant::now();
    let mut known = BTreeSet::new();
    let (mut checked, mut unexpected) = (0, Vec::new());
    for (s, g, sd, model) in corpus_semidirects() {
        let nilpotent = model.as_ref().is_some_and(|m| m.is_nilpotent());
        if sd.a.generators().len() != 1 || sd.b.generators().len() != 1 || !nilpotent {
            continue;
        }
        for c in (1..=2).filter(|c| s.cs.contains(c)) {
            let mg = baer_quotient(&g, c, CAP).unwrap().invariants;
            let k = relative_baer_quotient(&sd.k_spec().unwrap(), c, CAP).unwrap().invariants;
            let d = relative_baer_quotient(&sd.d_spec().unwrap(), c, CAP).unwrap().invariants;
            checked += 1;
            if k != mg {
                unexpected.push(format!("{} c={c}: K-side {k} vs {mg}", s.id));
            }
            if d != mg {
                known.insert(format!("{} c={c}: D-side {d} vs N_cM(G) = {mg}", s.id));
            }
        }
    }
    let expected: BTreeSet<String> = [
        "d4 c=2: D-side Z/2 + Z/2 vs N_cM(G) = Z/2 + Z/4",
        "dihedral-2 c=2: D-side Z/2 vs N_cM(G) = Z/2 + Z/2",
        "dihedral-4 c=2: D-side Z/2 + Z/2 vs N_cM(G) = Z/2 + Z/4",
        "dihedral-8 c=2: D-side Z/2 + Z/2 vs N_cM(G) = Z/2 + Z/4",
        "klein c=2: D-side Z/2 vs N_cM(G) = Z/2 + Z/2",
        "z4-z4-inv c=2: D-side Z/2 + Z/2 vs N_cM(G) = Z/2 + Z/4",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    let s = t.elapsed().as_secs_f64();
    if !unexpected.is_empty() || known != expected {
        return Outcome { ok: false, detail: format!("unexpected: {unexpected:?} {known:?}"), known: BTreeSet::new() };
    }
    Outcome {
        ok: known.is_empty(),
        detail: format!("{checked} (G, c) instances in {s:.2}s; the (K, T) side always agrees"),
        known,
    }
}

fn cyclic_pres(g: &str, n: usize) -> FinitePresentation {
    pres(&format!("gens: {g}\nrel: {g}^{n}"))
}

fn klein_pres(x: &str, y: &str) -> FinitePresentation {
    pres(&format!("gens: {x}, {y}\nrel: {x}^2, {y}^2, [{x},{y}]"))
}

fn klein_model(x: &str, y: &str) -> FiniteGroup {
    FiniteGroup::direct_product(&FiniteGroup::cyclic(2, &GenSym::new(x)), &FiniteGroup::cyclic(2, &GenSym::new(y)))
}

fn truncation_subgroups() -> Outcome {
    let t = Instant::now();
    let tops = [
        (cyclic_pres("a", 4), "Z4"),
        (cyclic_pres("a", 2), "Z2"),
        (klein_pres("a", "b"), "Klein"),
    ];
    let bottoms = [(cyclic_pres("c", 2), FiniteGroup::cyclic(2, &GenSym::new("c")), "Z2"), (klein_pres("c", "d"), klein_model("c", "d"), "Klein")];
    let mut configs = 0;
    let mut slowest = 0.0f64;
    for (a, an) in &tops {
        for (b, bm, bn) in &bottoms {
            // ranks (1,1), (2,1), (2,2): Z_n over Z2 twice, Klein over both
            if a.generators().len() == 1 && b.generators().len() == 2 {
                continue;
            }
            for v in [Variety::Trivial, Variety::Abelian] {
                let s = family_sv(v, a, b, Some(bm)).unwrap();
                for c in 1..=2 {
                    for j in [c + 2, c + 3] {
                        let t0 = Instant::now();
                        let r = subgroup_identity(a, b, &s, c, j).unwrap();
                        let dt = t0.elapsed().as_secs_f64();
                        slowest = slowest.max(dt);
                        configs += 1;
                        if !r.holds() || dt > 120.0 {
                            return Outcome {
                                ok: false,
                                detail: format!("{an}, {bn}, {v:?}, c={c}, j={j} ({dt:.1}s): {}", r.witness()),
                                known: BTreeSet::new(),
                            };
                        }
                    }
                }
            }
        }
    }
    let s = t.elapsed().as_secs_f64();
    Outcome::pass(format!("{configs} configurations equal in {s:.2}s (slowest {slowest:.2}s)"))
}

fn truncation_kernel() -> Outcome {
    let mut n = 0;
    for an in [2, 4] {
        for bn in [2, 3] {
            let (a, b) = (cyclic_pres("a", an), cyclic_pres("b", bn));
            for c in 1..=2 {
                for j in c + 1..=c + 3 {
                    let r = kernel_identity(&a, &b, c, j).unwrap();
                    n += 1;
                    if !r.holds() {
                        return Outcome {
                            ok: false,
                            detail: format!("Z{an}, Z{bn}, c={c}, j={j}: {}", r.witness()),
                            known: BTreeSet::new(),
                        };
                    }
                }
            }
        }
    }
    Outcome::pass(format!("{n} configurations equal"))
}

fn epimorphisms() -> Outcome {
    let (mut pass, mut inconclusive, mut fail) = (0, 0, Vec::new());
    for mut s in corpus() {
        s.checks = vec![Check::Epimorphism];
        for r in run_scenario(&s).checks {
            match r.status {
                Status::Pass => pass += 1,
                Status::Inconclusive => inconclusive += 1,
                Status::Fail => fail.push(format!("{} c={:?}: {}", s.id, r.c, r.witness)),
            }
        }
    }
    // recomputed independently for the split corpus groups
    let mut direct = 0;
    for (s, g, sd, _) in corpus_semidirects() {
        for c in (1..=2).filter(|c| s.cs.contains(c)) {
            let Ok(mg) = baer_quotient(&g, c, CAP) else { continue };
            let (Ok(mb), Ok(kt)) = (baer_quotient(&sd.b, c, CAP), relative_baer_quotient(&sd.k_spec().unwrap(), c, CAP)) else {
                continue;
            };
            let rhs = mb.invariants.direct_sum(&kt.invariants);
            if !mg.invariants.is_finite() || !rhs.is_finite() {
                continue;
            }
            direct += 1;
            if !fits(&rhs, &mg.invariants) {
                fail.push(format!("{} c={c}: {rhs} does not fit {}", s.id, mg.invariants));
            }
        }
    }
    Outcome {
        ok: fail.is_empty() && pass > 0,
        detail: if fail.is_empty() {
            format!("{pass} pass, {inconclusive} inconclusive over the corpus; {direct} recomputed by partition dominance")
        } else {
            format!("{fail:?}")
        },
        known: BTreeSet::new(),
    }
}

fn engine_hygiene() -> Outcome {
    let mut pcs = 0;
    // free nilpotent quotients: consistency and Witt ranks
    for n in 1..=3 {
        let q = nilpotent_quotient::<BigInt>(&FinitePresentation::free(letters(n)), 5).unwrap();
        pcs += 1;
        if !q.pc.is_consistent() {
            return Outcome { ok: false, detail: format!("free rank {n}: inconsistent"), known: BTreeSet::new() };
        }
        let want: Vec<usize> = (1..=5).map(|k| witt(n as u64, k) as usize).collect();
        if q.ranks_per_weight() != want {
            return Outcome {
                ok: false,
                detail: format!("free rank {n}: ranks {:?} vs Witt {want:?}", q.ranks_per_weight()),
                known: BTreeSet::new(),
            };
        }
    }
    // quotients and covers of the corpus groups
    let mut seen = BTreeSet::new();
    for s in corpus() {
        if !seen.insert(s.group.clone()) {
            continue;
        }
        let p = built(&s.group).presentation;
        for j in 1..=4 {
            let q = nilpotent_quotient::<BigInt>(&p, j).unwrap();
            pcs += 1;
            if !q.pc.is_consistent() {
                return Outcome { ok: false, detail: format!("{} class {j}: inconsistent", s.group), known: BTreeSet::new() };
            }
        }
        let free = FinitePresentation::free(p.generators().to_vec());
        for c in 1..=2 {
            if let Ok(cov) = Cover::<BigInt>::build(&free, p.relators(), c, CAP) {
                pcs += 1;
                if !cov.pc.is_consistent() {
                    return Outcome { ok: false, detail: format!("{} cover c={c}: inconsistent", s.group), known: BTreeSet::new() };
                }
            }
        }
    }
    // Smith forms: seeded random matrices and the relation matrices of the
    // corpus abelianizations
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut snfs = 0;
    for _ in 0..300 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<BigInt>> =
            (0..r).map(|_| (0..c).map(|_| BigInt::from(if rng.gen_bool(0.3) { 0 } else { rng.gen_range(-12i64..=12) })).collect()).collect();
        let m = Matrix::from_rows(rows, c);
        snfs += 1;
        if !snf_ok(&m) {
            return Outcome { ok: false, detail: format!("SNF postconditions fail on {m:?}"), known: BTreeSet::new() };
        }
    }
    for g in &seen {
        let p = built(g).presentation;
        if p.relators().is_empty() {
            continue;
        }
        let rows: Vec<Vec<BigInt>> = p.relators().iter().map(|r| p.generators().iter().map(|x| r.exponent_sum(x)).collect()).collect();
        let m = Matrix::from_rows(rows, p.generators().len());
        snfs += 1;
        if !snf_ok(&m) {
            return Outcome { ok: false, detail: format!("SNF postconditions fail for {g}"), known: BTreeSet::new() };
        }
    }
    Outcome::pass(format!("{pcs} pc presentations consistent; Witt ranks for n ≤ 3, w ≤ 5; {snfs} Smith forms verified"))
}

fn normal_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x24);
    let mut n = 0;
    for second in [3, 4] {
        let factors = [FiniteGroup::cyclic(2, &GenSym::new("a")), FiniteGroup::cyclic(second, &GenSym::new("b"))];
        for k in 0..1000 {
            let len = rng.gen_range(0..=14);
            let single = (k % 5 == 0).then(|| rng.gen_range(0..2));
            let w: Vec<Letter> = (0..len)
                .map(|_| {
                    let i = single.unwrap_or_else(|| rng.gen_range(0..2));
                    (i, rng.gen_range(0..factors[i].order()))
                })
                .collect();
            let nf = free_product_normal_form(&factors, &w).unwrap();
            n += 1;
            let proj = |w: &[Letter], i: usize| {
                w.iter().filter(|l| l.0 == i).fold(factors[i].identity(), |acc, l| factors[i].mul(acc, l.1))
            };
            let mut joined = nf.prefix.clone();
            joined.extend(&nf.remainder);
            let problems = [
                // one nontrivial letter per factor, in factor order, equal to the projection
                !nf.prefix.windows(2).all(|p| p[0].0 < p[1].0),
                nf.prefix.iter().any(|&(i, x)| x == factors[i].identity() || x != proj(&w, i)),
                (0..2).any(|i| proj(&w, i) != factors[i].identity() && !nf.prefix.iter().any(|l| l.0 == i)),
                // the remainder is reduced and lies in the cartesian subgroup
                free_reduce(&factors, &nf.remainder) != nf.remainder,
                (0..2).any(|i| proj(&nf.remainder, i) != factors[i].identity()),
                // same element, and decomposing again changes nothing
                free_reduce(&factors, &joined) != free_reduce(&factors, &w),
                free_product_normal_form(&factors, &joined).unwrap() != nf,
                single.is_some() && !nf.remainder.is_empty(),
            ];
            if let Some(p) = problems.iter().position(|&b| b) {
                return Outcome {
                    ok: false,
                    detail: format!("Z2 * Z{second}, word {w:?}: property {p} fails for {nf:?}"),
                    known: BTreeSet::new(),
                };
            }
        }
    }
    Outcome::pass(format!("{n} random words in Z2 * Z3 and Z2 * Z4"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("cyclic groups have trivial c-nilpotent multipliers", cyclic_triviality),
        ("c = 1 agrees with the Schur multiplier oracle", oracle_agreement),
        ("presentation independence for D4", presentation_independence),
        ("N_cM(A) and N_cM(B) are direct factors of N_cM(B ⋉ A)", direct_factors),
        ("cyclic-by-cyclic: N_cM(G) = (K, T) side = (D, U) side", cyclic_by_cyclic),
        ("truncated [R, _cF] decomposition", truncation_subgroups),
        ("truncated [T, _cK] decomposition", truncation_kernel),
        ("epimorphism claims", epimorphisms),
        ("engine hygiene", engine_hygiene),
        ("free product normal form", normal_forms),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let ms = t.elapsed().as_millis();
        println!("criterion {:>2} {} — {name}: {} [{ms} ms]", i + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        for k in &o.known {
            println!("             known counterexample: {k}");
        }
        if !o.ok && o.known.is_empty() {
            unexpected.push(i + 1);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
