use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::nq::nilpotent_quotient;
use crate::presentations::FinitePresentation;

fn quotient(s: &str, j: usize) -> Arc<PcPresentation<BigInt>> {
    Arc::new(nilpotent_quotient::<BigInt>(&FinitePresentation::parse(s).unwrap(), j).unwrap().pc)
}

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn collection_examples() {
    // Heisenberg: g1 g0 = g0 g1 g2
    let h = quotient("gens: a, b", 2);
    assert_eq!(h.collect(&[(1, b(1)), (0, b(1))]), vec![b(1), b(1), b(1)]);
    assert_eq!(h.collect(&[(0, b(1)), (0, b(-1))]), h.identity());
    let z = quotient("gens: a\nrel: a^4", 2);
    assert_eq!(z.collect(&[(0, b(4))]), z.identity());
}

#[test]
fn normal_closure_of_square() {
    let h = quotient("gens: a, b", 2);
    let sq = h.pow(&h.gen(0), &b(2));
    let n = PcSubgroup::normal_closure_of(h.clone(), &[sq.clone()]);
    assert_eq!(n.gens(), &[sq, vec![b(0), b(0), b(2)]]);
    assert!(n.is_normal());
    assert!(PcSubgroup::normal_closure_of(h.clone(), &[h.identity()]).is_trivial());
    let all = PcSubgroup::normal_closure_of(h.clone(), &[h.gen(0), h.gen(1)]);
    assert_eq!(all, PcSubgroup::whole(h.clone()));
    // not normal: <a> in the Heisenberg group
    assert!(!PcSubgroup::generated_by(h.clone(), &[h.gen(0)]).is_normal());
}

#[test]
fn lower_central_and_intersections() {
    let w = quotient("gens: a, b\nrel: a^2, b^2, [a, b^-1*a*b]", 3);
    assert_eq!(w.group_order(), Some(b(8)));
    let g2 = PcSubgroup::lower_central(w.clone(), 2);
    assert_eq!(g2.order(), Some(b(2)));
    assert_eq!(g2, PcSubgroup::weight_tail(w.clone(), 2));
    assert!(PcSubgroup::lower_central(w.clone(), 3).is_trivial());
    let g = PcSubgroup::whole(w.clone());
    assert!(g.commutator(&PcSubgroup::trivial(w.clone())).unwrap().is_trivial());
    assert_eq!(g.quotient_invariants(&g2).unwrap(), AbelianInvariants::from_i64(0, &[2, 2]));
    // centre of D4 = γ2, so γ2 ∩ Z = γ2
    let centre: Vec<_> = (0..8)
        .map(|k| w.collect(&[(0, b(k & 1)), (1, b((k >> 1) & 1)), (2, b(k >> 2))]))
        .filter(|x| (0..3).all(|i| w.commutator(x, &w.gen(i)) == w.identity()))
        .collect();
    let z = PcSubgroup::generated_by(w.clone(), &centre);
    assert_eq!(g2.intersect_with_normal(&z).unwrap().order(), Some(b(2)));
    let s = PcSubgroup::generated_by(w.clone(), &[w.gen(0)]);
    assert_eq!(s.intersect_with_normal(&g).unwrap(), s);
    assert!(s.intersect_with_normal(&g2).unwrap().is_trivial());
    assert_eq!(g.quotient_invariants(&s), Err(PcGroupError::NonAbelianQuotient));
    assert_eq!(g2.quotient_invariants(&g), Err(PcGroupError::NotContained));
}

#[test]
fn intersections_in_free_nilpotent_group() {
    let f = quotient("gens: a, b, c", 3);
    let (a, bb, c) = (f.gen(0), f.gen(1), f.gen(2));
    // <a^2, b> ∩ <<a^3>> contains a^6 and [b, a^6]
    let s = PcSubgroup::generated_by(f.clone(), &[f.pow(&a, &b(2)), bb.clone()]);
    let n = PcSubgroup::normal_closure_of(f.clone(), &[f.pow(&a, &b(3))]);
    let i = s.intersect_with_normal(&n).unwrap();
    assert!(i.contains(&f.pow(&a, &b(6))));
    assert!(!i.contains(&f.pow(&a, &b(3))));
    assert!(i.is_subgroup_of(&s).unwrap() && i.is_subgroup_of(&n).unwrap());
    // brute-force check against small elements of s
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let mut x = f.identity();
        for _ in 0..4 {
            let g = s.gens()[rng.gen_range(0..s.len())].clone();
            x = f.mul(&x, &f.pow(&g, &b(rng.gen_range(-3..4))));
        }
        assert!(s.contains(&x));
        assert_eq!(i.contains(&x), n.contains(&x));
        let y = f.mul(&x, &c);
        assert!(!s.contains(&y));
    }
}

#[test]
fn finite_subgroup_orders() {
    // Z4 x Z2 x Z8 abelian quotient: subgroups by generators
    let g = quotient("gens: a, b, c\nrel: a^4, b^2, c^8, [a,b], [a,c], [b,c]", 2);
    assert_eq!(g.group_order(), Some(b(64)));
    let x = g.collect(&[(0, b(2)), (2, b(4))]);
    let h = PcSubgroup::generated_by(g.clone(), &[x.clone(), g.collect(&[(0, b(1)), (2, b(6))])]);
    let elems: std::collections::BTreeSet<Vec<BigInt>> = {
        let mut set = std::collections::BTreeSet::new();
        let mut frontier = vec![g.identity()];
        set.insert(g.identity());
        while let Some(y) = frontier.pop() {
            for s in h.gens() {
                let z = g.mul(&y, s);
                if set.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        set
    };
    assert_eq!(h.order(), Some(BigInt::from(elems.len())));
    let whole = PcSubgroup::whole(g.clone());
    let inv = whole.quotient_invariants(&h).unwrap();
    assert_eq!(inv.order(), Some(BigInt::from(64 / elems.len())));
}
