use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `⟨x, y, z | x², y², z², [y,x] = z⟩`, the dihedral group of order 8.
fn d4() -> PcPresentation<BigInt> {
    let mut p = PcPresentation::new(vec![1, 1, 2], vec![b(2), b(2), b(2)]);
    p.set_comm(1, 0, vec![(2, b(1))]);
    p.finalize();
    p
}

/// Heisenberg group: `[b, a] = c`, all infinite.
fn heisenberg() -> PcPresentation<BigInt> {
    let mut p = PcPresentation::new(vec![1, 1, 2], vec![b(0), b(0), b(0)]);
    p.set_comm(1, 0, vec![(2, b(1))]);
    p.finalize();
    p
}

/// `⟨a, b, c | a⁴ = c, b² , c², [b,a] = c⟩`: the quaternion group.
fn q8() -> PcPresentation<BigInt> {
    let mut p = PcPresentation::new(vec![1, 1, 2], vec![b(2), b(2), b(2)]);
    p.set_power(0, vec![(2, b(1))]);
    p.set_power(1, vec![(2, b(1))]);
    p.set_comm(1, 0, vec![(2, b(1))]);
    p.finalize();
    p
}

#[test]
fn small_groups_multiply_correctly() {
    let p = d4();
    assert!(p.is_consistent());
    assert_eq!(p.group_order(), Some(b(8)));
    let (x, y) = (p.gen(0), p.gen(1));
    // (xy)^4 = 1 and (xy)^2 = z
    let xy = p.mul(&x, &y);
    assert_eq!(p.pow(&xy, &b(2)), p.gen(2));
    assert_eq!(p.pow(&xy, &b(4)), p.identity());
    assert_eq!(p.commutator(&y, &x), p.gen(2));
    let q = q8();
    assert!(q.is_consistent());
    let a = q.gen(0);
    assert_eq!(q.pow(&a, &b(4)), q.identity());
    assert_eq!(q.pow(&a, &b(2)), q.pow(&q.gen(1), &b(2)));
    assert_eq!(q.inverse(&a), q.mul(&a, &q.gen(2)));
}

#[test]
fn heisenberg_commutators() {
    let h = heisenberg();
    assert!(h.is_consistent());
    let (a, bb) = (h.gen(0), h.gen(1));
    let x = h.pow(&a, &b(3));
    let y = h.pow(&bb, &b(-5));
    assert_eq!(h.commutator(&y, &x), h.pow(&h.gen(2), &b(-15)));
    assert_eq!(h.mul(&bb, &a), vec![b(1), b(1), b(1)]);
    assert_eq!(h.conjugate(&bb, &h.inverse(&a)), vec![b(0), b(1), b(-1)]);
}

#[test]
fn inconsistency_detected() {
    // a² = 1 forces b^{a²} = b, but [b, a] = c makes it b c²
    let mut p = PcPresentation::new(vec![1, 1, 2], vec![b(2), b(0), b(0)]);
    p.set_comm(1, 0, vec![(2, b(1))]);
    p.finalize();
    let bad = p.consistency_violations(None);
    assert!(!bad.is_empty());
    assert!(!PcPresentation::is_identity(&bad[0].discrepancy(&p)));
}

#[test]
fn direct_product_orders() {
    let (p, off) = PcPresentation::direct_product(&d4(), &q8());
    assert_eq!(p.group_order(), Some(b(64)));
    assert_eq!(p.weights(), &[1, 1, 2, 1, 1, 2]);
    assert!(p.is_consistent());
    assert_eq!(p.commutator(&p.gen(0), &p.gen(off)), p.identity());
    assert_eq!(p.commutator(&p.gen(off + 1), &p.gen(off)), p.gen(off + 2));
}

fn arb_heis() -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-20i64..20, 3).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

fn arb_d4q8() -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(0i64..2, 6).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #[test]
    fn heisenberg_group_axioms(x in arb_heis(), y in arb_heis(), z in arb_heis()) {
        let h = heisenberg();
        prop_assert_eq!(h.mul(&h.mul(&x, &y), &z), h.mul(&x, &h.mul(&y, &z)));
        prop_assert_eq!(h.mul(&x, &h.inverse(&x)), h.identity());
        // closed form: (a^x1 b^x2 c^x3)(a^y1 b^y2 c^y3) = a^{x1+y1} b^{x2+y2} c^{x3+y3+x2*y1}
        let expected = vec![&x[0] + &y[0], &x[1] + &y[1], &x[2] + &y[2] + &x[1] * &y[0]];
        prop_assert_eq!(h.mul(&x, &y), expected);
    }

    #[test]
    fn product_group_axioms(x in arb_d4q8(), y in arb_d4q8(), z in arb_d4q8()) {
        let (p, _) = PcPresentation::direct_product(&d4(), &q8());
        prop_assert_eq!(p.mul(&p.mul(&x, &y), &z), p.mul(&x, &p.mul(&y, &z)));
        prop_assert_eq!(p.mul(&p.inverse(&x), &x), p.identity());
    }
}

#[test]
fn grading() {
    assert!(d4().is_graded() && heisenberg().is_graded() && q8().is_graded());
    // weight 2 on z but [y, x] = z needs weight ≥ 2: fine; put z at weight 1
    // and the grading is lost
    let mut p = PcPresentation::new(vec![1, 1, 1], vec![b(2), b(2), b(2)]);
    p.set_comm(1, 0, vec![(2, b(1))]);
    p.finalize();
    assert!(!p.is_graded());
    assert!(!p.commute_by_weight(&p.gen(0), &p.gen(1)));
    let h = heisenberg();
    assert!(h.commute_by_weight(&h.gen(2), &h.gen(0)));
    assert!(!h.commute_by_weight(&h.gen(1), &h.gen(0)));
    assert!(h.commute_by_weight(&h.identity(), &h.gen(0)));
}
