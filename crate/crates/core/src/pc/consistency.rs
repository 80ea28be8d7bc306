//! The standard overlap tests for a nilpotent pc presentation.
//!
//! For `k > j > i`: `(g_k g_j) g_i = g_k (g_j g_i)`; for finite orders
//! `g_j^{o_j-1}(g_j g_i) = (g_j^{o_j}) g_i`, `g_j (g_i^{o_i}) = (g_j g_i) g_i^{o_i-1}`
//! and `g_i (g_i^{o_i}) = (g_i^{o_i}) g_i`; for infinite orders
//! `g_j = (g_j g_i⁻¹) g_i` and `g_i = g_j⁻¹ (g_j g_i)`. A presentation is
//! consistent (its normal forms are unique) exactly when all of these hold.

use super::{ExpVec, PcPresentation};
use crate::scalar::Int;

/// A failed overlap: which test, on which generators, and the two results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap<E> {
    pub kind: &'static str,
    pub generators: Vec<usize>,
    pub left: ExpVec<E>,
    pub right: ExpVec<E>,
}

impl<E: Int> Overlap<E> {
    /// `left⁻¹ · right`, which is trivial exactly when the test passes.
    pub fn discrepancy(&self, p: &PcPresentation<E>) -> ExpVec<E> {
        p.mul(&p.inverse(&self.left), &self.right)
    }
}

impl<E: Int> PcPresentation<E> {
    /// Runs every overlap test whose generator weights sum to at most
    /// `weight_bound` (all of them for `None`) and returns both sides of each
    /// one, passing or not.
    pub fn overlaps(&self, weight_bound: Option<usize>) -> Vec<Overlap<E>> {
        self.overlaps_among(self.len(), weight_bound)
    }

    /// As [`Self::overlaps`], restricted to the generators `g_0 … g_{n-1}`.
    pub fn overlaps_among(&self, n: usize, weight_bound: Option<usize>) -> Vec<Overlap<E>> {
        let w = &self.weights;
        let ok = |s: usize| weight_bound.is_none_or(|b| s <= b);
        let g = |i: usize| self.gen(i);
        let one = E::one();
        let mut out = Vec::new();
        let mut push = |kind, generators, left, right| out.push(Overlap { kind, generators, left, right });
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    if !ok(w[i] + w[j] + w[k]) {
                        continue;
                    }
                    let left = self.mul(&self.mul(&g(k), &g(j)), &g(i));
                    let right = self.mul(&g(k), &self.mul(&g(j), &g(i)));
                    push("kji", vec![k, j, i], left, right);
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                if !ok(w[i] + w[j]) {
                    continue;
                }
                if let Some(o) = self.order_of(j) {
                    let gpow = self.pow(&g(j), &(o.clone() - one.clone()));
                    let left = self.mul(&gpow, &self.mul(&g(j), &g(i)));
                    let right = self.mul(&self.to_dense(&self.power[j]), &g(i));
                    push("jji", vec![j, i], left, right);
                }
                if let Some(o) = self.order_of(i) {
                    let left = self.mul(&g(j), &self.to_dense(&self.power[i]));
                    let right = self.mul(&self.mul(&g(j), &g(i)), &self.pow(&g(i), &(o.clone() - one.clone())));
                    push("jii", vec![j, i], left, right);
                } else {
                    let gi_inv = self.inverse(&g(i));
                    let right = self.mul(&self.mul(&g(j), &gi_inv), &g(i));
                    push("j/i", vec![j, i], g(j), right);
                }
                if self.order_of(j).is_none() {
                    let right = self.mul(&self.inverse(&g(j)), &self.mul(&g(j), &g(i)));
                    push("i/j", vec![j, i], g(i), right);
                }
            }
        }
        for i in 0..n {
            if !ok(w[i]) {
                continue;
            }
            if self.order_of(i).is_some() {
                let p = self.to_dense(&self.power[i]);
                push("iii", vec![i], self.mul(&g(i), &p), self.mul(&p, &g(i)));
            }
        }
        out
    }

    /// The overlap tests that fail.
    pub fn consistency_violations(&self, weight_bound: Option<usize>) -> Vec<Overlap<E>> {
        self.overlaps(weight_bound).into_iter().filter(|o| o.left != o.right).collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistency_violations(None).is_empty()
    }
}
